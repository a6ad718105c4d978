//! Fast-churn gas storage valuation by Least-Squares Monte Carlo.
//!
//! The holder chooses one regime per day, `u ∈ {inject, do-nothing,
//! withdraw}`, with cash flows
//!
//! ```text
//! inject:     -S(t) - K_in a_in        volume -> min(c + a_in, C_max)
//! do nothing: -K_N                     volume -> c
//! withdraw:    S(t) - K_out a_w        volume -> max(c - a_w, C_min)
//! ```
//!
//! plus a terminal settlement `q(S(T), C(T))`. The value is estimated by the
//! backward recursion of Boogert-de Jong: volumes live on a finite grid, the
//! continuation value per volume level is regressed on a cubic polynomial in
//! `log(S/F(0,t))` across all paths, regimes are chosen against the fitted
//! continuation, and realized cash flows along each path provide the value
//! estimate (so the regression steers decisions but never leaks into the
//! estimate itself).
//!
//! A regime is only available when its full rate fits inside the volume
//! bounds; there are no partial-rate actions. Post-transition volumes are
//! snapped to the nearest grid level, which is exact whenever `a_in` and
//! `a_w` are multiples of the grid spacing (as in the default
//! configuration).

use std::time::Instant;

use rayon::prelude::*;

use super::{OneFactorSpotModel, PriceResult};
use crate::ou::TimeGrid;
use crate::{Error, Result};

/// Terminal settlement rule `q(S(T), C(T))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TerminalPenalty {
    /// `q = 0`: leftover gas is simply forfeited without charge.
    None,
    /// `q = -coeff * S(T) * max(c0 - C(T), 0)`: pay the terminal spot value
    /// of any shortfall against the initial volume, softly enforcing
    /// return-to-initial.
    ReturnToInitial { coeff: f64 },
}

impl TerminalPenalty {
    fn value(&self, spot: f64, volume: f64, c0: f64) -> f64 {
        match self {
            TerminalPenalty::None => 0.0,
            TerminalPenalty::ReturnToInitial { coeff } => {
                let shortfall = (c0 - volume).max(0.0);
                if shortfall == 0.0 {
                    0.0 // avoid leaking -0.0 into the value surface
                } else {
                    -coeff * spot * shortfall
                }
            }
        }
    }
}

/// Physical and economic description of the storage contract.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StorageSpec {
    pub c_min: f64,
    pub c_max: f64,
    /// Injection rate per decision step.
    pub a_in: f64,
    /// Withdrawal rate per decision step.
    pub a_w: f64,
    /// Injection cost coefficient (cash `-K_in a_in` per injection day).
    pub k_in: f64,
    /// Withdrawal cost coefficient (cash `-K_out a_w` per withdrawal day).
    pub k_out: f64,
    /// Do-nothing cost (cash `-K_N` per idle day).
    pub k_n: f64,
    pub terminal_penalty: TerminalPenalty,
    /// Number of volume grid steps; the grid has `volume_grid_steps + 1`
    /// levels.
    pub volume_grid_steps: usize,
    /// Initial volume.
    pub c0: f64,
}

impl StorageSpec {
    /// One-year fast-churn configuration: unit capacity, 20 days to fill or
    /// empty (`a = 0.05/day`), small handling fees, 100 volume steps, start
    /// empty.
    pub fn fast_churn() -> Self {
        StorageSpec {
            c_min: 0.0,
            c_max: 1.0,
            a_in: 0.05,
            a_w: 0.05,
            k_in: 0.01,
            k_out: 0.01,
            k_n: 0.0,
            terminal_penalty: TerminalPenalty::ReturnToInitial { coeff: 1.0 },
            volume_grid_steps: 100,
            c0: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let span = self.c_max - self.c_min;
        if !self.c_min.is_finite() || !self.c_max.is_finite() || span <= 0.0 {
            return Err(Error::domain(
                "volume bounds must be finite with c_max > c_min",
            ));
        }
        if !self.c0.is_finite() || self.c0 < self.c_min || self.c0 > self.c_max {
            return Err(Error::domain(format!(
                "initial volume {} outside [{}, {}]",
                self.c0, self.c_min, self.c_max
            )));
        }
        for (name, v) in [("a_in", self.a_in), ("a_w", self.a_w)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::domain(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
            if v > span {
                return Err(Error::domain(format!(
                    "{name} = {v} exceeds the capacity range {span}"
                )));
            }
        }
        for (name, v) in [
            ("k_in", self.k_in),
            ("k_out", self.k_out),
            ("k_n", self.k_n),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        if let TerminalPenalty::ReturnToInitial { coeff } = self.terminal_penalty {
            if !coeff.is_finite() || coeff < 0.0 {
                return Err(Error::domain(format!(
                    "penalty coefficient must be finite and >= 0, got {coeff}"
                )));
            }
        }
        if self.volume_grid_steps == 0 {
            return Err(Error::domain("volume grid needs at least one step"));
        }
        Ok(())
    }
}

/// Values the storage by full LSMC (regressed continuation values).
pub fn price_storage(
    model: &OneFactorSpotModel,
    spec: &StorageSpec,
    grid: &TimeGrid,
    n_paths: usize,
    seed: u64,
) -> Result<PriceResult> {
    lsmc(model, spec, grid, n_paths, seed, true)
}

/// Values the storage with the continuation forced to zero in every
/// decision (terminal settlement still applies). Decisions become myopic,
/// so the result lower-bounds the full LSMC value; useful as a sanity
/// anchor.
pub fn price_storage_myopic(
    model: &OneFactorSpotModel,
    spec: &StorageSpec,
    grid: &TimeGrid,
    n_paths: usize,
    seed: u64,
) -> Result<PriceResult> {
    lsmc(model, spec, grid, n_paths, seed, false)
}

const BASIS: usize = 4; // 1, w, w^2, w^3 in the standardized log-moneyness w

fn lsmc(
    model: &OneFactorSpotModel,
    spec: &StorageSpec,
    grid: &TimeGrid,
    n_paths: usize,
    seed: u64,
    use_regression: bool,
) -> Result<PriceResult> {
    spec.validate()?;
    if n_paths < 8 {
        return Err(Error::domain("storage LSMC needs at least 8 paths"));
    }
    let started = Instant::now();
    let paths = model.simulate_spot_paths(grid, n_paths, seed)?;
    let cpu_paths_seconds = started.elapsed().as_secs_f64();

    let m = grid.steps(); // decisions at 0..m-1, settlement at m
    let n_levels = spec.volume_grid_steps + 1;
    let spacing = (spec.c_max - spec.c_min) / spec.volume_grid_steps as f64;
    let snap = |c: f64| -> usize {
        (((c - spec.c_min) / spacing).round() as i64).clamp(0, n_levels as i64 - 1) as usize
    };
    let tol = 1e-9 * (spec.c_max - spec.c_min);
    let levels: Vec<f64> = (0..n_levels)
        .map(|g| spec.c_min + g as f64 * spacing)
        .collect();
    let inject_target: Vec<Option<usize>> = levels
        .iter()
        .map(|&c| (c + spec.a_in <= spec.c_max + tol).then(|| snap(c + spec.a_in)))
        .collect();
    let withdraw_target: Vec<Option<usize>> = levels
        .iter()
        .map(|&c| (c - spec.a_w >= spec.c_min - tol).then(|| snap(c - spec.a_w)))
        .collect();

    // Terminal settlement per (path, level).
    let mut value_next: Vec<f64> = vec![0.0; n_paths * n_levels];
    for p in 0..n_paths {
        let s_t = paths.value(p, m);
        for (g, &c) in levels.iter().enumerate() {
            value_next[p * n_levels + g] = spec.terminal_penalty.value(s_t, c, spec.c0);
        }
    }

    let times = grid.times();
    let mut value_cur: Vec<f64> = vec![0.0; n_paths * n_levels];
    for i in (0..m).rev() {
        let spots = paths.column(i);
        let fitted = if use_regression {
            Some(fit_continuations(
                &spots,
                model.curve().value(times[i]),
                &value_next,
                n_levels,
            ))
        } else {
            None
        };

        value_cur
            .par_chunks_mut(n_levels)
            .enumerate()
            .for_each(|(p, row)| {
                let s = spots[p];
                let next = &value_next[p * n_levels..(p + 1) * n_levels];
                let cont = |g: usize| fitted.as_ref().map_or(0.0, |f| f.eval(g, p));
                for g in 0..n_levels {
                    // Ties favor doing nothing.
                    let mut best_obj = -spec.k_n + cont(g);
                    let mut best_val = -spec.k_n + next[g];
                    let mut consider = |cash: f64, tg: usize| {
                        let obj = cash + cont(tg);
                        if obj > best_obj {
                            best_obj = obj;
                            best_val = cash + next[tg];
                        }
                    };
                    if let Some(tg) = inject_target[g] {
                        consider(-s - spec.k_in * spec.a_in, tg);
                    }
                    if let Some(tg) = withdraw_target[g] {
                        consider(s - spec.k_out * spec.a_w, tg);
                    }
                    row[g] = best_val;
                }
            });
        std::mem::swap(&mut value_next, &mut value_cur);
    }

    let g0 = snap(spec.c0);
    let per_path: Vec<f64> = (0..n_paths)
        .map(|p| value_next[p * n_levels + g0])
        .collect();
    Ok(PriceResult::from_samples(
        &per_path,
        started.elapsed().as_secs_f64(),
        cpu_paths_seconds,
    ))
}

/// Per-level cubic fits of the continuation value on standardized
/// log-moneyness, shared across the decision loop of one time step.
struct FittedContinuation {
    /// Regression features per path: powers 1, w, w², w³.
    features: Vec<[f64; BASIS]>,
    /// Coefficients per volume level.
    coefs: Vec<[f64; BASIS]>,
}

impl FittedContinuation {
    fn eval(&self, level: usize, path: usize) -> f64 {
        let c = &self.coefs[level];
        let f = &self.features[path];
        c[0] * f[0] + c[1] * f[1] + c[2] * f[2] + c[3] * f[3]
    }
}

fn fit_continuations(
    spots: &[f64],
    forward: f64,
    value_next: &[f64],
    n_levels: usize,
) -> FittedContinuation {
    let n = spots.len();
    let nf = n as f64;
    let ys: Vec<f64> = spots.iter().map(|s| (s / forward).ln()).collect();
    let mean = ys.iter().sum::<f64>() / nf;
    let sd = (ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / nf).sqrt();

    // Degenerate regressor (e.g. the deterministic spot at t = 0): the best
    // constant fit is the plain average.
    if sd < 1e-12 || !sd.is_finite() {
        let features = vec![[1.0, 0.0, 0.0, 0.0]; n];
        let coefs = (0..n_levels)
            .map(|g| {
                let mean_v = (0..n).map(|p| value_next[p * n_levels + g]).sum::<f64>() / nf;
                [mean_v, 0.0, 0.0, 0.0]
            })
            .collect();
        return FittedContinuation { features, coefs };
    }

    let features: Vec<[f64; BASIS]> = ys
        .iter()
        .map(|y| {
            let w = (y - mean) / sd;
            [1.0, w, w * w, w * w * w]
        })
        .collect();

    // Normal-equation matrix from the power sums of w; shared by all levels.
    let mut pow_sums = [0.0f64; 2 * BASIS - 1];
    for f in &features {
        let w = f[1];
        let mut p = 1.0;
        for s in pow_sums.iter_mut() {
            *s += p;
            p *= w;
        }
    }
    let mut a = [[0.0f64; BASIS]; BASIS];
    for (r, row) in a.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = pow_sums[r + c];
        }
    }
    let lu = LuFactors::new(a);

    let coefs: Vec<[f64; BASIS]> = (0..n_levels)
        .into_par_iter()
        .map(|g| {
            let mut rhs = [0.0f64; BASIS];
            for (p, f) in features.iter().enumerate() {
                let v = value_next[p * n_levels + g];
                for (r, fv) in f.iter().enumerate() {
                    rhs[r] += fv * v;
                }
            }
            match &lu {
                Some(lu) => lu.solve(rhs),
                // Near-singular normal matrix: fall back to the constant fit.
                None => [rhs[0] / nf, 0.0, 0.0, 0.0],
            }
        })
        .collect();

    FittedContinuation { features, coefs }
}

/// LU factorization with partial pivoting of the (symmetric) normal matrix.
struct LuFactors {
    lu: [[f64; BASIS]; BASIS],
    perm: [usize; BASIS],
}

impl LuFactors {
    #[allow(clippy::needless_range_loop)]
    fn new(mut a: [[f64; BASIS]; BASIS]) -> Option<Self> {
        let scale = a.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let mut perm = [0usize; BASIS];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        for col in 0..BASIS {
            let mut pivot_row = col;
            for r in col + 1..BASIS {
                if a[r][col].abs() > a[pivot_row][col].abs() {
                    pivot_row = r;
                }
            }
            if a[pivot_row][col].abs() <= 1e-12 * scale {
                return None;
            }
            a.swap(col, pivot_row);
            perm.swap(col, pivot_row);
            for r in col + 1..BASIS {
                let factor = a[r][col] / a[col][col];
                a[r][col] = factor;
                for c in col + 1..BASIS {
                    a[r][c] -= factor * a[col][c];
                }
            }
        }
        Some(Self { lu: a, perm })
    }

    #[allow(clippy::needless_range_loop)]
    fn solve(&self, b: [f64; BASIS]) -> [f64; BASIS] {
        let mut x = [0.0f64; BASIS];
        for i in 0..BASIS {
            let mut sum = b[self.perm[i]];
            for j in 0..i {
                sum -= self.lu[i][j] * x[j];
            }
            x[i] = sum;
        }
        for i in (0..BASIS).rev() {
            let mut sum = x[i];
            for j in i + 1..BASIS {
                sum -= self.lu[i][j] * x[j];
            }
            x[i] = sum / self.lu[i][i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pricing::ForwardCurve;

    fn cummins_model(sigma: f64) -> OneFactorSpotModel {
        OneFactorSpotModel::new(ForwardCurve::flat(15.0).unwrap(), 0.2162, 0.256, sigma).unwrap()
    }

    fn small_spec() -> StorageSpec {
        StorageSpec {
            volume_grid_steps: 20,
            a_in: 0.1,
            a_w: 0.1,
            ..StorageSpec::fast_churn()
        }
    }

    #[test]
    fn spec_validation() {
        assert!(StorageSpec::fast_churn().validate().is_ok());
        assert!(StorageSpec {
            a_in: 1.5,
            ..StorageSpec::fast_churn()
        }
        .validate()
        .is_err());
        assert!(StorageSpec {
            c0: 2.0,
            ..StorageSpec::fast_churn()
        }
        .validate()
        .is_err());
        assert!(StorageSpec {
            k_in: -0.1,
            ..StorageSpec::fast_churn()
        }
        .validate()
        .is_err());
        assert!(StorageSpec {
            volume_grid_steps: 0,
            ..StorageSpec::fast_churn()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn degenerate_market_is_worthless() {
        // Flat deterministic prices, no fees, no terminal rule: there is no
        // spread to capture and the value is exactly zero.
        let model = cummins_model(1e-30);
        let spec = StorageSpec {
            k_in: 0.0,
            k_out: 0.0,
            k_n: 0.0,
            terminal_penalty: TerminalPenalty::None,
            ..small_spec()
        };
        let grid = TimeGrid::uniform(0.25, 90).unwrap();
        let result = price_storage(&model, &spec, &grid, 64, 61).unwrap();
        assert_eq!(result.price, 0.0);
        assert_eq!(result.stdev, 0.0);
    }

    #[test]
    fn stochastic_value_is_positive_and_reproducible() {
        let model = cummins_model(0.201);
        let spec = small_spec();
        let grid = TimeGrid::uniform(0.25, 90).unwrap();
        let a = price_storage(&model, &spec, &grid, 2000, 62).unwrap();
        let b = price_storage(&model, &spec, &grid, 2000, 62).unwrap();
        assert!(a.price > 0.0, "extrinsic value {}", a.price);
        assert_eq!(a.price, b.price);
        assert!(a.cpu_paths_seconds <= a.cpu_seconds);
        assert!((a.error - a.stdev / (a.n_paths as f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn myopic_value_lower_bounds_full_lsmc() {
        let model = cummins_model(0.201);
        let spec = small_spec();
        let grid = TimeGrid::uniform(0.25, 90).unwrap();
        let full = price_storage(&model, &spec, &grid, 2000, 63).unwrap();
        let myopic = price_storage_myopic(&model, &spec, &grid, 2000, 63).unwrap();
        assert!(
            myopic.price <= full.price,
            "myopic {} vs full {}",
            myopic.price,
            full.price
        );
    }

    #[test]
    fn value_monotone_in_capacity_and_costs() {
        // Common random numbers across configurations.
        let model = cummins_model(0.201);
        let grid = TimeGrid::uniform(0.25, 60).unwrap();
        let base = small_spec();
        let value =
            |spec: &StorageSpec| price_storage(&model, spec, &grid, 1500, 64).unwrap().price;

        let v_base = value(&base);
        let smaller = StorageSpec { c_max: 0.5, ..base };
        assert!(value(&smaller) <= v_base, "capacity monotonicity");

        let pricier = StorageSpec {
            k_in: 1.0,
            k_out: 1.0,
            k_n: 0.01,
            ..base
        };
        assert!(value(&pricier) <= v_base, "cost monotonicity");
    }

    #[test]
    fn rejects_undersized_runs() {
        let model = cummins_model(0.201);
        let grid = TimeGrid::uniform(0.1, 10).unwrap();
        assert!(price_storage(&model, &small_spec(), &grid, 4, 1).is_err());
    }

    #[test]
    fn lu_solves_small_systems() {
        let a = [
            [4.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 1.0, 0.0],
            [0.0, 1.0, 2.0, 1.0],
            [0.0, 0.0, 1.0, 5.0],
        ];
        let lu = LuFactors::new(a).unwrap();
        let x = lu.solve([1.0, 2.0, 3.0, 4.0]);
        for (r, row) in a.iter().enumerate() {
            let ax: f64 = row.iter().zip(&x).map(|(c, v)| c * v).sum();
            assert!((ax - (r + 1) as f64).abs() < 1e-12);
        }
        // Singular matrix is refused.
        assert!(LuFactors::new([[1.0; 4]; 4]).is_none());
    }
}
