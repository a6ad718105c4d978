//! Risk-neutral spot models and Monte Carlo pricing of energy derivatives.
//!
//! Two market models are provided, both of the form
//! `S(t) = F(0,t) e^{h(t) + factors}` with `F` a forward curve and `h` the
//! deterministic drift correction that makes the spot consistent with the
//! curve, `h(t) = -kappa_factors(1, t)`:
//!
//! * [`TwoFactorSpotModel`]: an OU-VG short-term factor plus an independent
//!   VG long-term factor, used by the arithmetic-average Asian pricer;
//! * [`OneFactorSpotModel`]: a single OU-SVG factor, used by the gas-storage
//!   valuation.
//!
//! Prices are plain (undiscounted) expectations of the contract cash flows;
//! no interest rate is modeled.

mod asian;
mod storage;

pub use asian::{price_asian, AsianSpec};
pub use storage::{price_storage, price_storage_myopic, StorageSpec, TerminalPenalty};

use std::fmt;

use rayon::prelude::*;

use crate::ou::{step_ousvg, step_ouvg, OuVgParams, PathSet, TimeGrid};
use crate::sampling::RngStream;
use crate::special::dilog;
use crate::vg::VgParams;
use crate::{Error, Result};

/// Forward curve `t -> F(0,t)`, either flat or a piecewise-linear table.
///
/// Piecewise-linear curves extrapolate flat beyond their first and last
/// nodes, so `F(0,t) > 0` for every queried time.
#[derive(Debug, Clone, PartialEq)]
pub enum ForwardCurve {
    Flat(f64),
    PiecewiseLinear(Vec<(f64, f64)>),
}

impl ForwardCurve {
    pub fn flat(level: f64) -> Result<Self> {
        if !level.is_finite() || level <= 0.0 {
            return Err(Error::domain(format!(
                "forward level must be finite and > 0, got {level}"
            )));
        }
        Ok(ForwardCurve::Flat(level))
    }

    /// Builds a piecewise-linear curve from `(t, price)` nodes with strictly
    /// increasing non-negative times and positive prices.
    pub fn piecewise_linear(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("a forward curve needs at least one node"));
        }
        let mut prev = f64::NEG_INFINITY;
        for &(t, p) in &points {
            if !t.is_finite() || t < 0.0 || t <= prev {
                return Err(Error::domain(
                    "curve times must be non-negative and strictly increasing",
                ));
            }
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::domain(format!(
                    "curve prices must be finite and > 0, got {p}"
                )));
            }
            prev = t;
        }
        Ok(ForwardCurve::PiecewiseLinear(points))
    }

    /// `F(0,t)`.
    pub fn value(&self, t: f64) -> f64 {
        match self {
            ForwardCurve::Flat(level) => *level,
            ForwardCurve::PiecewiseLinear(points) => {
                if t <= points[0].0 {
                    return points[0].1;
                }
                let last = points[points.len() - 1];
                if t >= last.0 {
                    return last.1;
                }
                let hi = points.partition_point(|&(s, _)| s < t);
                let (t0, p0) = points[hi - 1];
                let (t1, p1) = points[hi];
                p0 + (p1 - p0) * (t - t0) / (t1 - t0)
            }
        }
    }
}

/// Monte Carlo price with dispersion and timing figures.
///
/// `error = stdev / sqrt(n_paths)`; `cpu_paths_seconds` is the share of
/// `cpu_seconds` spent generating paths.
#[derive(Debug, Clone, Copy)]
pub struct PriceResult {
    pub price: f64,
    pub stdev: f64,
    pub error: f64,
    pub cpu_seconds: f64,
    pub cpu_paths_seconds: f64,
    pub n_paths: usize,
}

impl PriceResult {
    pub(crate) fn from_samples(payoffs: &[f64], cpu_seconds: f64, cpu_paths_seconds: f64) -> Self {
        let n = payoffs.len() as f64;
        let price = payoffs.iter().sum::<f64>() / n;
        let stdev = if payoffs.len() > 1 {
            (payoffs.iter().map(|x| (x - price).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        PriceResult {
            price,
            stdev,
            error: stdev / n.sqrt(),
            cpu_seconds,
            cpu_paths_seconds,
            n_paths: payoffs.len(),
        }
    }

    /// CSV rendering with header
    /// `n_paths,price,stdev,error,cpu_seconds,cpu_paths_seconds`.
    pub fn to_csv(&self) -> String {
        format!(
            "n_paths,price,stdev,error,cpu_seconds,cpu_paths_seconds\n{},{},{},{},{},{}\n",
            self.n_paths,
            self.price,
            self.stdev,
            self.error,
            self.cpu_seconds,
            self.cpu_paths_seconds
        )
    }
}

impl fmt::Display for PriceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "price {:.6}  stdev {:.6}  error {:.6}  paths {}  cpu {:.3}s (paths {:.3}s)",
            self.price,
            self.stdev,
            self.error,
            self.n_paths,
            self.cpu_seconds,
            self.cpu_paths_seconds
        )
    }
}

/// Two-factor spot model `S(t) = F(0,t) e^{h(t) + X1(t) + X2(t)}` with an
/// OU-VG factor `X1` and an independent VG factor `X2` for the long-term
/// behavior.
///
/// Admissibility (`u = 1` inside the MGF domain of both factors) is checked
/// at construction, after which the drift correction cannot fail.
#[derive(Debug, Clone)]
pub struct TwoFactorSpotModel {
    curve: ForwardCurve,
    ou: OuVgParams,
    vg2: VgParams,
    vg2_cumulant_one: f64,
}

impl TwoFactorSpotModel {
    pub fn new(curve: ForwardCurve, ou: OuVgParams, vg2: VgParams) -> Result<Self> {
        ou.increment_cumulant(1.0, 1.0)
            .map_err(|e| Error::domain(format!("OU-VG factor inadmissible at u = 1: {e}")))?;
        let vg2_cumulant_one = vg2
            .cumulant(1.0)
            .map_err(|e| Error::domain(format!("VG factor inadmissible at u = 1: {e}")))?;
        Ok(Self {
            curve,
            ou,
            vg2,
            vg2_cumulant_one,
        })
    }

    pub fn curve(&self) -> &ForwardCurve {
        &self.curve
    }

    pub fn ou(&self) -> &OuVgParams {
        &self.ou
    }

    pub fn vg2(&self) -> &VgParams {
        &self.vg2
    }

    /// Drift correction `h(t) = -rho_{X1}(1,t) - t kappa_{VG2}(1)`, which
    /// enforces `E[S(t)] = F(0,t)` for factors started at zero.
    pub fn drift(&self, t: f64) -> f64 {
        let rho = self
            .ou
            .increment_cumulant(1.0, t)
            .expect("admissibility checked at construction; t must be >= 0");
        -rho - t * self.vg2_cumulant_one
    }

    /// Simulates spot paths on `grid`. Path `i` consumes the two streams
    /// `(master_seed, 2i)` and `(master_seed, 2i+1)`, one per factor.
    pub fn simulate_spot_paths(
        &self,
        grid: &TimeGrid,
        n_paths: usize,
        master_seed: u64,
    ) -> Result<PathSet> {
        if n_paths == 0 {
            return Err(Error::domain("n_paths must be at least 1"));
        }
        let width = grid.steps() + 1;
        let times = grid.times().to_vec();
        let drift: Vec<f64> = times.iter().map(|&t| self.drift(t)).collect();
        let forward: Vec<f64> = times.iter().map(|&t| self.curve.value(t)).collect();
        let mut values = vec![0.0f64; n_paths * width];

        values
            .par_chunks_mut(width)
            .enumerate()
            .try_for_each(|(i, row)| -> Result<()> {
                let mut ou_stream = RngStream::new(master_seed, 2 * i as u64);
                let mut vg_stream = RngStream::new(master_seed, 2 * i as u64 + 1);
                let mut x1 = self.ou.x0();
                let mut x2 = 0.0;
                row[0] = forward[0] * (drift[0] + x1 + x2).exp();
                for j in 1..width {
                    let dt = times[j] - times[j - 1];
                    x1 = step_ouvg(x1, &self.ou, dt, &mut ou_stream)?;
                    x2 += self.vg2.sample_increment(dt, &mut vg_stream)?;
                    row[j] = forward[j] * (drift[j] + x1 + x2).exp();
                }
                Ok(())
            })?;

        Ok(PathSet::from_rows(
            values,
            n_paths,
            grid.clone(),
            master_seed,
        ))
    }
}

/// One-factor spot model `S(t) = F(0,t) e^{h(t) + X(t)}` with an OU-SVG
/// factor started at zero.
///
/// Admissibility requires `sigma² nu / 2 < 1` (real dilogarithm domain at
/// `u = 1`), checked at construction.
#[derive(Debug, Clone)]
pub struct OneFactorSpotModel {
    curve: ForwardCurve,
    k: f64,
    nu: f64,
    sigma: f64,
    /// `sigma² nu / 2`, the dilogarithm argument of the drift correction.
    z1: f64,
}

impl OneFactorSpotModel {
    pub fn new(curve: ForwardCurve, k: f64, nu: f64, sigma: f64) -> Result<Self> {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::domain(format!("k must be finite and > 0, got {k}")));
        }
        VgParams::new(0.0, nu, sigma)?;
        let z1 = 0.5 * sigma * sigma * nu;
        if z1 >= 1.0 {
            return Err(Error::domain(format!(
                "inadmissible OU-SVG market: sigma^2 nu / 2 = {z1} must be < 1"
            )));
        }
        Ok(Self {
            curve,
            k,
            nu,
            sigma,
            z1,
        })
    }

    pub fn curve(&self) -> &ForwardCurve {
        &self.curve
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Drift correction
    /// `h(t) = -(dilog(sigma² nu/2) - dilog(sigma² nu/2 e^{-2kt})) / (2 k nu)`.
    ///
    /// The decay enters squared: `h(t) = -rho_X(1,t)` with
    /// `rho_X(u,t) = kappa(u) - kappa(u e^{-kt})`, and the dilogarithm
    /// argument of the symmetric stationary cumulant is quadratic in `u`.
    /// Anything else leaves `E[S(t)]` biased off the forward curve.
    pub fn drift(&self, t: f64) -> f64 {
        let head = dilog(self.z1).expect("admissibility checked at construction");
        let tail = dilog(self.z1 * (-2.0 * self.k * t).exp())
            .expect("admissibility checked at construction");
        -(head - tail) / (2.0 * self.k * self.nu)
    }

    /// Simulates spot paths on `grid`; path `i` consumes stream
    /// `(master_seed, i)`.
    pub fn simulate_spot_paths(
        &self,
        grid: &TimeGrid,
        n_paths: usize,
        master_seed: u64,
    ) -> Result<PathSet> {
        if n_paths == 0 {
            return Err(Error::domain("n_paths must be at least 1"));
        }
        let width = grid.steps() + 1;
        let times = grid.times().to_vec();
        let drift: Vec<f64> = times.iter().map(|&t| self.drift(t)).collect();
        let forward: Vec<f64> = times.iter().map(|&t| self.curve.value(t)).collect();
        let mut values = vec![0.0f64; n_paths * width];

        values
            .par_chunks_mut(width)
            .enumerate()
            .try_for_each(|(i, row)| -> Result<()> {
                let mut stream = RngStream::new(master_seed, i as u64);
                let mut x = 0.0;
                row[0] = forward[0] * (drift[0] + x).exp();
                for j in 1..width {
                    let dt = times[j] - times[j - 1];
                    x = step_ousvg(x, self.k, self.nu, self.sigma, dt, &mut stream)?;
                    row[j] = forward[j] * (drift[j] + x).exp();
                }
                Ok(())
            })?;

        Ok(PathSet::from_rows(
            values,
            n_paths,
            grid.clone(),
            master_seed,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::sample_mean_se;

    fn cummins_1f() -> OneFactorSpotModel {
        OneFactorSpotModel::new(ForwardCurve::flat(15.0).unwrap(), 0.2162, 0.256, 0.201).unwrap()
    }

    fn two_factor() -> TwoFactorSpotModel {
        let ou = OuVgParams::new(0.2, VgParams::new(0.025, 0.02, 0.3).unwrap(), 0.0).unwrap();
        let vg2 = VgParams::new(0.0, 0.2, 0.1).unwrap();
        TwoFactorSpotModel::new(ForwardCurve::flat(15.0).unwrap(), ou, vg2).unwrap()
    }

    #[test]
    fn forward_curve_evaluation() {
        assert!(ForwardCurve::flat(0.0).is_err());
        let flat = ForwardCurve::flat(15.0).unwrap();
        assert_eq!(flat.value(0.7), 15.0);

        let pw =
            ForwardCurve::piecewise_linear(vec![(0.0, 10.0), (1.0, 12.0), (2.0, 11.0)]).unwrap();
        assert_eq!(pw.value(0.0), 10.0);
        assert_eq!(pw.value(0.5), 11.0);
        assert_eq!(pw.value(1.5), 11.5);
        assert_eq!(pw.value(5.0), 11.0); // flat extrapolation
        assert!(ForwardCurve::piecewise_linear(vec![(0.5, 1.0), (0.5, 2.0)]).is_err());
        assert!(ForwardCurve::piecewise_linear(vec![(0.0, -1.0)]).is_err());
    }

    #[test]
    fn one_factor_admissibility() {
        let curve = ForwardCurve::flat(15.0).unwrap();
        // Cummins parameters: sigma^2 nu / 2 = 0.00517... < 1.
        let model = cummins_1f();
        assert!((model.z1 - 0.201 * 0.201 * 0.256 / 2.0).abs() < 1e-15);
        assert!(model.z1 < 1.0);
        // A wildly volatile market fails the dilog-domain check.
        assert!(OneFactorSpotModel::new(curve, 0.2162, 2.0, 1.1).is_err());
    }

    #[test]
    fn drifts_vanish_at_time_zero() {
        assert_eq!(cummins_1f().drift(0.0), 0.0);
        assert_eq!(two_factor().drift(0.0), 0.0);
    }

    #[test]
    fn two_factor_drift_reduces_to_ou_correction_without_second_factor() {
        let ou = OuVgParams::new(0.2, VgParams::new(0.025, 0.02, 0.3).unwrap(), 0.0).unwrap();
        let vg2 = VgParams::new(0.0, 0.2, 1e-30).unwrap();
        let model = TwoFactorSpotModel::new(ForwardCurve::flat(15.0).unwrap(), ou, vg2).unwrap();
        for &t in &[0.1, 0.5, 1.0] {
            let expected = -ou.increment_cumulant(1.0, t).unwrap();
            assert!((model.drift(t) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_paths_stay_on_the_curve() {
        let curve = ForwardCurve::flat(15.0).unwrap();
        let model = OneFactorSpotModel::new(curve, 0.5, 0.2, 1e-30).unwrap();
        let grid = TimeGrid::uniform(1.0, 12).unwrap();
        let paths = model.simulate_spot_paths(&grid, 3, 11).unwrap();
        for p in 0..3 {
            for j in 0..=12 {
                assert_eq!(paths.value(p, j), 15.0);
            }
        }
    }

    #[test]
    fn spot_paths_start_at_curve_times_initial_factor() {
        let ou = OuVgParams::new(0.2, VgParams::new(0.025, 0.02, 0.3).unwrap(), 0.3).unwrap();
        let vg2 = VgParams::new(0.0, 0.2, 0.1).unwrap();
        let model = TwoFactorSpotModel::new(ForwardCurve::flat(15.0).unwrap(), ou, vg2).unwrap();
        let grid = TimeGrid::uniform(0.5, 2).unwrap();
        let paths = model.simulate_spot_paths(&grid, 4, 5).unwrap();
        for p in 0..4 {
            assert!((paths.value(p, 0) - 15.0 * 0.3f64.exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn martingale_identity_one_factor() {
        let model = cummins_1f();
        let grid = TimeGrid::uniform(1.0, 4).unwrap();
        let paths = model.simulate_spot_paths(&grid, 200_000, 31).unwrap();
        for j in [2, 4] {
            let ratios: Vec<f64> = paths.column(j).iter().map(|s| s / 15.0).collect();
            let (mean, se) = sample_mean_se(&ratios);
            assert!(
                (mean - 1.0).abs() < 4.0 * se,
                "martingale violated at j = {j}: {mean} (se {se})"
            );
        }
    }

    #[test]
    fn martingale_identity_two_factor() {
        let model = two_factor();
        let grid = TimeGrid::uniform(1.0, 4).unwrap();
        let paths = model.simulate_spot_paths(&grid, 200_000, 32).unwrap();
        let ratios: Vec<f64> = paths.terminal_values().iter().map(|s| s / 15.0).collect();
        let (mean, se) = sample_mean_se(&ratios);
        assert!(
            (mean - 1.0).abs() < 4.0 * se,
            "martingale violated: {mean} (se {se})"
        );
    }

    #[test]
    fn spot_paths_reproducible() {
        let model = two_factor();
        let grid = TimeGrid::uniform(1.0, 10).unwrap();
        let a = model.simulate_spot_paths(&grid, 6, 77).unwrap();
        let b = model.simulate_spot_paths(&grid, 6, 77).unwrap();
        for p in 0..6 {
            assert_eq!(a.path(p), b.path(p));
        }
    }
}
