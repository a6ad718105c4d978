//! Arithmetic-average Asian option pricing by Monte Carlo.

use std::time::Instant;

use super::{PriceResult, TwoFactorSpotModel};
use crate::ou::TimeGrid;
use crate::{Error, Result};

/// European-style Asian option: payoff `(Σ w_i S(t_i) - K)^+` at the last
/// fixing date.
#[derive(Debug, Clone, PartialEq)]
pub struct AsianSpec {
    strike: f64,
    fixings: Vec<f64>,
    weights: Vec<f64>,
}

impl AsianSpec {
    /// Builds a spec from explicit fixing dates and weights. `weights =
    /// None` selects the equal-weight default `w_i = 1/d`.
    pub fn new(strike: f64, fixings: Vec<f64>, weights: Option<Vec<f64>>) -> Result<Self> {
        if !strike.is_finite() || strike < 0.0 {
            return Err(Error::domain(format!(
                "strike must be finite and >= 0, got {strike}"
            )));
        }
        if fixings.is_empty() {
            return Err(Error::domain("an Asian option needs at least one fixing"));
        }
        let mut prev = 0.0;
        for &t in &fixings {
            if !t.is_finite() || t <= prev {
                return Err(Error::domain(
                    "fixing dates must be positive and strictly increasing",
                ));
            }
            prev = t;
        }
        let weights = match weights {
            Some(w) => {
                if w.len() != fixings.len() {
                    return Err(Error::domain(format!(
                        "{} weights for {} fixings",
                        w.len(),
                        fixings.len()
                    )));
                }
                if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(Error::domain("weights must be finite and non-negative"));
                }
                w
            }
            None => vec![1.0 / fixings.len() as f64; fixings.len()],
        };
        Ok(Self {
            strike,
            fixings,
            weights,
        })
    }

    /// Equal-weight spec with `d` fixings evenly spaced up to `maturity`.
    pub fn equally_weighted(strike: f64, maturity: f64, d: usize) -> Result<Self> {
        if !maturity.is_finite() || maturity <= 0.0 {
            return Err(Error::domain(format!(
                "maturity must be finite and > 0, got {maturity}"
            )));
        }
        if d == 0 {
            return Err(Error::domain("an Asian option needs at least one fixing"));
        }
        let fixings = (1..=d).map(|i| maturity * i as f64 / d as f64).collect();
        AsianSpec::new(strike, fixings, None)
    }

    pub fn strike(&self) -> f64 {
        self.strike
    }

    pub fn fixings(&self) -> &[f64] {
        &self.fixings
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Monte Carlo price of an Asian option under the two-factor model.
///
/// The simulation grid is `{0} ∪ fixings`, so every fixing is sampled
/// exactly; the reported `error` is `stdev / sqrt(n_paths)`.
pub fn price_asian(
    model: &TwoFactorSpotModel,
    spec: &AsianSpec,
    n_paths: usize,
    seed: u64,
) -> Result<PriceResult> {
    let started = Instant::now();
    let mut times = Vec::with_capacity(spec.fixings.len() + 1);
    times.push(0.0);
    times.extend_from_slice(&spec.fixings);
    let grid = TimeGrid::from_times(times)?;

    let paths = model.simulate_spot_paths(&grid, n_paths, seed)?;
    let cpu_paths_seconds = started.elapsed().as_secs_f64();

    let payoffs: Vec<f64> = (0..n_paths)
        .map(|p| {
            let row = paths.path(p);
            let avg: f64 = spec.weights.iter().zip(&row[1..]).map(|(w, s)| w * s).sum();
            (avg - spec.strike).max(0.0)
        })
        .collect();

    Ok(PriceResult::from_samples(
        &payoffs,
        started.elapsed().as_secs_f64(),
        cpu_paths_seconds,
    ))
}
