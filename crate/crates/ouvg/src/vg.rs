//! Variance Gamma parameter algebra, cumulants, and a subordination sampler.
//!
//! A VG process is Brownian motion with drift `theta` and volatility `sigma`
//! run on a gamma clock `G(t, nu)` with unit mean rate and variance rate
//! `nu`:
//!
//! ```text
//! V(t) = theta G(t, nu) + sigma W(G(t, nu)).
//! ```
//!
//! Because VG has finite variation it is also the difference of two
//! increasing gamma processes; [`VgParams::gamma_difference`] produces that
//! `(mu_p, nu_p, mu_n, nu_n)` representation, which is what the exact OU
//! samplers in [`crate::ou`] consume.
//!
//! [`VgParams::sample_increment`] draws exact VG increments by subordination.
//! It exists as an independent cross-check of the gamma-difference route (the
//! two never share code beyond the raw variate generators) and as the driver
//! of the discretized-integral oracle used in the tests; the exact OU path
//! loop never calls it.

use num_complex::Complex64;

use crate::sampling::RngStream;
use crate::{Error, Result};

/// Parameters `(theta, nu, sigma)` of a Variance Gamma process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VgParams {
    theta: f64,
    nu: f64,
    sigma: f64,
}

/// Gamma-difference representation of a VG process: mean rates `mu_p`,
/// `mu_n` and variance rates `nu_p`, `nu_n` of the positive and negative
/// gamma legs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaDiffParams {
    pub mu_p: f64,
    pub nu_p: f64,
    pub mu_n: f64,
    pub nu_n: f64,
}

impl GammaDiffParams {
    /// Rate parameter `mu_p / nu_p` of the positive leg's marginal law.
    pub fn rate_pos(&self) -> f64 {
        self.mu_p / self.nu_p
    }

    /// Rate parameter `mu_n / nu_n` of the negative leg's marginal law.
    pub fn rate_neg(&self) -> f64 {
        self.mu_n / self.nu_n
    }
}

impl VgParams {
    /// Validates `nu > 0`, `sigma > 0` and finite `theta`.
    pub fn new(theta: f64, nu: f64, sigma: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::domain(format!("theta must be finite, got {theta}")));
        }
        if !nu.is_finite() || nu <= 0.0 {
            return Err(Error::domain(format!(
                "nu must be finite and > 0, got {nu}"
            )));
        }
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::domain(format!(
                "sigma must be finite and > 0, got {sigma}"
            )));
        }
        Ok(Self { theta, nu, sigma })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Splits the process into its two gamma legs:
    ///
    /// ```text
    /// mu_p = sqrt(theta^2 + 2 sigma^2/nu)/2 + theta/2,
    /// mu_n = sqrt(theta^2 + 2 sigma^2/nu)/2 - theta/2,
    /// nu_p = mu_p^2 nu,    nu_n = mu_n^2 nu.
    /// ```
    pub fn gamma_difference(&self) -> GammaDiffParams {
        let s = 0.5 * (self.theta * self.theta + 2.0 * self.sigma * self.sigma / self.nu).sqrt();
        let mu_p = s + 0.5 * self.theta;
        let mu_n = s - 0.5 * self.theta;
        GammaDiffParams {
            mu_p,
            nu_p: mu_p * mu_p * self.nu,
            mu_n,
            nu_n: mu_n * mu_n * self.nu,
        }
    }

    /// Characteristic exponent of `V(1)`:
    /// `psi(u) = -log(1 - i u theta nu + u^2 sigma^2 nu / 2) / nu`
    /// on the principal branch.
    pub fn char_exponent(&self, u: f64) -> Complex64 {
        let arg = Complex64::new(
            1.0 + 0.5 * u * u * self.sigma * self.sigma * self.nu,
            -u * self.theta * self.nu,
        );
        -arg.ln() / self.nu
    }

    /// Cumulant function `kappa(u) = log E[exp(u V(1))]`, defined where the
    /// moment generating function exists, i.e. while
    /// `1 - u theta nu - u^2 sigma^2 nu / 2 > 0`.
    pub fn cumulant(&self, u: f64) -> Result<f64> {
        let arg = 1.0 - u * self.theta * self.nu - 0.5 * u * u * self.sigma * self.sigma * self.nu;
        if arg <= 0.0 {
            return Err(Error::domain(format!(
                "u = {u} is outside the MGF domain of VG({}, {}, {})",
                self.theta, self.nu, self.sigma
            )));
        }
        Ok(-arg.ln() / self.nu)
    }

    /// Exact draw of `V(t + dt) - V(t)` by subordination: sample the gamma
    /// clock increment `g ~ Gamma(dt/nu, 1/nu)` and return
    /// `theta g + sigma sqrt(g) Z`.
    pub fn sample_increment(&self, dt: f64, stream: &mut RngStream) -> Result<f64> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::domain(format!(
                "dt must be finite and > 0, got {dt}"
            )));
        }
        let g = stream.gamma(dt / self.nu, 1.0 / self.nu)?;
        Ok(self.theta * g + self.sigma * g.sqrt() * stream.normal())
    }
}
