//! Tour of the analytic layer: the dilogarithm-based cumulant functions and
//! the self-decomposability structure they encode.
//!
//! ```sh
//! cargo run --release --example cumulant_identities
//! ```

use ouvg::special::dilog;
use ouvg::{OuVgParams, VgParams};

fn main() -> ouvg::Result<()> {
    let params = OuVgParams::new(0.2, VgParams::new(0.025, 0.02, 0.3)?, 0.0)?;

    // The stationary law is self-decomposable: for every t, the increment
    // cumulant is exactly the gap kappa(u) - kappa(u e^{-kt}).
    println!("self-decomposability: kappa(u) = kappa(u a) + rho(u, t), a = e^(-kt)");
    for &(u, t) in &[(1.0, 0.2), (-2.0, 0.5), (3.0, 2.0)] {
        let a = (-params.k() * t).exp();
        let lhs = params.stationary_cumulant(u)?;
        let rhs = params.stationary_cumulant(u * a)? + params.increment_cumulant(u, t)?;
        println!("  u = {u:5.2}, t = {t:3.1}:  {lhs:.12}  vs  {rhs:.12}");
    }

    // With theta = 0 the two gamma legs merge and the four dilogarithms
    // collapse into one through the duplication identity.
    let sym = OuVgParams::new(0.2162, VgParams::new(0.0, 0.256, 0.201)?, 0.0)?;
    println!("\nsymmetric case: kappa(u) = dilog(u^2 sigma^2 nu / 2) / (2 k nu)");
    for &u in &[0.5, 1.0, 2.5] {
        let general = sym.stationary_cumulant(u)?;
        let z = u * u * 0.201 * 0.201 * 0.256 / 2.0;
        let collapsed = dilog(z)? / (2.0 * 0.2162 * 0.256);
        println!("  u = {u:3.1}:  {general:.12}  vs  {collapsed:.12}");
    }

    // Conditional moments of one transition, the validation benchmarks.
    let m = params.conditional_moments(0.0, 0.2)?;
    println!("\none-step conditional moments from X(t) = 0, dt = 1/5:");
    println!("  mean     {:.8}", m.mean);
    println!("  variance {:.8}", m.variance);
    println!("  skewness {:.8}", m.skewness);
    println!("  kurtosis {:.8}", m.kurtosis);

    // The stationary variance is the dt -> infinity limit.
    let stationary = params.conditional_moments(0.0, 1e9)?;
    println!(
        "  stationary variance (dt -> inf): {:.8}",
        stationary.variance
    );
    Ok(())
}
