//! Shared oracles for the integration and acceptance suites.
//!
//! Everything here is deliberately independent of the library's numerics:
//! quadrature instead of closed forms, a Lanczos log-gamma instead of the
//! library's Stirling series, and a plain dynamic program for the intrinsic
//! storage value.

#![allow(dead_code)]

use ouvg::{RngStream, VgParams};

pub const PI: f64 = std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Basic statistics
// ---------------------------------------------------------------------------

pub fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

/// Adaptive Simpson integration of `f` over `[a, b]` (either orientation).
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// `Li2(z)` by direct quadrature of `-∫_0^z log(1-y)/y dy`.
pub fn dilog_quadrature(z: f64) -> f64 {
    let integrand = |y: f64| {
        if y == 0.0 {
            1.0
        } else {
            -(-y).ln_1p() / y
        }
    };
    adaptive_simpson(&integrand, 0.0, z, 1e-13)
}

/// Log-MGF of the gamma-OU increment law by quadrature:
/// `rho_Y(u, dt) = -(alpha/k) ∫_{e^{-k dt}}^{1} log(1 - u x / beta) / x dx`,
/// valid for `u < beta`. Negative `u` gives the paper's
/// `log(1 + |u| x / beta)` display.
pub fn gamma_ou_log_mgf_quadrature(u: f64, alpha: f64, beta: f64, k: f64, dt: f64) -> f64 {
    assert!(u < beta);
    let integrand = |x: f64| (-u * x / beta).ln_1p() / x;
    -(alpha / k) * adaptive_simpson(&integrand, (-k * dt).exp(), 1.0, 1e-13)
}

/// Log-MGF of the one-step OU-VG increment (started from zero) by
/// quadrature over both gamma legs.
pub fn ouvg_increment_log_mgf_quadrature(u: f64, vg: &VgParams, k: f64, dt: f64) -> f64 {
    let gd = vg.gamma_difference();
    let alpha = 1.0 / vg.nu();
    gamma_ou_log_mgf_quadrature(u, alpha, gd.rate_pos(), k, dt)
        + gamma_ou_log_mgf_quadrature(-u, alpha, gd.rate_neg(), k, dt)
}

// ---------------------------------------------------------------------------
// Special functions (Lanczos route, independent of the library)
// ---------------------------------------------------------------------------

#[allow(clippy::excessive_precision)] // published coefficients, kept verbatim
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + 7.5;
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
    }
}

/// Regularized lower incomplete gamma `P(a, x)`, by series for `x < a+1`
/// and by continued fraction otherwise.
pub fn reg_inc_gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    let log_prefactor = a * x.ln() - x - ln_gamma(a);
    if x < a + 1.0 {
        // Series expansion around zero.
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut n = 0.0;
        loop {
            n += 1.0;
            term *= x / (a + n);
            sum += term;
            if term.abs() < sum.abs() * 1e-16 || n > 10_000.0 {
                break;
            }
        }
        (sum.ln() + log_prefactor).exp()
    } else {
        // Modified Lentz continued fraction for Q(a, x).
        const FPMIN: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        let mut i = 1.0;
        loop {
            let an = -i * (i - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < FPMIN {
                d = FPMIN;
            }
            c = b + an / c;
            if c.abs() < FPMIN {
                c = FPMIN;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 3e-16 || i > 10_000.0 {
                break;
            }
            i += 1.0;
        }
        1.0 - (log_prefactor.exp() * h)
    }
}

pub fn gamma_cdf(x: f64, shape: f64, rate: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        reg_inc_gamma_p(shape, rate * x)
    }
}

pub fn exponential_cdf(x: f64, rate: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -(-rate * x).exp_m1()
    }
}

pub fn laplace_cdf(x: f64, mu: f64) -> f64 {
    if x < 0.0 {
        0.5 * (x / mu).exp()
    } else {
        1.0 - 0.5 * (-x / mu).exp()
    }
}

pub fn erf(x: f64) -> f64 {
    x.signum() * reg_inc_gamma_p(0.5, x * x)
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + erf(x / std::f64::consts::SQRT_2))
}

/// Chi-square upper tail probability `Q(stat; df)`.
pub fn chi_square_p_value(stat: f64, df: f64) -> f64 {
    1.0 - reg_inc_gamma_p(0.5 * df, 0.5 * stat)
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov tests
// ---------------------------------------------------------------------------

/// Kolmogorov survival function `Q_KS(t) = 2 Σ (-1)^{k-1} e^{-2 k² t²}`.
fn kolmogorov_q(t: f64) -> f64 {
    if t < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * t * t).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn ks_p_from_d(d: f64, n_eff: f64) -> f64 {
    let sqrt_n = n_eff.sqrt();
    kolmogorov_q((sqrt_n + 0.12 + 0.11 / sqrt_n) * d)
}

/// One-sample KS test against a continuous CDF; returns `(D, p)`.
pub fn ks_one_sample(sample: &[f64], cdf: &dyn Fn(f64) -> f64) -> (f64, f64) {
    let mut sorted = sample.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    (d, ks_p_from_d(d, n))
}

/// Two-sample KS test; returns `(D, p)`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let x = xs[i];
        let y = ys[j];
        if x <= y {
            i += 1;
        }
        if y <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let n_eff = na * nb / (na + nb);
    (d, ks_p_from_d(d, n_eff))
}

// ---------------------------------------------------------------------------
// Discretization oracle for the exact OU-VG step
// ---------------------------------------------------------------------------

/// One draw of `∫_0^dt e^{-k(dt-v)} dV(v)` by an Euler discretization with
/// exact VG increments on `substeps` sub-intervals (left-endpoint weights,
/// precomputed by the caller via [`euler_weights`]).
pub fn discretized_ouvg_increment(
    vg: &VgParams,
    weights: &[f64],
    delta: f64,
    stream: &mut RngStream,
) -> f64 {
    let mut acc = 0.0;
    for &w in weights {
        acc += w * vg.sample_increment(delta, stream).unwrap();
    }
    acc
}

pub fn euler_weights(k: f64, dt: f64, substeps: usize) -> (Vec<f64>, f64) {
    let delta = dt / substeps as f64;
    let weights = (0..substeps)
        .map(|j| (-k * (dt - j as f64 * delta)).exp())
        .collect();
    (weights, delta)
}

// ---------------------------------------------------------------------------
// Intrinsic storage value (deterministic dynamic program on the curve)
// ---------------------------------------------------------------------------

pub struct IntrinsicStorage {
    pub c_min: f64,
    pub c_max: f64,
    pub a_in: f64,
    pub a_w: f64,
    pub k_in: f64,
    pub k_out: f64,
    pub k_n: f64,
    pub volume_grid_steps: usize,
    pub c0: f64,
    /// Terminal rule `q(S(T), C(T))`; `None` means no settlement.
    pub penalty_coeff: Option<f64>,
}

/// Deterministic dynamic program on the forward curve alone, with the same
/// regime cash flows, volume grid and feasibility rules as the stochastic
/// valuation. `forwards` holds `F(0, t_j)` on the decision grid (terminal
/// point included).
pub fn intrinsic_storage_value(spec: &IntrinsicStorage, forwards: &[f64]) -> f64 {
    let m = forwards.len() - 1;
    let n_levels = spec.volume_grid_steps + 1;
    let spacing = (spec.c_max - spec.c_min) / spec.volume_grid_steps as f64;
    let snap = |c: f64| -> usize {
        (((c - spec.c_min) / spacing).round() as i64).clamp(0, n_levels as i64 - 1) as usize
    };
    let tol = 1e-9 * (spec.c_max - spec.c_min);
    let levels: Vec<f64> = (0..n_levels)
        .map(|g| spec.c_min + g as f64 * spacing)
        .collect();

    let mut next: Vec<f64> = levels
        .iter()
        .map(|&c| match spec.penalty_coeff {
            Some(coeff) => -coeff * forwards[m] * (spec.c0 - c).max(0.0),
            None => 0.0,
        })
        .collect();

    for i in (0..m).rev() {
        let s = forwards[i];
        let mut cur = vec![0.0f64; n_levels];
        for (g, &c) in levels.iter().enumerate() {
            let mut best = -spec.k_n + next[g];
            if c + spec.a_in <= spec.c_max + tol {
                best = best.max(-s - spec.k_in * spec.a_in + next[snap(c + spec.a_in)]);
            }
            if c - spec.a_w >= spec.c_min - tol {
                best = best.max(s - spec.k_out * spec.a_w + next[snap(c - spec.a_w)]);
            }
            cur[g] = best;
        }
        next = cur;
    }
    next[snap(spec.c0)]
}
