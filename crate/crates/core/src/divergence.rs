//! Divergence calculus for recovery thresholds.
//!
//! Let `X = log dP/dQ(A)` with `A ~ P` (a hidden-cycle edge weight after the
//! log-likelihood transform) and `Y = log dP/dQ(B)` with `B ~ Q` (an
//! off-cycle weight). Exact recovery phase transitions are governed by two
//! Renyi-type divergences,
//!
//! - `alpha = -2 log Int (dP dQ)^(1/2)` (order 1/2, the Bhattacharyya
//!   exponent), and
//! - `beta = -(3/2) log Int (dP)^(2/3) (dQ)^(1/3)` (order 2/3),
//!
//! which satisfy `alpha/2 < beta < alpha` whenever `P != Q`. The relaxation
//! and message-passing solvers succeed when `alpha - log n` grows, greedy
//! merging needs `beta - log n`, and per-vertex thresholding needs
//! `alpha - 2 log n`.
//!
//! The module also exposes the log moment generating functions
//! `psi_P(theta) = log E_P exp(theta X)` (with `psi_Q(theta) =
//! psi_P(theta - 1)`), their Legendre transforms, the large-deviation rate
//! function `F(x) = sup_{theta >= 0} { theta x - psi_P(-theta) -
//! psi_Q(theta) }` with `F(0) = alpha`, the crossing point `tau* =
//! psi_P'(-1/2)`, and a numeric evaluation of the impossibility bound
//! `sup_tau { log P(X <= tau) + log P(Y >= tau) } + log n` (nonnegative only
//! when recovery can fail).
//!
//! Erasures: with erasure probability `eta`, the observed ratio `X'` is `0`
//! with probability `eta` and `X` otherwise. The adjusted exponent is
//! `alpha' = -2 log(eta + (1 - eta) exp(-alpha/2))`, and the same mixture
//! rule applies to `beta` and to the log-MGFs. `alpha`, `beta` and `tau_star`
//! always refer to the un-erased pair `(P, Q)`; the `_erasure` variants and
//! the tail computations honor `eta`.
//!
//! All quantities are in nats.

use serde::Serialize;
use statrs::function::erf::erfc;
use statrs::function::gamma::{gamma_lr, gamma_ur};

use crate::error::{Error, Result};
use crate::model::{ModelKind, WeightModel};

/// Tolerance (in `theta`) of the golden-section searches below.
const GOLDEN_TOL: f64 = 1e-10;

/// Bhattacharyya exponent `alpha` of the un-erased pair `(P, Q)`.
pub fn alpha(m: &WeightModel) -> Result<f64> {
    m.validate()?;
    Ok(match m.kind {
        ModelKind::Gaussian { mu } => mu * mu / 4.0,
        ModelKind::Poisson { lambda, mu } => {
            let d = lambda.sqrt() - mu.sqrt();
            d * d
        }
        ModelKind::Bernoulli { p, q } => {
            -2.0 * ((p * q).sqrt() + ((1.0 - p) * (1.0 - q)).sqrt()).ln()
        }
    })
}

/// Order-2/3 exponent `beta` of the un-erased pair `(P, Q)`.
pub fn beta(m: &WeightModel) -> Result<f64> {
    m.validate()?;
    Ok(match m.kind {
        ModelKind::Gaussian { mu } => mu * mu / 6.0,
        ModelKind::Poisson { lambda, mu } => {
            (2.0 * lambda + mu) / 2.0 - 1.5 * lambda.powf(2.0 / 3.0) * mu.powf(1.0 / 3.0)
        }
        ModelKind::Bernoulli { p, q } => {
            -1.5 * (p.powf(2.0 / 3.0) * q.powf(1.0 / 3.0)
                + (1.0 - p).powf(2.0 / 3.0) * (1.0 - q).powf(1.0 / 3.0))
                .ln()
        }
    })
}

/// Erasure-adjusted exponent `alpha' = -2 log(eta + (1-eta) e^{-alpha/2})`.
pub fn alpha_erasure(m: &WeightModel) -> Result<f64> {
    let a = alpha(m)?;
    let eta = m.erasure;
    if eta == 0.0 {
        return Ok(a);
    }
    Ok(-2.0 * (eta + (1.0 - eta) * (-a / 2.0).exp()).ln())
}

/// Erasure-adjusted `beta`, by the same mixture rule at exponent 2/3.
pub fn beta_erasure(m: &WeightModel) -> Result<f64> {
    let b = beta(m)?;
    let eta = m.erasure;
    if eta == 0.0 {
        return Ok(b);
    }
    Ok(-1.5 * (eta + (1.0 - eta) * (-b / 1.5).exp()).ln())
}

fn psi_p_base(kind: ModelKind, theta: f64) -> f64 {
    match kind {
        ModelKind::Gaussian { mu } => 0.5 * theta * (1.0 + theta) * mu * mu,
        ModelKind::Poisson { lambda, mu } => {
            lambda * ((lambda / mu).powf(theta) - 1.0) - theta * (lambda - mu)
        }
        ModelKind::Bernoulli { p, q } => {
            // E_P e^{theta X} with X in {log(p/q), log((1-p)/(1-q))}.
            (p * (p / q).powf(theta) + (1.0 - p) * ((1.0 - p) / (1.0 - q)).powf(theta)).ln()
        }
    }
}

fn mix(eta: f64, psi: f64) -> f64 {
    if eta == 0.0 {
        psi
    } else {
        (eta + (1.0 - eta) * psi.exp()).ln()
    }
}

/// Log-MGF of `X` under `P` (erasure-aware).
pub fn psi_p(m: &WeightModel, theta: f64) -> Result<f64> {
    m.validate()?;
    Ok(mix(m.erasure, psi_p_base(m.kind, theta)))
}

/// Log-MGF of `Y` under `Q` (erasure-aware); equals `psi_p` shifted by one.
pub fn psi_q(m: &WeightModel, theta: f64) -> Result<f64> {
    m.validate()?;
    Ok(mix(m.erasure, psi_p_base(m.kind, theta - 1.0)))
}

/// The crossing point `tau* = psi_P'(-1/2) = psi_Q'(1/2)` of the un-erased
/// model, in closed form per family.
pub fn tau_star(m: &WeightModel) -> Result<f64> {
    m.validate()?;
    Ok(match m.kind {
        ModelKind::Gaussian { .. } => 0.0,
        ModelKind::Poisson { lambda, mu } => {
            (lambda * mu).sqrt() * (lambda / mu).ln() - (lambda - mu)
        }
        ModelKind::Bernoulli { p, q } => {
            let w1 = (p / q).ln();
            let w0 = ((1.0 - p) / (1.0 - q)).ln();
            let spq = (p * q).sqrt();
            let sbar = ((1.0 - p) * (1.0 - q)).sqrt();
            (spq * w1 + sbar * w0) / (spq + sbar)
        }
    })
}

/// Maximizes a concave function on `[lo, hi]` by golden section.
fn golden_max(mut lo: f64, mut hi: f64, f: &dyn Fn(f64) -> f64) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INVPHI * (hi - lo);
    let mut d = lo + INVPHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > GOLDEN_TOL {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INVPHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INVPHI * (hi - lo);
            fd = f(d);
        }
    }
    f(0.5 * (lo + hi))
}

/// `sup_{theta >= 0} f(theta)` for concave `f` with `f(0) = 0`, expanding
/// the bracket as needed; the result is clamped at zero, which absorbs
/// rounding fuzz near the boundary optimum. Returns infinity when the
/// objective keeps increasing past the expansion cap (degenerate models).
fn sup_nonneg(f: &dyn Fn(f64) -> f64) -> f64 {
    let mut hi = 1.0;
    while f(hi) > f(0.5 * hi) {
        hi *= 2.0;
        if hi > 1e18 {
            return f64::INFINITY;
        }
    }
    golden_max(0.0, hi, f).max(f(hi)).max(0.0)
}

/// Large-deviation rate function
/// `F(x) = sup_{theta >= 0} { theta x - psi_P(-theta) - psi_Q(theta) }`.
///
/// Satisfies `F(0) = alpha` and `F'(0) = 1/2`; erasure-aware through the
/// mixture log-MGFs.
pub fn rate_function(m: &WeightModel, x: f64) -> Result<f64> {
    m.validate()?;
    let eta = m.erasure;
    let g = move |theta: f64| {
        theta * x
            - mix(eta, psi_p_base(m.kind, -theta))
            - mix(eta, psi_p_base(m.kind, theta - 1.0))
    };
    Ok(sup_nonneg(&g))
}

/// Closed form of the Gaussian rate function (no erasure):
/// `F(x) = (x + mu^2)^2 / (4 mu^2)` for `x >= -mu^2` and `0` below.
pub fn rate_function_gaussian(mu2: f64, x: f64) -> f64 {
    if x < -mu2 {
        0.0
    } else {
        (x + mu2) * (x + mu2) / (4.0 * mu2)
    }
}

/// Legendre transform `E_P(tau) = sup_{theta >= 0} { -theta tau -
/// psi_P(-theta) }`, the exponent of `P(X <= tau)` for `tau` below the mean.
pub fn legendre_p(m: &WeightModel, tau: f64) -> Result<f64> {
    m.validate()?;
    let eta = m.erasure;
    let g = move |theta: f64| -theta * tau - mix(eta, psi_p_base(m.kind, -theta));
    Ok(sup_nonneg(&g))
}

/// Legendre transform `E_Q(tau) = sup_{theta >= 0} { theta tau -
/// psi_Q(theta) }`, the exponent of `P(Y >= tau)` for `tau` above the mean.
/// At `tau = tau*` the two exponents split `alpha`:
/// `E_P(tau*) + E_Q(tau*) = alpha`.
pub fn legendre_q(m: &WeightModel, tau: f64) -> Result<f64> {
    m.validate()?;
    let eta = m.erasure;
    let g = move |theta: f64| theta * tau - mix(eta, psi_p_base(m.kind, theta - 1.0));
    Ok(sup_nonneg(&g))
}

/// Mean and variance of the log-likelihood ratio under `P` and `Q`
/// (un-erased).
fn llr_moments(kind: ModelKind) -> ((f64, f64), (f64, f64)) {
    match kind {
        ModelKind::Gaussian { mu } => {
            let m2 = mu * mu;
            ((m2 / 2.0, m2), (-m2 / 2.0, m2))
        }
        ModelKind::Poisson { lambda, mu } => {
            let a = (lambda / mu).ln();
            let b = -(lambda - mu);
            ((a * lambda + b, a * a * lambda), (a * mu + b, a * a * mu))
        }
        ModelKind::Bernoulli { p, q } => {
            let w1 = (p / q).ln();
            let w0 = ((1.0 - p) / (1.0 - q)).ln();
            let mean = |r: f64| r * w1 + (1.0 - r) * w0;
            let var = |r: f64| {
                let mu = mean(r);
                r * (w1 - mu) * (w1 - mu) + (1.0 - r) * (w0 - mu) * (w0 - mu)
            };
            ((mean(p), var(p)), (mean(q), var(q)))
        }
    }
}

fn mixture_variance(eta: f64, mean: f64, var: f64) -> f64 {
    let second = (1.0 - eta) * (var + mean * mean);
    second - ((1.0 - eta) * mean) * ((1.0 - eta) * mean)
}

/// `P(X <= tau)` under `P`, erasure-aware, in linear scale.
fn cdf_x(m: &WeightModel, tau: f64) -> f64 {
    let eta = m.erasure;
    let base = match m.kind {
        ModelKind::Gaussian { mu } => {
            let z = (tau - mu * mu / 2.0) / mu;
            0.5 * erfc(-z / std::f64::consts::SQRT_2)
        }
        ModelKind::Poisson { lambda, mu } => {
            let a = (lambda / mu).ln();
            let b = -(lambda - mu);
            if a == 0.0 {
                if tau >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                let t = (tau - b) / a;
                let k = (t + 1e-9 * t.abs().max(1.0)).floor();
                if k < 0.0 {
                    0.0
                } else {
                    gamma_ur(k + 1.0, lambda)
                }
            }
        }
        ModelKind::Bernoulli { p, q } => {
            let w1 = (p / q).ln();
            let w0 = ((1.0 - p) / (1.0 - q)).ln();
            if tau >= w1 {
                1.0
            } else if tau >= w0 {
                1.0 - p
            } else {
                0.0
            }
        }
    };
    eta * f64::from(u8::from(tau >= 0.0)) + (1.0 - eta) * base
}

/// `P(Y >= tau)` under `Q`, erasure-aware, in linear scale.
fn sf_y(m: &WeightModel, tau: f64) -> f64 {
    let eta = m.erasure;
    let base = match m.kind {
        ModelKind::Gaussian { mu } => {
            let z = (tau + mu * mu / 2.0) / mu;
            0.5 * erfc(z / std::f64::consts::SQRT_2)
        }
        ModelKind::Poisson { lambda, mu } => {
            let a = (lambda / mu).ln();
            let b = -(lambda - mu);
            if a == 0.0 {
                if tau <= 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                let t = (tau - b) / a;
                let k = (t - 1e-9 * t.abs().max(1.0)).ceil();
                if k <= 0.0 {
                    1.0
                } else {
                    gamma_lr(k, mu)
                }
            }
        }
        ModelKind::Bernoulli { p, q } => {
            let w1 = (p / q).ln();
            let w0 = ((1.0 - p) / (1.0 - q)).ln();
            if tau <= w0 {
                1.0
            } else if tau <= w1 {
                q
            } else {
                0.0
            }
        }
    };
    eta * f64::from(u8::from(tau <= 0.0)) + (1.0 - eta) * base
}

/// Numeric impossibility gap
/// `sup_tau { log P(X <= tau) + log P(Y >= tau) } + log n`,
/// maximized over a 512-point grid spanning `tau* +- 6` standard deviations
/// of `Y - X`. Exact recovery is impossible (up to an additive constant) when
/// this is bounded below; strongly negative values are consistent with
/// recoverability.
pub fn converse_gap(m: &WeightModel, n: usize) -> Result<f64> {
    m.validate()?;
    if n < 3 {
        return Err(Error::invalid(format!("need n >= 3, got {n}")));
    }
    let ts = tau_star(m)?;
    let ((mean_p, var_p), (mean_q, var_q)) = llr_moments(m.kind);
    let sd = (mixture_variance(m.erasure, mean_p, var_p)
        + mixture_variance(m.erasure, mean_q, var_q))
    .sqrt();
    let mut best = f64::NEG_INFINITY;
    let points = 512;
    for i in 0..points {
        let tau = if sd == 0.0 {
            ts
        } else {
            ts + sd * (-6.0 + 12.0 * i as f64 / (points - 1) as f64)
        };
        let v = cdf_x(m, tau).ln() + sf_y(m, tau).ln();
        if v > best {
            best = v;
        }
    }
    Ok(best + (n as f64).ln())
}

/// Summary of the divergence quantities for one model at one problem size.
#[derive(Clone, Debug, Serialize)]
pub struct DivergenceReport {
    pub model: WeightModel,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub alpha_erasure: f64,
    pub beta_erasure: f64,
    pub tau_star: f64,
    pub converse_gap: f64,
}

pub fn report(m: &WeightModel, n: usize) -> Result<DivergenceReport> {
    Ok(DivergenceReport {
        model: *m,
        n,
        alpha: alpha(m)?,
        beta: beta(m)?,
        alpha_erasure: alpha_erasure(m)?,
        beta_erasure: beta_erasure(m)?,
        tau_star: tau_star(m)?,
        converse_gap: converse_gap(m, n)?,
    })
}

/// Sufficient-condition margin for one algorithm; positive margins predict
/// exact recovery for large `n`.
#[derive(Clone, Debug, Serialize)]
pub struct AlgorithmMargin {
    pub algorithm: &'static str,
    pub margin: f64,
    pub satisfied: bool,
}

/// Sufficient-condition margins per algorithm (erasure-adjusted exponents):
/// `alpha - log n` for the relaxation and message passing, `beta - log n`
/// for greedy merging, `alpha - 2 log n` for the per-vertex baselines.
pub fn sufficient_conditions(m: &WeightModel, n: usize) -> Result<Vec<AlgorithmMargin>> {
    if n < 3 {
        return Err(Error::invalid(format!("need n >= 3, got {n}")));
    }
    let a = alpha_erasure(m)?;
    let b = beta_erasure(m)?;
    let ln_n = (n as f64).ln();
    let entry = |algorithm: &'static str, margin: f64| AlgorithmMargin {
        algorithm,
        margin,
        satisfied: margin > 0.0,
    };
    Ok(vec![
        entry("f2f", a - ln_n),
        entry("bp", a - ln_n),
        entry("gm", b - ln_n),
        entry("threshold", a - 2.0 * ln_n),
        entry("nn", a - 2.0 * ln_n),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn models() -> Vec<WeightModel> {
        vec![
            WeightModel::gaussian(2.0).unwrap(),
            WeightModel::gaussian(0.7).unwrap(),
            WeightModel::poisson(4.0, 1.0).unwrap(),
            WeightModel::poisson(9.5, 2.5).unwrap(),
            WeightModel::bernoulli(0.9, 0.1).unwrap(),
            WeightModel::bernoulli(0.55, 0.3).unwrap(),
        ]
    }

    #[test]
    fn alpha_closed_forms() {
        assert_relative_eq!(alpha(&WeightModel::gaussian(2.0).unwrap()).unwrap(), 1.0);
        assert_relative_eq!(alpha(&WeightModel::poisson(4.0, 1.0).unwrap()).unwrap(), 1.0);
        let m = WeightModel::bernoulli(0.9, 0.1).unwrap();
        let expect = -2.0 * ((0.09f64).sqrt() + (0.09f64).sqrt()).ln();
        assert_relative_eq!(alpha(&m).unwrap(), expect, max_relative = 1e-14);
    }

    #[test]
    fn beta_between_half_alpha_and_alpha() {
        for m in models() {
            let a = alpha(&m).unwrap();
            let b = beta(&m).unwrap();
            assert!(0.5 * a < b && b < a, "model {m}: alpha {a}, beta {b}");
        }
        // Gaussian has beta = (2/3) alpha exactly.
        let g = WeightModel::gaussian(3.0).unwrap();
        assert_relative_eq!(
            beta(&g).unwrap(),
            alpha(&g).unwrap() * 2.0 / 3.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn psi_examples() {
        let m = WeightModel::poisson(4.0, 1.0).unwrap();
        assert_relative_eq!(psi_p(&m, 1.0).unwrap(), 9.0, max_relative = 1e-12);
        let g = WeightModel::gaussian(2.0).unwrap();
        assert_relative_eq!(psi_p(&g, 1.0).unwrap(), 4.0, max_relative = 1e-12);
        // psi_P(0) = psi_Q(1) = 0 always.
        for m in models() {
            assert!(psi_p(&m, 0.0).unwrap().abs() < 1e-12);
            assert!(psi_q(&m, 1.0).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn psi_at_minus_half_is_minus_half_alpha() {
        for m in models() {
            let a = alpha(&m).unwrap();
            assert_relative_eq!(psi_p(&m, -0.5).unwrap(), -a / 2.0, max_relative = 1e-10);
            assert_relative_eq!(psi_q(&m, 0.5).unwrap(), -a / 2.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn tau_star_closed_forms() {
        assert_eq!(tau_star(&WeightModel::gaussian(5.0).unwrap()).unwrap(), 0.0);
        let m = WeightModel::poisson(4.0, 1.0).unwrap();
        assert_relative_eq!(
            tau_star(&m).unwrap(),
            2.0 * 4.0f64.ln() - 3.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn tau_star_matches_numeric_derivative() {
        let h = 1e-6;
        for m in models() {
            let d = (psi_p(&m, -0.5 + h).unwrap() - psi_p(&m, -0.5 - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(tau_star(&m).unwrap(), d, max_relative = 1e-6, epsilon = 1e-8);
        }
    }

    #[test]
    fn rate_function_matches_gaussian_closed_form() {
        let m = WeightModel::gaussian(2.0).unwrap();
        for &x in &[-5.0, -4.0, -2.0, -1.0, 0.0, 1.0, 4.0, 10.0] {
            assert_relative_eq!(
                rate_function(&m, x).unwrap(),
                rate_function_gaussian(4.0, x),
                max_relative = 1e-8,
                epsilon = 1e-10
            );
        }
        assert_relative_eq!(rate_function_gaussian(4.0, 4.0), 4.0);
    }

    #[test]
    fn rate_function_at_zero_is_alpha() {
        for m in models() {
            assert_relative_eq!(
                rate_function(&m, 0.0).unwrap(),
                alpha(&m).unwrap(),
                max_relative = 1e-8
            );
        }
    }

    #[test]
    fn rate_function_slope_at_zero_is_half() {
        let h = 1e-4;
        for m in models() {
            let d = (rate_function(&m, h).unwrap() - rate_function(&m, -h).unwrap()) / (2.0 * h);
            assert!((d - 0.5).abs() < 1e-4, "model {m}: F'(0) = {d}");
        }
    }

    #[test]
    fn legendre_split_at_tau_star() {
        for m in models() {
            let ts = tau_star(&m).unwrap();
            let sum = legendre_p(&m, ts).unwrap() + legendre_q(&m, ts).unwrap();
            assert_relative_eq!(sum, alpha(&m).unwrap(), max_relative = 1e-8);
        }
    }

    #[test]
    fn erasure_exponents() {
        let m = WeightModel::gaussian(2.0).unwrap().with_erasure(0.5).unwrap();
        // alpha = 1, alpha' = -2 log(0.5 + 0.5 e^{-1/2}).
        let expect = -2.0 * (0.5 + 0.5 * (-0.5f64).exp()).ln();
        assert_relative_eq!(alpha_erasure(&m).unwrap(), expect, max_relative = 1e-14);
        assert!(alpha_erasure(&m).unwrap() < alpha(&m).unwrap());
        // eta = 0 leaves the exponents unchanged.
        let base = WeightModel::gaussian(2.0).unwrap();
        assert_eq!(alpha(&base).unwrap(), alpha_erasure(&base).unwrap());
        assert_eq!(beta(&base).unwrap(), beta_erasure(&base).unwrap());
    }

    #[test]
    fn converse_gap_degenerate_model_gives_log_n() {
        let m = WeightModel::bernoulli(0.4, 0.4).unwrap();
        assert_relative_eq!(
            converse_gap(&m, 1000).unwrap(),
            1000f64.ln(),
            max_relative = 1e-12
        );
        let p = WeightModel::poisson(2.0, 2.0).unwrap();
        assert_relative_eq!(
            converse_gap(&p, 50).unwrap(),
            50f64.ln(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn converse_gap_decreases_with_signal() {
        let n = 1000;
        let weak = WeightModel::gaussian_mu2(4.0 * (n as f64).ln()).unwrap();
        let strong = WeightModel::gaussian_mu2(8.0 * (n as f64).ln()).unwrap();
        let gw = converse_gap(&weak, n).unwrap();
        let gs = converse_gap(&strong, n).unwrap();
        assert!(gs < gw, "gap at 8 log n ({gs}) vs 4 log n ({gw})");
        // At the threshold the bound is already strongly negative.
        assert!(gw < -1.0, "gap {gw}");
    }

    #[test]
    fn margins_example() {
        let m = WeightModel::gaussian_mu2(30.0).unwrap();
        let table = sufficient_conditions(&m, 1000).unwrap();
        let get = |name: &str| table.iter().find(|e| e.algorithm == name).unwrap();
        assert_relative_eq!(get("f2f").margin, 7.5 - 1000f64.ln(), max_relative = 1e-12);
        assert!(get("f2f").satisfied);
        assert!((get("f2f").margin - 0.59).abs() < 0.01);
        assert!(!get("threshold").satisfied);
        assert!((get("threshold").margin + 6.32).abs() < 0.01);
    }

    #[test]
    fn report_is_serializable() {
        let m = WeightModel::poisson(4.0, 1.0).unwrap();
        let r = report(&m, 100).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"alpha\":"));
    }

    proptest! {
        #[test]
        fn psi_shift_identity(theta in -3.0f64..3.0, pick in 0usize..6, eta in 0.0f64..0.9) {
            let m = models()[pick].with_erasure(eta).unwrap();
            let lhs = psi_q(&m, theta).unwrap();
            let rhs = psi_p(&m, theta - 1.0).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12, "{} vs {}", lhs, rhs);
        }

        #[test]
        fn alpha_beta_order_random_models(mu in 0.3f64..5.0, lambda in 1.0f64..25.0, ratio in 0.05f64..0.95, p in 0.05f64..0.95, dq in 0.05f64..0.9) {
            let q = p * dq;
            for m in [
                WeightModel::gaussian(mu).unwrap(),
                WeightModel::poisson(lambda, lambda * ratio).unwrap(),
                WeightModel::bernoulli(p, q).unwrap(),
            ] {
                let a = alpha(&m).unwrap();
                let b = beta(&m).unwrap();
                prop_assert!(a > 0.0 && 0.5 * a < b && b < a, "model {}: alpha {}, beta {}", m, a, b);
            }
        }

        #[test]
        fn rate_function_is_nonnegative_and_zero_deep_left(pick in 0usize..6, x in -20.0f64..20.0) {
            let m = models()[pick];
            let f = rate_function(&m, x).unwrap();
            prop_assert!(f >= 0.0);
        }
    }
}
