//! Explicit upper bounds on the constants, and the spectral estimates that
//! consume `Gamma_p`.

use std::f64::consts::PI;

use crate::constants::{c_n_alpha, gamma_p, limit_constant, ExponentPair};
use crate::special_fn::{lambert_w0, INV_E};
use crate::{Error, Result};

/// A finite nonincreasing sequence of nonnegative reals, e.g. singular
/// numbers or approximation numbers of a compact operator.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumSample {
    values: Vec<f64>,
}

impl SpectrumSample {
    /// Sorts `values` into nonincreasing order. Negative or non-finite
    /// entries are rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::domain(format!(
                "spectrum entries must be finite and nonnegative, got {bad}"
            )));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(SpectrumSample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `sum_k s_k^p`.
    pub fn power_sum(&self, p: f64) -> f64 {
        // smallest first
        self.values.iter().rev().map(|s| s.powf(p)).sum()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha must lie in [0, 1], got {alpha}")))
    }
}

/// `(1 - alpha) C(n, 0) + alpha C(n, 1)`, the chord above the convex map
/// `alpha -> C(n, alpha)`.
pub fn convexity_upper(n: u32, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("convexity bound needs n >= 1"));
    }
    check_alpha(alpha)?;
    let c0 = c_n_alpha(ExponentPair::new(n, 0.0)?)?.value;
    let c1 = c_n_alpha(ExponentPair::new(n, 1.0)?)?.value;
    Ok((1.0 - alpha) * c0 + alpha * c1)
}

/// `(1 - alpha)(1 + W(1/e)) + alpha/2`, the chord bound for `n = 1`.
pub fn c1_upper(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let w = lambert_w0(INV_E)?;
    Ok((1.0 - alpha) * (1.0 + w) + 0.5 * alpha)
}

/// `1 - alpha (1 - min(1/x0, n/(n+1)))` for `n >= 2`; never above 1.
pub fn cn_upper(n: u32, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("cn_upper needs n >= 2, got {n}")));
    }
    check_alpha(alpha)?;
    let ratio = n as f64 / (n as f64 + 1.0);
    let m = limit_constant()?.min(ratio);
    Ok(1.0 - alpha * (1.0 - m))
}

/// `(1/alpha - 1)^(1 - alpha)`, an elementary bound on `C(0, alpha)`.
pub fn c0_upper(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("c0_upper needs alpha in (0, 1], got {alpha}")));
    }
    if alpha == 1.0 {
        return Ok(1.0);
    }
    Ok((1.0 / alpha - 1.0).powf(1.0 - alpha))
}

/// Marchetti's bound on `g_n`:
///
/// ```text
/// h_n = exp(-(n-1)/(4(n+1)) / (1 + (1 + 2/(1 + cosec(pi/(n+1))))^n))
/// ```
pub fn marchetti_h(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("h_n is defined for n >= 1"));
    }
    let nf = n as f64;
    let cosec = 1.0 / (PI / (nf + 1.0)).sin();
    let base = 1.0 + 2.0 / (1.0 + cosec);
    // base^n stays moderate: it tends to e^(2 pi)
    let inner = 1.0 + base.powf(nf);
    Ok((-(nf - 1.0) / (4.0 * (nf + 1.0)) / inner).exp())
}

/// Upper bound on `|det_p(I - K)|` from a sequence dominating the
/// eigenvalue moduli.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetBound {
    /// `Gamma_p * sum_k s_k^p`.
    pub log_bound: f64,
}

impl DetBound {
    /// `exp(log_bound)`, or a range error when it is not representable.
    pub fn linear(&self) -> Result<f64> {
        let v = self.log_bound.exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::range(format!(
                "determinant bound exp({}) overflows",
                self.log_bound
            )))
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("p must be a positive real, got {p}")))
    }
}

/// `|det_p(I - K)| <= exp(Gamma_p sum_k s_k(K)^p)`.
pub fn det_bound(p: f64, spectrum: &SpectrumSample) -> Result<DetBound> {
    check_p(p)?;
    Ok(DetBound {
        log_bound: gamma_p(p)? * spectrum.power_sum(p),
    })
}

/// Inputs to the eigenvalue-count estimate for `B = A + K`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigencountInput {
    pub p: f64,
    /// The constant `R_p` of the estimate; must be supplied by the caller.
    pub r_p: f64,
    /// `||A||`.
    pub norm_a: f64,
    /// Radius `s > ||A||` outside which eigenvalues are counted.
    pub s: f64,
    /// Approximation numbers `a_k(K)`.
    pub approx_numbers: SpectrumSample,
}

/// `Gamma_p R_p s / (s - ||A||)^(p+1) sum_k a_k^p`, an upper bound on the
/// number of discrete eigenvalues of `B` in `|lambda| > s`.
pub fn eigencount_bound(input: &EigencountInput) -> Result<f64> {
    check_p(input.p)?;
    if !(input.r_p > 0.0) || !input.r_p.is_finite() {
        return Err(Error::domain(format!("R_p must be positive, got {}", input.r_p)));
    }
    if !(input.norm_a >= 0.0) || !input.norm_a.is_finite() {
        return Err(Error::domain(format!("||A|| must be nonnegative, got {}", input.norm_a)));
    }
    if !(input.s > input.norm_a) || !input.s.is_finite() {
        return Err(Error::domain(format!(
            "need s > ||A||, got s = {} and ||A|| = {}",
            input.s, input.norm_a
        )));
    }
    let p = input.p;
    let sum = input.approx_numbers.power_sum(p);
    let geometry = input.s / (input.s - input.norm_a).powf(p + 1.0);
    Ok(gamma_p(p)? * input.r_p * geometry * sum)
}
