//! The sharp constants `C(n, alpha)` and the quantities derived from them.
//!
//! For `n >= 1` the supremum over the complex plane is attained on the ray
//! `r >= 1 + 1/n`, so `C(n, alpha)` is a one-dimensional maximization of
//! `ln|E_n(r)| / r^(n + alpha)`. For `n = 0` there is a closed form in terms of
//! the Lambert W function.

use std::sync::OnceLock;

use crate::primary_factor::{check_admissible, ray_g};
use crate::special_fn::{
    expint_ei, find_root_bracketed, lambert_w0, maximize_bracketed, Bracket, DEFAULT_TOL,
};
use crate::{Error, Result};

/// Largest first-order optimality gap accepted in a [`ConstantResult`].
pub const RESIDUAL_TOL: f64 = 1e-8;

const SCAN_POINTS: usize = 64;
const MAX_DOUBLINGS: usize = 60;

/// Exponent pair `(n, alpha)` of the bound `exp(C |z|^(n + alpha))`.
///
/// Admissible pairs are `n >= 1` with `alpha` in `[0, 1]`, and `n = 0` with
/// `alpha` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    n: u32,
    alpha: f64,
}

impl ExponentPair {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        check_admissible(n, alpha)?;
        Ok(ExponentPair { n, alpha })
    }

    /// The pair `(ceil(p) - 1, p + 1 - ceil(p))` used for `Gamma_p`.
    pub fn for_p(p: f64) -> Result<Self> {
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::domain(format!("p must be a positive real, got {p}")));
        }
        let m = p.ceil();
        if m > u32::MAX as f64 {
            return Err(Error::domain(format!("p = {p} is too large")));
        }
        ExponentPair::new(m as u32 - 1, p + 1.0 - m)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `n + alpha`.
    pub fn exponent(&self) -> f64 {
        self.n as f64 + self.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    RayMaximization,
    ClosedForm,
    /// The supremum is a limit and is not attained.
    LimitDefinition,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::RayMaximization => "ray_maximization",
            Method::ClosedForm => "closed_form",
            Method::LimitDefinition => "limit_definition",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantResult {
    pub value: f64,
    /// Radius where the supremum is attained; 0 when it is only a limit.
    /// Infinite when the radius exceeds the f64 range (tiny `alpha` at `n = 0`).
    pub maximizing_radius: f64,
    pub method: Method,
    /// First-order optimality gap at `maximizing_radius`.
    pub residual: f64,
}

/// `C(n, alpha)`.
pub fn c_n_alpha(e: ExponentPair) -> Result<ConstantResult> {
    if e.n == 0 {
        c_0_alpha(e.alpha)
    } else {
        ray_maximum(e.n, e.alpha)
    }
}

/// `r * d/dr [ln|E_n(r)| / r^m]`.
///
/// From `d/dr ln|E_n(r)| = 1/(r-1) + sum_{k<n} r^k = r^n / (r - 1)` this is
/// `r^(1 - alpha) / (r - 1) - m * ray_g(r)`.
pub fn ray_slope(n: u32, alpha: f64, r: f64) -> f64 {
    let m = n as f64 + alpha;
    r.powf(1.0 - alpha) / (r - 1.0) - m * ray_g(n, alpha, r)
}

fn ray_maximum(n: u32, alpha: f64) -> Result<ConstantResult> {
    let lo = 1.0 + 1.0 / n as f64;
    let mut hi = f64::max(4.0, 2.0 * lo);
    let objective = |r: f64| ray_g(n, alpha, r);

    // coarse scan, geometric in r - 1 so that the 1/n scale near the left end
    // is resolved for large n
    let mut grid = Vec::with_capacity(SCAN_POINTS);
    let mut best;
    let mut doublings = 0;
    loop {
        let ratio = (hi - 1.0) / (lo - 1.0);
        grid.clear();
        grid.extend((0..SCAN_POINTS).map(|i| {
            if i == SCAN_POINTS - 1 {
                hi
            } else {
                1.0 + (lo - 1.0) * ratio.powf(i as f64 / (SCAN_POINTS - 1) as f64)
            }
        }));
        best = 0;
        let mut best_v = f64::NEG_INFINITY;
        for (i, &r) in grid.iter().enumerate() {
            let v = objective(r);
            if !v.is_finite() {
                return Err(Error::NonFinite { at: r, value: v });
            }
            if v > best_v {
                best_v = v;
                best = i;
            }
        }
        if best < SCAN_POINTS - 1 {
            break;
        }
        if doublings == MAX_DOUBLINGS {
            return Err(Error::Convergence(format!(
                "no interior maximum for (n, alpha) = ({n}, {alpha}) below r = {hi}"
            )));
        }
        hi *= 2.0;
        doublings += 1;
    }

    let cell = Bracket::new(grid[best.saturating_sub(1)], grid[(best + 1).min(SCAN_POINTS - 1)])?;
    let golden = maximize_bracketed(objective, cell, DEFAULT_TOL)?;

    // polish on the first-order condition when it changes sign in the cell
    let slope = |r: f64| ray_slope(n, alpha, r);
    let (s_lo, s_hi) = (slope(cell.lo()), slope(cell.hi()));
    let (argmax, value) = if s_lo >= 0.0 && s_hi <= 0.0 {
        let r = find_root_bracketed(slope, cell, DEFAULT_TOL)?;
        (r, objective(r))
    } else {
        (golden.argmax, golden.value)
    };

    // at the left end of the admissible ray only an increasing slope is a gap
    let s = slope(argmax);
    let residual = if argmax <= lo { s.max(0.0) } else { s.abs() };
    if residual > RESIDUAL_TOL {
        return Err(Error::Convergence(format!(
            "optimality gap {residual:e} at r = {argmax} for (n, alpha) = ({n}, {alpha})"
        )));
    }
    Ok(ConstantResult {
        value,
        maximizing_radius: argmax,
        method: Method::RayMaximization,
        residual,
    })
}

/// `ln r_alpha = -1/alpha - W(-(1/alpha) e^(-1/alpha))`.
fn ln_r_alpha(alpha: f64, w: f64) -> f64 {
    -1.0 / alpha - w
}

fn w_for_alpha(alpha: f64) -> Result<f64> {
    let inv = 1.0 / alpha;
    lambert_w0(-inv * (-inv).exp())
}

/// `C(0, alpha)` in closed form.
///
/// At `alpha = 1` the supremum `1` is only approached as `r -> 0`. Below 1 the
/// value is `(1/alpha) r^alpha (1 - r)^(1 - alpha)` with `r = r_alpha`, computed
/// through `ln r_alpha` so that small `alpha` does not underflow.
pub fn c_0_alpha(alpha: f64) -> Result<ConstantResult> {
    check_admissible(0, alpha)?;
    if alpha == 1.0 {
        return Ok(ConstantResult {
            value: 1.0,
            maximizing_radius: 0.0,
            method: Method::LimitDefinition,
            residual: 0.0,
        });
    }
    let w = w_for_alpha(alpha)?;
    let ln_r = ln_r_alpha(alpha, w);
    let r = ln_r.exp();
    let value = (alpha * ln_r).exp() * (1.0 - r).powf(1.0 - alpha) / alpha;

    // maximizer of ln(1 + R) / R^alpha, with ln(1 + R) = W + 1/alpha
    let log1p_radius = w + 1.0 / alpha;
    let radius = log1p_radius.exp_m1();
    // critical-point equation R = alpha (1 + R) ln(1 + R), relative form
    let residual = (1.0 - alpha * log1p_radius * (1.0 + radius.recip())).abs();

    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::range(format!("C(0, {alpha}) evaluated to {value}")));
    }
    if residual > RESIDUAL_TOL {
        return Err(Error::Convergence(format!(
            "closed form for C(0, {alpha}) has optimality gap {residual:e}"
        )));
    }
    Ok(ConstantResult {
        value,
        maximizing_radius: radius,
        method: Method::ClosedForm,
        residual,
    })
}

/// `r_alpha = -alpha W(-(1/alpha) e^(-1/alpha))`, which lies in `(0, alpha)`.
///
/// Underflows to 0 once `alpha` drops below about `1/745`.
pub fn r_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("r_alpha needs alpha in (0, 1), got {alpha}")));
    }
    let w = w_for_alpha(alpha)?;
    Ok(ln_r_alpha(alpha, w).exp())
}

/// `x0`, the positive zero of `e^x / x - Ei(x)`.
pub fn limit_root() -> Result<f64> {
    static ROOT: OnceLock<std::result::Result<f64, Error>> = OnceLock::new();
    ROOT.get_or_init(|| {
        let f = |x: f64| x.exp() / x - expint_ei(x).unwrap_or(f64::NAN);
        find_root_bracketed(f, Bracket::new(0.5, 3.0)?, DEFAULT_TOL)
    })
    .clone()
}

/// `1/x0`, the common limit of `C(n, alpha)` as `n -> infinity`.
pub fn limit_constant() -> Result<f64> {
    limit_root().map(f64::recip)
}

/// `Gamma_p = C(ceil(p) - 1, p + 1 - ceil(p))`.
pub fn gamma_p(p: f64) -> Result<f64> {
    c_n_alpha(ExponentPair::for_p(p)?).map(|c| c.value)
}

/// `g_n = (n + 1)/n * C(n, 1)`.
pub fn g_seq(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("g_n is defined for n >= 1"));
    }
    let c = c_n_alpha(ExponentPair::new(n, 1.0)?)?;
    Ok((n as f64 + 1.0) / n as f64 * c.value)
}
