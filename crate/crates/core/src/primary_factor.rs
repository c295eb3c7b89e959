//! Evaluation of the primary factors `E_n(z) = (1 - z) exp(sum_{k=1}^n z^k / k)`.
//!
//! `ln|E_n|` is the quantity everything else is built on. Inside the disk
//! `|z| <= SERIES_RADIUS` it is computed from the tail of the Taylor series of
//! `log(1 - z)`, which avoids the cancellation between `ln|1 - z|` and the
//! partial sum; outside it the two pieces are added directly.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::special_fn::{maximize_bracketed, Bracket, DEFAULT_TOL};
use crate::{Error, Result};

/// Radius below which `ln|E_n|` is evaluated from the tail series.
pub const SERIES_RADIUS: f64 = 0.5;

/// Truncation target for the geometric tail bound `r^(K+1) / ((K+1)(1 - r))`.
const SERIES_TAIL_TOL: f64 = 1e-17;

/// Default angular resolution for [`circle_max`].
pub const DEFAULT_CIRCLE_SAMPLES: usize = 720;

/// Largest `x` with `exp(x)` finite.
const LN_MAX: f64 = 709.782_712_893_384;

/// Checks that `(n, alpha)` is an admissible exponent pair.
pub(crate) fn check_admissible(n: u32, alpha: f64) -> Result<()> {
    let ok = if n == 0 {
        alpha > 0.0 && alpha <= 1.0
    } else {
        (0.0..=1.0).contains(&alpha)
    };
    if ok {
        Ok(())
    } else if n == 0 {
        Err(Error::domain(format!("n = 0 requires alpha in (0, 1], got {alpha}")))
    } else {
        Err(Error::domain(format!("alpha must lie in [0, 1], got {alpha}")))
    }
}

fn check_point(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("z must have finite coordinates, got {z}")))
    }
}

/// `sum_{k=1}^n z^k / k`.
fn partial_log_sum(n: u32, z: Complex64) -> Complex64 {
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        power *= z;
        sum += power / k as f64;
    }
    sum
}

/// `E_n(z)`. Fails with a range error when `|E_n(z)|` exceeds `f64::MAX`.
pub fn eval_en(n: u32, z: Complex64) -> Result<Complex64> {
    check_point(z)?;
    let one_minus = Complex64::new(1.0, 0.0) - z;
    let s = partial_log_sum(n, z);
    if s.re <= 700.0 {
        return Ok(one_minus * s.exp());
    }
    let log_mag = s.re + one_minus.norm().ln();
    if log_mag > LN_MAX {
        return Err(Error::range(format!(
            "|E_{n}({z})| = exp({log_mag}) overflows"
        )));
    }
    Ok(Complex64::from_polar(log_mag.exp(), s.im + one_minus.arg()))
}

/// `ln|E_n(z)|`, switching between the tail series and the direct formula at
/// [`SERIES_RADIUS`]. Returns `-inf` at `z = 1`.
pub fn log_abs_en(n: u32, z: Complex64) -> f64 {
    log_abs_en_with_threshold(n, z, SERIES_RADIUS)
}

/// [`log_abs_en`] with an explicit series/direct switchover radius.
///
/// Thresholds are capped at 0.95 so the tail series always converges in a
/// bounded number of terms.
pub fn log_abs_en_with_threshold(n: u32, z: Complex64, threshold: f64) -> f64 {
    let threshold = threshold.min(0.95);
    if z.norm() <= threshold {
        log_abs_en_series(n, z)
    } else {
        log_abs_en_direct(n, z)
    }
}

/// `ln|1 - z| + sum_{k=1}^n Re(z^k) / k`.
pub fn log_abs_en_direct(n: u32, z: Complex64) -> f64 {
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = 0.0;
    for k in 1..=n {
        power *= z;
        sum += power.re / k as f64;
    }
    (Complex64::new(1.0, 0.0) - z).norm().ln() + sum
}

/// `-sum_{k > n} Re(z^k) / k`, truncated once the geometric tail bound drops
/// below 1e-17. Only meaningful for `|z| < 1`; returns NaN otherwise.
pub fn log_abs_en_series(n: u32, z: Complex64) -> f64 {
    let r = z.norm();
    if !(r < 1.0) {
        return f64::NAN;
    }
    if r == 0.0 {
        return 0.0;
    }
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        power *= z;
    }
    let mut sum = 0.0;
    let mut k = n as u64;
    let mut r_pow = r.powi(n as i32);
    loop {
        k += 1;
        power *= z;
        r_pow *= r;
        sum -= power.re / k as f64;
        let bound = r_pow * r / ((k + 1) as f64 * (1.0 - r));
        if bound < SERIES_TAIL_TOL {
            break;
        }
    }
    sum
}

/// `ln|E_n(r)| = ln(r - 1) + sum_{k=1}^n r^k / k` on the ray `r > 1`.
pub fn log_abs_en_ray(n: u32, r: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("ray formula needs n >= 1"));
    }
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::domain(format!("ray formula needs finite r > 1, got {r}")));
    }
    let mut power = 1.0;
    let mut sum = 0.0;
    for k in 1..=n {
        power *= r;
        sum += power / k as f64;
    }
    Ok((r - 1.0).ln() + sum)
}

/// `ln|E_n(r)| / r^(n + alpha)` for `r > 1`, evaluated without forming `r^n`.
///
/// Each term is scaled as `r^(k - n - alpha) / k`, so the result stays finite
/// for any `n` and `r` even when `ln|E_n(r)|` itself would overflow.
pub fn ray_g(n: u32, alpha: f64, r: f64) -> f64 {
    let m = n as f64 + alpha;
    let inv_r = r.recip();
    // descending from k = n, where the scale is r^(-alpha)
    let mut scale = r.powf(-alpha);
    let mut sum = 0.0;
    let mut terms = Vec::with_capacity(n as usize);
    for k in (1..=n).rev() {
        terms.push(scale / k as f64);
        scale *= inv_r;
    }
    for t in terms.iter().rev() {
        sum += t;
    }
    let log_part = (r - 1.0).ln() * (-m * r.ln()).exp();
    sum + log_part
}

/// `g(z) = ln|E_n(z)| / |z|^(n + alpha)`; `-inf` at `z = 1`.
pub fn g_value(n: u32, alpha: f64, z: Complex64) -> Result<f64> {
    check_admissible(n, alpha)?;
    check_point(z)?;
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::domain("g is undefined at z = 0"));
    }
    let num = log_abs_en(n, z);
    if num == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let den = r.powf(n as f64 + alpha);
    if !num.is_finite() || !den.is_finite() {
        return Err(Error::range(format!(
            "g_{n}({z}) not representable: ln|E| = {num}, |z|^m = {den}"
        )));
    }
    Ok(num / den)
}

/// Location and value of the maximum of `ln|E_n|` on a circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleMax {
    /// Angle in `(-pi, pi]`.
    pub theta: f64,
    pub value: f64,
}

/// Maximum of `ln|E_n(r e^{i theta})|` over `theta`: the best of `samples`
/// uniformly spaced angles (starting at 0), refined by golden-section search
/// within one grid cell on each side.
pub fn circle_max(n: u32, r: f64, samples: usize) -> Result<CircleMax> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("circle radius must be positive, got {r}")));
    }
    if samples < 8 {
        return Err(Error::domain(format!("need at least 8 samples, got {samples}")));
    }
    // -inf only occurs at z = 1; keep it ordered but finite for the solver
    let on_circle = |theta: f64| {
        let v = log_abs_en(n, Complex64::from_polar(r, theta));
        if v == f64::NEG_INFINITY {
            f64::MIN
        } else {
            v
        }
    };

    let cell = 2.0 * PI / samples as f64;
    let (best_k, best_v) = (0..samples)
        .map(|k| (k, on_circle(k as f64 * cell)))
        .fold((0, f64::NEG_INFINITY), |best, c| if c.1 > best.1 { c } else { best });

    let centre = best_k as f64 * cell;
    let report = maximize_bracketed(
        on_circle,
        Bracket::new(centre - cell, centre + cell)?,
        DEFAULT_TOL,
    )?;
    let (theta, value) = if report.value >= best_v {
        (report.argmax, report.value)
    } else {
        (centre, best_v)
    };
    Ok(CircleMax {
        theta: wrap_angle(theta),
        value,
    })
}

fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_3};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_en(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(eval_en(4, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(eval_en(3, c(1.0, 0.0)).unwrap().norm(), 0.0);
        let v = eval_en(1, c(2.0, 0.0)).unwrap();
        assert!((v.re + E * E).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
        assert_eq!(eval_en(0, c(3.0, -1.0)).unwrap(), c(-2.0, 1.0));
    }

    #[test]
    fn eval_overflow_is_range_error() {
        assert!(matches!(eval_en(1, c(800.0, 0.0)), Err(Error::Range(_))));
        assert!(eval_en(1, c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn eval_past_700_uses_polar_form() {
        // s = 703 exceeds the direct cutoff but |E| = 702 e^703 is representable
        let v = eval_en(1, c(703.0, 0.0)).unwrap();
        let want = 703.0_f64.exp() * 702.0;
        assert!((v.re + want).abs() / want < 1e-12);
    }

    #[test]
    fn log_abs_examples() {
        assert_eq!(log_abs_en(2, c(0.0, 0.0)), 0.0);
        assert!((log_abs_en(1, c(2.0, 0.0)) - 2.0).abs() < 1e-15);
        assert_eq!(log_abs_en(5, c(1.0, 0.0)), f64::NEG_INFINITY);

        // tail series -sum_{k=3}^{K} 0.3^k cos(k pi/3) / k with K past the 1e-16 bound
        let z = Complex64::from_polar(0.3, FRAC_PI_3);
        let mut oracle = 0.0;
        for k in 3..60 {
            oracle -= 0.3_f64.powi(k) * (k as f64 * FRAC_PI_3).cos() / k as f64;
        }
        assert!((log_abs_en(2, z) - oracle).abs() < 1e-12);
        // 40-digit reference
        assert!((log_abs_en(2, z) - 0.009_638_833_239_465_063).abs() < 1e-15);
    }

    #[test]
    fn series_and_direct_agree_near_threshold() {
        for n in 0..12 {
            for j in 0..40 {
                let z = Complex64::from_polar(0.4 + 0.005 * j as f64, 0.37 * j as f64);
                let s = log_abs_en_series(n, z);
                let d = log_abs_en_direct(n, z);
                assert!((s - d).abs() < 1e-12, "n={n} z={z}: {s} vs {d}");
            }
        }
    }

    #[test]
    fn ray_examples() {
        assert_eq!(log_abs_en_ray(1, 2.0).unwrap(), 2.0);
        assert_eq!(log_abs_en_ray(2, 2.0).unwrap(), 4.0);
        // 40-digit reference for ln(0.5) + 1.5 + 1.125 + 1.125
        assert!((log_abs_en_ray(3, 1.5).unwrap() - 3.056_852_819_440_054_7).abs() < 1e-14);
        assert!(log_abs_en_ray(2, 1.0).is_err());
        assert!(log_abs_en_ray(0, 2.0).is_err());
    }

    #[test]
    fn ray_matches_complex_evaluation() {
        for n in 1..8 {
            for &r in &[1.01, 1.5, 2.0, 3.7, 10.0] {
                let a = log_abs_en_ray(n, r).unwrap();
                let b = log_abs_en(n, c(r, 0.0));
                assert!((a - b).abs() <= 1e-13 * a.abs().max(1.0), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn ray_g_matches_ratio() {
        for n in 1..10 {
            for &alpha in &[0.0, 0.3, 1.0] {
                for &r in &[1.05, 2.0, 6.0] {
                    let direct = log_abs_en_ray(n, r).unwrap() / r.powf(n as f64 + alpha);
                    let scaled = ray_g(n, alpha, r);
                    assert!((direct - scaled).abs() <= 1e-14 * direct.abs().max(1.0));
                }
            }
        }
        // large n, where ln|E_n(r)| itself overflows
        let v = ray_g(500, 0.5, 1e3);
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn g_examples() {
        let v = g_value(1, 1.0, c(-1.0, 0.0)).unwrap();
        assert!((v - (2.0_f64.ln() - 1.0)).abs() < 1e-15);
        let v = g_value(1, 0.0, c(3.0, 0.0)).unwrap();
        assert!((v - (2.0_f64.ln() + 3.0) / 3.0).abs() < 1e-15);
        assert!(v > 1.0);
        assert_eq!(g_value(2, 0.5, c(1.0, 0.0)).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn g_domain_errors() {
        assert!(g_value(1, 0.5, c(0.0, 0.0)).is_err());
        assert!(g_value(0, 0.0, c(0.5, 0.0)).is_err());
        assert!(g_value(2, 1.5, c(0.5, 0.0)).is_err());
        assert!(g_value(2, -0.1, c(0.5, 0.0)).is_err());
        assert!(g_value(0, 1.0, c(0.5, 0.0)).is_ok());
    }

    #[test]
    fn circle_examples() {
        let m = circle_max(1, 2.0, 720).unwrap();
        assert!(m.theta.abs() < 1e-3, "theta = {}", m.theta);
        assert!((m.value - 2.0).abs() < 1e-9);

        let m = circle_max(2, 1.5, 720).unwrap();
        assert!((m.value - log_abs_en(2, c(1.5, 0.0))).abs() < 1e-8);

        for &r in &[0.3, 0.9, 1.7, 4.0] {
            let coarse = circle_max(1, r, 8).unwrap();
            let fine = circle_max(1, r, 4096).unwrap();
            assert!(coarse.value <= fine.value + 1e-9, "r = {r}");
        }
    }

    #[test]
    fn circle_through_the_zero() {
        let m = circle_max(1, 1.0, 720).unwrap();
        assert!(m.value.is_finite());
        assert!(circle_max(1, 0.0, 720).is_err());
        assert!(circle_max(1, 1.0, 4).is_err());
    }

    #[test]
    fn exp_log_consistency() {
        for n in 0..6 {
            for j in 0..30 {
                let z = Complex64::from_polar(0.1 + 0.2 * j as f64, 0.9 * j as f64);
                let Ok(e) = eval_en(n, z) else { continue };
                let lin = e.norm();
                let log = log_abs_en(n, z).exp();
                assert!((lin - log).abs() <= 1e-12 * lin, "n={n} z={z}: {lin} vs {log}");
            }
        }
    }

    #[test]
    fn growth_at_infinity() {
        for n in 1..=8 {
            // alpha = 0: approaches 1/n from above
            for &r in &[2.01, 3.0, 10.0, 100.0, 1e4] {
                assert!(ray_g(n, 0.0, r) > 1.0 / n as f64, "n={n} r={r}");
            }
            // alpha > 0: |g| eventually decreasing along every sampled ray
            for k in 0..8 {
                let z = |r: f64| Complex64::from_polar(r, k as f64 * std::f64::consts::PI / 4.0);
                let far: Vec<f64> = [50.0, 100.0, 200.0, 400.0]
                    .iter()
                    .map(|&r| g_value(n, 0.5, z(r)).unwrap().abs())
                    .collect();
                assert!(far.windows(2).all(|w| w[1] < w[0]), "n={n} ray {k}: {far:?}");
            }
        }
    }
}
