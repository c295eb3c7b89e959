use std::f64::consts::E;

use crate::{Error, Result};

/// `1/e` rounded to the nearest f64; the left end of the domain of W0.
pub const INV_E: f64 = 0.367_879_441_171_442_33;

const MAX_HALLEY_STEPS: usize = 64;

/// Principal branch `W0` of the Lambert function: the unique `w >= -1` with
/// `w * exp(w) = x`, defined for `x >= -1/e`.
///
/// Arguments within a few ulps below `-1/e` are treated as the branch point,
/// since `-1/e` itself is not representable.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("lambert_w0 needs a finite argument, got {x}")));
    }
    if x <= -INV_E {
        if x >= -INV_E * (1.0 + 4.0 * f64::EPSILON) {
            return Ok(-1.0);
        }
        return Err(Error::domain(format!("lambert_w0 undefined below -1/e, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = initial_guess(x);
    for _ in 0..MAX_HALLEY_STEPS {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        let next = (w - step).max(-1.0);
        let moved = (next - w).abs();
        w = next;
        if moved <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        // branch-point expansion in p = sqrt(2(1 + e x))
        let p = (2.0 * (1.0 + E * x)).max(0.0).sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0))
    } else if x < 3.0 {
        let l = x.ln_1p();
        l * (1.0 - (1.0 + l).ln() / (2.0 + l))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(E).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(lambert_w0(-INV_E).unwrap(), -1.0);
        assert_eq!(lambert_w0(-(-1.0f64).exp()).unwrap(), -1.0);
    }

    #[test]
    fn w_of_inverse_e() {
        // 30-digit reference value
        let w = lambert_w0(INV_E).unwrap();
        assert!((w - 0.278_464_542_761_073_795_109_358_739).abs() < 1e-15);
    }

    #[test]
    fn rejects_below_branch_point() {
        assert!(matches!(lambert_w0(-0.4), Err(Error::Domain(_))));
        assert!(lambert_w0(f64::NAN).is_err());
        assert!(lambert_w0(f64::INFINITY).is_err());
    }

    #[test]
    fn large_and_tiny_arguments() {
        for &x in &[1e-300, 1e-20, 1e-8, 1e3, 1e6, 1e100, 1e300] {
            let w = lambert_w0(x).unwrap();
            let rel = (w * w.exp() - x).abs() / x;
            assert!(rel < 1e-14, "x = {x}: rel residual {rel}");
        }
    }

    #[test]
    fn near_branch_point() {
        // W(-1/e + 1e-12) from a 40-digit evaluation at this exact f64 argument
        let c = -INV_E + 1e-12;
        let w = lambert_w0(c).unwrap();
        assert!((w - -0.999_997_668_398_110_576_281_561_9).abs() < 1e-9);
    }
}
