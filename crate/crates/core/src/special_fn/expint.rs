use crate::{Error, Result};

/// Euler–Mascheroni constant.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

const MAX_TERMS: usize = 2000;

/// Exponential integral `Ei(x) = gamma + ln x + sum_{k>=1} x^k / (k k!)` for `x > 0`.
///
/// The ascending series has only positive terms, so it is summed until the
/// next term drops below half an ulp of the partial sum.
pub fn expint_ei(x: f64) -> Result<f64> {
    check_arg(x)?;
    let mut sum = 0.0;
    let mut power = 1.0; // x^k / k!
    for k in 1..=MAX_TERMS {
        let kf = k as f64;
        power *= x / kf;
        let term = power / kf;
        sum += term;
        if !sum.is_finite() {
            return Err(Error::range(format!("Ei({x}) overflows")));
        }
        if kf > x && term <= 0.5 * f64::EPSILON * sum {
            return Ok(EULER_GAMMA + x.ln() + sum);
        }
    }
    Err(Error::Convergence(format!(
        "Ei series for x = {x} did not settle within {MAX_TERMS} terms"
    )))
}

/// `Ei(x)` from exactly `terms` addends of the ascending series.
pub fn expint_ei_terms(x: f64, terms: usize) -> Result<f64> {
    check_arg(x)?;
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=terms {
        let kf = k as f64;
        power *= x / kf;
        sum += power / kf;
    }
    Ok(EULER_GAMMA + x.ln() + sum)
}

fn check_arg(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("Ei is only evaluated for finite x > 0, got {x}")))
    }
}
