use crate::{Error, Result};

/// Default argument tolerance for both solvers.
pub const DEFAULT_TOL: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2
const MAX_ITERATIONS: usize = 500;

/// A closed interval `[lo, hi]` with finite `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Bracket { lo, hi })
        } else {
            Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")))
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverReport {
    /// Location of the best point found.
    pub argmax: f64,
    pub value: f64,
    pub iterations: usize,
    /// Width of the final golden-section interval.
    pub width_at_stop: f64,
}

/// Golden-section search for a maximum of `f` on `bracket`.
///
/// Returns a local maximizer; for a unimodal `f` this is the maximum on the
/// closed bracket, endpoints included. The requested tolerance is raised to a
/// few ulps of the bracket magnitude when it is tighter than f64 can resolve.
pub fn maximize_bracketed<F>(mut f: F, bracket: Bracket, tol: f64) -> Result<SolverReport>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: x, value: v })
        }
    };

    let scale = bracket.lo.abs().max(bracket.hi.abs());
    let tol = tol.max(4.0 * f64::EPSILON * scale);

    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let f_lo = eval(a)?;
    let f_hi = eval(b)?;

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    let mut iterations = 0;

    while b - a > tol && iterations < MAX_ITERATIONS {
        iterations += 1;
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        }
    }

    let candidates = [(x1, f1), (x2, f2), (bracket.lo, f_lo), (bracket.hi, f_hi)];
    let (argmax, value) = candidates
        .into_iter()
        .fold((x1, f1), |best, c| if c.1 > best.1 { c } else { best });

    Ok(SolverReport {
        argmax,
        value,
        iterations,
        width_at_stop: b - a,
    })
}

/// Root of `f` on a sign-changing bracket.
///
/// Brent's method: inverse quadratic interpolation and secant steps, falling
/// back to bisection whenever the interpolated step is not contracting fast
/// enough. Stops once the enclosing interval is narrower than `tol`.
pub fn find_root_bracketed<F>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if !fa.is_finite() {
        return Err(Error::NonFinite { at: a, value: fa });
    }
    if !fb.is_finite() {
        return Err(Error::NonFinite { at: b, value: fb });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NonFinite { at: b, value: fb });
        }
    }
    Err(Error::Convergence(format!(
        "root finder exhausted {MAX_ITERATIONS} iterations"
    )))
}
