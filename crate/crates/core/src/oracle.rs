//! Brute-force cross-checks for the fast paths.
//!
//! [`grid_sup`] evaluates `g(z) = ln|E_n(z)| / |z|^(n + alpha)` on a polar grid,
//! which is a certified lower bound for `C(n, alpha)` straight from its
//! definition as a supremum. [`series_log_abs_en`] sums a fixed number of terms
//! of the Taylor tail and returns an enclosure of `ln|E_n(z)|` inside the unit
//! disk.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::primary_factor::{check_admissible, log_abs_en};
use crate::special_fn::{maximize_bracketed, Bracket, DEFAULT_TOL};
use crate::{Error, Result};

/// Smallest radius on the polar grid.
pub const GRID_R_MIN: f64 = 0.01;

/// Grid points closer than this to `0` or `1` are skipped.
const SINGULAR_EXCLUSION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSupSpec {
    pub r_max: f64,
    pub radial_steps: usize,
    pub angular_steps: usize,
}

impl GridSupSpec {
    /// 4000 log-spaced radii up to `10 (1 + 1/n)` and 720 angles.
    pub fn default_for(n: u32) -> Self {
        GridSupSpec {
            r_max: 10.0 * (1.0 + 1.0 / n.max(1) as f64),
            radial_steps: 4000,
            angular_steps: 720,
        }
    }

    /// The `i`-th radius, log-spaced on `[GRID_R_MIN, r_max]`.
    pub fn radius(&self, i: usize) -> f64 {
        if self.radial_steps == 1 {
            return self.r_max;
        }
        let t = i as f64 / (self.radial_steps - 1) as f64;
        GRID_R_MIN * (self.r_max / GRID_R_MIN).powf(t)
    }

    /// The `k`-th angle, `2 pi k / angular_steps`.
    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.angular_steps as f64
    }

    fn validate(&self, n: u32) -> Result<()> {
        let need = 1.0 + 1.0 / n as f64;
        if !(self.r_max >= need) || !self.r_max.is_finite() {
            return Err(Error::domain(format!(
                "grid r_max = {} must cover 1 + 1/n = {need}",
                self.r_max
            )));
        }
        if self.radial_steps == 0 || self.angular_steps == 0 {
            return Err(Error::domain("grid needs at least one radius and one angle"));
        }
        Ok(())
    }
}

/// Largest grid value of `g` and where it occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSup {
    pub value: f64,
    pub r: f64,
    /// Angle in `(-pi, pi]`.
    pub theta: f64,
    /// Width of one angular cell.
    pub angular_cell: f64,
}

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    i: usize,
    k: usize,
}

impl Best {
    const NONE: Best = Best {
        value: f64::NEG_INFINITY,
        i: usize::MAX,
        k: usize::MAX,
    };

    // ties go to the smaller (i, k) so the parallel reduction is deterministic
    fn max(self, other: Best) -> Best {
        if other.value > self.value
            || (other.value == self.value && (other.i, other.k) < (self.i, self.k))
        {
            other
        } else {
            self
        }
    }
}

/// Maximum of `g` over the polar grid described by `spec`.
///
/// Rows of constant radius are evaluated in parallel; the result does not
/// depend on scheduling.
pub fn grid_sup(n: u32, alpha: f64, spec: &GridSupSpec) -> Result<GridSup> {
    if n == 0 {
        return Err(Error::domain("grid_sup is for n >= 1"));
    }
    check_admissible(n, alpha)?;
    spec.validate(n)?;
    let m = n as f64 + alpha;

    let best = (0..spec.radial_steps)
        .into_par_iter()
        .map(|i| {
            let r = spec.radius(i);
            let scale = r.powf(-m);
            let mut row = Best::NONE;
            for k in 0..spec.angular_steps {
                let z = Complex64::from_polar(r, spec.angle(k));
                if r < SINGULAR_EXCLUSION || (z - 1.0).norm() < SINGULAR_EXCLUSION {
                    continue;
                }
                let value = log_abs_en(n, z) * scale;
                row = row.max(Best { value, i, k });
            }
            row
        })
        .reduce(|| Best::NONE, Best::max);

    if best.i == usize::MAX || !best.value.is_finite() {
        return Err(Error::Convergence("grid contained no admissible point".into()));
    }
    let theta = spec.angle(best.k);
    Ok(GridSup {
        value: best.value,
        r: spec.radius(best.i),
        theta: if theta > PI { theta - 2.0 * PI } else { theta },
        angular_cell: 2.0 * PI / spec.angular_steps as f64,
    })
}

/// `max_{r > 0} ln(1 + r) / r^alpha` by direct golden-section search.
///
/// The search runs over `t = ln r` on `[-30, 1/alpha + 30]`, which contains
/// the maximizer (`ln R ~ 1/alpha`) and keeps huge radii representable.
/// Returns `(value, ln R)`.
pub fn c0_by_maximization(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("need alpha in (0, 1), got {alpha}")));
    }
    // ln of ln(1 + e^t) - alpha t
    let log_g = |t: f64| {
        let log1p_r = if t > 0.0 {
            t + (-t).exp().ln_1p()
        } else {
            t.exp().ln_1p()
        };
        log1p_r.ln() - alpha * t
    };
    let report = maximize_bracketed(log_g, Bracket::new(-30.0, 1.0 / alpha + 30.0)?, DEFAULT_TOL)?;
    Ok((report.value.exp(), report.argmax))
}

/// Truncated tail series with an error enclosure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEnclosure {
    pub value: f64,
    /// Geometric bound on the omitted terms.
    pub tail_bound: f64,
    /// A-priori bound on the floating-point error of the summation.
    pub rounding_bound: f64,
}

impl SeriesEnclosure {
    pub fn radius(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }

    pub fn lower(&self) -> f64 {
        self.value - self.radius()
    }

    pub fn upper(&self) -> f64 {
        self.value + self.radius()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }
}

/// `-sum_{k=n+1}^{n+terms} Re(z^k) / k` for `|z| < 1`, enclosing `ln|E_n(z)|`.
///
/// The omitted tail is bounded by `r^(K+1) / ((K+1)(1 - r))` with `K = n + terms`.
/// The sum is compensated (Neumaier), and powers come from repeated
/// multiplication, whose relative error grows at most linearly in `k`.
pub fn series_log_abs_en(n: u32, z: Complex64, terms: usize) -> Result<SeriesEnclosure> {
    let r = z.norm();
    if !(r < 1.0) {
        return Err(Error::domain(format!("series needs |z| < 1, got |z| = {r}")));
    }
    if terms == 0 {
        return Err(Error::domain("need at least one term"));
    }

    let mut power = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        power *= z;
    }
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut abs_sum = 0.0;
    let mut geometric = 0.0;
    let mut r_pow = r.powi(n as i32);
    let last = n as u64 + terms as u64;
    for k in (n as u64 + 1)..=last {
        power *= z;
        r_pow *= r;
        let t = -power.re / k as f64;
        let s = sum + t;
        comp += if sum.abs() >= t.abs() {
            (sum - s) + t
        } else {
            (t - s) + sum
        };
        sum = s;
        abs_sum += t.abs();
        geometric += r_pow;
    }
    let eps = f64::EPSILON;
    Ok(SeriesEnclosure {
        value: sum + comp,
        tail_bound: r_pow * r / ((last + 1) as f64 * (1.0 - r)),
        rounding_bound: 4.0 * eps * geometric + 2.0 * eps * abs_sum,
    })
}
