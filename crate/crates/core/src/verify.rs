//! Property suites behind the `verify` command.
//!
//! Each suite turns one group of structural facts about the constants into
//! numerical checks and reports pass/fail per check.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bounds::{c0_upper, c1_upper, cn_upper, convexity_upper, marchetti_h};
use crate::constants::{
    c_0_alpha, c_n_alpha, g_seq, limit_constant, r_alpha, ExponentPair,
};
use crate::oracle::{c0_by_maximization, grid_sup, GridSupSpec};
use crate::primary_factor::{circle_max, g_value, log_abs_en};
use crate::special_fn::{lambert_w0, INV_E};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Prop1,
    Thm1,
    Thm2,
    Corollaries,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

pub fn run(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Prop1 => prop1(),
        Suite::Thm1 => thm1(),
        Suite::Thm2 => thm2(),
        Suite::Corollaries => corollaries(),
        Suite::Oracle => oracle(),
    }
}

fn c(n: u32, alpha: f64) -> Result<f64> {
    Ok(c_n_alpha(ExponentPair::new(n, alpha)?)?.value)
}

/// `alpha = 0, 0.02, ..., 1`.
pub fn alpha_grid() -> Vec<f64> {
    (0..=50).map(|i| i as f64 / 50.0).collect()
}

fn prop1() -> Vec<Check> {
    let ray_is_max = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=8u32 {
            let lo = 1.0 + 1.0 / n as f64;
            for j in 0..25 {
                let r = lo + 0.2 * j as f64;
                let m = circle_max(n, r, 720)?;
                let gap = m.value - log_abs_en(n, Complex64::new(r, 0.0));
                worst = worst.max(gap.abs());
            }
        }
        Ok((worst <= 1e-8, format!("max |circle max - ln|E_n(r)|| = {worst:.3e}")))
    })();

    let increasing = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=6u32 {
            let top = 1.0 + 1.0 / n as f64;
            for &alpha in &[0.0, 0.5, 1.0] {
                let m = n as f64 + alpha;
                let mut prev = f64::NEG_INFINITY;
                for j in 1..=40 {
                    let r = top * j as f64 / 40.0;
                    let v = circle_max(n, r, 720)?.value / r.powf(m);
                    worst = worst.max(prev - v);
                    prev = v;
                }
            }
        }
        Ok((worst <= 1e-9, format!("largest decrease on (0, 1 + 1/n] = {worst:.3e}")))
    })();

    let origin = (|| {
        let mut worst_zero: f64 = 0.0;
        let mut worst_limsup: f64 = 0.0;
        for n in 1..=6u32 {
            for &theta in &[0.3, 1.1, 2.5, -2.0] {
                let z = Complex64::from_polar(1e-8, theta);
                worst_zero = worst_zero.max(g_value(n, 0.5, z)?.abs());
            }
            // cos((n+1) theta) = -1 along theta = pi/(n+1)
            let z = Complex64::from_polar(1e-7, PI / (n as f64 + 1.0));
            let v = g_value(n, 1.0, z)?;
            worst_limsup = worst_limsup.max((v - 1.0 / (n as f64 + 1.0)).abs());
        }
        Ok((
            worst_zero < 1e-3 && worst_limsup < 1e-6,
            format!("|g| near 0 (alpha=0.5) <= {worst_zero:.2e}; limsup gap (alpha=1) {worst_limsup:.2e}"),
        ))
    })();

    vec![
        Check::from_result("circle maximum on the positive ray for r >= 1 + 1/n", ray_is_max),
        Check::from_result("circle maximum of g nondecreasing on (0, 1 + 1/n]", increasing),
        Check::from_result("g -> 0 at the origin, limsup 1/(n+1) for alpha = 1", origin),
    ]
}

fn thm1() -> Vec<Check> {
    let mut out = Vec::new();

    let golden = (|| {
        let w = lambert_w0(INV_E)?;
        let errs = [
            (c(1, 1.0)? - 0.5).abs(),
            (c(2, 0.0)? - 1.0).abs(),
            (c(1, 0.0)? - (1.0 + w)).abs(),
        ];
        let worst = errs.iter().cloned().fold(0.0, f64::max);
        Ok((worst <= 1e-9, format!("C(1,1), C(2,0), C(1,0) max error {worst:.2e}")))
    })();
    out.push(Check::from_result("closed-form constants", golden));

    let monotone_n = (|| {
        let c1: Vec<f64> = (1..=30).map(|n| c(n, 1.0)).collect::<Result<_>>()?;
        let c0: Vec<f64> = (1..=30).map(|n| c(n, 0.0)).collect::<Result<_>>()?;
        let up = c1.windows(2).all(|w| w[1] >= w[0] - 1e-12);
        let down = c0.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        Ok((
            up && down,
            format!("C(n,1) nondecreasing: {up}; C(n,0) nonincreasing: {down} (n = 1..30)"),
        ))
    })();
    out.push(Check::from_result("monotone in n at alpha = 0 and 1", monotone_n));

    let g_n = (|| {
        let g: Vec<f64> = (1..=30).map(g_seq).collect::<Result<_>>()?;
        let in_range = g.iter().all(|&v| v > 0.0 && v <= 1.0 + 1e-12);
        let down = g.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        let mut below_h = true;
        for (i, &v) in g.iter().enumerate() {
            below_h &= v <= marchetti_h(i as u32 + 1)? + 1e-9;
        }
        Ok((
            in_range && down && below_h,
            format!("in (0,1]: {in_range}; nonincreasing: {down}; <= h_n: {below_h}"),
        ))
    })();
    out.push(Check::from_result("g_n sequence", g_n));

    let limit = (|| {
        let l = limit_constant()?;
        let mut worst: f64 = 0.0;
        for &alpha in &[0.0, 0.5, 1.0] {
            worst = worst.max((c(200, alpha)? - l).abs());
        }
        Ok((
            (0.7418..=0.7428).contains(&l) && worst <= 0.01,
            format!("1/x0 = {l:.10}; max |C(200, alpha) - 1/x0| = {worst:.3e}"),
        ))
    })();
    out.push(Check::from_result("limit constant", limit));
    out
}

fn thm2() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(Check::from_result(
        "C(0,1) = 1",
        c_0_alpha(1.0).map(|r| (r.value == 1.0, format!("value {}", r.value))),
    ));

    let closed_vs_max = (|| {
        let mut worst: f64 = 0.0;
        for i in 1..=99 {
            let alpha = i as f64 / 100.0;
            let closed = c_0_alpha(alpha)?.value;
            let (brute, _) = c0_by_maximization(alpha)?;
            worst = worst.max((closed - brute).abs());
        }
        Ok((worst <= 1e-9, format!("max |closed form - maximization| = {worst:.3e}")))
    })();
    out.push(Check::from_result("closed form agrees with direct maximization", closed_vs_max));

    let small_alpha = (|| {
        let alpha = 1e-3;
        let v = alpha * c_0_alpha(alpha)?.value;
        let rel = (v - INV_E).abs() / INV_E;
        Ok((rel <= 0.01, format!("alpha C(0,alpha) at 1e-3 = {v:.9}, rel. dev. {rel:.2e}")))
    })();
    out.push(Check::from_result("alpha C(0, alpha) -> 1/e", small_alpha));

    let interval = (|| {
        let mut ok = true;
        for i in 1..=99 {
            let alpha = i as f64 / 100.0;
            let r = r_alpha(alpha)?;
            ok &= r > 0.0 && r < alpha;
        }
        Ok((ok, "r_alpha in (0, alpha) for alpha = 0.01..0.99".to_string()))
    })();
    out.push(Check::from_result("r_alpha interval", interval));

    let upper = (|| {
        let mut worst = f64::NEG_INFINITY;
        for i in 1..=100 {
            let alpha = i as f64 / 100.0;
            worst = worst.max(c_0_alpha(alpha)?.value - c0_upper(alpha)?);
        }
        Ok((worst <= 1e-12, format!("max C(0,alpha) - (1/alpha - 1)^(1-alpha) = {worst:.3e}")))
    })();
    out.push(Check::from_result("elementary upper bound", upper));
    out
}

/// `C(n, alpha)` for `n = 1..=12` on [`alpha_grid`], one row per `n`.
pub fn constant_table() -> Result<Vec<Vec<f64>>> {
    (1..=12u32)
        .into_par_iter()
        .map(|n| alpha_grid().into_iter().map(|a| c(n, a)).collect())
        .collect()
}

fn corollaries() -> Vec<Check> {
    let table = match constant_table() {
        Ok(t) => t,
        Err(e) => return vec![Check::new("constant table", false, format!("error: {e}"))],
    };
    let alphas = alpha_grid();
    let mut out = Vec::new();

    let mut worst_rise = f64::NEG_INFINITY;
    let mut worst_convex = f64::INFINITY;
    for row in &table {
        for w in row.windows(2) {
            worst_rise = worst_rise.max(w[1] - w[0]);
        }
        for w in row.windows(3) {
            worst_convex = worst_convex.min(w[0] - 2.0 * w[1] + w[2]);
        }
    }
    out.push(Check::new(
        "nonincreasing in alpha",
        worst_rise <= 1e-9,
        format!("largest increase {worst_rise:.3e}"),
    ));
    out.push(Check::new(
        "convex in alpha",
        worst_convex >= -1e-8,
        format!("smallest second difference {worst_convex:.3e}"),
    ));

    let sandwich = (|| {
        let mut worst = f64::NEG_INFINITY;
        for (i, row) in table.iter().enumerate() {
            let n = i as u32 + 1;
            let c1 = row[row.len() - 1];
            for (&a, &v) in alphas.iter().zip(row) {
                worst = worst.max(c1 - v).max(v - convexity_upper(n, a)?);
            }
        }
        Ok((worst <= 1e-9, format!("largest violation {worst:.3e}")))
    })();
    out.push(Check::from_result("C(n,1) <= C(n,alpha) <= chord", sandwich));

    let n1 = (|| {
        let mut worst = f64::NEG_INFINITY;
        for (&a, &v) in alphas.iter().zip(&table[0]) {
            worst = worst.max(v - c1_upper(a)?);
        }
        Ok((worst <= 1e-9, format!("largest violation {worst:.3e}")))
    })();
    out.push(Check::from_result("n = 1 chord bound", n1));

    let n2 = (|| {
        let mut worst = f64::NEG_INFINITY;
        let mut max_bound = f64::NEG_INFINITY;
        for (i, row) in table.iter().enumerate().skip(1) {
            let n = i as u32 + 1;
            for (&a, &v) in alphas.iter().zip(row) {
                let b = cn_upper(n, a)?;
                worst = worst.max(v - b);
                max_bound = max_bound.max(b);
            }
        }
        Ok((
            worst <= 1e-9 && max_bound <= 1.0 + 1e-12,
            format!("largest violation {worst:.3e}; largest bound {max_bound}"),
        ))
    })();
    out.push(Check::from_result("n >= 2 bound via 1/x0", n2));
    out
}

fn oracle() -> Vec<Check> {
    let mut cases = Vec::new();
    for n in 1..=5u32 {
        for &alpha in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            cases.push((n, alpha));
        }
    }
    cases
        .into_iter()
        .map(|(n, alpha)| {
            let name = format!("grid sup vs C({n}, {alpha})");
            let r = (|| {
                let exact = c_n_alpha(ExponentPair::new(n, alpha)?)?;
                let g = grid_sup(n, alpha, &GridSupSpec::default_for(n))?;
                let within = g.value >= exact.value - 5e-3 && g.value <= exact.value + 1e-9;
                let on_ray = g.r < 1.0 + 1.0 / n as f64 || g.theta.abs() <= g.angular_cell;
                Ok((
                    within && on_ray,
                    format!(
                        "grid {:.9} vs {:.9} at r = {:.4}, theta = {:.4}",
                        g.value, exact.value, g.r, g.theta
                    ),
                ))
            })();
            Check::from_result(&name, r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm2_suite_passes() {
        for check in run(Suite::Thm2) {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }

    #[test]
    fn prop1_suite_passes() {
        for check in run(Suite::Prop1) {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }
}
