//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line with the
//! measured quantity and its runtime, then asserts.

#![allow(clippy::excessive_precision)]

use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weierstrass_bounds::bounds::{c0_upper, c1_upper, cn_upper, convexity_upper, marchetti_h};
use weierstrass_bounds::cli::GridSpec;
use weierstrass_bounds::constants::{
    c_0_alpha, c_n_alpha, g_seq, gamma_p, limit_constant, ExponentPair,
};
use weierstrass_bounds::oracle::{c0_by_maximization, grid_sup, GridSupSpec};
use weierstrass_bounds::primary_factor::{log_abs_en_direct, log_abs_en_series};
use weierstrass_bounds::special_fn::{expint_ei, lambert_w0, INV_E};

fn c(n: u32, alpha: f64) -> f64 {
    c_n_alpha(ExponentPair::new(n, alpha).unwrap()).unwrap().value
}

/// Writes to the raw stderr handle so the line survives libtest output capture.
fn emit(line: String) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

fn report(id: u32, title: &str, passed: bool, detail: String, elapsed: Duration, budget: Duration) {
    let in_time = elapsed <= budget;
    let tag = if passed && in_time { "PASS" } else { "FAIL" };
    emit(format!(
        "{tag} criterion {id} ({title}): {detail}; {:.3}s of {:.0}s",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    ));
    assert!(passed, "criterion {id} failed: {detail}");
    assert!(in_time, "criterion {id} exceeded its {budget:?} budget: {elapsed:?}");
}

#[test]
fn criterion_1_closed_form_golden_values() {
    let t = Instant::now();
    let e11 = (c(1, 1.0) - 0.5).abs();
    let e20 = (c(2, 0.0) - 1.0).abs();
    let e01 = (c_0_alpha(1.0).unwrap().value - 1.0).abs();
    // ray maximization against the Lambert W closed form
    let e10 = (c(1, 0.0) - (1.0 + lambert_w0(INV_E).unwrap())).abs();
    let worst = e11.max(e20).max(e01).max(e10);
    report(
        1,
        "closed-form golden values",
        worst <= 1e-9,
        format!("|C11-1/2| {e11:.1e}, |C20-1| {e20:.1e}, |C01-1| {e01:.1e}, |C10-(1+W(1/e))| {e10:.1e}"),
        t.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_limit_constant() {
    let t = Instant::now();
    let limit = limit_constant().unwrap();
    let gaps: Vec<f64> = [0.0, 0.5, 1.0].iter().map(|&a| (c(200, a) - limit).abs()).collect();
    let worst = gaps.iter().cloned().fold(0.0, f64::max);
    report(
        2,
        "limit constant",
        (0.7418..=0.7428).contains(&limit) && worst <= 0.01,
        format!("1/x0 = {limit:.10}; |C(200, alpha) - 1/x0| for alpha = 0, 0.5, 1: {:.2e}, {:.2e}, {:.2e}", gaps[0], gaps[1], gaps[2]),
        t.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_3_n0_closed_form_vs_maximization() {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for i in 1..=99 {
        let alpha = i as f64 / 100.0;
        let (brute, _) = c0_by_maximization(alpha).unwrap();
        worst = worst.max((c_0_alpha(alpha).unwrap().value - brute).abs());
    }
    let alpha = 1e-3;
    let scaled = alpha * c_0_alpha(alpha).unwrap().value;
    let rel = (scaled - INV_E).abs() / INV_E;
    report(
        3,
        "n = 0 closed form vs oracle",
        worst <= 1e-9 && rel <= 0.01,
        format!("max deviation {worst:.2e} over 99 alphas; alpha C(0, alpha) at 1e-3 off 1/e by {rel:.2e}"),
        t.elapsed(),
        Duration::from_secs(2),
    );
}

fn gamma_table() -> Vec<(f64, f64)> {
    let grid: GridSpec = "0.05:8:0.05".parse().unwrap();
    grid.points().into_iter().map(|p| (p, gamma_p(p).unwrap())).collect()
}

/// The literal requirement "decreasing on (0,1]" does not hold: on that range
/// Gamma_p = C(0, p) = max ln(1+r)/r^p, which has an interior minimum near
/// p = 0.72 and climbs back to C(0, 1) = 1. The test therefore reports FAIL for
/// the literal check and asserts the shape that does hold: strictly decreasing
/// down to a single minimum, strictly increasing after it, with the values
/// around the minimum confirmed by the independent maximization oracle.
#[test]
fn criterion_4_gamma_table_structure() {
    let t = Instant::now();
    let table = gamma_table();
    let head: Vec<(f64, f64)> = table.iter().copied().filter(|(p, _)| *p <= 1.0).collect();
    let literal = head.windows(2).all(|w| w[1].1 < w[0].1);

    let turn = head
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap();
    let valley = head[..=turn].windows(2).all(|w| w[1].1 < w[0].1)
        && head[turn..].windows(2).all(|w| w[1].1 > w[0].1);
    let oracle_gap = head
        .iter()
        .filter(|(p, _)| *p < 1.0)
        .map(|&(p, g)| (g - c0_by_maximization(p).unwrap().0).abs())
        .fold(0.0, f64::max);

    let at = |q: f64| table.iter().find(|(p, _)| *p == q).map(|(_, g)| *g).unwrap();
    let g1 = at(1.0);
    let g2 = at(2.0);
    let jump = gamma_p(2.001).unwrap();
    let rest = (g1 - 1.0).abs() <= 1e-9 && (g2 - 0.5).abs() <= 1e-9 && jump >= 0.95;

    let elapsed = t.elapsed();
    let tag = if literal && rest && elapsed.as_secs() < 30 { "PASS" } else { "FAIL" };
    emit(format!(
        "{tag} criterion 4 (Gamma_p table structure): {} rows; decreasing on (0,1]: {literal} \
         (minimum {:.6} at p = {:.2}, then rising to 1; oracle gap {oracle_gap:.1e}); \
         Gamma_1 = {g1}; Gamma_2 = {g2}; Gamma_2.001 = {jump:.6}; {:.3}s of 30s",
        table.len(),
        head[turn].1,
        head[turn].0,
        elapsed.as_secs_f64()
    ));
    assert!(rest);
    assert!(valley && turn > 0 && turn + 1 < head.len());
    assert!(oracle_gap <= 1e-9);
    assert!(elapsed <= Duration::from_secs(30));
}

/// The literal monotonicity requirement, kept so the failure is reproducible
/// with `cargo test --test acceptance -- --ignored`.
#[test]
#[ignore = "C(0, p) is not monotone on (0,1]; see criterion_4_gamma_table_structure"]
fn criterion_4_literal_decreasing_on_unit_interval() {
    let table = gamma_table();
    let head: Vec<f64> = table.iter().filter(|(p, _)| *p <= 1.0).map(|(_, g)| *g).collect();
    assert!(head.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn criterion_5_monotonicity_and_convexity() {
    let t = Instant::now();
    let alphas: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
    let mut worst_rise = f64::NEG_INFINITY;
    let mut worst_convex = f64::INFINITY;
    for n in 1..=12 {
        let row: Vec<f64> = alphas.iter().map(|&a| c(n, a)).collect();
        for w in row.windows(2) {
            worst_rise = worst_rise.max(w[1] - w[0]);
        }
        for w in row.windows(3) {
            worst_convex = worst_convex.min(w[0] - 2.0 * w[1] + w[2]);
        }
    }
    let c1: Vec<f64> = (1..=12).map(|n| c(n, 1.0)).collect();
    let c0: Vec<f64> = (1..=12).map(|n| c(n, 0.0)).collect();
    let g: Vec<f64> = (1..=12).map(|n| g_seq(n).unwrap()).collect();
    let c1_up = c1.windows(2).all(|w| w[1] >= w[0]);
    let c0_down = c0.windows(2).all(|w| w[1] <= w[0]);
    let g_ok = g.iter().all(|&v| v > 0.0 && v <= 1.0 + 1e-12) && g.windows(2).all(|w| w[1] <= w[0]);
    let below_h = g
        .iter()
        .enumerate()
        .all(|(i, &v)| v <= marchetti_h(i as u32 + 1).unwrap() + 1e-9);
    report(
        5,
        "monotonicity and convexity",
        worst_rise <= 1e-9 && worst_convex >= -1e-8 && c1_up && c0_down && g_ok && below_h,
        format!(
            "max rise in alpha {worst_rise:.2e}; min 2nd diff {worst_convex:.2e}; C(n,1) up {c1_up}; \
             C(n,0) down {c0_down}; g_n in (0,1] decreasing {g_ok}; g_n <= h_n {below_h}"
        ),
        t.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_6_analytic_bounds() {
    let t = Instant::now();
    let alphas: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
    let mut worst = f64::NEG_INFINITY;
    for n in 1..=12 {
        for &a in &alphas {
            let v = c(n, a);
            worst = worst.max(c(n, 1.0) - v);
            worst = worst.max(v - convexity_upper(n, a).unwrap());
            if n == 1 {
                worst = worst.max(v - c1_upper(a).unwrap());
            } else {
                let b = cn_upper(n, a).unwrap();
                worst = worst.max(v - b);
            }
        }
    }
    for i in 1..=100 {
        let a = i as f64 / 100.0;
        worst = worst.max(c_0_alpha(a).unwrap().value - c0_upper(a).unwrap());
    }
    report(
        6,
        "analytic upper bounds",
        worst <= 1e-9,
        format!("largest excess of a constant over its bound: {worst:.2e}"),
        t.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_7_grid_oracle() {
    let t = Instant::now();
    let mut worst_low: f64 = 0.0;
    let mut worst_high = f64::NEG_INFINITY;
    let mut off_ray = Vec::new();
    for n in 1..=5 {
        for &a in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            let exact = c(n, a);
            let g = grid_sup(n, a, &GridSupSpec::default_for(n)).unwrap();
            worst_low = worst_low.max(exact - g.value);
            worst_high = worst_high.max(g.value - exact);
            if g.r >= 1.0 + 1.0 / n as f64 && g.theta.abs() > g.angular_cell {
                off_ray.push((n, a, g.theta));
            }
        }
    }
    report(
        7,
        "grid supremum vs ray maximization",
        worst_low <= 5e-3 && worst_high <= 1e-9 && off_ray.is_empty(),
        format!("C - grid <= {worst_low:.2e}; grid - C <= {worst_high:.2e}; argmax off the ray: {off_ray:?}"),
        t.elapsed(),
        Duration::from_secs(300),
    );
}

/// Ei(x) with Neumaier-compensated summation of the ascending series,
/// carried well past the f64 truncation point.
fn ei_compensated(x: f64) -> f64 {
    const GAMMA: f64 = 0.577_215_664_901_532_860_606_512;
    let mut sum = GAMMA;
    let mut comp = x.ln();
    let mut power = 1.0;
    for k in 1..200 {
        power *= x / k as f64;
        let term = power / k as f64;
        let s = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - s) + term
        } else {
            (term - s) + sum
        };
        sum = s;
    }
    sum + comp
}

#[test]
fn criterion_8_special_function_residuals() {
    let t = Instant::now();
    // offsets from the branch point, log-spaced over [1e-10, 1e6 + 1/e]
    let count = 10_000;
    let (lo, hi) = (1e-10_f64.ln(), (1e6 + INV_E).ln());
    let mut worst_w: f64 = 0.0;
    for i in 0..count {
        let offset = (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp();
        let x = -INV_E + offset;
        let w = lambert_w0(x).unwrap();
        worst_w = worst_w.max((w * w.exp() - x).abs() / x.abs());
    }
    // Ei(1) to 30 digits is 1.89511781635593675546652093433
    let reference = 1.895_117_816_355_936_755_466_520_934_33;
    let compensated = ei_compensated(1.0);
    let err = (expint_ei(1.0).unwrap() - reference).abs();
    let err_oracle = (expint_ei(1.0).unwrap() - compensated).abs();
    report(
        8,
        "special-function residuals",
        worst_w <= 1e-14 && err <= 1e-12 && err_oracle <= 1e-12,
        format!("max W round-trip rel. residual {worst_w:.2e}; |Ei(1) - ref| {err:.1e}; vs compensated series {err_oracle:.1e}"),
        t.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_9_branch_agreement() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let n = rng.gen_range(0..=10);
        let r = rng.gen_range(0.4..=0.6);
        let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let z = Complex64::from_polar(r, theta);
        worst = worst.max((log_abs_en_series(n, z) - log_abs_en_direct(n, z)).abs());
    }
    report(
        9,
        "series vs direct branch",
        worst <= 1e-11,
        format!("max |series - direct| over 1e4 points = {worst:.2e}"),
        t.elapsed(),
        Duration::from_secs(10),
    );
}
