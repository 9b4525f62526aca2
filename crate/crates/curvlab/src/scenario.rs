//! Named scenarios with fixed expected-value tables.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::report::{CheckEntry, ExpectedEntry, ScenarioReport, verdict_name, witness_str};
use crate::series::MultiIndex;
use crate::{curvature, divisibility, operator, points, posdef};

pub const SCENARIOS: [&str; 4] = [
    "agler_counterexample",
    "nondivisible_contraction",
    "detball_logk",
    "szego_baseline",
];

pub fn run_scenario(id: &str, seed: u64) -> Result<ScenarioReport> {
    match id {
        "agler_counterexample" => agler_counterexample(seed),
        "nondivisible_contraction" => nondivisible_contraction(seed),
        "detball_logk" => detball_logk(seed),
        "szego_baseline" => szego_baseline(seed),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn entry(name: &str, v: &posdef::PosDefVerdict) -> CheckEntry {
    CheckEntry {
        name: name.to_string(),
        verdict: verdict_name(v.verdict).to_string(),
        witness: witness_str(&v.witness),
        tolerance: v.tolerance,
        pass: v.passes(),
    }
}

fn finish(
    scenario: &str,
    checks: Vec<CheckEntry>,
    expected: Vec<ExpectedEntry>,
    seed: u64,
    pts: &[Vec<C64>],
) -> ScenarioReport {
    let pass = expected.iter().all(|e| e.pass);
    ScenarioReport {
        scenario: scenario.to_string(),
        checks,
        expected,
        seed,
        points: pts
            .iter()
            .map(|p| p.iter().map(|z| (z.re, z.im)).collect())
            .collect(),
        pass,
    }
}

/// The kernel 8 + 16 zw̄ + 15 z²w̄²/(1−zw̄): curvature dominated by the
/// backward shift at every point, yet M* is not a contraction.
fn agler_counterexample(seed: u64) -> Result<ScenarioReport> {
    let k = KernelSpec::diagonal(vec![8.0, 16.0, 15.0], 15.0);
    let mut expected = Vec::new();

    // Weighted-shift model: weights {√(1/2), √(16/15), 1, 1}, norm > 1.
    let shift = operator::shift_from_diagonal(&[8.0, 16.0, 15.0, 15.0], 15.0)?;
    let want = [(0.5f64).sqrt(), (16.0f64 / 15.0).sqrt(), 1.0, 1.0];
    for (i, &w) in want.iter().enumerate() {
        expected.push(ExpectedEntry::new(
            format!("weight_{i}"),
            w,
            shift.weights[i],
            1e-12,
        ));
    }
    expected.push(ExpectedEntry::new(
        "shift_norm",
        (16.0f64 / 15.0).sqrt(),
        shift.norm(),
        1e-12,
    ));

    // Contracted kernel K‡ = (1−zw̄)K = 8 + 8 zw̄ − z²w̄².
    let kdagger = k.clone().contract();
    let coeffs = kdagger
        .diagonal_coefficients(8)?
        .expect("contracted kernel is diagonal");
    for (i, &w) in [8.0, 8.0, -1.0].iter().enumerate() {
        expected.push(ExpectedEntry::new(
            format!("kdagger_coeff_{i}"),
            w,
            coeffs[i],
            1e-12,
        ));
    }
    let contraction = operator::contraction_test(&k, 8, seed)?;
    expected.push(ExpectedEntry::boolean(
        "contraction_fails",
        true,
        !contraction.is_contraction(),
    ));
    expected.push(ExpectedEntry::boolean(
        "witness_is_index_2",
        true,
        operator::verdict_witness_index(&contraction.verdict) == Some(2),
    ));

    // Pointwise curvature comparison on the radial grid r ∈ {0, 0.1, …, 0.9}:
    // K_{S*}(w) − K_{M*}(w) = 8(8−4r−r²)/(8+8r−r²)², r = |w|².
    let mut grid = Vec::new();
    for i in 0..10 {
        let r = 0.1 * i as f64;
        let w = c(r);
        let diff = curvature::curvature_scalar(&KernelSpec::SzegoDisc, w)?
            - curvature::curvature_scalar(&k, w)?;
        let rr = r * r;
        let closed = 8.0 * (8.0 - 4.0 * rr - rr * rr) / (8.0 + 8.0 * rr - rr * rr).powi(2);
        expected.push(ExpectedEntry::new(
            format!("curvature_diff_r={r:.1}"),
            closed,
            diff,
            1e-9,
        ));
        grid.push(vec![w]);
    }
    expected.push(ExpectedEntry::new(
        "curvature_at_0",
        -2.0,
        curvature::curvature_scalar(&k, c(0.0))?,
        1e-10,
    ));
    expected.push(ExpectedEntry::new(
        "szego_curvature_at_0",
        -1.0,
        curvature::curvature_scalar(&KernelSpec::SzegoDisc, c(0.0))?,
        1e-10,
    ));

    let cmp = curvature::curvature_compare(
        &k,
        &KernelSpec::SzegoDisc,
        &curvature::CompareMode::Pointwise(grid.clone()),
        1e-9,
    )?;
    expected.push(ExpectedEntry::boolean(
        "curvature_dominated",
        true,
        curvature::dominates(&cmp),
    ));

    let checks = vec![
        entry("contraction", &contraction.verdict),
        entry("curvature_vs_szego", &cmp.verdict),
    ];
    Ok(finish("agler_counterexample", checks, expected, seed, &grid))
}

/// K = 1 + 2zw̄ + Σ_{n≥2}(n+¼)z^nw̄^n: a contraction that is not infinitely
/// divisible — (K‡)^t has z²w̄² coefficient t(2t−1)/4, negative for t < ½.
fn nondivisible_contraction(seed: u64) -> Result<ScenarioReport> {
    let k = KernelSpec::diagonal(
        vec![1.0, 2.0, 2.25, 3.25, 4.25, 5.25, 6.25, 7.25, 8.25],
        9.25,
    );
    let mut expected = Vec::new();

    let contraction = operator::contraction_test(&k, 8, seed)?;
    expected.push(ExpectedEntry::boolean(
        "is_contraction",
        true,
        contraction.is_contraction(),
    ));
    let kdagger = k.clone().contract();
    let coeffs = kdagger
        .diagonal_coefficients(8)?
        .expect("contracted kernel is diagonal");
    for (i, &w) in [1.0, 1.0, 0.25, 1.0].iter().enumerate() {
        expected.push(ExpectedEntry::new(
            format!("kdagger_coeff_{i}"),
            w,
            coeffs[i],
            1e-12,
        ));
    }

    let t_grid = [0.25, 0.5, 0.75, 1.0];
    let div = divisibility::divisibility_check(&kdagger, &t_grid, &[c(0.0)], 8, 1e-9, seed)?;
    expected.push(ExpectedEntry::new(
        "witness_t",
        0.25,
        div.witness_t().unwrap_or(f64::NAN),
        1e-12,
    ));
    // z²w̄² coefficient of (K‡)^t: the formula t(2t−1)/4 gives −1/32 at ¼.
    let s = kdagger.taylor_expand(&[c(0.0)], 8)?;
    for &t in &t_grid {
        let got = s.real_power(t)?.coeff1(2, 2);
        expected.push(ExpectedEntry::new(
            format!("power_coeff_2_t={t}"),
            t * (2.0 * t - 1.0) / 4.0,
            got.re,
            1e-12,
        ));
    }
    expected.push(ExpectedEntry::new(
        "coeff_at_quarter",
        -1.0 / 32.0,
        s.real_power(0.25)?.coeff1(2, 2).re,
        1e-12,
    ));
    // t ≥ ½ passes (the boundary may be degenerate, never indefinite).
    for (i, &t) in t_grid.iter().enumerate() {
        if t >= 0.5 {
            expected.push(ExpectedEntry::boolean(
                format!("divisible_at_t={t}"),
                true,
                div.per_t[i].passes(),
            ));
        }
    }

    let worst = div
        .per_t
        .iter()
        .cloned()
        .reduce(|a, b| a.combine(b))
        .expect("nonempty grid");
    let checks = vec![
        entry("contraction", &contraction.verdict),
        entry("divisible", &worst),
    ];
    let pts = points::disc_points(seed, 8, 0.3);
    Ok(finish(
        "nondivisible_contraction",
        checks,
        expected,
        seed,
        &pts,
    ))
}

/// det(I − ZW*)^{−1} on the 2×2 matrix ball: positive definite, but its log
/// is not, so the kernel is not infinitely divisible (witness t = ½).
fn detball_logk(seed: u64) -> Result<ScenarioReport> {
    let k = KernelSpec::DetBall2;
    let order = 8;
    let w0 = vec![c(0.0); 4];
    let mut expected = Vec::new();

    let s = k.taylor_expand(&w0, order)?;
    let log_s = s.log()?;

    // Taylor matrices of log K over the default δ list...
    let deltas = posdef::default_deltas(4, order);
    let taylor_v = posdef::taylor_psd_all(&log_s, &deltas, 1e-9)?;
    // ...and a Gram over 30 seeded 2×2 matrices of operator norm ≤ 0.6,
    // computed from exact kernel values through the principal log.
    let pts = points::matrix_ball_points(seed, 30, 0.6);
    let log_cpd = divisibility::log_kernel_cpd_check(&k, &pts, &w0, 1e-9)?;
    let log_not_psd = taylor_v.is_indefinite() || log_cpd.shifted_psd.is_indefinite();
    expected.push(ExpectedEntry::boolean("log_not_psd", true, log_not_psd));

    let div = divisibility::divisibility_check(&k, &[0.5, 1.0], &w0, order, 1e-9, seed)?;
    expected.push(ExpectedEntry::new(
        "witness_t",
        0.5,
        div.witness_t().unwrap_or(f64::NAN),
        1e-12,
    ));
    expected.push(ExpectedEntry::boolean(
        "kernel_itself_psd",
        true,
        div.per_t[1].passes(),
    ));

    // H_δ for δ = (1,0,0,3): printed for inspection, not asserted.
    let delta = MultiIndex::new(vec![1, 0, 0, 3]);
    let tm = posdef::TaylorMatrix::build(&log_s, &delta)?;
    let mut checks = vec![
        entry("log_taylor", &taylor_v),
        entry("log_shifted_gram", &log_cpd.shifted_psd),
        entry("log_cpd", &log_cpd.cpd),
    ];
    let (lo, hi) = tm.matrix.min_max_eigenvalues();
    checks.push(CheckEntry {
        name: "H_(1,0,0,3) inspection".into(),
        verdict: format!("eigenvalues in [{lo:.6}, {hi:.6}]"),
        witness: format!(
            "dim {}; entry at δδ: {:.6}",
            tm.indices.len(),
            tm.matrix.get(tm.indices.len() - 1, tm.indices.len() - 1).re
        ),
        tolerance: 0.0,
        pass: true,
    });

    Ok(finish("detball_logk", checks, expected, seed, &pts))
}

/// Szegő kernel of the disc: curvature −1/(1−r²)², section norm h = 1−|w|²,
/// local operators contractions everywhere.
fn szego_baseline(seed: u64) -> Result<ScenarioReport> {
    let k = KernelSpec::SzegoDisc;
    let mut expected = Vec::new();
    let mut grid = Vec::new();
    for i in 0..50 {
        let r = 0.9 * i as f64 / 49.0;
        let w = c(r);
        grid.push(vec![w]);
        let curv = curvature::curvature_scalar(&k, w)?;
        expected.push(ExpectedEntry::new(
            format!("curvature_r={r:.4}"),
            -1.0 / (1.0 - r * r).powi(2),
            curv,
            1e-10,
        ));
        let local = operator::local_contraction_test(&k, w)?;
        expected.push(ExpectedEntry::new(
            format!("h_r={r:.4}"),
            1.0 - r * r,
            local.operator.h,
            1e-10,
        ));
        expected.push(ExpectedEntry::boolean(
            format!("local_contraction_r={r:.4}"),
            true,
            local.contraction,
        ));
    }
    let (neg, _) = curvature::curvature_negativity(&k, &grid, 1e-9)?;
    let checks = vec![entry("curvature", &neg)];
    let _ = seed;
    Ok(finish("szego_baseline", checks, expected, seed, &grid))
}
