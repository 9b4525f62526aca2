//! Operators attached to a kernel: the weighted shift model for diagonal
//! kernels, contractivity of the multiplication tuple M_z* (via positivity of
//! the contracted kernel), and the rank-two local operator N_T(w).

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::curvature;
use crate::error::{Error, Result};
use crate::kernel::{Domain, KernelSpec};
use crate::posdef::{self, PosDefVerdict, Verdict, Witness};
use crate::{points, series::MultiIndex};

/// Slack for the boundary case of the local contraction inequality.
pub const LOCAL_SLACK: f64 = 1e-12;

/// The adjoint of multiplication by z on a diagonal kernel Σ a_n z^n w̄^n is
/// unitarily a weighted shift with weights w_n = sqrt(a_n / a_{n+1}).
#[derive(Clone, Debug, Serialize)]
pub struct WeightedShift {
    pub weights: Vec<f64>,
    /// Eventual weight once the coefficient tail becomes constant.
    pub tail_weight: f64,
}

impl WeightedShift {
    pub fn norm(&self) -> f64 {
        self.weights
            .iter()
            .copied()
            .fold(self.tail_weight, f64::max)
    }

    pub fn is_contraction(&self) -> bool {
        self.norm() <= 1.0 + LOCAL_SLACK
    }
}

/// Build the shift model from explicit diagonal coefficients and a constant
/// tail value (a_n = tail for n ≥ coeffs.len()).
pub fn shift_from_diagonal(coeffs: &[f64], tail: f64) -> Result<WeightedShift> {
    let mut full: Vec<f64> = coeffs.to_vec();
    full.push(tail);
    if full.iter().any(|&a| a <= 0.0) {
        return Err(Error::Config(
            "weighted shift needs strictly positive diagonal coefficients".into(),
        ));
    }
    if tail <= 0.0 {
        return Err(Error::Config("weighted shift needs a positive tail".into()));
    }
    let weights: Vec<f64> = full.windows(2).map(|p| (p[0] / p[1]).sqrt()).collect();
    Ok(WeightedShift {
        weights,
        tail_weight: 1.0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionReport {
    pub verdict: PosDefVerdict,
    /// Shift-model operator norm, when the kernel is diagonal.
    pub shift_norm: Option<f64>,
}

impl ContractionReport {
    /// Is the adjoint tuple a contraction (no negativity in the contracted
    /// kernel beyond tolerance)?
    pub fn is_contraction(&self) -> bool {
        self.verdict.verdict != Verdict::Indefinite
    }
}

/// Decide whether M* (the adjoint of multiplication by the coordinates) is a
/// contraction: equivalently, the contracted kernel
///   (1 − zw̄) K,  (1 − ⟨z, w⟩) K,  ∏(1 − z_i w̄_i) K,  or det(I − ZW*) K
/// (per domain) is positive definite. Checks diagonal coefficients when the
/// contracted kernel is diagonal, plus a Taylor matrix and a sampled Gram.
pub fn contraction_test(kernel: &KernelSpec, order: u32, seed: u64) -> Result<ContractionReport> {
    let contracted = kernel.clone().contract();
    let domain = kernel.domain()?;
    let m = domain.dim();

    let mut verdict: Option<PosDefVerdict> = None;
    let mut shift_norm = None;

    // Diagonal shortcut: the sign of the coefficients decides, and we get the
    // weighted-shift norm for free.
    if let Some(coeffs) = contracted.diagonal_coefficients(order)? {
        let mut v = posdef::diag_coeff_psd(&coeffs, 1e-9);
        v.source = "contract diag-coeff".into();
        verdict = Some(v);
        if let Some(base) = kernel.diagonal_coefficients(order)? {
            if base.iter().all(|&a| a > 0.0) {
                // The base coefficients determine the shift up to this order;
                // the last ratio stands in for the tail.
                let tail = *base.last().unwrap();
                let head = &base[..base.len() - 1];
                shift_norm = Some(shift_from_diagonal(head, tail)?.norm());
            }
        }
    }

    // Taylor matrix of the contracted kernel at 0.
    let s = contracted.taylor_expand(&vec![C64::new(0.0, 0.0); m], order)?;
    let deltas = posdef::default_deltas(m, order);
    let tv = posdef::taylor_psd_all(&s, &deltas, 1e-9)?;
    verdict = Some(match verdict {
        Some(v) => v.combine(tv),
        None => tv,
    });

    // Sampled Gram, small radius so the closed forms are exact and
    // well-conditioned.
    let pts = points::sample(&domain, seed, 8, 0.45);
    let gv = posdef::gram_psd(&contracted, &pts, 1e-9)?;
    let verdict = verdict.unwrap().combine(gv);

    Ok(ContractionReport {
        verdict,
        shift_norm,
    })
}

/// Row contraction test for a kernel on the ball: positivity of (1−⟨z,w⟩)K.
/// On the ball the contracted factor already is 1−⟨z,w⟩, so this is just
/// `contraction_test`; for other domains the factor is forced here.
pub fn row_contraction_test(
    kernel: &KernelSpec,
    order: u32,
    seed: u64,
) -> Result<ContractionReport> {
    match kernel.domain()? {
        Domain::Ball(_) | Domain::Disc => contraction_test(kernel, order, seed),
        other => {
            // Multiply by 1 − ⟨z,w⟩ explicitly and test positivity.
            let m = other.dim();
            let mut factor =
                crate::series::HermitianSeries::constant(m, order, vec![C64::new(0.0, 0.0); m], C64::new(1.0, 0.0));
            for i in 0..m {
                let e = MultiIndex::unit(m, i);
                factor.insert(e.clone(), e, C64::new(-1.0, 0.0));
            }
            let product =
                KernelSpec::product(kernel.clone(), KernelSpec::Series(factor, other.clone()));
            let s = product.taylor_expand(&vec![C64::new(0.0, 0.0); m], order)?;
            let deltas = posdef::default_deltas(m, order);
            let mut v = posdef::taylor_psd_all(&s, &deltas, 1e-9)?;
            let pts = points::sample(&other, seed, 8, 0.3);
            v = v.combine(posdef::gram_psd(&s, &pts, 1e-9)?);
            Ok(ContractionReport {
                verdict: v,
                shift_norm: None,
            })
        }
    }
}

/// Polydisc contraction test: positivity of ∏(1 − z_i w̄_i) K, i.e. every
/// coordinate multiplier simultaneously.
pub fn polydisc_contraction_test(
    kernel: &KernelSpec,
    order: u32,
    seed: u64,
) -> Result<ContractionReport> {
    match kernel.domain()? {
        Domain::Polydisc(_) | Domain::Disc => contraction_test(kernel, order, seed),
        other => {
            let m = other.dim();
            let mut product = kernel.clone();
            for i in 0..m {
                let factor = one_minus_coordinate(m, i, order, &other);
                product = KernelSpec::product(product, factor);
            }
            let s = product.taylor_expand(&vec![C64::new(0.0, 0.0); m], order)?;
            let deltas = posdef::default_deltas(m, order);
            let mut v = posdef::taylor_psd_all(&s, &deltas, 1e-9)?;
            let pts = points::sample(&other, seed, 8, 0.3);
            v = v.combine(posdef::gram_psd(&s, &pts, 1e-9)?);
            Ok(ContractionReport {
                verdict: v,
                shift_norm: None,
            })
        }
    }
}

/// The polynomial kernel 1 − z_i w̄_i in m variables, as a series atom.
fn one_minus_coordinate(m: usize, i: usize, order: u32, domain: &Domain) -> KernelSpec {
    let mut s = crate::series::HermitianSeries::constant(m, order, vec![C64::new(0.0, 0.0); m], C64::new(1.0, 0.0));
    let e = MultiIndex::unit(m, i);
    s.insert(e.clone(), e, C64::new(-1.0, 0.0));
    KernelSpec::Series(s, domain.clone())
}

/// The local rank-two model at w for a one-variable kernel:
///   N_T(w) = [[w, h], [0, w]],   h = (−K_T(w))^{−1/2}.
#[derive(Clone, Debug, Serialize)]
pub struct LocalOperator {
    pub w: (f64, f64),
    pub h: f64,
    pub curvature: f64,
}

pub fn local_operator(kernel: &KernelSpec, w: C64) -> Result<LocalOperator> {
    let curv = curvature::curvature_scalar(kernel, w)?;
    if curv >= 0.0 {
        return Err(Error::Normalization(format!(
            "curvature {curv} at {w} is not negative; no local model"
        )));
    }
    Ok(LocalOperator {
        w: (w.re, w.im),
        h: (-curv).powf(-0.5),
        curvature: curv,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalContraction {
    pub operator: LocalOperator,
    /// h² − (1−|w|²)²: ≤ 0 iff N_T(w) is a contraction.
    pub margin: f64,
    pub contraction: bool,
}

/// N_T(w) is a contraction iff −K_T(w) ≥ (1−|w|²)^{−2}, i.e.
/// h² ≤ (1−|w|²)².
pub fn local_contraction_test(kernel: &KernelSpec, w: C64) -> Result<LocalContraction> {
    let op = local_operator(kernel, w)?;
    let bound = (1.0 - w.norm_sqr()).powi(2);
    let margin = op.h * op.h - bound;
    Ok(LocalContraction {
        operator: op,
        contraction: margin <= LOCAL_SLACK,
        margin,
    })
}

/// Worst local margin over sampled points.
pub fn local_contraction_sweep(
    kernel: &KernelSpec,
    pts: &[Vec<C64>],
) -> Result<(bool, f64, Option<Vec<(f64, f64)>>)> {
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for p in pts {
        let r = local_contraction_test(kernel, p[0])?;
        if r.margin > worst {
            worst = r.margin;
            if !r.contraction {
                witness = Some(p.iter().map(|z| (z.re, z.im)).collect());
            }
        }
    }
    Ok((worst <= LOCAL_SLACK, worst, witness))
}

/// Witness extraction helper for reports.
pub fn verdict_witness_index(v: &PosDefVerdict) -> Option<usize> {
    match v.witness {
        Witness::DiagCoefficient { index, .. } => Some(index),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn shift_weights_counterexample() {
        // a = {8, 16, 15, 15, ...}: weights {√(1/2), √(16/15), 1, 1, ...},
        // norm √(16/15) ≈ 1.0328 > 1.
        let s = shift_from_diagonal(&[8.0, 16.0, 15.0], 15.0).unwrap();
        assert!((s.weights[0] - (0.5f64).sqrt()).abs() < 1e-12);
        assert!((s.weights[1] - (16.0f64 / 15.0).sqrt()).abs() < 1e-12);
        assert!((s.weights[2] - 1.0).abs() < 1e-12);
        assert!((s.norm() - (16.0f64 / 15.0).sqrt()).abs() < 1e-12);
        assert!(!s.is_contraction());
    }

    #[test]
    fn shift_szego_is_isometry_limit() {
        // Szegő coefficients are all 1: the shift is the unweighted unilateral
        // shift, norm 1.
        let s = shift_from_diagonal(&[1.0, 1.0, 1.0, 1.0], 1.0).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert!(s.is_contraction());
    }

    #[test]
    fn contraction_szego() {
        // (1−zw̄)·Szegő = 1 ≥ 0: M* is a contraction (indeed an isometry-like
        // boundary case, so degenerate rather than strictly positive).
        let r = contraction_test(&KernelSpec::SzegoDisc, 8, 42).unwrap();
        assert!(r.is_contraction());
        assert!((r.shift_norm.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn contraction_counterexample_fails() {
        // (1−zw̄)(8 + 16 zw̄ + 15 z²w̄²/(1−zw̄)) = 8 + 8 zw̄ − z²w̄²: not positive,
        // so M* is NOT a contraction...
        let k = KernelSpec::diagonal(vec![8.0, 16.0, 15.0], 15.0);
        let r = contraction_test(&k, 8, 42).unwrap();
        assert!(!r.is_contraction());
        assert_eq!(verdict_witness_index(&r.verdict), Some(2));
        // ...and the shift norm agrees.
        assert!((r.shift_norm.unwrap() - (16.0f64 / 15.0).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn contraction_szego_squared() {
        // (1−zw̄)·(1−zw̄)^{−2} = (1−zw̄)^{−1}: positive. Contraction.
        let r = contraction_test(&KernelSpec::SzegoDisc.pow(2.0), 8, 42).unwrap();
        assert!(r.is_contraction());
    }

    #[test]
    fn row_contraction_da_sharp() {
        // Drury–Arveson is the universal row contraction: (1−⟨z,w⟩)K = 1.
        let r = row_contraction_test(&KernelSpec::DruryArveson(2), 6, 42).unwrap();
        assert!(r.is_contraction());
        // The square root of DA is not a row contraction: the contracted
        // kernel (1−u)^{1/2}-type has a negative coefficient.
        let r = row_contraction_test(&KernelSpec::DruryArveson(2).pow(0.5), 6, 42).unwrap();
        assert!(!r.is_contraction());
    }

    #[test]
    fn polydisc_contraction_szego2() {
        let k = KernelSpec::SzegoPolydisc(2);
        let r = polydisc_contraction_test(&k, 6, 42).unwrap();
        assert!(r.is_contraction());
        // ... but its square root fails.
        let r = polydisc_contraction_test(&k.pow(0.5), 6, 42).unwrap();
        assert!(!r.is_contraction());
    }

    #[test]
    fn local_operator_szego() {
        // h = (−K)^{−1/2} = 1−|w|²: equality case, contraction with margin 0.
        for &r in &[0.0, 0.4, 0.8] {
            let t = local_contraction_test(&KernelSpec::SzegoDisc, c(r)).unwrap();
            assert!(t.contraction);
            assert!(t.margin.abs() < 1e-9);
            assert!((t.operator.h - (1.0 - r * r)).abs() < 1e-10);
        }
    }

    #[test]
    fn local_operator_counterexample_contraction() {
        // Curvature of the §1 kernel dominates the Szegő bound pointwise, so
        // every local operator is a contraction even though M* is not.
        let k = KernelSpec::diagonal(vec![8.0, 16.0, 15.0], 15.0);
        let pts = points::disc_points(42, 12, 0.9);
        let (ok, worst, witness) = local_contraction_sweep(&k, &pts).unwrap();
        assert!(ok, "worst margin {worst}");
        assert!(witness.is_none());
        // At w = 0: −K = 2, h² = 1/2 < 1.
        let t = local_contraction_test(&k, c(0.0)).unwrap();
        assert!((t.operator.h * t.operator.h - 0.5).abs() < 1e-10);
    }

    #[test]
    fn local_operator_needs_negative_curvature() {
        // exp-type flat kernel const(2) has zero curvature: no model.
        assert!(local_operator(&KernelSpec::Constant(2.0), c(0.1)).is_err());
    }
}
