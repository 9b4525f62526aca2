//! Curvature of the line bundle attached to a kernel: pointwise values,
//! negativity checks, and comparison of curvatures of two kernels — both at
//! sampled points and as a real-analytic function via the log-quotient series.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::eigen::HermitianMatrix;
use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::posdef::{self, PosDefVerdict, Verdict};
use crate::series::{HermitianSeries, MultiIndex};

/// Curvature (i, j)-entry at w:
///   K_T(w)_ij = −∂_i∂̄_j log K = −(K ∂_i∂̄_j K − ∂_i K ∂̄_j K)/K².
pub fn curvature_matrix(kernel: &KernelSpec, w: &[C64]) -> Result<HermitianMatrix> {
    let d = kernel.derivatives(w)?;
    let k = d.value;
    if k.norm() < 1e-14 {
        return Err(Error::Normalization(format!(
            "kernel vanishes at {w:?}; curvature undefined"
        )));
    }
    let m = w.len();
    let mat = HermitianMatrix::from_fn(m, |i, j| {
        -(k * d.hess[i][j] - d.grad[i] * d.grad[j].conj()) / (k * k)
    });
    Ok(mat)
}

/// Scalar curvature for one-variable kernels.
pub fn curvature_scalar(kernel: &KernelSpec, w: C64) -> Result<f64> {
    let mat = curvature_matrix(kernel, &[w])?;
    let v = mat.get(0, 0);
    if v.im.abs() > 1e-9 * v.re.abs().max(1.0) {
        return Err(Error::Normalization(format!(
            "curvature not real: {v}"
        )));
    }
    Ok(v.re)
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureSample {
    pub point: Vec<(f64, f64)>,
    pub max_eigenvalue: f64,
}

/// Negativity of the curvature matrix at every sampled point (it should be
/// negative definite for a nondegenerate positive definite kernel).
pub fn curvature_negativity(
    kernel: &KernelSpec,
    points: &[Vec<C64>],
    eps: f64,
) -> Result<(PosDefVerdict, Vec<CurvatureSample>)> {
    let mut samples = Vec::with_capacity(points.len());
    let mut acc: Option<PosDefVerdict> = None;
    for w in points {
        // Check −K_T ≻ 0.
        let mat = curvature_matrix(kernel, w)?;
        let neg = HermitianMatrix::from_fn(mat.dim(), |i, j| -mat.get(i, j));
        let (lo, hi) = neg.min_max_eigenvalues();
        let v = posdef::verdict_from_eigen(lo, hi, eps, mat.dim(), "curvature");
        samples.push(CurvatureSample {
            point: w.iter().map(|z| (z.re, z.im)).collect(),
            max_eigenvalue: -lo,
        });
        acc = Some(match acc {
            Some(a) => a.combine(v),
            None => v,
        });
    }
    acc.map(|v| (v, samples))
        .ok_or_else(|| Error::Config("curvature_negativity needs points".into()))
}

/// ∂∂̄ log K recentered at w0 as a series: entry (i, j) is ∂_i∂̄_j of the log
/// expansion, so its value at the center is −K_T(w0)_ij.
pub fn log_hessian_series(
    kernel: &KernelSpec,
    w0: &[C64],
    order: u32,
) -> Result<Vec<Vec<HermitianSeries>>> {
    let s = kernel.taylor_expand(w0, order)?;
    let l = s.log()?;
    let m = w0.len();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            row.push(l.mixed_derivative(i, j));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// How to compare the curvatures of two kernels.
#[derive(Clone, Debug)]
pub enum CompareMode {
    /// Eigenvalue test of K_B(w) − K_A(w) at each listed point.
    Pointwise(Vec<Vec<C64>>),
    /// Function-order test: ∂∂̄(log K_B − log K_A) checked as a positive
    /// real-analytic matrix function via Taylor matrices over `deltas` and a
    /// sampled block Gram over `points`.
    FunctionOrder {
        center: Vec<C64>,
        order: u32,
        deltas: Vec<MultiIndex>,
        points: Vec<Vec<C64>>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureComparison {
    pub verdict: PosDefVerdict,
    /// max over sampled points of the smallest eigenvalue of K_B − K_A
    /// (pointwise mode only).
    pub pointwise_margin: Option<f64>,
}

/// Decide K_A(w) ≤ K_B(w) — equivalently 0 ≤ K_B − K_A = ∂∂̄(log K_B − log K_A).
pub fn curvature_compare(
    a: &KernelSpec,
    b: &KernelSpec,
    mode: &CompareMode,
    eps: f64,
) -> Result<CurvatureComparison> {
    match mode {
        CompareMode::Pointwise(points) => {
            let mut acc: Option<PosDefVerdict> = None;
            let mut margin = f64::NEG_INFINITY;
            for w in points {
                let ka = curvature_matrix(a, w)?;
                let kb = curvature_matrix(b, w)?;
                let diff = HermitianMatrix::from_fn(ka.dim(), |i, j| kb.get(i, j) - ka.get(i, j));
                let (lo, hi) = diff.min_max_eigenvalues();
                margin = margin.max(lo);
                let v = posdef::verdict_from_eigen(lo, hi, eps, diff.dim(), "curvature-diff");
                acc = Some(match acc {
                    Some(x) => x.combine(v),
                    None => v,
                });
            }
            let verdict =
                acc.ok_or_else(|| Error::Config("curvature_compare needs points".into()))?;
            Ok(CurvatureComparison {
                verdict,
                pointwise_margin: Some(margin),
            })
        }
        CompareMode::FunctionOrder {
            center,
            order,
            deltas,
            points,
        } => {
            let ha = log_hessian_series(a, center, *order)?;
            let hb = log_hessian_series(b, center, *order)?;
            let m = ha.len();
            let diff: Vec<Vec<HermitianSeries>> = (0..m)
                .map(|i| (0..m).map(|j| hb[i][j].sub(&ha[i][j])).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            let verdict = posdef::matrix_function_check(&diff, deltas, points, eps)?;
            Ok(CurvatureComparison {
                verdict,
                pointwise_margin: None,
            })
        }
    }
}

/// Convenience: does kernel `a` have curvature dominated by `b` (K_A ≤ K_B)?
pub fn dominates(cmp: &CurvatureComparison) -> bool {
    cmp.verdict.verdict != Verdict::Indefinite
}
