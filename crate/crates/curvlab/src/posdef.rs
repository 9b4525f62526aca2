//! Positivity notions: sampled Gram matrices, Taylor-coefficient matrices H_δ,
//! the diagonal-coefficient shortcut, and conditional positive definiteness.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::eigen::HermitianMatrix;
use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::series::{HermitianSeries, MultiIndex};

/// Default relative tolerance for eigenvalue verdicts.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Positive,
    Degenerate,
    Indefinite,
}

/// What achieved the deciding value.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Minimum eigenvalue of a Gram or Taylor matrix of the given size.
    Eigenvalue { value: f64, dim: usize },
    /// Most negative diagonal coefficient and its index.
    DiagCoefficient { index: usize, value: f64 },
    /// A negative series coefficient at the given (I, J) key.
    SeriesCoefficient {
        row: Vec<u32>,
        col: Vec<u32>,
        value: f64,
    },
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosDefVerdict {
    pub verdict: Verdict,
    /// Minimum eigenvalue (or coefficient) that decided the verdict.
    pub min_eigenvalue: f64,
    pub witness: Witness,
    /// The effective ε the verdict was taken against.
    pub tolerance: f64,
    /// Which test produced it (gram, taylor, diag-coeff, cpd, combined, ...).
    pub source: String,
}

impl PosDefVerdict {
    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::Positive
    }

    pub fn is_indefinite(&self) -> bool {
        self.verdict == Verdict::Indefinite
    }

    /// Positive or degenerate: no negativity found beyond tolerance.
    pub fn passes(&self) -> bool {
        self.verdict != Verdict::Indefinite
    }

    /// Merge with another verdict, keeping the worst outcome and its witness.
    pub fn combine(self, other: PosDefVerdict) -> PosDefVerdict {
        let rank = |v: Verdict| match v {
            Verdict::Indefinite => 2,
            Verdict::Degenerate => 1,
            Verdict::Positive => 0,
        };
        match rank(other.verdict).cmp(&rank(self.verdict)) {
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Equal => {
                if other.min_eigenvalue < self.min_eigenvalue {
                    other
                } else {
                    self
                }
            }
        }
    }
}

/// Classify an eigen pair (λ_min, λ_max) against ε scaled by max(1, λ_max).
pub fn verdict_from_eigen(min: f64, max: f64, eps: f64, dim: usize, source: &str) -> PosDefVerdict {
    let tol = eps * max.abs().max(1.0);
    let verdict = if min > tol {
        Verdict::Positive
    } else if min < -tol {
        Verdict::Indefinite
    } else {
        Verdict::Degenerate
    };
    PosDefVerdict {
        verdict,
        min_eigenvalue: min,
        witness: Witness::Eigenvalue { value: min, dim },
        tolerance: tol,
        source: source.to_string(),
    }
}

/// A two-point function that can fill a Gram matrix.
pub trait GramSource {
    fn gram_value(&self, z: &[C64], w: &[C64]) -> Result<C64>;
}

impl GramSource for KernelSpec {
    fn gram_value(&self, z: &[C64], w: &[C64]) -> Result<C64> {
        self.eval(z, w)
    }
}

impl GramSource for HermitianSeries {
    fn gram_value(&self, z: &[C64], w: &[C64]) -> Result<C64> {
        Ok(self.eval_pair(z, w))
    }
}

/// Assemble the Gram matrix ((K(w_i, w_j))).
pub fn gram_matrix<S: GramSource>(source: &S, points: &[Vec<C64>]) -> Result<HermitianMatrix> {
    let n = points.len();
    let mut g = HermitianMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v = source.gram_value(&points[i], &points[j])?;
            g.set(i, j, v);
            g.set(j, i, v.conj());
        }
    }
    Ok(g)
}

/// Positivity of the sampled Gram matrix ((K(w_i, w_j))).
pub fn gram_psd<S: GramSource>(source: &S, points: &[Vec<C64>], eps: f64) -> Result<PosDefVerdict> {
    if points.is_empty() {
        return Err(Error::Config("gram_psd needs at least one point".into()));
    }
    let g = gram_matrix(source, points)?;
    let (lo, hi) = g.min_max_eigenvalues();
    Ok(verdict_from_eigen(lo, hi, eps, points.len(), "gram"))
}

/// The Taylor-coefficient matrix H_δ(w0; s): entries a_{αβ} for α, β ≤ δ in
/// colexicographic order.
#[derive(Clone, Debug)]
pub struct TaylorMatrix {
    pub delta: MultiIndex,
    pub indices: Vec<MultiIndex>,
    pub matrix: HermitianMatrix,
    pub center: Vec<C64>,
}

impl TaylorMatrix {
    pub fn build(s: &HermitianSeries, delta: &MultiIndex) -> Result<TaylorMatrix> {
        if delta.degree() > s.order() {
            return Err(Error::OrderExceeded(
                delta.exponents().to_vec(),
                s.order(),
            ));
        }
        let indices = MultiIndex::indices_up_to(delta);
        let n = indices.len();
        let matrix = HermitianMatrix::from_fn(n, |i, j| s.coeff(&indices[i], &indices[j]));
        Ok(TaylorMatrix {
            delta: delta.clone(),
            indices,
            matrix,
            center: s.center().to_vec(),
        })
    }
}

/// Positivity of H_δ built from the series coefficients.
pub fn taylor_psd(s: &HermitianSeries, delta: &MultiIndex, eps: f64) -> Result<PosDefVerdict> {
    let tm = TaylorMatrix::build(s, delta)?;
    let (lo, hi) = tm.matrix.min_max_eigenvalues();
    let mut v = verdict_from_eigen(lo, hi, eps, tm.indices.len(), "taylor");
    v.source = format!("taylor H_{delta}", delta = delta);
    Ok(v)
}

/// Combined Taylor verdict over a list of δ's: the worst one wins.
pub fn taylor_psd_all(
    s: &HermitianSeries,
    deltas: &[MultiIndex],
    eps: f64,
) -> Result<PosDefVerdict> {
    let mut acc: Option<PosDefVerdict> = None;
    for d in deltas {
        let v = taylor_psd(s, d, eps)?;
        acc = Some(match acc {
            Some(a) => a.combine(v),
            None => v,
        });
    }
    acc.ok_or_else(|| Error::Config("taylor_psd_all needs at least one delta".into()))
}

/// Default δ list for a series: the full box (N,...,N) in one variable, all
/// boxes of total degree ≤ min(N, 4) in several.
pub fn default_deltas(m: usize, order: u32) -> Vec<MultiIndex> {
    if m == 1 {
        return vec![MultiIndex::new(vec![order])];
    }
    let cap = order.min(4);
    MultiIndex::indices_up_to(&MultiIndex::new(vec![cap; m]))
        .into_iter()
        .filter(|d| d.degree() > 0 && d.degree() <= cap)
        .collect()
}

/// Sign test for diagonal kernels Σ a_n z^n w̄^n: positivity of the kernel is
/// positivity of the coefficients.
pub fn diag_coeff_psd(coeffs: &[f64], eps: f64) -> PosDefVerdict {
    let (mut min, mut at) = (f64::INFINITY, 0usize);
    for (n, &a) in coeffs.iter().enumerate() {
        if a < min {
            min = a;
            at = n;
        }
    }
    if coeffs.is_empty() {
        min = 0.0;
    }
    let verdict = if min > eps {
        Verdict::Positive
    } else if min < -eps {
        Verdict::Indefinite
    } else {
        Verdict::Degenerate
    };
    PosDefVerdict {
        verdict,
        min_eigenvalue: min,
        witness: Witness::DiagCoefficient {
            index: at,
            value: min,
        },
        tolerance: eps,
        source: "diag-coeff".into(),
    }
}

/// Conditional positive definiteness of a Hermitian matrix G: positivity of
/// P·G·P with P = I − (1/n)·ones, the projection onto Σα_i = 0.
pub fn cpd_check(g: &HermitianMatrix, eps: f64) -> Result<PosDefVerdict> {
    let n = g.dim();
    let dev = g.hermitian_deviation();
    let scale = (0..n)
        .map(|i| g.get(i, i).norm())
        .fold(1.0_f64, f64::max);
    if dev > 1e-9 * scale {
        return Err(Error::NotHermitian(dev));
    }
    // PGP entries: g_ij − rowmean_i − colmean_j + totalmean.
    let nn = n as f64;
    let row_mean: Vec<C64> = (0..n)
        .map(|i| (0..n).map(|j| g.get(i, j)).sum::<C64>() / nn)
        .collect();
    let total: C64 = row_mean.iter().sum::<C64>() / nn;
    let p = HermitianMatrix::from_fn(n, |i, j| {
        g.get(i, j) - row_mean[i] - row_mean[j].conj() + total
    });
    let (lo, hi) = p.min_max_eigenvalues();
    let mut v = verdict_from_eigen(lo, hi, eps, n, "cpd");
    // The projected form has a structural zero eigenvalue along the constants;
    // a degenerate floor is therefore the best possible outcome and counts as
    // conditional positivity.
    if v.verdict == Verdict::Degenerate {
        v.verdict = Verdict::Positive;
    }
    Ok(v)
}

/// Positivity of a real-analytic function via its polarized series: Taylor
/// matrices over every δ in `deltas` AND the sampled Gram over `points`.
pub fn posdef_function_check(
    s: &HermitianSeries,
    deltas: &[MultiIndex],
    points: &[Vec<C64>],
    eps: f64,
) -> Result<PosDefVerdict> {
    let mut v = taylor_psd_all(s, deltas, eps)?;
    if !points.is_empty() {
        v = v.combine(gram_psd(s, points, eps)?);
    }
    Ok(v)
}

/// Block Gram matrix of a matrix-valued series kernel ((D_ij(z_s, z_t))),
/// indexed by (point, component).
pub fn matrix_series_gram(
    entries: &[Vec<HermitianSeries>],
    points: &[Vec<C64>],
) -> HermitianMatrix {
    let m = entries.len();
    let n = points.len();
    HermitianMatrix::from_fn(m * n, |a, b| {
        let (s, i) = (a / m, a % m);
        let (t, j) = (b / m, b % m);
        entries[i][j].eval_pair(&points[s], &points[t])
    })
}

/// Block Taylor matrix of a matrix-valued series kernel: entries are the
/// coefficients of D_ij at (α, β), α, β ≤ δ, indexed by (α colex, component).
pub fn matrix_taylor_psd(
    entries: &[Vec<HermitianSeries>],
    delta: &MultiIndex,
    eps: f64,
) -> Result<PosDefVerdict> {
    let m = entries.len();
    if delta.degree() > entries[0][0].order() {
        return Err(Error::OrderExceeded(
            delta.exponents().to_vec(),
            entries[0][0].order(),
        ));
    }
    let indices = MultiIndex::indices_up_to(delta);
    let p = indices.len();
    let mat = HermitianMatrix::from_fn(m * p, |a, b| {
        let (s, i) = (a / m, a % m);
        let (t, j) = (b / m, b % m);
        entries[i][j].coeff(&indices[s], &indices[t])
    });
    let (lo, hi) = mat.min_max_eigenvalues();
    Ok(verdict_from_eigen(lo, hi, eps, m * p, "matrix-taylor"))
}

/// Combined verdict for a matrix-valued series kernel: block Taylor matrices
/// over `deltas` plus the sampled block Gram.
pub fn matrix_function_check(
    entries: &[Vec<HermitianSeries>],
    deltas: &[MultiIndex],
    points: &[Vec<C64>],
    eps: f64,
) -> Result<PosDefVerdict> {
    let mut acc: Option<PosDefVerdict> = None;
    for d in deltas {
        let v = matrix_taylor_psd(entries, d, eps)?;
        acc = Some(match acc {
            Some(a) => a.combine(v),
            None => v,
        });
    }
    let mut v = acc.ok_or_else(|| Error::Config("no deltas".into()))?;
    if !points.is_empty() {
        let g = matrix_series_gram(entries, points);
        let (lo, hi) = g.min_max_eigenvalues();
        v = v.combine(verdict_from_eigen(lo, hi, eps, g.dim(), "matrix-gram"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn gram_szego_positive() {
        let pts = points::disc_points(42, 5, 0.9);
        let v = gram_psd(&KernelSpec::SzegoDisc, &pts, DEFAULT_EPS).unwrap();
        assert_eq!(v.verdict, Verdict::Positive);
    }

    #[test]
    fn gram_counterexample_factor_indefinite() {
        // K‡ of the §1 counterexample: 8 + 8 zw̄ − z²w̄².
        let k = KernelSpec::diagonal(vec![8.0, 8.0, -1.0], 0.0);
        let pts: Vec<Vec<C64>> = vec![
            vec![c(0.1)],
            vec![c(0.5)],
            vec![c(0.8)],
            vec![C64::new(0.0, 0.9)],
            vec![c(-0.7)],
        ];
        let v = gram_psd(&k, &pts, DEFAULT_EPS).unwrap();
        assert_eq!(v.verdict, Verdict::Indefinite);
    }

    #[test]
    fn gram_constant_rank_one() {
        let pts = points::disc_points(1, 4, 0.8);
        let v = gram_psd(&KernelSpec::Constant(1.0), &pts, DEFAULT_EPS).unwrap();
        assert_ne!(v.verdict, Verdict::Indefinite);
        assert!(v.min_eigenvalue.abs() < 1e-10);
    }

    #[test]
    fn taylor_szego_identity() {
        let s = KernelSpec::SzegoDisc.taylor_expand(&[c(0.0)], 4).unwrap();
        let v = taylor_psd(&s, &MultiIndex::new(vec![2]), DEFAULT_EPS).unwrap();
        assert_eq!(v.verdict, Verdict::Positive);
        assert!((v.min_eigenvalue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn taylor_log_example_indefinite() {
        // 1 + a1 zw̄ + a2 z²w̄² with a2 < a1²/2: ∂∂̄ log is indefinite; here the
        // log series itself has a negative z²w̄² coefficient.
        let s = HermitianSeries::one_var_diagonal(&[1.0, 1.0, 0.25, 0.0, 0.0], 4);
        let l = s.log().unwrap();
        let v = taylor_psd(&l, &MultiIndex::new(vec![4]), DEFAULT_EPS).unwrap();
        assert_eq!(v.verdict, Verdict::Indefinite);
    }

    #[test]
    fn taylor_order_exceeded() {
        let s = HermitianSeries::one_var_diagonal(&[1.0, 1.0], 2);
        assert!(taylor_psd(&s, &MultiIndex::new(vec![5]), DEFAULT_EPS).is_err());
    }

    #[test]
    fn diag_coeff_examples() {
        let v = diag_coeff_psd(&[8.0, 16.0, 15.0, 15.0], 1e-9);
        assert_eq!(v.verdict, Verdict::Positive);

        let v = diag_coeff_psd(&[8.0, 8.0, -1.0], 1e-9);
        assert_eq!(v.verdict, Verdict::Indefinite);
        assert_eq!(
            v.witness,
            Witness::DiagCoefficient {
                index: 2,
                value: -1.0
            }
        );

        // {1, t, t(2t−1)/4} at t = 0.25.
        let t = 0.25;
        let v = diag_coeff_psd(&[1.0, t, t * (2.0 * t - 1.0) / 4.0], 1e-9);
        assert_eq!(v.verdict, Verdict::Indefinite);
    }

    #[test]
    fn cpd_examples() {
        // Constant −1 matrix is CPD: the projection kills constants.
        let g = HermitianMatrix::from_fn(4, |_, _| c(-1.0));
        let v = cpd_check(&g, DEFAULT_EPS).unwrap();
        assert!(v.passes());

        // Any PSD matrix is CPD.
        let pts = points::disc_points(5, 5, 0.8);
        let g = gram_matrix(&KernelSpec::SzegoDisc, &pts).unwrap();
        assert!(cpd_check(&g, DEFAULT_EPS).unwrap().passes());

        // Diagonal {1, 1, −5} is not CPD.
        let g = HermitianMatrix::from_fn(3, |i, j| {
            if i == j {
                c(if i == 2 { -5.0 } else { 1.0 })
            } else {
                c(0.0)
            }
        });
        assert!(cpd_check(&g, DEFAULT_EPS).unwrap().is_indefinite());
    }

    #[test]
    fn posdef_function_examples() {
        // Polarization of |w|²: zw̄.
        let s = HermitianSeries::one_var_diagonal(&[0.0, 1.0], 4);
        let pts = points::disc_points(9, 5, 0.8);
        let v = posdef_function_check(&s, &[MultiIndex::new(vec![4])], &pts, DEFAULT_EPS).unwrap();
        assert!(v.passes());

        // log Szegő = Σ z^n w̄^n / n: positive coefficients.
        let szego = KernelSpec::SzegoDisc.taylor_expand(&[c(0.0)], 8).unwrap();
        let l = szego.log().unwrap();
        for n in 1..=8u32 {
            assert!((l.coeff1(n, n) - c(1.0 / n as f64)).norm() < 1e-12);
        }
        let v = posdef_function_check(&l, &[MultiIndex::new(vec![8])], &pts, DEFAULT_EPS).unwrap();
        assert!(v.passes());
    }

    #[test]
    fn agreement_diag_vs_gram() {
        // Coefficient-indefinite diagonal kernels admit a sampled point set
        // making the Gram indefinite (searching a few seeded sets).
        let mut rng_seed = 0u64;
        for case in 0..50 {
            let mut rng = points::rng(1000 + case);
            use rand::Rng;
            let coeffs: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..2.0)).collect();
            let dv = diag_coeff_psd(&coeffs, 1e-9);
            let witness_early = matches!(
                dv.witness,
                Witness::DiagCoefficient { index, .. } if index <= 4
            );
            if !(dv.is_indefinite() && witness_early) {
                continue;
            }
            let k = KernelSpec::diagonal(coeffs, 0.0);
            let mut found = false;
            for attempt in 0..20 {
                rng_seed += 1;
                let mut pts = points::disc_points(rng_seed + attempt, 10, 0.95);
                // Always include moduli near 0.9.
                pts.push(vec![c(0.9)]);
                pts.push(vec![C64::new(0.0, 0.9)]);
                if gram_psd(&k, &pts, DEFAULT_EPS).unwrap().is_indefinite() {
                    found = true;
                    break;
                }
            }
            assert!(found, "no witnessing point set for {case}");
        }
    }

    #[test]
    fn taylor_positive_for_szego_products() {
        let k = KernelSpec::product(
            KernelSpec::SzegoDisc.pow(1.5),
            KernelSpec::SzegoDisc.pow(0.7),
        );
        let s = k.taylor_expand(&[c(0.0)], 6).unwrap();
        for n in 1..=6u32 {
            let v = taylor_psd(&s, &MultiIndex::new(vec![n]), DEFAULT_EPS).unwrap();
            assert!(v.passes());
        }
    }
}
