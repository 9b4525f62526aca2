//! Infinite divisibility: K^t positive definite for every t > 0 on a sampled
//! grid, conditional positivity of log K, and the constructive converse that
//! rebuilds a divisible kernel from the mixed part of log K̂.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::curvature;
use crate::eigen::HermitianMatrix;
use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::points;
use crate::posdef::{self, PosDefVerdict};
use crate::series::HermitianSeries;

/// Default grid of exponents; divisibility is only ever certified up to this
/// grid and the truncation order.
pub const DEFAULT_T_GRID: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 1.0];

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Overall {
    /// No negativity found; a certificate only up to the stated order & grid.
    DivisibleUpToOrder { order: u32 },
    NotDivisible { witness_t: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityReport {
    pub t_grid: Vec<f64>,
    pub per_t: Vec<PosDefVerdict>,
    pub overall: Overall,
    pub order: u32,
    /// Reminder that divisible verdicts are conditional on order and grid.
    pub certified: &'static str,
}

impl DivisibilityReport {
    pub fn is_divisible(&self) -> bool {
        matches!(self.overall, Overall::DivisibleUpToOrder { .. })
    }

    pub fn witness_t(&self) -> Option<f64> {
        match self.overall {
            Overall::NotDivisible { witness_t } => Some(witness_t),
            _ => None,
        }
    }
}

fn report_from(t_grid: &[f64], per_t: Vec<PosDefVerdict>, order: u32) -> DivisibilityReport {
    let witness = t_grid
        .iter()
        .zip(&per_t)
        .find(|(_, v)| v.is_indefinite())
        .map(|(&t, _)| t);
    DivisibilityReport {
        t_grid: t_grid.to_vec(),
        per_t,
        overall: match witness {
            Some(t) => Overall::NotDivisible { witness_t: t },
            None => Overall::DivisibleUpToOrder { order },
        },
        order,
        certified: "up to order and t-grid",
    }
}

/// Check K^t for each t on the grid: Taylor matrices of the recentered power
/// series plus a sampled Gram.
pub fn divisibility_check(
    k: &KernelSpec,
    t_grid: &[f64],
    w0: &[C64],
    order: u32,
    eps: f64,
    seed: u64,
) -> Result<DivisibilityReport> {
    if t_grid.iter().any(|&t| t <= 0.0) {
        return Err(Error::Config("t grid must be strictly positive".into()));
    }
    let base = k.eval(w0, w0)?;
    if base.re <= 0.0 {
        return Err(Error::NonPositiveConstant(base));
    }
    let s = k.taylor_expand(w0, order)?;
    let m = w0.len();
    let deltas = posdef::default_deltas(m, order);
    // Small radius: keeps the truncation tail below verdict noise.
    let pts = near(w0, k, seed, 8, 0.3)?;
    let mut per_t = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let st = s.real_power(t)?;
        let mut v = posdef::posdef_function_check(&st, &deltas, &pts, eps)?;
        v.source = format!("t={t}: {}", v.source);
        per_t.push(v);
    }
    Ok(report_from(t_grid, per_t, order))
}

/// Sampled points of the kernel's domain translated near w0.
fn near(
    w0: &[C64],
    k: &KernelSpec,
    seed: u64,
    n: usize,
    radius: f64,
) -> Result<Vec<Vec<C64>>> {
    let domain = k.domain()?;
    let raw = points::sample(&domain, seed, n, radius);
    let shifted: Vec<Vec<C64>> = raw
        .into_iter()
        .map(|p| p.iter().zip(w0).map(|(d, c)| c + d).collect())
        .filter(|p: &Vec<C64>| domain.contains(p))
        .collect();
    if shifted.is_empty() {
        return Err(Error::OutsideDomain(format!(
            "no sample points near {w0:?} stay inside {}",
            domain.name()
        )));
    }
    Ok(shifted)
}

#[derive(Clone, Debug, Serialize)]
pub struct LogCpdReport {
    /// cpd_check of the Gram of log K over the points.
    pub cpd: PosDefVerdict,
    /// gram_psd of the shifted kernel
    /// L_{w0}(z,w) = log K(z,w) − log K(z,w0) − log K(w0,w) + log K(w0,w0).
    pub shifted_psd: PosDefVerdict,
}

impl LogCpdReport {
    pub fn passes(&self) -> bool {
        self.cpd.passes() && self.shifted_psd.passes()
    }
}

/// Conditional positive definiteness of log K, the forward obstruction to
/// infinite divisibility. Uses the principal branch; any sampled pair whose
/// kernel value has nonpositive real part is a branch failure.
pub fn log_kernel_cpd_check(
    k: &KernelSpec,
    pts: &[Vec<C64>],
    w0: &[C64],
    eps: f64,
) -> Result<LogCpdReport> {
    let n = pts.len();
    if n == 0 {
        return Err(Error::Config("log_kernel_cpd_check needs points".into()));
    }
    let log_at = |z: &[C64], w: &[C64]| -> Result<C64> {
        let v = k.eval(z, w)?;
        if v.re <= 0.0 {
            return Err(Error::LogBranch(v));
        }
        Ok(v.ln())
    };
    let mut g = HermitianMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v = log_at(&pts[i], &pts[j])?;
            g.set(i, j, v);
            g.set(j, i, v.conj());
        }
    }
    let cpd = posdef::cpd_check(&g, eps)?;

    let anchor: Vec<C64> = (0..n)
        .map(|i| log_at(&pts[i], w0))
        .collect::<Result<_>>()?;
    let base = log_at(w0, w0)?;
    let shifted = HermitianMatrix::from_fn(n, |i, j| {
        g.get(i, j) - anchor[i] - anchor[j].conj() + base
    });
    let (lo, hi) = shifted.min_max_eigenvalues();
    let shifted_psd = posdef::verdict_from_eigen(lo, hi, eps, n, "shifted-log-gram");
    Ok(LogCpdReport { cpd, shifted_psd })
}

/// Resample until every pairwise kernel value admits the principal log.
pub fn branch_safe_points(
    k: &KernelSpec,
    seed: u64,
    n: usize,
    radius: f64,
) -> Result<Vec<Vec<C64>>> {
    let domain = k.domain()?;
    'seeds: for attempt in 0..16u64 {
        let pts = points::sample(&domain, seed.wrapping_add(attempt), n, radius);
        for i in 0..pts.len() {
            for j in 0..=i {
                if k.eval(&pts[i], &pts[j])?.re <= 0.0 {
                    continue 'seeds;
                }
            }
        }
        return Ok(pts);
    }
    Err(Error::LogBranch(C64::new(0.0, 0.0)))
}

#[derive(Clone, Debug)]
pub struct ReconstructionResult {
    /// Mixed part of the input log K̂ (no (I,0) or (0,J) terms).
    pub k0: HermitianSeries,
    /// One-sided completion ψ = a₀₀/2 + Σ a_{I0} z^I.
    pub psi: HermitianSeries,
    /// exp(ψ) · exp(K₀) · exp(ψ̄): the reconstructed kernel series.
    pub kernel: HermitianSeries,
    /// max |exp-of-input(w,w) − kernel(w,w)| over the sample grid.
    pub diag_error: f64,
    /// Positivity of K₀ itself (Taylor matrices to full order).
    pub k0_verdict: PosDefVerdict,
    /// Per-t positivity of kernel^t.
    pub per_t: Vec<(f64, PosDefVerdict)>,
}

impl ReconstructionResult {
    pub fn divisible(&self) -> bool {
        self.k0_verdict.passes() && self.per_t.iter().all(|(_, v)| v.passes())
    }
}

/// Rebuild a kernel from the Hermitian series of log K̂: split off the mixed
/// part K₀ and the holomorphic completion ψ, assemble exp(ψ)exp(K₀)exp(ψ̄),
/// and certify divisibility of the result per t.
pub fn reconstruct(
    logdiag: &HermitianSeries,
    t_grid: &[f64],
    eps: f64,
) -> Result<ReconstructionResult> {
    let m = logdiag.vars();
    let zero = crate::series::MultiIndex::zero(m);
    // ψ is determined by pairing: a_{I0} must equal conj(a_{0I}).
    for ((i, j), _) in logdiag.iter() {
        if j.is_zero() && !i.is_zero() {
            let a = logdiag.coeff(i, j);
            let b = logdiag.coeff(j, i);
            if (a - b.conj()).norm() > 1e-10 {
                return Err(Error::Normalization(format!(
                    "holomorphic coefficients unpaired at {i}: {a} vs conj {b}"
                )));
            }
        }
    }
    let k0 = logdiag.mixed_part();
    let mut psi = logdiag.holomorphic_part();
    let a00 = logdiag.coeff(&zero, &zero);
    psi.insert(zero.clone(), zero.clone(), 0.5 * a00);
    let psi_bar = psi.conj_swap();

    let kernel = psi.exp().mul(&k0.exp())?.mul(&psi_bar.exp())?;

    // Diagonal agreement against exp of the input on a sample grid near the
    // series center.
    let grid: Vec<Vec<C64>> = points::sample(&crate::kernel::Domain::Ball(m), 77, 12, 0.15)
        .into_iter()
        .map(|p| {
            p.iter()
                .zip(logdiag.center())
                .map(|(d, c)| c + d)
                .collect()
        })
        .collect();
    let mut diag_error: f64 = 0.0;
    for w in &grid {
        let lhs = logdiag.eval_pair(w, w).exp();
        let rhs = kernel.eval_pair(w, w);
        diag_error = diag_error.max((lhs - rhs).norm());
    }

    let deltas = posdef::default_deltas(m, k0.order());
    let k0_verdict = posdef::taylor_psd_all(&k0, &deltas, eps)?;

    let mut per_t = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let kt = kernel.real_power(t)?;
        let v = posdef::posdef_function_check(&kt, &deltas, &grid, eps)?;
        per_t.push((t, v));
    }

    Ok(ReconstructionResult {
        k0,
        psi,
        kernel,
        diag_error,
        k0_verdict,
        per_t,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibleContractionReport {
    /// Route 1: K^t checks on the contracted kernel.
    pub factored: DivisibilityReport,
    /// Route 2: positivity of ∂∂̄ log(factor·K) as a function.
    pub curvature_route: PosDefVerdict,
    /// The two routes agree (up to degenerate boundary verdicts).
    pub routes_agree: bool,
}

impl DivisibleContractionReport {
    pub fn is_divisible_contraction(&self) -> bool {
        self.factored.is_divisible() && self.curvature_route.passes()
    }
}

/// Is M* an infinitely divisible contraction? Applies `divisibility_check` to
/// the domain-factored kernel (1−zw̄)K / (1−⟨z,w⟩)K / ∏(1−z_iw̄_i)K and
/// cross-checks via positivity of the curvature difference ∂∂̄ log(factor·K).
pub fn divisible_contraction_check(
    k: &KernelSpec,
    t_grid: &[f64],
    order: u32,
    eps: f64,
    seed: u64,
) -> Result<DivisibleContractionReport> {
    let contracted = k.clone().contract();
    let m = k.vars()?;
    let w0 = vec![C64::new(0.0, 0.0); m];
    let factored = divisibility_check(&contracted, t_grid, &w0, order, eps, seed)?;

    let h = curvature::log_hessian_series(&contracted, &w0, order)?;
    let deltas = posdef::default_deltas(m, order.saturating_sub(1));
    let pts = near(&w0, k, seed.wrapping_add(1), 6, 0.3)?;
    let curvature_route = posdef::matrix_function_check(&h, &deltas, &pts, eps)?;

    let routes_agree = factored.is_divisible() == curvature_route.passes();
    Ok(DivisibleContractionReport {
        factored,
        curvature_route,
        routes_agree,
    })
}
