//! Closed-form kernel families and combinators: pointwise evaluation, Taylor
//! expansion into a truncated series around a point, normalization, and exact
//! first/second derivative data on the diagonal.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::points::opnorm_2x2;
use crate::series::{HermitianSeries, MultiIndex};

/// Domain an atom lives on. The 2×2 matrix ball is flattened to 4 entry
/// variables (z1=Z11, z2=Z12, z3=Z21, z4=Z22, row-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Disc,
    Polydisc(usize),
    Ball(usize),
    MatrixBall2,
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Disc => 1,
            Domain::Polydisc(m) | Domain::Ball(m) => *m,
            Domain::MatrixBall2 => 4,
        }
    }

    pub fn contains(&self, p: &[C64]) -> bool {
        if p.len() != self.dim() {
            return false;
        }
        match self {
            Domain::Disc => p[0].norm() < 1.0,
            Domain::Polydisc(_) => p.iter().all(|z| z.norm() < 1.0),
            Domain::Ball(_) => p.iter().map(|z| z.norm_sqr()).sum::<f64>() < 1.0,
            Domain::MatrixBall2 => opnorm_2x2(p) < 1.0,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Domain::Disc => "disc".into(),
            Domain::Polydisc(m) => format!("polydisc({m})"),
            Domain::Ball(m) => format!("ball({m})"),
            Domain::MatrixBall2 => "matrix-ball(2x2)".into(),
        }
    }
}

/// Expression tree over the built-in kernel families.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelSpec {
    /// 1/(1 − z w̄) on the unit disc.
    SzegoDisc,
    /// ∏ 1/(1 − z_i w̄_i) on the polydisc.
    SzegoPolydisc(usize),
    /// 1/(1 − ⟨z, w⟩) on the Euclidean ball.
    DruryArveson(usize),
    /// Σ a_n z^n w̄^n with an eventually-constant coefficient tail, on the disc.
    Diagonal { coeffs: Vec<f64>, tail: f64 },
    /// det(I − ZW*)^{−1} on the 2×2 matrix ball.
    DetBall2,
    Constant(f64),
    /// A kernel given directly by its (Hermitian) series expansion.
    Series(HermitianSeries, Domain),
    Product(Box<KernelSpec>, Box<KernelSpec>),
    RealPower(Box<KernelSpec>, f64),
    /// Multiplication by the domain's (1 − zw̄)-type factor.
    ContractFactor(Box<KernelSpec>),
}

/// Value, holomorphic gradient and mixed Hessian of K on the diagonal:
/// value = K(w,w), grad_i = ∂_{z_i}K(z,w)|_{z=w}, hess_ij = ∂_{z_i}∂_{w̄_j}K(w,w).
#[derive(Clone, Debug)]
pub struct KernelDerivatives {
    pub value: C64,
    pub grad: Vec<C64>,
    pub hess: Vec<Vec<C64>>,
}

impl KernelSpec {
    pub fn product(a: KernelSpec, b: KernelSpec) -> KernelSpec {
        KernelSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn pow(self, t: f64) -> KernelSpec {
        KernelSpec::RealPower(Box::new(self), t)
    }

    pub fn contract(self) -> KernelSpec {
        KernelSpec::ContractFactor(Box::new(self))
    }

    pub fn diagonal(coeffs: Vec<f64>, tail: f64) -> KernelSpec {
        KernelSpec::Diagonal { coeffs, tail }
    }

    pub fn domain(&self) -> Result<Domain> {
        match self {
            KernelSpec::SzegoDisc => Ok(Domain::Disc),
            KernelSpec::SzegoPolydisc(m) => Ok(Domain::Polydisc(*m)),
            KernelSpec::DruryArveson(m) => Ok(Domain::Ball(*m)),
            KernelSpec::Diagonal { .. } => Ok(Domain::Disc),
            KernelSpec::DetBall2 => Ok(Domain::MatrixBall2),
            KernelSpec::Constant(_) => Ok(Domain::Disc),
            KernelSpec::Series(s, d) => {
                if s.vars() != d.dim() {
                    return Err(Error::DomainMismatch(format!(
                        "series has {} variables but domain {} has {}",
                        s.vars(),
                        d.name(),
                        d.dim()
                    )));
                }
                Ok(d.clone())
            }
            KernelSpec::Product(a, b) => {
                let (da, db) = (a.domain()?, b.domain()?);
                // A constant is domain-agnostic inside a product.
                match (&**a, &**b) {
                    (KernelSpec::Constant(_), _) => return Ok(db),
                    (_, KernelSpec::Constant(_)) => return Ok(da),
                    _ => {}
                }
                if da != db {
                    return Err(Error::DomainMismatch(format!(
                        "product of {} and {} kernels",
                        da.name(),
                        db.name()
                    )));
                }
                Ok(da)
            }
            KernelSpec::RealPower(a, _) | KernelSpec::ContractFactor(a) => a.domain(),
        }
    }

    pub fn vars(&self) -> Result<usize> {
        Ok(self.domain()?.dim())
    }

    /// The value of the (1 − zw̄)-type factor for a domain.
    pub fn contraction_factor(domain: &Domain, z: &[C64], w: &[C64]) -> C64 {
        let one = C64::new(1.0, 0.0);
        match domain {
            Domain::Disc => one - z[0] * w[0].conj(),
            Domain::Ball(m) => {
                let inner: C64 = (0..*m).map(|i| z[i] * w[i].conj()).sum();
                one - inner
            }
            Domain::Polydisc(m) => (0..*m).map(|i| one - z[i] * w[i].conj()).product(),
            Domain::MatrixBall2 => det_i_minus_zw(z, w),
        }
    }

    /// Kernel value K(z, w).
    pub fn eval(&self, z: &[C64], w: &[C64]) -> Result<C64> {
        let d = self.domain()?;
        if !d.contains(z) || !d.contains(w) {
            return Err(Error::OutsideDomain(format!(
                "eval point outside {}",
                d.name()
            )));
        }
        self.eval_raw(&d, z, w)
    }

    fn eval_raw(&self, d: &Domain, z: &[C64], w: &[C64]) -> Result<C64> {
        let one = C64::new(1.0, 0.0);
        Ok(match self {
            KernelSpec::SzegoDisc => one / (one - z[0] * w[0].conj()),
            KernelSpec::SzegoPolydisc(m) => (0..*m)
                .map(|i| one / (one - z[i] * w[i].conj()))
                .product(),
            KernelSpec::DruryArveson(m) => {
                let inner: C64 = (0..*m).map(|i| z[i] * w[i].conj()).sum();
                one / (one - inner)
            }
            KernelSpec::Diagonal { coeffs, tail } => {
                let u = z[0] * w[0].conj();
                let mut sum = C64::new(0.0, 0.0);
                let mut up = one;
                for &a in coeffs {
                    sum += a * up;
                    up *= u;
                }
                sum + tail * up / (one - u)
            }
            KernelSpec::DetBall2 => one / det_i_minus_zw(z, w),
            KernelSpec::Constant(c) => C64::new(*c, 0.0),
            KernelSpec::Series(s, _) => s.eval_pair(z, w),
            KernelSpec::Product(a, b) => a.eval_raw(d, z, w)? * b.eval_raw(d, z, w)?,
            KernelSpec::RealPower(a, t) => a.eval_raw(d, z, w)?.powf(*t),
            KernelSpec::ContractFactor(a) => {
                Self::contraction_factor(d, z, w) * a.eval_raw(d, z, w)?
            }
        })
    }

    /// Series expansion around (w0, w0), truncated at `order` per group.
    pub fn taylor_expand(&self, w0: &[C64], order: u32) -> Result<HermitianSeries> {
        let d = self.domain()?;
        if !d.contains(w0) {
            return Err(Error::OutsideDomain(format!(
                "expansion center outside {}",
                d.name()
            )));
        }
        self.expand_raw(w0, order)?.hermitianized()
    }

    fn expand_raw(&self, w0: &[C64], order: u32) -> Result<HermitianSeries> {
        let m = self.vars()?;
        let one = || HermitianSeries::constant(m, order, w0.to_vec(), C64::new(1.0, 0.0));
        Ok(match self {
            KernelSpec::SzegoDisc => one()
                .sub(&zw_term(w0, order, 0, 0))?
                .invert()?,
            KernelSpec::SzegoPolydisc(mm) => {
                let mut acc = one();
                for i in 0..*mm {
                    let f = one().sub(&zw_term(w0, order, i, i))?.invert()?;
                    acc = acc.mul(&f)?;
                }
                acc
            }
            KernelSpec::DruryArveson(mm) => {
                let mut f = one();
                for i in 0..*mm {
                    f = f.sub(&zw_term(w0, order, i, i))?;
                }
                f.invert()?
            }
            KernelSpec::Diagonal { coeffs, tail } => {
                let u = zw_term(w0, order, 0, 0);
                let mut sum = HermitianSeries::new(1, order, w0.to_vec());
                let mut up = one();
                for &a in coeffs {
                    sum = sum.add(&up.scaled(C64::new(a, 0.0)))?;
                    up = up.mul(&u)?;
                }
                let geo = one().sub(&u)?.invert()?;
                sum.add(&up.mul(&geo)?.scaled(C64::new(*tail, 0.0)))?
            }
            KernelSpec::DetBall2 => det_factor_series(w0, order).invert()?,
            KernelSpec::Constant(c) => {
                HermitianSeries::constant(m, order, w0.to_vec(), C64::new(*c, 0.0))
            }
            KernelSpec::Series(s, _) => {
                let center_dev: f64 = s
                    .center()
                    .iter()
                    .zip(w0)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                if center_dev > 1e-12 {
                    return Err(Error::SeriesMismatch(
                        "series atom cannot be re-centered".into(),
                    ));
                }
                s.truncated(order.min(s.order()))
            }
            KernelSpec::Product(a, b) => a.expand_raw(w0, order)?.mul(&b.expand_raw(w0, order)?)?,
            KernelSpec::RealPower(a, t) => a.expand_raw(w0, order)?.real_power(*t)?,
            KernelSpec::ContractFactor(a) => {
                let d = self.domain()?;
                contraction_factor_series(&d, w0, order)?.mul(&a.expand_raw(w0, order)?)?
            }
        })
    }

    /// The kernel rescaled so that K0(z, w0) ≡ 1, as a series at w0. Curvature
    /// at w0 is unchanged by this rescaling.
    pub fn normalize_at(&self, w0: &[C64], order: u32) -> Result<HermitianSeries> {
        let s = self.taylor_expand(w0, order)?;
        let m = s.vars();
        let zero = MultiIndex::zero(m);
        let a00 = s.coeff(&zero, &zero);
        if a00.re <= 1e-12 || a00.im.abs() > 1e-10 * (1.0 + a00.re.abs()) {
            return Err(Error::Normalization(format!(
                "K(w0,w0) = {a00} is not positive"
            )));
        }
        let phi = s.holomorphic_part();
        let phi_inv = phi
            .invert()
            .map_err(|_| Error::Normalization("K(z, w0) vanishes at w0".into()))?;
        let phibar_inv = phi_inv.conj_swap();
        let k0 = s.mul(&phi_inv)?.mul(&phibar_inv)?.scaled(a00);
        // The zero pattern a_{I0} = a_{0J} = 0, a_{00} = 1 holds by construction;
        // enforce it exactly against float residue.
        let mut out = k0.mixed_part();
        out.insert(zero.clone(), zero, C64::new(1.0, 0.0));
        out.hermitianized()
    }

    /// Exact derivative data on the diagonal, read off an order-2 expansion.
    pub fn derivatives(&self, w: &[C64]) -> Result<KernelDerivatives> {
        let s = self.taylor_expand(w, 2)?;
        let m = s.vars();
        let zero = MultiIndex::zero(m);
        let value = s.coeff(&zero, &zero);
        let grad: Vec<C64> = (0..m)
            .map(|i| s.coeff(&MultiIndex::unit(m, i), &zero))
            .collect();
        let hess: Vec<Vec<C64>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| s.coeff(&MultiIndex::unit(m, i), &MultiIndex::unit(m, j)))
                    .collect()
            })
            .collect();
        Ok(KernelDerivatives { value, grad, hess })
    }

    /// Diagonal coefficients a_n (K = Σ a_n z^n w̄^n) when the expansion at 0 is
    /// diagonal, up to `order`. Returns None if the kernel is not diagonal.
    pub fn diagonal_coefficients(&self, order: u32) -> Result<Option<Vec<f64>>> {
        if self.vars()? != 1 {
            return Ok(None);
        }
        let s = self.taylor_expand(&[C64::new(0.0, 0.0)], order)?;
        let scale = s.max_coeff_norm().max(1.0);
        let mut out = vec![0.0; order as usize + 1];
        for ((i, j), &c) in s.iter() {
            if i != j || c.im.abs() > 1e-12 * scale {
                if c.norm() > 1e-12 * scale {
                    return Ok(None);
                }
                continue;
            }
            out[i.degree() as usize] = c.re;
        }
        Ok(Some(out))
    }
}

/// Series of the monomial z_i w̄_j recentered at w0: (c_i + a_i)(c̄_j + b_j).
fn zw_term(w0: &[C64], order: u32, i: usize, j: usize) -> HermitianSeries {
    let m = w0.len();
    let zero = MultiIndex::zero(m);
    let ei = MultiIndex::unit(m, i);
    let ej = MultiIndex::unit(m, j);
    let (ci, cj) = (w0[i], w0[j].conj());
    HermitianSeries::from_coeffs(
        m,
        order,
        w0.to_vec(),
        [
            ((zero.clone(), zero.clone()), ci * cj),
            ((ei.clone(), zero.clone()), cj),
            ((zero, ej.clone()), ci),
            ((ei, ej), C64::new(1.0, 0.0)),
        ],
    )
}

fn det_i_minus_zw(z: &[C64], w: &[C64]) -> C64 {
    let one = C64::new(1.0, 0.0);
    // (ZW*)_{ik} = Σ_j Z_{ij} conj(W_{kj}); entries row-major z = [Z11,Z12,Z21,Z22].
    let m11 = one - (z[0] * w[0].conj() + z[1] * w[1].conj());
    let m12 = -(z[0] * w[2].conj() + z[1] * w[3].conj());
    let m21 = -(z[2] * w[0].conj() + z[3] * w[1].conj());
    let m22 = one - (z[2] * w[2].conj() + z[3] * w[3].conj());
    m11 * m22 - m12 * m21
}

/// Series of det(I − ZW*) recentered at a matrix-ball point (4 entry variables).
fn det_factor_series(w0: &[C64], order: u32) -> HermitianSeries {
    let m = 4;
    let one = HermitianSeries::constant(m, order, w0.to_vec(), C64::new(1.0, 0.0));
    let zw = |i: usize, j: usize| zw_term(w0, order, i, j);
    // Same index bookkeeping as det_i_minus_zw.
    let m11 = one.sub(&zw(0, 0).add(&zw(1, 1)).unwrap()).unwrap();
    let m12 = zw(0, 2).add(&zw(1, 3)).unwrap().scaled(C64::new(-1.0, 0.0));
    let m21 = zw(2, 0).add(&zw(3, 1)).unwrap().scaled(C64::new(-1.0, 0.0));
    let m22 = one.sub(&zw(2, 2).add(&zw(3, 3)).unwrap()).unwrap();
    m11.mul(&m22)
        .unwrap()
        .sub(&m12.mul(&m21).unwrap())
        .unwrap()
}

/// Series of the domain's contraction factor recentered at w0.
pub fn contraction_factor_series(
    domain: &Domain,
    w0: &[C64],
    order: u32,
) -> Result<HermitianSeries> {
    let m = domain.dim();
    let one = HermitianSeries::constant(m, order, w0.to_vec(), C64::new(1.0, 0.0));
    Ok(match domain {
        Domain::Disc => one.sub(&zw_term(w0, order, 0, 0))?,
        Domain::Ball(mm) => {
            let mut f = one;
            for i in 0..*mm {
                f = f.sub(&zw_term(w0, order, i, i))?;
            }
            f
        }
        Domain::Polydisc(mm) => {
            let mut acc = one.clone();
            for i in 0..*mm {
                acc = acc.mul(&one.sub(&zw_term(w0, order, i, i))?)?;
            }
            acc
        }
        Domain::MatrixBall2 => det_factor_series(w0, order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn ci(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// The §1 counterexample kernel 8 + 16 zw̄ + 15 z²w̄²/(1 − zw̄).
    fn counterexample() -> KernelSpec {
        KernelSpec::diagonal(vec![8.0, 16.0], 15.0)
    }

    #[test]
    fn eval_closed_forms() {
        let szego = KernelSpec::SzegoDisc;
        let v = szego.eval(&[c(0.5)], &[c(0.5)]).unwrap();
        assert!((v - c(4.0 / 3.0)).norm() < 1e-14);

        let k = counterexample();
        assert!((k.eval(&[c(0.0)], &[c(0.0)]).unwrap() - c(8.0)).norm() < 1e-14);

        let det = KernelSpec::DetBall2;
        let z0 = vec![c(0.0); 4];
        assert!((det.eval(&z0, &z0).unwrap() - c(1.0)).norm() < 1e-14);

        assert!(szego.eval(&[c(1.5)], &[c(0.0)]).is_err());
    }

    #[test]
    fn eval_hermitian_symmetry() {
        let kernels: Vec<KernelSpec> = vec![
            KernelSpec::SzegoDisc,
            KernelSpec::SzegoPolydisc(2),
            KernelSpec::DruryArveson(3),
            counterexample(),
            KernelSpec::DetBall2,
        ];
        for k in kernels {
            let d = k.domain().unwrap();
            let pts = crate::points::sample(&d, 11, 40, 0.9);
            for pair in pts.chunks(2) {
                if pair.len() < 2 {
                    continue;
                }
                let a = k.eval(&pair[0], &pair[1]).unwrap();
                let b = k.eval(&pair[1], &pair[0]).unwrap();
                assert!((a - b.conj()).norm() < 1e-12 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn expand_szego_at_zero() {
        let s = KernelSpec::SzegoDisc.taylor_expand(&[c(0.0)], 6).unwrap();
        for n in 0..=6u32 {
            assert!((s.coeff1(n, n) - c(1.0)).norm() < 1e-13);
        }
        assert!(s.coeff1(1, 0).norm() < 1e-14);
    }

    #[test]
    fn expand_counterexample_coeffs() {
        let s = counterexample().taylor_expand(&[c(0.0)], 6).unwrap();
        let expect = [8.0, 16.0, 15.0, 15.0, 15.0, 15.0, 15.0];
        for (n, &e) in expect.iter().enumerate() {
            assert!((s.coeff1(n as u32, n as u32) - c(e)).norm() < 1e-12);
        }
    }

    #[test]
    fn expand_detball_quadratic() {
        // det(I − ZW*)^{-1} = 1 + tr(ZW*) + ..., so each entry variable carries
        // coefficient 1 at z_a w̄_a.
        let z0 = vec![c(0.0); 4];
        let s = KernelSpec::DetBall2.taylor_expand(&z0, 2).unwrap();
        for a in 0..4 {
            let ia = MultiIndex::unit(4, a);
            assert!((s.coeff(&ia, &ia) - c(1.0)).norm() < 1e-13);
        }
        let zero = MultiIndex::zero(4);
        assert!((s.coeff(&zero, &zero) - c(1.0)).norm() < 1e-13);
    }

    #[test]
    fn expand_matches_eval_on_grid() {
        let kernels: Vec<KernelSpec> = vec![
            KernelSpec::SzegoDisc,
            counterexample(),
            KernelSpec::product(KernelSpec::SzegoDisc, counterexample()),
            KernelSpec::SzegoDisc.pow(1.7),
        ];
        for k in kernels {
            let w0 = [ci(0.1, 0.05)];
            let s = k.taylor_expand(&w0, 14).unwrap();
            for p in crate::points::disc_points(3, 10, 0.35) {
                let w = [w0[0] + p[0]];
                let direct = k.eval(&w, &w).unwrap().re;
                let via_series = s.diagonal_eval(&w, None).unwrap();
                assert!(
                    (direct - via_series).abs() < 1e-8 * (1.0 + direct.abs()),
                    "direct {direct} vs series {via_series}"
                );
            }
        }
    }

    #[test]
    fn normalize_examples() {
        // Szegő at 0 is already normalized.
        let s = KernelSpec::SzegoDisc.normalize_at(&[c(0.0)], 6).unwrap();
        for n in 0..=6u32 {
            assert!((s.coeff1(n, n) - c(1.0)).norm() < 1e-12);
        }

        // Counterexample at 0: φ ≡ 8, so normalization divides by 8.
        let s = counterexample().normalize_at(&[c(0.0)], 6).unwrap();
        assert!((s.coeff1(0, 0) - c(1.0)).norm() < 1e-14);
        assert!((s.coeff1(1, 1) - c(2.0)).norm() < 1e-12);
        assert!((s.coeff1(2, 2) - c(15.0 / 8.0)).norm() < 1e-12);

        // Szegő normalized at 0.5: one-sided coefficients vanish exactly.
        let s = KernelSpec::SzegoDisc.normalize_at(&[c(0.5)], 8).unwrap();
        assert!((s.coeff1(0, 0) - c(1.0)).norm() < 1e-14);
        assert_eq!(s.coeff1(1, 0), c(0.0));
        assert_eq!(s.coeff1(0, 1), c(0.0));
        assert_eq!(s.coeff1(3, 0), c(0.0));
    }

    #[test]
    fn derivatives_closed_forms() {
        let d = KernelSpec::SzegoDisc.derivatives(&[c(0.0)]).unwrap();
        assert!((d.value - c(1.0)).norm() < 1e-14);
        assert!(d.grad[0].norm() < 1e-14);
        assert!((d.hess[0][0] - c(1.0)).norm() < 1e-14);

        let d = counterexample().derivatives(&[c(0.0)]).unwrap();
        assert!((d.value - c(8.0)).norm() < 1e-13);
        assert!(d.grad[0].norm() < 1e-13);
        assert!((d.hess[0][0] - c(16.0)).norm() < 1e-12);

        let d = KernelSpec::DruryArveson(2)
            .derivatives(&[c(0.0), c(0.0)])
            .unwrap();
        assert!((d.value - c(1.0)).norm() < 1e-14);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((d.hess[i][j] - c(expect)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        // Central differences on K(w,w) for the mixed second derivative.
        let k = KernelSpec::product(KernelSpec::SzegoDisc.pow(1.3), counterexample());
        let w = ci(0.2, 0.1);
        let d = k.derivatives(&[w]).unwrap();
        let h = 1e-4;
        let f = |z: C64, ww: C64| k.eval(&[z], &[ww]).unwrap();
        // ∂_z K(z,w)|_{z=w} via complex-step-free central difference in re/im.
        let gz = (f(w + c(h), w) - f(w - c(h), w)) / (2.0 * h);
        assert!((gz - d.grad[0]).norm() < 1e-6 * (1.0 + d.grad[0].norm()));
        // Mixed derivative: difference in z then in w̄.
        let hz = (f(w + c(h), w + c(h)) - f(w + c(h), w - c(h)) - f(w - c(h), w + c(h))
            + f(w - c(h), w - c(h)))
            / (4.0 * h * h);
        assert!((hz - d.hess[0][0]).norm() < 1e-5 * (1.0 + d.hess[0][0].norm()));
    }

    #[test]
    fn product_domain_mismatch() {
        let bad = KernelSpec::product(KernelSpec::SzegoDisc, KernelSpec::DruryArveson(2));
        assert!(bad.domain().is_err());
    }

    #[test]
    fn contract_of_szego_is_one() {
        let s = KernelSpec::SzegoDisc
            .contract()
            .taylor_expand(&[c(0.0)], 8)
            .unwrap();
        assert!((s.coeff1(0, 0) - c(1.0)).norm() < 1e-14);
        for n in 1..=8u32 {
            assert!(s.coeff1(n, n).norm() < 1e-13);
        }

        let s = KernelSpec::SzegoPolydisc(2)
            .contract()
            .taylor_expand(&[c(0.0), c(0.0)], 6)
            .unwrap();
        let zero = MultiIndex::zero(2);
        assert!((s.coeff(&zero, &zero) - c(1.0)).norm() < 1e-14);
        let e0 = MultiIndex::unit(2, 0);
        assert!(s.coeff(&e0, &e0).norm() < 1e-13);
    }

    #[test]
    fn diagonal_coefficient_extraction() {
        let k = counterexample().contract();
        let coeffs = k.diagonal_coefficients(6).unwrap().unwrap();
        let expect = [8.0, 8.0, -1.0, 0.0, 0.0, 0.0, 0.0];
        for (a, e) in coeffs.iter().zip(expect) {
            assert!((a - e).abs() < 1e-12);
        }
        assert!(KernelSpec::DruryArveson(2)
            .diagonal_coefficients(4)
            .unwrap()
            .is_none());
    }
}
