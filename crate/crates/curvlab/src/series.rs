//! Truncated power series in m holomorphic variables z and m anti-holomorphic
//! variables w̄, with double-precision complex coefficients. This is the carrier
//! for kernels, log-kernels and curvature data expanded near a point.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance for the Hermitian-symmetry check on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Default guard radius for diagonal evaluation of a truncated series.
pub const DIAG_GUARD_RADIUS: f64 = 0.95;

/// Exponent vector of a multivariate monomial.
///
/// Ordered colexicographically: exponents are compared from the last position
/// down to the first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(m: usize) -> Self {
        MultiIndex(vec![0; m])
    }

    /// The standard unit index ε_i (zero-based i).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Total degree |I|.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn incremented(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }

    pub fn decremented(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(MultiIndex(e))
    }

    /// Componentwise I ≤ J.
    pub fn leq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Λ(I): positions of the non-zero exponents (zero-based).
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// c(I): cardinality of the support.
    pub fn support_cardinality(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    /// All indices α with α ≤ δ componentwise, in colexicographic order.
    pub fn indices_up_to(delta: &MultiIndex) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(delta.len())];
        for i in 0..delta.len() {
            let mut next = Vec::with_capacity(out.len() * (delta.get(i) as usize + 1));
            for e in 0..=delta.get(i) {
                for base in &out {
                    let mut v = base.0.clone();
                    v[i] = e;
                    next.push(MultiIndex(v));
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        // Colexicographic: compare from the last coordinate down.
        match self.0.len().cmp(&other.0.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Truncated series Σ a_{IJ} (z−c)^I (w̄−c̄)^J with |I| ≤ order and |J| ≤ order.
///
/// Absent keys are zero. The name reflects the intended use: every series fed
/// to a positivity or curvature routine is Hermitian (a_{IJ} = conj(a_{JI})),
/// which [`HermitianSeries::hermitianized`] validates and enforces. One-sided
/// intermediates (e.g. the holomorphic completion ψ) use the same carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSeries {
    m: usize,
    order: u32,
    center: Vec<C64>,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), C64>,
}

impl HermitianSeries {
    pub fn new(m: usize, order: u32, center: Vec<C64>) -> Self {
        assert_eq!(center.len(), m, "center must have m coordinates");
        HermitianSeries {
            m,
            order,
            center,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, order: u32, center: Vec<C64>, value: C64) -> Self {
        let mut s = Self::new(m, order, center);
        if value != C64::new(0.0, 0.0) {
            s.coeffs
                .insert((MultiIndex::zero(m), MultiIndex::zero(m)), value);
        }
        s
    }

    pub fn from_coeffs<It>(m: usize, order: u32, center: Vec<C64>, coeffs: It) -> Self
    where
        It: IntoIterator<Item = ((MultiIndex, MultiIndex), C64)>,
    {
        let mut s = Self::new(m, order, center);
        for ((i, j), c) in coeffs {
            assert_eq!(i.len(), m);
            assert_eq!(j.len(), m);
            if i.degree() <= order && j.degree() <= order && c != C64::new(0.0, 0.0) {
                *s.coeffs.entry((i, j)).or_insert(C64::new(0.0, 0.0)) += c;
            }
        }
        s
    }

    /// One-variable diagonal series Σ a_n z^n w̄^n centered at 0.
    pub fn one_var_diagonal(coeffs: &[f64], order: u32) -> Self {
        let mut s = Self::new(1, order, vec![C64::new(0.0, 0.0)]);
        for (n, &a) in coeffs.iter().enumerate().take(order as usize + 1) {
            if a != 0.0 {
                let idx = MultiIndex::new(vec![n as u32]);
                s.coeffs.insert((idx.clone(), idx), C64::new(a, 0.0));
            }
        }
        s
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn center(&self) -> &[C64] {
        &self.center
    }

    pub fn coeff(&self, i: &MultiIndex, j: &MultiIndex) -> C64 {
        self.coeffs
            .get(&(i.clone(), j.clone()))
            .copied()
            .unwrap_or(C64::new(0.0, 0.0))
    }

    /// Coefficient of z^i w̄^j for one-variable series.
    pub fn coeff1(&self, i: u32, j: u32) -> C64 {
        debug_assert_eq!(self.m, 1);
        self.coeff(&MultiIndex::new(vec![i]), &MultiIndex::new(vec![j]))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &C64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.norm() == 0.0)
    }

    pub fn insert(&mut self, i: MultiIndex, j: MultiIndex, c: C64) {
        assert_eq!(i.len(), self.m);
        assert_eq!(j.len(), self.m);
        if i.degree() > self.order || j.degree() > self.order {
            return;
        }
        if c == C64::new(0.0, 0.0) {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::SeriesMismatch(format!(
                "variable counts differ: {} vs {}",
                self.m, other.m
            )));
        }
        let center_dev: f64 = self
            .center
            .iter()
            .zip(&other.center)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if center_dev > 1e-14 {
            return Err(Error::SeriesMismatch(format!(
                "centers differ by {center_dev:.3e}"
            )));
        }
        Ok(())
    }

    pub fn truncated(&self, order: u32) -> Self {
        let mut out = Self::new(self.m, order, self.center.clone());
        for ((i, j), &c) in &self.coeffs {
            if i.degree() <= order && j.degree() <= order {
                out.coeffs.insert((i.clone(), j.clone()), c);
            }
        }
        out
    }

    pub fn scaled(&self, factor: C64) -> Self {
        let mut out = self.clone();
        if factor == C64::new(0.0, 0.0) {
            out.coeffs.clear();
            return out;
        }
        for c in out.coeffs.values_mut() {
            *c *= factor;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for ((i, j), &c) in &other.coeffs {
            if i.degree() > order || j.degree() > order {
                continue;
            }
            let e = out
                .coeffs
                .entry((i.clone(), j.clone()))
                .or_insert(C64::new(0.0, 0.0));
            *e += c;
            if *e == C64::new(0.0, 0.0) {
                out.coeffs.remove(&(i.clone(), j.clone()));
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(C64::new(-1.0, 0.0)))
    }

    /// Cauchy product truncated to total degree ≤ order in each group.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::new(self.m, order, self.center.clone());
        let rhs: Vec<(&(MultiIndex, MultiIndex), u32, u32, C64)> = other
            .coeffs
            .iter()
            .map(|(k, &c)| (k, k.0.degree(), k.1.degree(), c))
            .collect();
        for ((i1, j1), &c1) in &self.coeffs {
            let (d1i, d1j) = (i1.degree(), j1.degree());
            if d1i > order || d1j > order {
                continue;
            }
            for &((i2, j2), d2i, d2j, c2) in &rhs {
                if d1i + d2i > order || d1j + d2j > order {
                    continue;
                }
                let key = (i1.add(i2), j1.add(j2));
                *out.coeffs.entry(key).or_insert(C64::new(0.0, 0.0)) += c1 * c2;
            }
        }
        out.coeffs.retain(|_, c| *c != C64::new(0.0, 0.0));
        Ok(out)
    }

    /// Multiplicative inverse: t with s·t = 1 up to the order cap.
    pub fn invert(&self) -> Result<Self> {
        let zero = MultiIndex::zero(self.m);
        let a00 = self.coeff(&zero, &zero);
        if a00.norm() <= 1e-12 {
            return Err(Error::VanishingConstant(a00.norm()));
        }
        // s = a00 (1 + x), x without constant term; 1/s = (1/a00) Σ (−x)^k.
        let mut x = self.scaled(1.0 / a00);
        x.coeffs.remove(&(zero.clone(), zero.clone()));
        let mut acc = Self::constant(self.m, self.order, self.center.clone(), C64::new(1.0, 0.0));
        let mut power = acc.clone();
        let neg_x = x.scaled(C64::new(-1.0, 0.0));
        for _ in 1..=2 * self.order {
            power = power.mul(&neg_x)?;
            if power.coeffs.is_empty() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scaled(1.0 / a00))
    }

    /// Series logarithm; requires a real positive constant term.
    pub fn log(&self) -> Result<Self> {
        let zero = MultiIndex::zero(self.m);
        let a00 = self.coeff(&zero, &zero);
        if a00.re <= 0.0 || a00.im.abs() > 1e-12 * (1.0 + a00.re.abs()) {
            return Err(Error::NonPositiveConstant(a00));
        }
        let mut x = self.scaled(1.0 / a00);
        x.coeffs.remove(&(zero.clone(), zero.clone()));
        // log(a00) + Σ_{k≥1} (−1)^{k+1} x^k / k
        let mut acc = Self::constant(
            self.m,
            self.order,
            self.center.clone(),
            C64::new(a00.re.ln(), 0.0),
        );
        let mut power = Self::constant(self.m, self.order, self.center.clone(), C64::new(1.0, 0.0));
        for k in 1..=2 * self.order {
            power = power.mul(&x)?;
            if power.coeffs.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc = acc.add(&power.scaled(C64::new(sign / k as f64, 0.0)))?;
        }
        Ok(acc)
    }

    /// Series exponential Σ s^k / k!.
    pub fn exp(&self) -> Self {
        let zero = MultiIndex::zero(self.m);
        let a00 = self.coeff(&zero, &zero);
        let mut x = self.clone();
        x.coeffs.remove(&(zero.clone(), zero.clone()));
        let mut acc = Self::constant(self.m, self.order, self.center.clone(), C64::new(1.0, 0.0));
        let mut power = acc.clone();
        let mut inv_fact = 1.0;
        for k in 1..=2 * self.order {
            power = power.mul(&x).expect("same center by construction");
            if power.coeffs.is_empty() {
                break;
            }
            inv_fact /= k as f64;
            acc = acc
                .add(&power.scaled(C64::new(inv_fact, 0.0)))
                .expect("same center by construction");
        }
        acc.scaled(a00.exp())
    }

    /// Real power s^t = exp(t·log s).
    pub fn real_power(&self, t: f64) -> Result<Self> {
        Ok(self.log()?.scaled(C64::new(t, 0.0)).exp())
    }

    /// ∂_{z_i} ∂_{w̄_j} applied to the series (zero-based i, j). The truncation
    /// order drops by one.
    pub fn mixed_derivative(&self, i: usize, j: usize) -> Self {
        assert!(i < self.m && j < self.m);
        let order = self.order.saturating_sub(1);
        let mut out = Self::new(self.m, order, self.center.clone());
        for ((ii, jj), &c) in &self.coeffs {
            let (Some(ti), Some(tj)) = (ii.decremented(i), jj.decremented(j)) else {
                continue;
            };
            let factor = (ii.get(i) as f64) * (jj.get(j) as f64);
            out.coeffs.insert((ti, tj), c * factor);
        }
        out
    }

    /// Evaluate at a pair of points: Σ a_{IJ} (z−c)^I conj(w−c)^J.
    pub fn eval_pair(&self, z: &[C64], w: &[C64]) -> C64 {
        assert_eq!(z.len(), self.m);
        assert_eq!(w.len(), self.m);
        let dz: Vec<C64> = z.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        let dwbar: Vec<C64> = w
            .iter()
            .zip(&self.center)
            .map(|(a, c)| (a - c).conj())
            .collect();
        // Power tables per variable up to the order cap.
        let pow_table = |base: &[C64]| -> Vec<Vec<C64>> {
            base.iter()
                .map(|&b| {
                    let mut v = Vec::with_capacity(self.order as usize + 1);
                    let mut p = C64::new(1.0, 0.0);
                    for _ in 0..=self.order {
                        v.push(p);
                        p *= b;
                    }
                    v
                })
                .collect()
        };
        let zp = pow_table(&dz);
        let wp = pow_table(&dwbar);
        let mut sum = C64::new(0.0, 0.0);
        for ((i, j), &c) in &self.coeffs {
            let mut term = c;
            for k in 0..self.m {
                term *= zp[k][i.get(k) as usize];
            }
            for k in 0..self.m {
                term *= wp[k][j.get(k) as usize];
            }
            sum += term;
        }
        sum
    }

    /// Evaluate on the diagonal s(w, w), guarded against leaving the region
    /// where the truncation is trusted.
    pub fn diagonal_eval(&self, w: &[C64], guard_radius: Option<f64>) -> Result<f64> {
        let guard = guard_radius.unwrap_or(DIAG_GUARD_RADIUS);
        let dist: f64 = w
            .iter()
            .zip(&self.center)
            .map(|(a, c)| (a - c).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if dist > guard {
            return Err(Error::OutsideDomain(format!(
                "|w - center| = {dist:.4} exceeds guard radius {guard}"
            )));
        }
        Ok(self.eval_pair(w, w).re)
    }

    /// Largest |a_{IJ} − conj(a_{JI})| over all stored keys.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for ((i, j), &c) in &self.coeffs {
            let d = (c - self.coeff(j, i).conj()).norm();
            dev = dev.max(d);
        }
        dev
    }

    /// Validate Hermitian symmetry; within tolerance the coefficients are
    /// symmetrized by averaging, beyond it the series is rejected.
    pub fn hermitianized(&self) -> Result<Self> {
        let scale = self
            .coeffs
            .values()
            .map(|c| c.norm())
            .fold(1.0_f64, f64::max);
        let dev = self.hermitian_deviation();
        if dev > HERMITIAN_TOL * scale.max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
        let mut out = Self::new(self.m, self.order, self.center.clone());
        let keys: Vec<(MultiIndex, MultiIndex)> = self.coeffs.keys().cloned().collect();
        for (i, j) in keys {
            let avg = 0.5 * (self.coeff(&i, &j) + self.coeff(&j, &i).conj());
            if avg != C64::new(0.0, 0.0) {
                out.coeffs.insert((i, j), avg);
            }
        }
        Ok(out)
    }

    /// Keep only the purely holomorphic coefficients a_{I0} (including a_{00}).
    pub fn holomorphic_part(&self) -> Self {
        let mut out = Self::new(self.m, self.order, self.center.clone());
        for ((i, j), &c) in &self.coeffs {
            if j.is_zero() {
                out.coeffs.insert((i.clone(), j.clone()), c);
            }
        }
        out
    }

    /// Keep only the mixed coefficients: drop every (I,0) and (0,J) key.
    pub fn mixed_part(&self) -> Self {
        let mut out = Self::new(self.m, self.order, self.center.clone());
        for ((i, j), &c) in &self.coeffs {
            if !i.is_zero() && !j.is_zero() {
                out.coeffs.insert((i.clone(), j.clone()), c);
            }
        }
        out
    }

    /// The conjugate-transposed series: a_{IJ} ↦ conj(a_{JI}).
    pub fn conj_swap(&self) -> Self {
        let mut out = Self::new(self.m, self.order, self.center.clone());
        for ((i, j), &c) in &self.coeffs {
            out.coeffs.insert((j.clone(), i.clone()), c.conj());
        }
        out
    }

    /// Max coefficient deviation |a − b| between two series on the union of keys.
    pub fn max_coeff_deviation(&self, other: &Self) -> f64 {
        let mut dev: f64 = 0.0;
        for ((i, j), &c) in &self.coeffs {
            dev = dev.max((c - other.coeff(i, j)).norm());
        }
        for ((i, j), &c) in &other.coeffs {
            dev = dev.max((c - self.coeff(i, j)).norm());
        }
        dev
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for HermitianSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            if !i.is_zero() {
                write!(f, " z^{i}")?;
            }
            if !j.is_zero() {
                write!(f, " wb^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    /// Independent oracle for one-variable diagonal series: coefficients a_n of
    /// Σ a_n z^n w̄^n as a plain vector, with convolution-based arithmetic.
    mod diag_oracle {
        pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
            let n = a.len();
            let mut out = vec![0.0; n];
            for i in 0..n {
                for j in 0..n - i {
                    out[i + j] += a[i] * b[j];
                }
            }
            out
        }

        pub fn exp(a: &[f64]) -> Vec<f64> {
            assert_eq!(a[0], 0.0, "oracle expects no constant term");
            let n = a.len();
            let mut acc = vec![0.0; n];
            acc[0] = 1.0;
            let mut power = acc.clone();
            let mut inv_fact = 1.0;
            for k in 1..n {
                power = mul(&power, a);
                inv_fact /= k as f64;
                for i in 0..n {
                    acc[i] += inv_fact * power[i];
                }
            }
            acc
        }
    }

    #[test]
    fn add_examples() {
        let s = HermitianSeries::one_var_diagonal(&[1.0, 1.0], 4);
        let t = HermitianSeries::one_var_diagonal(&[0.0, 1.0], 4);
        let sum = s.add(&t).unwrap();
        assert_eq!(sum.coeff1(0, 0), c(1.0));
        assert_eq!(sum.coeff1(1, 1), c(2.0));

        let zero = HermitianSeries::new(1, 4, vec![c(0.0)]);
        assert_eq!(s.add(&zero).unwrap(), s);

        let neg = t.scaled(c(-1.0));
        assert!(t.add(&neg).unwrap().is_zero());
    }

    #[test]
    fn add_rejects_mismatched_center() {
        let s = HermitianSeries::one_var_diagonal(&[1.0], 4);
        let t = HermitianSeries::constant(1, 4, vec![c(0.5)], c(1.0));
        assert!(s.add(&t).is_err());
    }

    #[test]
    fn mul_examples() {
        let s = HermitianSeries::one_var_diagonal(&[1.0, 1.0], 4);
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coeff1(0, 0), c(1.0));
        assert_eq!(sq.coeff1(1, 1), c(2.0));
        assert_eq!(sq.coeff1(2, 2), c(1.0));

        let one = HermitianSeries::constant(1, 4, vec![c(0.0)], c(1.0));
        assert_eq!(s.mul(&one).unwrap(), s);

        // (1 − zw̄)·Σ z^n w̄^n = 1 up to the cap.
        let n = 6;
        let factor = HermitianSeries::one_var_diagonal(&[1.0, -1.0], n);
        let geo = HermitianSeries::one_var_diagonal(&vec![1.0; n as usize + 1], n);
        let p = factor.mul(&geo).unwrap();
        assert!((p.coeff1(0, 0) - c(1.0)).norm() < 1e-14);
        for k in 1..=n {
            assert!(p.coeff1(k, k).norm() < 1e-14);
        }
    }

    #[test]
    fn invert_examples() {
        let s = HermitianSeries::one_var_diagonal(&[1.0, 1.0], 6);
        let inv = s.invert().unwrap();
        for k in 0..=6u32 {
            let expect = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((inv.coeff1(k, k) - c(expect)).norm() < 1e-13);
        }

        let one = HermitianSeries::constant(1, 6, vec![c(0.0)], c(1.0));
        assert_eq!(one.invert().unwrap(), one);

        let zero = HermitianSeries::new(1, 6, vec![c(0.0)]);
        assert!(matches!(zero.invert(), Err(Error::VanishingConstant(_))));
    }

    #[test]
    fn invert_times_self_is_one() {
        let s = HermitianSeries::one_var_diagonal(&[2.0, 0.3, -0.1, 0.7], 8);
        let p = s.invert().unwrap().mul(&s).unwrap();
        assert!((p.coeff1(0, 0) - c(1.0)).norm() < 1e-12);
        for k in 1..=8u32 {
            assert!(p.coeff1(k, k).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn log_matches_expansion() {
        // log(1 + a1 zw̄ + a2 z²w̄² + a3 z³w̄³)
        let (a1, a2, a3) = (0.7, 0.9, 1.3);
        let s = HermitianSeries::one_var_diagonal(&[1.0, a1, a2, a3], 3);
        let l = s.log().unwrap();
        assert!((l.coeff1(1, 1) - c(a1)).norm() < 1e-13);
        assert!((l.coeff1(2, 2) - c(a2 - a1 * a1 / 2.0)).norm() < 1e-13);
        assert!((l.coeff1(3, 3) - c(a3 - a1 * a2 + a1.powi(3) / 3.0)).norm() < 1e-13);

        let one = HermitianSeries::constant(1, 3, vec![c(0.0)], c(1.0));
        assert!(one.log().unwrap().is_zero());
    }

    #[test]
    fn log_example_values() {
        // (a1,a2,a3) = (1, 1/4, 1) gives log coefficients (1, −1/4, 13/12),
        // cross-checked with the convolution oracle by exponentiating back.
        let s = HermitianSeries::one_var_diagonal(&[1.0, 1.0, 0.25, 1.0], 3);
        let l = s.log().unwrap();
        assert!((l.coeff1(1, 1) - c(1.0)).norm() < 1e-13);
        assert!((l.coeff1(2, 2) - c(-0.25)).norm() < 1e-13);
        assert!((l.coeff1(3, 3) - c(13.0 / 12.0)).norm() < 1e-13);

        let log_coeffs = [
            0.0,
            l.coeff1(1, 1).re,
            l.coeff1(2, 2).re,
            l.coeff1(3, 3).re,
        ];
        let back = diag_oracle::exp(&log_coeffs);
        for (n, expect) in [1.0, 1.0, 0.25, 1.0].iter().enumerate() {
            assert!((back[n] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn log_rejects_bad_constant() {
        let s = HermitianSeries::one_var_diagonal(&[-1.0, 1.0], 3);
        assert!(matches!(s.log(), Err(Error::NonPositiveConstant(_))));
    }

    #[test]
    fn exp_examples() {
        let s = HermitianSeries::one_var_diagonal(&[0.0, 1.0], 6);
        let e = s.exp();
        let mut fact = 1.0;
        for n in 0..=6u32 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((e.coeff1(n, n) - c(1.0 / fact)).norm() < 1e-13);
        }

        let zero = HermitianSeries::new(1, 6, vec![c(0.0)]);
        let one = HermitianSeries::constant(1, 6, vec![c(0.0)], c(1.0));
        assert_eq!(zero.exp(), one);
    }

    #[test]
    fn exp_log_roundtrip() {
        let s = HermitianSeries::one_var_diagonal(&[1.0, 1.0, 0.25], 6);
        let back = s.log().unwrap().exp();
        assert!(s.max_coeff_deviation(&back) < 1e-10);
    }

    #[test]
    fn real_power_closed_form_coefficient() {
        // K = 1 + zw̄ + ¼ z²w̄² + z³w̄³ + ...; coefficient of z²w̄² in K^t is t(2t−1)/4.
        let coeffs = [1.0, 1.0, 0.25, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
        let s = HermitianSeries::one_var_diagonal(&coeffs, 8);
        for t in [0.25, 0.5, 0.75, 1.5] {
            let p = s.real_power(t).unwrap();
            let expect = t * (2.0 * t - 1.0) / 4.0;
            assert!(
                (p.coeff1(2, 2) - c(expect)).norm() < 1e-12,
                "t={t}: got {}, expected {expect}",
                p.coeff1(2, 2)
            );
        }
        // t = 1/4 gives −1/32.
        let p = s.real_power(0.25).unwrap();
        assert!((p.coeff1(2, 2) - c(-1.0 / 32.0)).norm() < 1e-13);

        // s^1 = s, s^2 = s·s.
        assert!(s.max_coeff_deviation(&s.real_power(1.0).unwrap()) < 1e-12);
        let sq = s.mul(&s).unwrap();
        assert!(sq.max_coeff_deviation(&s.real_power(2.0).unwrap()) < 1e-10);
    }

    #[test]
    fn mixed_derivative_examples() {
        // ∂∂̄ Σ a_n z^n w̄^n = Σ (n+1)² a_{n+1} z^n w̄^n
        let s = HermitianSeries::one_var_diagonal(&[3.0, 5.0, 7.0, 11.0], 3);
        let d = s.mixed_derivative(0, 0);
        assert_eq!(d.coeff1(0, 0), c(5.0));
        assert_eq!(d.coeff1(1, 1), c(4.0 * 7.0));
        assert_eq!(d.coeff1(2, 2), c(9.0 * 11.0));
        assert_eq!(d.order(), 2);

        // ∂_{z1}∂_{w̄2}(z1 w̄2) = 1 with m = 2.
        let mut t = HermitianSeries::new(2, 3, vec![c(0.0), c(0.0)]);
        t.insert(MultiIndex::unit(2, 0), MultiIndex::unit(2, 1), c(1.0));
        let dt = t.mixed_derivative(0, 1);
        assert_eq!(
            dt.coeff(&MultiIndex::zero(2), &MultiIndex::zero(2)),
            c(1.0)
        );
    }

    #[test]
    fn mixed_derivative_commutes() {
        let mut s = HermitianSeries::new(2, 4, vec![c(0.0), c(0.0)]);
        s.insert(
            MultiIndex::new(vec![2, 1]),
            MultiIndex::new(vec![1, 2]),
            C64::new(0.3, 0.4),
        );
        s.insert(
            MultiIndex::new(vec![1, 2]),
            MultiIndex::new(vec![2, 1]),
            C64::new(0.3, -0.4),
        );
        let a = s.mixed_derivative(0, 1).mixed_derivative(1, 0);
        let b = s.mixed_derivative(1, 0).mixed_derivative(0, 1);
        assert_eq!(a, b);
    }

    #[test]
    fn diagonal_eval_examples() {
        let s = HermitianSeries::one_var_diagonal(&[1.0, 1.0], 2);
        let v = s.diagonal_eval(&[c(0.5)], None).unwrap();
        assert!((v - 1.25).abs() < 1e-14);

        // Any Hermitian series at its center gives a00.
        let t = HermitianSeries::one_var_diagonal(&[2.5, 0.3, 0.7], 4);
        assert!((t.diagonal_eval(&[c(0.0)], None).unwrap() - 2.5).abs() < 1e-15);

        // Szegő truncation at order 12 vs closed form at w = 0.3.
        let szego = HermitianSeries::one_var_diagonal(&vec![1.0; 13], 12);
        let v = szego.diagonal_eval(&[c(0.3)], None).unwrap();
        assert!((v - 1.0 / (1.0 - 0.09)).abs() < 1e-8);

        // Outside the guard radius.
        assert!(s.diagonal_eval(&[c(0.99)], None).is_err());
    }

    #[test]
    fn colex_order() {
        // Reading from the last coordinate down; (1,0) < (0,1) colexicographically.
        let a = MultiIndex::new(vec![1, 0]);
        let b = MultiIndex::new(vec![0, 1]);
        assert!(a < b);
        let list = MultiIndex::indices_up_to(&MultiIndex::new(vec![1, 1]));
        let printed: Vec<String> = list.iter().map(|i| i.to_string()).collect();
        assert_eq!(printed, vec!["(0,0)", "(1,0)", "(0,1)", "(1,1)"]);
    }

    #[test]
    fn hermitianize_detects_violation() {
        let mut s = HermitianSeries::new(1, 2, vec![c(0.0)]);
        s.insert(
            MultiIndex::new(vec![1]),
            MultiIndex::new(vec![0]),
            c(1.0),
        );
        s.insert(
            MultiIndex::new(vec![0]),
            MultiIndex::new(vec![1]),
            c(0.5),
        );
        assert!(matches!(s.hermitianized(), Err(Error::NotHermitian(_))));

        let mut t = HermitianSeries::one_var_diagonal(&[1.0, 1.0], 2);
        t.insert(
            MultiIndex::new(vec![1]),
            MultiIndex::new(vec![0]),
            C64::new(0.25, 1e-15),
        );
        t.insert(
            MultiIndex::new(vec![0]),
            MultiIndex::new(vec![1]),
            c(0.25),
        );
        let h = t.hermitianized().unwrap();
        assert!(h.hermitian_deviation() < 1e-15);
    }
}
