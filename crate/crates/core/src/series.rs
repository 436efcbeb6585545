//! Truncated power series whose coefficients are polynomials in `t`.
//!
//! Division is only ever by a series with constant term `±1`; the one other
//! operation allowed to divide is the coefficientwise exact quotient by `t - 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(IntPolynomial),
    #[error("coefficient {0} is not divisible by t - 1")]
    NotDivisibleByTMinusOne(String),
    #[error("fixed-point iteration did not stabilise within {0} steps")]
    NoFixedPoint(usize),
    #[error("truncation mismatch between operands")]
    TruncationMismatch,
}

fn unit_inverse(c: &IntPolynomial) -> Result<BigInt, SeriesError> {
    if c.degree() == Some(0) {
        let v = c.coeff(0);
        if v.is_one() || v == -BigInt::one() {
            return Ok(v);
        }
    }
    Err(SeriesError::NonUnitConstant(c.clone()))
}

/// Series in one variable `x`, kept modulo `x^{order+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySeries1 {
    order: usize,
    coeffs: Vec<IntPolynomial>,
}

impl PolySeries1 {
    pub fn zero(order: usize) -> Self {
        PolySeries1 { order, coeffs: vec![IntPolynomial::zero(); order + 1] }
    }

    pub fn constant(order: usize, c: IntPolynomial) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, IntPolynomial::one())
    }

    /// `c x^k`
    pub fn monomial(order: usize, c: IntPolynomial, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(order, IntPolynomial::one(), 1)
    }

    pub fn from_coeffs(order: usize, mut coeffs: Vec<IntPolynomial>) -> Self {
        coeffs.resize(order + 1, IntPolynomial::zero());
        PolySeries1 { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^k` (zero beyond the truncation order).
    pub fn coeff(&self, k: usize) -> IntPolynomial {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[IntPolynomial] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Self, f: impl Fn(&IntPolynomial, &IntPolynomial) -> IntPolynomial) -> Self {
        let order = self.order.min(o.order);
        PolySeries1 {
            order,
            coeffs: (0..=order).map(|k| f(&self.coeffs[k], &o.coeffs[k])).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !o.coeffs[j].is_zero() {
                    out.coeffs[i + j] += &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        out
    }

    pub fn scale(&self, p: &IntPolynomial) -> Self {
        PolySeries1 { order: self.order, coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// Inverse of a series with constant term `±1`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let u = unit_inverse(&self.coeffs[0])?;
        let mut inv = Self::zero(self.order);
        inv.coeffs[0] = IntPolynomial::constant(u.clone());
        for m in 1..=self.order {
            let mut acc = IntPolynomial::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += &(&self.coeffs[j] * &inv.coeffs[m - j]);
                }
            }
            inv.coeffs[m] = acc.scale(&-&u);
        }
        Ok(inv)
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.inverse()?))
    }

    pub fn div_t_minus_one(&self) -> Result<Self, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_t_minus_one().ok_or_else(|| SeriesError::NotDivisibleByTMinusOne(c.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(PolySeries1 { order: self.order, coeffs })
    }

    /// Solve `s = step(s)` by iteration from zero. Each step must fix at least
    /// one further coefficient, which holds when `step` is contracting in `x`.
    pub fn fixed_point(order: usize, step: impl Fn(&Self) -> Result<Self, SeriesError>) -> Result<Self, SeriesError> {
        let mut s = Self::zero(order);
        for _ in 0..=order + 1 {
            let next = step(&s)?;
            if next == s {
                return Ok(s);
            }
            s = next;
        }
        Err(SeriesError::NoFixedPoint(order + 2))
    }
}

/// Which monomials of a multivariate series are kept. Both bounds describe
/// order ideals, so arithmetic modulo the dropped monomials is well defined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub per_var: Vec<u32>,
    pub total: Option<u32>,
}

impl Truncation {
    pub fn boxed(per_var: Vec<u32>) -> Self {
        Truncation { per_var, total: None }
    }

    /// Total degree at most `total` in `k` variables.
    pub fn total(k: usize, total: u32) -> Self {
        Truncation { per_var: vec![total; k], total: Some(total) }
    }

    pub fn nvars(&self) -> usize {
        self.per_var.len()
    }

    pub fn keeps(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.per_var).all(|(a, b)| a <= b)
            && self.total.is_none_or(|t| e.iter().sum::<u32>() <= t)
    }

    /// All kept exponent vectors, ordered by total degree.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        self.collect(0, &mut cur, &mut out);
        out.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
        out
    }

    fn collect(&self, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=self.per_var[i] {
            cur[i] = a;
            if !self.keeps(cur) {
                break;
            }
            self.collect(i + 1, cur, out);
        }
        cur[i] = 0;
    }
}

/// Series in `k` variables `x_1..x_k`, sparse, truncated by a [`Truncation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySeriesK {
    trunc: Truncation,
    terms: BTreeMap<Vec<u32>, IntPolynomial>,
}

impl PolySeriesK {
    pub fn zero(trunc: Truncation) -> Self {
        PolySeriesK { trunc, terms: BTreeMap::new() }
    }

    pub fn constant(trunc: Truncation, c: IntPolynomial) -> Self {
        let mut s = Self::zero(trunc);
        let z = vec![0; s.trunc.nvars()];
        s.insert(z, c);
        s
    }

    pub fn one(trunc: Truncation) -> Self {
        Self::constant(trunc, IntPolynomial::one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(trunc: Truncation, i: usize) -> Self {
        let mut s = Self::zero(trunc);
        let mut e = vec![0; s.trunc.nvars()];
        e[i] = 1;
        s.insert(e, IntPolynomial::one());
        s
    }

    /// A univariate series evaluated at `x_i`.
    pub fn from_univariate(trunc: Truncation, s: &PolySeries1, i: usize) -> Self {
        let mut out = Self::zero(trunc);
        for (k, c) in s.coeffs().iter().enumerate() {
            let mut e = vec![0; out.trunc.nvars()];
            e[i] = k as u32;
            out.insert(e, c.clone());
        }
        out
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    fn insert(&mut self, e: Vec<u32>, c: IntPolynomial) {
        if !c.is_zero() && self.trunc.keeps(&e) {
            self.terms.insert(e, c);
        }
    }

    pub fn coeff(&self, e: &[u32]) -> IntPolynomial {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &IntPolynomial)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let v = out.coeff(e) + c;
            out.terms.remove(e);
            out.insert(e.clone(), v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        PolySeriesK {
            trunc: self.trunc.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Vec<u32>, IntPolynomial> = BTreeMap::new();
        let mut e = vec![0u32; self.trunc.nvars()];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                for i in 0..e.len() {
                    e[i] = ea[i] + eb[i];
                }
                if self.trunc.keeps(&e) {
                    *acc.entry(e.clone()).or_default() += &(ca * cb);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        PolySeriesK { trunc: self.trunc.clone(), terms: acc }
    }

    pub fn scale(&self, p: &IntPolynomial) -> Self {
        let mut out = Self::zero(self.trunc.clone());
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * p);
        }
        out
    }

    /// Inverse of a series with constant term `±1`, solved in graded order.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let zero = vec![0; self.trunc.nvars()];
        let u = unit_inverse(&self.coeff(&zero))?;
        let neg_u = IntPolynomial::constant(-&u);
        let rest: Vec<(&Vec<u32>, &IntPolynomial)> = self.terms.iter().filter(|(e, _)| **e != zero).collect();
        let mut inv: BTreeMap<Vec<u32>, IntPolynomial> = BTreeMap::new();
        inv.insert(zero.clone(), IntPolynomial::constant(u));
        let mut diff = vec![0u32; zero.len()];
        for m in self.trunc.monomials().into_iter().skip(1) {
            let mut acc = IntPolynomial::zero();
            for (j, cj) in &rest {
                if j.iter().zip(&m).any(|(a, b)| a > b) {
                    continue;
                }
                for i in 0..diff.len() {
                    diff[i] = m[i] - j[i];
                }
                if let Some(v) = inv.get(&diff) {
                    acc += &(*cj * v);
                }
            }
            if !acc.is_zero() {
                inv.insert(m, &acc * &neg_u);
            }
        }
        Ok(PolySeriesK { trunc: self.trunc.clone(), terms: inv })
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.inverse()?))
    }

    pub fn div_t_minus_one(&self) -> Result<Self, SeriesError> {
        let mut out = Self::zero(self.trunc.clone());
        for (e, c) in &self.terms {
            let q = c.div_t_minus_one().ok_or_else(|| SeriesError::NotDivisibleByTMinusOne(c.to_string()))?;
            out.insert(e.clone(), q);
        }
        Ok(out)
    }

    /// `Π_i s_i`
    pub fn product(trunc: Truncation, factors: impl IntoIterator<Item = Self>) -> Self {
        factors.into_iter().fold(Self::one(trunc), |acc, f| acc.mul(&f))
    }
}

/// Simon Newcomb series `(t-1) / (t - Π_i (1 + (t-1) y_i))`, whose coefficient
/// of `y^c` is the multiset Eulerian polynomial `A_c`.
///
/// Both numerator and denominator vanish at `t = 1` coefficientwise; dividing
/// each by `t - 1` leaves a denominator with constant term `1`.
pub fn simon_newcomb_series(k: usize, trunc: Truncation) -> Result<PolySeriesK, SeriesError> {
    let tm1 = IntPolynomial::from_i64s(&[-1, 1]);
    let factors = (0..k).map(|i| {
        PolySeriesK::one(trunc.clone()).add(&PolySeriesK::var(trunc.clone(), i).scale(&tm1))
    });
    let prod = PolySeriesK::product(trunc.clone(), factors);
    let den = PolySeriesK::constant(trunc.clone(), IntPolynomial::t()).sub(&prod);
    let den = den.div_t_minus_one()?;
    PolySeriesK::one(trunc).div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly;

    #[test]
    fn univariate_inverse_of_one_minus_x() {
        let s = PolySeries1::one(5).sub(&PolySeries1::x(5));
        let inv = s.inverse().unwrap();
        for k in 0..=5 {
            assert_eq!(inv.coeff(k), poly![1]);
        }
        assert_eq!(s.mul(&inv), PolySeries1::one(5));
    }

    #[test]
    fn non_unit_constant_is_rejected() {
        let s = PolySeries1::constant(3, poly![2]);
        assert!(matches!(s.inverse(), Err(SeriesError::NonUnitConstant(_))));
        let s = PolySeries1::constant(3, poly![-1, 1]);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn catalan_fixed_point() {
        // C = 1 + x C^2
        let c = PolySeries1::fixed_point(6, |c| Ok(PolySeries1::one(6).add(&PolySeries1::x(6).mul(&c.mul(c))))).unwrap();
        let cat: Vec<i64> = (0..=6).map(|k| c.coeff(k).to_i64s().unwrap()[0]).collect();
        assert_eq!(cat, vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn multivariate_inverse_round_trip() {
        let tr = Truncation::total(2, 4);
        let s = PolySeriesK::one(tr.clone())
            .sub(&PolySeriesK::var(tr.clone(), 0).scale(&poly![0, 1]))
            .sub(&PolySeriesK::var(tr.clone(), 1).mul(&PolySeriesK::var(tr.clone(), 0)));
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), PolySeriesK::one(tr));
    }

    #[test]
    fn truncation_monomials_are_graded() {
        let tr = Truncation { per_var: vec![2, 1], total: Some(2) };
        let m = tr.monomials();
        assert_eq!(m, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn simon_newcomb_small_coefficients() {
        let s = simon_newcomb_series(2, Truncation::total(2, 4)).unwrap();
        assert_eq!(s.coeff(&[0, 0]), poly![1]);
        assert_eq!(s.coeff(&[1, 1]), poly![1, 1]);
        assert_eq!(s.coeff(&[2, 1]), poly![1, 2]);
        assert_eq!(s.coeff(&[2, 2]), poly![1, 4, 1]);
    }
}
