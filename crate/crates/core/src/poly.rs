//! Exact integer polynomials in one variable `t`, the f/h/γ conversions and
//! the classical descent polynomials (Eulerian, Narayana, multiset Eulerian).

use std::collections::HashMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::caps::Caps;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial of degree {degree} exceeds dimension {d}")]
    DegreeExceedsDimension { degree: usize, d: usize },
    #[error("h-polynomial is not palindromic of degree {d} (h_{i} != h_{j})")]
    NonPalindromic { d: usize, i: usize, j: usize },
    #[error("multiset of size {size} exceeds cap {cap}")]
    MultisetTooLarge { size: usize, cap: usize },
    #[error("inexact division in {0}")]
    InexactDivision(&'static str),
}

/// Dense polynomial with `BigInt` coefficients; `coeffs[i]` is the coefficient
/// of `t^i`. Trailing zeros are always trimmed, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Build an [`IntPolynomial`] from small integer literals, lowest degree first.
#[macro_export]
macro_rules! poly {
    ($($c:expr),* $(,)?) => {
        $crate::poly::IntPolynomial::from_i64s(&[$($c as i64),*])
    };
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `t^k`
    pub fn t_pow(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    /// `(t + c)^k`
    pub fn linear_pow(c: i64, k: usize) -> Self {
        Self::from_i64s(&[c, 1]).pow(k)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), BigInt::zero());
        v
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `t^k * self`
    pub fn mul_t_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(t + c)`, by Horner's rule.
    pub fn shift_arg(&self, c: i64) -> Self {
        let lin = Self::from_i64s(&[c, 1]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    /// `t^d p(1/t)`; requires `deg p <= d`.
    pub fn reversed(&self, d: usize) -> Result<Self, PolyError> {
        if let Some(deg) = self.degree() {
            if deg > d {
                return Err(PolyError::DegreeExceedsDimension { degree: deg, d });
            }
        }
        let mut v = self.padded(d + 1);
        v.reverse();
        Ok(Self::new(v))
    }

    /// Whether `coeff(i) == coeff(d - i)` for all `i` and `deg <= d`.
    pub fn is_palindromic(&self, d: usize) -> bool {
        self.first_asymmetry(d).is_none()
    }

    fn first_asymmetry(&self, d: usize) -> Option<(usize, usize)> {
        if self.degree().is_some_and(|deg| deg > d) {
            let deg = self.degree().unwrap();
            return Some((deg, d.wrapping_sub(deg)));
        }
        (0..=d / 2)
            .find(|&i| self.coeff(i) != self.coeff(d - i))
            .map(|i| (i, d - i))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact quotient by `(t - 1)`, or `None` if `p(1) != 0`.
    pub fn div_t_minus_one(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // synthetic division from the top: q_{k-1} = p_k + q_k
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (1..n).rev() {
            carry += &self.coeffs[k];
            q[k - 1] = carry.clone();
        }
        if (carry + &self.coeffs[0]).is_zero() {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Exact quotient by an integer, or `None` if some coefficient is not divisible.
    pub fn div_exact_scalar(&self, k: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// Coefficientwise `self <= other`.
    pub fn le_coefficientwise(&self, other: &Self) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| self.coeff(i) <= other.coeff(i))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Sum of the coefficients, i.e. `p(1)`.
    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Pretty form, e.g. `1 + 5t + 5t^2 + t^3`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! impl_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a IntPolynomial> for &'a IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &'a IntPolynomial) -> IntPolynomial {
                $body(self, rhs)
            }
        }
        impl $tr<IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &'a IntPolynomial) -> IntPolynomial {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<IntPolynomial> for &'a IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                $body(self, &rhs)
            }
        }
    };
}

fn add_impl(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let len = a.coeffs.len().max(b.coeffs.len());
    let mut v = a.padded(len);
    for (x, y) in v.iter_mut().zip(&b.coeffs) {
        *x += y;
    }
    IntPolynomial::new(v)
}

fn sub_impl(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let len = a.coeffs.len().max(b.coeffs.len());
    let mut v = a.padded(len);
    for (x, y) in v.iter_mut().zip(&b.coeffs) {
        *x -= y;
    }
    IntPolynomial::new(v)
}

fn mul_impl(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() || b.is_zero() {
        return IntPolynomial::zero();
    }
    let mut v = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    IntPolynomial::new(v)
}

impl_binop!(Add, add, add_impl);
impl_binop!(Sub, sub, sub_impl);
impl_binop!(Mul, mul, mul_impl);

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl AddAssign for IntPolynomial {
    fn add_assign(&mut self, rhs: IntPolynomial) {
        *self += &rhs;
    }
}

impl SubAssign<&IntPolynomial> for IntPolynomial {
    fn sub_assign(&mut self, rhs: &IntPolynomial) {
        *self = &*self - rhs;
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -(self.clone())
    }
}

impl Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        let mut acc = IntPolynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl Product for IntPolynomial {
    fn product<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |acc, p| &acc * &p)
    }
}

impl From<BigInt> for IntPolynomial {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

/// Serialized as a list of coefficients. Coefficients that fit in an `i64`
/// are plain numbers; larger ones are decimal strings.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::report::serialize_bigints(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self::new(crate::report::deserialize_bigints(d)?))
    }
}

/// `h(t) = f(t - 1)`. `d` is the dimension, which bounds `deg f`.
pub fn h_from_f(f: &IntPolynomial, d: usize) -> Result<IntPolynomial, PolyError> {
    check_degree(f, d)?;
    Ok(f.shift_arg(-1))
}

/// `f(t) = h(t + 1)`.
pub fn f_from_h(h: &IntPolynomial, d: usize) -> Result<IntPolynomial, PolyError> {
    check_degree(h, d)?;
    Ok(h.shift_arg(1))
}

fn check_degree(p: &IntPolynomial, d: usize) -> Result<(), PolyError> {
    match p.degree() {
        Some(degree) if degree > d => Err(PolyError::DegreeExceedsDimension { degree, d }),
        _ => Ok(()),
    }
}

/// γ-vector of a palindromic polynomial of degree `d`:
/// `h = Σ_{i ≤ d/2} γ_i t^i (1+t)^{d-2i}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaVector {
    pub d: usize,
    pub gamma: IntPolynomial,
}

impl GammaVector {
    pub fn coeffs(&self) -> Vec<BigInt> {
        self.gamma.padded(self.d / 2 + 1)
    }

    pub fn expand(&self) -> IntPolynomial {
        self.gamma
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, g)| IntPolynomial::linear_pow(1, self.d - 2 * i).mul_t_pow(i).scale(g))
            .sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gamma.is_nonnegative()
    }
}

impl fmt::Debug for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaVector(d={}, {})", self.d, self.gamma)
    }
}

/// Peel off `γ_i t^i (1+t)^{d-2i}` from the bottom.
pub fn gamma_from_h(h: &IntPolynomial, d: usize) -> Result<GammaVector, PolyError> {
    if let Some((i, j)) = h.first_asymmetry(d) {
        return Err(PolyError::NonPalindromic { d, i, j });
    }
    let mut rest = h.clone();
    let mut gamma = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let g = rest.coeff(i);
        if !g.is_zero() {
            rest -= &IntPolynomial::linear_pow(1, d - 2 * i).mul_t_pow(i).scale(&g);
        }
        gamma.push(g);
    }
    debug_assert!(rest.is_zero());
    Ok(GammaVector { d, gamma: IntPolynomial::new(gamma) })
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn multinomial(parts: &[usize]) -> BigInt {
    let mut total = 0;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// `A_n(t) = Σ_{w ∈ S_n} t^{des w}`, via `A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)`.
/// `A_0 = 1`.
pub fn eulerian_polynomial(n: usize) -> IntPolynomial {
    let mut row = vec![BigInt::one()];
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &row[k] * BigInt::from(k + 1);
            }
            if k >= 1 && k - 1 < row.len() {
                *slot += &row[k - 1] * BigInt::from(m - k);
            }
        }
        row = next;
    }
    IntPolynomial::new(row)
}

/// `C_n(t) = Σ_k N(n,k) t^{k-1}` with `N(n,k) = C(n,k) C(n,k-1) / n`; `C_0 = 1`.
pub fn narayana_polynomial(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::one();
    }
    IntPolynomial::new(
        (1..=n)
            .map(|k| binomial(n, k) * binomial(n, k - 1) / BigInt::from(n))
            .collect(),
    )
}

/// Multisets at most this large are counted directly.
pub const DIRECT_MULTISET_LIMIT: usize = 12;

/// `A_c(t) = Σ t^{des w}` over words with `c_i` copies of letter `i`.
///
/// Counted letter by letter for `Σc ≤ 12` and by coefficient extraction from
/// `(t-1)/(t - Π(1+(t-1)y_i))` above that.
pub fn multiset_eulerian(c: &[usize]) -> Result<IntPolynomial, PolyError> {
    multiset_eulerian_with(c, &Caps::default())
}

pub fn multiset_eulerian_with(c: &[usize], caps: &Caps) -> Result<IntPolynomial, PolyError> {
    let size: usize = c.iter().sum();
    if size > caps.multiset_size {
        return Err(PolyError::MultisetTooLarge { size, cap: caps.multiset_size });
    }
    if size <= DIRECT_MULTISET_LIMIT {
        Ok(multiset_eulerian_direct(c))
    } else {
        multiset_eulerian_series(c)
    }
}

/// Direct count: extend words one letter at a time, tracking the remaining
/// multiplicities and the last letter written.
pub fn multiset_eulerian_direct(c: &[usize]) -> IntPolynomial {
    let letters: Vec<usize> = c.iter().copied().filter(|&m| m > 0).collect();
    let mut memo = HashMap::new();
    let rest = letters.clone();
    // `last == letters.len()` marks the empty prefix: the first letter never descends.
    words(&rest, letters.len(), &mut memo)
}

fn words(
    rest: &[usize],
    last: usize,
    memo: &mut HashMap<(Vec<usize>, usize), IntPolynomial>,
) -> IntPolynomial {
    if rest.iter().all(|&m| m == 0) {
        return IntPolynomial::one();
    }
    let key = (rest.to_vec(), last);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let mut acc = IntPolynomial::zero();
    let mut next = rest.to_vec();
    for i in 0..rest.len() {
        if rest[i] == 0 {
            continue;
        }
        next[i] -= 1;
        let sub = words(&next, i, memo);
        next[i] += 1;
        if last < rest.len() && i < last {
            acc += &sub.mul_t_pow(1);
        } else {
            acc += &sub;
        }
    }
    memo.insert(key, acc.clone());
    acc
}

/// Coefficient of `y^c` in the Simon Newcomb generating function.
pub fn multiset_eulerian_series(c: &[usize]) -> Result<IntPolynomial, PolyError> {
    let letters: Vec<usize> = c.iter().copied().filter(|&m| m > 0).collect();
    if letters.is_empty() {
        return Ok(IntPolynomial::one());
    }
    let trunc = crate::series::Truncation::boxed(letters.iter().map(|&m| m as u32).collect());
    let s = crate::series::simon_newcomb_series(letters.len(), trunc)
        .map_err(|_| PolyError::InexactDivision("Simon Newcomb series"))?;
    let exps: Vec<u32> = letters.iter().map(|&m| m as u32).collect();
    Ok(s.coeff(&exps))
}
