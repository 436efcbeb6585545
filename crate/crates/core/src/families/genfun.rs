//! Generating functions as truncated series: the Narayana series `C`, the
//! branched-tree series `T`, and `F_A`, `F_T`, `F_H` for paths, branched
//! trees and hedgehogs. Square-root closed forms are never used; everything
//! comes from the algebraic equations.

use crate::poly::IntPolynomial;
use crate::series::{PolySeries1, PolySeriesK, SeriesError, Truncation};

fn t() -> IntPolynomial {
    IntPolynomial::t()
}

/// `C(t, x) = Σ_{n≥1} C_n(t) x^n`, from `C = x + (1+t)xC + txC²`.
pub fn narayana_series(order: usize) -> Result<PolySeries1, SeriesError> {
    let x = PolySeries1::x(order);
    let one_t = IntPolynomial::from_i64s(&[1, 1]);
    PolySeries1::fixed_point(order, |c| {
        let quad = c.mul(c).scale(&t());
        Ok(x.add(&x.mul(&c.scale(&one_t).add(&quad))))
    })
}

/// `T(t, x_1..x_k) = (t-1)Πφ_i / (t - Π(1 + (t-1)φ_i))` with
/// `φ_i = x_i(1 + tC(t, x_i))`. The coefficient of `x^{a+1}` is `h_{T_a}`.
///
/// Numerator and denominator are both divisible by `t - 1`; after dividing
/// the denominator exactly, it has constant term 1.
pub fn t_series(k: usize, trunc: &Truncation) -> Result<PolySeriesK, SeriesError> {
    assert_eq!(trunc.nvars(), k, "truncation must have one bound per branch");
    let order = trunc.per_var.iter().copied().max().unwrap_or(0) as usize;
    let c = narayana_series(order)?;
    let phi1 = PolySeries1::x(order).mul(&PolySeries1::one(order).add(&c.scale(&t())));
    let phis: Vec<PolySeriesK> = (0..k).map(|i| PolySeriesK::from_univariate(trunc.clone(), &phi1, i)).collect();
    let tm1 = IntPolynomial::from_i64s(&[-1, 1]);
    let one = PolySeriesK::one(trunc.clone());
    let prod_phi = PolySeriesK::product(trunc.clone(), phis.iter().cloned());
    let prod_psi = PolySeriesK::product(trunc.clone(), phis.iter().map(|p| one.add(&p.scale(&tm1))));
    let den = PolySeriesK::constant(trunc.clone(), t()).sub(&prod_psi).div_t_minus_one()?;
    prod_phi.div(&den)
}

/// `F_A(t, x) = Σ_{n≥1} f̃_{Path_n}(t) x^{n+1}`, from `F = (x+tF)² / (1-x-tF)`.
pub fn fa_series(order: usize) -> Result<PolySeries1, SeriesError> {
    let x = PolySeries1::x(order);
    let one = PolySeries1::one(order);
    PolySeries1::fixed_point(order, |f| {
        let u = x.add(&f.scale(&t()));
        u.mul(&u).div(&one.sub(&u))
    })
}

/// `(F_A, F_T, F_H)` with `ξ_i = x_i + t F_A(t, x_i)` and
///
/// `F_T = Πξ_i / ((t+1)Π(1-ξ_i) - t)`, `F_H = (1 - Π(1-ξ_i)) / ((t+1)Π(1-ξ_i) - t)`.
///
/// The coefficient of `x^{a+1}` in `F_T` is `f̃_{T_a}`; that of `x^a` in
/// `F_H` is `f̃_{H_a}`.
pub fn fa_fh_ft_series(k: usize, trunc: &Truncation) -> Result<(PolySeries1, PolySeriesK, PolySeriesK), SeriesError> {
    assert_eq!(trunc.nvars(), k, "truncation must have one bound per branch");
    let order = trunc.per_var.iter().copied().max().unwrap_or(0) as usize;
    let fa = fa_series(order)?;
    let xi1 = PolySeries1::x(order).add(&fa.scale(&t()));
    let one = PolySeriesK::one(trunc.clone());
    let xis: Vec<PolySeriesK> = (0..k).map(|i| PolySeriesK::from_univariate(trunc.clone(), &xi1, i)).collect();
    let prod_xi = PolySeriesK::product(trunc.clone(), xis.iter().cloned());
    let prod_rest = PolySeriesK::product(trunc.clone(), xis.iter().map(|x| one.sub(x)));
    let den = prod_rest
        .scale(&IntPolynomial::from_i64s(&[1, 1]))
        .sub(&PolySeriesK::constant(trunc.clone(), t()));
    let ft = prod_xi.div(&den)?;
    let fh = one.sub(&prod_rest).div(&den)?;
    Ok((fa, ft, fh))
}
