//! g-polynomials of path-like graphs: `h_{G_n} = Σ_{i=0}^{n_0} g_i(t) C_{n-i}(t)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{path_like, FamilyError, MarkedGraph};
use crate::buildset::{graphical_building, Graph};
use crate::nestcplx::{dimension, f_recurrence_restriction};
use crate::poly::{h_from_f, narayana_polynomial, IntPolynomial};

/// Largest `n_0` accepted.
pub const MAX_UNMARKED: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GPolynomial {
    pub n0: usize,
    /// `g_0, …, g_{n_0}`
    pub g: Vec<IntPolynomial>,
}

impl GPolynomial {
    /// `Σ g_i(t) C_{n-i}(t)`
    pub fn expand(&self, n: usize) -> IntPolynomial {
        self.g
            .iter()
            .enumerate()
            .filter(|&(i, _)| i < n)
            .map(|(i, g)| g * &narayana_polynomial(n - i))
            .sum()
    }
}

impl fmt::Display for GPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, g) in self.g.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{g}")?,
                1 => write!(f, "({g})x")?,
                _ => write!(f, "({g})x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// h-polynomial of the graph-associahedron of `g`.
pub fn graph_h_polynomial(g: &Graph) -> Result<IntPolynomial, FamilyError> {
    let b = graphical_building(g)?;
    let f = f_recurrence_restriction(&b)?;
    h_from_f(&f, dimension(&b)).map_err(|e| FamilyError::Nest(e.into()))
}

/// Solve for `g_0..g_{n_0}` from `h_{G_n}` at `n = n_0+1 ..= 2n_0+2`, then
/// check integrality, degree bounds, palindromicity and one further `n`.
pub fn g_polynomial(a: &MarkedGraph, b: &MarkedGraph) -> Result<GPolynomial, FamilyError> {
    let n0 = a.unmarked() + b.unmarked();
    if n0 > MAX_UNMARKED {
        return Err(FamilyError::BadParams("g_polynomial".into(), format!("n_0 = {n0} exceeds {MAX_UNMARKED}")));
    }
    // unknown (i, j): coefficient of t^j in g_i, j ≤ i
    let unknowns: Vec<(usize, usize)> = (0..=n0).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
    let narayana: Vec<IntPolynomial> = (0..=2 * n0 + 3).map(narayana_polynomial).collect();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for n in n0 + 1..=2 * n0 + 2 {
        let h = graph_h_polynomial(&path_like(a, b, n)?)?;
        for deg in 0..n {
            let mut row: Vec<BigRational> = unknowns
                .iter()
                .map(|&(i, j)| {
                    if i < n && deg >= j {
                        BigRational::from_integer(narayana[n - i].coeff(deg - j))
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            row.push(BigRational::from_integer(h.coeff(deg)));
            rows.push(row);
        }
    }
    let sol = solve(rows, unknowns.len())?;
    let mut g = vec![Vec::new(); n0 + 1];
    for (&(i, _), v) in unknowns.iter().zip(sol) {
        if !v.is_integer() {
            return Err(FamilyError::SystemInconsistent(format!("non-integral coefficient {v} in g_{i}")));
        }
        g[i].push(v.to_integer());
    }
    let gp = GPolynomial { n0, g: g.into_iter().map(IntPolynomial::new).collect() };
    for (i, gi) in gp.g.iter().enumerate() {
        if gi.degree().is_some_and(|d| d > i) || !gi.is_palindromic(i) && !gi.is_zero() {
            return Err(FamilyError::SystemInconsistent(format!("g_{i} = {gi} is not palindromic of degree {i}")));
        }
    }
    let held_out = 2 * n0 + 3;
    let h = graph_h_polynomial(&path_like(a, b, held_out)?)?;
    if gp.expand(held_out) != h {
        return Err(FamilyError::SystemInconsistent(format!("expansion fails at n = {held_out}")));
    }
    Ok(gp)
}

/// Gaussian elimination on an augmented system; requires a unique solution.
fn solve(mut rows: Vec<Vec<BigRational>>, nvars: usize) -> Result<Vec<BigRational>, FamilyError> {
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(nvars);
    for col in 0..nvars {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(FamilyError::SystemInconsistent(format!("unknown {col} is undetermined")));
        };
        rows.swap(pivot_row, p);
        let inv = BigRational::one() / &rows[pivot_row][col];
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let prow = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[nvars].is_zero()) {
        return Err(FamilyError::SystemInconsistent("overdetermined system has no solution".into()));
    }
    Ok(pivots.into_iter().map(|r| rows[r][nvars].clone()).collect())
}
