//! The two f-polynomial recurrences: over restrictions, and the differential
//! recurrence over restriction/contraction pairs.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{dimension, NestError};
use crate::buildset::{BuildingSet, SignatureCache, SubsetMask};
use crate::poly::{IntPolynomial, PolyError};

/// `f_B = Π` over components; for connected `B` on `S`,
/// `f_B = Σ_{I ⊊ S} t^{|S|-|I|-1} f_{B|_I}` with `f_{B|_∅} = 1`.
pub fn f_recurrence_restriction(b: &BuildingSet) -> Result<IntPolynomial, NestError> {
    let mut memo: HashMap<SubsetMask, IntPolynomial> = HashMap::new();
    Ok(restricted(b, b.ground(), &mut memo))
}

fn restricted(b: &BuildingSet, mask: SubsetMask, memo: &mut HashMap<SubsetMask, IntPolynomial>) -> IntPolynomial {
    if mask.count_ones() <= 1 {
        return IntPolynomial::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let comps = b.components_of(mask);
    let f: IntPolynomial = if comps.len() > 1 {
        comps.into_iter().map(|c| restricted(b, c, memo)).product()
    } else {
        let size = mask.count_ones() as usize;
        // all I ⊊ mask, grouped by size so that each power of t is added once
        let mut by_size = vec![IntPolynomial::zero(); size];
        let mut sub = (mask - 1) & mask;
        loop {
            let k = sub.count_ones() as usize;
            let term = restricted(b, sub, memo);
            by_size[k] += &term;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        by_size
            .into_iter()
            .enumerate()
            .map(|(k, p)| p.mul_t_pow(size - k - 1))
            .sum()
    };
    memo.insert(mask, f.clone());
    f
}

/// `f̃_B(t) = t^{|S| - |B_max|} f_B(1/t)`.
pub fn f_tilde_from_f(f: &IntPolynomial, d: usize) -> Result<IntPolynomial, PolyError> {
    f.reversed(d)
}

/// Shared memo of `f̃` keyed by building-set signature; safe to use from
/// several threads at once.
#[derive(Default)]
pub struct ContractionCache {
    table: RwLock<SignatureCache<IntPolynomial>>,
}

impl ContractionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &[SubsetMask]) -> Option<IntPolynomial> {
        self.table.read().unwrap().get(key).cloned()
    }

    fn insert(&self, key: Vec<SubsetMask>, v: IntPolynomial) {
        self.table.write().unwrap().entry(key).or_insert(v);
    }
}

/// f-polynomial from `d/dt f̃_B = Σ_{I ∈ B \ B_max} f̃_{B|_I} · f̃_{B/I}`
/// with `f̃_B(0) = 1`, integrated coefficient by coefficient.
pub fn f_recurrence_contraction(b: &BuildingSet) -> Result<IntPolynomial, NestError> {
    f_recurrence_contraction_cached(b, &ContractionCache::new())
}

pub fn f_recurrence_contraction_cached(b: &BuildingSet, cache: &ContractionCache) -> Result<IntPolynomial, NestError> {
    let d = dimension(b);
    let ft = f_tilde(b, cache)?;
    Ok(ft.reversed(d)?)
}

fn f_tilde(b: &BuildingSet, cache: &ContractionCache) -> Result<IntPolynomial, NestError> {
    let key = b.signature();
    if let Some(p) = cache.get(&key) {
        return Ok(p);
    }
    let bmax = b.b_max();
    let d = b.ground_size() - bmax.len();
    let mut deriv = IntPolynomial::zero();
    for &i in b.members() {
        if bmax.contains(&i) {
            continue;
        }
        let r = f_tilde(&b.restriction(i)?, cache)?;
        let c = f_tilde(&b.contraction(i)?, cache)?;
        deriv += &(&r * &c);
    }
    let mut coeffs = vec![BigInt::from(1)];
    for k in 0..d {
        let (q, r) = deriv.coeff(k).div_rem(&BigInt::from(k + 1));
        if !r.is_zero() {
            return Err(PolyError::InexactDivision("integrating the f-tilde recurrence").into());
        }
        coeffs.push(q);
    }
    if deriv.degree().is_some_and(|deg| deg >= d) {
        return Err(NestError::CrossCheck(format!("derivative {deriv} exceeds degree {}", d.saturating_sub(1))));
    }
    let ft = IntPolynomial::new(coeffs);
    cache.insert(key, ft.clone());
    Ok(ft)
}
