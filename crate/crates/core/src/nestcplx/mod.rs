//! Nested set complexes, B-trees and B-permutations, and the f-vector
//! recurrences of nestohedra.

mod btree;
mod recurrence;
pub mod search;

use thiserror::Error;

use crate::buildset::{labels, BuildError, BuildingSet, SubsetMask};
use crate::caps::Caps;
use crate::poly::{gamma_from_h, h_from_f, IntPolynomial, PolyError};
use crate::report::FaceReport;

pub use btree::{
    b_permutations, b_permutations_with, count_b_trees, enumerate_b_trees, enumerate_b_trees_with,
    h_via_descents, h_via_descents_with, is_b_permutation, lex_min_extension, lex_min_extension_backward, psi_map,
    BTree,
};
pub use recurrence::{
    f_recurrence_contraction, f_recurrence_contraction_cached, f_recurrence_restriction, f_tilde_from_f,
    ContractionCache,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NestError {
    #[error("{0:?} is not a member of the building set")]
    NotInBuilding(Vec<usize>),
    #[error("{0:?} is a maximal member")]
    InBMax(Vec<usize>),
    #[error("building set is not connected")]
    NotConnected,
    #[error("more than {cap} {what}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("maximal nested set of size {size}, expected {expected}")]
    NonPure { size: usize, expected: usize },
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("{0:?} is not an ordering of the ground set")]
    NotPermutation(Vec<usize>),
    #[error("invalid B-tree: {0}")]
    InvalidTree(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Why a family of members fails to be nested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NestViolation {
    /// Two members that overlap without containment.
    NotLaminar(SubsetMask, SubsetMask),
    /// Pairwise-disjoint members (at least two) whose union is in `B`.
    UnionInBuilding(Vec<SubsetMask>),
}

/// `f_B(t) = Σ_N t^{d - |N|}` over nested sets, where `d = |S| - |B_max|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    pub d: usize,
    pub f: IntPolynomial,
}

/// Check conditions (N1) and (N2). With a flag building set only pairs need
/// checking in (N2); the full condition is used otherwise.
pub fn is_nested(b: &BuildingSet, family: &[SubsetMask]) -> Result<Option<NestViolation>, NestError> {
    let bmax = b.b_max();
    for &m in family {
        if !b.contains(m) {
            return Err(NestError::NotInBuilding(labels(m)));
        }
        if bmax.contains(&m) {
            return Err(NestError::InBMax(labels(m)));
        }
    }
    let mut fam = family.to_vec();
    fam.sort_unstable();
    fam.dedup();
    for (a, &x) in fam.iter().enumerate() {
        for &y in &fam[a + 1..] {
            if x & y != 0 && x & !y != 0 && y & !x != 0 {
                return Ok(Some(NestViolation::NotLaminar(x, y)));
            }
        }
    }
    let pairs_only = b.is_flag();
    let mut chosen = Vec::new();
    Ok(disjoint_union_in(b, &fam, 0, 0, &mut chosen, pairs_only).map(NestViolation::UnionInBuilding))
}

/// Some collection (size ≥ 2) of pairwise-disjoint members of `fam[from..]`
/// together with `chosen`, whose union lies in `B`.
fn disjoint_union_in(
    b: &BuildingSet,
    fam: &[SubsetMask],
    from: usize,
    acc: SubsetMask,
    chosen: &mut Vec<SubsetMask>,
    pairs_only: bool,
) -> Option<Vec<SubsetMask>> {
    if chosen.len() >= 2 && b.contains(acc) {
        return Some(chosen.clone());
    }
    if pairs_only && chosen.len() == 2 {
        return None;
    }
    for k in from..fam.len() {
        if fam[k] & acc == 0 {
            chosen.push(fam[k]);
            let r = disjoint_union_in(b, fam, k + 1, acc | fam[k], chosen, pairs_only);
            chosen.pop();
            if r.is_some() {
                return r;
            }
        }
    }
    None
}

struct Enumerator<'a> {
    b: &'a BuildingSet,
    cands: Vec<SubsetMask>,
    pairs_only: bool,
    d: usize,
    counts: Vec<u64>,
    total: u64,
    cap: u64,
}

impl Enumerator<'_> {
    /// Whether `j` can join the nested set `cur`.
    fn compatible(&self, cur: &[SubsetMask], j: SubsetMask) -> bool {
        let mut disjoint = Vec::new();
        for &x in cur {
            if x & j == 0 {
                disjoint.push(x);
            } else if x & !j != 0 && j & !x != 0 {
                return false;
            }
        }
        !self.union_hits(&disjoint, 0, j)
    }

    /// Is there a nonempty pairwise-disjoint subfamily of `d[from..]` whose
    /// union with `acc` is a member?
    fn union_hits(&self, d: &[SubsetMask], from: usize, acc: SubsetMask) -> bool {
        for k in from..d.len() {
            if d[k] & acc != 0 {
                continue;
            }
            let u = acc | d[k];
            if self.b.contains(u) {
                return true;
            }
            if !self.pairs_only && self.union_hits(d, k + 1, u) {
                return true;
            }
        }
        false
    }

    fn dfs(&mut self, start: usize, cur: &mut Vec<SubsetMask>) -> Result<(), NestError> {
        self.total += 1;
        if self.total > self.cap {
            return Err(NestError::CapExceeded { what: "nested sets", cap: self.cap });
        }
        if cur.len() > self.d {
            return Err(NestError::NonPure { size: cur.len(), expected: self.d });
        }
        self.counts[cur.len()] += 1;
        let mut extended = false;
        for k in start..self.cands.len() {
            let j = self.cands[k];
            if self.compatible(cur, j) {
                extended = true;
                cur.push(j);
                self.dfs(k + 1, cur)?;
                cur.pop();
            }
        }
        if !extended && cur.len() < self.d {
            let maximal = !self.cands[..start]
                .iter()
                .any(|&j| !cur.contains(&j) && self.compatible(cur, j));
            if maximal {
                return Err(NestError::NonPure { size: cur.len(), expected: self.d });
            }
        }
        Ok(())
    }
}

/// f-polynomial by depth-first enumeration of all nested sets (the empty set
/// included), checking along the way that every maximal nested set has
/// exactly `|S| - |B_max|` members.
pub fn nested_complex_fvector(b: &BuildingSet) -> Result<FVector, NestError> {
    nested_complex_fvector_with(b, &Caps::default())
}

pub fn nested_complex_fvector_with(b: &BuildingSet, caps: &Caps) -> Result<FVector, NestError> {
    let bmax = b.b_max();
    let d = b.ground_size() - bmax.len();
    let cands: Vec<SubsetMask> = b.members().iter().copied().filter(|m| !bmax.contains(m)).collect();
    let mut e = Enumerator {
        b,
        cands,
        pairs_only: b.is_flag(),
        d,
        counts: vec![0; d + 1],
        total: 0,
        cap: caps.nested_sets,
    };
    e.dfs(0, &mut Vec::new())?;
    let mut f = vec![0i64; d + 1];
    for (size, &c) in e.counts.iter().enumerate() {
        f[d - size] = c as i64;
    }
    Ok(FVector { d, f: IntPolynomial::from_i64s(&f) })
}

/// All nested sets, each sorted canonically; for small inputs and tests.
pub fn nested_sets(b: &BuildingSet) -> Vec<Vec<SubsetMask>> {
    let bmax = b.b_max();
    let cands: Vec<SubsetMask> = b.members().iter().copied().filter(|m| !bmax.contains(m)).collect();
    let mut out = Vec::new();
    fn rec(b: &BuildingSet, cands: &[SubsetMask], start: usize, cur: &mut Vec<SubsetMask>, out: &mut Vec<Vec<SubsetMask>>) {
        out.push(cur.clone());
        for k in start..cands.len() {
            cur.push(cands[k]);
            if matches!(is_nested(b, cur), Ok(None)) {
                rec(b, cands, k + 1, cur, out);
            }
            cur.pop();
        }
    }
    rec(b, &cands, 0, &mut Vec::new(), &mut out);
    out
}

/// Dimension `|S| - |B_max|` of the nestohedron.
pub fn dimension(b: &BuildingSet) -> usize {
    b.ground_size() - b.b_max().len()
}

/// f, h, γ and vertex count, computed from the restriction recurrence.
pub fn face_report(b: &BuildingSet) -> Result<FaceReport, NestError> {
    let d = dimension(b);
    let f = f_recurrence_restriction(b)?;
    let h = h_from_f(&f, d)?;
    let gamma = gamma_from_h(&h, d).ok().map(|g| g.gamma);
    Ok(FaceReport {
        n: b.ground_size(),
        num_vertices: f.coeff(0),
        f,
        h,
        gamma,
        chordal: b.is_chordal(),
        flag: b.is_flag(),
    })
}
