//! Peak statistics, leaps and hops of permutations, and the γ-vector of a
//! chordal nestohedron as a peak generating function.
//!
//! Every permutation is padded with `w(0) = w(n+1) = 0`.

use std::collections::HashMap;

use thiserror::Error;

use crate::buildset::BuildingSet;
use crate::caps::Caps;
use crate::nestcplx::{b_permutations_with, NestError};
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("{0:?} is not a permutation")]
    NotPermutation(Vec<usize>),
    #[error("{0} is not an entry of the permutation")]
    NoSuchEntry(usize),
    #[error("{0} is a peak or a valley, not an intermediary entry")]
    NotIntermediary(usize),
    #[error("no leap of {a} by {r} from {w:?}")]
    LeapUndefined { a: usize, r: isize, w: Vec<usize> },
    #[error("building set is not chordal")]
    NotChordal,
    #[error("{0:?} is not a B-permutation")]
    NotBPermutation(Vec<usize>),
    #[error("no leap of {0} stays among B-permutations")]
    NoBHop(usize),
    #[error("minimal B-hop of {a} uses the even leap {r}")]
    EvenBHop { a: usize, r: isize },
    #[error(transparent)]
    Nest(#[from] NestError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryKind {
    Peak,
    Valley,
    AscentIntermediary,
    DescentIntermediary,
}

/// Classification of every position of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakDecomposition {
    pub w: Vec<usize>,
    pub kinds: Vec<EntryKind>,
}

impl PeakDecomposition {
    pub fn new(w: &[usize]) -> Self {
        let n = w.len();
        let at = |i: isize| if i < 0 || i as usize >= n { 0 } else { w[i as usize] };
        let kinds = (0..n as isize)
            .map(|i| {
                let (l, m, r) = (at(i - 1), at(i), at(i + 1));
                match (l < m, m < r) {
                    (true, false) => EntryKind::Peak,
                    (false, true) => EntryKind::Valley,
                    (true, true) => EntryKind::AscentIntermediary,
                    (false, false) => EntryKind::DescentIntermediary,
                }
            })
            .collect();
        PeakDecomposition { w: w.to_vec(), kinds }
    }

    fn entries(&self, kind: EntryKind) -> Vec<usize> {
        self.w.iter().zip(&self.kinds).filter(|(_, &k)| k == kind).map(|(&a, _)| a).collect()
    }

    /// Entries, in the order they occur in `w`.
    pub fn peaks(&self) -> Vec<usize> {
        self.entries(EntryKind::Peak)
    }

    pub fn valleys(&self) -> Vec<usize> {
        self.entries(EntryKind::Valley)
    }

    pub fn ascent_intermediary(&self) -> Vec<usize> {
        self.entries(EntryKind::AscentIntermediary)
    }

    pub fn descent_intermediary(&self) -> Vec<usize> {
        self.entries(EntryKind::DescentIntermediary)
    }

    pub fn kind_of(&self, a: usize) -> Option<EntryKind> {
        self.w.iter().position(|&x| x == a).map(|i| self.kinds[i])
    }

    pub fn peak_count(&self) -> usize {
        self.kinds.iter().filter(|&&k| k == EntryKind::Peak).count()
    }
}

pub fn peak_decomposition(w: &[usize]) -> PeakDecomposition {
    PeakDecomposition::new(w)
}

pub fn peak_count(w: &[usize]) -> usize {
    PeakDecomposition::new(w).peak_count()
}

/// No descent-intermediary entries: the class `Ŝ_n`.
pub fn has_no_descent_intermediary(w: &[usize]) -> bool {
    PeakDecomposition::new(w).descent_intermediary().is_empty()
}

fn is_between(a: usize, x: usize, y: usize) -> bool {
    (x < a && a < y) || (y < a && a < x)
}

/// One leap of entry `a` to the right (`forward`) or left.
fn leap_once(w: &[usize], a: usize, forward: bool) -> Option<Vec<usize>> {
    let i = w.iter().position(|&x| x == a)?;
    let mut v = w.to_vec();
    v.remove(i);
    // padded[g], padded[g+1] is gap g of v; a sat in gap i
    let mut padded = Vec::with_capacity(v.len() + 2);
    padded.push(0);
    padded.extend(&v);
    padded.push(0);
    let gap = if forward {
        (i + 1..padded.len() - 1).find(|&g| is_between(a, padded[g], padded[g + 1]))?
    } else {
        (0..i).rev().find(|&g| is_between(a, padded[g], padded[g + 1]))?
    };
    v.insert(gap, a);
    Some(v)
}

/// `L_a^r(w)`: `r` leaps right (left for negative `r`).
/// Defined for intermediary entries only.
pub fn leap(w: &[usize], a: usize, r: isize) -> Result<Vec<usize>, GammaError> {
    match PeakDecomposition::new(w).kind_of(a) {
        None => return Err(GammaError::NoSuchEntry(a)),
        Some(EntryKind::Peak | EntryKind::Valley) => return Err(GammaError::NotIntermediary(a)),
        Some(_) => {}
    }
    let mut cur = w.to_vec();
    for _ in 0..r.unsigned_abs() {
        cur = leap_once(&cur, a, r > 0).ok_or_else(|| GammaError::LeapUndefined { a, r, w: w.to_vec() })?;
    }
    Ok(cur)
}

/// `H_a(w)`: leap right from an ascent-intermediary position, left from a
/// descent-intermediary one.
pub fn hop(w: &[usize], a: usize) -> Result<Vec<usize>, GammaError> {
    match PeakDecomposition::new(w).kind_of(a) {
        None => Err(GammaError::NoSuchEntry(a)),
        Some(EntryKind::AscentIntermediary) => leap(w, a, 1),
        Some(EntryKind::DescentIntermediary) => leap(w, a, -1),
        Some(_) => Err(GammaError::NotIntermediary(a)),
    }
}

/// B-permutation test for chordal `B`: each `a` lies in the component of
/// `B|_{w↖a}` holding `max(w↖a)`, where `w↖a` is `a` together with the
/// entries before it in `w`.
pub fn is_b_permutation_chordal(b: &BuildingSet, w: &[usize]) -> bool {
    crate::nestcplx::is_b_permutation(b, w)
}

/// `BH_a(w)`: the leap `L_a^r(w)` with the smallest `|r|` that is again a
/// B-permutation. Searches `r = ±1, ±2, ...` and insists the winner is odd.
pub fn b_hop(b: &BuildingSet, w: &[usize], a: usize) -> Result<Vec<usize>, GammaError> {
    if !b.is_chordal() {
        return Err(GammaError::NotChordal);
    }
    if !is_b_permutation_chordal(b, w) {
        return Err(GammaError::NotBPermutation(w.to_vec()));
    }
    let direction: isize = match PeakDecomposition::new(w).kind_of(a) {
        None => return Err(GammaError::NoSuchEntry(a)),
        Some(EntryKind::AscentIntermediary) => 1,
        Some(EntryKind::DescentIntermediary) => -1,
        Some(_) => return Err(GammaError::NotIntermediary(a)),
    };
    let mut cur = w.to_vec();
    for r in 1..=w.len() as isize + 1 {
        match leap_once(&cur, a, direction > 0) {
            None => break,
            Some(next) => {
                if is_b_permutation_chordal(b, &next) {
                    if r % 2 == 0 {
                        return Err(GammaError::EvenBHop { a, r: r * direction });
                    }
                    return Ok(next);
                }
                cur = next;
            }
        }
    }
    Err(GammaError::NoBHop(a))
}

/// `γ_B(t) = Σ_{w ∈ Ŝ_n(B)} t^{peak(w) - 1}` for chordal connected `B`.
pub fn gamma_chordal(b: &BuildingSet) -> Result<IntPolynomial, GammaError> {
    gamma_chordal_with(b, &Caps::default())
}

pub fn gamma_chordal_with(b: &BuildingSet, caps: &Caps) -> Result<IntPolynomial, GammaError> {
    if !b.is_chordal() {
        return Err(GammaError::NotChordal);
    }
    let perms = b_permutations_with(b, caps)?;
    Ok(perms
        .iter()
        .filter(|w| has_no_descent_intermediary(w))
        .map(|w| IntPolynomial::t_pow(peak_count(w) - 1))
        .sum())
}

/// Classes of `perms` under the moves `step(w, a)` for every intermediary
/// entry `a`, by union-find. Each class is sorted; classes are ordered by
/// their least member.
pub fn hop_classes<F>(perms: &[Vec<usize>], step: F) -> Result<Vec<Vec<Vec<usize>>>, GammaError>
where
    F: Fn(&[usize], usize) -> Result<Vec<usize>, GammaError>,
{
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..perms.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nxt = p[y];
            p[y] = r;
            y = nxt;
        }
        r
    }
    for (i, w) in perms.iter().enumerate() {
        let pd = PeakDecomposition::new(w);
        for (&a, &k) in w.iter().zip(&pd.kinds) {
            if matches!(k, EntryKind::Peak | EntryKind::Valley) {
                continue;
            }
            let v = step(w, a)?;
            let Some(&j) = index.get(v.as_slice()) else {
                continue;
            };
            let (x, y) = (find(&mut parent, i), find(&mut parent, j));
            if x != y {
                parent[x] = y;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    for (i, w) in perms.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(w.clone());
    }
    let mut out: Vec<Vec<Vec<usize>>> = groups.into_values().collect();
    for g in &mut out {
        g.sort();
    }
    out.sort();
    Ok(out)
}

/// `t^{p-1} (1+t)^{n-2p+1}`: the descent generating function of a hop class
/// whose members have `p` peaks.
pub fn class_polynomial(n: usize, peaks: usize) -> IntPolynomial {
    IntPolynomial::linear_pow(1, n + 1 - 2 * peaks).mul_t_pow(peaks - 1)
}
