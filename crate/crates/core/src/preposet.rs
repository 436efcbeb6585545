//! Preposets and posets on `[n]`, their contractions, and complete fans of
//! posets described by linear extensions.

use serde::Deserialize;
use thiserror::Error;

use crate::buildset::{elements, SubsetMask};
use crate::perm;
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element {0} out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("relation is not antisymmetric: {0} and {1} are equivalent")]
    NotAntisymmetric(usize, usize),
    #[error("ground sets differ ({0} vs {1})")]
    GroundMismatch(usize, usize),
    #[error("at most {max} elements supported here, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("more than {0} linear extensions")]
    CapExceeded(u64),
    #[error("not a tree-poset")]
    NotTree,
    #[error("fan is not complete: {0}")]
    IncompleteFan(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A reflexive, transitive relation on `[n]`; `up[i]` holds every `j` with `i ≤ j` (0-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preposet {
    n: usize,
    up: Vec<SubsetMask>,
}

impl std::fmt::Debug for Preposet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Preposet(n={}, {:?})", self.n, self.strict_relations())
    }
}

fn close(up: &mut [SubsetMask]) {
    let n = up.len();
    for (i, row) in up.iter_mut().enumerate() {
        *row |= 1 << i;
    }
    for k in 0..n {
        let rk = up[k];
        for i in 0..n {
            if up[i] >> k & 1 == 1 {
                up[i] |= rk;
            }
        }
    }
}

impl Preposet {
    /// Transitive closure of the 1-based pairs `i ≤ j`.
    pub fn from_relations(n: usize, rels: &[(usize, usize)]) -> Result<Self, PosetError> {
        if n > 64 {
            return Err(PosetError::TooLarge { n, max: 64 });
        }
        let mut up = vec![0; n];
        for &(i, j) in rels {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(PosetError::OutOfRange(v, n));
                }
            }
            up[i - 1] |= 1 << (j - 1);
        }
        close(&mut up);
        Ok(Preposet { n, up })
    }

    /// The trivial preposet (only `i ≤ i`).
    pub fn antichain(n: usize) -> Self {
        Preposet::from_relations(n, &[]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based `i ≤ j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn up_set(&self, i: usize) -> SubsetMask {
        self.up[i]
    }

    /// Equivalence classes `{j : i ≤ j ≤ i}`, ordered by least element.
    pub fn classes(&self) -> Vec<SubsetMask> {
        let mut seen = 0;
        let mut out = Vec::new();
        for i in 0..self.n {
            if seen >> i & 1 == 1 {
                continue;
            }
            let c = (0..self.n).filter(|&j| self.le(i, j) && self.le(j, i)).fold(0, |m, j| m | 1 << j);
            seen |= c;
            out.push(c);
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.classes().len() == self.n
    }

    /// Every relation of `other` holds in `self`.
    pub fn contains(&self, other: &Preposet) -> bool {
        self.n == other.n && self.up.iter().zip(&other.up).all(|(a, b)| b & !a == 0)
    }

    /// Transitive closure of the union of the two relations.
    pub fn join(&self, other: &Preposet) -> Preposet {
        let mut up: Vec<SubsetMask> = self.up.iter().zip(&other.up).map(|(a, b)| a | b).collect();
        close(&mut up);
        Preposet { n: self.n, up }
    }

    /// Strict relations `i < j` (or `i ≤ j`, `i ≠ j` for preposets), 1-based.
    pub fn strict_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in elements(self.up[i]) {
                if j != i {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn to_poset(&self) -> Result<Poset, PosetError> {
        if let Some(c) = self.classes().into_iter().find(|c| c.count_ones() > 1) {
            let e: Vec<usize> = elements(c).collect();
            return Err(PosetError::NotAntisymmetric(e[0] + 1, e[1] + 1));
        }
        Ok(Poset(self.clone()))
    }
}

/// Whether `q` is a contraction of `p`: `q = closure(p ∪ R^op)` for some `R ⊆ p`.
///
/// Any valid `R` lies inside `{(x, y) ∈ p : y ≤_q x}`, and that maximal choice
/// works whenever any does, so it is the only one tried.
pub fn is_contraction(q: &Preposet, p: &Preposet) -> bool {
    if q.n != p.n || !q.contains(p) {
        return false;
    }
    let mut up = p.up.clone();
    for x in 0..p.n {
        for y in elements(p.up[x]) {
            if q.le(y, x) {
                up[y] |= 1 << x;
            }
        }
    }
    close(&mut up);
    up == q.up
}

/// `q1` and `q2` intersect properly when the closure of their union is a
/// contraction of each.
pub fn properly_intersect(q1: &Preposet, q2: &Preposet) -> bool {
    let u = q1.join(q2);
    is_contraction(&u, q1) && is_contraction(&u, q2)
}

/// A partial order on `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset(Preposet);

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n(), self.covers())
    }
}

#[derive(Deserialize)]
struct PosetJson {
    n: usize,
    relations: Vec<(usize, usize)>,
}

impl Poset {
    pub fn from_relations(n: usize, rels: &[(usize, usize)]) -> Result<Self, PosetError> {
        Preposet::from_relations(n, rels)?.to_poset()
    }

    /// `{"n": N, "relations": [[i, j], ...]}` with `i < j`; closed transitively.
    pub fn from_json(text: &str) -> Result<Self, PosetError> {
        let p: PosetJson = serde_json::from_str(text).map_err(|e| PosetError::Parse(e.to_string()))?;
        Self::from_relations(p.n, &p.relations)
    }

    /// Chain notation: `"2<3<1 and 4<1"`, or `"(1,2<3<4)"` where each
    /// comma-separated group lies entirely below the next group.
    pub fn from_chains(n: usize, text: &str) -> Result<Self, PosetError> {
        let text = text.trim().trim_start_matches('(').trim_end_matches(')');
        let mut rels = Vec::new();
        for chain in text.split(" and ").flat_map(|c| c.split(';')) {
            let groups: Vec<Vec<usize>> = chain
                .split('<')
                .map(|g| {
                    g.split(',')
                        .map(|s| s.trim().parse::<usize>().map_err(|_| PosetError::Parse(format!("bad element {s:?}"))))
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            for w in groups.windows(2) {
                for &a in &w[0] {
                    for &b in &w[1] {
                        rels.push((a, b));
                    }
                }
            }
        }
        Self::from_relations(n, &rels)
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn as_preposet(&self) -> &Preposet {
        &self.0
    }

    /// 0-based `i < j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.0.le(i, j)
    }

    /// Covering pairs `i ⋖ j` (1-based), by transitive reduction.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let strict: Vec<SubsetMask> = (0..n).map(|i| self.0.up[i] & !(1 << i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            let mut above_above = 0;
            for k in elements(strict[i]) {
                above_above |= strict[k];
            }
            for j in elements(strict[i] & !above_above) {
                out.push((i + 1, j + 1));
            }
        }
        out
    }

    /// Whether the Hasse diagram is a spanning tree of `[n]`.
    pub fn is_tree_poset(&self) -> bool {
        let n = self.n();
        let covers = self.covers();
        if n == 0 || covers.len() != n - 1 {
            return false;
        }
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for (i, j) in covers {
            let (a, b) = (find(&mut comp, i - 1), find(&mut comp, j - 1));
            if a == b {
                return false;
            }
            comp[a] = b;
        }
        true
    }

    /// Relabel element `i` as `w(i)` (both 1-based).
    pub fn relabel(&self, w: &[usize]) -> Poset {
        let rels: Vec<(usize, usize)> = self.0.strict_relations().into_iter().map(|(i, j)| (w[i - 1], w[j - 1])).collect();
        Poset::from_relations(self.n(), &rels).unwrap()
    }
}

/// Linear extensions as words `w(1)..w(n)` listing elements from bottom to
/// top, in lexicographic order. Errors once more than `cap` are found.
pub fn linear_extensions(q: &Poset, cap: u64) -> Result<Vec<Vec<usize>>, PosetError> {
    let n = q.n();
    let below: Vec<SubsetMask> = (0..n)
        .map(|j| (0..n).filter(|&i| q.lt(i, j)).fold(0, |m, i| m | 1 << i))
        .collect();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    extend(&below, 0, &mut word, &mut out, cap)?;
    Ok(out)
}

fn extend(
    below: &[SubsetMask],
    placed: SubsetMask,
    word: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: u64,
) -> Result<(), PosetError> {
    let n = below.len();
    if word.len() == n {
        if out.len() as u64 >= cap {
            return Err(PosetError::CapExceeded(cap));
        }
        out.push(word.clone());
        return Ok(());
    }
    for j in 0..n {
        if placed >> j & 1 == 0 && below[j] & !placed == 0 {
            word.push(j + 1);
            extend(below, placed | 1 << j, word, out, cap)?;
            word.pop();
        }
    }
    Ok(())
}

/// Number of linear extensions, by dynamic programming over down-sets.
pub fn count_linear_extensions(q: &Poset) -> u64 {
    let n = q.n();
    assert!(n <= 24, "count_linear_extensions supports n ≤ 24");
    let below: Vec<SubsetMask> = (0..n)
        .map(|j| (0..n).filter(|&i| q.lt(i, j)).fold(0, |m, i| m | 1 << i))
        .collect();
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for s in 0..(1usize << n) {
        if ways[s] == 0 {
            continue;
        }
        for j in 0..n {
            if s >> j & 1 == 0 && below[j] & !(s as u64) == 0 {
                ways[s | 1 << j] += ways[s];
            }
        }
    }
    ways[(1 << n) - 1]
}

/// `des(Q)`: covers `i ⋖ j` with `i > j`.
pub fn poset_descents(q: &Poset) -> usize {
    q.covers().into_iter().filter(|&(i, j)| i > j).count()
}

/// Largest `n` for which all `n!` relabellings are enumerated.
pub const MAX_EULERIAN_N: usize = 9;

/// `A_Q(t) = Σ_{w ∈ S_n} t^{des(wQ)}`.
pub fn generalized_eulerian(q: &Poset) -> Result<IntPolynomial, PosetError> {
    let n = q.n();
    if n > MAX_EULERIAN_N {
        return Err(PosetError::TooLarge { n, max: MAX_EULERIAN_N });
    }
    let covers = q.covers();
    let mut counts = vec![0i64; n.max(1)];
    for w in perm::all_permutations(n) {
        let d = covers.iter().filter(|&&(i, j)| w[i - 1] > w[j - 1]).count();
        counts[d] += 1;
    }
    Ok(IntPolynomial::from_i64s(&counts))
}

/// Outcome of [`is_complete_fan`]; complete when every field is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FanDiagnosis {
    /// Two posets sharing a linear extension.
    pub overlap: Option<(usize, usize, Vec<usize>)>,
    /// A permutation that is a linear extension of no poset.
    pub gap: Option<Vec<usize>>,
    /// Two posets that do not intersect properly.
    pub improper: Option<(usize, usize)>,
}

impl FanDiagnosis {
    pub fn is_complete(&self) -> bool {
        self.overlap.is_none() && self.gap.is_none() && self.improper.is_none()
    }
}

/// Largest `n` for which fans are checked by enumerating `S_n`.
pub const MAX_FAN_N: usize = 9;

/// Whether the cones of the posets form a complete fan: pairwise proper
/// intersections and linear extensions partitioning `S_n`.
pub fn is_complete_fan(fan: &[Poset]) -> Result<FanDiagnosis, PosetError> {
    let n = fan.first().map_or(0, |q| q.n());
    if let Some(q) = fan.iter().find(|q| q.n() != n) {
        return Err(PosetError::GroundMismatch(n, q.n()));
    }
    if n > MAX_FAN_N {
        return Err(PosetError::TooLarge { n, max: MAX_FAN_N });
    }
    let total: usize = (1..=n).product();
    let mut owner: Vec<Option<usize>> = vec![None; total];
    let mut diag = FanDiagnosis::default();
    for (k, q) in fan.iter().enumerate() {
        for w in linear_extensions(q, total as u64)? {
            let r = perm::rank(&w);
            match owner[r] {
                Some(prev) if diag.overlap.is_none() => diag.overlap = Some((prev, k, w)),
                Some(_) => {}
                None => owner[r] = Some(k),
            }
        }
    }
    diag.gap = perm::all_permutations(n).zip(&owner).find(|(_, o)| o.is_none()).map(|(w, _)| w);
    'outer: for a in 0..fan.len() {
        for b in a + 1..fan.len() {
            if !properly_intersect(fan[a].as_preposet(), fan[b].as_preposet()) {
                diag.improper = Some((a, b));
                break 'outer;
            }
        }
    }
    Ok(diag)
}

/// `h(t) = Σ_Q t^{des Q}` over a complete fan of tree-posets.
pub fn h_of_poset_fan(fan: &[Poset]) -> Result<IntPolynomial, PosetError> {
    if fan.iter().any(|q| !q.is_tree_poset()) {
        return Err(PosetError::NotTree);
    }
    let diag = is_complete_fan(fan)?;
    if !diag.is_complete() {
        return Err(PosetError::IncompleteFan(format!("{diag:?}")));
    }
    Ok(fan.iter().map(|q| IntPolynomial::t_pow(poset_descents(q))).sum())
}
