//! Building sets on ground sets of at most 64 elements.
//!
//! Element `i` (1-based in the public API) is bit `i - 1` of a [`SubsetMask`].
//! Members are stored in canonical order: by cardinality, then by mask value.

mod graph;

use std::collections::{HashMap, HashSet};

use serde::Deserialize;
use thiserror::Error;

pub use graph::{Graph, GraphError};

pub type SubsetMask = u64;

/// Bits `0..n` set.
pub fn full_mask(n: usize) -> SubsetMask {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// 0-based elements of a mask, ascending.
pub fn elements(mut m: SubsetMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Mask of 0-based elements.
pub fn bits(it: impl IntoIterator<Item = usize>) -> SubsetMask {
    it.into_iter().fold(0, |m, i| m | 1 << i)
}

/// Mask from 1-based labels.
pub fn mask_of(labels: &[usize]) -> SubsetMask {
    bits(labels.iter().map(|&i| i - 1))
}

/// 1-based labels of a mask, ascending.
pub fn labels(m: SubsetMask) -> Vec<usize> {
    elements(m).map(|i| i + 1).collect()
}

fn canonical_key(m: &SubsetMask) -> (u32, SubsetMask) {
    (m.count_ones(), *m)
}

/// Squeeze the bits of `m` at positions of `ground` into `0..|ground|`.
pub fn compress(m: SubsetMask, ground: SubsetMask) -> SubsetMask {
    let mut out = 0;
    for (k, i) in elements(ground).enumerate() {
        if m >> i & 1 == 1 {
            out |= 1 << k;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("singleton {{{0}}} is missing")]
    MissingSingleton(usize),
    #[error("members {0:?} and {1:?} intersect but their union is not a member")]
    UnionNotClosed(Vec<usize>, Vec<usize>),
    #[error("empty member")]
    EmptyMember,
    #[error("member {0:?} is not contained in the ground set")]
    OutsideGround(Vec<usize>),
    #[error("ground set must have between 1 and 64 elements, got {0}")]
    BadGroundSize(usize),
    #[error("{0:?} is not a member of the building set")]
    NotAMember(Vec<usize>),
    #[error("contraction leaves an empty ground set")]
    EmptyResult,
    #[error("building set is not connected")]
    NotConnected,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A building set: members are nonempty subsets of the ground set, every
/// singleton is a member, and the union of two intersecting members is a member.
#[derive(Clone)]
pub struct BuildingSet {
    n: usize,
    ground: SubsetMask,
    members: Vec<SubsetMask>,
    lookup: HashSet<SubsetMask>,
}

impl PartialEq for BuildingSet {
    fn eq(&self, o: &Self) -> bool {
        self.ground == o.ground && self.members == o.members
    }
}

impl Eq for BuildingSet {}

impl std::hash::Hash for BuildingSet {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.ground.hash(h);
        self.members.hash(h);
    }
}

impl std::fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ms: Vec<Vec<usize>> = self.members.iter().map(|&m| labels(m)).collect();
        write!(f, "BuildingSet(ground={:?}, {:?})", labels(self.ground), ms)
    }
}

#[derive(Deserialize)]
struct BuildingJson {
    n: usize,
    members: Vec<Vec<usize>>,
}

/// Witness that a building set is not chordal: `member` has elements
/// `i_1 < ... < i_r` and the suffix `{i_s, ..., i_r}` is missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordalWitness {
    pub member: SubsetMask,
    pub s: usize,
}

/// Check the building-set axioms and put the members in canonical order.
pub fn validate_building(
    n: usize,
    ground: SubsetMask,
    members: impl IntoIterator<Item = SubsetMask>,
) -> Result<BuildingSet, BuildError> {
    if n == 0 || n > 64 || ground == 0 || ground & !full_mask(n) != 0 {
        return Err(BuildError::BadGroundSize(ground.count_ones() as usize));
    }
    let mut lookup = HashSet::new();
    for m in members {
        if m == 0 {
            return Err(BuildError::EmptyMember);
        }
        if m & !ground != 0 {
            return Err(BuildError::OutsideGround(labels(m)));
        }
        lookup.insert(m);
    }
    for i in elements(ground) {
        if !lookup.contains(&(1 << i)) {
            return Err(BuildError::MissingSingleton(i + 1));
        }
    }
    let mut members: Vec<SubsetMask> = lookup.iter().copied().collect();
    members.sort_by_key(canonical_key);
    for (a, &x) in members.iter().enumerate() {
        for &y in &members[a + 1..] {
            if x & y != 0 && !lookup.contains(&(x | y)) {
                return Err(BuildError::UnionNotClosed(labels(x), labels(y)));
            }
        }
    }
    Ok(BuildingSet { n, ground, members, lookup })
}

impl BuildingSet {
    /// Validated building set on `[n]` from 1-based member lists.
    pub fn from_members(n: usize, members: &[Vec<usize>]) -> Result<Self, BuildError> {
        for m in members {
            if let Some(&bad) = m.iter().find(|&&i| i == 0 || i > n) {
                return Err(BuildError::OutsideGround(vec![bad]));
            }
        }
        validate_building(n, full_mask(n), members.iter().map(|m| mask_of(m)))
    }

    /// The smallest building set on `ground` containing `generators`.
    pub fn generated_by(
        n: usize,
        ground: SubsetMask,
        generators: impl IntoIterator<Item = SubsetMask>,
    ) -> Result<Self, BuildError> {
        let mut set: HashSet<SubsetMask> = elements(ground).map(|i| 1u64 << i).collect();
        let mut work: Vec<SubsetMask> = set.iter().copied().collect();
        for g in generators {
            if g != 0 && set.insert(g) {
                work.push(g);
            }
        }
        let mut all: Vec<SubsetMask> = set.iter().copied().collect();
        while let Some(x) = work.pop() {
            let mut fresh = Vec::new();
            for &y in &all {
                if x & y != 0 && set.insert(x | y) {
                    fresh.push(x | y);
                }
            }
            all.extend(&fresh);
            work.extend(fresh);
        }
        validate_building(n, ground, set)
    }

    /// `{"n": N, "members": [[...], ...]}`
    pub fn from_json(text: &str) -> Result<Self, BuildError> {
        let b: BuildingJson = serde_json::from_str(text).map_err(|e| BuildError::Parse(e.to_string()))?;
        Self::from_members(b.n, &b.members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> SubsetMask {
        self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.count_ones() as usize
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: SubsetMask) -> bool {
        self.lookup.contains(&m)
    }

    /// Members as 1-based label lists, in canonical order.
    pub fn member_labels(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|&m| labels(m)).collect()
    }

    /// Inclusion-maximal members; they partition the ground set.
    pub fn b_max(&self) -> Vec<SubsetMask> {
        self.components_of(self.ground)
    }

    pub fn is_connected(&self) -> bool {
        self.contains(self.ground)
    }

    /// Components of `B|_mask`: the maximal members inside `mask`, ordered by least element.
    pub fn components_of(&self, mask: SubsetMask) -> Vec<SubsetMask> {
        if self.contains(mask) {
            return vec![mask];
        }
        let mut comps: Vec<SubsetMask> = Vec::new();
        for &m in self.members.iter().rev() {
            if m & !mask == 0 && comps.iter().all(|&c| c & m == 0) {
                comps.push(m);
            }
        }
        comps.sort_by_key(|&c| c.trailing_zeros());
        comps
    }

    /// The component of `B|_mask` containing 0-based element `i`.
    pub fn component_containing(&self, mask: SubsetMask, i: usize) -> SubsetMask {
        self.components_of(mask).into_iter().find(|&c| c >> i & 1 == 1).unwrap_or(0)
    }

    /// `B|_I = {J ∈ B : J ⊆ I}`.
    pub fn restriction(&self, i: SubsetMask) -> Result<BuildingSet, BuildError> {
        let i = i & self.ground;
        if i == 0 {
            return Err(BuildError::EmptyResult);
        }
        let members: Vec<SubsetMask> = self.members.iter().copied().filter(|&m| m & !i == 0).collect();
        let lookup = members.iter().copied().collect();
        Ok(BuildingSet { n: self.n, ground: i, members, lookup })
    }

    /// `B/I = {J ⊆ S \ I : J ∈ B or J ∪ I ∈ B}` for a member `I`.
    pub fn contraction(&self, i: SubsetMask) -> Result<BuildingSet, BuildError> {
        if !self.contains(i) {
            return Err(BuildError::NotAMember(labels(i)));
        }
        let ground = self.ground & !i;
        if ground == 0 {
            return Err(BuildError::EmptyResult);
        }
        let mut set = HashSet::new();
        for &m in &self.members {
            if m & i == 0 {
                set.insert(m);
            } else if m & i == i && m != i {
                set.insert(m & !i);
            }
        }
        let mut members: Vec<SubsetMask> = set.iter().copied().collect();
        members.sort_by_key(canonical_key);
        Ok(BuildingSet { n: self.n, ground, members, lookup: set })
    }

    /// Connected components `B|_C` for `C ∈ B_max`.
    pub fn components(&self) -> Vec<BuildingSet> {
        self.b_max().into_iter().map(|c| self.restriction(c).unwrap()).collect()
    }

    /// Members re-indexed by ground order: a key shared by building sets that
    /// differ only by an order-preserving relabelling of the ground set.
    pub fn signature(&self) -> Vec<SubsetMask> {
        let mut sig: Vec<SubsetMask> = self.members.iter().map(|&m| compress(m, self.ground)).collect();
        sig.sort_by_key(canonical_key);
        sig.push(self.ground_size() as u64);
        sig
    }

    pub fn chordal_witness(&self) -> Option<ChordalWitness> {
        for &m in &self.members {
            let els: Vec<usize> = elements(m).collect();
            let mut suffix = 0;
            for (k, &e) in els.iter().enumerate().rev() {
                suffix |= 1 << e;
                if !self.contains(suffix) {
                    return Some(ChordalWitness { member: m, s: k + 1 });
                }
            }
        }
        None
    }

    /// Every member's suffixes `{i_s, ..., i_r}` are members.
    pub fn is_chordal(&self) -> bool {
        self.chordal_witness().is_none()
    }

    /// Pairwise-disjoint members `J_1, ..., J_l` (`l ≥ 2`) whose union is a
    /// member but which cannot be split into two groups with both unions in `B`.
    pub fn flag_witness(&self) -> Option<Vec<SubsetMask>> {
        for &u in &self.members {
            if u.count_ones() < 2 {
                continue;
            }
            let two_split = self
                .members
                .iter()
                .any(|&a| a & !u == 0 && a != u && self.contains(u & !a));
            if !two_split {
                return Some(elements(u).map(|i| 1u64 << i).collect());
            }
            let mut chosen = Vec::new();
            if let Some(w) = self.unsplittable_partition(u, u, &mut chosen) {
                return Some(w);
            }
        }
        None
    }

    /// Search partitions of `u` into at least three members such that no
    /// proper subfamily of two or more blocks has its union in `B`. Any
    /// violation of the flag condition shrinks to one of these.
    fn unsplittable_partition(
        &self,
        u: SubsetMask,
        rest: SubsetMask,
        chosen: &mut Vec<SubsetMask>,
    ) -> Option<Vec<SubsetMask>> {
        if rest == 0 {
            return (chosen.len() >= 3).then(|| {
                let mut w = chosen.clone();
                w.sort_by_key(canonical_key);
                w
            });
        }
        let low = rest & rest.wrapping_neg();
        for &j in &self.members {
            if j & low == 0 || j & !rest != 0 || j == u {
                continue;
            }
            let completes = j == rest;
            let k = chosen.len();
            let ok = (1u32..1 << k).all(|sub| {
                let mut un = j;
                for (b, &c) in chosen.iter().enumerate() {
                    if sub >> b & 1 == 1 {
                        un |= c;
                    }
                }
                let whole = completes && sub == (1 << k) - 1;
                whole || !self.contains(un)
            });
            if !ok {
                continue;
            }
            chosen.push(j);
            let found = self.unsplittable_partition(u, rest & !j, chosen);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    pub fn is_flag(&self) -> bool {
        self.flag_witness().is_none()
    }

    /// Relabel by a 0-based permutation of `[n]`.
    pub fn relabel(&self, perm: &[usize]) -> BuildingSet {
        let map = |m: SubsetMask| bits(elements(m).map(|i| perm[i]));
        validate_building(self.n, map(self.ground), self.members.iter().map(|&m| map(m))).unwrap()
    }
}

/// `B(G)`: the connected node sets of `G`.
pub fn graphical_building(g: &Graph) -> Result<BuildingSet, BuildError> {
    if g.num_vertices() == 0 {
        return Err(BuildError::BadGroundSize(0));
    }
    let members = g.connected_subsets();
    let lookup: HashSet<SubsetMask> = members.iter().copied().collect();
    let mut members = members;
    members.sort_by_key(canonical_key);
    Ok(BuildingSet { n: g.n(), ground: g.vertices(), members, lookup })
}

/// Memo table keyed by [`BuildingSet::signature`].
pub type SignatureCache<V> = HashMap<Vec<SubsetMask>, V>;
