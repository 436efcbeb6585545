//! B-trees, the map from permutations to B-trees, and B-permutations.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::NestError;
use crate::buildset::{elements, labels, BuildingSet, SubsetMask};
use crate::caps::Caps;
use crate::perm;
use crate::poly::IntPolynomial;
use crate::preposet::Poset;

const NONE: u8 = u8::MAX;

/// A rooted tree on the ground set of a building set. `parent` is indexed by
/// 0-based element; the root and elements outside the ground have no parent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BTree {
    n: usize,
    root: usize,
    parent: Vec<u8>,
}

impl std::fmt::Debug for BTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BTree(root={}, parents={:?})", self.root + 1, self.parent_labels())
    }
}

impl BTree {
    /// From 1-based `(child, parent)` edges and a root.
    pub fn from_edges(n: usize, root: usize, edges: &[(usize, usize)]) -> Self {
        let mut parent = vec![NONE; n];
        for &(c, p) in edges {
            parent[c - 1] = (p - 1) as u8;
        }
        BTree { n, root: root - 1, parent }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based.
    pub fn root(&self) -> usize {
        self.root + 1
    }

    /// 1-based parent of a 1-based node.
    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.parent[v - 1];
        (p != NONE).then_some(p as usize + 1)
    }

    /// `parent_labels()[i-1]` is the parent of node `i` (0 for the root and absent nodes).
    pub fn parent_labels(&self) -> Vec<usize> {
        self.parent.iter().map(|&p| if p == NONE { 0 } else { p as usize + 1 }).collect()
    }

    /// 1-based `(child, parent)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter(|&v| self.parent[v] != NONE)
            .map(|v| (v + 1, self.parent[v] as usize + 1))
            .collect()
    }

    pub fn nodes(&self) -> SubsetMask {
        let mut m = 1 << self.root;
        for (c, _) in self.edges() {
            m |= 1 << (c - 1);
        }
        m
    }

    fn children(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&c| self.parent[c] as usize == v).collect()
    }

    /// Node `v` (0-based) and everything below it.
    pub fn descendants(&self, v: usize) -> SubsetMask {
        let mut m = 1 << v;
        for c in self.children(v) {
            m |= self.descendants(c);
        }
        m
    }

    /// Edges `c → parent(c)` with `c > parent(c)`.
    pub fn des(&self) -> usize {
        self.edges().into_iter().filter(|&(c, p)| c > p).count()
    }

    /// Descent pairs `(c, parent(c))` with `c > parent(c)`.
    pub fn descent_pairs(&self) -> Vec<(usize, usize)> {
        self.edges().into_iter().filter(|&(c, p)| c > p).collect()
    }

    /// The tree-poset: each node lies below its parent. Only for trees on all of `[n]`.
    pub fn to_poset(&self) -> Poset {
        Poset::from_relations(self.n, &self.edges()).expect("trees are acyclic")
    }

    /// Check (T1) every `desc(v)` is a member and (T2) the subtrees of two or
    /// more children never unite to a member.
    pub fn check(&self, b: &BuildingSet) -> Result<(), NestError> {
        if self.nodes() != b.ground() {
            return Err(NestError::InvalidTree("node set differs from the ground set".into()));
        }
        for v in elements(b.ground()) {
            let d = self.descendants(v);
            if !b.contains(d) {
                return Err(NestError::InvalidTree(format!("descendants of {} form {:?}", v + 1, labels(d))));
            }
            let kids: Vec<SubsetMask> = self.children(v).into_iter().map(|c| self.descendants(c)).collect();
            let k = kids.len();
            for sub in 1u32..1 << k {
                if sub.count_ones() < 2 {
                    continue;
                }
                let un = (0..k).filter(|&i| sub >> i & 1 == 1).fold(0, |m, i| m | kids[i]);
                if b.contains(un) {
                    return Err(NestError::InvalidTree(format!("children of {} unite to {:?}", v + 1, labels(un))));
                }
            }
        }
        Ok(())
    }

    /// Lexicographically minimal linear extension: repeatedly remove the least leaf.
    pub fn lex_min_extension(&self) -> Vec<usize> {
        let mut pending: Vec<usize> = vec![0; self.n];
        for (_, p) in self.edges() {
            pending[p - 1] += 1;
        }
        let mut left = self.nodes();
        let mut w = Vec::with_capacity(self.n);
        while left != 0 {
            let leaf = elements(left).find(|&v| pending[v] == 0).unwrap();
            left &= !(1 << leaf);
            w.push(leaf + 1);
            if self.parent[leaf] != NONE {
                pending[self.parent[leaf] as usize] -= 1;
            }
        }
        w
    }

    /// The same permutation, built from the end: each `w(i)` is the root of the
    /// component of what is left that holds the largest remaining node.
    pub fn lex_min_extension_backward(&self) -> Vec<usize> {
        let mut left = self.nodes();
        let mut w = vec![0; left.count_ones() as usize];
        for slot in (0..w.len()).rev() {
            let top = 63 - left.leading_zeros() as usize;
            let mut r = top;
            while self.parent[r] != NONE && left >> self.parent[r] & 1 == 1 {
                r = self.parent[r] as usize;
            }
            w[slot] = r + 1;
            left &= !(1 << r);
        }
        w
    }
}

pub fn lex_min_extension(t: &BTree) -> Vec<usize> {
    t.lex_min_extension()
}

pub fn lex_min_extension_backward(t: &BTree) -> Vec<usize> {
    t.lex_min_extension_backward()
}

fn require_connected(b: &BuildingSet) -> Result<(), NestError> {
    if b.is_connected() {
        Ok(())
    } else {
        Err(NestError::NotConnected)
    }
}

/// Number of B-trees (= vertices of the nestohedron) of a connected building set.
pub fn count_b_trees(b: &BuildingSet) -> Result<u128, NestError> {
    require_connected(b)?;
    let mut memo = HashMap::new();
    Ok(count_on(b, b.ground(), &mut memo))
}

fn count_on(b: &BuildingSet, mask: SubsetMask, memo: &mut HashMap<SubsetMask, u128>) -> u128 {
    if mask.count_ones() <= 1 {
        return 1;
    }
    if let Some(&c) = memo.get(&mask) {
        return c;
    }
    let total = elements(mask)
        .map(|i| {
            b.components_of(mask & !(1 << i))
                .into_iter()
                .map(|c| count_on(b, c, memo))
                .product::<u128>()
        })
        .sum();
    memo.insert(mask, total);
    total
}

/// Parent arrays of all B-trees on a member `mask`, with their roots.
type Partial = (u8, Arc<Vec<u8>>);

/// All B-trees of a connected building set, in canonical order (by parent
/// array). Built by choosing the root and recursing on the components of
/// the restriction to the rest; the root choices run in parallel.
pub fn enumerate_b_trees(b: &BuildingSet) -> Result<Vec<BTree>, NestError> {
    enumerate_b_trees_with(b, &Caps::default())
}

pub fn enumerate_b_trees_with(b: &BuildingSet, caps: &Caps) -> Result<Vec<BTree>, NestError> {
    let count = count_b_trees(b)?;
    if count > caps.b_trees as u128 {
        return Err(NestError::CapExceeded { what: "B-trees", cap: caps.b_trees });
    }
    let n = b.n();
    let ground = b.ground();
    let roots: Vec<usize> = elements(ground).collect();
    let per_root: Vec<Vec<BTree>> = roots
        .par_iter()
        .map(|&r| {
            let mut memo = HashMap::new();
            let comps = b.components_of(ground & !(1 << r));
            let mut trees = Vec::new();
            combine(b, &comps, r as u8, n, &mut memo, &mut |parent| {
                trees.push(BTree { n, root: r, parent });
            });
            trees
        })
        .collect();
    let mut all: Vec<BTree> = per_root.into_iter().flatten().collect();
    all.sort_by(|x, y| x.parent.cmp(&y.parent).then(x.root.cmp(&y.root)));
    Ok(all)
}

/// Every way of hanging one B-tree per component below `root`.
fn combine(
    b: &BuildingSet,
    comps: &[SubsetMask],
    root: u8,
    n: usize,
    memo: &mut HashMap<SubsetMask, Arc<Vec<Partial>>>,
    emit: &mut dyn FnMut(Vec<u8>),
) {
    let lists: Vec<Arc<Vec<Partial>>> = comps.iter().map(|&c| trees_on(b, c, n, memo)).collect();
    let mut idx = vec![0usize; lists.len()];
    loop {
        let mut parent = vec![NONE; n];
        for (l, &i) in lists.iter().zip(&idx) {
            let (r, ref p) = l[i];
            for v in 0..n {
                if p[v] != NONE {
                    parent[v] = p[v];
                }
            }
            parent[r as usize] = root;
        }
        emit(parent);
        // odometer over the component choices
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn trees_on(
    b: &BuildingSet,
    mask: SubsetMask,
    n: usize,
    memo: &mut HashMap<SubsetMask, Arc<Vec<Partial>>>,
) -> Arc<Vec<Partial>> {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let mut out = Vec::new();
    for r in elements(mask) {
        let comps = b.components_of(mask & !(1 << r));
        combine(b, &comps, r as u8, n, memo, &mut |p| out.push((r as u8, Arc::new(p))));
    }
    let out = Arc::new(out);
    memo.insert(mask, out.clone());
    out
}

/// `Ψ_B(w)`: the root is the last letter; recurse on each component of the
/// rest, keeping the letters in the order they appear in `w`.
pub fn psi_map(b: &BuildingSet, w: &[usize]) -> Result<BTree, NestError> {
    require_connected(b)?;
    let wm = w.iter().try_fold(0u64, |m, &a| {
        (a >= 1 && a <= b.n() && m >> (a - 1) & 1 == 0).then(|| m | 1 << (a - 1))
    });
    if wm != Some(b.ground()) {
        return Err(NestError::NotPermutation(w.to_vec()));
    }
    let word: Vec<usize> = w.iter().map(|&a| a - 1).collect();
    let mut parent = vec![NONE; b.n()];
    let root = psi_rec(b, &word, b.ground(), &mut parent);
    Ok(BTree { n: b.n(), root, parent })
}

fn psi_rec(b: &BuildingSet, word: &[usize], mask: SubsetMask, parent: &mut [u8]) -> usize {
    let root = *word.iter().rev().find(|&&a| mask >> a & 1 == 1).unwrap();
    for c in b.components_of(mask & !(1 << root)) {
        let sub = psi_rec(b, word, c, parent);
        parent[sub] = root as u8;
    }
    root
}

/// `w(i)` and `max{w(1..i)}` lie in one component of `B|_{w(1..i)}`, for every `i`.
pub fn is_b_permutation(b: &BuildingSet, w: &[usize]) -> bool {
    let mut prefix = 0u64;
    for &a in w {
        prefix |= 1 << (a - 1);
        let top = 63 - prefix.leading_zeros() as usize;
        let c = b.component_containing(prefix, top);
        if c >> (a - 1) & 1 == 0 {
            return false;
        }
    }
    true
}

/// B-permutations in lexicographic order, built from the end: `w(i)` is
/// drawn from the component of `B|_{rest}` holding the largest remaining element.
pub fn b_permutations(b: &BuildingSet) -> Result<Vec<Vec<usize>>, NestError> {
    b_permutations_with(b, &Caps::default())
}

pub fn b_permutations_with(b: &BuildingSet, caps: &Caps) -> Result<Vec<Vec<usize>>, NestError> {
    require_connected(b)?;
    let len = b.ground_size();
    let mut out = Vec::new();
    let mut w = vec![0; len];
    let mut memo = HashMap::new();
    backward(b, b.ground(), len, &mut w, &mut out, &mut memo, caps.permutations)?;
    out.sort();
    Ok(out)
}

fn backward(
    b: &BuildingSet,
    rest: SubsetMask,
    slot: usize,
    w: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    memo: &mut HashMap<SubsetMask, SubsetMask>,
    cap: u64,
) -> Result<(), NestError> {
    if slot == 0 {
        if out.len() as u64 >= cap {
            return Err(NestError::CapExceeded { what: "B-permutations", cap });
        }
        out.push(w.clone());
        return Ok(());
    }
    let comp = *memo.entry(rest).or_insert_with(|| {
        let top = 63 - rest.leading_zeros() as usize;
        b.component_containing(rest, top)
    });
    for a in elements(comp) {
        w[slot - 1] = a + 1;
        backward(b, rest & !(1 << a), slot - 1, w, out, memo, cap)?;
    }
    Ok(())
}

/// `h_B(t) = Σ_T t^{des T}` over B-trees. For chordal `B` the descent
/// generating function of B-permutations is computed too and must agree.
pub fn h_via_descents(b: &BuildingSet) -> Result<IntPolynomial, NestError> {
    h_via_descents_with(b, &Caps::default())
}

pub fn h_via_descents_with(b: &BuildingSet, caps: &Caps) -> Result<IntPolynomial, NestError> {
    let trees = enumerate_b_trees_with(b, caps)?;
    let h = descent_polynomial(trees.iter().map(|t| t.des()));
    if b.is_chordal() {
        let perms = b_permutations_with(b, caps)?;
        let hp = descent_polynomial(perms.iter().map(|w| perm::des(w)));
        if hp != h {
            return Err(NestError::CrossCheck(format!("B-trees give {h}, B-permutations give {hp}")));
        }
    }
    Ok(h)
}

pub(crate) fn descent_polynomial(ds: impl Iterator<Item = usize>) -> IntPolynomial {
    let mut counts: Vec<i64> = Vec::new();
    for d in ds {
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    IntPolynomial::from_i64s(&counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buildset::{graphical_building, Graph};
    use crate::poly;

    fn graph_building(n: usize, edges: &[(usize, usize)]) -> BuildingSet {
        graphical_building(&Graph::from_edges(n, edges).unwrap()).unwrap()
    }

    #[test]
    fn paw_trees_and_descents() {
        // triangle 123 with a pendant 4 at 1
        let b = graph_building(4, &[(1, 2), (1, 3), (2, 3), (1, 4)]);
        let trees = enumerate_b_trees(&b).unwrap();
        assert_eq!(trees.len(), 18);
        assert_eq!(count_b_trees(&b).unwrap(), 18);
        for t in &trees {
            t.check(&b).unwrap();
        }
        assert_eq!(h_via_descents(&b).unwrap(), poly![1, 8, 8, 1]);
    }

    #[test]
    fn psi_of_identity_on_path_is_a_chain() {
        let b = graph_building(3, &[(1, 2), (2, 3)]);
        let t = psi_map(&b, &[1, 2, 3]).unwrap();
        assert_eq!(t.edges(), vec![(1, 2), (2, 3)]);
        let t = psi_map(&b, &[2, 1, 3]).unwrap();
        assert_eq!(t.root(), 3);
        assert_eq!(t.parent(1), Some(3));
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.lex_min_extension(), vec![2, 1, 3]);
        assert!(psi_map(&b, &[1, 1, 3]).is_err());
    }

    #[test]
    fn b_permutations_of_path_avoid_312() {
        let b = graph_building(4, &[(1, 2), (2, 3), (3, 4)]);
        let perms = b_permutations(&b).unwrap();
        assert_eq!(perms.len(), 14);
        for w in &perms {
            assert!(is_b_permutation(&b, w));
        }
        assert!(!perms.contains(&vec![3, 1, 2, 4]));
    }

    #[test]
    fn lex_min_constructions_agree() {
        let t = BTree::from_edges(5, 5, &[(3, 5), (1, 3), (4, 3), (2, 5)]);
        assert_eq!(t.lex_min_extension(), vec![1, 2, 4, 3, 5]);
        assert_eq!(t.lex_min_extension_backward(), vec![1, 2, 4, 3, 5]);
    }

    #[test]
    fn disconnected_is_rejected() {
        let b = BuildingSet::from_members(2, &[vec![1], vec![2]]).unwrap();
        assert!(matches!(enumerate_b_trees(&b), Err(NestError::NotConnected)));
    }
}
