//! Exploratory search over small complete fans of tree-posets.
//!
//! Lists every complete fan on `[n]` whose cones are tree-posets, and records
//! whether each poset has a unique maximum and whether the fan is the B-tree
//! fan of some connected building set. Nothing here asserts an answer; it is
//! a harness for looking at examples.

use std::collections::HashMap;

use super::enumerate_b_trees;
use crate::buildset::{full_mask, validate_building, BuildingSet, SubsetMask};
use crate::perm;
use crate::preposet::{linear_extensions, properly_intersect, Poset};

#[derive(Debug, Clone)]
pub struct FanRecord {
    pub posets: Vec<Poset>,
    /// Every poset has a unique maximal element.
    pub rooted: bool,
    /// The connected building set whose B-trees give exactly these posets.
    pub building: Option<BuildingSet>,
}

/// All tree-posets on `[n]`: spanning trees of `K_n` with every orientation.
pub fn tree_posets(n: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let mut chosen = Vec::new();
    spanning(n, &pairs, 0, &mut chosen, &mut out);
    out.sort();
    out.dedup();
    out
}

fn spanning(n: usize, pairs: &[(usize, usize)], from: usize, chosen: &mut Vec<(usize, usize)>, out: &mut Vec<Poset>) {
    if chosen.len() + 1 == n || n <= 1 {
        if is_tree(n, chosen) {
            let m = chosen.len();
            for o in 0u32..1 << m {
                let rels: Vec<(usize, usize)> = chosen
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if o >> k & 1 == 1 { (b, a) } else { (a, b) })
                    .collect();
                out.push(Poset::from_relations(n, &rels).unwrap());
            }
        }
        return;
    }
    for k in from..pairs.len() {
        chosen.push(pairs[k]);
        spanning(n, pairs, k + 1, chosen, out);
        chosen.pop();
    }
}

fn is_tree(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for &(a, b) in edges {
        let (x, y) = (find(&mut comp, a - 1), find(&mut comp, b - 1));
        if x == y {
            return false;
        }
        comp[x] = y;
    }
    true
}

/// All connected building sets on `[n]` (`n ≤ 4` is practical).
pub fn connected_buildings(n: usize) -> Vec<BuildingSet> {
    let full = full_mask(n);
    let extra: Vec<SubsetMask> = (1..full).filter(|m: &u64| m.count_ones() >= 2).collect();
    let singles: Vec<SubsetMask> = (0..n).map(|i| 1u64 << i).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << extra.len() {
        let members = singles
            .iter()
            .copied()
            .chain(extra.iter().enumerate().filter(|(k, _)| choice >> k & 1 == 1).map(|(_, &m)| m))
            .chain(std::iter::once(full));
        if let Ok(b) = validate_building(n, full, members) {
            out.push(b);
        }
    }
    out.sort_by_key(|b| b.members().to_vec());
    out.dedup();
    out
}

/// Every complete fan of tree-posets on `[n]`.
pub fn complete_tree_fans(n: usize) -> Vec<FanRecord> {
    let posets = tree_posets(n);
    let total: usize = (1..=n).product();
    let exts: Vec<Vec<usize>> = posets
        .iter()
        .map(|q| linear_extensions(q, total as u64).unwrap().iter().map(|w| perm::rank(w)).collect())
        .collect();
    let mut by_building: HashMap<Vec<Poset>, BuildingSet> = HashMap::new();
    for b in connected_buildings(n) {
        let mut ps: Vec<Poset> = enumerate_b_trees(&b).unwrap().iter().map(|t| t.to_poset()).collect();
        ps.sort();
        by_building.entry(ps).or_insert(b);
    }
    let mut covered = vec![false; total];
    let mut chosen: Vec<usize> = Vec::new();
    let mut fans = Vec::new();
    cover(&posets, &exts, &mut covered, &mut chosen, &mut fans);
    fans.into_iter()
        .map(|idx| {
            let mut ps: Vec<Poset> = idx.iter().map(|&i| posets[i].clone()).collect();
            ps.sort();
            let rooted = ps.iter().all(|q| {
                (0..q.n()).filter(|&i| (0..q.n()).all(|j| !q.lt(i, j))).count() == 1
            });
            let building = by_building.get(&ps).cloned();
            FanRecord { posets: ps, rooted, building }
        })
        .collect()
}

fn cover(
    posets: &[Poset],
    exts: &[Vec<usize>],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(first) = covered.iter().position(|&c| !c) else {
        out.push(chosen.clone());
        return;
    };
    for (k, e) in exts.iter().enumerate() {
        if !e.contains(&first) || e.iter().any(|&r| covered[r]) {
            continue;
        }
        if chosen.iter().any(|&c| !properly_intersect(posets[c].as_preposet(), posets[k].as_preposet())) {
            continue;
        }
        for &r in e {
            covered[r] = true;
        }
        chosen.push(k);
        cover(posets, exts, covered, chosen, out);
        chosen.pop();
        for &r in e {
            covered[r] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_three_elements() {
        assert_eq!(tree_posets(3).len(), 12);
        assert_eq!(connected_buildings(3).len(), 8);
        let fans = complete_tree_fans(3);
        assert!(!fans.is_empty());
        // every connected building set on [3] shows up as a fan
        let from_buildings = fans.iter().filter(|f| f.building.is_some()).count();
        assert_eq!(from_buildings, 8);
    }
}
