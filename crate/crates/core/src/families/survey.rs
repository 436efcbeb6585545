//! γ-vectors of graph-associahedra over all unlabelled trees on `n` nodes,
//! compared componentwise, alongside degree sequences and Wiener indices.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{graph_h_polynomial, wiener_index, FamilyError};
use crate::buildset::Graph;
use crate::poly::gamma_from_h;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Equal,
    Less,
    Greater,
    Incomparable,
}

fn compare(a: &[BigInt], b: &[BigInt]) -> Comparison {
    let zero = BigInt::from(0);
    let len = a.len().max(b.len());
    let (mut le, mut ge) = (true, true);
    for i in 0..len {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        match x.cmp(y) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
    }
    match (le, ge) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => Comparison::Incomparable,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    /// Parenthesis code of the tree rooted at its centre.
    pub code: String,
    /// Degrees in decreasing order, one digit each.
    pub degree_sequence: String,
    pub wiener: u64,
    #[serde(serialize_with = "crate::report::serialize_bigints")]
    pub gamma: Vec<BigInt>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeSurvey {
    pub n: usize,
    pub rows: Vec<SurveyRow>,
    /// `matrix[i][j]` compares the γ-vectors of rows `i` and `j`.
    pub matrix: Vec<Vec<Comparison>>,
    pub path_is_unique_min: bool,
    pub star_is_unique_max: bool,
    pub incomparable_pairs: Vec<(usize, usize)>,
}

impl TreeSurvey {
    pub fn to_csv(&self) -> String {
        let k = self.rows.iter().map(|r| r.gamma.len()).max().unwrap_or(0);
        let mut out = String::from("tree_code,degree_sequence,wiener");
        for i in 0..k {
            out.push_str(&format!(",gamma_{i}"));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{}", r.code, r.degree_sequence, r.wiener));
            for i in 0..k {
                match r.gamma.get(i) {
                    Some(g) => out.push_str(&format!(",{g}")),
                    None => out.push_str(",0"),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Rooted code of the subtree at `v`, children's codes sorted.
fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&u| u != parent).map(|&u| rooted_code(adj, u, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
}

fn free_code(adj: &[Vec<usize>]) -> String {
    centres(adj).into_iter().map(|c| rooted_code(adj, c, usize::MAX)).min().unwrap()
}

/// Edge lists (1-based) of all unlabelled trees on `n` nodes, one per
/// isomorphism class, keyed by canonical code. Built by attaching a leaf
/// to every node of every tree on `n - 1` nodes.
pub fn unlabelled_trees(n: usize) -> BTreeMap<String, Vec<(usize, usize)>> {
    let mut level: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    level.insert("()".into(), Vec::new());
    for m in 2..=n {
        let mut next = BTreeMap::new();
        for edges in level.values() {
            for v in 1..m {
                let mut e = edges.clone();
                e.push((v, m));
                next.entry(free_code(&adjacency(m, &e))).or_insert(e);
            }
        }
        level = next;
    }
    if n == 0 {
        level.clear();
    }
    level
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a - 1].push(b - 1);
        adj[b - 1].push(a - 1);
    }
    adj
}

pub fn tree_gamma_survey(n: usize) -> Result<TreeSurvey, FamilyError> {
    if !(4..=9).contains(&n) {
        return Err(FamilyError::SurveyRange(n));
    }
    let trees: Vec<(String, Vec<(usize, usize)>)> = unlabelled_trees(n).into_iter().collect();
    let rows: Vec<SurveyRow> = trees
        .into_par_iter()
        .map(|(code, edges)| -> Result<SurveyRow, FamilyError> {
            let g = Graph::from_edges(n, &edges)?;
            let h = graph_h_polynomial(&g)?;
            let gamma = gamma_from_h(&h, n - 1).map_err(|e| FamilyError::Nest(e.into()))?.coeffs();
            let mut degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            let degree_sequence = degs.iter().map(|d| d.to_string()).collect();
            Ok(SurveyRow { code, degree_sequence, wiener: wiener_index(&g)?, gamma, edges })
        })
        .collect::<Result<_, _>>()?;
    let matrix: Vec<Vec<Comparison>> =
        rows.iter().map(|a| rows.iter().map(|b| compare(&a.gamma, &b.gamma)).collect()).collect();
    let max_degree = |r: &SurveyRow| r.degree_sequence.chars().next().and_then(|c| c.to_digit(10)).unwrap_or(0) as usize;
    let path = rows.iter().position(|r| max_degree(r) <= 2).unwrap();
    let star = rows.iter().position(|r| max_degree(r) == n - 1).unwrap();
    let unique = |i: usize, want: Comparison| (0..rows.len()).all(|j| j == i || matrix[i][j] == want);
    let incomparable_pairs = (0..rows.len())
        .flat_map(|i| (i + 1..rows.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| matrix[i][j] == Comparison::Incomparable)
        .collect();
    Ok(TreeSurvey {
        n,
        path_is_unique_min: unique(path, Comparison::Less),
        star_is_unique_max: unique(star, Comparison::Greater),
        incomparable_pairs,
        matrix,
        rows,
    })
}
