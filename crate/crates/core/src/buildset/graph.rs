//! Simple graphs on at most 64 labelled nodes, stored as adjacency bitmasks.

use std::collections::{HashSet, VecDeque};

use serde::Deserialize;
use thiserror::Error;

use super::{bits, elements, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node label {0} out of range 1..={1}")]
    LabelOutOfRange(usize, usize),
    #[error("loop at node {0}")]
    Loop(usize),
    #[error("at most 64 nodes are supported, got {0}")]
    TooManyNodes(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Nodes are `1..=n` in the public API and bits `0..n` internally. A graph may
/// live on a subset `vertices` of `[n]`, as produced by contraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    vertices: SubsetMask,
    adj: Vec<SubsetMask>,
}

#[derive(Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > 64 {
            return Err(GraphError::TooManyNodes(n));
        }
        Ok(Graph { n, vertices: super::full_mask(n), adj: vec![0; n] })
    }

    /// Build from 1-based edges. Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(GraphError::LabelOutOfRange(v, n));
                }
            }
            if i == j {
                return Err(GraphError::Loop(i));
            }
            g.add_edge(i - 1, j - 1);
        }
        Ok(g)
    }

    /// `{"n": N, "edges": [[i, j], ...]}`
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let g: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        Self::from_edges(g.n, &g.edges)
    }

    /// One edge `i j` per line; `#` starts a comment. A line holding a single
    /// integer declares the node count, otherwise it is the largest label seen.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| GraphError::Parse(format!("line {}: bad integer {s:?}", lineno + 1))))
                .collect::<Result<_, _>>()?;
            match nums.as_slice() {
                [n] => declared = Some(*n),
                [i, j] => edges.push((*i, *j)),
                _ => return Err(GraphError::Parse(format!("line {}: expected `i j`", lineno + 1))),
            }
        }
        let n = declared.unwrap_or_else(|| edges.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0));
        Self::from_edges(n, &edges)
    }

    /// JSON if the text starts with `{`, an edge list otherwise.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_edge_list(text)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> SubsetMask {
        self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.count_ones() as usize
    }

    /// 0-based.
    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i != j {
            self.adj[i] |= 1 << j;
            self.adj[j] |= 1 << i;
        }
    }

    /// 0-based.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    /// Neighbourhood of a 0-based node.
    pub fn neighbors(&self, v: usize) -> SubsetMask {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges as 1-based pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in elements(self.vertices) {
            for j in elements(self.adj[i]) {
                if i < j {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    /// Nodes reachable from the lowest node of `mask` inside `mask`.
    fn reach(&self, mask: SubsetMask) -> SubsetMask {
        if mask == 0 {
            return 0;
        }
        let mut seen = mask & mask.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in elements(frontier) {
                next |= self.adj[v];
            }
            next &= mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected_on(&self, mask: SubsetMask) -> bool {
        mask != 0 && self.reach(mask) == mask
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.vertices)
    }

    /// Connected components of the induced subgraph on `mask`, ordered by least node.
    pub fn components_of(&self, mut mask: SubsetMask) -> Vec<SubsetMask> {
        let mut out = Vec::new();
        while mask != 0 {
            let c = self.reach(mask);
            out.push(c);
            mask &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<SubsetMask> {
        self.components_of(self.vertices)
    }

    /// All nonempty node sets inducing a connected subgraph, grown one
    /// neighbour at a time from each node.
    pub fn connected_subsets(&self) -> Vec<SubsetMask> {
        let mut seen: HashSet<SubsetMask> = HashSet::new();
        let mut queue: VecDeque<SubsetMask> = VecDeque::new();
        for v in elements(self.vertices) {
            let m = 1u64 << v;
            if seen.insert(m) {
                queue.push_back(m);
            }
        }
        while let Some(m) = queue.pop_front() {
            let mut boundary = 0;
            for v in elements(m) {
                boundary |= self.adj[v];
            }
            boundary &= self.vertices & !m;
            for v in elements(boundary) {
                let m2 = m | 1 << v;
                if seen.insert(m2) {
                    queue.push_back(m2);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Induced subgraph on `mask` (labels kept).
    pub fn induced(&self, mask: SubsetMask) -> Graph {
        let mut g = self.clone();
        g.vertices &= mask;
        for v in 0..self.n {
            g.adj[v] = if g.vertices >> v & 1 == 1 { self.adj[v] & g.vertices } else { 0 };
        }
        g
    }

    /// `G/I` on `S \ I`: `i ~ j` if adjacent in `G` or both adjacent to `I`.
    pub fn contract(&self, i_mask: SubsetMask) -> Graph {
        let rest = self.vertices & !i_mask;
        let mut g = self.induced(rest);
        let touching: Vec<usize> = elements(rest).filter(|&v| self.adj[v] & i_mask != 0).collect();
        for (a, &u) in touching.iter().enumerate() {
            for &v in &touching[a + 1..] {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Relabel by `perm`, a 0-based map old → new on `[n]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph { n: self.n, vertices: 0, adj: vec![0; self.n] };
        for v in elements(self.vertices) {
            g.vertices |= 1 << perm[v];
            for u in elements(self.adj[v]) {
                g.adj[perm[v]] |= 1 << perm[u];
            }
        }
        g
    }

    /// A triple `i < j < k` (1-based) with `ij, ik ∈ E` but `jk ∉ E`, if any.
    /// The graph is perfectly labelled exactly when there is none.
    pub fn imperfect_triple(&self) -> Option<(usize, usize, usize)> {
        for i in elements(self.vertices) {
            let up: Vec<usize> = elements(self.adj[i]).filter(|&j| j > i).collect();
            for (a, &j) in up.iter().enumerate() {
                for &k in &up[a + 1..] {
                    if !self.has_edge(j, k) {
                        return Some((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        None
    }

    pub fn is_perfectly_labelled(&self) -> bool {
        self.imperfect_triple().is_none()
    }

    /// A perfect elimination ordering (0-based nodes, eliminated first to last)
    /// by maximum cardinality search, or `None` if the graph is not chordal.
    pub fn perfect_elimination_order(&self) -> Option<Vec<usize>> {
        let nodes: Vec<usize> = elements(self.vertices).collect();
        let mut weight = vec![0usize; self.n];
        let mut visited: SubsetMask = 0;
        let mut order = Vec::with_capacity(nodes.len());
        for _ in 0..nodes.len() {
            let v = *nodes
                .iter()
                .filter(|&&v| visited >> v & 1 == 0)
                .max_by_key(|&&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            visited |= 1 << v;
            order.push(v);
            for u in elements(self.adj[v] & !visited) {
                weight[u] += 1;
            }
        }
        order.reverse();
        let mut pos = vec![0; self.n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        for &v in &order {
            let later: Vec<usize> = elements(self.adj[v]).filter(|&u| pos[u] > pos[v]).collect();
            if let Some(&first) = later.iter().min_by_key(|&&u| pos[u]) {
                let rest = bits(later.iter().copied()) & !(1 << first);
                if rest & !self.adj[first] != 0 {
                    return None;
                }
            }
        }
        Some(order)
    }

    /// A relabelling (0-based old → new) under which a chordal graph becomes
    /// perfectly labelled. Never applied implicitly.
    pub fn perfect_labelling(&self) -> Option<Vec<usize>> {
        let order = self.perfect_elimination_order()?;
        let mut perm: Vec<usize> = (0..self.n).collect();
        let vs: Vec<usize> = elements(self.vertices).collect();
        for (p, &v) in order.iter().enumerate() {
            perm[v] = vs[p];
        }
        Some(perm)
    }

    /// BFS distances from a 0-based node; `None` for unreachable nodes.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for u in elements(self.adj[v]) {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Line graph; node `e` is the `e`-th edge of [`Graph::edges`].
    pub fn line_graph(&self) -> Result<Graph, GraphError> {
        let edges = self.edges();
        let mut g = Graph::empty(edges.len())?;
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                let (p, q) = edges[a];
                let (r, s) = edges[b];
                if p == r || p == s || q == r || q == s {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Node sets of the blocks (biconnected components and bridges).
    /// Isolated nodes form no block.
    pub fn blocks(&self) -> Vec<SubsetMask> {
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut time = 0;
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut out = Vec::new();
        for root in elements(self.vertices) {
            if disc[root] == usize::MAX {
                self.block_dfs(root, usize::MAX, &mut disc, &mut low, &mut time, &mut stack, &mut out);
            }
        }
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn block_dfs(
        &self,
        v: usize,
        parent: usize,
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        stack: &mut Vec<(usize, usize)>,
        out: &mut Vec<SubsetMask>,
    ) {
        disc[v] = *time;
        low[v] = *time;
        *time += 1;
        for u in elements(self.adj[v]) {
            if disc[u] == usize::MAX {
                stack.push((v, u));
                self.block_dfs(u, v, disc, low, time, stack, out);
                low[v] = low[v].min(low[u]);
                if low[u] >= disc[v] {
                    let mut block = 0;
                    while let Some((a, b)) = stack.pop() {
                        block |= 1 << a | 1 << b;
                        if (a, b) == (v, u) {
                            break;
                        }
                    }
                    out.push(block);
                }
            } else if u != parent && disc[u] < disc[v] {
                stack.push((v, u));
                low[v] = low[v].min(disc[u]);
            }
        }
    }

    pub fn is_complete_on(&self, mask: SubsetMask) -> bool {
        elements(mask).all(|v| self.adj[v] & mask == mask & !(1 << v))
    }

    pub fn is_forest(&self) -> bool {
        self.num_edges() + self.components().len() == self.num_vertices()
    }
}
