//! Named graph and building-set families, generating-function engines, the
//! g-polynomials of path-like graphs, graphic zonotopes and the tree survey.

mod genfun;
mod gpoly;
mod survey;
mod zonotope;

use thiserror::Error;

use crate::buildset::{full_mask, graphical_building, BuildError, BuildingSet, Graph, GraphError, SubsetMask};
use crate::nestcplx::NestError;
use crate::series::SeriesError;

pub use genfun::{fa_fh_ft_series, fa_series, narayana_series, t_series};
pub use gpoly::{g_polynomial, graph_h_polynomial, GPolynomial};
pub use survey::{tree_gamma_survey, unlabelled_trees, Comparison, SurveyRow, TreeSurvey};
pub use zonotope::{zonotope_face_polys, ZonotopeFaces};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameters for {0}: {1}")]
    BadParams(String, String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("linear system for the g-polynomial is inconsistent: {0}")]
    SystemInconsistent(String),
    #[error("survey needs 4 <= n <= 9, got {0}")]
    SurveyRange(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Nest(#[from] NestError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// What a named family produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyObject {
    Graph(Graph),
    Building(BuildingSet),
}

impl FamilyObject {
    pub fn building(&self) -> Result<BuildingSet, FamilyError> {
        match self {
            FamilyObject::Graph(g) => Ok(graphical_building(g)?),
            FamilyObject::Building(b) => Ok(b.clone()),
        }
    }

    pub fn graph(&self) -> Option<&Graph> {
        match self {
            FamilyObject::Graph(g) => Some(g),
            FamilyObject::Building(_) => None,
        }
    }
}

fn bad(name: &str, why: impl Into<String>) -> FamilyError {
    FamilyError::BadParams(name.to_string(), why.into())
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("family edges are valid")
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    graph(n, &edges)
}

pub fn cycle_graph(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    if n >= 3 {
        edges.push((1, n));
    }
    graph(n, &edges)
}

pub fn complete_graph(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    graph(n, &edges)
}

/// `K_{1,m}` with the centre labelled `m + 1`.
pub fn star_graph(m: usize) -> Graph {
    let edges: Vec<_> = (1..=m).map(|i| (i, m + 1)).collect();
    graph(m + 1, &edges)
}

/// `T_{a_1..a_k}`: chains of `a_i` nodes on one central node. Chain `i` gets
/// the labels after those of chains `1..i`, increasing towards the centre,
/// which is labelled `n = Σa_i + 1`.
pub fn branched_tree(a: &[usize]) -> Graph {
    let n = a.iter().sum::<usize>() + 1;
    let mut edges = Vec::new();
    let mut s = 0;
    for &len in a {
        for v in s + 1..s + len {
            edges.push((v, v + 1));
        }
        if len > 0 {
            edges.push((s + len, n));
        }
        s += len;
    }
    graph(n, &edges)
}

/// Hedgehog `H_{a_1..a_k}`: chains of `a_i` nodes whose first nodes form a
/// clique. Empty chains are dropped; `None` if nothing is left.
pub fn hedgehog(a: &[usize]) -> Option<Graph> {
    let n: usize = a.iter().sum();
    if n == 0 {
        return None;
    }
    let mut edges = Vec::new();
    let mut firsts = Vec::new();
    let mut s = 0;
    for &len in a.iter().filter(|&&l| l > 0) {
        firsts.push(s + 1);
        for v in s + 1..s + len {
            edges.push((v, v + 1));
        }
        s += len;
    }
    for (i, &u) in firsts.iter().enumerate() {
        for &v in &firsts[i + 1..] {
            edges.push((u, v));
        }
    }
    Some(graph(n, &edges))
}

/// `Daisy_{n,k} = T_{n-k-1, 1^k}`.
pub fn daisy(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if n < k + 2 {
        return Err(bad("daisy", format!("need n >= k + 2, got n={n}, k={k}")));
    }
    let mut a = vec![n - k - 1];
    a.extend(std::iter::repeat(1).take(k));
    Ok(branched_tree(&a))
}

/// `Kite_{n,k} = H_{n-k+1, 1^{k-1}}`.
pub fn kite(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if k < 1 || n < k {
        return Err(bad("kite", format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let mut a = vec![n - k + 1];
    a.extend(std::iter::repeat(1).take(k - 1));
    Ok(hedgehog(&a).unwrap())
}

/// A graph with a distinguished 1-based node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub mark: usize,
}

impl MarkedGraph {
    pub fn new(graph: Graph, mark: usize) -> Self {
        MarkedGraph { graph, mark }
    }

    pub fn point() -> Self {
        MarkedGraph::new(path_graph(1), 1)
    }

    /// Nodes other than the mark.
    pub fn unmarked(&self) -> usize {
        self.graph.num_vertices() - 1
    }
}

/// `G_n`: `A` and `B` joined by a path on `n - n_0` nodes whose ends are the
/// two marked nodes (identified when the path has one node). `A` takes the
/// first labels, then the path interior, then `B`.
pub fn path_like(a: &MarkedGraph, b: &MarkedGraph, n: usize) -> Result<Graph, FamilyError> {
    let n0 = a.unmarked() + b.unmarked();
    if n <= n0 {
        return Err(bad("path_like", format!("need n > {n0}, got {n}")));
    }
    let len = n - n0;
    let na = a.graph.n();
    let mut edges: Vec<(usize, usize)> = a.graph.edges();
    // path: mark of A, interior nodes na+1.., then the mark of B
    let mut next = na + 1;
    let mut end = a.mark;
    for _ in 1..len {
        edges.push((end, next));
        end = next;
        next += 1;
    }
    let mut map_b = vec![0; b.graph.n() + 1];
    for v in 1..=b.graph.n() {
        if v == b.mark {
            map_b[v] = end;
        } else {
            map_b[v] = next;
            next += 1;
        }
    }
    edges.extend(b.graph.edges().into_iter().map(|(u, v)| (map_b[u], map_b[v])));
    debug_assert_eq!(next - 1, n);
    Ok(Graph::from_edges(n, &edges)?)
}

/// Stanley–Pitman building set `{[i, n]} ∪ {{i}}`.
pub fn stanley_pitman(n: usize) -> BuildingSet {
    let mut members: Vec<SubsetMask> = (0..n).map(|i| 1u64 << i).collect();
    members.extend((0..n).map(|i| full_mask(n) & !full_mask(i)));
    crate::buildset::validate_building(n, full_mask(n), members).unwrap()
}

/// A plane binary tree; its leaves are labelled `1..` from left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneBinaryTree {
    Leaf,
    Node(Box<PlaneBinaryTree>, Box<PlaneBinaryTree>),
}

impl PlaneBinaryTree {
    pub fn leaves(&self) -> usize {
        match self {
            PlaneBinaryTree::Leaf => 1,
            PlaneBinaryTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// As balanced as possible, the larger half on the left.
    pub fn balanced(n: usize) -> Self {
        if n <= 1 {
            PlaneBinaryTree::Leaf
        } else {
            let left = n.div_ceil(2);
            PlaneBinaryTree::Node(Box::new(Self::balanced(left)), Box::new(Self::balanced(n - left)))
        }
    }

    /// Leaf sets of all nodes, the leaves numbered from `first` (0-based).
    fn node_sets(&self, first: usize, out: &mut Vec<SubsetMask>) -> SubsetMask {
        let m = match self {
            PlaneBinaryTree::Leaf => 1u64 << first,
            PlaneBinaryTree::Node(l, r) => {
                let lm = l.node_sets(first, out);
                lm | r.node_sets(first + l.leaves(), out)
            }
        };
        out.push(m);
        m
    }
}

/// All plane binary trees with `n` leaves (Catalan many).
pub fn plane_binary_trees(n: usize) -> Vec<PlaneBinaryTree> {
    if n == 1 {
        return vec![PlaneBinaryTree::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in plane_binary_trees(k) {
            for r in plane_binary_trees(n - k) {
                out.push(PlaneBinaryTree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// `B_τ`: the leaf sets of all nodes of `τ`.
pub fn binary_tree_building(tau: &PlaneBinaryTree) -> BuildingSet {
    let n = tau.leaves();
    let mut sets = Vec::new();
    tau.node_sets(0, &mut sets);
    crate::buildset::validate_building(n, full_mask(n), sets).unwrap()
}

/// Look up a family by name. Parameters:
/// `path:n`, `cycle:n`, `complete:n`, `star:m` (`K_{1,m}`), `daisy:n,k`,
/// `kite:n,k`, `dynkinD:n`, `affineD:n` (`D̃_{n-1}` on `n` nodes),
/// `binaryTreeCube:n` (balanced tree), `stanleyPitman:n`, and also
/// `branched:a_1,..,a_k` and `hedgehog:a_1,..,a_k`.
pub fn named_family(name: &str, params: &[usize]) -> Result<FamilyObject, FamilyError> {
    let one = |min: usize| -> Result<usize, FamilyError> {
        match params {
            [n] if *n >= min => Ok(*n),
            _ => Err(bad(name, format!("expected one integer >= {min}"))),
        }
    };
    let two = || -> Result<(usize, usize), FamilyError> {
        match params {
            [n, k] => Ok((*n, *k)),
            _ => Err(bad(name, "expected two integers n,k")),
        }
    };
    Ok(match name {
        "path" => FamilyObject::Graph(path_graph(one(1)?)),
        "cycle" => FamilyObject::Graph(cycle_graph(one(3)?)),
        "complete" => FamilyObject::Graph(complete_graph(one(1)?)),
        "star" => FamilyObject::Graph(star_graph(one(1)?)),
        "daisy" => {
            let (n, k) = two()?;
            FamilyObject::Graph(daisy(n, k)?)
        }
        "kite" => {
            let (n, k) = two()?;
            FamilyObject::Graph(kite(n, k)?)
        }
        "dynkinD" => FamilyObject::Graph(daisy(one(4)?, 2)?),
        "affineD" => {
            let n = one(5)?;
            let a = MarkedGraph::new(path_graph(3), 2);
            FamilyObject::Graph(path_like(&a, &a, n)?)
        }
        "binaryTreeCube" => FamilyObject::Building(binary_tree_building(&PlaneBinaryTree::balanced(one(1)?))),
        "stanleyPitman" => FamilyObject::Building(stanley_pitman(one(1)?)),
        "branched" | "T" => {
            if params.is_empty() {
                return Err(bad(name, "expected chain lengths"));
            }
            FamilyObject::Graph(branched_tree(params))
        }
        "hedgehog" | "H" => match hedgehog(params) {
            Some(g) => FamilyObject::Graph(g),
            None => return Err(bad(name, "all chains are empty")),
        },
        _ => return Err(FamilyError::UnknownFamily(name.to_string())),
    })
}

/// Parse `NAME:P1,P2,...`.
pub fn parse_family(spec: &str) -> Result<FamilyObject, FamilyError> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params: Vec<usize> = rest
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| bad(name, format!("bad integer {s:?}"))))
        .collect::<Result<_, _>>()?;
    named_family(name.trim(), &params)
}

/// `Σ_{i<j} d(i, j)`.
pub fn wiener_index(g: &Graph) -> Result<u64, FamilyError> {
    if !g.is_connected() {
        return Err(FamilyError::Disconnected);
    }
    let nodes: Vec<usize> = crate::buildset::elements(g.vertices()).collect();
    let mut total = 0u64;
    for &s in &nodes {
        let d = g.distances_from(s);
        total += nodes.iter().filter(|&&v| v > s).map(|&v| d[v].unwrap() as u64).sum::<u64>();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let p = named_family("path", &[4]).unwrap();
        assert_eq!(p.graph().unwrap().edges(), vec![(1, 2), (2, 3), (3, 4)]);
        let sp = named_family("stanleyPitman", &[3]).unwrap().building().unwrap();
        assert_eq!(sp.member_labels(), vec![vec![1], vec![2], vec![3], vec![2, 3], vec![1, 2, 3]]);
        assert!(matches!(named_family("nope", &[1]), Err(FamilyError::UnknownFamily(_))));
        assert!(matches!(parse_family("path:x"), Err(FamilyError::BadParams(..))));
        assert!(parse_family("daisy:5,2").is_ok());
    }

    #[test]
    fn dynkin_d5_shape() {
        let g = daisy(5, 2).unwrap();
        let mut degs: Vec<usize> = (0..5).map(|v| g.degree(v)).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 1, 2, 3]);
        assert_eq!(g.num_edges(), 4);
    }

    #[test]
    fn branched_tree_labels_increase_to_centre() {
        let g = branched_tree(&[2, 1]);
        assert_eq!(g.edges(), vec![(1, 2), (2, 4), (3, 4)]);
        assert_eq!(branched_tree(&[0, 3]), path_graph(4).relabel(&[0, 1, 2, 3]));
    }

    #[test]
    fn hedgehog_shapes() {
        assert_eq!(hedgehog(&[1, 1]).unwrap().edges(), vec![(1, 2)]);
        assert_eq!(hedgehog(&[2, 0, 1]).unwrap().edges(), vec![(1, 2), (1, 3)]);
        assert!(hedgehog(&[0, 0]).is_none());
        let k = kite(5, 3).unwrap();
        assert_eq!(k.num_edges(), 3 + 2);
    }

    #[test]
    fn path_like_sizes() {
        let a = MarkedGraph::new(path_graph(3), 2);
        for n in 5..9 {
            let g = path_like(&a, &a, n).unwrap();
            assert_eq!(g.n(), n);
            assert!(g.is_connected() && g.is_forest());
        }
        let star = path_like(&a, &a, 5).unwrap();
        assert_eq!((0..5).map(|v| star.degree(v)).max(), Some(4));
        let p = path_like(&MarkedGraph::point(), &MarkedGraph::point(), 4).unwrap();
        assert_eq!(p.num_edges(), 3);
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener_index(&path_graph(7)).unwrap(), 56);
        assert_eq!(wiener_index(&star_graph(6)).unwrap(), 36);
        assert_eq!(wiener_index(&complete_graph(5)).unwrap(), 10);
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(wiener_index(&g), Err(FamilyError::Disconnected));
    }

    #[test]
    fn binary_tree_buildings() {
        assert_eq!(plane_binary_trees(4).len(), 5);
        let b = binary_tree_building(&PlaneBinaryTree::balanced(4));
        assert_eq!(b.len(), 7);
        assert!(b.is_flag() && b.is_connected());
    }
}
