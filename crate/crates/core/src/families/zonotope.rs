//! Graphic zonotopes. `Z_G` is simple exactly when every block of `G` is a
//! complete graph, and then it is a product of permutohedra.

use serde::Serialize;

use crate::buildset::{labels, Graph};
use crate::poly::{eulerian_polynomial, f_from_h, gamma_from_h, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZonotopeFaces {
    Simple { f: IntPolynomial, h: IntPolynomial, gamma: IntPolynomial },
    /// A block that is not a complete graph, as 1-based labels.
    NotSimple { block: Vec<usize> },
}

pub fn zonotope_face_polys(g: &Graph) -> ZonotopeFaces {
    let blocks = g.blocks();
    if let Some(&bad) = blocks.iter().find(|&&m| !g.is_complete_on(m)) {
        return ZonotopeFaces::NotSimple { block: labels(bad) };
    }
    let mut h = IntPolynomial::one();
    let mut gamma = IntPolynomial::one();
    let mut d = 0;
    for m in blocks {
        let k = m.count_ones() as usize;
        let a = eulerian_polynomial(k);
        gamma = &gamma * &gamma_from_h(&a, k - 1).expect("Eulerian polynomials are palindromic").gamma;
        h = &h * &a;
        d += k - 1;
    }
    let f = f_from_h(&h, d).expect("degree fits the dimension");
    ZonotopeFaces::Simple { f, h, gamma }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle_graph, path_graph};
    use crate::poly;

    #[test]
    fn hexagonal_prism() {
        let g = Graph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (1, 4)]).unwrap();
        assert_eq!(
            zonotope_face_polys(&g),
            ZonotopeFaces::Simple { f: poly![12, 18, 8, 1], h: poly![1, 5, 5, 1], gamma: poly![1, 2] }
        );
    }

    #[test]
    fn complete_and_cycle() {
        match zonotope_face_polys(&complete_graph(5)) {
            ZonotopeFaces::Simple { h, gamma, .. } => {
                assert_eq!(h, eulerian_polynomial(5));
                assert_eq!(gamma, gamma_from_h(&h, 4).unwrap().gamma);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(zonotope_face_polys(&cycle_graph(4)), ZonotopeFaces::NotSimple { block: vec![1, 2, 3, 4] });
    }

    #[test]
    fn path_gives_a_cube() {
        match zonotope_face_polys(&path_graph(4)) {
            ZonotopeFaces::Simple { f, h, gamma } => {
                assert_eq!(h, poly![1, 3, 3, 1]);
                assert_eq!(f, poly![8, 12, 6, 1]);
                assert_eq!(gamma, poly![1]);
            }
            other => panic!("{other:?}"),
        }
    }
}
