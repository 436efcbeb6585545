//! Exact face numbers of nestohedra and graph-associahedra.
//!
//! Building sets live in [`buildset`], their nested set complexes and the
//! B-tree descent formula in [`nestcplx`], and γ-vectors of chordal
//! nestohedra in [`gamma`]. Posets and complete fans of posets are in
//! [`preposet`]; exact polynomials and truncated series in [`poly`] and
//! [`series`]; named examples, generating functions and the tree survey in
//! [`families`].

pub mod buildset;
pub mod caps;
pub mod families;
pub mod gamma;
pub mod nestcplx;
pub mod perm;
pub mod poly;
pub mod preposet;
pub mod report;
pub mod series;

pub use buildset::{graphical_building, BuildingSet, Graph, SubsetMask};
pub use caps::Caps;
pub use poly::{GammaVector, IntPolynomial};
pub use report::FaceReport;
