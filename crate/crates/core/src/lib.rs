//! Dendritic face complexes and positive opetopes.
//!
//! A [`FaceComplex`] is a graded set of faces where each face of positive
//! dimension has one target and a nonempty set of sources. On top of it the
//! crate checks two axiom systems that single out the same complexes:
//!
//! * [`is_positive_opetope`]: globularity, strictness, disjointness, pencil
//!   linearity and principality;
//! * [`is_dfc`]: a greatest element, oriented thinness and acyclicity.
//!
//! It also derives certificates from that structure (rooted trees on source
//! sets, zig-zags, the order on points, the sources partition), enumerates
//! small complexes up to isomorphism, and reads and writes a small DSL, JSON
//! and DOT.
//!
//! ```
//! use opetope_kit::{builders::two_cell, is_dfc, is_positive_opetope};
//!
//! let c = two_cell(2).unwrap();
//! assert!(is_dfc(&c).passed());
//! assert!(is_positive_opetope(&c).passed());
//! ```

pub mod builders;
pub mod canon;
pub mod complex;
pub mod dfc;
pub mod enumerate;
pub mod io;
pub mod morphism;
pub mod paths;
pub mod relations;
pub mod report;
pub mod tree;
pub mod zpo;

pub use complex::{
    build_complex, from_hypergraph_view, to_hypergraph_view, ComplexBuilder, ComplexError, FaceComplex,
    HypergraphView, InvalidComplex, QueryError, Sign,
};
pub use dfc::{
    check_acyclicity, check_greatest_element, check_oriented_thinness, complete_half_lozenge, face_tree,
    greatest_element, is_dfc, Lozenge, LozengeError, TreeError,
};
pub use morphism::{all_morphisms, validate_morphism, Morphism, MorphismError};
pub use report::{Axiom, AxiomReport, Violation};
pub use tree::{validate_rooted_tree, RootedTree, Triplet};
pub use zpo::{
    check_disjointness, check_globularity, check_pencil_linearity, check_principality, check_strictness,
    is_opetopic_cardinal, is_positive_opetope,
};
