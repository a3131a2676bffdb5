//! Exact combinatorics of disjoint hyperplane sections of the standard
//! simplex, their canonical colourings and the D-count dichotomy, together
//! with finite-tree straightening primitives, Lobachevsky-function volume
//! constants, and the guts-inequality evaluators built on them.
//!
//! All geometry is exact rational arithmetic; the volume constants and
//! inequality evaluators are the only floating-point surfaces, and every
//! comparison there carries an explicit tolerance.

pub mod arcs;
pub mod bounds;
pub mod chains;
pub mod colouring;
pub mod dichotomy;
pub mod geometry;
pub mod lobachevsky;
pub mod polytope;
pub mod rational;
pub mod staircase;
pub mod subdivide;
pub mod trees;

pub use arcs::{arc_on_2face, arcs_parallel, Arc, ArcShape};
pub use colouring::{
    check_canonical, enumerate_canonical_colourings, every_section_has_black_side, is_canonical,
    Colour, Colouring,
};
pub use dichotomy::{
    compute_d, corollary1_check, lemma8_witness, reduce_cut_system, triangulate_all,
    white_parallel_pairs, DichotomyReport, LadderVerdict, Lemma8Outcome, Verdict,
};
pub use geometry::{
    classify_section, realize_cut_system, sections_disjoint, types_compatible, AmbientSimplex,
    Classified, CutSystem, GeometryError, Hyperplane, RegionTree, Section, SectionKind,
    SectionType, TypeRelation, VertexHome,
};
pub use rational::{parse_rational, rat, Rational, Sign};
pub use staircase::{staircase_triangulation, TriangulatedSection};
