//! Black/white colourings of the complementary regions of a cut system.
//!
//! A colouring is canonical when every region holding an ambient vertex is
//! black and every section still touches at least one white region. White
//! regions model the complement of the lamination, black regions the
//! lamination itself.

use std::fmt;

use crate::geometry::CutSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Colour {
    Black,
    White,
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colour::Black => write!(f, "black"),
            Colour::White => write!(f, "white"),
        }
    }
}

/// A colour per region node, indexed like the region tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    colours: Vec<Colour>,
}

impl Colouring {
    pub fn new(colours: Vec<Colour>) -> Self {
        Colouring { colours }
    }

    pub fn colour(&self, region: usize) -> Colour {
        self.colours[region]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn is_white(&self, region: usize) -> bool {
        self.colours[region] == Colour::White
    }

    pub fn white_regions(&self) -> impl Iterator<Item = usize> + '_ {
        self.colours
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Colour::White)
            .map(|(r, _)| r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalityError {
    WrongLength { expected: usize, got: usize },
    VertexRegionWhite { region: usize },
    SectionStarved { section: usize },
}

impl fmt::Display for CanonicalityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalityError::WrongLength { expected, got } => {
                write!(f, "colouring has {got} entries, expected {expected}")
            }
            CanonicalityError::VertexRegionWhite { region } => {
                write!(f, "region {region} holds an ambient vertex but is white")
            }
            CanonicalityError::SectionStarved { section } => {
                write!(f, "section {section} touches no white region")
            }
        }
    }
}

impl std::error::Error for CanonicalityError {}

/// Checks the canonical-colouring conditions.
pub fn check_canonical(cut: &CutSystem, col: &Colouring) -> Result<(), CanonicalityError> {
    let tree = cut.region_tree();
    if col.colours().len() != tree.node_count() {
        return Err(CanonicalityError::WrongLength {
            expected: tree.node_count(),
            got: col.colours().len(),
        });
    }
    for (r, node) in tree.nodes().iter().enumerate() {
        if !node.vertices.is_empty() && col.is_white(r) {
            return Err(CanonicalityError::VertexRegionWhite { region: r });
        }
    }
    for s in 0..cut.sections().len() {
        let (a, b) = tree.section_sides(s);
        if !col.is_white(a) && !col.is_white(b) {
            return Err(CanonicalityError::SectionStarved { section: s });
        }
    }
    Ok(())
}

pub fn is_canonical(cut: &CutSystem, col: &Colouring) -> bool {
    check_canonical(cut, col).is_ok()
}

/// Every section is incident to at least one black region. Colourings pulled
/// back from laminations without isolated leaves always satisfy this; the
/// canonical-colouring conditions alone do not imply it.
pub fn every_section_has_black_side(cut: &CutSystem, col: &Colouring) -> bool {
    let tree = cut.region_tree();
    (0..cut.sections().len()).all(|s| {
        let (a, b) = tree.section_sides(s);
        !col.is_white(a) || !col.is_white(b)
    })
}

/// All canonical colourings of a cut system, in a deterministic order.
///
/// Vertex regions are forced black; the remaining regions run through all
/// black/white assignments (white = set bit, ascending masks) and are kept
/// when every section touches a white region. The list is empty exactly when
/// no canonical colouring exists.
pub fn enumerate_canonical_colourings(cut: &CutSystem) -> Vec<Colouring> {
    let tree = cut.region_tree();
    let free: Vec<usize> = tree
        .nodes()
        .iter()
        .enumerate()
        .filter(|(_, node)| node.vertices.is_empty())
        .map(|(r, _)| r)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut colours = vec![Colour::Black; tree.node_count()];
        for (bit, &r) in free.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                colours[r] = Colour::White;
            }
        }
        let col = Colouring::new(colours);
        if is_canonical(cut, &col) {
            out.push(col);
        }
    }
    out
}
