//! Minimal triangulation of the white regions of a coloured cut system,
//! with the old/new edge classification and its induced 0-1 labeling.
//!
//! Each white region is a convex polytope whose vertices are section
//! polytope vertices plus the ambient vertices it contains. The pulling
//! triangulation from the smallest vertex label introduces no new vertices,
//! and neighbouring cells are glued along shared facets into a chain with
//! cancellations. Old edges are the subarcs of ambient edges; labeling them
//! 1 must always produce an admissible labeling.

use std::collections::{BTreeMap, BTreeSet};

use crate::chains::{
    build_glued_complex, check_admissible, ChainWithCancellations, EdgeLabeling, FaceSlot,
    GluedComplex,
};
use crate::colouring::{check_canonical, CanonicalityError, Colouring};
use crate::dichotomy::{triangulate_all, white_parallel_pairs};
use crate::geometry::CutSystem;
use crate::rational::{int, Rational, Sign};

/// Identity of a subdivision vertex; the ordering doubles as the pulling
/// priority (ambient vertices first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointLabel {
    Ambient(usize),
    SectionPoint {
        section: usize,
        inside: usize,
        outside: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionPoint {
    pub label: PointLabel,
    pub coords: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Contained in an edge of the ambient simplex.
    Old,
    New,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionEdge {
    /// Global point indices, `a < b`.
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionPiece {
    pub region: usize,
    /// Cells as ascending global point indices.
    pub cells: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct NormalSubdivision {
    pub points: Vec<SubdivisionPoint>,
    pub pieces: Vec<RegionPiece>,
    pub edges: Vec<SubdivisionEdge>,
    /// The cells of all pieces glued along shared facets.
    pub complex: GluedComplex,
    /// Old edges labeled 1, new edges 0; vertices flagged when they lie on
    /// the ambient 1-skeleton.
    pub labeling: EdgeLabeling,
}

impl NormalSubdivision {
    pub fn is_admissible(&self) -> bool {
        check_admissible(&self.complex, &self.labeling)
    }

    pub fn old_edges(&self) -> impl Iterator<Item = &SubdivisionEdge> {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Old)
    }

    pub fn cell_count(&self) -> usize {
        self.pieces.iter().map(|p| p.cells.len()).sum()
    }
}

/// Support of a point: the coordinates where it is nonzero. A point lies on
/// the ambient edge (a, b) exactly when its support is inside {a, b}.
fn support(coords: &[Rational]) -> BTreeSet<usize> {
    coords
        .iter()
        .enumerate()
        .filter(|(_, x)| Sign::of(x) != Sign::Zero)
        .map(|(i, _)| i)
        .collect()
}

/// Vertex set of a region's closure: ambient vertices homed there plus all
/// polytope vertices of the incident sections.
fn region_vertex_labels(cut: &CutSystem, region: usize) -> Vec<(PointLabel, Vec<Rational>)> {
    let tree = cut.region_tree();
    let mut seen: BTreeMap<Vec<Rational>, PointLabel> = BTreeMap::new();
    for v in &tree.node(region).vertices {
        seen.insert(cut.ambient().vertex(*v), PointLabel::Ambient(*v));
    }
    for s in tree.incident_sections(region) {
        for pv in cut.section(s).polytope_vertices() {
            let label = PointLabel::SectionPoint {
                section: s,
                inside: pv.inside,
                outside: pv.outside,
            };
            let entry = seen.entry(pv.point.clone()).or_insert(label.clone());
            if label < *entry {
                *entry = label;
            }
        }
    }
    let mut out: Vec<(PointLabel, Vec<Rational>)> =
        seen.into_iter().map(|(coords, label)| (label, coords)).collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Minimal triangulation of one region's closure by the pulling rule, with
/// the smallest vertex label as apex. Returns the region's vertex list in
/// label order and the cells as indices into it.
pub fn triangulate_region(
    cut: &CutSystem,
    region: usize,
) -> (Vec<(PointLabel, Vec<Rational>)>, Vec<Vec<usize>>) {
    let verts = region_vertex_labels(cut, region);
    let coords: Vec<Vec<Rational>> = verts.iter().map(|(_, c)| c.clone()).collect();
    let n = cut.n();
    let mut functionals: Vec<Vec<Rational>> = Vec::new();
    for k in 0..=n {
        let mut f = vec![int(0); n + 1];
        f[k] = int(1);
        functionals.push(f);
    }
    let signs = &cut.region_tree().node(region).signs;
    for s in cut.region_tree().incident_sections(region) {
        let plane = cut.section(s).plane();
        let oriented: Vec<Rational> = match signs[s] {
            Sign::Neg => plane.coeffs().iter().map(|c| -c.clone()).collect(),
            _ => plane.coeffs().to_vec(),
        };
        functionals.push(oriented);
    }
    let cells = crate::polytope::pulling_triangulation(&coords, &functionals);
    (verts, cells)
}

/// Triangulates every white region, classifies all subdivision edges as old
/// or new, glues the cells along shared facets, and attaches the induced
/// 0-1 labeling.
pub fn subdivide_cut_simplex(
    cut: &CutSystem,
    col: &Colouring,
) -> Result<NormalSubdivision, CanonicalityError> {
    check_canonical(cut, col)?;

    // Global point registry across white regions, in label order.
    let mut registry: BTreeMap<Vec<Rational>, PointLabel> = BTreeMap::new();
    let whites: Vec<usize> = col.white_regions().collect();
    let mut local: Vec<(usize, Vec<(PointLabel, Vec<Rational>)>, Vec<Vec<usize>>)> = Vec::new();
    for &region in &whites {
        let (verts, cells) = triangulate_region(cut, region);
        for (label, coords) in &verts {
            let entry = registry
                .entry(coords.clone())
                .or_insert_with(|| label.clone());
            if *label < *entry {
                *entry = label.clone();
            }
        }
        local.push((region, verts, cells));
    }
    let mut points: Vec<SubdivisionPoint> = registry
        .into_iter()
        .map(|(coords, label)| SubdivisionPoint { label, coords })
        .collect();
    points.sort_by(|x, y| x.label.cmp(&y.label));
    let global_index: BTreeMap<Vec<Rational>, usize> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.coords.clone(), i))
        .collect();

    let mut pieces = Vec::new();
    for (region, verts, cells) in local {
        let map: Vec<usize> = verts.iter().map(|(_, c)| global_index[c]).collect();
        let cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|cell| {
                let mut c: Vec<usize> = cell.into_iter().map(|i| map[i]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        pieces.push(RegionPiece { region, cells });
    }

    // Edge inventory with the old/new split.
    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for piece in &pieces {
        for cell in &piece.cells {
            for x in 0..cell.len() {
                for y in x + 1..cell.len() {
                    edge_set.insert((cell[x], cell[y]));
                }
            }
        }
    }
    let edges: Vec<SubdivisionEdge> = edge_set
        .into_iter()
        .map(|(a, b)| {
            let mut union = support(&points[a].coords);
            union.extend(support(&points[b].coords));
            let kind = if union.len() <= 2 {
                EdgeKind::Old
            } else {
                EdgeKind::New
            };
            SubdivisionEdge { a, b, kind }
        })
        .collect();

    // Glue all cells along shared facets.
    let flat_cells: Vec<&Vec<usize>> = pieces.iter().flat_map(|p| p.cells.iter()).collect();
    let n = cut.n();
    let mut facet_owner: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    let mut cancellations: Vec<(FaceSlot, FaceSlot)> = Vec::new();
    for (ci, cell) in flat_cells.iter().enumerate() {
        for omit in 0..cell.len() {
            let facet: Vec<usize> = cell
                .iter()
                .enumerate()
                .filter(|(p, _)| *p != omit)
                .map(|(_, &v)| v)
                .collect();
            match facet_owner.get(&facet) {
                None => {
                    facet_owner.insert(facet, (ci, omit));
                }
                Some(&(cj, other)) => {
                    cancellations.push((
                        FaceSlot {
                            simplex: cj,
                            face: other,
                        },
                        FaceSlot {
                            simplex: ci,
                            face: omit,
                        },
                    ));
                }
            }
        }
    }
    let cancelled: BTreeSet<FaceSlot> = cancellations
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect();
    let boundary_selection: Vec<FaceSlot> = (0..flat_cells.len())
        .flat_map(|simplex| (0..=n).map(move |face| FaceSlot { simplex, face }))
        .filter(|slot| !cancelled.contains(slot))
        .collect();
    let chain = ChainWithCancellations {
        dim: n,
        coefficients: vec![int(1); flat_cells.len()],
        cancellations,
        boundary_selection,
    };
    let complex = build_glued_complex(&chain).expect("facet gluings never collide");

    // Induced labeling: old edges 1, new edges 0; a vertex is flagged when
    // it lies on the ambient 1-skeleton.
    let edge_kind: BTreeMap<(usize, usize), EdgeKind> =
        edges.iter().map(|e| ((e.a, e.b), e.kind)).collect();
    let labels: Vec<u8> = complex
        .edges
        .iter()
        .map(|class| {
            let (cell, (p, q)) = class.slots[0];
            let (a, b) = (flat_cells[cell][p], flat_cells[cell][q]);
            match edge_kind[&(a.min(b), a.max(b))] {
                EdgeKind::Old => 1,
                EdgeKind::New => 0,
            }
        })
        .collect();
    let on_boundary: Vec<bool> = complex
        .vertices
        .iter()
        .map(|class| {
            let (cell, p) = class[0];
            support(&points[flat_cells[cell][p]].coords).len() <= 2
        })
        .collect();
    let labeling = EdgeLabeling { labels, on_boundary };

    Ok(NormalSubdivision {
        points,
        pieces,
        edges,
        complex,
        labeling,
    })
}

/// The boundary cells surviving the dichotomy count: triangulation cells
/// with no white-parallel partner on any other section, as (section, cell)
/// pairs. Their number equals the D-total, so it never exceeds n+1 when the
/// dichotomy holds.
pub fn survivor_filter(
    cut: &CutSystem,
    col: &Colouring,
) -> Result<Vec<(usize, usize)>, CanonicalityError> {
    let tris = triangulate_all(cut);
    let pairs = white_parallel_pairs(cut, col, &tris)?;
    let mut partnered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in &pairs {
        partnered.insert((p.first.section, p.first.cell));
        partnered.insert((p.second.section, p.second.cell));
    }
    let mut survivors = Vec::new();
    for (s, tri) in tris.iter().enumerate() {
        for c in 0..tri.cells.len() {
            if !partnered.contains(&(s, c)) {
                survivors.push((s, c));
            }
        }
    }
    Ok(survivors)
}
