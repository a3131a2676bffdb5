//! White-parallel arc pairs, the per-section counts `D_i`, the ladder
//! classification, and the pair-removal reduction.
//!
//! `D_i` counts the cells of section `i`'s triangulation with no
//! white-parallel partner on any other section. The dichotomy under test
//! states that the total is either 0 or `n+1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::arcs::{arc_on_2face, arcs_parallel, Arc};
use crate::colouring::{check_canonical, Colour, Colouring};
use crate::geometry::{CutSystem, GeometryError, Section, SectionType};
use crate::rational::{int, Rational};
use crate::staircase::{staircase_triangulation, TriangulatedSection};

/// One member of a white-parallel pair: a cell of a section together with
/// the arc realizing the parallelism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSide {
    pub section: usize,
    pub cell: usize,
    pub arc: Arc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteParallelPair {
    pub first: PairSide,
    pub second: PairSide,
    pub white_region: usize,
}

/// Staircase triangulations for every section of a system.
pub fn triangulate_all(cut: &CutSystem) -> Vec<TriangulatedSection> {
    cut.sections()
        .iter()
        .enumerate()
        .map(|(i, s)| staircase_triangulation(s.section_type(), cut.n(), i))
        .collect()
}

/// A reference point on an arc: the midpoint of a nondegenerate arc, the
/// vertex of a degenerate one, the edge midpoint of a face edge.
fn arc_reference_point(cut: &CutSystem, arc: &Arc) -> Vec<Rational> {
    let section = cut.section(arc.section_index);
    let face = arc.face;
    match &arc.shape {
        crate::arcs::ArcShape::Nondegenerate { separated } => {
            // Endpoints of the arc are the plane's crossings with the two
            // face edges joining the separated part to the rest.
            let inside: Vec<usize> = separated.iter().copied().collect();
            let outside: Vec<usize> = face
                .iter()
                .copied()
                .filter(|v| !separated.contains(v))
                .collect();
            let mut endpoints = Vec::new();
            for &i in &inside {
                for &j in &outside {
                    let (a, b) = if section.section_type().contains(i) {
                        (i, j)
                    } else {
                        (j, i)
                    };
                    if let Some(v) = section.polytope_vertex((a, b)) {
                        endpoints.push(v.point.clone());
                    }
                }
            }
            debug_assert_eq!(endpoints.len(), 2, "nondegenerate arc has two endpoints");
            average(&endpoints)
        }
        crate::arcs::ArcShape::DegenerateVertex(v) => cut.ambient().vertex(*v),
        crate::arcs::ArcShape::FaceEdge(edge) => {
            let points: Vec<Vec<Rational>> =
                edge.iter().map(|&v| cut.ambient().vertex(v)).collect();
            average(&points)
        }
    }
}

fn average(points: &[Vec<Rational>]) -> Vec<Rational> {
    let count = int(points.len() as i64);
    let dim = points[0].len();
    let mut acc = vec![int(0); dim];
    for p in points {
        for (a, x) in acc.iter_mut().zip(p) {
            *a += x;
        }
    }
    acc.into_iter().map(|a| a / &count).collect()
}

/// Decides whether two parallel arcs bound the closure of the same white
/// region: the exact midpoint between the arcs is located by its sign
/// vector, and the region found must be white and incident to both sections.
fn white_parallel_region(cut: &CutSystem, col: &Colouring, a1: &Arc, a2: &Arc) -> Option<usize> {
    let p1 = arc_reference_point(cut, a1);
    let p2 = arc_reference_point(cut, a2);
    let midpoint: Vec<Rational> = p1
        .iter()
        .zip(&p2)
        .map(|(x, y)| (x + y) / int(2))
        .collect();
    // A zero sign means some section passes between the arcs.
    let region = cut.region_of_point(&midpoint)?;
    let tree = cut.region_tree();
    let (a, b) = tree.section_sides(a1.section_index);
    let (c, d) = tree.section_sides(a2.section_index);
    let incident_both = (region == a || region == b) && (region == c || region == d);
    if incident_both && col.colour(region) == Colour::White {
        Some(region)
    } else {
        None
    }
}

/// All white-parallel pairs at cell granularity, between distinct sections.
///
/// Same-section cells trace the same arc on any face, and parallelism is a
/// relation between disjoint arcs, so partners are only sought on other
/// sections.
pub fn white_parallel_pairs(
    cut: &CutSystem,
    col: &Colouring,
    tris: &[TriangulatedSection],
) -> Result<Vec<WhiteParallelPair>, crate::colouring::CanonicalityError> {
    check_canonical(cut, col)?;
    let mut pairs = Vec::new();
    for face in cut.ambient().two_faces() {
        for i in 0..cut.sections().len() {
            let Some(arc_i) = arc_on_2face(cut.section(i), i, face) else {
                continue;
            };
            for j in i + 1..cut.sections().len() {
                let Some(arc_j) = arc_on_2face(cut.section(j), j, face) else {
                    continue;
                };
                if !arcs_parallel(&arc_i, &arc_j).expect("same face") {
                    continue;
                }
                let Some(white) = white_parallel_region(cut, col, &arc_i, &arc_j) else {
                    continue;
                };
                for ci in cells_carrying_arc(&tris[i], cut.section(i), &arc_i) {
                    for cj in cells_carrying_arc(&tris[j], cut.section(j), &arc_j) {
                        pairs.push(WhiteParallelPair {
                            first: PairSide {
                                section: i,
                                cell: ci,
                                arc: arc_i.clone(),
                            },
                            second: PairSide {
                                section: j,
                                cell: cj,
                                arc: arc_j.clone(),
                            },
                            white_region: white,
                        });
                    }
                }
            }
        }
    }
    Ok(pairs)
}

/// Cells whose exterior edges realize the given arc.
///
/// A nondegenerate arc on a face is the polytope edge joining the two
/// crossing labels; a degenerate arc belongs to the single degenerate cell.
fn cells_carrying_arc(tri: &TriangulatedSection, section: &Section, arc: &Arc) -> Vec<usize> {
    match &arc.shape {
        crate::arcs::ArcShape::Nondegenerate { separated } => {
            let face = arc.face;
            let inside: Vec<usize> = separated.iter().copied().collect();
            let outside: Vec<usize> = face
                .iter()
                .copied()
                .filter(|v| !separated.contains(v))
                .collect();
            let mut labels = Vec::new();
            for &i in &inside {
                for &j in &outside {
                    let label = if section.section_type().contains(i) {
                        (i, j)
                    } else {
                        (j, i)
                    };
                    labels.push(label);
                }
            }
            debug_assert_eq!(labels.len(), 2);
            tri.cells_with_edge(labels[0], labels[1])
        }
        _ => (0..tri.cells.len()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated {
        total: usize,
        allowed: [usize; 2],
        survivors: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub per_section: Vec<usize>,
    pub total: usize,
    pub verdict: Verdict,
    /// Cells with no white-parallel partner, as (section, cell) pairs.
    pub survivors: Vec<(usize, usize)>,
}

impl fmt::Display for DichotomyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D = {:?}, total {} ({})",
            self.per_section,
            self.total,
            match self.verdict {
                Verdict::Holds => "holds",
                Verdict::Violated { .. } => "VIOLATED",
            }
        )
    }
}

/// Computes `D_i` for every section over the fixed staircase triangulations
/// and checks the `{0, n+1}` dichotomy.
pub fn compute_d(
    cut: &CutSystem,
    col: &Colouring,
) -> Result<DichotomyReport, crate::colouring::CanonicalityError> {
    let tris = triangulate_all(cut);
    let pairs = white_parallel_pairs(cut, col, &tris)?;
    let mut partnered: Vec<Vec<bool>> = tris
        .iter()
        .map(|t| vec![false; t.cells.len()])
        .collect();
    for p in &pairs {
        partnered[p.first.section][p.first.cell] = true;
        partnered[p.second.section][p.second.cell] = true;
    }
    let per_section: Vec<usize> = partnered
        .iter()
        .map(|cells| cells.iter().filter(|x| !**x).count())
        .collect();
    let survivors: Vec<(usize, usize)> = partnered
        .iter()
        .enumerate()
        .flat_map(|(s, cells)| {
            cells
                .iter()
                .enumerate()
                .filter(|(_, x)| !**x)
                .map(move |(c, _)| (s, c))
        })
        .collect();
    let total = per_section.iter().sum();
    let n = cut.n();
    let verdict = if total == 0 || total == n + 1 {
        Verdict::Holds
    } else {
        Verdict::Violated {
            total,
            allowed: [0, n + 1],
            survivors: survivors.clone(),
        }
    };
    Ok(DichotomyReport {
        per_section,
        total,
        verdict,
        survivors,
    })
}

/// Outcome of the Lemma 8 check for a pair of sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lemma8Outcome {
    Intersecting,
    /// The lexicographically smallest 2-face on which the two sections trace
    /// parallel arcs.
    ParallelArcWitness { face: [usize; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreconditionViolated {
    pub type_size: usize,
    pub n: usize,
}

impl fmt::Display for PreconditionViolated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "first section must have type size between 2 and n-1, got {} for n = {}",
            self.type_size, self.n
        )
    }
}

impl std::error::Error for PreconditionViolated {}

/// For a first section of middle type, either the sections intersect or some
/// 2-face carries a parallel arc pair; returns the smallest such face.
pub fn lemma8_witness(
    s1: &Section,
    s2: &Section,
    n: usize,
) -> Result<Lemma8Outcome, PreconditionViolated> {
    let size = s1.section_type().size();
    if size < 2 || size > n - 1 {
        return Err(PreconditionViolated { type_size: size, n });
    }
    if !crate::geometry::sections_disjoint(s1, s2) {
        return Ok(Lemma8Outcome::Intersecting);
    }
    let ambient = crate::geometry::AmbientSimplex::new(n).expect("n >= 2");
    for face in ambient.two_faces() {
        let (Some(a1), Some(a2)) = (
            arc_on_2face(s1, 0, face),
            arc_on_2face(s2, 1, face),
        ) else {
            continue;
        };
        if arcs_parallel(&a1, &a2).expect("same face") {
            return Ok(Lemma8Outcome::ParallelArcWitness { face });
        }
    }
    unreachable!("disjoint sections with a middle-type first section always share a parallel arc")
}

/// Outcome of the ladder classification for systems without white-parallel
/// pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LadderVerdict {
    /// Some pair of distinct sections has a white-parallel arc.
    NotApplicable { pair: (usize, usize) },
    /// No sections at all.
    LadderOfSize0,
    /// Exactly n+1 sections realizing the corner ladder of types.
    LadderOfSize { size: usize },
    /// The pair-free hypothesis holds but the section family is not the
    /// ladder; carries the observed type multiset.
    Violation { types: Vec<SectionType> },
}

/// Checks that a system without white-parallel pairs is empty or the exact
/// corner ladder `{0}`, `{0,1,…,i−2,i,…,n}` for `i = 2..n`, `{0,…,n−1}`.
pub fn corollary1_check(
    cut: &CutSystem,
    col: &Colouring,
) -> Result<LadderVerdict, crate::colouring::CanonicalityError> {
    let tris = triangulate_all(cut);
    let pairs = white_parallel_pairs(cut, col, &tris)?;
    if let Some(p) = pairs.first() {
        return Ok(LadderVerdict::NotApplicable {
            pair: (p.first.section, p.second.section),
        });
    }
    let m = cut.sections().len();
    if m == 0 {
        return Ok(LadderVerdict::LadderOfSize0);
    }
    let n = cut.n();
    let mut observed: Vec<SectionType> = cut
        .sections()
        .iter()
        .map(|s| s.section_type().clone())
        .collect();
    observed.sort();
    let mut expected: Vec<SectionType> = Vec::new();
    expected.push(SectionType::new([0], n).expect("valid"));
    for i in 1..=n {
        // The type cutting off vertex i: every index except i.
        let members: BTreeSet<usize> = (0..=n).filter(|&v| v != i).collect();
        expected.push(SectionType::new(members, n).expect("valid"));
    }
    expected.sort();
    if m == n + 1 && observed == expected {
        Ok(LadderVerdict::LadderOfSize { size: m })
    } else {
        Ok(LadderVerdict::Violation { types: observed })
    }
}

/// One step of the same-type pair removal, if an eligible pair exists.
///
/// A pair is removable when the two sections have equal types, bound a
/// common white region, and the two outer regions carry the same colour, so
/// the merged region has an unambiguous colour. Mixed outer colours are
/// skipped: merging them would force a colour that either paints a vertex
/// region white or starves another section, and the removal would no longer
/// preserve the D-total.
fn removable_pair(cut: &CutSystem, col: &Colouring) -> Option<(usize, usize, usize)> {
    let tree = cut.region_tree();
    let m = cut.sections().len();
    for i in 0..m {
        for j in i + 1..m {
            if cut.section(i).section_type() != cut.section(j).section_type() {
                continue;
            }
            let Some(shared) = tree.common_region(i, j) else {
                continue;
            };
            if col.colour(shared) != Colour::White {
                continue;
            }
            let (a, b) = tree.section_sides(i);
            let outer_i = if a == shared { b } else { a };
            let (c, d) = tree.section_sides(j);
            let outer_j = if c == shared { d } else { c };
            if col.colour(outer_i) == col.colour(outer_j) {
                return Some((i, j, shared));
            }
        }
    }
    None
}

/// Repeatedly removes same-type section pairs bounding a common white
/// region, merging the three affected regions into one carrying the shared
/// outer colour. Terminates because each step removes two sections.
pub fn reduce_cut_system(
    cut: &CutSystem,
    col: &Colouring,
) -> Result<(CutSystem, Colouring), GeometryError> {
    let mut cut = cut.clone();
    let mut col = col.clone();
    while let Some((i, j, shared)) = removable_pair(&cut, &col) {
        let tree = cut.region_tree();
        let (a, b) = tree.section_sides(i);
        let outer_i = if a == shared { b } else { a };
        let merged_colour = col.colour(outer_i);

        let keep: Vec<usize> = (0..cut.sections().len())
            .filter(|&s| s != i && s != j)
            .collect();
        let sections: Vec<Section> = keep.iter().map(|&s| cut.section(s).clone()).collect();
        let next = CutSystem::new(cut.ambient().clone(), sections)?;

        // Regions of the reduced system match the old ones by dropping the
        // two removed sign coordinates; the merged trio collapses onto one
        // reduced vector.
        let mut colours = vec![Colour::Black; next.region_tree().node_count()];
        for (r_new, node) in next.region_tree().nodes().iter().enumerate() {
            let matching_old: Vec<usize> = cut
                .region_tree()
                .nodes()
                .iter()
                .enumerate()
                .filter(|(_, old)| {
                    keep.iter()
                        .enumerate()
                        .all(|(pos, &s_old)| old.signs[s_old] == node.signs[pos])
                })
                .map(|(r_old, _)| r_old)
                .collect();
            let is_merged = matching_old.len() > 1;
            colours[r_new] = if is_merged {
                merged_colour
            } else {
                col.colour(matching_old[0])
            };
        }
        cut = next;
        col = Colouring::new(colours);
    }
    Ok((cut, col))
}
