//! Arcs: traces of sections on 2-dimensional faces of the simplex, and the
//! parallelism relation between them.
//!
//! An arc either cuts the face properly (nondegenerate), is a single vertex,
//! or lies inside an edge of the face. Two disjoint arcs on the same face
//! are parallel when they induce the same separation pattern on the face's
//! three vertices; the degenerate combinations each have their own rule.

use std::collections::BTreeSet;
use std::fmt;

use crate::geometry::{Section, SectionKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcShape {
    /// The arc separates `separated` from the rest of the face; `separated`
    /// is the part of the face on the same side as vertex 0 of the section's
    /// type.
    Nondegenerate { separated: BTreeSet<usize> },
    /// The arc is a single vertex of the face.
    DegenerateVertex(usize),
    /// The arc is an edge of the face (face sections only).
    FaceEdge(BTreeSet<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub face: [usize; 3],
    pub section_index: usize,
    pub shape: ArcShape,
}

impl Arc {
    /// The two parts of the face split by a nondegenerate arc, as an
    /// unordered partition.
    fn partition(&self) -> Option<(BTreeSet<usize>, BTreeSet<usize>)> {
        match &self.shape {
            ArcShape::Nondegenerate { separated } => {
                let rest: BTreeSet<usize> = self
                    .face
                    .iter()
                    .copied()
                    .filter(|v| !separated.contains(v))
                    .collect();
                Some((separated.clone(), rest))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "section {} on face {:?}: {:?}",
            self.section_index, self.face, self.shape
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceMismatch {
    pub first: [usize; 3],
    pub second: [usize; 3],
}

impl fmt::Display for FaceMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "arcs live on different faces: {:?} vs {:?}",
            self.first, self.second
        )
    }
}

impl std::error::Error for FaceMismatch {}

/// Trace of a section on a 2-face, from the type data alone.
///
/// Returns `None` when the section misses the face or covers the whole
/// 2-simplex (a whole face is not an arc).
pub fn arc_on_2face(section: &Section, section_index: usize, face: [usize; 3]) -> Option<Arc> {
    debug_assert!(face[0] < face[1] && face[1] < face[2]);
    match section.kind() {
        SectionKind::Generic => {
            let inter = section.section_type().intersect_face(&face);
            if inter.is_empty() || inter.len() == 3 {
                return None;
            }
            Some(Arc {
                face,
                section_index,
                shape: ArcShape::Nondegenerate { separated: inter },
            })
        }
        SectionKind::ThroughVertex(j) => {
            if face.contains(&j) {
                Some(Arc {
                    face,
                    section_index,
                    shape: ArcShape::DegenerateVertex(j),
                })
            } else {
                None
            }
        }
        SectionKind::Face(j) => {
            if face.contains(&j) {
                let edge: BTreeSet<usize> =
                    face.iter().copied().filter(|&v| v != j).collect();
                Some(Arc {
                    face,
                    section_index,
                    shape: ArcShape::FaceEdge(edge),
                })
            } else {
                // The whole 2-face lies inside the section.
                None
            }
        }
    }
}

/// Parallelism of two disjoint arcs on a common face.
///
/// The six cases: matching nondegenerate partitions; a nondegenerate arc
/// against a face edge it runs along; a nondegenerate arc against a vertex
/// it cuts off; equal vertices; equal face edges; and a vertex paired with a
/// face edge. Disjointness of the arcs is the caller's precondition.
pub fn arcs_parallel(a1: &Arc, a2: &Arc) -> Result<bool, FaceMismatch> {
    if a1.face != a2.face {
        return Err(FaceMismatch {
            first: a1.face,
            second: a2.face,
        });
    }
    use ArcShape::*;
    let parallel = match (&a1.shape, &a2.shape) {
        (Nondegenerate { .. }, Nondegenerate { .. }) => {
            let (p1, q1) = a1.partition().unwrap();
            let (p2, q2) = a2.partition().unwrap();
            (p1 == p2 && q1 == q2) || (p1 == q2 && q1 == p2)
        }
        (Nondegenerate { .. }, FaceEdge(edge)) | (FaceEdge(edge), Nondegenerate { .. }) => {
            let nd = if matches!(a1.shape, Nondegenerate { .. }) {
                a1
            } else {
                a2
            };
            let (p, q) = nd.partition().unwrap();
            p == *edge || q == *edge
        }
        (Nondegenerate { .. }, DegenerateVertex(v)) | (DegenerateVertex(v), Nondegenerate { .. }) => {
            let nd = if matches!(a1.shape, Nondegenerate { .. }) {
                a1
            } else {
                a2
            };
            let (p, q) = nd.partition().unwrap();
            (p.len() == 1 && p.contains(v)) || (q.len() == 1 && q.contains(v))
        }
        (DegenerateVertex(v1), DegenerateVertex(v2)) => v1 == v2,
        (FaceEdge(e1), FaceEdge(e2)) => e1 == e2,
        (DegenerateVertex(_), FaceEdge(_)) | (FaceEdge(_), DegenerateVertex(_)) => true,
    };
    Ok(parallel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{classify_section, AmbientSimplex, Classified, Hyperplane};
    use crate::rational::{int, rat};

    fn section(coeffs: &[i64], level: (i64, i64), n: usize) -> Section {
        let plane = Hyperplane::new(
            coeffs.iter().map(|&c| int(c)).collect(),
            rat(level.0, level.1),
        )
        .unwrap();
        match classify_section(&plane, &AmbientSimplex::new(n).unwrap()).unwrap() {
            Classified::Section(s) => s,
            Classified::Empty => panic!("expected section"),
        }
    }

    fn nd(face: [usize; 3], separated: &[usize], idx: usize) -> Arc {
        Arc {
            face,
            section_index: idx,
            shape: ArcShape::Nondegenerate {
                separated: separated.iter().copied().collect(),
            },
        }
    }

    #[test]
    fn arc_from_type_intersection() {
        let s = section(&[1, 1, 0, 0], (1, 2), 3);
        let a = arc_on_2face(&s, 0, [0, 1, 2]).unwrap();
        assert_eq!(
            a.shape,
            ArcShape::Nondegenerate {
                separated: [0, 1].into_iter().collect()
            }
        );
        // Type {0} misses the face {1,2,3}.
        let s = section(&[1, 0, 0, 0], (1, 2), 3);
        assert!(arc_on_2face(&s, 0, [1, 2, 3]).is_none());
        // Degenerate vertex arc.
        let s = section(&[0, 1, 1, 1], (0, 1), 3);
        let a = arc_on_2face(&s, 0, [0, 1, 2]).unwrap();
        assert_eq!(a.shape, ArcShape::DegenerateVertex(0));
        assert!(arc_on_2face(&s, 0, [1, 2, 3]).is_none());
    }

    #[test]
    fn face_section_arcs() {
        let s = section(&[1, 0, 0, 0], (0, 1), 3); // the face opposite vertex 0
        let a = arc_on_2face(&s, 0, [0, 1, 2]).unwrap();
        assert_eq!(a.shape, ArcShape::FaceEdge([1, 2].into_iter().collect()));
        assert!(arc_on_2face(&s, 0, [1, 2, 3]).is_none());
    }

    #[test]
    fn parallel_same_partition() {
        let a = nd([0, 1, 2], &[0], 0);
        let b = nd([0, 1, 2], &[0], 1);
        assert!(arcs_parallel(&a, &b).unwrap());
        // Opposite orientation of the same partition still counts.
        let c = nd([0, 1, 2], &[1, 2], 2);
        assert!(arcs_parallel(&a, &c).unwrap());
    }

    #[test]
    fn not_parallel_different_partition() {
        let a = nd([0, 1, 2], &[0], 0);
        let b = nd([0, 1, 2], &[0, 1], 1);
        assert!(!arcs_parallel(&a, &b).unwrap());
    }

    #[test]
    fn degenerate_cases() {
        let a = nd([0, 1, 2], &[0], 0);
        let v0 = Arc {
            face: [0, 1, 2],
            section_index: 1,
            shape: ArcShape::DegenerateVertex(0),
        };
        let v1 = Arc {
            face: [0, 1, 2],
            section_index: 1,
            shape: ArcShape::DegenerateVertex(1),
        };
        assert!(arcs_parallel(&a, &v0).unwrap());
        assert!(!arcs_parallel(&a, &v1).unwrap());
        let edge12 = Arc {
            face: [0, 1, 2],
            section_index: 2,
            shape: ArcShape::FaceEdge([1, 2].into_iter().collect()),
        };
        // {0} | {1,2} runs along the edge {1,2}.
        assert!(arcs_parallel(&a, &edge12).unwrap());
        // Vertex against face edge is always parallel.
        assert!(arcs_parallel(&v0, &edge12).unwrap());
        assert!(arcs_parallel(&v1, &edge12).unwrap());
        // Equal degenerates and equal face edges.
        assert!(arcs_parallel(&v0, &v0.clone()).unwrap());
        assert!(arcs_parallel(&edge12, &edge12.clone()).unwrap());
        assert!(!arcs_parallel(&v0, &v1).unwrap());
    }

    #[test]
    fn face_mismatch_is_an_error() {
        let a = nd([0, 1, 2], &[0], 0);
        let b = nd([0, 1, 3], &[0], 1);
        assert!(arcs_parallel(&a, &b).is_err());
    }

    #[test]
    fn symmetric() {
        let shapes = [
            nd([0, 1, 2], &[0], 0),
            nd([0, 1, 2], &[1, 2], 1),
            nd([0, 1, 2], &[2], 2),
            Arc {
                face: [0, 1, 2],
                section_index: 3,
                shape: ArcShape::DegenerateVertex(2),
            },
            Arc {
                face: [0, 1, 2],
                section_index: 4,
                shape: ArcShape::FaceEdge([0, 1].into_iter().collect()),
            },
        ];
        for x in &shapes {
            for y in &shapes {
                assert_eq!(
                    arcs_parallel(x, y).unwrap(),
                    arcs_parallel(y, x).unwrap(),
                    "{x} vs {y}"
                );
            }
        }
    }
}
