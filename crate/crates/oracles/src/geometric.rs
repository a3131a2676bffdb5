//! Brute-force geometric oracles, coded without reference to the
//! combinatorial classification paths they check.
//!
//! The arc oracle computes the actual intersection of a plane with a 2-face
//! from edge-crossing geometry; the disjointness oracle solves the
//! two-plane linear system inside the simplex by basic-solution
//! enumeration; the parallelism oracle compares separation patterns from
//! raw plane signs.

use std::collections::BTreeSet;

use cutlab_core::rational::{int, Rational};
use cutlab_core::{AmbientSimplex, Hyperplane};
use num_traits::Zero;

/// What a plane cuts out of a 2-face, classified geometrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleArc {
    /// A segment with both endpoints inside face edges; the partition of
    /// the face vertices by strict side, positive side first.
    Segment {
        positive: BTreeSet<usize>,
        negative: BTreeSet<usize>,
    },
    /// The trace is exactly one face vertex.
    Vertex(usize),
    /// The trace is an edge of the face.
    Edge(BTreeSet<usize>),
    /// One vertex lies on the plane and the plane still crosses the
    /// opposite edge: outside the arc taxonomy.
    SegmentThroughVertex(usize),
    /// The whole 2-face lies inside the plane.
    WholeFace,
}

/// Exact intersection of a plane with a 2-face of the simplex.
///
/// Returns `None` when the trace is empty. Segment endpoints are computed
/// and checked against the plane equation before classification.
pub fn geometric_arc_oracle(
    plane: &Hyperplane,
    ambient: &AmbientSimplex,
    face: [usize; 3],
) -> Option<OracleArc> {
    let values: Vec<Rational> = face
        .iter()
        .map(|&v| plane.vertex_value(v).clone())
        .collect();
    let zeros: Vec<usize> = face
        .iter()
        .enumerate()
        .filter(|(k, _)| values[*k].is_zero())
        .map(|(_, &v)| v)
        .collect();
    let positive: BTreeSet<usize> = face
        .iter()
        .enumerate()
        .filter(|(k, _)| values[*k] > int(0))
        .map(|(_, &v)| v)
        .collect();
    let negative: BTreeSet<usize> = face
        .iter()
        .enumerate()
        .filter(|(k, _)| values[*k] < int(0))
        .map(|(_, &v)| v)
        .collect();
    match zeros.len() {
        3 => Some(OracleArc::WholeFace),
        2 => Some(OracleArc::Edge(zeros.into_iter().collect())),
        1 => {
            if positive.is_empty() || negative.is_empty() {
                Some(OracleArc::Vertex(zeros[0]))
            } else {
                Some(OracleArc::SegmentThroughVertex(zeros[0]))
            }
        }
        _ => {
            if positive.is_empty() || negative.is_empty() {
                return None;
            }
            // Compute the crossing points on the mixed edges and confirm
            // they satisfy the plane equation exactly.
            for &p in &positive {
                for &q in &negative {
                    let fp = plane.vertex_value(p).clone();
                    let fq = plane.vertex_value(q).clone();
                    let t = &fq / (&fq - &fp);
                    let mut point = vec![int(0); ambient.vertex_count()];
                    point[p] = t.clone();
                    point[q] = int(1) - &t;
                    assert!(plane.eval(&point).is_zero(), "crossing point off plane");
                    assert!(point[p] > int(0) && point[q] > int(0), "crossing not interior");
                }
            }
            Some(OracleArc::Segment { positive, negative })
        }
    }
}

/// Unordered separation pattern of an oracle arc, for comparison with the
/// combinatorial classification.
pub fn oracle_partition(arc: &OracleArc) -> Option<(BTreeSet<usize>, BTreeSet<usize>)> {
    match arc {
        OracleArc::Segment { positive, negative } => {
            let (a, b) = if positive.iter().next() < negative.iter().next() {
                (positive.clone(), negative.clone())
            } else {
                (negative.clone(), positive.clone())
            };
            Some((a, b))
        }
        _ => None,
    }
}

/// Exact disjointness of two plane sections inside the simplex by basic
/// feasible solution enumeration.
///
/// The common points form the polytope `{x ≥ 0, Σx = 1, f·x = 0, g·x = 0}`;
/// it is nonempty iff some basic solution with support of size at most
/// three is feasible. Returns `true` when the sections are disjoint.
pub fn disjointness_oracle(f: &Hyperplane, g: &Hyperplane, n: usize) -> bool {
    common_point(f, g, n).is_none()
}

/// A common point of the two sections inside the simplex, if any.
pub fn common_point(f: &Hyperplane, g: &Hyperplane, n: usize) -> Option<Vec<Rational>> {
    let dim = n + 1;
    let supports = support_subsets(dim, 3);
    for support in supports {
        // Solve: sum over support = 1, f = 0, g = 0, on the support.
        let cols = support.len();
        let mut matrix: Vec<Vec<Rational>> = Vec::new();
        matrix.push(vec![int(1); cols]);
        matrix.push(support.iter().map(|&i| f.vertex_value(i).clone()).collect());
        matrix.push(support.iter().map(|&i| g.vertex_value(i).clone()).collect());
        let rhs = [int(1), int(0), int(0)];
        if let Some(solution) = solve_exact(&matrix, &rhs) {
            if solution.iter().all(|x| *x >= int(0)) {
                let mut point = vec![int(0); dim];
                for (k, &i) in support.iter().enumerate() {
                    point[i] = solution[k].clone();
                }
                return Some(point);
            }
        }
    }
    None
}

fn support_subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=max.min(n) {
        let mut current = Vec::with_capacity(size);
        fn rec(
            start: usize,
            n: usize,
            size: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if current.len() == size {
                out.push(current.clone());
                return;
            }
            for i in start..n {
                current.push(i);
                rec(i + 1, n, size, current, out);
                current.pop();
            }
        }
        rec(0, n, size, &mut current, &mut out);
    }
    out
}

/// Least-squares-free exact solve of a (possibly overdetermined but
/// consistent) small system; `None` when inconsistent or underdetermined
/// without a unique solution on the support.
fn solve_exact(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = matrix.len();
    let cols = matrix[0].len();
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let head = aug[r][c].clone();
        for j in c..=cols {
            aug[r][j] = &aug[r][j] / &head;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let factor = aug[i][c].clone();
                for j in c..=cols {
                    let sub = &factor * &aug[r][j];
                    aug[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent?
    for row in aug.iter().skip(r) {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }
    if pivot_cols.len() < cols {
        // Underdetermined on this support: smaller supports cover the
        // vertices of the solution polytope, so skip.
        return None;
    }
    let mut solution = vec![int(0); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        solution[c] = aug[row][cols].clone();
    }
    Some(solution)
}

/// Geometric parallelism of the traces of two planes on a 2-face, straight
/// from the sign patterns of the planes at the face vertices.
///
/// Returns `None` when either trace is empty, fills the whole face, or runs
/// through a vertex with extent (no arc to compare). The caller guarantees
/// the arcs are disjoint.
pub fn parallel_arcs_oracle(
    f: &Hyperplane,
    g: &Hyperplane,
    ambient: &AmbientSimplex,
    face: [usize; 3],
) -> Option<bool> {
    let a = geometric_arc_oracle(f, ambient, face)?;
    let b = geometric_arc_oracle(g, ambient, face)?;
    use OracleArc::*;
    let same_component = |arc: &OracleArc, u: usize, w: usize| -> Option<bool> {
        match arc {
            Segment { positive, .. } => Some(positive.contains(&u) == positive.contains(&w)),
            _ => None,
        }
    };
    let verdict = match (&a, &b) {
        (WholeFace, _) | (_, WholeFace) => return None,
        (SegmentThroughVertex(_), _) | (_, SegmentThroughVertex(_)) => return None,
        (Segment { .. }, Segment { .. }) => {
            let mut agree = true;
            for (u, w) in [(face[0], face[1]), (face[0], face[2]), (face[1], face[2])] {
                if same_component(&a, u, w) != same_component(&b, u, w) {
                    agree = false;
                }
            }
            agree
        }
        (Segment { .. }, Vertex(v)) | (Vertex(v), Segment { .. }) => {
            let seg = if matches!(a, Segment { .. }) { &a } else { &b };
            let others: Vec<usize> = face.iter().copied().filter(|x| x != v).collect();
            // Both other vertices must sit in the component away from v.
            match seg {
                Segment { positive, negative } => {
                    (positive.contains(v)
                        && others.iter().all(|o| negative.contains(o)))
                        || (negative.contains(v)
                            && others.iter().all(|o| positive.contains(o)))
                }
                _ => unreachable!(),
            }
        }
        (Segment { .. }, Edge(e)) | (Edge(e), Segment { .. }) => {
            let seg = if matches!(a, Segment { .. }) { &a } else { &b };
            let lone: usize = *face.iter().find(|v| !e.contains(v)).expect("third vertex");
            match seg {
                Segment { positive, negative } => {
                    (positive.contains(&lone) && e.iter().all(|v| negative.contains(v)))
                        || (negative.contains(&lone)
                            && e.iter().all(|v| positive.contains(v)))
                }
                _ => unreachable!(),
            }
        }
        (Vertex(u), Vertex(w)) => u == w,
        (Edge(e1), Edge(e2)) => e1 == e2,
        (Vertex(_), Edge(_)) | (Edge(_), Vertex(_)) => true,
    };
    Some(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cutlab_core::rat;

    fn plane(coeffs: &[i64], num: i64, den: i64) -> Hyperplane {
        Hyperplane::new(coeffs.iter().map(|&c| int(c)).collect(), rat(num, den)).unwrap()
    }

    #[test]
    fn oracle_arc_examples() {
        let ambient = AmbientSimplex::new(3).unwrap();
        // c = (1,1,0,0), λ = 1/2, face {0,1,2}: segment separating {0,1}.
        let p = plane(&[1, 1, 0, 0], 1, 2);
        match geometric_arc_oracle(&p, &ambient, [0, 1, 2]).unwrap() {
            OracleArc::Segment { positive, negative } => {
                assert_eq!(positive, [0, 1].into_iter().collect());
                assert_eq!(negative, [2].into_iter().collect());
            }
            other => panic!("expected segment, got {other:?}"),
        }
        // c = (1,0,0,0), λ = 1/2 misses the face {1,2,3}.
        let p = plane(&[1, 0, 0, 0], 1, 2);
        assert_eq!(geometric_arc_oracle(&p, &ambient, [1, 2, 3]), None);
        // Through-vertex plane at v0.
        let p = plane(&[0, 1, 1, 1], 0, 1);
        assert_eq!(
            geometric_arc_oracle(&p, &ambient, [0, 1, 2]),
            Some(OracleArc::Vertex(0))
        );
    }

    #[test]
    fn disjointness_oracle_examples() {
        let n = 3;
        assert!(disjointness_oracle(
            &plane(&[1, 0, 0, 0], 3, 4),
            &plane(&[0, 1, 0, 0], 3, 4),
            n
        ));
        assert!(disjointness_oracle(
            &plane(&[1, 0, 0, 0], 1, 4),
            &plane(&[1, 0, 0, 0], 1, 2),
            n
        ));
        let f = plane(&[1, 1, 0, 0], 1, 2);
        let g = plane(&[1, 0, 1, 0], 1, 2);
        assert!(!disjointness_oracle(&f, &g, n));
        let witness = common_point(&f, &g, n).unwrap();
        assert!(f.eval(&witness).is_zero());
        assert!(g.eval(&witness).is_zero());
        assert!(witness.iter().all(|x| *x >= int(0)));
    }

    #[test]
    fn parallel_oracle_examples() {
        let ambient = AmbientSimplex::new(3).unwrap();
        let a = plane(&[1, 0, 0, 0], 1, 4);
        let b = plane(&[1, 0, 0, 0], 1, 2);
        assert_eq!(
            parallel_arcs_oracle(&a, &b, &ambient, [0, 1, 2]),
            Some(true)
        );
        let c = plane(&[1, 1, 0, 0], 1, 2);
        assert_eq!(
            parallel_arcs_oracle(&a, &c, &ambient, [0, 1, 2]),
            Some(false)
        );
        // Degenerate vertex arc against a corner segment separating v0.
        let v0 = plane(&[0, 1, 1, 1], 0, 1);
        assert_eq!(
            parallel_arcs_oracle(&a, &v0, &ambient, [0, 1, 2]),
            Some(true)
        );
    }
}
