//! Exact affine toolkit: ranks, determinants, and pulling triangulations of
//! convex polytopes given by their vertices and facet-carrying functionals.
//!
//! Points live in the carrier plane `E` of the ambient simplex (coordinate
//! vectors of length n+1 summing to 1). A functional is a linear form given
//! by its coefficient vector. The functional list handed to the
//! triangulation must contain a carrier for every facet, oriented so the
//! polytope sits on the nonnegative side; every face of every face is then
//! the minimum set of some listed functional.

use num_traits::Zero;

use crate::rational::{int, Rational};

/// Rank of a matrix over the rationals, by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, |row| row.len());
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let head = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &head;
            for j in c..cols {
                let sub = &factor * &rows[r][j];
                rows[i][j] -= sub;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Affine dimension of a point set (−1 for the empty set, 0 for a point).
pub fn affine_dim(points: &[&[Rational]]) -> isize {
    match points.split_first() {
        None => -1,
        Some((base, rest)) => {
            let rows: Vec<Vec<Rational>> = rest
                .iter()
                .map(|p| p.iter().zip(base.iter()).map(|(x, b)| x - b).collect())
                .collect();
            rank(rows) as isize
        }
    }
}

/// Determinant over the rationals.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = int(1);
    for c in 0..n {
        let Some(pivot) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return int(0);
        };
        if pivot != c {
            m.swap(c, pivot);
            det = -det;
        }
        let head = m[c][c].clone();
        det *= &head;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &head;
            for j in c..n {
                let sub = &factor * &m[c][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}

/// Exact volume of a d-simplex inside `E`, in the chart dropping the last
/// coordinate (the ambient n-simplex itself has chart volume `1/n!`).
pub fn simplex_chart_volume(points: &[&[Rational]]) -> Rational {
    let d = points.len() - 1;
    let base = points[0];
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| (0..d).map(|j| &p[j] - &base[j]).collect())
        .collect();
    let det = determinant(rows);
    let mut fact = int(1);
    for k in 2..=d {
        fact *= int(k as i64);
    }
    let vol = det / fact;
    if vol < int(0) {
        -vol
    } else {
        vol
    }
}

fn eval(functional: &[Rational], point: &[Rational]) -> Rational {
    functional
        .iter()
        .zip(point)
        .fold(Rational::zero(), |acc, (c, x)| acc + c * x)
}

/// Pulling triangulation of a polytope.
///
/// `vertices` must be sorted by the caller's label priority; the pulling
/// apex of every face is its lowest-index vertex, so the result is fully
/// determined by the vertex order. Returns cells as sorted index vectors
/// into `vertices`.
pub fn pulling_triangulation(
    vertices: &[Vec<Rational>],
    functionals: &[Vec<Rational>],
) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..vertices.len()).collect();
    let refs: Vec<&[Rational]> = vertices.iter().map(|v| v.as_slice()).collect();
    let dim = affine_dim(&refs);
    assert!(dim >= 0, "polytope has at least one vertex");
    let mut cells = pull(&all, dim as usize, vertices, functionals);
    for cell in &mut cells {
        cell.sort_unstable();
    }
    cells.sort();
    cells
}

fn pull(
    face: &[usize],
    dim: usize,
    vertices: &[Vec<Rational>],
    functionals: &[Vec<Rational>],
) -> Vec<Vec<usize>> {
    if face.len() == dim + 1 {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    // The minimum set of a linear functional over a face is a face of it;
    // carriers of all polytope facets generate the whole face lattice this
    // way. Distinct functionals can carve the same facet, so dedup.
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for h in functionals {
        let min = face
            .iter()
            .map(|&i| eval(h, &vertices[i]))
            .min()
            .expect("nonempty face");
        let on: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&i| eval(h, &vertices[i]) == min)
            .collect();
        if on.len() == face.len() || on.contains(&apex) {
            continue;
        }
        let refs: Vec<&[Rational]> = on.iter().map(|&i| vertices[i].as_slice()).collect();
        if affine_dim(&refs) == dim as isize - 1 && !facets.contains(&on) {
            facets.push(on);
        }
    }
    let mut cells = Vec::new();
    for facet in facets {
        for sub in pull(&facet, dim - 1, vertices, functionals) {
            let mut cell = Vec::with_capacity(sub.len() + 1);
            cell.push(apex);
            cell.extend(sub);
            cells.push(cell);
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pts(raw: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
        raw.iter()
            .map(|p| p.iter().map(|&(a, b)| rat(a, b)).collect())
            .collect()
    }

    #[test]
    fn rank_and_affine_dim() {
        let pts = pts(&[
            &[(1, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1)],
        ]);
        let refs: Vec<&[Rational]> = pts.iter().map(|v| v.as_slice()).collect();
        assert_eq!(affine_dim(&refs), 2);
        assert_eq!(affine_dim(&refs[..2]), 1);
        assert_eq!(affine_dim(&refs[..1]), 0);
        assert_eq!(affine_dim(&[]), -1);
    }

    #[test]
    fn determinant_examples() {
        let m = vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]];
        assert_eq!(determinant(m), rat(6, 1));
        let singular = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert_eq!(determinant(singular), rat(0, 1));
    }

    #[test]
    fn triangulates_a_square() {
        // The square {x ≤ 1/2, y ≤ 1/2} cut from the triangle x+y+z = 1.
        let vertices = pts(&[
            &[(0, 1), (0, 1), (1, 1)],
            &[(0, 1), (1, 2), (1, 2)],
            &[(1, 2), (0, 1), (1, 2)],
            &[(1, 2), (1, 2), (0, 1)],
        ]);
        // Carriers oriented so the square is on the nonnegative side.
        let functionals = vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(-1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(-1, 1), rat(0, 1)],
        ];
        let cells = pulling_triangulation(&vertices, &functionals);
        assert_eq!(cells.len(), 2);
        assert!(cells.iter().all(|c| c.contains(&0)));
        let total: Rational = cells
            .iter()
            .map(|c| {
                let refs: Vec<&[Rational]> = c.iter().map(|&i| vertices[i].as_slice()).collect();
                simplex_chart_volume(&refs)
            })
            .sum();
        assert_eq!(total, rat(1, 4));
    }
}
