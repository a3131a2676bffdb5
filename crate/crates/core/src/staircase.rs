//! Staircase triangulations of section polytopes.
//!
//! A generic section of type `T` is combinatorially the product of simplices
//! `Δ^a × Δ^b` with `a = |T|−1`, `b = n−|T|`; its vertices are the pairs
//! `(i, j)` with `i ∈ T`, `j ∉ T`. The staircase triangulation has one
//! maximal cell per monotone lattice path through the `a×b` grid, which is a
//! minimal triangulation: it introduces no new vertices. A through-vertex
//! section gets the same combinatorics with all vertices at one point, i.e.
//! a single degenerate cell.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geometry::SectionType;

/// A maximal cell of the triangulation: `n` polytope-vertex labels along one
/// monotone path, in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub labels: Vec<(usize, usize)>,
}

impl Cell {
    /// Label pairs sharing a coordinate: the edges of the cell that are also
    /// edges of the polytope.
    pub fn exterior_edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for x in 0..self.labels.len() {
            for y in x + 1..self.labels.len() {
                let (a, b) = (self.labels[x], self.labels[y]);
                if (a.0 == b.0) != (a.1 == b.1) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn contains_label(&self, label: (usize, usize)) -> bool {
        self.labels.contains(&label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulatedSection {
    pub section_index: usize,
    pub cells: Vec<Cell>,
}

impl TriangulatedSection {
    /// Indices of cells carrying the polytope edge `(u, w)` among their
    /// exterior edges. Minimality guarantees at least one.
    pub fn cells_with_edge(&self, u: (usize, usize), w: (usize, usize)) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains_label(u) && c.contains_label(w))
            .map(|(i, _)| i)
            .collect()
    }
}

/// The staircase triangulation of a section's polytope.
///
/// Cell count is `binomial(a+b, a)`; each cell lists its labels along the
/// path, so consecutive labels share a coordinate.
pub fn staircase_triangulation(
    stype: &SectionType,
    n: usize,
    section_index: usize,
) -> TriangulatedSection {
    let inside: Vec<usize> = stype.members().collect();
    let outside: Vec<usize> = stype.complement(n);
    let a = inside.len() - 1;
    let b = outside.len() - 1;

    let mut cells = Vec::new();
    // Paths as bit choices: at each of the a+b steps move right (advance the
    // inside coordinate) or up (advance the outside coordinate).
    let steps = a + b;
    let mut stack: Vec<(usize, usize, Vec<(usize, usize)>)> =
        vec![(0, 0, vec![(inside[0], outside[0])])];
    while let Some((p, q, path)) = stack.pop() {
        if path.len() == steps + 1 {
            cells.push(Cell { labels: path });
            continue;
        }
        if q < b {
            let mut next = path.clone();
            next.push((inside[p], outside[q + 1]));
            stack.push((p, q + 1, next));
        }
        if p < a {
            let mut next = path.clone();
            next.push((inside[p + 1], outside[q]));
            stack.push((p + 1, q, next));
        }
    }
    cells.sort_by(|x, y| x.labels.cmp(&y.labels));
    debug_assert_eq!(BigInt::from(cells.len()), binomial(a + b, a));
    TriangulatedSection {
        section_index,
        cells,
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Checks the triangulation covers the product polytope: every cell is
/// unimodular in grid coordinates and the exact volumes sum to the volume of
/// `Δ^a × Δ^b`.
///
/// Grid coordinates embed label `(inside[p], outside[q])` as `e_p ⊕ e_q` in
/// `ℝ^a × ℝ^b` (with `e_0 = 0`), where cell volumes are integer-determinant
/// multiples of `1/(a+b)!`.
pub fn staircase_volume_check(tri: &TriangulatedSection, stype: &SectionType, n: usize) -> bool {
    let inside: Vec<usize> = stype.members().collect();
    let outside: Vec<usize> = stype.complement(n);
    let a = inside.len() - 1;
    let b = outside.len() - 1;
    let d = a + b;
    if d == 0 {
        return tri.cells.len() == 1;
    }
    let coord = |label: (usize, usize)| -> Vec<BigInt> {
        let p = inside.iter().position(|&i| i == label.0).unwrap();
        let q = outside.iter().position(|&j| j == label.1).unwrap();
        let mut v = vec![BigInt::zero(); d];
        if p > 0 {
            v[p - 1] = BigInt::one();
        }
        if q > 0 {
            v[a + q - 1] = BigInt::one();
        }
        v
    };
    let mut total = BigInt::zero();
    for cell in &tri.cells {
        let base = coord(cell.labels[0]);
        let rows: Vec<Vec<BigInt>> = cell.labels[1..]
            .iter()
            .map(|&l| {
                coord(l)
                    .into_iter()
                    .zip(base.iter())
                    .map(|(x, b)| x - b)
                    .collect()
            })
            .collect();
        let det = integer_determinant(rows).abs();
        if det != BigInt::one() {
            return false;
        }
        total += det;
    }
    // Normalized volume of Δ^a × Δ^b is binomial(a+b, a) grid simplices.
    total == binomial(d, a)
}

/// Exact determinant by fraction-free Gaussian elimination (Bareiss).
fn integer_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}
