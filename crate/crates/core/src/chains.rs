//! Chains of abstract simplices with face cancellations: the glued
//! simplicial set, sufficiency of a cancellation set, and admissible
//! 0-1 edge labelings.
//!
//! A chain is a finite family of abstract n-simplices with rational
//! coefficients. A cancellation identifies two face slots; the glued
//! complex realizes exactly the identifications generated by those pairs,
//! matching face vertices order-preservingly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::rational::Rational;

/// A face slot of the chain: the `face`-th facet of the `simplex`-th cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceSlot {
    pub simplex: usize,
    pub face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWithCancellations {
    /// Dimension n of the cells.
    pub dim: usize,
    /// One rational coefficient per abstract n-simplex.
    pub coefficients: Vec<Rational>,
    /// Symmetric identifications, stored once per pair.
    pub cancellations: Vec<(FaceSlot, FaceSlot)>,
    /// The set J: face slots carrying the chosen minimal presentation of
    /// the boundary.
    pub boundary_selection: Vec<FaceSlot>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainError {
    /// A face slot appears in two different cancellation pairs.
    SlotCollision(FaceSlot),
    SlotOutOfRange(FaceSlot),
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::SlotCollision(slot) => {
                write!(
                    f,
                    "face slot (simplex {}, face {}) cancelled twice",
                    slot.simplex, slot.face
                )
            }
            ChainError::SlotOutOfRange(slot) => {
                write!(
                    f,
                    "face slot (simplex {}, face {}) out of range",
                    slot.simplex, slot.face
                )
            }
        }
    }
}

impl std::error::Error for ChainError {}

impl ChainWithCancellations {
    pub fn validate(&self) -> Result<(), ChainError> {
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.cancellations {
            for slot in [a, b] {
                if slot.simplex >= self.coefficients.len() || slot.face > self.dim {
                    return Err(ChainError::SlotOutOfRange(slot));
                }
                if !seen.insert(slot) {
                    return Err(ChainError::SlotCollision(slot));
                }
            }
        }
        for &slot in &self.boundary_selection {
            if slot.simplex >= self.coefficients.len() || slot.face > self.dim {
                return Err(ChainError::SlotOutOfRange(slot));
            }
        }
        Ok(())
    }
}

/// A directed edge of the glued complex, between vertex classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    /// Representative slots (simplex, (tail position, head position)).
    pub slots: Vec<(usize, (usize, usize))>,
    pub tail: usize,
    pub head: usize,
}

/// The realization of a chain with cancellations: cells glued along the
/// cancellation pairs only, with class counts in every dimension.
#[derive(Clone, Debug)]
pub struct GluedComplex {
    pub dim: usize,
    pub cell_count: usize,
    /// Vertex classes, each a list of (simplex, vertex slot).
    pub vertices: Vec<Vec<(usize, usize)>>,
    /// Directed edge classes; the edge of a cell between positions p < q
    /// points from class-of-p to class-of-q.
    pub edges: Vec<EdgeClass>,
    /// Number of d-subsimplex classes for d = 0..=dim.
    pub class_counts: Vec<usize>,
    /// The J-indexed boundary facets.
    pub boundary_cells: Vec<FaceSlot>,
}

impl GluedComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.class_counts
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn vertex_class_of(&self, simplex: usize, position: usize) -> usize {
        self.vertices
            .iter()
            .position(|class| class.contains(&(simplex, position)))
            .expect("vertex slot belongs to a class")
    }

    pub fn edge_class_of(&self, simplex: usize, pair: (usize, usize)) -> usize {
        self.edges
            .iter()
            .position(|class| class.slots.contains(&(simplex, pair)))
            .expect("edge slot belongs to a class")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Vertex list of a face slot, in ascending position order.
fn face_positions(dim: usize, face: usize) -> Vec<usize> {
    (0..=dim).filter(|&p| p != face).collect()
}

/// Builds the glued complex: cells glued along cancellation pairs only,
/// sub-simplex identifications generated by the order-preserving matching
/// of cancelled faces.
pub fn build_glued_complex(chain: &ChainWithCancellations) -> Result<GluedComplex, ChainError> {
    chain.validate()?;
    let n = chain.dim;
    let cells = chain.coefficients.len();

    // Per dimension d, slots are (simplex, subset) with |subset| = d+1.
    let subsets_by_dim: Vec<Vec<Vec<usize>>> =
        (0..=n).map(|d| subsets_of_size(n + 1, d + 1)).collect();
    let mut class_counts = Vec::with_capacity(n + 1);
    let mut vertex_classes: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut edge_classes: Vec<EdgeClass> = Vec::new();

    for d in 0..=n {
        let subsets = &subsets_by_dim[d];
        let index_of: BTreeMap<&Vec<usize>, usize> = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let slot_id = |simplex: usize, subset_idx: usize| simplex * subsets.len() + subset_idx;
        let mut uf = UnionFind::new(cells * subsets.len());
        for &(a, b) in &chain.cancellations {
            let fa = face_positions(n, a.face);
            let fb = face_positions(n, b.face);
            // Subsets of the matched face, transported through the
            // order-preserving bijection fa[k] <-> fb[k].
            for positions in subsets_of_size(n, d + 1) {
                let sa: Vec<usize> = positions.iter().map(|&k| fa[k]).collect();
                let sb: Vec<usize> = positions.iter().map(|&k| fb[k]).collect();
                let ia = index_of[&sa];
                let ib = index_of[&sb];
                uf.union(slot_id(a.simplex, ia), slot_id(b.simplex, ib));
            }
        }
        let mut roots: BTreeMap<usize, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
        for simplex in 0..cells {
            for (si, subset) in subsets.iter().enumerate() {
                let root = uf.find(slot_id(simplex, si));
                roots
                    .entry(root)
                    .or_default()
                    .push((simplex, subset.clone()));
            }
        }
        class_counts.push(roots.len());
        if d == 0 {
            vertex_classes = roots
                .values()
                .map(|slots| slots.iter().map(|(s, sub)| (*s, sub[0])).collect())
                .collect();
        } else if d == 1 {
            for slots in roots.values() {
                let pairs: Vec<(usize, (usize, usize))> = slots
                    .iter()
                    .map(|(s, sub)| (*s, (sub[0], sub[1])))
                    .collect();
                edge_classes.push(EdgeClass {
                    slots: pairs,
                    tail: 0,
                    head: 0,
                });
            }
        }
    }

    // Resolve edge endpoints against the vertex classes; the face matching
    // is order-preserving, so tails and heads agree across a class.
    let vertex_class_of = |simplex: usize, position: usize| -> usize {
        vertex_classes
            .iter()
            .position(|class| class.contains(&(simplex, position)))
            .expect("every vertex slot is classed")
    };
    for edge in &mut edge_classes {
        let (s0, (p, q)) = edge.slots[0];
        edge.tail = vertex_class_of(s0, p);
        edge.head = vertex_class_of(s0, q);
        for &(s, (p, q)) in &edge.slots[1..] {
            debug_assert_eq!(edge.tail, vertex_class_of(s, p));
            debug_assert_eq!(edge.head, vertex_class_of(s, q));
        }
    }

    Ok(GluedComplex {
        dim: n,
        cell_count: cells,
        vertices: vertex_classes,
        edges: edge_classes,
        class_counts,
        boundary_cells: chain.boundary_selection.clone(),
    })
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sufficiency of a cancellation set for a finite chain.
///
/// Each face slot `(i, k)` enters the boundary with coefficient
/// `(−1)^k a_i`; a cancellation pair is fully used when its two signed
/// coefficients sum to zero. The set is sufficient when every remaining
/// slot with a nonzero residual lies in `boundary_carried`.
pub fn is_sufficient(
    chain: &ChainWithCancellations,
    boundary_carried: &BTreeSet<FaceSlot>,
) -> bool {
    let signed = |slot: FaceSlot| -> Rational {
        let a = chain.coefficients[slot.simplex].clone();
        if slot.face % 2 == 0 {
            a
        } else {
            -a
        }
    };
    let mut cancelled: BTreeSet<FaceSlot> = BTreeSet::new();
    for &(a, b) in &chain.cancellations {
        if (signed(a) + signed(b)).is_zero() {
            cancelled.insert(a);
            cancelled.insert(b);
        }
    }
    for simplex in 0..chain.coefficients.len() {
        for face in 0..=chain.dim {
            let slot = FaceSlot { simplex, face };
            if cancelled.contains(&slot) {
                continue;
            }
            if !signed(slot).is_zero() && !boundary_carried.contains(&slot) {
                return false;
            }
        }
    }
    true
}

/// 0-1 labels on the edge classes of a glued complex, plus the boundary
/// flags its admissibility is judged against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling {
    /// One label per edge class of the complex.
    pub labels: Vec<u8>,
    /// One flag per vertex class: whether the vertex sits on the relevant
    /// boundary part.
    pub on_boundary: Vec<bool>,
}

/// Both admissibility conditions: endpoints of 1-labeled edges are flagged,
/// and the directed graph of 1-labeled edges (tail to head) has no cycle.
/// Self-loops count as cycles.
pub fn check_admissible(complex: &GluedComplex, labeling: &EdgeLabeling) -> bool {
    assert_eq!(labeling.labels.len(), complex.edges.len());
    assert_eq!(labeling.on_boundary.len(), complex.vertices.len());
    let ones: Vec<&EdgeClass> = complex
        .edges
        .iter()
        .zip(&labeling.labels)
        .filter(|(_, &l)| l == 1)
        .map(|(e, _)| e)
        .collect();
    for edge in &ones {
        if !labeling.on_boundary[edge.tail] || !labeling.on_boundary[edge.head] {
            return false;
        }
    }
    let v = complex.vertices.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); v];
    for edge in &ones {
        if edge.tail == edge.head {
            return false;
        }
        adjacency[edge.tail].push(edge.head);
    }
    fn dfs(u: usize, adjacency: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[u] = 1;
        for &w in &adjacency[u] {
            match state[w] {
                0 => {
                    if dfs(w, adjacency, state) {
                        return true;
                    }
                }
                1 => return true,
                _ => {}
            }
        }
        state[u] = 2;
        false
    }
    let mut state = vec![0u8; v]; // 0 unseen, 1 on stack, 2 done
    for u in 0..v {
        if state[u] == 0 && dfs(u, &adjacency, &mut state) {
            return false;
        }
    }
    true
}

/// A cell flagged by the caller for removal. Weak degeneracy refers to a
/// target space this layer does not see, so the flags arrive from outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlaggedCell<T> {
    pub payload: T,
    pub constant_edge: bool,
    pub contained_in_boundary: bool,
}

impl<T> FlaggedCell<T> {
    pub fn is_weakly_degenerate(&self) -> bool {
        self.constant_edge || self.contained_in_boundary
    }
}

/// Drops exactly the flagged cells. Idempotent and order-independent.
pub fn filter_weakly_degenerate<T: Clone>(cells: &[FlaggedCell<T>]) -> Vec<FlaggedCell<T>> {
    cells
        .iter()
        .filter(|c| !c.is_weakly_degenerate())
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn slot(simplex: usize, face: usize) -> FaceSlot {
        FaceSlot { simplex, face }
    }

    fn chain(
        dim: usize,
        coeffs: &[i64],
        cancellations: &[((usize, usize), (usize, usize))],
    ) -> ChainWithCancellations {
        ChainWithCancellations {
            dim,
            coefficients: coeffs.iter().map(|&c| int(c)).collect(),
            cancellations: cancellations
                .iter()
                .map(|&((s1, f1), (s2, f2))| (slot(s1, f1), slot(s2, f2)))
                .collect(),
            boundary_selection: Vec::new(),
        }
    }

    #[test]
    fn two_triangles_glued_once_make_a_square() {
        // Glue face 0 of each triangle: vertices {1,2} of both identified.
        let c = chain(2, &[1, 1], &[((0, 0), (1, 0))]);
        let complex = build_glued_complex(&c).unwrap();
        assert_eq!(complex.class_counts, vec![4, 5, 2]);
        assert_eq!(complex.euler_characteristic(), 1);
        let shared: Vec<&EdgeClass> = complex
            .edges
            .iter()
            .filter(|e| e.slots.len() == 2)
            .collect();
        assert_eq!(shared.len(), 1);
    }

    #[test]
    fn lone_triangle() {
        let c = chain(2, &[1], &[]);
        let complex = build_glued_complex(&c).unwrap();
        assert_eq!(complex.class_counts, vec![3, 3, 1]);
        assert_eq!(complex.euler_characteristic(), 1);
    }

    #[test]
    fn strip_of_triangles_is_a_polygon() {
        // r triangles glued consecutively: a polygon with r+2 vertices.
        // Gluing face 1 of each to face 2 of the next uses every slot once.
        for r in 2..=5 {
            let cancellations: Vec<((usize, usize), (usize, usize))> =
                (0..r - 1).map(|i| ((i, 1), (i + 1, 2))).collect();
            let coeffs = vec![1i64; r];
            let c = chain(2, &coeffs, &cancellations);
            let complex = build_glued_complex(&c).unwrap();
            assert_eq!(complex.class_counts[0], r + 2, "vertices for r = {r}");
            assert_eq!(complex.class_counts[1], 2 * r + 1, "edges for r = {r}");
            assert_eq!(complex.euler_characteristic(), 1);
        }
    }

    #[test]
    fn euler_characteristics_match_hand_counts() {
        // (dim, coefficients, cancellations, expected Euler characteristic)
        let strip = |r: usize| -> Vec<((usize, usize), (usize, usize))> {
            (0..r - 1).map(|i| ((i, 1), (i + 1, 2))).collect()
        };
        let library: Vec<(usize, usize, Vec<((usize, usize), (usize, usize))>, i64)> = vec![
            // Lone triangle: a disc.
            (2, 1, vec![], 1),
            // Two triangles, one gluing: a square.
            (2, 2, vec![((0, 0), (1, 0))], 1),
            // Triangle fans of length 3, 4, 5: polygons.
            (2, 3, strip(3), 1),
            (2, 4, strip(4), 1),
            (2, 5, strip(5), 1),
            // Two triangles glued along two faces: still a disc.
            (2, 2, vec![((0, 0), (1, 0)), ((0, 1), (1, 1))], 1),
            // Two triangles glued along all three faces: a sphere.
            (
                2,
                2,
                vec![((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (1, 2))],
                2,
            ),
            // One triangle folded onto itself.
            (2, 1, vec![((0, 0), (0, 1))], 1),
            // Lone tetrahedron: 4 − 6 + 4 − 1.
            (3, 1, vec![], 1),
            // Two tetrahedra sharing a facet: 5 − 9 + 7 − 2.
            (3, 2, vec![((0, 0), (1, 0))], 1),
            // Three tetrahedra in a fan: 6 − 12 + 10 − 3.
            (3, 3, strip(3), 1),
        ];
        for (i, (dim, cells, cancellations, expected)) in library.into_iter().enumerate() {
            let coeffs = vec![1i64; cells];
            let c = chain(dim, &coeffs, &cancellations);
            let complex = build_glued_complex(&c).unwrap();
            assert_eq!(
                complex.euler_characteristic(),
                expected,
                "library case {i}: counts {:?}",
                complex.class_counts
            );
        }
    }

    #[test]
    fn slot_collision_detected() {
        let c = chain(2, &[1, 1, 1], &[((0, 0), (1, 0)), ((0, 0), (2, 0))]);
        assert_eq!(
            build_glued_complex(&c).unwrap_err(),
            ChainError::SlotCollision(slot(0, 0))
        );
    }

    #[test]
    fn sufficiency_examples() {
        // Opposite-parity slots with equal coefficients cancel.
        let mut c = chain(2, &[1, 1], &[((0, 0), (1, 1))]);
        let carried: BTreeSet<FaceSlot> =
            [slot(0, 1), slot(0, 2), slot(1, 0), slot(1, 2)]
                .into_iter()
                .collect();
        assert!(is_sufficient(&c, &carried));

        // One interior face missing from the carried set.
        let partial: BTreeSet<FaceSlot> =
            [slot(0, 1), slot(0, 2), slot(1, 0)].into_iter().collect();
        assert!(!is_sufficient(&c, &partial));

        // Coefficients +1/−1 on the matched pair leave residual 2: the pair
        // does not cancel, and its slots are not carried.
        c.coefficients = vec![int(1), int(-1)];
        assert!(!is_sufficient(&c, &carried));
    }

    #[test]
    fn admissibility_path_ok_cycle_rejected() {
        // A single triangle, edges directed 0->1, 0->2, 1->2: no cycle.
        let c = chain(2, &[1], &[]);
        let complex = build_glued_complex(&c).unwrap();
        let all_ones = EdgeLabeling {
            labels: vec![1; complex.edges.len()],
            on_boundary: vec![true; complex.vertices.len()],
        };
        assert!(check_admissible(&complex, &all_ones));

        // Glue two faces of one triangle: two vertices collapse and a
        // 1-labeled loop appears.
        let folded = chain(2, &[1], &[((0, 0), (0, 1))]);
        let complex = build_glued_complex(&folded).unwrap();
        let all_ones = EdgeLabeling {
            labels: vec![1; complex.edges.len()],
            on_boundary: vec![true; complex.vertices.len()],
        };
        assert!(!check_admissible(&complex, &all_ones));

        // Unflagged endpoint fails the first condition.
        let c = chain(2, &[1], &[]);
        let complex = build_glued_complex(&c).unwrap();
        let mut flags = vec![true; complex.vertices.len()];
        flags[0] = false;
        let labeling = EdgeLabeling {
            labels: vec![1; complex.edges.len()],
            on_boundary: flags,
        };
        assert!(!check_admissible(&complex, &labeling));

        // Zero labels are always admissible.
        let labeling = EdgeLabeling {
            labels: vec![0; complex.edges.len()],
            on_boundary: vec![false; complex.vertices.len()],
        };
        assert!(check_admissible(&complex, &labeling));

        // A path of two 1-labeled edges with the rest 0.
        let c = chain(2, &[1], &[]);
        let complex = build_glued_complex(&c).unwrap();
        let path_edges = [
            complex.edge_class_of(0, (0, 1)),
            complex.edge_class_of(0, (1, 2)),
        ];
        let labels: Vec<u8> = (0..complex.edges.len())
            .map(|e| u8::from(path_edges.contains(&e)))
            .collect();
        let labeling = EdgeLabeling {
            labels,
            on_boundary: vec![true; complex.vertices.len()],
        };
        assert!(check_admissible(&complex, &labeling));
    }

    #[test]
    fn filter_weakly_degenerate_is_idempotent() {
        let cells = vec![
            FlaggedCell {
                payload: "a",
                constant_edge: true,
                contained_in_boundary: false,
            },
            FlaggedCell {
                payload: "b",
                constant_edge: false,
                contained_in_boundary: true,
            },
            FlaggedCell {
                payload: "c",
                constant_edge: false,
                contained_in_boundary: false,
            },
        ];
        let once = filter_weakly_degenerate(&cells);
        assert_eq!(once.len(), 1);
        assert_eq!(once[0].payload, "c");
        let twice = filter_weakly_degenerate(&once);
        assert_eq!(once, twice);
        // Order independence: the kept set does not depend on input order.
        let mut reversed = cells.clone();
        reversed.reverse();
        let from_reversed = filter_weakly_degenerate(&reversed);
        assert_eq!(from_reversed.len(), once.len());
        assert_eq!(from_reversed[0].payload, "c");
    }
}
