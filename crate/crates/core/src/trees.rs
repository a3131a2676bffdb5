//! Finite metric trees with exact rational edge lengths: geodesics, medians,
//! Steiner subtrees with branch-point counts, and the straightening of a
//! triangle of points through its median.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    NotConnected,
    HasCycle,
    NonPositiveLength { edge: usize },
    NodeOutOfRange(usize),
    EdgeOutOfRange(usize),
    OffsetOutOfRange { edge: usize, offset: String },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::NotConnected => write!(f, "edge set does not connect all nodes"),
            TreeError::HasCycle => write!(f, "edge set contains a cycle"),
            TreeError::NonPositiveLength { edge } => {
                write!(f, "edge {edge} has non-positive length")
            }
            TreeError::NodeOutOfRange(v) => write!(f, "node {v} out of range"),
            TreeError::EdgeOutOfRange(e) => write!(f, "edge {e} out of range"),
            TreeError::OffsetOutOfRange { edge, offset } => {
                write!(f, "offset {offset} not strictly inside edge {edge}")
            }
        }
    }
}

impl std::error::Error for TreeError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub ends: (usize, usize),
    pub length: Rational,
}

/// A finite tree with positive rational edge lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricTree {
    node_count: usize,
    edges: Vec<TreeEdge>,
    adjacency: Vec<Vec<usize>>,
}

/// A point of the tree: a node, or a point strictly inside an edge at a
/// rational offset from the edge's first end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreePoint {
    Node(usize),
    OnEdge { edge: usize, offset: Rational },
}

impl MetricTree {
    pub fn new(node_count: usize, edges: Vec<(usize, usize, Rational)>) -> Result<Self, TreeError> {
        if edges.len() + 1 != node_count && !(node_count == 0 && edges.is_empty()) {
            // Right count is necessary; connectivity is checked below and
            // rules out cycles given the count.
            if edges.len() + 1 > node_count {
                return Err(TreeError::HasCycle);
            }
            return Err(TreeError::NotConnected);
        }
        let mut adjacency = vec![Vec::new(); node_count];
        let mut tree_edges = Vec::with_capacity(edges.len());
        for (idx, (u, v, length)) in edges.into_iter().enumerate() {
            if u >= node_count {
                return Err(TreeError::NodeOutOfRange(u));
            }
            if v >= node_count {
                return Err(TreeError::NodeOutOfRange(v));
            }
            if length <= int(0) {
                return Err(TreeError::NonPositiveLength { edge: idx });
            }
            adjacency[u].push(idx);
            adjacency[v].push(idx);
            tree_edges.push(TreeEdge {
                ends: (u, v),
                length,
            });
        }
        let tree = MetricTree {
            node_count,
            edges: tree_edges,
            adjacency,
        };
        if node_count > 0 {
            let mut seen = vec![false; node_count];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for &e in &tree.adjacency[u] {
                    let (a, b) = tree.edges[e].ends;
                    let w = if a == u { b } else { a };
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(TreeError::NotConnected);
            }
        }
        Ok(tree)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn validate_point(&self, p: &TreePoint) -> Result<(), TreeError> {
        match p {
            TreePoint::Node(v) => {
                if *v >= self.node_count {
                    return Err(TreeError::NodeOutOfRange(*v));
                }
            }
            TreePoint::OnEdge { edge, offset } => {
                let Some(e) = self.edges.get(*edge) else {
                    return Err(TreeError::EdgeOutOfRange(*edge));
                };
                if *offset <= int(0) || *offset >= e.length {
                    return Err(TreeError::OffsetOutOfRange {
                        edge: *edge,
                        offset: crate::rational::format_rational(offset),
                    });
                }
            }
        }
        Ok(())
    }

    /// Exact distances from one node to all nodes.
    fn node_distances(&self, from: usize) -> Vec<Rational> {
        let mut dist = vec![int(-1); self.node_count];
        dist[from] = int(0);
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for &e in &self.adjacency[u] {
                let (a, b) = self.edges[e].ends;
                let w = if a == u { b } else { a };
                if dist[w] < int(0) {
                    dist[w] = &dist[u] + &self.edges[e].length;
                    stack.push(w);
                }
            }
        }
        dist
    }

    /// Node path between two nodes, inclusive of both.
    fn node_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent: Vec<Option<usize>> = vec![None; self.node_count];
        let mut seen = vec![false; self.node_count];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            if u == to {
                break;
            }
            for &e in &self.adjacency[u] {
                let (a, b) = self.edges[e].ends;
                let w = if a == u { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    stack.push(w);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur].expect("connected tree");
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Anchor nodes of a point with their entry distances.
    fn anchors(&self, p: &TreePoint) -> Vec<(usize, Rational)> {
        match p {
            TreePoint::Node(v) => vec![(*v, int(0))],
            TreePoint::OnEdge { edge, offset } => {
                let e = &self.edges[*edge];
                vec![
                    (e.ends.0, offset.clone()),
                    (e.ends.1, &e.length - offset),
                ]
            }
        }
    }

    pub fn distance(&self, x: &TreePoint, y: &TreePoint) -> Rational {
        self.geodesic(x, y).length
    }

    /// The unique simple path between two points, with its exact length and
    /// the tree nodes it passes through (in order, inclusive of endpoint
    /// anchors when the endpoints are nodes).
    pub fn geodesic(&self, x: &TreePoint, y: &TreePoint) -> GeodesicPath {
        if x == y {
            return GeodesicPath {
                length: int(0),
                nodes: Vec::new(),
            };
        }
        if let (
            TreePoint::OnEdge { edge: e1, offset: o1 },
            TreePoint::OnEdge { edge: e2, offset: o2 },
        ) = (x, y)
        {
            if e1 == e2 {
                let d = if o1 > o2 { o1 - o2 } else { o2 - o1 };
                return GeodesicPath {
                    length: d,
                    nodes: Vec::new(),
                };
            }
        }
        let mut best: Option<(Rational, usize, usize)> = None;
        for (a, da) in self.anchors(x) {
            let dist = self.node_distances(a);
            for (b, db) in self.anchors(y) {
                let total = &da + &dist[b] + &db;
                if best.as_ref().is_none_or(|(t, _, _)| total < *t) {
                    best = Some((total, a, b));
                }
            }
        }
        let (length, a, b) = best.expect("points have anchors");
        GeodesicPath {
            length,
            nodes: self.node_path(a, b),
        }
    }

    /// The point at distance `t` from `x` along the geodesic to `y`.
    /// Requires `0 <= t <= d(x, y)`.
    pub fn walk(&self, x: &TreePoint, y: &TreePoint, t: &Rational) -> TreePoint {
        assert!(*t >= int(0));
        if *t == int(0) {
            return self.normalize(x.clone());
        }
        let geo = self.geodesic(x, y);
        assert!(*t <= geo.length, "walk distance exceeds geodesic length");
        if *t == geo.length {
            return self.normalize(y.clone());
        }
        // Same-edge shortcut.
        if geo.nodes.is_empty() {
            if let (TreePoint::OnEdge { edge, offset: o1 }, TreePoint::OnEdge { offset: o2, .. }) =
                (x, y)
            {
                let offset = if o2 > o1 { o1 + t } else { o1 - t };
                return self.normalize(TreePoint::OnEdge {
                    edge: *edge,
                    offset,
                });
            }
            unreachable!("empty node path only happens within one edge");
        }
        // Leading partial edge from x to its first anchor.
        let first = geo.nodes[0];
        let d_entry = match x {
            TreePoint::Node(_) => int(0),
            TreePoint::OnEdge { edge, offset } => {
                let e = &self.edges[*edge];
                if e.ends.0 == first {
                    offset.clone()
                } else {
                    &e.length - offset
                }
            }
        };
        if *t < d_entry {
            // Still on x's edge, moving toward `first`.
            let TreePoint::OnEdge { edge, offset } = x else {
                unreachable!()
            };
            let e = &self.edges[*edge];
            let offset = if e.ends.0 == first {
                offset - t
            } else {
                offset + t
            };
            return self.normalize(TreePoint::OnEdge {
                edge: *edge,
                offset,
            });
        }
        let mut remaining = t - &d_entry;
        for window in geo.nodes.windows(2) {
            let (u, w) = (window[0], window[1]);
            let edge_idx = self.adjacency[u]
                .iter()
                .copied()
                .find(|&e| {
                    let (a, b) = self.edges[e].ends;
                    (a == u && b == w) || (a == w && b == u)
                })
                .expect("consecutive path nodes are adjacent");
            let e = &self.edges[edge_idx];
            if remaining == int(0) {
                return TreePoint::Node(u);
            }
            if remaining < e.length {
                let offset = if e.ends.0 == u {
                    remaining
                } else {
                    &e.length - &remaining
                };
                return self.normalize(TreePoint::OnEdge {
                    edge: edge_idx,
                    offset,
                });
            }
            remaining -= &e.length;
        }
        // Trailing partial edge into y.
        let last = *geo.nodes.last().unwrap();
        if remaining == int(0) {
            return TreePoint::Node(last);
        }
        let TreePoint::OnEdge { edge, offset: _ } = y else {
            unreachable!("leftover distance requires y inside an edge")
        };
        let e = &self.edges[*edge];
        let off = if e.ends.0 == last {
            remaining
        } else {
            &e.length - &remaining
        };
        self.normalize(TreePoint::OnEdge { edge: *edge, offset: off })
    }

    fn normalize(&self, p: TreePoint) -> TreePoint {
        match p {
            TreePoint::OnEdge { edge, offset } => {
                let e = &self.edges[edge];
                if offset == int(0) {
                    TreePoint::Node(e.ends.0)
                } else if offset == e.length {
                    TreePoint::Node(e.ends.1)
                } else {
                    TreePoint::OnEdge { edge, offset }
                }
            }
            node => node,
        }
    }

    /// The unique point lying on all three pairwise geodesics.
    pub fn median(&self, x: &TreePoint, y: &TreePoint, z: &TreePoint) -> TreePoint {
        let dxy = self.distance(x, y);
        let dxz = self.distance(x, z);
        let dyz = self.distance(y, z);
        let gromov = (&dxy + &dxz - &dyz) / int(2);
        self.walk(x, y, &gromov)
    }

    /// Whether `p` lies on the geodesic from `x` to `y` (exact).
    pub fn on_geodesic(&self, p: &TreePoint, x: &TreePoint, y: &TreePoint) -> bool {
        self.distance(x, p) + self.distance(p, y) == self.distance(x, y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicPath {
    pub length: Rational,
    /// Tree nodes traversed, in order; empty when the path stays inside one
    /// edge.
    pub nodes: Vec<usize>,
}

/// The union of pairwise geodesics between a point set: per-edge covered
/// intervals plus the branch-point count in the subtree's own topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerSubtree {
    /// Covered interval per edge index: (lo, hi) with 0 <= lo < hi <= length.
    pub segments: BTreeMap<usize, (Rational, Rational)>,
    pub total_length: Rational,
    pub branch_count: usize,
}

/// Union of pairwise geodesics and the number of its points of degree at
/// least three. Degrees are taken inside the subtree, not inside the host
/// tree, and branching can only happen at tree nodes.
pub fn steiner_branch_points(tree: &MetricTree, points: &[TreePoint]) -> SteinerSubtree {
    assert!(points.len() >= 2, "need at least two points");
    // The convex hull of the set equals the union of geodesics from the
    // first point to all others.
    let mut segments: BTreeMap<usize, (Rational, Rational)> = BTreeMap::new();
    let mut cover = |edge: usize, lo: Rational, hi: Rational| {
        if lo >= hi {
            return;
        }
        segments
            .entry(edge)
            .and_modify(|(a, b)| {
                if lo < *a {
                    *a = lo.clone();
                }
                if hi > *b {
                    *b = hi.clone();
                }
            })
            .or_insert((lo, hi));
    };
    let edge_between = |u: usize, w: usize| -> usize {
        tree.adjacency[u]
            .iter()
            .copied()
            .find(|&e| {
                let (a, b) = tree.edges[e].ends;
                (a == u && b == w) || (a == w && b == u)
            })
            .expect("adjacent nodes share an edge")
    };
    for other in &points[1..] {
        let x = &points[0];
        let y = other;
        if x == y {
            continue;
        }
        // Partial coverage of endpoint edges, full coverage along the node
        // path.
        let geo = tree.geodesic(x, y);
        if geo.nodes.is_empty() {
            if let (TreePoint::OnEdge { edge, offset: o1 }, TreePoint::OnEdge { offset: o2, .. }) =
                (x, y)
            {
                let (lo, hi) = if o1 < o2 {
                    (o1.clone(), o2.clone())
                } else {
                    (o2.clone(), o1.clone())
                };
                cover(*edge, lo, hi);
            }
            continue;
        }
        if let TreePoint::OnEdge { edge, offset } = x {
            let e = &tree.edges[*edge];
            if e.ends.0 == geo.nodes[0] {
                cover(*edge, int(0), offset.clone());
            } else {
                cover(*edge, offset.clone(), e.length.clone());
            }
        }
        if let TreePoint::OnEdge { edge, offset } = y {
            let e = &tree.edges[*edge];
            let last = *geo.nodes.last().unwrap();
            if e.ends.0 == last {
                cover(*edge, int(0), offset.clone());
            } else {
                cover(*edge, offset.clone(), e.length.clone());
            }
        }
        for window in geo.nodes.windows(2) {
            let e = edge_between(window[0], window[1]);
            cover(e, int(0), tree.edges[e].length.clone());
        }
    }

    let total_length: Rational = segments.values().map(|(lo, hi)| hi - lo).sum();
    let mut branch_count = 0;
    for v in 0..tree.node_count() {
        let mut degree = 0;
        for &e in &tree.adjacency[v] {
            let Some((lo, hi)) = segments.get(&e) else {
                continue;
            };
            let edge = &tree.edges[e];
            let touches = if edge.ends.0 == v {
                *lo == int(0)
            } else {
                *hi == edge.length
            };
            if touches {
                degree += 1;
            }
        }
        if degree >= 3 {
            branch_count += 1;
        }
    }
    SteinerSubtree {
        segments,
        total_length,
        branch_count,
    }
}

/// A triangle of points straightened through its median: three corner
/// geodesics meeting only at the median. In the collinear case the middle
/// corner is empty and the straightening degenerates to a fibered segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleStraightening {
    pub median: TreePoint,
    pub corners: [GeodesicPath; 3],
    pub collinear: bool,
}

pub fn straighten_triangle(
    tree: &MetricTree,
    x: &TreePoint,
    y: &TreePoint,
    z: &TreePoint,
) -> TriangleStraightening {
    let median = tree.median(x, y, z);
    let corners = [
        tree.geodesic(x, &median),
        tree.geodesic(y, &median),
        tree.geodesic(z, &median),
    ];
    let collinear = corners.iter().any(|c| c.length == int(0));
    TriangleStraightening {
        median,
        corners,
        collinear,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn unit_edges(pairs: &[(usize, usize)]) -> Vec<(usize, usize, Rational)> {
        pairs.iter().map(|&(u, v)| (u, v, int(1))).collect()
    }

    /// Two 3-valent nodes 0 and 1 joined by an edge; leaves 2,3 at 0 and
    /// 4,5 at 1. Unit lengths.
    fn h_tree() -> MetricTree {
        MetricTree::new(6, unit_edges(&[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            MetricTree::new(3, unit_edges(&[(0, 1)])).unwrap_err(),
            TreeError::NotConnected
        );
        assert_eq!(
            MetricTree::new(3, unit_edges(&[(0, 1), (1, 2), (2, 0)])).unwrap_err(),
            TreeError::HasCycle
        );
        assert_eq!(
            MetricTree::new(2, vec![(0, 1, int(0))]).unwrap_err(),
            TreeError::NonPositiveLength { edge: 0 }
        );
    }

    #[test]
    fn geodesic_basics() {
        let path = MetricTree::new(3, unit_edges(&[(0, 1), (1, 2)])).unwrap();
        let a = TreePoint::Node(0);
        let c = TreePoint::Node(2);
        assert_eq!(path.geodesic(&a, &a).length, int(0));
        let geo = path.geodesic(&a, &c);
        assert_eq!(geo.length, int(2));
        assert_eq!(geo.nodes, vec![0, 1, 2]);

        let star = MetricTree::new(4, unit_edges(&[(0, 1), (0, 2), (0, 3)])).unwrap();
        let geo = star.geodesic(&TreePoint::Node(1), &TreePoint::Node(2));
        assert_eq!(geo.length, int(2));
        assert_eq!(geo.nodes, vec![1, 0, 2]);
    }

    #[test]
    fn geodesic_with_edge_points() {
        let path = MetricTree::new(3, unit_edges(&[(0, 1), (1, 2)])).unwrap();
        let p = TreePoint::OnEdge {
            edge: 0,
            offset: rat(1, 4),
        };
        let q = TreePoint::OnEdge {
            edge: 0,
            offset: rat(3, 4),
        };
        assert_eq!(path.distance(&p, &q), rat(1, 2));
        let r = TreePoint::OnEdge {
            edge: 1,
            offset: rat(1, 3),
        };
        // p is 1/4 from node 0, so 3/4 from node 1; r is 1/3 past node 1.
        assert_eq!(path.distance(&p, &r), rat(3, 4) + rat(1, 3));
    }

    #[test]
    fn median_collinear_and_star() {
        let path = MetricTree::new(3, unit_edges(&[(0, 1), (1, 2)])).unwrap();
        let m = path.median(
            &TreePoint::Node(0),
            &TreePoint::Node(1),
            &TreePoint::Node(2),
        );
        assert_eq!(m, TreePoint::Node(1));

        let star = MetricTree::new(4, unit_edges(&[(0, 1), (0, 2), (0, 3)])).unwrap();
        let m = star.median(
            &TreePoint::Node(1),
            &TreePoint::Node(2),
            &TreePoint::Node(3),
        );
        assert_eq!(m, TreePoint::Node(0));
    }

    #[test]
    fn median_on_h_tree() {
        let tree = h_tree();
        // Two leaves at node 0 and one leaf at node 1: median is node 0.
        let m = tree.median(
            &TreePoint::Node(2),
            &TreePoint::Node(3),
            &TreePoint::Node(4),
        );
        assert_eq!(m, TreePoint::Node(0));
    }

    #[test]
    fn median_lies_on_all_geodesics() {
        let tree = h_tree();
        let pts = [
            TreePoint::Node(2),
            TreePoint::OnEdge {
                edge: 0,
                offset: rat(1, 3),
            },
            TreePoint::Node(5),
        ];
        let m = tree.median(&pts[0], &pts[1], &pts[2]);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!(tree.on_geodesic(&m, &pts[i], &pts[j]));
        }
    }

    #[test]
    fn steiner_counts() {
        let tree = h_tree();
        // Two points: no branch point.
        let sub = steiner_branch_points(&tree, &[TreePoint::Node(2), TreePoint::Node(4)]);
        assert_eq!(sub.branch_count, 0);
        assert_eq!(sub.total_length, int(3));
        // Three star legs: one branch point.
        let star = MetricTree::new(4, unit_edges(&[(0, 1), (0, 2), (0, 3)])).unwrap();
        let sub = steiner_branch_points(
            &star,
            &[TreePoint::Node(1), TreePoint::Node(2), TreePoint::Node(3)],
        );
        assert_eq!(sub.branch_count, 1);
        // Four leaves of the H-tree: both 3-valent nodes branch.
        let sub = steiner_branch_points(
            &tree,
            &[
                TreePoint::Node(2),
                TreePoint::Node(3),
                TreePoint::Node(4),
                TreePoint::Node(5),
            ],
        );
        assert_eq!(sub.branch_count, 2);
        assert_eq!(sub.total_length, int(5));
    }

    #[test]
    fn straightening_examples() {
        let path = MetricTree::new(3, unit_edges(&[(0, 1), (1, 2)])).unwrap();
        let st = straighten_triangle(
            &path,
            &TreePoint::Node(0),
            &TreePoint::Node(1),
            &TreePoint::Node(2),
        );
        assert_eq!(st.median, TreePoint::Node(1));
        assert!(st.collinear);
        assert_eq!(st.corners[0].length, int(1));
        assert_eq!(st.corners[1].length, int(0));
        assert_eq!(st.corners[2].length, int(1));

        let tree = h_tree();
        let st = straighten_triangle(
            &tree,
            &TreePoint::Node(2),
            &TreePoint::Node(3),
            &TreePoint::Node(4),
        );
        assert_eq!(st.median, TreePoint::Node(0));
        assert!(!st.collinear);
        let lengths: Vec<Rational> = st.corners.iter().map(|c| c.length.clone()).collect();
        assert_eq!(lengths, vec![int(1), int(1), int(2)]);
    }

    #[test]
    fn four_point_condition_on_fixed_tree() {
        let tree = h_tree();
        let pts = [
            TreePoint::Node(2),
            TreePoint::Node(3),
            TreePoint::Node(4),
            TreePoint::OnEdge {
                edge: 4,
                offset: rat(2, 5),
            },
        ];
        let d = |i: usize, j: usize| tree.distance(&pts[i], &pts[j]);
        let mut sums = [
            d(0, 1) + d(2, 3),
            d(0, 2) + d(1, 3),
            d(0, 3) + d(1, 2),
        ];
        sums.sort();
        assert_eq!(sums[1], sums[2]);
    }
}
