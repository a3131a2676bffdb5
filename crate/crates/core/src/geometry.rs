//! Exact geometry of hyperplane sections of the standard simplex.
//!
//! The ambient object is the standard simplex in the affine plane
//! `E = {x : x_1 + … + x_{n+1} = 1}`. Sections are intersections of affine
//! hyperplanes of `E` with the simplex; everything is classified from the
//! exact signs of the plane functional at the simplex vertices, so there is
//! no epsilon anywhere in this module. Degenerate inputs produce errors,
//! never silent perturbations.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::rational::{int, Rational, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    /// All coefficients equal: the plane misses `E` or contains it.
    MalformedPlane,
    /// The plane touches the vertex set in a pattern with no assigned type:
    /// it passes through two or more vertices without containing a face, or
    /// through one vertex while also cutting the interior.
    AmbiguousType { on_plane: Vec<usize> },
    /// Coefficient vector length does not match the ambient dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Ambient dimension must be at least 2.
    InvalidDimension(usize),
    /// Type sets must contain 0 and be proper nonempty subsets of `{0..n}`.
    InvalidType(String),
    /// Realization levels must lie strictly between 0 and 1.
    LevelOutOfRange(String),
    /// Face sections do not separate the simplex and are rejected from cut
    /// systems.
    FaceSectionRejected { index: usize },
    /// Two sections meet inside the simplex; the witness is a common point.
    NotDisjoint {
        first: usize,
        second: usize,
        witness: Vec<Rational>,
    },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::MalformedPlane => {
                write!(f, "malformed plane: all coefficients equal")
            }
            GeometryError::AmbiguousType { on_plane } => write!(
                f,
                "plane meets vertices {on_plane:?} in a pattern with no assigned type"
            ),
            GeometryError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coefficients, got {got}")
            }
            GeometryError::InvalidDimension(n) => {
                write!(f, "ambient dimension must be at least 2, got {n}")
            }
            GeometryError::InvalidType(msg) => write!(f, "invalid section type: {msg}"),
            GeometryError::LevelOutOfRange(level) => {
                write!(f, "level {level} is not strictly between 0 and 1")
            }
            GeometryError::FaceSectionRejected { index } => {
                write!(f, "section {index} degenerates to a face of the simplex")
            }
            GeometryError::NotDisjoint {
                first,
                second,
                witness,
            } => {
                write!(
                    f,
                    "sections {first} and {second} meet at ({})",
                    witness
                        .iter()
                        .map(crate::rational::format_rational)
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
        }
    }
}

impl std::error::Error for GeometryError {}

/// The standard n-simplex: vertex `i` is the `(i+1)`-st basis point of the
/// coordinate space of dimension `n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSimplex {
    n: usize,
}

impl AmbientSimplex {
    pub fn new(n: usize) -> Result<Self, GeometryError> {
        if n < 2 {
            return Err(GeometryError::InvalidDimension(n));
        }
        Ok(AmbientSimplex { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    /// Coordinates of vertex `i` in the coordinate space of dimension `n+1`.
    pub fn vertex(&self, i: usize) -> Vec<Rational> {
        assert!(i <= self.n);
        let mut v = vec![int(0); self.n + 1];
        v[i] = int(1);
        v
    }

    /// All edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.n).flat_map(move |i| (i + 1..=self.n).map(move |j| (i, j)))
    }

    /// All 2-dimensional faces as sorted vertex triples.
    pub fn two_faces(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for r in 0..=self.n {
            for s in r + 1..=self.n {
                for t in s + 1..=self.n {
                    out.push([r, s, t]);
                }
            }
        }
        out
    }
}

/// An affine hyperplane of `E`, stored in canonical form.
///
/// A pair `(c, λ)` describes `{x ∈ E : Σ c_i x_i = λ}`. On `E` the functional
/// only depends on the vertex-value vector `d = c − λ·1`, which is invariant
/// under the shift `(c, λ) → (c + μ·1, λ + μ)` and well-defined up to
/// positive scaling. The constructor normalizes to `level = 0` and rescales
/// so the first nonzero entry of `d` has absolute value one, keeping its
/// sign. Structural equality of `Hyperplane` values is therefore equality of
/// oriented planes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coeffs: Vec<Rational>,
    level: Rational,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>, level: Rational) -> Result<Self, GeometryError> {
        if coeffs.len() < 3 {
            return Err(GeometryError::InvalidDimension(coeffs.len().saturating_sub(1)));
        }
        let deltas: Vec<Rational> = coeffs.iter().map(|c| c - &level).collect();
        if deltas.iter().all(|d| *d == deltas[0]) {
            return Err(GeometryError::MalformedPlane);
        }
        let scale = deltas
            .iter()
            .find(|d| !d.is_zero())
            .expect("non-constant delta vector has a nonzero entry")
            .clone();
        let scale = if scale < int(0) { -scale } else { scale };
        let coeffs = deltas.into_iter().map(|d| d / &scale).collect();
        Ok(Hyperplane {
            coeffs,
            level: int(0),
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value of the plane functional at ambient vertex `i`.
    pub fn vertex_value(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// Value of the plane functional at a point of `E`.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.coeffs.len());
        let mut acc = Rational::zero();
        for (c, x) in self.coeffs.iter().zip(point) {
            acc += c * x;
        }
        acc - &self.level
    }

    pub fn side_of(&self, point: &[Rational]) -> Sign {
        Sign::of(&self.eval(point))
    }

    pub fn vertex_sign(&self, i: usize) -> Sign {
        Sign::of(self.vertex_value(i))
    }
}

/// A section type `{0 a_1 … a_k}`: the set of vertex indices on the same
/// side of the section as vertex 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectionType {
    members: BTreeSet<usize>,
}

impl SectionType {
    pub fn new(members: impl IntoIterator<Item = usize>, n: usize) -> Result<Self, GeometryError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if !members.contains(&0) {
            return Err(GeometryError::InvalidType("must contain 0".into()));
        }
        if members.iter().any(|&i| i > n) {
            return Err(GeometryError::InvalidType(format!(
                "members out of range for dimension {n}: {members:?}"
            )));
        }
        if members.len() > n {
            return Err(GeometryError::InvalidType(
                "must be a proper subset of the vertex set".into(),
            ));
        }
        Ok(SectionType { members })
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `k` in the notation `{0 a_1 … a_k}`.
    pub fn k(&self) -> usize {
        self.members.len() - 1
    }

    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..=n).filter(|i| !self.contains(*i)).collect()
    }

    /// Types of size 1 or n cut off a single vertex; all volume-counting
    /// arguments treat them separately from the middle range.
    pub fn is_end_type(&self, n: usize) -> bool {
        self.size() == 1 || self.size() == n
    }

    pub fn intersect_face(&self, face: &[usize; 3]) -> BTreeSet<usize> {
        face.iter().copied().filter(|i| self.contains(*i)).collect()
    }
}

impl fmt::Display for SectionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, m) in self.members.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionKind {
    /// No vertex on the plane; the section cuts edge interiors only.
    Generic,
    /// The section is exactly the vertex `j`.
    ThroughVertex(usize),
    /// The section equals the face opposite vertex `j`.
    Face(usize),
}

/// A vertex of the section polytope: the crossing of the plane with the
/// ambient edge from `inside` (a type member) to `outside`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeVertex {
    pub inside: usize,
    pub outside: usize,
    pub point: Vec<Rational>,
}

impl PolytopeVertex {
    pub fn label(&self) -> (usize, usize) {
        (self.inside, self.outside)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    plane: Hyperplane,
    kind: SectionKind,
    stype: SectionType,
    polytope: Vec<PolytopeVertex>,
}

impl Section {
    pub fn plane(&self) -> &Hyperplane {
        &self.plane
    }

    pub fn kind(&self) -> SectionKind {
        self.kind
    }

    pub fn section_type(&self) -> &SectionType {
        &self.stype
    }

    /// Vertices of the section polytope, one per `(inside, outside)` edge of
    /// the simplex crossing the plane. For a through-vertex section all
    /// entries coincide with the vertex.
    pub fn polytope_vertices(&self) -> &[PolytopeVertex] {
        &self.polytope
    }

    pub fn polytope_vertex(&self, label: (usize, usize)) -> Option<&PolytopeVertex> {
        self.polytope.iter().find(|v| v.label() == label)
    }

    /// Barycenter of the polytope vertices; an interior point of the section
    /// (or the vertex itself in the degenerate case).
    pub fn sample_point(&self) -> Vec<Rational> {
        let dim = self.plane.coeffs().len();
        let mut acc = vec![Rational::zero(); dim];
        for v in &self.polytope {
            for (a, x) in acc.iter_mut().zip(&v.point) {
                *a += x;
            }
        }
        let count = int(self.polytope.len() as i64);
        acc.into_iter().map(|a| a / &count).collect()
    }
}

/// Result of classifying a plane against the simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classified {
    /// The plane misses the simplex entirely.
    Empty,
    Section(Section),
}

/// Classifies a plane by the exact signs of its functional at the simplex
/// vertices and computes the section polytope.
pub fn classify_section(
    plane: &Hyperplane,
    ambient: &AmbientSimplex,
) -> Result<Classified, GeometryError> {
    if plane.coeffs().len() != ambient.vertex_count() {
        return Err(GeometryError::DimensionMismatch {
            expected: ambient.vertex_count(),
            got: plane.coeffs().len(),
        });
    }
    let n = ambient.n();
    let signs: Vec<Sign> = (0..=n).map(|i| plane.vertex_sign(i)).collect();
    let zeros: Vec<usize> = (0..=n).filter(|&i| signs[i].is_zero()).collect();
    let pos: Vec<usize> = (0..=n).filter(|&i| signs[i] == Sign::Pos).collect();
    let neg: Vec<usize> = (0..=n).filter(|&i| signs[i] == Sign::Neg).collect();

    let (kind, members): (SectionKind, Vec<usize>) = match zeros.len() {
        0 => {
            if pos.is_empty() || neg.is_empty() {
                return Ok(Classified::Empty);
            }
            let same_as_zero: Vec<usize> = (0..=n).filter(|&i| signs[i] == signs[0]).collect();
            (SectionKind::Generic, same_as_zero)
        }
        1 => {
            let j = zeros[0];
            if pos.is_empty() || neg.is_empty() {
                // The section is exactly the vertex v_j.
                let members = if j == 0 {
                    vec![0]
                } else {
                    (0..=n).filter(|&i| i != j).collect()
                };
                (SectionKind::ThroughVertex(j), members)
            } else {
                // One vertex on the plane and the section still cuts the
                // interior: outside the type taxonomy.
                return Err(GeometryError::AmbiguousType { on_plane: zeros });
            }
        }
        z if z == n => {
            let j = (0..=n)
                .find(|i| !zeros.contains(i))
                .expect("one vertex off the plane");
            let members = if j == 0 {
                vec![0]
            } else {
                (0..=n).filter(|&i| i != j).collect()
            };
            (SectionKind::Face(j), members)
        }
        _ => return Err(GeometryError::AmbiguousType { on_plane: zeros }),
    };

    let stype = SectionType::new(members, n)?;
    let polytope = compute_polytope(plane, &stype, ambient);
    Ok(Classified::Section(Section {
        plane: plane.clone(),
        kind,
        stype,
        polytope,
    }))
}

/// One polytope vertex per `(inside, outside)` pair, solving the edge
/// equation exactly. The crossing parameter is `t = d_j / (d_j − d_i)` for
/// the point `t·v_i + (1−t)·v_j`.
fn compute_polytope(
    plane: &Hyperplane,
    stype: &SectionType,
    ambient: &AmbientSimplex,
) -> Vec<PolytopeVertex> {
    let n = ambient.n();
    let mut out = Vec::new();
    for i in stype.members() {
        for j in 0..=n {
            if stype.contains(j) {
                continue;
            }
            let di = plane.vertex_value(i).clone();
            let dj = plane.vertex_value(j).clone();
            let t = &dj / (&dj - &di);
            let mut point = vec![Rational::zero(); n + 1];
            point[i] = t.clone();
            point[j] = int(1) - &t;
            debug_assert!(plane.eval(&point).is_zero());
            out.push(PolytopeVertex {
                inside: i,
                outside: j,
                point,
            });
        }
    }
    out
}

/// Exact disjointness of two sections of the same simplex.
///
/// Two section polytopes are disjoint if and only if every extreme point of
/// one lies strictly on one side of the other's plane; a polytope vertex
/// exactly on the other plane counts as not disjoint.
pub fn sections_disjoint(s1: &Section, s2: &Section) -> bool {
    one_sided(s1, s2).is_some()
}

/// The strict side of `s1`'s plane containing all of `s2`, if any.
fn one_sided(s1: &Section, s2: &Section) -> Option<Sign> {
    let mut side = None;
    for v in s2.polytope_vertices() {
        match s1.plane().side_of(&v.point) {
            Sign::Zero => return None,
            s => match side {
                None => side = Some(s),
                Some(prev) if prev != s => return None,
                Some(_) => {}
            },
        }
    }
    side
}

/// A common point of two intersecting sections, used as the witness carried
/// by [`GeometryError::NotDisjoint`].
fn intersection_witness(s1: &Section, s2: &Section) -> Vec<Rational> {
    let mut pos: Option<&PolytopeVertex> = None;
    let mut neg: Option<&PolytopeVertex> = None;
    for v in s2.polytope_vertices() {
        match s1.plane().side_of(&v.point) {
            Sign::Zero => return v.point.clone(),
            Sign::Pos => pos = Some(v),
            Sign::Neg => neg = Some(v),
        }
    }
    let (u, w) = (
        pos.expect("mixed signs for intersecting sections"),
        neg.expect("mixed signs for intersecting sections"),
    );
    // The segment u..w stays inside the second section and crosses the
    // first plane where the functional vanishes.
    let fu = s1.plane().eval(&u.point);
    let fw = s1.plane().eval(&w.point);
    let t = &fu / (&fu - &fw);
    u.point
        .iter()
        .zip(&w.point)
        .map(|(a, b)| a + &t * (b - a))
        .collect()
}

/// Outcome of comparing two section types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeRelation {
    Equal,
    Nested,
    CoCovering,
    Incompatible,
}

/// Classifies a type pair. `Incompatible` means no disjoint realization of
/// the two types exists.
pub fn types_compatible(t1: &SectionType, t2: &SectionType, n: usize) -> TypeRelation {
    let a: BTreeSet<usize> = t1.members().collect();
    let b: BTreeSet<usize> = t2.members().collect();
    if a == b {
        return TypeRelation::Equal;
    }
    if a.is_subset(&b) || b.is_subset(&a) {
        return TypeRelation::Nested;
    }
    if a.union(&b).count() == n + 1 {
        return TypeRelation::CoCovering;
    }
    TypeRelation::Incompatible
}

/// Where an ambient vertex lives relative to the cut system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexHome {
    Region(usize),
    OnSection(usize),
}

/// A complementary region, identified by its strict sign vector under the
/// section planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionNode {
    pub signs: Vec<Sign>,
    pub vertices: Vec<usize>,
}

/// The dual tree of the complementary regions: one node per region, one edge
/// per section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionTree {
    nodes: Vec<RegionNode>,
    /// Per section: (region on the positive side, region on the negative side).
    section_sides: Vec<(usize, usize)>,
    vertex_home: Vec<VertexHome>,
}

impl RegionTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[RegionNode] {
        &self.nodes
    }

    pub fn node(&self, idx: usize) -> &RegionNode {
        &self.nodes[idx]
    }

    /// The two regions adjacent to a section, positive side first.
    pub fn section_sides(&self, section: usize) -> (usize, usize) {
        self.section_sides[section]
    }

    pub fn vertex_home(&self, vertex: usize) -> VertexHome {
        self.vertex_home[vertex]
    }

    pub fn vertex_homes(&self) -> &[VertexHome] {
        &self.vertex_home
    }

    /// The region shared by two section edges of the tree, if they meet.
    pub fn common_region(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = self.section_sides[i];
        let (c, d) = self.section_sides[j];
        if a == c || a == d {
            Some(a)
        } else if b == c || b == d {
            Some(b)
        } else {
            None
        }
    }

    /// Sections incident to a region.
    pub fn incident_sections(&self, region: usize) -> Vec<usize> {
        self.section_sides
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| *a == region || *b == region)
            .map(|(s, _)| s)
            .collect()
    }

    /// Looks up the region whose sign vector matches a point's, which must
    /// avoid every section plane.
    pub fn region_of_signs(&self, signs: &[Sign]) -> Option<usize> {
        self.nodes.iter().position(|r| r.signs == signs)
    }

    /// Region indices reachable from `start` without crossing section `cut`.
    pub fn component_without(&self, start: usize, cut: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(r) = stack.pop() {
            for (s, &(a, b)) in self.section_sides.iter().enumerate() {
                if s == cut {
                    continue;
                }
                for next in [a, b] {
                    if (a == r || b == r) && !seen[next] {
                        seen[next] = true;
                        stack.push(next);
                    }
                }
            }
        }
        (0..self.nodes.len()).filter(|&r| seen[r]).collect()
    }
}

/// A family of pairwise disjoint sections together with its region tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSystem {
    ambient: AmbientSimplex,
    sections: Vec<Section>,
    region_tree: RegionTree,
}

impl CutSystem {
    /// Validates pairwise disjointness exactly and builds the region tree.
    /// Face sections are rejected: they do not separate the simplex, so the
    /// region model breaks down for them.
    pub fn new(ambient: AmbientSimplex, sections: Vec<Section>) -> Result<Self, GeometryError> {
        for (idx, s) in sections.iter().enumerate() {
            if let SectionKind::Face(_) = s.kind() {
                return Err(GeometryError::FaceSectionRejected { index: idx });
            }
            if s.plane().coeffs().len() != ambient.vertex_count() {
                return Err(GeometryError::DimensionMismatch {
                    expected: ambient.vertex_count(),
                    got: s.plane().coeffs().len(),
                });
            }
        }
        for i in 0..sections.len() {
            for j in i + 1..sections.len() {
                if !sections_disjoint(&sections[i], &sections[j]) {
                    return Err(GeometryError::NotDisjoint {
                        first: i,
                        second: j,
                        witness: intersection_witness(&sections[i], &sections[j]),
                    });
                }
                debug_assert!(
                    types_compatible(
                        sections[i].section_type(),
                        sections[j].section_type(),
                        ambient.n()
                    ) != TypeRelation::Incompatible,
                    "disjoint sections with incompatible types"
                );
            }
        }
        let region_tree = build_region_tree(&ambient, &sections)?;
        Ok(CutSystem {
            ambient,
            sections,
            region_tree,
        })
    }

    pub fn ambient(&self) -> &AmbientSimplex {
        &self.ambient
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn section(&self, idx: usize) -> &Section {
        &self.sections[idx]
    }

    pub fn region_tree(&self) -> &RegionTree {
        &self.region_tree
    }

    /// Strict sign vector of an interior point under all section planes;
    /// `None` if the point lies on some section.
    pub fn signs_of_point(&self, point: &[Rational]) -> Option<Vec<Sign>> {
        let mut signs = Vec::with_capacity(self.sections.len());
        for s in &self.sections {
            match s.plane().side_of(point) {
                Sign::Zero => return None,
                sign => signs.push(sign),
            }
        }
        Some(signs)
    }

    /// Region containing a point off all sections.
    pub fn region_of_point(&self, point: &[Rational]) -> Option<usize> {
        let signs = self.signs_of_point(point)?;
        self.region_tree.region_of_signs(&signs)
    }
}

fn build_region_tree(
    ambient: &AmbientSimplex,
    sections: &[Section],
) -> Result<RegionTree, GeometryError> {
    let n = ambient.n();
    let m = sections.len();
    if m == 0 {
        return Ok(RegionTree {
            nodes: vec![RegionNode {
                signs: Vec::new(),
                vertices: (0..=n).collect(),
            }],
            section_sides: Vec::new(),
            vertex_home: (0..=n).map(|_| VertexHome::Region(0)).collect(),
        });
    }

    // Each section is one edge of the tree; the two adjacent regions carry
    // the section's own sign vector with the k-th entry set to each side.
    // The remaining entries are constant on the section because sections are
    // pairwise disjoint.
    let mut node_signs: BTreeSet<Vec<Sign>> = BTreeSet::new();
    let mut per_section: Vec<(Vec<Sign>, Vec<Sign>)> = Vec::with_capacity(m);
    for (k, sec) in sections.iter().enumerate() {
        let sample = sec.sample_point();
        let mut base = Vec::with_capacity(m);
        for (l, other) in sections.iter().enumerate() {
            if l == k {
                base.push(Sign::Zero); // placeholder
            } else {
                let s = other.plane().side_of(&sample);
                debug_assert!(!s.is_zero(), "disjoint sections share a point");
                base.push(s);
            }
        }
        let mut plus = base.clone();
        plus[k] = Sign::Pos;
        let mut minus = base;
        minus[k] = Sign::Neg;
        node_signs.insert(plus.clone());
        node_signs.insert(minus.clone());
        per_section.push((plus, minus));
    }
    let nodes_vec: Vec<Vec<Sign>> = node_signs.into_iter().collect();
    debug_assert_eq!(nodes_vec.len(), m + 1, "disjoint sections dualize to a tree");

    let index_of = |signs: &Vec<Sign>| -> usize {
        nodes_vec
            .binary_search(signs)
            .expect("region sign vector present")
    };
    let section_sides: Vec<(usize, usize)> = per_section
        .iter()
        .map(|(p, mi)| (index_of(p), index_of(mi)))
        .collect();

    // Vertex homes from exact signs.
    let mut vertex_home = Vec::with_capacity(n + 1);
    let mut region_vertices: Vec<Vec<usize>> = vec![Vec::new(); nodes_vec.len()];
    for v in 0..=n {
        let mut on_section = None;
        let mut signs = Vec::with_capacity(m);
        for (k, sec) in sections.iter().enumerate() {
            let s = sec.plane().vertex_sign(v);
            if s.is_zero() {
                debug_assert_eq!(sec.kind(), SectionKind::ThroughVertex(v));
                on_section = Some(k);
                break;
            }
            signs.push(s);
        }
        match on_section {
            Some(k) => vertex_home.push(VertexHome::OnSection(k)),
            None => {
                let idx = nodes_vec
                    .binary_search(&signs)
                    .expect("vertex sign vector is a realized region");
                region_vertices[idx].push(v);
                vertex_home.push(VertexHome::Region(idx));
            }
        }
    }

    let nodes: Vec<RegionNode> = nodes_vec
        .into_iter()
        .zip(region_vertices)
        .map(|(signs, vertices)| RegionNode { signs, vertices })
        .collect();

    let tree = RegionTree {
        nodes,
        section_sides,
        vertex_home,
    };
    validate_tree(ambient, sections, &tree);
    Ok(tree)
}

/// Connectivity and the type/side consistency demanded of a region tree:
/// removing a section's edge splits the ambient vertices exactly as the
/// section's type prescribes.
fn validate_tree(ambient: &AmbientSimplex, sections: &[Section], tree: &RegionTree) {
    let m = sections.len();
    let (pos_root, _) = tree.section_sides(0);
    assert_eq!(
        tree.component_without(pos_root, usize::MAX).len(),
        m + 1,
        "region tree is connected"
    );
    for (k, sec) in sections.iter().enumerate() {
        let (pos_node, neg_node) = tree.section_sides(k);
        let pos_side = tree.component_without(pos_node, k);
        assert!(!pos_side.contains(&neg_node), "section edge is a bridge");
        for v in 0..=ambient.n() {
            let expected = sec.plane().vertex_sign(v);
            match tree.vertex_home(v) {
                VertexHome::OnSection(_) => {}
                VertexHome::Region(r) => {
                    let on_pos = pos_side.contains(&r);
                    match expected {
                        Sign::Pos => assert!(on_pos, "vertex {v} on wrong side of section {k}"),
                        Sign::Neg => assert!(!on_pos, "vertex {v} on wrong side of section {k}"),
                        Sign::Zero => unreachable!("zero-sign vertex has a region home"),
                    }
                }
            }
        }
    }
}

/// Builds the canonical plane `Σ_{i∈T} x_{i+1} = λ` for each spec, validates
/// pairwise disjointness exactly, and constructs the region tree. Fails
/// rather than perturbs.
pub fn realize_cut_system(
    n: usize,
    specs: &[(SectionType, Rational)],
) -> Result<CutSystem, GeometryError> {
    let ambient = AmbientSimplex::new(n)?;
    let mut sections = Vec::with_capacity(specs.len());
    for (stype, level) in specs {
        if *level <= int(0) || *level >= int(1) {
            return Err(GeometryError::LevelOutOfRange(
                crate::rational::format_rational(level),
            ));
        }
        if stype.members().any(|i| i > n) {
            return Err(GeometryError::InvalidType(format!(
                "type {stype} out of range for dimension {n}"
            )));
        }
        let coeffs: Vec<Rational> = (0..=n)
            .map(|i| if stype.contains(i) { int(1) } else { int(0) })
            .collect();
        let plane = Hyperplane::new(coeffs, level.clone())?;
        match classify_section(&plane, &ambient)? {
            Classified::Section(sec) => {
                debug_assert_eq!(sec.kind(), SectionKind::Generic);
                debug_assert_eq!(sec.section_type(), stype);
                sections.push(sec);
            }
            Classified::Empty => unreachable!("levels strictly inside (0,1) give sections"),
        }
    }
    CutSystem::new(ambient, sections)
}
