//! Main-path versus oracle agreement on randomized and enumerated inputs:
//! arc classification against exact plane-face geometry, the disjointness
//! predicate against the linear-system solver, arc parallelism against the
//! sign-pattern classifier, region data against raw vertex signs, and the
//! Lobachevsky series against quadrature.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cutlab_core::arcs::{arc_on_2face, arcs_parallel, ArcShape};
use cutlab_core::lobachevsky::{lobachevsky, Angle};
use cutlab_core::rational::{rat, Rational, Sign};
use cutlab_core::{
    classify_section, sections_disjoint, AmbientSimplex, Classified, Hyperplane, Section,
    SectionKind, VertexHome,
};
use cutlab_oracles::{
    disjointness_oracle, geometric_arc_oracle, parallel_arcs_oracle, quadrature_lobachevsky,
    realize_multiset, sweep::compatible_type_multisets, OracleArc,
};

fn random_plane(rng: &mut StdRng, n: usize) -> Option<Hyperplane> {
    let coeffs: Vec<Rational> = (0..=n)
        .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect();
    let level = rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    Hyperplane::new(coeffs, level).ok()
}

/// Common normal form for the trace of a section on a 2-face.
#[derive(Debug, PartialEq, Eq)]
enum Normal {
    None,
    Partition(BTreeSet<usize>, BTreeSet<usize>),
    Vertex(usize),
    Edge(BTreeSet<usize>),
    WholeFace,
}

fn normalize_pair(a: BTreeSet<usize>, b: BTreeSet<usize>) -> Normal {
    if a.iter().next() < b.iter().next() {
        Normal::Partition(a, b)
    } else {
        Normal::Partition(b, a)
    }
}

fn normalize_main(section: &Section, face: [usize; 3]) -> Normal {
    match arc_on_2face(section, 0, face) {
        None => {
            // A face section covers any 2-face missing its off-vertex.
            if let SectionKind::Face(j) = section.kind() {
                if !face.contains(&j) {
                    return Normal::WholeFace;
                }
            }
            Normal::None
        }
        Some(arc) => match arc.shape {
            ArcShape::Nondegenerate { separated } => {
                let rest: BTreeSet<usize> = face
                    .iter()
                    .copied()
                    .filter(|v| !separated.contains(v))
                    .collect();
                normalize_pair(separated, rest)
            }
            ArcShape::DegenerateVertex(v) => Normal::Vertex(v),
            ArcShape::FaceEdge(e) => Normal::Edge(e),
        },
    }
}

fn normalize_oracle(arc: Option<OracleArc>) -> Normal {
    match arc {
        None => Normal::None,
        Some(OracleArc::Segment { positive, negative }) => normalize_pair(positive, negative),
        Some(OracleArc::Vertex(v)) => Normal::Vertex(v),
        Some(OracleArc::Edge(e)) => Normal::Edge(e),
        Some(OracleArc::WholeFace) => Normal::WholeFace,
        Some(OracleArc::SegmentThroughVertex(_)) => {
            panic!("classifiable sections never trace through a vertex with extent")
        }
    }
}

#[test]
fn arc_classification_matches_geometry_on_random_planes() {
    let mut rng = StdRng::seed_from_u64(0x5ec7104);
    let mut compared = 0usize;
    let mut planes = 0usize;
    while compared < 10_000 {
        let n = rng.gen_range(2..=4);
        let ambient = AmbientSimplex::new(n).unwrap();
        let Some(plane) = random_plane(&mut rng, n) else {
            continue;
        };
        planes += 1;
        let Ok(Classified::Section(section)) = classify_section(&plane, &ambient) else {
            continue;
        };
        for face in ambient.two_faces() {
            let main = normalize_main(&section, face);
            let oracle = normalize_oracle(geometric_arc_oracle(&plane, &ambient, face));
            assert_eq!(main, oracle, "plane {plane:?}, face {face:?}");
            compared += 1;
        }
    }
    assert!(planes >= 1_000, "sampled {planes} planes");
}

fn random_section(rng: &mut StdRng, ambient: &AmbientSimplex) -> Option<Section> {
    let plane = random_plane(rng, ambient.n())?;
    match classify_section(&plane, ambient) {
        Ok(Classified::Section(s)) => Some(s),
        _ => None,
    }
}

#[test]
fn disjointness_matches_linear_system_oracle() {
    let mut rng = StdRng::seed_from_u64(0xd15701);
    let mut compared = 0usize;
    while compared < 10_000 {
        let n = rng.gen_range(2..=4);
        let ambient = AmbientSimplex::new(n).unwrap();
        let (Some(a), Some(b)) = (
            random_section(&mut rng, &ambient),
            random_section(&mut rng, &ambient),
        ) else {
            continue;
        };
        let main = sections_disjoint(&a, &b);
        let oracle = disjointness_oracle(a.plane(), b.plane(), n);
        assert_eq!(main, oracle, "{:?} vs {:?}", a.plane(), b.plane());
        assert_eq!(main, sections_disjoint(&b, &a), "symmetry");
        compared += 1;
    }
}

#[test]
fn parallelism_matches_sign_pattern_oracle() {
    let mut rng = StdRng::seed_from_u64(0xa4c5);
    let mut compared = 0usize;
    while compared < 10_000 {
        let n = rng.gen_range(2..=4);
        let ambient = AmbientSimplex::new(n).unwrap();
        let (Some(a), Some(b)) = (
            random_section(&mut rng, &ambient),
            random_section(&mut rng, &ambient),
        ) else {
            continue;
        };
        // Definition-level parallelism assumes disjoint arcs.
        if !sections_disjoint(&a, &b) {
            continue;
        }
        for face in ambient.two_faces() {
            let (Some(arc_a), Some(arc_b)) =
                (arc_on_2face(&a, 0, face), arc_on_2face(&b, 1, face))
            else {
                continue;
            };
            let main = arcs_parallel(&arc_a, &arc_b).unwrap();
            let Some(oracle) = parallel_arcs_oracle(a.plane(), b.plane(), &ambient, face)
            else {
                continue;
            };
            assert_eq!(
                main, oracle,
                "planes {:?}, {:?} on face {face:?}",
                a.plane(),
                b.plane()
            );
            compared += 1;
        }
    }
}

/// Raw dot-product sign of a plane at an ambient vertex, written without
/// the main crate's helpers.
fn raw_vertex_sign(plane: &Hyperplane, vertex: usize) -> Sign {
    let c = &plane.coeffs()[vertex];
    let zero = rat(0, 1);
    if *c == zero {
        Sign::Zero
    } else if *c > zero {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

#[test]
fn region_trees_match_raw_vertex_signs() {
    for n in 2..=3 {
        for multiset in compatible_type_multisets(n, 4) {
            let cut = realize_multiset(n, &multiset);
            let tree = cut.region_tree();
            // One more region than sections, always.
            assert_eq!(tree.node_count(), cut.sections().len() + 1);
            // Vertex homes agree with the raw sign vectors.
            for v in 0..=n {
                let signs: Vec<Sign> = cut
                    .sections()
                    .iter()
                    .map(|s| raw_vertex_sign(s.plane(), v))
                    .collect();
                match tree.vertex_home(v) {
                    VertexHome::OnSection(_) => {
                        assert!(signs.iter().any(|s| *s == Sign::Zero));
                    }
                    VertexHome::Region(r) => {
                        assert_eq!(&tree.node(r).signs, &signs, "vertex {v}");
                    }
                }
            }
            // Every region's sign vector is realized by an actual interior
            // point: the average of its closure's vertex set.
            for r in 0..tree.node_count() {
                let mut points: Vec<Vec<Rational>> = tree
                    .node(r)
                    .vertices
                    .iter()
                    .map(|&v| cut.ambient().vertex(v))
                    .collect();
                for s in tree.incident_sections(r) {
                    for pv in cut.section(s).polytope_vertices() {
                        points.push(pv.point.clone());
                    }
                }
                let count = rat(points.len() as i64, 1);
                let mut avg = vec![rat(0, 1); n + 1];
                for p in &points {
                    for (a, x) in avg.iter_mut().zip(p) {
                        *a += x;
                    }
                }
                let avg: Vec<Rational> = avg.into_iter().map(|a| a / &count).collect();
                assert_eq!(cut.region_of_point(&avg), Some(r));
            }
        }
    }
}

#[test]
fn series_agrees_with_quadrature() {
    let pi = std::f64::consts::PI;
    for k in 0..1000 {
        let theta = -pi + 2.0 * pi * (k as f64 + 0.5) / 1000.0;
        let series = lobachevsky(Angle::from_radians(theta).unwrap());
        let quad = quadrature_lobachevsky(theta);
        assert!(
            (series - quad).abs() < 1e-9,
            "θ = {theta}: series {series} vs quadrature {quad}"
        );
    }
}
