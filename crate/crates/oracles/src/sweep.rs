//! Exhaustive dichotomy sweeps: every compatible type multiset up to a
//! section budget, realized with a canonical level ladder, against every
//! canonical colouring.
//!
//! Instances are independent and run on a rayon pool; results aggregate by
//! plain concatenation ordered by instance index, so the report does not
//! depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use cutlab_core::colouring::every_section_has_black_side;
use cutlab_core::dichotomy::{compute_d, triangulate_all, white_parallel_pairs};
use cutlab_core::rational::{format_rational, rat, Rational};
use cutlab_core::subdivide::subdivide_cut_simplex;
use cutlab_core::{
    enumerate_canonical_colourings, realize_cut_system, reduce_cut_system, types_compatible,
    Colouring, CutSystem, SectionType, TypeRelation, Verdict,
};

/// All section types for dimension n: proper nonempty subsets of the vertex
/// index set containing 0.
pub fn all_types(n: usize) -> Vec<SectionType> {
    let mut out = Vec::new();
    for bits in 0u32..(1 << n) {
        let members: Vec<usize> = std::iter::once(0)
            .chain((1..=n).filter(|&i| bits & (1 << (i - 1)) != 0))
            .collect();
        if members.len() <= n {
            out.push(SectionType::new(members, n).expect("valid type"));
        }
    }
    out.sort();
    out
}

/// All pairwise-compatible type multisets with at most `max_sections`
/// members, in lexicographic order.
pub fn compatible_type_multisets(n: usize, max_sections: usize) -> Vec<Vec<SectionType>> {
    let types = all_types(n);
    let mut out: Vec<Vec<SectionType>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_sections {
        let mut next: Vec<Vec<usize>> = Vec::new();
        for multiset in &frontier {
            let start = multiset.last().copied().unwrap_or(0);
            for t in start..types.len() {
                let compatible = multiset.iter().all(|&s| {
                    types_compatible(&types[s], &types[t], n) != TypeRelation::Incompatible
                });
                if compatible {
                    let mut grown = multiset.clone();
                    grown.push(t);
                    next.push(grown);
                }
            }
        }
        out.extend(
            next.iter()
                .map(|ms| ms.iter().map(|&i| types[i].clone()).collect()),
        );
        frontier = next;
    }
    out
}

/// Levels realizing a compatible multiset disjointly: sections ordered by
/// decreasing type size get increasing levels below 1/2. Nested pairs then
/// give the strictly-contained type the larger level, equal types get
/// distinct levels, and co-covering pairs sum below one.
pub fn realization_levels(types: &[SectionType]) -> Vec<(SectionType, Rational)> {
    let mut order: Vec<usize> = (0..types.len()).collect();
    order.sort_by(|&a, &b| {
        types[b]
            .size()
            .cmp(&types[a].size())
            .then_with(|| types[a].cmp(&types[b]))
    });
    let m = types.len() as i64;
    let mut out: Vec<(SectionType, Rational)> = Vec::with_capacity(types.len());
    for (k, &idx) in order.iter().enumerate() {
        out.push((types[idx].clone(), rat(k as i64 + 1, 2 * m + 2)));
    }
    out
}

/// Realizes a compatible multiset as a cut system.
pub fn realize_multiset(n: usize, types: &[SectionType]) -> CutSystem {
    let specs = realization_levels(types);
    realize_cut_system(n, &specs).expect("compatible multisets realize disjointly")
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Restrict to colourings where every section also touches a black
    /// region (the lamination-side convention); off by default so the raw
    /// canonical-colouring count is the audited one.
    pub one_black_side: bool,
    /// Quotient the type multisets by relabelings of the vertices 1..n
    /// (vertex 0 stays fixed); an optimization, off by default so the raw
    /// instance count is the audited one.
    pub symmetry_reduction: bool,
    /// Check that middle-type sections have every cell partnered.
    pub check_lemma9: bool,
    /// Check white-parallel arcs between middle-type sections and their
    /// white co-bounding partners.
    pub check_corollary2: bool,
    /// Check that pair removal preserves the D-total.
    pub check_reduction: bool,
    /// Check admissibility of the old/new labeling of every subdivision.
    pub check_admissibility: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceId {
    pub n: usize,
    pub types: Vec<Vec<usize>>,
    pub levels: Vec<String>,
    /// Colour per region, `true` = white, in region order.
    pub whites: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyViolation {
    pub instance: InstanceId,
    pub per_section: Vec<usize>,
    pub total: usize,
    pub allowed: [usize; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckFailure {
    pub instance: InstanceId,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub schema: u32,
    pub n: usize,
    pub max_sections: usize,
    pub one_black_side: bool,
    pub symmetry_reduction: bool,
    pub multisets: usize,
    pub instances: usize,
    pub colourings: usize,
    pub violations: Vec<DichotomyViolation>,
    pub check_failures: Vec<CheckFailure>,
}

impl SweepSummary {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.check_failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

fn instance_id(cut: &CutSystem, types: &[SectionType], col: &Colouring) -> InstanceId {
    // Types and levels in the realized section order, matching the
    // per-section D vector.
    InstanceId {
        n: cut.n(),
        types: cut
            .sections()
            .iter()
            .map(|s| s.section_type().members().collect())
            .collect(),
        levels: realization_levels(types)
            .iter()
            .map(|(_, level)| format_rational(level))
            .collect(),
        whites: (0..cut.region_tree().node_count())
            .map(|r| col.is_white(r))
            .collect(),
    }
}

/// All permutations of `1..=n` as index maps over `0..=n` (0 is fixed).
fn vertex_relabelings(n: usize) -> Vec<Vec<usize>> {
    fn heap(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(perm, k - 1, out);
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    let mut tail: Vec<usize> = (1..=n).collect();
    let mut tails = Vec::new();
    let len = tail.len();
    heap(&mut tail, len, &mut tails);
    tails
        .into_iter()
        .map(|t| std::iter::once(0).chain(t).collect())
        .collect()
}

/// The lexicographically smallest relabeling of a type multiset under
/// permutations of the vertices 1..n.
fn canonical_multiset(types: &[SectionType], n: usize) -> Vec<Vec<usize>> {
    let sorted_image = |map: &[usize]| -> Vec<Vec<usize>> {
        let mut image: Vec<Vec<usize>> = types
            .iter()
            .map(|t| {
                let mut members: Vec<usize> = t.members().map(|i| map[i]).collect();
                members.sort_unstable();
                members
            })
            .collect();
        image.sort();
        image
    };
    vertex_relabelings(n)
        .iter()
        .map(|map| sorted_image(map))
        .min()
        .expect("at least the identity relabeling")
}

/// Runs the exhaustive sweep and reports every instance where the D-total
/// leaves `{0, n+1}`, plus any failures of the optional checks.
pub fn exhaustive_dichotomy_sweep(
    n: usize,
    max_sections: usize,
    options: &SweepOptions,
) -> SweepSummary {
    let mut multisets = compatible_type_multisets(n, max_sections);
    if options.symmetry_reduction {
        multisets.retain(|types| {
            let as_lists: Vec<Vec<usize>> = {
                let mut lists: Vec<Vec<usize>> =
                    types.iter().map(|t| t.members().collect()).collect();
                lists.sort();
                lists
            };
            canonical_multiset(types, n) == as_lists
        });
    }
    let per_multiset: Vec<(usize, usize, Vec<DichotomyViolation>, Vec<CheckFailure>)> = multisets
        .par_iter()
        .map(|types| sweep_one_multiset(n, types, options))
        .collect();
    let mut instances = 0;
    let mut colourings = 0;
    let mut violations = Vec::new();
    let mut check_failures = Vec::new();
    for (inst, cols, viol, fails) in per_multiset {
        instances += inst;
        colourings += cols;
        violations.extend(viol);
        check_failures.extend(fails);
    }
    SweepSummary {
        schema: 1,
        n,
        max_sections,
        one_black_side: options.one_black_side,
        symmetry_reduction: options.symmetry_reduction,
        multisets: multisets.len(),
        instances,
        colourings,
        violations,
        check_failures,
    }
}

fn sweep_one_multiset(
    n: usize,
    types: &[SectionType],
    options: &SweepOptions,
) -> (usize, usize, Vec<DichotomyViolation>, Vec<CheckFailure>) {
    let cut = realize_multiset(n, types);
    let mut colourings = 0;
    let mut violations = Vec::new();
    let mut failures = Vec::new();
    for col in enumerate_canonical_colourings(&cut) {
        if options.one_black_side && !every_section_has_black_side(&cut, &col) {
            continue;
        }
        colourings += 1;
        let id = || instance_id(&cut, types, &col);
        let report = compute_d(&cut, &col).expect("canonical colouring");
        if let Verdict::Violated { total, allowed, .. } = &report.verdict {
            violations.push(DichotomyViolation {
                instance: id(),
                per_section: report.per_section.clone(),
                total: *total,
                allowed: *allowed,
            });
        }
        if options.check_lemma9 || options.check_corollary2 {
            let tris = triangulate_all(&cut);
            let pairs = white_parallel_pairs(&cut, &col, &tris).expect("canonical colouring");
            if options.check_lemma9 {
                for (s, tri) in tris.iter().enumerate() {
                    let size = cut.section(s).section_type().size();
                    if size < 2 || size > n - 1 {
                        continue;
                    }
                    for cell in 0..tri.cells.len() {
                        let partnered = pairs.iter().any(|p| {
                            (p.first.section == s && p.first.cell == cell)
                                || (p.second.section == s && p.second.cell == cell)
                        });
                        if !partnered {
                            failures.push(CheckFailure {
                                instance: id(),
                                check: "lemma9".into(),
                                detail: format!("section {s} cell {cell} unpartnered"),
                            });
                        }
                    }
                }
            }
            if options.check_corollary2 {
                let tree = cut.region_tree();
                for s in 0..cut.sections().len() {
                    let size = cut.section(s).section_type().size();
                    if size < 2 || size > n - 1 {
                        continue;
                    }
                    for t in 0..cut.sections().len() {
                        if t == s {
                            continue;
                        }
                        let share_white = tree
                            .common_region(s, t)
                            .filter(|&r| col.is_white(r))
                            .is_some();
                        if !share_white {
                            continue;
                        }
                        let linked = pairs.iter().any(|p| {
                            (p.first.section == s && p.second.section == t)
                                || (p.first.section == t && p.second.section == s)
                        });
                        if !linked {
                            failures.push(CheckFailure {
                                instance: id(),
                                check: "corollary2".into(),
                                detail: format!(
                                    "sections {s} and {t} bound a common white region without a white-parallel arc"
                                ),
                            });
                        }
                    }
                }
            }
        }
        if options.check_reduction {
            let before = report.total;
            match reduce_cut_system(&cut, &col) {
                Ok((reduced, reduced_col)) => match compute_d(&reduced, &reduced_col) {
                    Ok(after) => {
                        if after.total != before {
                            failures.push(CheckFailure {
                                instance: id(),
                                check: "reduction".into(),
                                detail: format!(
                                    "D-total changed from {before} to {}",
                                    after.total
                                ),
                            });
                        }
                    }
                    Err(err) => failures.push(CheckFailure {
                        instance: id(),
                        check: "reduction".into(),
                        detail: format!("reduced colouring not canonical: {err}"),
                    }),
                },
                Err(err) => failures.push(CheckFailure {
                    instance: id(),
                    check: "reduction".into(),
                    detail: format!("reduction failed: {err}"),
                }),
            }
        }
        if options.check_admissibility {
            match subdivide_cut_simplex(&cut, &col) {
                Ok(sub) => {
                    if !sub.is_admissible() {
                        failures.push(CheckFailure {
                            instance: id(),
                            check: "admissibility".into(),
                            detail: "old/new labeling has a 1-labeled cycle".into(),
                        });
                    }
                }
                Err(err) => failures.push(CheckFailure {
                    instance: id(),
                    check: "admissibility".into(),
                    detail: format!("subdivision failed: {err}"),
                }),
            }
        }
    }
    (1, colourings, violations, failures)
}
