//! The `cutlab` command-line tool: cut-system analysis, exhaustive
//! dichotomy sweeps, pair checks, tree queries, volume constants, and the
//! inequality calculators.
//!
//! One JSON document in (where a command takes a config), one JSON report
//! out. Exit codes: 0 when the checked property holds or the query
//! succeeds, 1 when a verification finds a counterexample, 2 on invalid
//! input.

pub mod config;
pub mod report;

use std::fs;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use cutlab_core::bounds::{
    guts_bounds, hypersurface_bounds, tight_obstruction, GutsData, ManifoldData,
    ObstructionVerdict,
};
use cutlab_core::lobachevsky::{constants, lobachevsky, Angle};
use cutlab_core::rational::format_rational;
use cutlab_core::subdivide::subdivide_cut_simplex;
use cutlab_core::trees::{steiner_branch_points, straighten_triangle, TreePoint};
use cutlab_core::{
    compute_d, corollary1_check, enumerate_canonical_colourings, lemma8_witness, LadderVerdict,
    Lemma8Outcome, Verdict,
};
use cutlab_oracles::{exhaustive_dichotomy_sweep, SweepOptions};

use config::{CutConfig, PairConfig, TreeConfig, TreeQuery};
use report::{
    emit, AnalyzeReport, BoundsReport, ColouringReport, ConstReport, DichotomyReportDoc,
    GutsSection, HypersurfaceSection, Lemma8Report, ObstructReport, RegionReport, SectionReport,
    TreeReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;

#[derive(Parser)]
#[command(
    name = "cutlab",
    about = "Exact verification of disjoint simplex sections, colouring dichotomies, and hyperbolic volume bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// Path to a JSON config, or `-` for standard input.
    #[arg(short, long)]
    config: String,
    /// Human-readable summary instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one cut system: sections, regions, colourings, D-counts,
    /// survivors, ladder verdicts, labeling admissibility.
    Analyze(ConfigArg),
    /// Exhaustive dichotomy sweep over all compatible type multisets.
    Dichotomy {
        /// Run the exhaustive sweep (the only supported mode).
        #[arg(long, default_value_t = true)]
        exhaustive: bool,
        /// Ambient dimension.
        #[arg(long)]
        n: usize,
        /// Largest number of sections per instance.
        #[arg(long)]
        max_sections: usize,
        /// Only colourings where every section also touches a black region.
        #[arg(long)]
        one_black_side: bool,
        /// Sweep one representative per relabeling orbit of the vertices
        /// 1..n instead of the raw multiset list.
        #[arg(long)]
        symmetry_reduction: bool,
        /// Also run the partner, reduction, and labeling checks.
        #[arg(long)]
        check_all: bool,
        /// Worker threads (default: available parallelism, or CUTLAB_JOBS).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        pretty: bool,
    },
    /// Check a section pair: intersecting, or a parallel-arc witness face.
    Lemma8(ConfigArg),
    /// Tree queries: geodesic, median, branch points, straightening.
    Tree(ConfigArg),
    /// Print the volume constants table.
    Const {
        #[arg(long)]
        pretty: bool,
    },
    /// Guts and hypersurface bounds.
    Bounds {
        /// Euler characteristic of the guts (nonpositive).
        #[arg(long, allow_negative_numbers = true)]
        chi: Option<i64>,
        /// Face count for the polyhedral bound.
        #[arg(long)]
        faces: Option<u32>,
        /// Simplicial norm of the manifold.
        #[arg(long)]
        norm: Option<f64>,
        /// Hyperbolic volume of the manifold.
        #[arg(long)]
        volume: Option<f64>,
        /// Euler characteristic of a candidate geodesic surface.
        #[arg(long, allow_negative_numbers = true)]
        surface_chi: Option<i64>,
        #[arg(long)]
        pretty: bool,
    },
    /// The volume obstruction to tight laminations.
    Obstruct {
        /// Hyperbolic volume of the closed 3-manifold.
        #[arg(long)]
        volume: f64,
        /// Assert the empty-guts exclusion to upgrade the conclusion.
        #[arg(long)]
        empty_guts_excluded: bool,
        #[arg(long)]
        pretty: bool,
    },
}

pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit 0; genuine parse
            // errors report on stderr with exit 2.
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INVALID_INPUT
        }
    }
}

fn read_config(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

/// JSON parsing with the offending path in the diagnostic.
fn parse_json<T: serde::de::DeserializeOwned>(raw: &str) -> Result<T, String> {
    let deserializer = &mut serde_json::Deserializer::from_str(raw);
    serde_path_to_error::deserialize(deserializer)
        .map_err(|e| format!("at {}: {}", e.path(), e.inner()))
}

fn dispatch(command: Command) -> Result<i32, String> {
    match command {
        Command::Analyze(args) => analyze(&args),
        Command::Dichotomy {
            exhaustive,
            n,
            max_sections,
            one_black_side,
            symmetry_reduction,
            check_all,
            jobs,
            pretty,
        } => {
            if !exhaustive {
                return Err("only --exhaustive sweeps are supported".into());
            }
            dichotomy(
                n,
                max_sections,
                one_black_side,
                symmetry_reduction,
                check_all,
                jobs,
                pretty,
            )
        }
        Command::Lemma8(args) => lemma8(&args),
        Command::Tree(args) => tree(&args),
        Command::Const { pretty } => Ok(constants_command(pretty)),
        Command::Bounds {
            chi,
            faces,
            norm,
            volume,
            surface_chi,
            pretty,
        } => bounds(chi, faces, norm, volume, surface_chi, pretty),
        Command::Obstruct {
            volume,
            empty_guts_excluded,
            pretty,
        } => obstruct(volume, empty_guts_excluded, pretty),
    }
}

fn analyze(args: &ConfigArg) -> Result<i32, String> {
    let started = Instant::now();
    let raw = read_config(&args.config)?;
    let cfg: CutConfig = parse_json(&raw)?;
    let system = cfg.to_system().map_err(|e| e.to_string())?;
    let explicit = cfg.parse_colouring(&system).map_err(|e| e.to_string())?;
    let colourings = match explicit {
        Some(col) => {
            cutlab_core::check_canonical(&system, &col)
                .map_err(|e| format!("colouring: {e}"))?;
            vec![col]
        }
        None => enumerate_canonical_colourings(&system),
    };

    let tree = system.region_tree();
    let mut col_reports = Vec::new();
    let mut violations = 0;
    for col in &colourings {
        let d = compute_d(&system, col).map_err(|e| e.to_string())?;
        if matches!(d.verdict, Verdict::Violated { .. }) {
            violations += 1;
        }
        let ladder = match corollary1_check(&system, col).map_err(|e| e.to_string())? {
            LadderVerdict::NotApplicable { pair } => format!(
                "not applicable: sections {} and {} share a white-parallel arc",
                pair.0, pair.1
            ),
            LadderVerdict::LadderOfSize0 => "empty system".into(),
            LadderVerdict::LadderOfSize { size } => format!("ladder of size {size}"),
            LadderVerdict::Violation { types } => format!("violated: types {types:?}"),
        };
        let sub = subdivide_cut_simplex(&system, col).map_err(|e| e.to_string())?;
        col_reports.push(ColouringReport {
            colours: col.colours().iter().map(|c| c.to_string()).collect(),
            per_section_d: d.per_section.clone(),
            total: d.total,
            verdict: match d.verdict {
                Verdict::Holds => "holds".into(),
                Verdict::Violated { total, allowed, .. } => {
                    format!("violated: total {total} not in {allowed:?}")
                }
            },
            survivors: d.survivors,
            ladder,
            admissible_labeling: sub.is_admissible(),
        });
    }

    let doc = AnalyzeReport {
        command: "analyze".into(),
        schema: config::SCHEMA_VERSION,
        n: system.n(),
        sections: system
            .sections()
            .iter()
            .enumerate()
            .map(|(index, s)| SectionReport {
                index,
                kind: format!("{:?}", s.kind()),
                section_type: s.section_type().members().collect(),
                polytope_vertices: s.polytope_vertices().len(),
            })
            .collect(),
        regions: (0..tree.node_count())
            .map(|r| RegionReport {
                index: r,
                vertices: tree.node(r).vertices.clone(),
                incident_sections: tree.incident_sections(r),
            })
            .collect(),
        colourings: col_reports,
        violations,
        elapsed_ms: started.elapsed().as_millis(),
    };
    if args.pretty {
        println!(
            "cut system: n = {}, {} sections, {} regions",
            doc.n,
            doc.sections.len(),
            doc.regions.len()
        );
        for s in &doc.sections {
            println!("  section {}: {} type {:?}", s.index, s.kind, s.section_type);
        }
        for c in &doc.colourings {
            println!(
                "  colouring {:?}: D = {:?}, total {}, {} | {}",
                c.colours, c.per_section_d, c.total, c.verdict, c.ladder
            );
        }
    } else {
        emit(&doc);
    }
    Ok(if violations == 0 {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

fn worker_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, String> {
    let jobs = jobs.or_else(|| {
        std::env::var("CUTLAB_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    builder.build().map_err(|e| e.to_string())
}

fn dichotomy(
    n: usize,
    max_sections: usize,
    one_black_side: bool,
    symmetry_reduction: bool,
    check_all: bool,
    jobs: Option<usize>,
    pretty: bool,
) -> Result<i32, String> {
    if !(2..=3).contains(&n) {
        return Err(format!("the sweep grid covers n in {{2, 3}}, got {n}"));
    }
    if max_sections > 6 {
        return Err(format!("max_sections is capped at 6, got {max_sections}"));
    }
    let started = Instant::now();
    let options = SweepOptions {
        one_black_side,
        symmetry_reduction,
        check_lemma9: check_all,
        check_corollary2: check_all,
        check_reduction: check_all,
        check_admissibility: check_all,
    };
    let pool = worker_pool(jobs)?;
    let summary = pool.install(|| exhaustive_dichotomy_sweep(n, max_sections, &options));
    let clean = summary.clean();
    let violation_count = summary.violations.len();
    let failure_count = summary.check_failures.len();
    let doc = DichotomyReportDoc {
        command: "dichotomy".into(),
        schema: config::SCHEMA_VERSION,
        summary,
        elapsed_ms: started.elapsed().as_millis(),
    };
    if pretty {
        println!(
            "dichotomy sweep: n = {}, max sections = {}, {} multisets, {} colourings",
            doc.summary.n, doc.summary.max_sections, doc.summary.multisets, doc.summary.colourings
        );
        println!("{violation_count} violations, {failure_count} check failures");
        for v in doc.summary.violations.iter().take(10) {
            println!(
                "  violation: types {:?} whites {:?} D {:?} total {}",
                v.instance.types, v.instance.whites, v.per_section, v.total
            );
        }
    } else {
        emit(&doc);
    }
    Ok(if clean { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn lemma8(args: &ConfigArg) -> Result<i32, String> {
    let started = Instant::now();
    let raw = read_config(&args.config)?;
    let cfg: PairConfig = parse_json(&raw)?;
    let (first, second, n) = cfg.to_sections().map_err(|e| e.to_string())?;
    let outcome = lemma8_witness(&first, &second, n).map_err(|e| e.to_string())?;
    let doc = Lemma8Report {
        command: "lemma8".into(),
        schema: config::SCHEMA_VERSION,
        outcome: match &outcome {
            Lemma8Outcome::Intersecting => "intersecting".into(),
            Lemma8Outcome::ParallelArcWitness { .. } => "parallel-arc witness".into(),
        },
        witness_face: match &outcome {
            Lemma8Outcome::ParallelArcWitness { face } => Some(face.to_vec()),
            _ => None,
        },
        elapsed_ms: started.elapsed().as_millis(),
    };
    if args.pretty {
        match &doc.witness_face {
            Some(face) => println!("parallel arcs on face {face:?}"),
            None => println!("sections intersect"),
        }
    } else {
        emit(&doc);
    }
    Ok(EXIT_OK)
}

fn tree(args: &ConfigArg) -> Result<i32, String> {
    let started = Instant::now();
    let raw = read_config(&args.config)?;
    let cfg: TreeConfig = parse_json(&raw)?;
    let tree = cfg.to_tree().map_err(|e| e.to_string())?;
    let show_point = |p: &TreePoint| -> String {
        match p {
            TreePoint::Node(v) => format!("node {v}"),
            TreePoint::OnEdge { edge, offset } => {
                format!("edge {edge} at offset {}", format_rational(offset))
            }
        }
    };
    let mut doc = TreeReport {
        command: "tree".into(),
        schema: config::SCHEMA_VERSION,
        query: String::new(),
        length: None,
        nodes: None,
        point: None,
        branch_count: None,
        subtree_length: None,
        corner_lengths: None,
        collinear: None,
        elapsed_ms: 0,
    };
    match &cfg.query {
        TreeQuery::Geodesic([a, b]) => {
            doc.query = "geodesic".into();
            let x = a
                .to_point(&tree, "query.geodesic[0]")
                .map_err(|e| e.to_string())?;
            let y = b
                .to_point(&tree, "query.geodesic[1]")
                .map_err(|e| e.to_string())?;
            let geo = tree.geodesic(&x, &y);
            doc.length = Some(format_rational(&geo.length));
            doc.nodes = Some(geo.nodes);
        }
        TreeQuery::Median([a, b, c]) => {
            doc.query = "median".into();
            let x = a
                .to_point(&tree, "query.median[0]")
                .map_err(|e| e.to_string())?;
            let y = b
                .to_point(&tree, "query.median[1]")
                .map_err(|e| e.to_string())?;
            let z = c
                .to_point(&tree, "query.median[2]")
                .map_err(|e| e.to_string())?;
            doc.point = Some(show_point(&tree.median(&x, &y, &z)));
        }
        TreeQuery::BranchPoints(specs) => {
            doc.query = "branch_points".into();
            if specs.len() < 2 {
                return Err("query.branch_points: need at least two points".into());
            }
            let mut points = Vec::with_capacity(specs.len());
            for (i, s) in specs.iter().enumerate() {
                points.push(
                    s.to_point(&tree, &format!("query.branch_points[{i}]"))
                        .map_err(|e| e.to_string())?,
                );
            }
            let subtree = steiner_branch_points(&tree, &points);
            doc.branch_count = Some(subtree.branch_count);
            doc.subtree_length = Some(format_rational(&subtree.total_length));
        }
        TreeQuery::Straighten([a, b, c]) => {
            doc.query = "straighten".into();
            let x = a
                .to_point(&tree, "query.straighten[0]")
                .map_err(|e| e.to_string())?;
            let y = b
                .to_point(&tree, "query.straighten[1]")
                .map_err(|e| e.to_string())?;
            let z = c
                .to_point(&tree, "query.straighten[2]")
                .map_err(|e| e.to_string())?;
            let st = straighten_triangle(&tree, &x, &y, &z);
            doc.point = Some(show_point(&st.median));
            doc.corner_lengths = Some(
                st.corners
                    .iter()
                    .map(|g| format_rational(&g.length))
                    .collect(),
            );
            doc.collinear = Some(st.collinear);
        }
    }
    doc.elapsed_ms = started.elapsed().as_millis();
    emit(&doc);
    Ok(EXIT_OK)
}

fn constants_command(pretty: bool) -> i32 {
    let started = Instant::now();
    let c = constants();
    let doc = ConstReport {
        command: "const".into(),
        schema: config::SCHEMA_VERSION,
        v3: c.v3,
        two_v3: 2.0 * c.v3,
        v_oct: c.v_oct,
        v2: c.v2,
        g2: c.g2,
        lambda_pi_over_6: lobachevsky(
            Angle::from_radians(std::f64::consts::PI / 6.0).expect("finite"),
        ),
        elapsed_ms: started.elapsed().as_millis(),
    };
    if pretty {
        println!("V3     = {:.12}  (regular ideal 3-simplex)", doc.v3);
        println!("2*V3   = {:.12}", doc.two_v3);
        println!("V_oct  = {:.12}  (regular ideal octahedron)", doc.v_oct);
        println!("V2     = {:.12}  (ideal triangle area)", doc.v2);
        println!("G2     = {:.12}  (surface Gauss-Bonnet factor)", doc.g2);
    } else {
        emit(&doc);
    }
    EXIT_OK
}

fn bounds(
    chi: Option<i64>,
    faces: Option<u32>,
    norm: Option<f64>,
    volume: Option<f64>,
    surface_chi: Option<i64>,
    pretty: bool,
) -> Result<i32, String> {
    let started = Instant::now();
    let guts = match chi {
        Some(chi) => {
            let g = GutsData::new(chi, faces).map_err(|e| e.to_string())?;
            let b = guts_bounds(&g);
            Some(GutsSection {
                chi,
                faces,
                thm2_simplex: b.thm2_simplex,
                thm2_poly: b.thm2_poly,
                agol_vol: b.agol_vol,
                oct_vol: b.oct_vol,
            })
        }
        None => None,
    };
    let hypersurface = if norm.is_some() || volume.is_some() {
        let m = ManifoldData::new(3, volume, norm).map_err(|e| e.to_string())?;
        let b = hypersurface_bounds(&m, surface_chi).map_err(|e| e.to_string())?;
        Some(HypersurfaceSection {
            norm_bound: b.norm_bound,
            c3: b.c3,
            volume_bound: b.volume_bound,
        })
    } else {
        None
    };
    if guts.is_none() && hypersurface.is_none() {
        return Err(
            "give --chi for guts bounds and/or --norm/--volume for hypersurface bounds".into(),
        );
    }
    let doc = BoundsReport {
        command: "bounds".into(),
        schema: config::SCHEMA_VERSION,
        guts,
        hypersurface,
        elapsed_ms: started.elapsed().as_millis(),
    };
    if pretty {
        if let Some(g) = &doc.guts {
            println!("guts: chi = {}", g.chi);
            println!("  normal norm >= {}", g.thm2_simplex);
            if let Some(p) = g.thm2_poly {
                println!("  polyhedral norm >= {p}");
            }
            println!("  volume >= {:.6} (2*V3 bound)", g.agol_vol);
            println!("  volume >= {:.6} (V_oct bound)", g.oct_vol);
        }
        if let Some(h) = &doc.hypersurface {
            println!(
                "hypersurface: norm bound {:.6}, C3 = {:.6}",
                h.norm_bound, h.c3
            );
            if let Some(v) = h.volume_bound {
                println!("  required volume >= {v:.6}");
            }
        }
    } else {
        emit(&doc);
    }
    Ok(EXIT_OK)
}

fn obstruct(volume: f64, empty_guts_excluded: bool, pretty: bool) -> Result<i32, String> {
    let started = Instant::now();
    let m = ManifoldData::new(3, Some(volume), None).map_err(|e| e.to_string())?;
    let report = tight_obstruction(&m, empty_guts_excluded).map_err(|e| e.to_string())?;
    let doc = ObstructReport {
        command: "obstruct".into(),
        schema: config::SCHEMA_VERSION,
        volume: report.volume,
        threshold_two_v3: report.threshold,
        verdict: match report.verdict {
            ObstructionVerdict::Obstructed => "obstructed".into(),
            ObstructionVerdict::NotObstructed => "not obstructed".into(),
        },
        reasons: report.reasons.iter().map(|r| format!("{r:?}")).collect(),
        margin: report.margin,
        tolerance: report.tolerance,
        elapsed_ms: started.elapsed().as_millis(),
    };
    if pretty {
        println!(
            "volume {:.6} vs threshold 2*V3 = {:.6}: {}",
            doc.volume, doc.threshold_two_v3, doc.verdict
        );
        for r in &doc.reasons {
            println!("  reason: {r}");
        }
        println!("  margin {:.6} (tolerance {})", doc.margin, doc.tolerance);
    } else {
        emit(&doc);
    }
    Ok(EXIT_OK)
}
