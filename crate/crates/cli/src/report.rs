//! Output documents: one JSON report per command, with stable field order,
//! plus the human-readable rendering behind `--pretty`.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SectionReport {
    pub index: usize,
    pub kind: String,
    #[serde(rename = "type")]
    pub section_type: Vec<usize>,
    pub polytope_vertices: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionReport {
    pub index: usize,
    pub vertices: Vec<usize>,
    pub incident_sections: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColouringReport {
    pub colours: Vec<String>,
    pub per_section_d: Vec<usize>,
    pub total: usize,
    pub verdict: String,
    pub survivors: Vec<(usize, usize)>,
    pub ladder: String,
    pub admissible_labeling: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub command: String,
    pub schema: u32,
    pub n: usize,
    pub sections: Vec<SectionReport>,
    pub regions: Vec<RegionReport>,
    pub colourings: Vec<ColouringReport>,
    pub violations: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstReport {
    pub command: String,
    pub schema: u32,
    pub v3: f64,
    pub two_v3: f64,
    pub v_oct: f64,
    pub v2: f64,
    pub g2: f64,
    pub lambda_pi_over_6: f64,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructReport {
    pub command: String,
    pub schema: u32,
    pub volume: f64,
    pub threshold_two_v3: f64,
    pub verdict: String,
    pub reasons: Vec<String>,
    pub margin: f64,
    pub tolerance: f64,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub command: String,
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guts: Option<GutsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypersurface: Option<HypersurfaceSection>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct GutsSection {
    pub chi: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<u32>,
    pub thm2_simplex: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thm2_poly: Option<f64>,
    pub agol_vol: f64,
    pub oct_vol: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypersurfaceSection {
    pub norm_bound: f64,
    pub c3: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume_bound: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma8Report {
    pub command: String,
    pub schema: u32,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_face: Option<Vec<usize>>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeReport {
    pub command: String,
    pub schema: u32,
    pub query: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subtree_length: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corner_lengths: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collinear: Option<bool>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReportDoc {
    pub command: String,
    pub schema: u32,
    pub summary: cutlab_oracles::SweepSummary,
    pub elapsed_ms: u128,
}

pub fn emit<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(doc).expect("report serializes")
    );
}
