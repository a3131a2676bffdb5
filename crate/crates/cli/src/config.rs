//! JSON schema (version 1) for geometry, tree, and pair-check inputs, and
//! the conversions into core types.
//!
//! Rationals in geometry inputs are strings of the form `p/q` or bare
//! integers; floating-point literals are rejected so no geometric input is
//! ever inexact. Volumes and angles elsewhere accept floats.

use serde::{Deserialize, Serialize};

use cutlab_core::rational::{format_rational, parse_rational, Rational};
use cutlab_core::trees::{MetricTree, TreePoint};
use cutlab_core::{
    classify_section, AmbientSimplex, Classified, Colour, Colouring, CutSystem, Hyperplane,
    Section, SectionType,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// A rational literal: `"p/q"` or an integer.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RationalSpec {
    Text(String),
    Int(i64),
}

impl RationalSpec {
    pub fn parse(&self, at: &str) -> Result<Rational, ConfigError> {
        match self {
            RationalSpec::Text(s) => {
                parse_rational(s).map_err(|e| err(format!("{at}: {e}")))
            }
            RationalSpec::Int(i) => Ok(cutlab_core::rational::int(*i)),
        }
    }

    pub fn from_rational(x: &Rational) -> Self {
        RationalSpec::Text(format_rational(x))
    }
}

/// One section: either a type with a level (the canonical plane family) or
/// an explicit plane.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SectionSpec {
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub section_type: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<RationalSpec>>,
    pub level: RationalSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CutConfig {
    pub schema: u32,
    pub n: usize,
    pub sections: Vec<SectionSpec>,
    /// Optional explicit colouring, one entry per region in region order;
    /// when absent, all canonical colourings are enumerated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colouring: Option<Vec<String>>,
}

fn check_schema(schema: u32) -> Result<(), ConfigError> {
    if schema != SCHEMA_VERSION {
        return Err(err(format!(
            "schema: expected {SCHEMA_VERSION}, got {schema}"
        )));
    }
    Ok(())
}

impl CutConfig {
    pub fn to_system(&self) -> Result<CutSystem, ConfigError> {
        check_schema(self.schema)?;
        let ambient =
            AmbientSimplex::new(self.n).map_err(|e| err(format!("n: {e}")))?;
        let mut sections = Vec::with_capacity(self.sections.len());
        for (i, spec) in self.sections.iter().enumerate() {
            sections.push(section_from_spec(spec, &ambient, &format!("sections[{i}]"))?);
        }
        CutSystem::new(ambient, sections).map_err(|e| err(format!("sections: {e}")))
    }

    pub fn parse_colouring(&self, system: &CutSystem) -> Result<Option<Colouring>, ConfigError> {
        let Some(raw) = &self.colouring else {
            return Ok(None);
        };
        let regions = system.region_tree().node_count();
        if raw.len() != regions {
            return Err(err(format!(
                "colouring: expected {regions} entries, got {}",
                raw.len()
            )));
        }
        let mut colours = Vec::with_capacity(raw.len());
        for (i, c) in raw.iter().enumerate() {
            match c.as_str() {
                "black" => colours.push(Colour::Black),
                "white" => colours.push(Colour::White),
                other => {
                    return Err(err(format!(
                        "colouring[{i}]: expected \"black\" or \"white\", got \"{other}\""
                    )))
                }
            }
        }
        Ok(Some(Colouring::new(colours)))
    }

    /// Re-emits a system in config shape; parsing the result reproduces the
    /// system exactly (canonical planes, stable ordering).
    pub fn from_system(system: &CutSystem, colouring: Option<&Colouring>) -> CutConfig {
        CutConfig {
            schema: SCHEMA_VERSION,
            n: system.n(),
            sections: system
                .sections()
                .iter()
                .map(|s| SectionSpec {
                    section_type: None,
                    coeffs: Some(
                        s.plane()
                            .coeffs()
                            .iter()
                            .map(RationalSpec::from_rational)
                            .collect(),
                    ),
                    level: RationalSpec::from_rational(s.plane().level()),
                })
                .collect(),
            colouring: colouring.map(|col| {
                col.colours()
                    .iter()
                    .map(|c| c.to_string())
                    .collect()
            }),
        }
    }
}

fn section_from_spec(
    spec: &SectionSpec,
    ambient: &AmbientSimplex,
    at: &str,
) -> Result<Section, ConfigError> {
    let n = ambient.n();
    let level = spec.level.parse(&format!("{at}.level"))?;
    match (&spec.section_type, &spec.coeffs) {
        (Some(members), None) => {
            let stype = SectionType::new(members.iter().copied(), n)
                .map_err(|e| err(format!("{at}.type: {e}")))?;
            let coeffs: Vec<Rational> = (0..=n)
                .map(|k| {
                    if stype.contains(k) {
                        cutlab_core::rational::int(1)
                    } else {
                        cutlab_core::rational::int(0)
                    }
                })
                .collect();
            build_section(coeffs, level, ambient, at)
        }
        (None, Some(raw)) => {
            let mut coeffs = Vec::with_capacity(raw.len());
            for (k, c) in raw.iter().enumerate() {
                coeffs.push(c.parse(&format!("{at}.coeffs[{k}]"))?);
            }
            build_section(coeffs, level, ambient, at)
        }
        (Some(_), Some(_)) => Err(err(format!("{at}: give either type or coeffs, not both"))),
        (None, None) => Err(err(format!("{at}: missing type or coeffs"))),
    }
}

fn build_section(
    coeffs: Vec<Rational>,
    level: Rational,
    ambient: &AmbientSimplex,
    at: &str,
) -> Result<Section, ConfigError> {
    if coeffs.len() != ambient.vertex_count() {
        return Err(err(format!(
            "{at}.coeffs: expected {} entries, got {}",
            ambient.vertex_count(),
            coeffs.len()
        )));
    }
    let plane = Hyperplane::new(coeffs, level).map_err(|e| err(format!("{at}: {e}")))?;
    match classify_section(&plane, ambient).map_err(|e| err(format!("{at}: {e}")))? {
        Classified::Section(s) => Ok(s),
        Classified::Empty => Err(err(format!("{at}: plane misses the simplex"))),
    }
}

/// A point of a metric tree: a node index or a position inside an edge.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum PointSpec {
    Node { node: usize },
    OnEdge { edge: usize, offset: RationalSpec },
}

impl PointSpec {
    pub fn to_point(&self, tree: &MetricTree, at: &str) -> Result<TreePoint, ConfigError> {
        let point = match self {
            PointSpec::Node { node } => TreePoint::Node(*node),
            PointSpec::OnEdge { edge, offset } => TreePoint::OnEdge {
                edge: *edge,
                offset: offset.parse(&format!("{at}.offset"))?,
            },
        };
        tree.validate_point(&point)
            .map_err(|e| err(format!("{at}: {e}")))?;
        Ok(point)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeQuery {
    Geodesic([PointSpec; 2]),
    Median([PointSpec; 3]),
    BranchPoints(Vec<PointSpec>),
    Straighten([PointSpec; 3]),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeConfig {
    pub schema: u32,
    pub nodes: usize,
    /// Edges as `[end, end, length]` with positive rational lengths.
    pub edges: Vec<(usize, usize, RationalSpec)>,
    pub query: TreeQuery,
}

impl TreeConfig {
    pub fn to_tree(&self) -> Result<MetricTree, ConfigError> {
        check_schema(self.schema)?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, (u, v, len)) in self.edges.iter().enumerate() {
            edges.push((*u, *v, len.parse(&format!("edges[{i}]"))?));
        }
        MetricTree::new(self.nodes, edges).map_err(|e| err(format!("edges: {e}")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairConfig {
    pub schema: u32,
    pub n: usize,
    pub first: SectionSpec,
    pub second: SectionSpec,
}

impl PairConfig {
    pub fn to_sections(&self) -> Result<(Section, Section, usize), ConfigError> {
        check_schema(self.schema)?;
        let ambient = AmbientSimplex::new(self.n).map_err(|e| err(format!("n: {e}")))?;
        Ok((
            section_from_spec(&self.first, &ambient, "first")?,
            section_from_spec(&self.second, &ambient, "second")?,
            self.n,
        ))
    }
}
