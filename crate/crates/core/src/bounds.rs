//! Norm and volume inequality evaluators: surface simplicial volume, guts
//! bounds, the tight-lamination obstruction, and hypersurface bounds.
//!
//! Inputs are validated at construction: χ(Guts) must be nonpositive and
//! polyhedra need at least four faces. Every strict comparison carries an
//! explicit tolerance and the reports state the margin, so no verdict hides
//! a borderline call.

use std::fmt;

use crate::lobachevsky::constants;

/// Default tolerance band around strict inequality thresholds.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum BoundsError {
    InvalidGuts(String),
    InconsistentVolume { volume: f64, expected: f64 },
    MissingVolume,
    MissingNorm,
    UnsupportedDimension(usize),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::InvalidGuts(msg) => write!(f, "invalid guts data: {msg}"),
            BoundsError::InconsistentVolume { volume, expected } => write!(
                f,
                "volume {volume} and simplicial norm disagree (norm predicts {expected})"
            ),
            BoundsError::MissingVolume => write!(f, "no volume (or norm) available"),
            BoundsError::MissingNorm => write!(f, "no simplicial norm (or volume) available"),
            BoundsError::UnsupportedDimension(n) => {
                write!(f, "constants are only built in for dimension 3, got {n}")
            }
        }
    }
}

impl std::error::Error for BoundsError {}

/// Euler characteristic of the guts and, optionally, the face count of the
/// polyhedron driving the polyhedral bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GutsData {
    chi: i64,
    faces: Option<u32>,
}

impl GutsData {
    pub fn new(chi: i64, faces: Option<u32>) -> Result<Self, BoundsError> {
        if chi > 0 {
            return Err(BoundsError::InvalidGuts(format!(
                "χ(Guts) must be ≤ 0, got {chi}"
            )));
        }
        if let Some(f) = faces {
            if f < 4 {
                return Err(BoundsError::InvalidGuts(format!(
                    "polyhedra have at least 4 faces, got {f}"
                )));
            }
        }
        Ok(GutsData { chi, faces })
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn faces(&self) -> Option<u32> {
        self.faces
    }
}

/// Dimension plus whichever of volume and simplicial norm is known.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ManifoldData {
    dimension: usize,
    volume: Option<f64>,
    simplicial_norm: Option<f64>,
}

impl ManifoldData {
    /// For dimension 3, a volume and a norm given together must satisfy
    /// `volume = V3 · norm` within a 1e−6 relative band.
    pub fn new(
        dimension: usize,
        volume: Option<f64>,
        simplicial_norm: Option<f64>,
    ) -> Result<Self, BoundsError> {
        if dimension == 3 {
            if let (Some(vol), Some(norm)) = (volume, simplicial_norm) {
                let expected = constants().v3 * norm;
                if (vol - expected).abs() > 1e-6 * expected.abs().max(1.0) {
                    return Err(BoundsError::InconsistentVolume {
                        volume: vol,
                        expected,
                    });
                }
            }
        }
        Ok(ManifoldData {
            dimension,
            volume,
            simplicial_norm,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn volume(&self) -> Option<f64> {
        self.volume
    }

    pub fn simplicial_norm(&self) -> Option<f64> {
        self.simplicial_norm
    }

    /// Volume, or its norm-derived value for hyperbolic 3-manifolds.
    fn effective_volume(&self) -> Option<f64> {
        self.volume.or_else(|| {
            if self.dimension == 3 {
                self.simplicial_norm.map(|n| constants().v3 * n)
            } else {
                None
            }
        })
    }

    /// Simplicial norm, or its volume-derived value in dimension 3.
    fn effective_norm(&self) -> Option<f64> {
        self.simplicial_norm.or_else(|| {
            if self.dimension == 3 {
                self.volume.map(|v| v / constants().v3)
            } else {
                None
            }
        })
    }
}

/// Simplicial volume of a disjoint union of closed orientable surfaces:
/// components of negative Euler characteristic contribute −2χ, spheres and
/// tori contribute nothing.
pub fn surface_norm(chis: &[i64]) -> f64 {
    chis.iter()
        .map(|&chi| if chi < 0 { (-2 * chi) as f64 } else { 0.0 })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GutsBounds {
    /// Lower bound for the normal norm over simplices: −χ.
    pub thm2_simplex: f64,
    /// Lower bound over f-faced polyhedra: −2χ/(f−2), when f is given.
    pub thm2_poly: Option<f64>,
    /// Volume bound −2·V3·χ.
    pub agol_vol: f64,
    /// Volume bound −V_oct·χ.
    pub oct_vol: f64,
}

pub fn guts_bounds(g: &GutsData) -> GutsBounds {
    let c = constants();
    let chi = g.chi() as f64;
    GutsBounds {
        thm2_simplex: -chi,
        thm2_poly: g.faces().map(|f| -2.0 * chi / (f as f64 - 2.0)),
        agol_vol: -2.0 * c.v3 * chi,
        oct_vol: -c.v_oct * chi,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionVerdict {
    Obstructed,
    NotObstructed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionReason {
    /// Volume below 2·V3: no tight essential lamination with nonempty guts.
    Corollary4,
    /// With the empty-guts exclusion asserted by the caller: no tight
    /// lamination at all.
    Corollary5,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub verdict: ObstructionVerdict,
    pub reasons: Vec<ObstructionReason>,
    pub volume: f64,
    pub threshold: f64,
    /// `threshold − volume`; positive iff obstructed.
    pub margin: f64,
    pub tolerance: f64,
}

/// The volume obstruction: `volume < 2·V3` (strictly, with the tolerance
/// band reported) obstructs tight essential laminations with nonempty guts.
/// When the caller also asserts the empty-guts exclusion, the verdict
/// upgrades to the full no-tight-lamination conclusion.
pub fn tight_obstruction(
    m: &ManifoldData,
    empty_guts_excluded: bool,
) -> Result<ObstructionReport, BoundsError> {
    if m.dimension() != 3 {
        return Err(BoundsError::UnsupportedDimension(m.dimension()));
    }
    let volume = m.effective_volume().ok_or(BoundsError::MissingVolume)?;
    let threshold = 2.0 * constants().v3;
    let margin = threshold - volume;
    let obstructed = volume < threshold - DEFAULT_TOLERANCE;
    let mut reasons = Vec::new();
    if obstructed {
        reasons.push(ObstructionReason::Corollary4);
        if empty_guts_excluded {
            reasons.push(ObstructionReason::Corollary5);
        }
    }
    Ok(ObstructionReport {
        verdict: if obstructed {
            ObstructionVerdict::Obstructed
        } else {
            ObstructionVerdict::NotObstructed
        },
        reasons,
        volume,
        threshold,
        margin,
        tolerance: DEFAULT_TOLERANCE,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypersurfaceBounds {
    /// Upper bound for the norm of a geodesic hypersurface:
    /// `(n+1)/2 · ‖M‖`.
    pub norm_bound: f64,
    /// The dimension-3 constant `(2/(n+1))·(V3/V2)·G2 = −V3`.
    pub c3: f64,
    /// `C3 · χ(F)` when χ(F) is supplied; a geodesic surface must satisfy
    /// `Vol(M) ≥ volume_bound`.
    pub volume_bound: Option<f64>,
}

/// Norm and volume bounds for geodesic hypersurfaces of a closed
/// hyperbolic manifold. Only the dimension-3 constants are built in.
pub fn hypersurface_bounds(
    m: &ManifoldData,
    surface_chi: Option<i64>,
) -> Result<HypersurfaceBounds, BoundsError> {
    let n = m.dimension();
    if n != 3 {
        return Err(BoundsError::UnsupportedDimension(n));
    }
    let norm = m.effective_norm().ok_or(BoundsError::MissingNorm)?;
    let c = constants();
    let c3 = (2.0 / (n as f64 + 1.0)) * (c.v3 / c.v2) * c.g2;
    Ok(HypersurfaceBounds {
        norm_bound: (n as f64 + 1.0) / 2.0 * norm,
        c3,
        volume_bound: surface_chi.map(|chi| c3 * chi as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_norm_cases() {
        assert_eq!(surface_norm(&[-2]), 4.0);
        assert_eq!(surface_norm(&[0]), 0.0);
        assert_eq!(surface_norm(&[2]), 0.0);
        assert_eq!(surface_norm(&[-2, 0, -4]), 12.0);
    }

    #[test]
    fn guts_bounds_values() {
        let g = GutsData::new(-1, None).unwrap();
        let b = guts_bounds(&g);
        assert_eq!(b.thm2_simplex, 1.0);
        assert!((b.agol_vol - 2.029883212819307).abs() < 5e-3);
        assert!((b.oct_vol - 3.663862376708876).abs() < 5e-3);
        assert_eq!(b.thm2_poly, None);

        // f = 4 reproduces the simplex bound exactly.
        let g = GutsData::new(-1, Some(4)).unwrap();
        assert_eq!(guts_bounds(&g).thm2_poly, Some(1.0));

        let zero = GutsData::new(0, None).unwrap();
        let b = guts_bounds(&zero);
        assert_eq!(b.thm2_simplex, 0.0);
        assert_eq!(b.agol_vol, 0.0);
        assert_eq!(b.oct_vol, 0.0);

        assert!(GutsData::new(1, None).is_err());
        assert!(GutsData::new(-1, Some(3)).is_err());
    }

    #[test]
    fn weeks_manifold_is_obstructed() {
        let weeks = ManifoldData::new(3, Some(0.9427), None).unwrap();
        let report = tight_obstruction(&weeks, false).unwrap();
        assert_eq!(report.verdict, ObstructionVerdict::Obstructed);
        assert_eq!(report.reasons, vec![ObstructionReason::Corollary4]);
        assert!((report.margin - 1.087).abs() < 5e-3);

        let upgraded = tight_obstruction(&weeks, true).unwrap();
        assert_eq!(
            upgraded.reasons,
            vec![ObstructionReason::Corollary4, ObstructionReason::Corollary5]
        );
    }

    #[test]
    fn large_volume_not_obstructed() {
        let m = ManifoldData::new(3, Some(2.5), None).unwrap();
        let report = tight_obstruction(&m, false).unwrap();
        assert_eq!(report.verdict, ObstructionVerdict::NotObstructed);
        assert!(report.reasons.is_empty());
    }

    #[test]
    fn exact_threshold_not_obstructed() {
        let threshold = 2.0 * constants().v3;
        let m = ManifoldData::new(3, Some(threshold), None).unwrap();
        let report = tight_obstruction(&m, false).unwrap();
        assert_eq!(report.verdict, ObstructionVerdict::NotObstructed);
    }

    #[test]
    fn missing_volume_is_an_error() {
        let m = ManifoldData::new(3, None, None).unwrap();
        assert_eq!(
            tight_obstruction(&m, false).unwrap_err(),
            BoundsError::MissingVolume
        );
    }

    #[test]
    fn obstruction_from_norm_matches_volume() {
        let v3 = constants().v3;
        let by_volume = ManifoldData::new(3, Some(0.9427), None).unwrap();
        let by_norm = ManifoldData::new(3, None, Some(0.9427 / v3)).unwrap();
        let a = tight_obstruction(&by_volume, false).unwrap();
        let b = tight_obstruction(&by_norm, false).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert!((a.volume - b.volume).abs() < 1e-12);
    }

    #[test]
    fn hypersurface_bounds_dimension_three() {
        let m = ManifoldData::new(3, None, Some(4.0)).unwrap();
        let b = hypersurface_bounds(&m, None).unwrap();
        assert_eq!(b.norm_bound, 8.0);
        // C3 = (2/4)(V3/π)(−2π) = −V3.
        assert!((b.c3 + constants().v3).abs() < 1e-12);
        assert!((b.c3 + 1.0149416064096536).abs() < 1e-3);

        // χ(F) = −2: a geodesic surface needs Vol(M) ≥ 2·V3 ≈ 2.0299.
        let m = ManifoldData::new(3, Some(1.0), None).unwrap();
        let b = hypersurface_bounds(&m, Some(-2)).unwrap();
        let bound = b.volume_bound.unwrap();
        assert!((bound - 2.029883212819307).abs() < 5e-3);
        assert!(1.0 < bound, "volume 1.0 rules the surface out");

        let wrong_dim = ManifoldData::new(4, None, Some(1.0)).unwrap();
        assert!(matches!(
            hypersurface_bounds(&wrong_dim, None),
            Err(BoundsError::UnsupportedDimension(4))
        ));
    }

    #[test]
    fn norm_volume_consistency_enforced() {
        let v3 = constants().v3;
        assert!(ManifoldData::new(3, Some(2.0 * v3), Some(2.0)).is_ok());
        assert!(ManifoldData::new(3, Some(2.0), Some(2.0)).is_err());
    }

    #[test]
    fn guts_cross_check_against_surface_norm() {
        // −χ(Guts) = ¼‖∂Guts‖ when χ(∂Guts) = 2χ(Guts).
        for chi in [-1i64, -2, -3, -7] {
            let g = GutsData::new(chi, None).unwrap();
            let b = guts_bounds(&g);
            let boundary_chi = 2 * chi;
            assert_eq!(b.thm2_simplex, surface_norm(&[boundary_chi]) / 4.0);
        }
    }

    #[test]
    fn bounds_monotone_in_chi() {
        let mut last = guts_bounds(&GutsData::new(0, Some(5)).unwrap());
        for chi in 1..=6 {
            let b = guts_bounds(&GutsData::new(-chi, Some(5)).unwrap());
            assert!(b.thm2_simplex >= last.thm2_simplex);
            assert!(b.agol_vol >= last.agol_vol);
            assert!(b.oct_vol >= last.oct_vol);
            assert!(b.thm2_poly.unwrap() >= last.thm2_poly.unwrap());
            last = b;
        }
    }
}
