//! The Lobachevsky function and the hyperbolic volume constants built on it.
//!
//! `Λ(θ) = −∫₀^θ log|2 sin t| dt` is odd and π-periodic. After reducing the
//! argument to `[0, π/2]`, the series
//!
//! ```text
//! Λ(θ) = θ − θ·log(2θ) + Σ_{m≥1} ζ(2m)/(m(2m+1)) · θ^{2m+1}/π^{2m}
//! ```
//!
//! converges geometrically with ratio at most 1/4. The coefficients
//! `ζ(2m)/π^{2m}` are the rationals `|B_{2m}|·2^{2m−1}/(2m)!`, computed
//! exactly from the Bernoulli recurrence and rounded to binary64 once.
//!
//! This module is the crate's floating-point island: the constants feed
//! inequality thresholds, not combinatorial decisions.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    radians: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleError(pub String);

impl fmt::Display for AngleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid angle: {}", self.0)
    }
}

impl std::error::Error for AngleError {}

impl Angle {
    pub fn from_radians(radians: f64) -> Result<Angle, AngleError> {
        if !radians.is_finite() {
            return Err(AngleError(format!("{radians} is not finite")));
        }
        Ok(Angle { radians })
    }

    pub fn radians(self) -> f64 {
        self.radians
    }
}

/// Series coefficients `ζ(2m)/(π^{2m} · m · (2m+1))` for m = 1..=M.
fn series_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        const TERMS: usize = 40;
        let bernoulli = bernoulli_numbers(2 * TERMS);
        let mut out = Vec::with_capacity(TERMS);
        let mut factorial = Rational::from_integer(BigInt::from(1));
        for k in 1..=2 * TERMS {
            factorial *= Rational::from_integer(BigInt::from(k as i64));
            if k % 2 != 0 {
                continue;
            }
            let m = k / 2;
            // zeta(2m) / pi^{2m} = |B_{2m}| * 2^{2m-1} / (2m)!.
            let power = Rational::from_integer(BigInt::from(2).pow((2 * m - 1) as u32));
            let zeta_over_pi = bernoulli[2 * m].abs() * power / &factorial;
            let denom = Rational::from_integer(BigInt::from((m * (2 * m + 1)) as i64));
            let coeff = zeta_over_pi / denom;
            out.push(coeff.to_f64().expect("coefficient fits in f64"));
        }
        out
    })
}

/// Bernoulli numbers B_0..=B_max by the defining recurrence, exact.
fn bernoulli_numbers(max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        if n == 0 {
            b.push(Rational::from_integer(BigInt::from(1)));
            continue;
        }
        // sum_{j=0}^{n} C(n+1, j) B_j = 0  =>  solve for B_n.
        let mut acc = Rational::zero();
        let mut binom = Rational::from_integer(BigInt::from(1)); // C(n+1, 0)
        for (j, bj) in b.iter().enumerate() {
            acc += &binom * bj;
            // C(n+1, j+1) = C(n+1, j) * (n+1-j) / (j+1).
            binom = binom * Rational::from_integer(BigInt::from((n + 1 - j) as i64))
                / Rational::from_integer(BigInt::from((j + 1) as i64));
        }
        let divisor = Rational::from_integer(BigInt::from((n + 1) as i64));
        b.push(-acc / divisor);
    }
    b
}

/// The Lobachevsky function, accurate to well below 1e−12 absolute error.
pub fn lobachevsky(theta: Angle) -> f64 {
    let pi = std::f64::consts::PI;
    let mut t = theta.radians();
    // Oddness, then π-periodicity into [0, π), then the reflection
    // Λ(θ) = −Λ(π−θ) into [0, π/2].
    let mut sign = 1.0;
    if t < 0.0 {
        t = -t;
        sign = -1.0;
    }
    t = t.rem_euclid(pi);
    if t > pi / 2.0 {
        t = pi - t;
        sign = -sign;
    }
    if t == 0.0 {
        return 0.0;
    }
    let mut sum = t - t * (2.0 * t).ln();
    // Coefficients already carry the 1/π^{2m} factor, so the running power
    // is a plain odd power of t.
    let t_squared = t * t;
    let mut power = t;
    for &c in series_coefficients() {
        power *= t_squared;
        let term = c * power;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sign * sum
}

/// The volume constants used by the inequality evaluators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantsTable {
    /// Volume of the regular ideal 3-simplex: 2·Λ(π/6) ≈ 1.0149416064….
    pub v3: f64,
    /// Volume of the regular ideal octahedron: 8·Λ(π/4) ≈ 3.6638623767….
    pub v_oct: f64,
    /// Area of the ideal triangle: π, by Gauss–Bonnet.
    pub v2: f64,
    /// Gauss–Bonnet factor for hyperbolic surfaces: Vol(F) = G2·χ(F) with
    /// χ(F) < 0, so G2 = −2π.
    pub g2: f64,
}

pub fn constants() -> ConstantsTable {
    let pi = std::f64::consts::PI;
    ConstantsTable {
        v3: 2.0 * lobachevsky(Angle::from_radians(pi / 6.0).expect("finite")),
        v_oct: 8.0 * lobachevsky(Angle::from_radians(pi / 4.0).expect("finite")),
        v2: pi,
        g2: -2.0 * pi,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleSumError {
    pub angles: [f64; 3],
    pub sum: f64,
}

impl fmt::Display for AngleSumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dihedral angles {:?} must be strictly inside (0, π) and sum to π (sum = {})",
            self.angles, self.sum
        )
    }
}

impl std::error::Error for AngleSumError {}

/// Volume of the ideal tetrahedron with dihedral angles (α, β, γ):
/// `Λ(α) + Λ(β) + Λ(γ)`. The angles must be strictly positive and sum to π
/// within 1e−9.
pub fn ideal_tetrahedron_volume(
    alpha: Angle,
    beta: Angle,
    gamma: Angle,
) -> Result<f64, AngleSumError> {
    let pi = std::f64::consts::PI;
    let angles = [alpha.radians(), beta.radians(), gamma.radians()];
    let sum: f64 = angles.iter().sum();
    let open = angles.iter().all(|&a| a > 0.0 && a < pi);
    if !open || (sum - pi).abs() > 1e-9 {
        return Err(AngleSumError { angles, sum });
    }
    Ok(lobachevsky(alpha) + lobachevsky(beta) + lobachevsky(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn angle(r: f64) -> Angle {
        Angle::from_radians(r).unwrap()
    }

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn zero_and_right_angle_vanish() {
        assert_eq!(lobachevsky(angle(0.0)), 0.0);
        // Oddness plus π-periodicity force Λ(π/2) = 0.
        assert!(lobachevsky(angle(PI / 2.0)).abs() < 1e-15);
        assert!(lobachevsky(angle(PI)).abs() < 1e-15);
    }

    #[test]
    fn known_values() {
        // Λ(π/6) = 0.50747080320….
        assert!((lobachevsky(angle(PI / 6.0)) - 0.5074708032048268).abs() < 1e-12);
        // Λ(π/4) = 0.45798….
        assert!((lobachevsky(angle(PI / 4.0)) - 0.45798) .abs() < 1e-5);
    }

    #[test]
    fn oddness_and_periodicity() {
        for k in 1..=1000 {
            let t = 0.0097 * k as f64;
            let l = lobachevsky(angle(t));
            assert!((lobachevsky(angle(-t)) + l).abs() < 1e-12, "odd at {t}");
            assert!(
                (lobachevsky(angle(t + PI)) - l).abs() < 1e-12,
                "periodic at {t}"
            );
        }
    }

    #[test]
    fn duplication_identity() {
        // Λ(2θ) = 2Λ(θ) + 2Λ(θ + π/2).
        for k in 1..200 {
            let t = 0.0157 * k as f64;
            let lhs = lobachevsky(angle(2.0 * t));
            let rhs = 2.0 * lobachevsky(angle(t)) + 2.0 * lobachevsky(angle(t + PI / 2.0));
            assert!((lhs - rhs).abs() < 1e-10, "duplication at {t}");
        }
    }

    #[test]
    fn constants_table() {
        let c = constants();
        assert!((2.0 * c.v3 - 2.029883212819307).abs() < 5e-3);
        // The two leading decimals are 2.02 (the value is 2.0298…).
        assert!(2.0 * c.v3 >= 2.02 && 2.0 * c.v3 < 2.03);
        assert!((c.v_oct - 3.663862376708876).abs() < 1e-9);
        assert_eq!(c.v2, PI);
        assert_eq!(c.g2, -2.0 * PI);
    }

    #[test]
    fn tetrahedron_volumes() {
        let c = constants();
        // The regular ideal simplex realizes V3.
        let regular = ideal_tetrahedron_volume(angle(PI / 3.0), angle(PI / 3.0), angle(PI / 3.0))
            .unwrap();
        assert!((regular - c.v3).abs() < 1e-12);
        // (π/2, π/4, π/4) gives a quarter of the octahedron.
        let quarter =
            ideal_tetrahedron_volume(angle(PI / 2.0), angle(PI / 4.0), angle(PI / 4.0)).unwrap();
        assert!((quarter - c.v_oct / 4.0).abs() < 1e-12);
        // Degenerate boundary angles are rejected.
        assert!(ideal_tetrahedron_volume(angle(PI), angle(0.0), angle(0.0)).is_err());
        // Wrong sum is rejected.
        assert!(ideal_tetrahedron_volume(angle(1.0), angle(1.0), angle(1.0)).is_err());
    }

    #[test]
    fn bernoulli_sanity() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[2], crate::rational::rat(1, 6));
        assert_eq!(b[4], crate::rational::rat(-1, 30));
        assert_eq!(b[6], crate::rational::rat(1, 42));
        assert_eq!(b[8], crate::rational::rat(-1, 30));
        assert_eq!(b[3], crate::rational::int(0));
    }
}
