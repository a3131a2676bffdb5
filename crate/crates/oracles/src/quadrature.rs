//! Quadrature oracle for the Lobachevsky function.
//!
//! Evaluates `−∫₀^θ log(2 sin t) dt` directly: the logarithmic singularity
//! at 0 is integrated analytically through the local expansion
//! `∫₀^δ log(2t) dt = δ(log 2δ − 1)` plus the Taylor tail of `log(sin t/t)`,
//! and the smooth remainder runs through adaptive Simpson quadrature.
//! Built and frozen before the series implementation it checks.

/// Adaptive Simpson target for the smooth part.
const SIMPSON_TOL: f64 = 1e-15;
const SPLIT: f64 = 1e-3;

/// Quadrature value of the Lobachevsky function for |θ| ≤ π.
pub fn quadrature_lobachevsky(theta: f64) -> f64 {
    let pi = std::f64::consts::PI;
    assert!(theta.abs() <= pi + 1e-12, "oracle domain is |θ| ≤ π");
    if theta < 0.0 {
        return -quadrature_lobachevsky(-theta);
    }
    if theta == 0.0 {
        return 0.0;
    }
    // Reflect into [0, π/2]: substituting u = π − t in the integral gives
    // Λ(θ) = −Λ(π − θ) for θ in (π/2, π].
    if theta > pi / 2.0 {
        return -quadrature_lobachevsky(pi - theta);
    }
    if theta <= SPLIT {
        return -head_integral(theta);
    }
    -(head_integral(SPLIT) + adaptive_simpson(SPLIT, theta))
}

/// `∫₀^δ log(2 sin t) dt` via `log(2t) + log(sin t / t)`.
///
/// The log-sinc Taylor integral is `−t³/18 − t⁵/900 − t⁷/19845 − …`; with
/// δ ≤ 1e−3 the dropped terms are far below 1e−24.
fn head_integral(delta: f64) -> f64 {
    let log_part = delta * ((2.0 * delta).ln() - 1.0);
    let sinc_part = -delta.powi(3) / 18.0 - delta.powi(5) / 900.0 - delta.powi(7) / 19845.0;
    log_part + sinc_part
}

fn integrand(t: f64) -> f64 {
    (2.0 * t.sin()).ln()
}

fn adaptive_simpson(a: f64, b: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, _m: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn rec(
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = (a + m) / 2.0;
        let rm = (m + b) / 2.0;
        let flm = integrand(lm);
        let frm = integrand(rm);
        let left = simpson(a, fa, m, fm, lm, flm);
        let right = simpson(m, fm, b, fb, rm, frm);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
                + rec(m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
        }
    }
    let m = (a + b) / 2.0;
    let (fa, fb, fm) = (integrand(a), integrand(b), integrand(m));
    let whole = simpson(a, fa, b, fb, m, fm);
    rec(a, fa, b, fb, m, fm, whole, SIMPSON_TOL, 48)
}
