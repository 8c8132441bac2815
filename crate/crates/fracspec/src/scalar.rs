//! The scalar fractional relaxation problem and its time-stepping oracle.
//!
//! For α ∈ (1, 2) and λ > 0 the Cauchy problem
//!
//! > ∂ₜ^α u(t) + λ u(t) = 0,  u(0) = x₀,  u′(0) = y₀,
//!
//! has the closed-form solution
//!
//! > u(t) = x₀ E_{α,1}(−λtᵅ) + y₀ t E_{α,2}(−λtᵅ),
//!
//! and differentiating the series term by term gives u′, u″ and the memory
//! term I^{2−α}(u′ − y₀) in the same Mittag-Leffler currency:
//!
//! > u′(t) = −λ x₀ t^{α−1} E_{α,α}(−λtᵅ) + y₀ E_{α,1}(−λtᵅ),
//! > u″(t) = −λ [x₀ t^{α−2} E_{α,α−1}(−λtᵅ) + y₀ t^{α−1} E_{α,α}(−λtᵅ)],
//! > I^{2−α}(u′ − y₀)(t) = −λ [x₀ t E_{α,2}(−λtᵅ) + y₀ t² E_{α,3}(−λtᵅ)].
//!
//! Every spectral mode of the abstract problem is one of these scalar
//! problems, so this module is the ground truth the rest of the crate is
//! measured against. To keep that claim honest an independent check is
//! bundled alongside: an L1 time stepper that discretises the Caputo
//! derivative by piecewise-linear (product-trapezoid) quadrature of the
//! second difference and collocates the equation at the half level
//! (λu ↦ λ(uₙ + uₙ₋₁)/2). The stepper shares no code with the closed form
//! beyond Γ itself.

use crate::calculus::SampledFunction;
use crate::error::{Error, Result};
use crate::special::{gamma, mittag_leffler, MlParams};

/// Tolerance handed to the Mittag-Leffler dispatcher for closed-form work.
const ML_TOL: f64 = 1e-14;

/// Magnitude at which the stepper declares blow-up.
const STEPPER_LIMIT: f64 = 1e12;

/// The scalar problem ∂ₜ^α u + λu = 0, u(0) = x0, u′(0) = y0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarProblem {
    /// Fractional order, strictly inside (1, 2).
    pub alpha: f64,
    /// Relaxation rate λ > 0.
    pub lambda: f64,
    /// Initial value u(0).
    pub x0: f64,
    /// Initial velocity u′(0).
    pub y0: f64,
}

impl ScalarProblem {
    /// Validates the parameter ranges and wraps them up.
    pub fn new(alpha: f64, lambda: f64, x0: f64, y0: f64) -> Result<ScalarProblem> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::domain(format!("fractional order must lie in (1, 2), got α = {alpha}")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!("rate must satisfy λ > 0, got λ = {lambda}")));
        }
        if !(x0.is_finite() && y0.is_finite()) {
            return Err(Error::domain("initial data must be finite"));
        }
        Ok(ScalarProblem { alpha, lambda, x0, y0 })
    }

    // E_{α,β}(−λtᵅ) for this problem's α and λ.
    fn ml(&self, beta: f64, t: f64) -> Result<f64> {
        let x = -(self.lambda * t.powf(self.alpha));
        Ok(mittag_leffler(MlParams::new(self.alpha, beta, x), ML_TOL)?.value)
    }
}

/// Closed-form solution u(t) = x₀ E_{α,1}(−λtᵅ) + y₀ t E_{α,2}(−λtᵅ).
///
/// At t = 0 the value is x₀ exactly (E_{α,1}(0) = 1 and the second term
/// carries a factor t). Linearity in (x₀, y₀) is exact: both coefficients
/// multiply their own Mittag-Leffler factor once.
pub fn scalar_solution(p: &ScalarProblem, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time must satisfy t ≥ 0, got t = {t}")));
    }
    if t == 0.0 {
        return Ok(p.x0);
    }
    Ok(p.x0 * p.ml(1.0, t)? + p.y0 * (t * p.ml(2.0, t)?))
}

/// First derivative u′(t) = −λ x₀ t^{α−1} E_{α,α}(−λtᵅ) + y₀ E_{α,1}(−λtᵅ).
///
/// The t^{α−1} factor vanishes as t → 0⁺ for α > 1, so u′(0) = y₀ is taken
/// by continuity rather than by evaluating the formula at 0.
pub fn scalar_velocity(p: &ScalarProblem, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time must satisfy t ≥ 0, got t = {t}")));
    }
    if t == 0.0 {
        return Ok(p.y0);
    }
    Ok(-p.lambda * p.x0 * t.powf(p.alpha - 1.0) * p.ml(p.alpha, t)? + p.y0 * p.ml(1.0, t)?)
}

/// Second derivative u″(t) = −λ[x₀ t^{α−2} E_{α,α−1}(−λtᵅ) + y₀ t^{α−1} E_{α,α}(−λtᵅ)].
///
/// The x₀ term blows up like t^{α−2} as t → 0, so t = 0 is outside the
/// domain whenever the solution is genuinely fractional.
pub fn scalar_acceleration(p: &ScalarProblem, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!(
            "acceleration is singular like t^(α−2) at t = 0; need t > 0, got t = {t}"
        )));
    }
    let first = p.x0 * t.powf(p.alpha - 2.0) * p.ml(p.alpha - 1.0, t)?;
    let second = p.y0 * t.powf(p.alpha - 1.0) * p.ml(p.alpha, t)?;
    Ok(-p.lambda * (first + second))
}

/// Memory term I^{2−α}(u′ − y₀)(t) = −λ[x₀ t E_{α,2}(−λtᵅ) + y₀ t² E_{α,3}(−λtᵅ)].
///
/// Both terms carry positive powers of t, so the memory vanishes at t = 0.
pub fn scalar_memory(p: &ScalarProblem, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("time must satisfy t ≥ 0, got t = {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(-p.lambda * (p.x0 * t * p.ml(2.0, t)? + p.y0 * (t * t) * p.ml(3.0, t)?))
}

/// L1 time stepper for ∂ₜ^α u + λu = 0: an independent oracle for
/// [`scalar_solution`].
///
/// The Caputo derivative at tₙ is discretised with the piecewise-linear
/// weights bₘ = (m+1)^{2−α} − m^{2−α},
///
/// > ∂ₜ^α u(tₙ) ≈ μ (Δₙ − Σ_{m=1}^{n−1} (b_{n−m} − b_{n−m−1}) Δₘ − b_{n−1} dt y₀),
///
/// with Δₘ = uₘ − uₘ₋₁ and μ = dt^{−α}/Γ(3−α), and the equation is
/// collocated at the half level, λu ↦ λ(uₙ + uₙ₋₁)/2, which keeps the
/// update well-defined for every dt > 0 (the denominator μ + λ/2 is
/// positive). The first step is seeded by the Taylor expansion
/// u(dt) ≈ x₀ + y₀ dt, which carries both initial conditions; the scheme
/// then converges to the closed form as dt → 0 (order 3−α in the velocity
/// data, first order once x₀ ≠ 0 activates the seeding error).
pub fn l1_stepper(p: &ScalarProblem, dt: f64, n_steps: usize) -> Result<SampledFunction> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::grid(format!("need dt > 0, got dt = {dt}")));
    }
    let n = n_steps;
    let mut u = Vec::with_capacity(n + 1);
    u.push(p.x0);
    if n >= 1 {
        u.push(p.x0 + p.y0 * dt);
    }
    let mu = dt.powf(-p.alpha) / gamma(3.0 - p.alpha)?;
    let w = 2.0 - p.alpha;
    // b[m] = (m+1)^{2−α} − m^{2−α}; db[m] = b[m+1] − b[m].
    let b: Vec<f64> = (0..=n).map(|m| ((m + 1) as f64).powf(w) - (m as f64).powf(w)).collect();
    let db: Vec<f64> = (0..n).map(|m| b[m + 1] - b[m]).collect();
    for k in 2..=n {
        // Σ_{m=1}^{k−1} (b_{k−m} − b_{k−m−1}) Δₘ = Σ db[k−1−m] Δₘ.
        let mut s = 0.0;
        for m in 1..k {
            s += db[k - 1 - m] * (u[m] - u[m - 1]);
        }
        let num = mu * (u[k - 1] - s + b[k - 1] * dt * p.y0) - 0.5 * p.lambda * u[k - 1];
        let next = num / (mu + 0.5 * p.lambda);
        if next.abs() > STEPPER_LIMIT {
            return Err(Error::Instability { step: k, magnitude: next.abs(), threshold: STEPPER_LIMIT });
        }
        u.push(next);
    }
    SampledFunction::new(0.0, dt, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::rl_integral;

    fn problem(alpha: f64, lambda: f64, x0: f64, y0: f64) -> ScalarProblem {
        ScalarProblem::new(alpha, lambda, x0, y0).unwrap()
    }

    fn rel(a: f64, want: f64) -> f64 {
        (a - want).abs() / want.abs()
    }

    #[test]
    fn test_problem_validation() {
        assert!(ScalarProblem::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(ScalarProblem::new(2.0, 1.0, 1.0, 0.0).is_err());
        assert!(ScalarProblem::new(1.5, 0.0, 1.0, 0.0).is_err());
        assert!(ScalarProblem::new(1.5, -2.0, 1.0, 0.0).is_err());
        assert!(ScalarProblem::new(1.5, 1.0, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn test_solution_at_zero_is_initial_value() {
        for &(a, l, x0, y0) in &[(1.2, 0.5, 3.0, -1.0), (1.5, 10.0, -0.25, 2.0), (1.9, 1.0, 0.0, 5.0)] {
            let p = problem(a, l, x0, y0);
            assert_eq!(scalar_solution(&p, 0.0).unwrap(), x0);
        }
    }

    #[test]
    fn test_solution_anchors_at_unit_time() {
        // E_{1.5,1}(−1) and E_{1.5,2}(−1) to 22 digits from an
        // extended-precision series evaluation.
        let e11 = 0.3966293653180880844916;
        let e12 = 0.7374822479018947141753;
        assert!(rel(scalar_solution(&problem(1.5, 1.0, 1.0, 0.0), 1.0).unwrap(), e11) < 1e-13);
        assert!(rel(scalar_solution(&problem(1.5, 1.0, 0.0, 1.0), 1.0).unwrap(), e12) < 1e-13);
        assert!(rel(scalar_solution(&problem(1.5, 1.0, 1.0, 1.0), 1.0).unwrap(), e11 + e12) < 1e-13);
        assert!(matches!(scalar_solution(&problem(1.5, 1.0, 1.0, 1.0), -0.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn test_solution_linear_in_initial_data() {
        let t = 0.8;
        let u10 = scalar_solution(&problem(1.7, 2.0, 1.0, 0.0), t).unwrap();
        let u01 = scalar_solution(&problem(1.7, 2.0, 0.0, 1.0), t).unwrap();
        let mixed = scalar_solution(&problem(1.7, 2.0, 2.5, -1.25), t).unwrap();
        // Same multiply-add path on both sides, so equality is bitwise.
        assert_eq!(mixed, 2.5 * u10 + -1.25 * u01);
    }

    #[test]
    fn test_velocity_anchor_and_continuity_at_zero() {
        // u′(1) = −E_{1.5,1.5}(−1) for pure x₀ data.
        let e_aa = 0.7065280370641757942561;
        assert!(rel(scalar_velocity(&problem(1.5, 1.0, 1.0, 0.0), 1.0).unwrap(), -e_aa) < 1e-13);
        // t = 0 returns y₀ by continuity: the t^{α−1} factor kills the x₀ term.
        assert_eq!(scalar_velocity(&problem(1.5, 1.0, 4.0, -2.5), 0.0).unwrap(), -2.5);
    }

    #[test]
    fn test_velocity_matches_finite_difference() {
        let p = problem(1.5, 1.0, 1.0, 1.0);
        let h = 1e-5;
        let fd = (scalar_solution(&p, 1.0 + h).unwrap() - scalar_solution(&p, 1.0 - h).unwrap()) / (2.0 * h);
        assert!(rel(scalar_velocity(&p, 1.0).unwrap(), fd) < 1e-6);
    }

    #[test]
    fn test_acceleration_anchor_and_domain() {
        // u″(1) = −E_{1.5,1.5}(−1) for pure y₀ data.
        let e_aa = 0.7065280370641757942561;
        assert!(rel(scalar_acceleration(&problem(1.5, 1.0, 0.0, 1.0), 1.0).unwrap(), -e_aa) < 1e-13);
        assert_eq!(scalar_acceleration(&problem(1.5, 1.0, 0.0, 0.0), 1.0).unwrap(), 0.0);
        assert!(matches!(scalar_acceleration(&problem(1.5, 1.0, 1.0, 0.0), 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn test_acceleration_matches_finite_difference() {
        let p = problem(1.5, 1.0, 1.0, 1.0);
        let h = 1e-5;
        let fd = (scalar_velocity(&p, 1.0 + h).unwrap() - scalar_velocity(&p, 1.0 - h).unwrap()) / (2.0 * h);
        let err = (scalar_acceleration(&p, 1.0).unwrap() - fd).abs();
        assert!(err < 1e-5, "|u″ − fd| = {err:e}");
    }

    #[test]
    fn test_memory_anchor_and_zero_start() {
        let p = problem(1.5, 1.0, 1.0, 0.0);
        assert_eq!(scalar_memory(&p, 0.0).unwrap(), 0.0);
        // I^{2−α}(u′)(1) = −E_{1.5,2}(−1) for pure x₀ data with λ = 1.
        assert!(rel(scalar_memory(&p, 1.0).unwrap(), -0.7374822479018947141753) < 1e-13);
    }

    #[test]
    fn test_memory_matches_quadrature() {
        // Sample u′ − y₀ and integrate with the product-trapezoid rule; the
        // closed-form memory term must agree pointwise.
        let p = problem(1.5, 1.0, 1.0, 1.0);
        let dt = 1e-3;
        let n = 1000;
        let shifted = SampledFunction::from_fn(0.0, dt, n + 1, |t| {
            scalar_velocity(&p, t).unwrap() - p.y0
        })
        .unwrap();
        let quad = rl_integral(2.0 - p.alpha, &shifted).unwrap();
        let mut worst = 0.0f64;
        for i in 0..=n {
            let closed = scalar_memory(&p, quad.t(i)).unwrap();
            worst = worst.max((closed - quad.values[i]).abs());
        }
        assert!(worst < 1e-3, "sup |closed − quadrature| = {worst:e}");
    }

    #[test]
    fn test_stepper_degenerates_to_linear_motion() {
        // With λ → 0 the equation collapses to u″ = 0, so the march must
        // reproduce x₀ + y₀t to rounding.
        let p = problem(1.5, 1e-12, 1.0, 1.0);
        let u = l1_stepper(&p, 1e-3, 2000).unwrap();
        let mut worst = 0.0f64;
        for i in 0..u.len() {
            worst = worst.max((u.values[i] - (1.0 + u.t(i))).abs());
        }
        assert!(worst < 1e-9, "sup |u − (1 + t)| = {worst:e}");
    }

    #[test]
    fn test_stepper_tracks_closed_form() {
        let p = problem(1.5, 1.0, 1.0, 1.0);
        let dt = 1e-3;
        let u = l1_stepper(&p, dt, 1000).unwrap();
        let mut worst = 0.0f64;
        for i in 0..u.len() {
            worst = worst.max((u.values[i] - scalar_solution(&p, u.t(i)).unwrap()).abs());
        }
        assert!(worst < 5e-3, "sup |stepper − closed form| = {worst:e}");
    }

    #[test]
    fn test_stepper_refinement_is_monotone() {
        let p = problem(1.5, 1.0, 1.0, 1.0);
        let mut sups = Vec::new();
        for &dt in &[1e-2f64, 5e-3, 2.5e-3, 1.25e-3] {
            let n = (1.0 / dt).round() as usize;
            let u = l1_stepper(&p, dt, n).unwrap();
            let mut worst = 0.0f64;
            for i in 0..u.len() {
                worst = worst.max((u.values[i] - scalar_solution(&p, u.t(i)).unwrap()).abs());
            }
            sups.push(worst);
        }
        for pair in sups.windows(2) {
            assert!(pair[1] < pair[0], "refinement did not shrink the error: {sups:?}");
        }
    }

    #[test]
    fn test_stepper_convergence_order() {
        // Velocity-only data keeps the Taylor seeding exact, so the endpoint
        // error contracts at the scheme's intrinsic rate 3 − α.
        let p = problem(1.5, 10.0, 0.0, 1.0);
        let want = scalar_solution(&p, 1.0).unwrap();
        let mut errs = Vec::new();
        for &dt in &[1e-2f64, 5e-3, 2.5e-3, 1.25e-3] {
            let n = (1.0 / dt).round() as usize;
            let u = l1_stepper(&p, dt, n).unwrap();
            errs.push((u.values[n] - want).abs());
        }
        for pair in errs.windows(2) {
            let order = (pair[0] / pair[1]).log2();
            assert!((order - 1.5).abs() < 0.3, "observed order {order}");
        }
    }
}
