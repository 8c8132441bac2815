//! Numerical kernels for linear time-fractional evolution equations
//! ∂ₜᵅu + Au = 0 with 1 < α < 2.
//!
//! The crate is organized bottom-up:
//!
//! - [`special`]: Γ, two-parameter Mittag-Leffler functions E_{α,β}(x)
//!   with a series/asymptotic dispatcher and per-evaluation error estimates;
//! - [`calculus`]: Riemann-Liouville integrals and Caputo derivatives of
//!   uniformly sampled functions, plus a Gagliardo-type seminorm;
//! - [`scalar`]: the scalar mode equation ∂ₜᵅu + λu = 0 — closed-form
//!   solution, derivatives, memory term, and an L1 finite-difference stepper;
//! - [`spectral`]: modal expansions u(t) = Σ cₙ(t)eₙ for a diagonalizable
//!   positive operator A, energy bounds, and weak-form residual checks;
//! - [`models`]: concrete interval eigenproblems (second and fourth order)
//!   with sine eigenfunctions, projection quadrature, and space-time fields.

pub mod calculus;
mod dd;
pub mod error;
pub mod models;
pub mod scalar;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
