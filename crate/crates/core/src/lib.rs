//! Resonances, bound states and antibound states of compactly supported
//! one-dimensional Schrödinger operators `-u'' + V u`.
//!
//! Two independent engines compute the scattering poles:
//!
//! * [`transfer`] — exact piecewise transfer matrices and secular functions,
//!   DtN (Riccati) quantities on the half line, and complex zero finding.
//! * [`spectral`] — Chebyshev collocation of the outgoing-boundary quadratic
//!   eigenvalue problem, linearized to a generalized pencil in two fields.
//!
//! [`absorber`] implements a complex absorbing layer for the truncated-domain
//! formulation, and [`resonance`] classifies poles, pairs bound with antibound
//! states across a coupling sweep, and fits the decay rate of the pairing
//! defect.

pub mod absorber;
pub mod ode;
pub mod potential;
pub mod resonance;
pub mod spectral;
pub mod transfer;
pub mod util;

pub use num_complex::Complex64;
