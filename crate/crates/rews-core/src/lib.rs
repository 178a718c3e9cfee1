//! Analysis of n-qubit real equally weighted states (REWS).
//!
//! A REWS is a pure state whose amplitudes are all ±1/√2ⁿ, i.e. a sign
//! assignment on the computational basis. This crate represents such states
//! as packed sign bit vectors and provides, entirely in exact bit and integer
//! arithmetic:
//!
//! - the structural degree Δ (number of minus signs) and the seven-part
//!   classification it induces ([`state`]);
//! - the exact separable degree δ with witnessing tensor factorizations,
//!   via rank-1 bipartition factoring with closed-form fast paths
//!   ([`separability`]);
//! - the similar degree Γ between two states under position-free,
//!   sign-rebalanced factor matching ([`similarity`]);
//! - exhaustive censuses, closed-form counts, deterministic sampling
//!   ([`census`]), and a theorem-verification harness with machine-readable
//!   reports ([`verify`]).
//!
//! Heavy sweeps are data-parallel through rayon when the default `parallel`
//! feature is enabled, with a sequential fallback otherwise; both paths
//! produce identical results.

pub mod census;
pub mod error;
mod exec;
pub mod qubits;
pub mod separability;
pub mod similarity;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use qubits::QubitSet;
pub use state::{AffineForm, Rews, Sign, StructuralClass, MAX_ANALYSIS_QUBITS, MAX_QUBITS};
