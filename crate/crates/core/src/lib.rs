//! Two-qubit quantum cloning machines, Pauli channels and quantum-correlation
//! measures.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex matrices, partial trace, Hermitian
//!   eigendecomposition, entropy and pure-state fidelity.
//! - [`states`]: Schmidt-form pure states, Werner states, Bloch form, X-states.
//! - [`cloners`]: local symmetric cloners, the non-local Bužek–Hillery map,
//!   named presets and a full-unitary simulation oracle.
//! - [`channels`]: the two-qubit Pauli channel family.
//! - [`correlations`]: concurrence, entanglement of formation and quantum
//!   discord, with closed forms and brute-force oracles.
//! - [`optimize`]: the constrained optimizations that single out the
//!   universal and two-Pauli-like machines.
//! - [`sweep`] and [`verify`]: parameter sweeps with CSV output and the
//!   verification suites behind the `qcm` command-line tool.
//!
//! Batch work runs on rayon when the `parallel` feature is enabled (the
//! default); see [`exec`].

pub mod channels;
pub mod cloners;
pub mod correlations;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod optimize;
pub mod random;
pub mod states;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
