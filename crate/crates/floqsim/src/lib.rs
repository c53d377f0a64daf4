//! Simulation library for dissipative stabilization of driven qubit-cavity
//! systems: tensor-product operator algebra, time-dependent Lindblad
//! propagation, Floquet (quasienergy) analysis, one-period superoperator
//! spectra, and the experiment drivers built on top of them.
//!
//! All frequencies are angular frequencies (`hbar = 1`); times are inverse
//! angular frequencies. The CLI layer converts from `MHz`-quoted inputs.

pub mod algebra;
pub mod config;
pub mod drives;
pub mod error;
pub mod experiments;
pub mod floquet;
pub mod lindblad;
pub mod output;
pub mod plot;
pub mod steadystate;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
