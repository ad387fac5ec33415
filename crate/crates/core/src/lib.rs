//! Thermodynamic bookkeeping for a quantum switch of two partial thermalizations.
//!
//! A four-qubit register (control, message, two environment qubits) is evolved
//! by the superposition of both orders of two energy-preserving interactions.
//! The crate measures how much classical information about an encoding bit
//! survives, what it costs in coherence free energy, and whether the usual
//! thermodynamic constraints hold.
//!
//! Layers, from the bottom up:
//! - [`matcore`]: dense complex matrices up to 16x16, eigensolver, partial trace.
//! - [`states`]: temperatures, Hamiltonians, Gibbs and control states, ensembles.
//! - [`dynamics`]: gates, embedding, the switch unitary, scenario evolution.
//! - [`thermo`]: entropy, free energy, coherence, second-law checks.
//! - [`info`]: Holevo information and the encoding optimum.
//! - [`experiments`]: the sweeps and checks behind each figure.
//! - [`cli`]: CSV/SVG output, configuration and the acceptance suite.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod info;
pub mod matcore;
pub mod states;
pub mod thermo;

pub use error::{Error, Result};
