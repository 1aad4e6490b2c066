//! Simulation of entanglement dynamics for a qubit-qutrit pair.
//!
//! The two spins (s = 1/2 and s = 1) are coupled by anisotropic Heisenberg
//! exchange and a z-axis Dzyaloshinskii-Moriya term, with independent local
//! magnetic fields along z. Starting from a superposition of spin coherent
//! states, the library propagates the pure state exactly through the spectral
//! decomposition of the 6x6 Hamiltonian and tracks entanglement via the
//! negativity of the partially transposed density matrix.
//!
//! Module layout mirrors the pipeline: [`linalg`] holds the dense complex
//! matrix kernel and Hermitian eigensolver, [`model`] builds the Hamiltonian,
//! [`states`] prepares initial states, [`dynamics`] propagates them,
//! [`entanglement`] measures negativity, and [`config`]/[`output`]/[`run`]
//! back the command-line front end.

pub mod config;
pub mod dynamics;
pub mod entanglement;
pub mod linalg;
pub mod model;
pub mod output;
pub mod run;
pub mod states;

pub use num_complex::Complex64;
