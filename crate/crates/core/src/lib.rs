//! Reversible and irreversible one-qubit measurement on a quantum background
//! geometry.
//!
//! - [`qubit`]: normalized states `a|0⟩ + b|1⟩`, Bloch coordinates, the dual basis.
//! - [`measurement`]: projective (Born-rule) measurement and the basic
//!   measurement `e^{iφ}(α P₀ + α* P₁)` with exact recovery.
//! - [`rotation`]: `U = e^{iφ} R_n(θ)` decomposition of 2×2 unitaries.
//! - [`fuzzy`]: fuzzy sphere with `n = 2^N` cells and the diagonal lattice.
//! - [`linalg`]: dense complex matrices and SU(2) generators.
//! - [`cli`]: the `qspace` command-line frontend.

pub mod cli;
pub mod error;
pub mod fuzzy;
mod json;
pub mod linalg;
pub mod measurement;
pub mod qubit;
pub mod random;
pub mod rotation;

pub use error::{Error, Result};
pub use fuzzy::{
    cells_for_register, classical_limit_profile, classify_lattice, fuzzy_sphere, verify_sphere,
    FuzzySphere, LatticeClassification, SphereResiduals, VerificationReport,
};
pub use linalg::{su2_generators, ComplexMatrix, GeneratorTriple};
pub use measurement::{
    basic_measure, basic_measure_in_basis, project, projector, recover, recover_in_basis,
    sample_outcomes, standard_measure, superposed_projector_form, BasisIndex, DiagonalUnitary,
    MeasurementOutcome, Projector,
};
pub use num_complex::Complex64;
pub use qubit::{bloch_vector, dual_basis, from_bloch, new_qubit, BlochVector, Qubit};
pub use rotation::{
    apply_unitary, decompose_unitary, reconstruct_unitary, rotate_bloch, RotationDecomposition,
    UnitaryGate2,
};
