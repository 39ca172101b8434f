//! Geometry and time-optimal control of spin-s systems in a static magnetic field.
//!
//! Rotating an S_z eigenstate |m⟩ by e^{−iφS_z} e^{−iθS_y} sweeps out a
//! two-parameter *rotational manifold*. Its Fubini-Study metric is that of a
//! sphere of radius (γ/√2)·√(s + s² − m²), evolution under H = ω S·n′ never
//! leaves it, and the fastest transfer between two of its points uses a field
//! perpendicular to both, taking time θ_f/ω regardless of s and m.
//!
//! Modules:
//!
//! - [`spin`]: spin matrices and the S_z basis (descending m).
//! - [`rotor`]: rotation unitaries by Lagrange spectral interpolation.
//! - [`metric`]: Fubini-Study metric, manifold radii, distances.
//! - [`evolution`]: field Hamiltonian, exact propagation, manifold angles and phases.
//! - [`brachistochrone`]: path length, speed, transfer time and the optimal field.

pub mod brachistochrone;
pub mod error;
pub mod evolution;
pub mod halfint;
pub mod metric;
pub mod rotor;
pub mod spin;
pub mod state;

pub use brachistochrone::{
    compatible_azimuth, evolution_speed, optimal_transfer, path_length, speed_from_variance, sweep_tilt, transfer_time,
    transfer_with_tilt, TiltSample, TransferProblem, TransferSolution,
};
pub use error::{Error, Result};
pub use evolution::{evolve, evolved_angles, field_hamiltonian, global_phase, EvolutionSample, FieldSpec, Propagator};
pub use halfint::{HalfInt, Spin};
pub use metric::{
    fubini_study_distance, m0_overlap, manifold_radius, metric_tensor_closed, metric_tensor_numeric, state_derivatives,
    MetricTensor2, TangentPair,
};
pub use num_complex::Complex64;
pub use rotor::{
    rotate_eigenstate, rotation_operator, spectral_exponential, RotationalManifold, SpectralDecomposition, Unitary,
};
pub use spin::{basis_eigenstate, projection_operator, spin_operators, SpinOperators};
pub use state::{polar_angle, Axis, Direction, OperatorMatrix, StateVector, POLAR_SLACK};
