//! State vectors, operator matrices and directions on the unit sphere.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix of dimension 2s+1.
pub type OperatorMatrix = DMatrix<Complex64>;

pub(crate) const NORM_TOL: f64 = 1e-12;

/// A normalized pure state in the S_z basis (descending m).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(DVector<Complex64>);

impl StateVector {
    /// Wraps `amplitudes`, rejecting vectors whose norm differs from 1 by more than 1e-12.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector(amplitudes))
    }

    /// Rescales any non-zero vector to unit norm.
    pub fn normalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector(amplitudes / Complex64::from(norm)))
    }

    pub(crate) fn from_raw(amplitudes: DVector<Complex64>) -> Self {
        StateVector(amplitudes)
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DVector<Complex64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// ⟨self|other⟩ (antilinear in `self`).
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.0.dotc(&other.0)
    }

    /// |⟨self|other⟩|, equal to 1 exactly when the states agree up to a global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    /// ⟨self|op|self⟩.
    pub fn expectation(&self, op: &OperatorMatrix) -> Complex64 {
        self.0.dotc(&(op * &self.0))
    }

    pub fn apply(&self, op: &OperatorMatrix) -> DVector<Complex64> {
        op * &self.0
    }
}

/// Unit 3-vector used as a rotation or field axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis([f64; 3]);

impl Axis {
    pub const X: Axis = Axis([1.0, 0.0, 0.0]);
    pub const Y: Axis = Axis([0.0, 1.0, 0.0]);
    pub const Z: Axis = Axis([0.0, 0.0, 1.0]);

    /// Rejects vectors whose norm differs from 1 by more than 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NonUnitAxis(norm));
        }
        Ok(Axis([x, y, z]))
    }

    pub fn from_direction(dir: Direction) -> Self {
        let (st, ct) = dir.theta.sin_cos();
        let (sp, cp) = dir.phi.sin_cos();
        Axis([st * cp, st * sp, ct])
    }

    pub fn components(self) -> [f64; 3] {
        self.0
    }

    pub fn dot(self, other: Axis) -> f64 {
        self.0.iter().zip(other.0).map(|(a, b)| a * b).sum()
    }
}

/// Spherical angles (polar θ, azimuth φ) in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Self {
        Direction { theta, phi }
    }

    pub fn axis(self) -> Axis {
        Axis::from_direction(self)
    }
}

/// Inputs this far outside [0, π] are clamped rather than rejected.
pub const POLAR_SLACK: f64 = 1e-9;

/// Validates a polar angle, clamping values within [`POLAR_SLACK`] of [0, π].
pub fn polar_angle(name: &'static str, theta: f64) -> Result<f64> {
    use std::f64::consts::PI;
    if (-POLAR_SLACK..=PI + POLAR_SLACK).contains(&theta) {
        Ok(theta.clamp(0.0, PI))
    } else {
        Err(Error::OutOfRange {
            name,
            value: theta,
            lo: 0.0,
            hi: PI,
        })
    }
}

/// Reduces an angle into (-π, π].
pub fn wrap_pi(angle: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let r = angle.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}
