//! Matrix representations of spin-s operators in the S_z eigenbasis.
//!
//! The basis is ordered by descending projection, |s⟩, |s-1⟩, ..., |-s⟩, so
//! for s = 1 the matrices are the familiar
//!
//! ```text
//! Sx = 1/√2 [[0,1,0],[1,0,1],[0,1,0]]   Sz = diag(1, 0, -1)
//! ```
//!
//! and ℏ = 1 throughout.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::Result;
use crate::halfint::{HalfInt, Spin};
use crate::state::{Axis, OperatorMatrix, StateVector};

/// The three Cartesian spin components for a fixed spin `s`.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    spin: Spin,
    pub sx: OperatorMatrix,
    pub sy: OperatorMatrix,
    pub sz: OperatorMatrix,
}

impl SpinOperators {
    /// Builds the triple from the ladder matrix elements
    /// ⟨m+1|S₊|m⟩ = √(s(s+1) − m(m+1)).
    pub fn new(spin: Spin) -> Self {
        let dim = spin.dim();
        let casimir = spin.casimir();
        let mut raise = OperatorMatrix::zeros(dim, dim);
        // column j holds m_j; S₊ maps it to row j-1
        for (col, m) in spin.projections().enumerate().skip(1) {
            let m = m.value();
            raise[(col - 1, col)] = Complex64::from((casimir - m * (m + 1.0)).sqrt());
        }
        let lower = raise.adjoint();
        let half = Complex64::new(0.5, 0.0);
        let minus_half_i = Complex64::new(0.0, -0.5);
        let sx = (&raise + &lower) * half;
        let sy = (&raise - &lower) * minus_half_i;
        let sz = OperatorMatrix::from_diagonal(&DVector::from_iterator(
            dim,
            spin.projections().map(|m| Complex64::from(m.value())),
        ));
        SpinOperators { spin, sx, sy, sz }
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// S·n = n_x Sx + n_y Sy + n_z Sz.
    pub fn projection(&self, axis: Axis) -> OperatorMatrix {
        let [x, y, z] = axis.components();
        &self.sx * Complex64::from(x) + &self.sy * Complex64::from(y) + &self.sz * Complex64::from(z)
    }

    /// The S_z eigenstate |m⟩.
    pub fn basis_state(&self, m: HalfInt) -> Result<StateVector> {
        let idx = self.spin.index_of(m)?;
        let mut amps = DVector::zeros(self.dim());
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(StateVector::from_raw(amps))
    }

    /// Eigenvalues of every projection operator, in basis order.
    pub fn eigenvalues(&self) -> Vec<HalfInt> {
        self.spin.projections().collect()
    }
}

/// Spin matrices for `s`; rejects negative `s` and `s > 50`.
pub fn spin_operators(s: HalfInt) -> Result<SpinOperators> {
    Ok(SpinOperators::new(Spin::new(s)?))
}

/// The S_z eigenstate |m⟩ of spin `s`.
pub fn basis_eigenstate(s: HalfInt, m: HalfInt) -> Result<StateVector> {
    spin_operators(s)?.basis_state(m)
}

/// The generator S·n for a unit axis `n`.
pub fn projection_operator(s: HalfInt, axis: Axis) -> Result<OperatorMatrix> {
    Ok(spin_operators(s)?.projection(axis))
}
