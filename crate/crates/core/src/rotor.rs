//! Rotation unitaries e^{−iχ S·n} built by spectral (Lagrange) interpolation.
//!
//! For a generator A with known distinct eigenvalues λ₁..λₙ,
//!
//! ```text
//! e^{xA} = Σ_m P_m e^{λ_m x},   P_m = Π_{k≠m} (A − λ_k I) / (λ_m − λ_k)
//! ```
//!
//! The P_m are the spectral projectors of A and do not depend on x, so they are
//! computed once and reused for every scale.
//!
//! The product form cancels catastrophically as the dimension grows: partial
//! products are larger than the final projector by up to ~4^s, and the error
//! vs. an eigendecomposition passes 1e-12 near dimension 12. Above
//! [`LAGRANGE_MAX_DIM`] the same projectors are formed as v_m v_m† from a
//! Hermitian eigensolver, with the eigenvalues pinned to the exact values.

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::halfint::{HalfInt, Spin};
use crate::spin::SpinOperators;
use crate::state::{Axis, OperatorMatrix, StateVector};

/// Largest dimension (2s + 1) for which projectors use the Lagrange product.
pub const LAGRANGE_MAX_DIM: usize = 11;

/// Tolerance when matching solver eigenvalues to the exact ones.
const SPECTRUM_TOL: f64 = 1e-8;

/// A generator together with its exact eigenvalues and spectral projectors.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<HalfInt>,
    generator: OperatorMatrix,
    projectors: Vec<OperatorMatrix>,
}

impl SpectralDecomposition {
    /// `eigenvalues` must be pairwise distinct and as many as the matrix dimension.
    pub fn new(generator: OperatorMatrix, eigenvalues: &[HalfInt]) -> Result<Self> {
        let dim = generator.nrows();
        if generator.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: generator.ncols(),
            });
        }
        if eigenvalues.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: eigenvalues.len(),
            });
        }
        let mut sorted: Vec<i64> = eigenvalues.iter().map(|l| l.twice()).collect();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedEigenvalue(HalfInt::from_twice(w[0]).to_string()));
        }

        let projectors = if dim <= LAGRANGE_MAX_DIM {
            lagrange_projectors(&generator, eigenvalues)
        } else {
            eigenvector_projectors(&generator, eigenvalues)?
        };

        Ok(SpectralDecomposition {
            eigenvalues: eigenvalues.to_vec(),
            generator,
            projectors,
        })
    }

    pub fn eigenvalues(&self) -> &[HalfInt] {
        &self.eigenvalues
    }

    pub fn generator(&self) -> &OperatorMatrix {
        &self.generator
    }

    /// Spectral projector for the `index`-th eigenvalue.
    pub fn projector(&self, index: usize) -> &OperatorMatrix {
        &self.projectors[index]
    }

    /// e^{scale · A}.
    pub fn exp(&self, scale: Complex64) -> OperatorMatrix {
        let dim = self.generator.nrows();
        if scale == Complex64::from(0.0) {
            return OperatorMatrix::identity(dim, dim);
        }
        let mut out = OperatorMatrix::zeros(dim, dim);
        for (proj, l) in self.projectors.iter().zip(&self.eigenvalues) {
            out += proj * (scale * l.value()).exp();
        }
        out
    }

    /// e^{scale · A} applied to a vector, without forming the full matrix.
    pub fn exp_apply(&self, scale: Complex64, v: &DVector<Complex64>) -> DVector<Complex64> {
        if scale == Complex64::from(0.0) {
            return v.clone();
        }
        let mut out = DVector::zeros(v.len());
        for (proj, l) in self.projectors.iter().zip(&self.eigenvalues) {
            out += (proj * v) * (scale * l.value()).exp();
        }
        out
    }
}

/// P_m = Π_{k≠m} (A − λ_k) / (λ_m − λ_k) with exact integer denominators.
fn lagrange_projectors(generator: &OperatorMatrix, eigenvalues: &[HalfInt]) -> Vec<OperatorMatrix> {
    let dim = generator.nrows();
    let identity = OperatorMatrix::identity(dim, dim);
    let shifted: Vec<OperatorMatrix> = eigenvalues
        .iter()
        .map(|l| generator - &identity * Complex64::from(l.value()))
        .collect();

    // prefix[j] = Π_{k<j} (A − λ_k), suffix[j] = Π_{k≥j} (A − λ_k); all factors commute
    let mut prefix = Vec::with_capacity(dim + 1);
    prefix.push(identity.clone());
    for factor in &shifted {
        let next = prefix.last().unwrap() * factor;
        prefix.push(next);
    }
    let mut suffix = vec![identity; dim + 1];
    for j in (0..dim).rev() {
        suffix[j] = &shifted[j] * &suffix[j + 1];
    }

    (0..dim)
        .map(|m| {
            let denom: f64 = eigenvalues
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != m)
                .map(|(_, l)| (eigenvalues[m] - *l).twice() as f64 / 2.0)
                .product();
            (&prefix[m] * &suffix[m + 1]) / Complex64::from(denom)
        })
        .collect()
}

/// P_m = v_m v_m† from a Hermitian eigensolver; each solver eigenvalue must lie
/// within [`SPECTRUM_TOL`] of a distinct supplied one.
fn eigenvector_projectors(generator: &OperatorMatrix, eigenvalues: &[HalfInt]) -> Result<Vec<OperatorMatrix>> {
    let scale = generator.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let skew = (generator - generator.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if skew > 1e-12 * scale {
        return Err(Error::NotHermitian(skew));
    }
    let eig = SymmetricEigen::new(generator.clone());
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by_key(|&i| eigenvalues[i].twice());
    let mut computed: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    computed.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut projectors = vec![OperatorMatrix::zeros(0, 0); eigenvalues.len()];
    for (&exact, &found) in order.iter().zip(&computed) {
        let miss = (eig.eigenvalues[found] - eigenvalues[exact].value()).abs();
        if miss > SPECTRUM_TOL * (1.0 + eigenvalues[exact].value().abs()) {
            return Err(Error::SpectrumMismatch(miss));
        }
        let v = eig.eigenvectors.column(found);
        projectors[exact] = v * v.adjoint();
    }
    Ok(projectors)
}

/// e^{scale · generator} over the spectral projectors of `eigenvalues`.
pub fn spectral_exponential(
    generator: &OperatorMatrix,
    eigenvalues: &[HalfInt],
    scale: Complex64,
) -> Result<OperatorMatrix> {
    Ok(SpectralDecomposition::new(generator.clone(), eigenvalues)?.exp(scale))
}

/// A unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary(OperatorMatrix);

impl Unitary {
    pub fn matrix(&self) -> &OperatorMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> OperatorMatrix {
        self.0
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        StateVector::from_raw(&self.0 * state.amplitudes())
    }

    pub fn compose(&self, other: &Unitary) -> Unitary {
        Unitary(&self.0 * &other.0)
    }

    /// max |(U†U − I)_ij|.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.0.nrows();
        (self.0.adjoint() * &self.0 - OperatorMatrix::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// e^{−iχ S·n}.
pub fn rotation_operator(s: HalfInt, axis: Axis, chi: f64) -> Result<Unitary> {
    let ops = SpinOperators::new(Spin::new(s)?);
    let decomposition = SpectralDecomposition::new(ops.projection(axis), &ops.eigenvalues())?;
    Ok(Unitary(decomposition.exp(Complex64::new(0.0, -chi))))
}

/// The family of states e^{−iφS_z} e^{−iθS_y} |m⟩ for fixed (s, m).
///
/// Each member is the eigenstate of S·n(θ, φ) with eigenvalue m.
#[derive(Clone, Debug)]
pub struct RotationalManifold {
    ops: SpinOperators,
    m: HalfInt,
    index: usize,
    sy: SpectralDecomposition,
}

impl RotationalManifold {
    pub fn new(s: HalfInt, m: HalfInt) -> Result<Self> {
        let ops = SpinOperators::new(Spin::new(s)?);
        let index = ops.spin().index_of(m)?;
        let sy = SpectralDecomposition::new(ops.sy.clone(), &ops.eigenvalues())?;
        Ok(RotationalManifold { ops, m, index, sy })
    }

    pub fn operators(&self) -> &SpinOperators {
        &self.ops
    }

    pub fn spin(&self) -> Spin {
        self.ops.spin()
    }

    pub fn projection(&self) -> HalfInt {
        self.m
    }

    /// e^{−iθS_y}|m⟩, i.e. the m-th column of the S_y rotation.
    fn tilted(&self, theta: f64) -> DVector<Complex64> {
        let mut ket = DVector::zeros(self.ops.dim());
        ket[self.index] = Complex64::new(1.0, 0.0);
        self.sy.exp_apply(Complex64::new(0.0, -theta), &ket)
    }

    /// Multiplies each S_z component by e^{−imφ} (S_z is diagonal).
    fn phase_z(&self, phi: f64, v: &mut DVector<Complex64>) {
        for (amp, m) in v.iter_mut().zip(self.ops.spin().projections()) {
            *amp *= Complex64::from_polar(1.0, -m.value() * phi);
        }
    }

    pub fn state(&self, theta: f64, phi: f64) -> StateVector {
        let mut v = self.tilted(theta);
        self.phase_z(phi, &mut v);
        StateVector::from_raw(v)
    }

    /// (∂_θ|ψ⟩, ∂_φ|ψ⟩) from the exact operator expressions
    /// ∂_θ = e^{−iφS_z}(−iS_y)e^{−iθS_y}|m⟩ and ∂_φ = −iS_z|ψ⟩.
    pub fn derivatives(&self, theta: f64, phi: f64) -> (DVector<Complex64>, DVector<Complex64>) {
        let minus_i = Complex64::new(0.0, -1.0);
        let tilted = self.tilted(theta);
        let mut d_theta = (&self.ops.sy * &tilted) * minus_i;
        self.phase_z(phi, &mut d_theta);
        let mut psi = tilted;
        self.phase_z(phi, &mut psi);
        let d_phi = (&self.ops.sz * &psi) * minus_i;
        (d_theta, d_phi)
    }
}

/// |ψ_m(θ, φ)⟩ = e^{−iφS_z} e^{−iθS_y} |m⟩.
pub fn rotate_eigenstate(s: HalfInt, m: HalfInt, theta: f64, phi: f64) -> Result<StateVector> {
    Ok(RotationalManifold::new(s, m)?.state(theta, phi))
}
