//! Exact evolution under a static magnetic field, H = ω S·n′.
//!
//! Starting from |m⟩ the state never leaves its rotational manifold: after a
//! time t it equals |ψ_m(θ, φ)⟩ up to a global phase, where (θ, φ) are the
//! angles of the z axis rotated by ωt about n′.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::halfint::{HalfInt, Spin};
use crate::rotor::{RotationalManifold, SpectralDecomposition};
use crate::spin::SpinOperators;
use crate::state::{polar_angle, wrap_pi, Direction, OperatorMatrix, StateVector};

/// Fidelity below which a state counts as off its manifold.
pub const RESIDENCY_TOL: f64 = 1e-8;

/// Field strength ω (frequency units) and direction n′(θ′, φ′).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSpec {
    omega: f64,
    direction: Direction,
}

impl FieldSpec {
    /// Requires ω > 0 and θ′ ∈ [0, π]; φ′ is reduced into [0, 2π).
    pub fn new(omega: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::NonPositive {
                name: "omega",
                value: omega,
            });
        }
        let theta = polar_angle("field theta", theta)?;
        if !phi.is_finite() {
            return Err(Error::OutOfRange {
                name: "field phi",
                value: phi,
                lo: 0.0,
                hi: TAU,
            });
        }
        let phi = phi.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        let phi = if phi >= TAU { 0.0 } else { phi };
        Ok(FieldSpec {
            omega,
            direction: Direction::new(theta, phi),
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn theta(&self) -> f64 {
        self.direction.theta
    }

    pub fn phi(&self) -> f64 {
        self.direction.phi
    }
}

/// One point of an evolution trace.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionSample {
    pub t: f64,
    pub state: StateVector,
    pub predicted_theta: f64,
    pub predicted_phi: f64,
    /// |⟨ψ_m(θ, φ)|state⟩| at the predicted angles.
    pub residency_fidelity: f64,
    pub phase_beta: f64,
}

/// H = ω S·n′.
pub fn field_hamiltonian(s: HalfInt, field: &FieldSpec) -> Result<OperatorMatrix> {
    let ops = SpinOperators::new(Spin::new(s)?);
    Ok(ops.projection(field.direction.axis()) * Complex64::from(field.omega))
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "t",
            value: t,
            lo: 0.0,
            hi: f64::INFINITY,
        })
    }
}

/// Propagator e^{−iHt} = e^{−iωt S·n′} for a fixed field, reusable across times.
#[derive(Clone, Debug)]
pub struct Propagator {
    field: FieldSpec,
    generator: SpectralDecomposition,
}

impl Propagator {
    pub fn new(s: HalfInt, field: FieldSpec) -> Result<Self> {
        let ops = SpinOperators::new(Spin::new(s)?);
        let generator = SpectralDecomposition::new(ops.projection(field.direction.axis()), &ops.eigenvalues())?;
        Ok(Propagator { field, generator })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn hamiltonian(&self) -> OperatorMatrix {
        self.generator.generator() * Complex64::from(self.field.omega)
    }

    pub fn matrix(&self, t: f64) -> OperatorMatrix {
        self.generator.exp(Complex64::new(0.0, -self.field.omega * t))
    }

    pub fn evolve(&self, state: &StateVector, t: f64) -> Result<StateVector> {
        check_time(t)?;
        let dim = self.generator.generator().nrows();
        if state.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: state.dim(),
            });
        }
        let scale = Complex64::new(0.0, -self.field.omega * t);
        Ok(StateVector::from_raw(
            self.generator.exp_apply(scale, state.amplitudes()),
        ))
    }
}

/// e^{−iHt}|state⟩.
pub fn evolve(state: &StateVector, s: HalfInt, field: &FieldSpec, t: f64) -> Result<StateVector> {
    Propagator::new(s, *field)?.evolve(state, t)
}

/// Manifold coordinates (θ, φ) of a state evolved from |m⟩ for time t.
///
/// θ solves sin(θ/2) = sinθ′·|sin(ωt/2)|. For φ the horizontal part of the
/// rotated z axis is, in the frame turned by φ′,
/// (2cosθ′ sin²(ωt/2), −sin ωt)·sinθ′, so φ = φ′ + atan2(−sin ωt, 2cosθ′ sin²(ωt/2)),
/// which is the continuous-in-t branch of φ′ − arctan[cos(ωt/2)/(cosθ′ sin(ωt/2))]
/// starting from φ′ − π/2 at t → 0⁺. Where both arguments vanish the φ′ − π/2
/// convention is returned. φ is reported in [0, 2π).
pub fn evolved_angles(field: &FieldSpec, t: f64) -> Result<(f64, f64)> {
    check_time(t)?;
    let half = field.omega * t / 2.0;
    let (sin_half, cos_half) = half.sin_cos();
    let (sin_tilt, cos_tilt) = field.theta().sin_cos();
    let theta = 2.0 * (sin_tilt * sin_half.abs()).min(1.0).asin();
    let y = -2.0 * sin_half * cos_half;
    let x = 2.0 * cos_tilt * sin_half * sin_half;
    let offset = if x == 0.0 && y == 0.0 { -FRAC_PI_2 } else { y.atan2(x) };
    let phi = (field.phi() + offset).rem_euclid(TAU);
    Ok((theta, if phi >= TAU { 0.0 } else { phi }))
}

/// arg⟨ψ_m(θ, φ)|state⟩ in (−π, π]; the spin is inferred from the state dimension.
pub fn global_phase(state: &StateVector, theta: f64, phi: f64, m: HalfInt) -> Result<f64> {
    if state.dim() == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let s = HalfInt::from_twice(state.dim() as i64 - 1);
    let reference = RotationalManifold::new(s, m)?.state(theta, phi);
    let overlap = reference.inner(state);
    if (overlap.norm() - 1.0).abs() > RESIDENCY_TOL {
        return Err(Error::OffManifold(overlap.norm()));
    }
    Ok(wrap_pi(overlap.arg()))
}

/// Evolves |m⟩ and records predicted angles, residency and phase at each time.
pub fn trace(s: HalfInt, m: HalfInt, field: &FieldSpec, times: &[f64]) -> Result<Vec<EvolutionSample>> {
    let propagator = Propagator::new(s, *field)?;
    let manifold = RotationalManifold::new(s, m)?;
    let initial = manifold.operators().basis_state(m)?;
    times
        .iter()
        .map(|&t| {
            let state = propagator.evolve(&initial, t)?;
            let (theta, phi) = evolved_angles(field, t)?;
            let overlap = manifold.state(theta, phi).inner(&state);
            Ok(EvolutionSample {
                t,
                state,
                predicted_theta: theta,
                predicted_phi: phi,
                residency_fidelity: overlap.norm(),
                phase_beta: wrap_pi(overlap.arg()),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotor::rotate_eigenstate;
    use crate::spin::basis_eigenstate;
    use approx::assert_abs_diff_eq;
    use nalgebra::SymmetricEigen;
    use std::f64::consts::PI;

    fn sorted_eigenvalues(op: &OperatorMatrix) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(op.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    #[test]
    fn field_validation() {
        assert!(FieldSpec::new(0.0, 0.1, 0.0).is_err());
        assert!(FieldSpec::new(-1.0, 0.1, 0.0).is_err());
        assert!(FieldSpec::new(1.0, -0.1, 0.0).is_err());
        assert!(FieldSpec::new(1.0, 3.2, 0.0).is_err());
        let f = FieldSpec::new(1.0, 0.5, -0.5).unwrap();
        assert!((f.phi() - (TAU - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_spectra() {
        let ops = SpinOperators::new(Spin::new(HalfInt::ONE).unwrap());
        let along_z = field_hamiltonian(HalfInt::ONE, &FieldSpec::new(2.5, 0.0, 1.0).unwrap()).unwrap();
        assert!((along_z - &ops.sz * Complex64::from(2.5)).norm() < 1e-15);

        let omega = 1.7;
        let h1 = field_hamiltonian(HalfInt::ONE, &FieldSpec::new(omega, 1.1, 0.4).unwrap()).unwrap();
        for (got, want) in sorted_eigenvalues(&h1).iter().zip([-omega, 0.0, omega]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
        }
        let h32 = field_hamiltonian(HalfInt::from_twice(3), &FieldSpec::new(omega, 2.0, 5.0).unwrap()).unwrap();
        for (got, want) in sorted_eigenvalues(&h32).iter().zip([-1.5, -0.5, 0.5, 1.5]) {
            assert_abs_diff_eq!(*got, want * omega, epsilon = 1e-10);
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let psi = rotate_eigenstate(HalfInt::from_twice(3), HalfInt::HALF, 0.6, 0.2).unwrap();
        let f = FieldSpec::new(1.3, 0.9, 4.0).unwrap();
        let out = evolve(&psi, HalfInt::from_twice(3), &f, 0.0).unwrap();
        assert!((out.amplitudes() - psi.amplitudes()).norm() < 1e-14);
        assert!(evolve(&psi, HalfInt::from_twice(3), &f, -1.0).is_err());
        assert!(evolve(&psi, HalfInt::ONE, &f, 1.0).is_err());
    }

    #[test]
    fn spin_one_closed_form_from_top_state() {
        let (omega, tp, pp, t) = (1.4, 0.8, 2.2, 0.9);
        let f = FieldSpec::new(omega, tp, pp).unwrap();
        let out = evolve(
            &basis_eigenstate(HalfInt::ONE, HalfInt::ONE).unwrap(),
            HalfInt::ONE,
            &f,
            t,
        )
        .unwrap();
        let (st, ct) = tp.sin_cos();
        let s2 = (omega * t / 2.0).sin().powi(2);
        let sw = (omega * t).sin();
        let i = Complex64::i();
        let want = [
            Complex64::from(1.0 - (1.0 + ct * ct) * s2) - i * (ct * sw),
            -(Complex64::from(2f64.sqrt() * ct * st * s2) + i * (st * sw / 2f64.sqrt()))
                * Complex64::from_polar(1.0, pp),
            -Complex64::from_polar(st * st * s2, 2.0 * pp),
        ];
        for (got, want) in out.amplitudes().iter().zip(want) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn spin_two_matches_eigen_propagator() {
        let s = HalfInt::from_int(2);
        let f = FieldSpec::new(0.85, 1.9, 3.7).unwrap();
        let h = field_hamiltonian(s, &f).unwrap();
        let eig = SymmetricEigen::new(h);
        let v = &eig.eigenvectors;
        let u = v
            * OperatorMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(0.0, -l * 1.3).exp()))
            * v.adjoint();
        let psi = basis_eigenstate(s, HalfInt::ONE).unwrap();
        let out = evolve(&psi, s, &f, 1.3).unwrap();
        assert!((out.amplitudes() - u * psi.amplitudes())
            .iter()
            .all(|z| z.norm() < 1e-10));
    }

    #[test]
    fn angles_special_cases() {
        let f = FieldSpec::new(1.0, 0.7, 1.0).unwrap();
        let (theta, phi) = evolved_angles(&f, 0.0).unwrap();
        assert_eq!(theta, 0.0);
        assert_abs_diff_eq!(phi, 1.0 - FRAC_PI_2 + TAU, epsilon = 1e-15);
        let f = FieldSpec::new(1.0, FRAC_PI_2, 0.0).unwrap();
        let (theta, _) = evolved_angles(&f, PI).unwrap();
        assert_abs_diff_eq!(theta, PI, epsilon = 1e-7);
        let (theta, phi) = evolved_angles(&f, 1.2).unwrap();
        assert_abs_diff_eq!(theta, 1.2, epsilon = 1e-12);
        assert_abs_diff_eq!(phi, TAU - FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn angles_locate_the_evolved_state() {
        let f = FieldSpec::new(1.0, PI / 3.0, 0.5).unwrap();
        let (theta, phi) = evolved_angles(&f, 1.0).unwrap();
        for twice_m in [2, 0, -2] {
            let m = HalfInt::from_twice(twice_m);
            let direct = evolve(&basis_eigenstate(HalfInt::ONE, m).unwrap(), HalfInt::ONE, &f, 1.0).unwrap();
            let on_manifold = rotate_eigenstate(HalfInt::ONE, m, theta, phi).unwrap();
            assert_abs_diff_eq!(on_manifold.fidelity(&direct), 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn phases_for_spin_one() {
        let f = FieldSpec::new(1.1, 1.2, 0.6).unwrap();
        let t = 2.3;
        let (theta, phi) = evolved_angles(&f, t).unwrap();
        let phase = |m: i64| {
            let m = HalfInt::from_int(m);
            let state = evolve(&basis_eigenstate(HalfInt::ONE, m).unwrap(), HalfInt::ONE, &f, t).unwrap();
            global_phase(&state, theta, phi, m).unwrap()
        };
        let beta = wrap_pi(2.0 * f.phi() - phi + PI);
        assert_abs_diff_eq!(wrap_pi(phase(1) - beta), 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(phase(0), 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(wrap_pi(phase(1) + phase(-1)), 0.0, epsilon = 1e-8);

        let start = basis_eigenstate(HalfInt::ONE, HalfInt::ONE).unwrap();
        let (t0, p0) = evolved_angles(&f, 0.0).unwrap();
        assert_abs_diff_eq!(
            wrap_pi(global_phase(&start, t0, p0, HalfInt::ONE).unwrap() - wrap_pi(2.0 * f.phi() - p0 + PI)),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn off_manifold_is_rejected() {
        let state = basis_eigenstate(HalfInt::ONE, HalfInt::ZERO).unwrap();
        assert!(matches!(
            global_phase(&state, 0.0, 0.0, HalfInt::ONE),
            Err(Error::OffManifold(_))
        ));
    }

    #[test]
    fn trace_stays_on_manifold() {
        let f = FieldSpec::new(0.7, 2.4, 5.9).unwrap();
        let times: Vec<f64> = (0..40).map(|k| k as f64 * 0.5).collect();
        let samples = trace(HalfInt::from_twice(5), HalfInt::from_twice(-3), &f, &times).unwrap();
        for s in samples {
            assert_abs_diff_eq!(s.residency_fidelity, 1.0, epsilon = 1e-8);
            assert!((0.0..=PI).contains(&s.predicted_theta));
            assert_abs_diff_eq!(s.state.norm(), 1.0, epsilon = 1e-12);
        }
    }
}
