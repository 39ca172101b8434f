//! Minimal-time transfer |m⟩ → |ψ_m(θ_f, φ_f)⟩ with a static field of fixed strength.
//!
//! Under H = ω S·n′ the state moves on a circle of radius r = R sinθ′ around
//! n′ at speed v = ωR sinθ′. Reaching a target at angular separation θ_f
//! sweeps the arc α = 2 arcsin(sin(θ_f/2)/sinθ′), so
//!
//! ```text
//! t = α r / v = (2/ω) arcsin(sin(θ_f/2) / sinθ′)
//! ```
//!
//! which is shortest, θ_f/ω, for a field perpendicular to both endpoints.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::evolution::FieldSpec;
use crate::halfint::{HalfInt, Spin};
use crate::metric::manifold_radius;
use crate::state::{polar_angle, OperatorMatrix, StateVector};

/// Slack on the reachability condition sinθ′ ≥ sin(θ_f/2).
const REACH_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferProblem {
    pub s: HalfInt,
    pub m: HalfInt,
    pub theta_f: f64,
    pub phi_f: f64,
    pub omega: f64,
    pub gamma: f64,
}

impl TransferProblem {
    pub fn new(s: HalfInt, m: HalfInt, theta_f: f64, phi_f: f64, omega: f64, gamma: f64) -> Result<Self> {
        Spin::new(s)?.index_of(m)?;
        let theta_f = polar_angle("theta_f", theta_f)?;
        if !phi_f.is_finite() {
            return Err(Error::OutOfRange {
                name: "phi_f",
                value: phi_f,
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            });
        }
        for (name, value) in [("omega", omega), ("gamma", gamma)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositive { name, value });
            }
        }
        Ok(TransferProblem {
            s,
            m,
            theta_f,
            phi_f,
            omega,
            gamma,
        })
    }

    /// Radius of the manifold the transfer runs on.
    pub fn radius(&self) -> f64 {
        manifold_radius(self.s, self.m, self.gamma).expect("validated at construction")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferSolution {
    pub field: FieldSpec,
    pub time: f64,
    pub path_length: f64,
    pub speed: f64,
    /// Angle α swept around the field axis.
    pub arc_angle: f64,
    /// Radius r = R sinθ′ of the circle traced around the field axis.
    pub circle_radius: f64,
}

/// One row of a tilt scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TiltSample {
    pub theta_prime: f64,
    pub time: f64,
    pub speed: f64,
    pub path_length: f64,
}

/// α = 2 arcsin(sin(θ_f/2)/sinθ′), principal branch.
fn arc_angle(theta_prime: f64, theta_f: f64) -> Result<f64> {
    let reach = (theta_f / 2.0).sin();
    if reach == 0.0 {
        return Ok(0.0);
    }
    let sin_tilt = theta_prime.sin();
    if sin_tilt <= 0.0 || reach > sin_tilt + REACH_TOL {
        return Err(Error::Unreachable);
    }
    Ok(2.0 * (reach / sin_tilt).min(1.0).asin())
}

/// s = 2R sinθ′ arcsin(sin(θ_f/2)/sinθ′).
pub fn path_length(radius: f64, theta_prime: f64, theta_f: f64) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::NonPositive {
            name: "radius",
            value: radius,
        });
    }
    Ok(radius * theta_prime.sin() * arc_angle(theta_prime, theta_f)?)
}

/// v = ωR sinθ′.
pub fn evolution_speed(s: HalfInt, m: HalfInt, field: &FieldSpec, gamma: f64) -> Result<f64> {
    Ok(field.omega() * manifold_radius(s, m, gamma)? * field.theta().sin())
}

/// γ√⟨(ΔH)²⟩ for a normalized state.
pub fn speed_from_variance(state: &StateVector, hamiltonian: &OperatorMatrix, gamma: f64) -> Result<f64> {
    if hamiltonian.nrows() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: hamiltonian.nrows(),
            found: state.dim(),
        });
    }
    // ‖(H − ⟨H⟩)ψ‖² avoids the cancellation in ⟨H²⟩ − ⟨H⟩²
    let mean = state.expectation(hamiltonian);
    let centered = state.apply(hamiltonian) - state.amplitudes() * mean;
    Ok(gamma * centered.norm())
}

/// t = (2/ω) arcsin(sin(θ_f/2)/sinθ′).
pub fn transfer_time(omega: f64, theta_prime: f64, theta_f: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::NonPositive {
            name: "omega",
            value: omega,
        });
    }
    Ok(arc_angle(theta_prime, theta_f)? / omega)
}

/// Field azimuth φ′ for which the cone about n′(θ′, φ′) passes through both
/// the z axis and n(θ_f, φ_f):
/// cos(φ′ − φ_f) = cosθ′(1 − cosθ_f)/(sinθ′ sinθ_f).
///
/// Returns the φ_f + arccos(·) branch, which reaches the target after the
/// shorter arc. The mirror branch φ_f − arccos(·) reaches it only after 2π − α.
/// For θ_f ∈ {0, π} (and the perpendicular tilt at θ_f = π) φ_f + π/2 is returned.
pub fn compatible_azimuth(theta_prime: f64, theta_f: f64, phi_f: f64) -> Result<f64> {
    let sin_f = theta_f.sin();
    if theta_f == 0.0 {
        return Ok(phi_f + FRAC_PI_2);
    }
    let (sin_tilt, cos_tilt) = theta_prime.sin_cos();
    if sin_f.abs() < 1e-15 || theta_f >= PI {
        // antipodal target: only the perpendicular tilt reaches it
        return if (sin_tilt - 1.0).abs() <= REACH_TOL {
            Ok(phi_f + FRAC_PI_2)
        } else {
            Err(Error::NoCompatibleAzimuth)
        };
    }
    if sin_tilt <= 0.0 {
        return Err(Error::NoCompatibleAzimuth);
    }
    let cosine = cos_tilt * (1.0 - theta_f.cos()) / (sin_tilt * sin_f);
    if cosine.abs() > 1.0 + REACH_TOL {
        return Err(Error::NoCompatibleAzimuth);
    }
    Ok(phi_f + cosine.clamp(-1.0, 1.0).acos())
}

/// Full solution at a prescribed tilt θ′.
pub fn transfer_with_tilt(problem: &TransferProblem, theta_prime: f64) -> Result<TransferSolution> {
    let theta_prime = polar_angle("field theta", theta_prime)?;
    let arc = arc_angle(theta_prime, problem.theta_f)?;
    let phi = match compatible_azimuth(theta_prime, problem.theta_f, problem.phi_f) {
        Ok(phi) => phi,
        Err(Error::NoCompatibleAzimuth) => return Err(Error::Unreachable),
        Err(e) => return Err(e),
    };
    let field = FieldSpec::new(problem.omega, theta_prime, phi)?;
    let radius = problem.radius();
    let circle_radius = radius * theta_prime.sin();
    let speed = problem.omega * circle_radius;
    let path_length = arc * circle_radius;
    Ok(TransferSolution {
        field,
        time: arc / problem.omega,
        path_length,
        speed,
        arc_angle: arc,
        circle_radius,
    })
}

/// The minimal-time transfer: perpendicular field, t = θ_f/ω, path = Rθ_f, speed = ωR.
pub fn optimal_transfer(problem: &TransferProblem) -> Result<TransferSolution> {
    let radius = problem.radius();
    let field = FieldSpec::new(problem.omega, FRAC_PI_2, problem.phi_f + FRAC_PI_2)?;
    Ok(TransferSolution {
        field,
        time: problem.theta_f / problem.omega,
        path_length: radius * problem.theta_f,
        speed: problem.omega * radius,
        arc_angle: problem.theta_f,
        circle_radius: radius,
    })
}

/// Transfer time, speed and path length for `grid_points` tilts spanning the
/// reachable interval (θ_f/2, π/2]; the last row is exactly θ′ = π/2.
pub fn sweep_tilt(problem: &TransferProblem, grid_points: usize) -> Result<Vec<TiltSample>> {
    if grid_points < 3 {
        return Err(Error::GridTooSmall(grid_points));
    }
    let lower = (problem.theta_f / 2.0).sin().min(1.0).asin();
    let span = FRAC_PI_2 - lower;
    if span <= 1e-12 {
        return Err(Error::EmptyReachableInterval(problem.theta_f));
    }
    // stay just inside the open end, where the arcsine argument reaches 1
    let start = lower + span * 1e-9;
    let step = (FRAC_PI_2 - start) / (grid_points - 1) as f64;
    let radius = problem.radius();
    (0..grid_points)
        .map(|k| {
            let theta_prime = if k + 1 == grid_points {
                FRAC_PI_2
            } else {
                start + step * k as f64
            };
            let arc = arc_angle(theta_prime, problem.theta_f)?;
            let circle_radius = radius * theta_prime.sin();
            Ok(TiltSample {
                theta_prime,
                time: arc / problem.omega,
                speed: problem.omega * circle_radius,
                path_length: arc * circle_radius,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{evolve, field_hamiltonian};
    use crate::rotor::rotate_eigenstate;
    use crate::spin::basis_eigenstate;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn path_lengths() {
        let r = 0.9;
        assert_abs_diff_eq!(path_length(r, FRAC_PI_2, 1.3).unwrap(), r * 1.3, epsilon = 1e-14);
        assert_eq!(path_length(r, 0.4, 0.0).unwrap(), 0.0);
        // frozen from an independent evaluation of 2R sinθ′ arcsin(sin(θ_f/2)/sinθ′)
        assert_abs_diff_eq!(
            path_length(1.0, PI / 3.0, FRAC_PI_2).unwrap(),
            1.654656919906525,
            epsilon = 1e-12
        );
        assert_eq!(path_length(1.0, 0.1, 3.0), Err(Error::Unreachable));
        assert_eq!(path_length(1.0, 0.0, 0.5), Err(Error::Unreachable));
    }

    #[test]
    fn path_length_matches_arc_length_of_trajectory() {
        // integrate the Fubini-Study line element along the evolved path
        let (s, m) = (HalfInt::ONE, HalfInt::ONE);
        let (tp, tf) = (PI / 3.0, FRAC_PI_2);
        let phi_p = compatible_azimuth(tp, tf, 0.0).unwrap();
        let field = FieldSpec::new(1.0, tp, phi_p).unwrap();
        let t_end = transfer_time(1.0, tp, tf).unwrap();
        let start = basis_eigenstate(s, m).unwrap();
        let n = 4000;
        let mut total = 0.0;
        let mut prev = start.clone();
        for k in 1..=n {
            let next = evolve(&start, s, &field, t_end * k as f64 / n as f64).unwrap();
            total += crate::metric::fubini_study_distance(&prev, &next, 1.0);
            prev = next;
        }
        let r = manifold_radius(s, m, 1.0).unwrap();
        // chords of a small circle undercount its length by O(n⁻²)
        assert_abs_diff_eq!(total, path_length(r, tp, tf).unwrap(), epsilon = 1e-7);
    }

    #[test]
    fn speeds() {
        let gamma = 1.4;
        let f = FieldSpec::new(2.0, FRAC_PI_2, 0.3).unwrap();
        assert_abs_diff_eq!(
            evolution_speed(HalfInt::ONE, HalfInt::ONE, &f, gamma).unwrap(),
            gamma * 2.0 * FRAC_1_SQRT_2,
            epsilon = 1e-14
        );
        let along_z = FieldSpec::new(2.0, 0.0, 0.3).unwrap();
        assert_eq!(
            evolution_speed(HalfInt::ONE, HalfInt::ONE, &along_z, gamma).unwrap(),
            0.0
        );

        let f = FieldSpec::new(1.0, PI / 4.0, 0.3).unwrap();
        let want = 5f64.sqrt() / 2.0;
        assert_abs_diff_eq!(evolution_speed(h(4), h(2), &f, 1.0).unwrap(), want, epsilon = 1e-12);
        let ham = field_hamiltonian(h(4), &f).unwrap();
        let v = speed_from_variance(&basis_eigenstate(h(4), h(2)).unwrap(), &ham, 1.0).unwrap();
        assert_abs_diff_eq!(v, want, epsilon = 1e-10);
    }

    #[test]
    fn variance_speed_of_eigenstate_is_zero() {
        let f = FieldSpec::new(1.3, 0.0, 0.0).unwrap();
        let ham = field_hamiltonian(h(3), &f).unwrap();
        let v = speed_from_variance(&basis_eigenstate(h(3), h(1)).unwrap(), &ham, 1.0).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn times() {
        let omega = 1.7;
        assert_abs_diff_eq!(
            transfer_time(omega, FRAC_PI_2, 1.1).unwrap(),
            1.1 / omega,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            transfer_time(omega, FRAC_PI_2, PI).unwrap(),
            PI / omega,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            transfer_time(1.0, PI / 3.0, FRAC_PI_2).unwrap(),
            1.9106332362490186,
            epsilon = 1e-12
        );
        assert_eq!(transfer_time(1.0, 0.1, 3.0), Err(Error::Unreachable));
        assert!(transfer_time(0.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn time_at_tilt_is_confirmed_by_evolution() {
        let (tp, tf) = (PI / 3.0, FRAC_PI_2);
        let phi_p = compatible_azimuth(tp, tf, 0.0).unwrap();
        assert_abs_diff_eq!(phi_p, (1.0 / 3f64.sqrt()).acos(), epsilon = 1e-14);
        assert_abs_diff_eq!(phi_p, 0.9553166181245092, epsilon = 1e-12);
        let field = FieldSpec::new(1.0, tp, phi_p).unwrap();
        let t = transfer_time(1.0, tp, tf).unwrap();
        for twice_m in [2, 0, -2] {
            let m = h(twice_m);
            let reached = evolve(&basis_eigenstate(HalfInt::ONE, m).unwrap(), HalfInt::ONE, &field, t).unwrap();
            let target = rotate_eigenstate(HalfInt::ONE, m, tf, 0.0).unwrap();
            assert_abs_diff_eq!(target.fidelity(&reached), 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn azimuth_conventions() {
        assert_abs_diff_eq!(
            compatible_azimuth(FRAC_PI_2, 1.0, 0.4).unwrap(),
            0.4 + FRAC_PI_2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            compatible_azimuth(FRAC_PI_2, PI, 0.4).unwrap(),
            0.4 + FRAC_PI_2,
            epsilon = 1e-15
        );
        assert_eq!(compatible_azimuth(1.0, PI, 0.4), Err(Error::NoCompatibleAzimuth));
        assert_eq!(compatible_azimuth(0.2, 2.0, 0.4), Err(Error::NoCompatibleAzimuth));
    }

    #[test]
    fn optimal_examples() {
        let p = TransferProblem::new(HalfInt::ONE, HalfInt::ONE, PI, 0.0, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(optimal_transfer(&p).unwrap().time, PI / 2.0, epsilon = 1e-15);
        let p = TransferProblem::new(HalfInt::ONE, HalfInt::ZERO, FRAC_PI_2, 0.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(optimal_transfer(&p).unwrap().time, FRAC_PI_2, epsilon = 1e-15);

        let p = TransferProblem::new(h(5), h(1), 1.0, 0.3, 2.0, 1.0).unwrap();
        let sol = optimal_transfer(&p).unwrap();
        assert_abs_diff_eq!(sol.time, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(sol.path_length, 2.0615528128088303, epsilon = 1e-12);
        assert_abs_diff_eq!(sol.time, sol.path_length / sol.speed, epsilon = 1e-12);
        let reached = evolve(&basis_eigenstate(h(5), h(1)).unwrap(), h(5), &sol.field, sol.time).unwrap();
        let target = rotate_eigenstate(h(5), h(1), 1.0, 0.3).unwrap();
        assert_abs_diff_eq!(target.fidelity(&reached), 1.0, epsilon = 1e-8);

        let zero = TransferProblem::new(HalfInt::ONE, HalfInt::ONE, 0.0, 0.0, 1.0, 1.0).unwrap();
        let sol = optimal_transfer(&zero).unwrap();
        assert_eq!((sol.time, sol.path_length), (0.0, 0.0));
    }

    #[test]
    fn prescribed_tilt_agrees_with_optimum_at_perpendicular() {
        let p = TransferProblem::new(h(3), h(-1), 2.2, 1.0, 0.8, 1.5).unwrap();
        let a = transfer_with_tilt(&p, FRAC_PI_2).unwrap();
        let b = optimal_transfer(&p).unwrap();
        assert_abs_diff_eq!(a.time, b.time, epsilon = 1e-12);
        assert_abs_diff_eq!(a.path_length, b.path_length, epsilon = 1e-12);
        assert_abs_diff_eq!(a.field.phi(), b.field.phi(), epsilon = 1e-12);
        assert_eq!(transfer_with_tilt(&p, 0.1), Err(Error::Unreachable));
    }

    #[test]
    fn sweep_shape() {
        let p = TransferProblem::new(HalfInt::ONE, HalfInt::ONE, FRAC_PI_2, 0.0, 1.0, 1.0).unwrap();
        let rows = sweep_tilt(&p, 101).unwrap();
        assert_eq!(rows.len(), 101);
        assert_eq!(rows.last().unwrap().theta_prime, FRAC_PI_2);
        assert!(rows.windows(2).all(|w| w[1].time < w[0].time));
        assert_abs_diff_eq!(rows.last().unwrap().time, FRAC_PI_2, epsilon = 1e-10);

        let flat = TransferProblem::new(HalfInt::ONE, HalfInt::ONE, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert!(sweep_tilt(&flat, 5).unwrap().iter().all(|r| r.time == 0.0));
        assert_eq!(sweep_tilt(&p, 2), Err(Error::GridTooSmall(2)));
        let antipode = TransferProblem::new(HalfInt::ONE, HalfInt::ONE, PI, 0.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            sweep_tilt(&antipode, 5),
            Err(Error::EmptyReachableInterval(_))
        ));
    }

    #[test]
    fn problem_validation() {
        assert!(TransferProblem::new(HalfInt::ONE, h(4), 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(TransferProblem::new(HalfInt::ONE, HalfInt::ONE, 4.0, 0.0, 1.0, 1.0).is_err());
        assert!(TransferProblem::new(HalfInt::ONE, HalfInt::ONE, 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(TransferProblem::new(HalfInt::ONE, HalfInt::ONE, 1.0, 0.0, 1.0, -1.0).is_err());
    }
}
