//! Fubini-Study geometry of rotational manifolds.
//!
//! With coordinates ξ = (θ, φ) the metric components are
//! g_αβ = γ² Re(⟨ψ_α|ψ_β⟩ − ⟨ψ_α|ψ⟩⟨ψ|ψ_β⟩). On the manifold of projection m
//! this is a round sphere of radius (γ/√2)·√(s + s² − m²).

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::halfint::{HalfInt, Spin};
use crate::rotor::RotationalManifold;
use crate::state::StateVector;

/// Symmetric 2×2 metric in coordinates (θ, φ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricTensor2 {
    pub g_tt: f64,
    pub g_tp: f64,
    pub g_pp: f64,
    pub gamma: f64,
}

impl MetricTensor2 {
    pub fn determinant(&self) -> f64 {
        self.g_tt * self.g_pp - self.g_tp * self.g_tp
    }

    /// Largest absolute component difference.
    pub fn max_abs_dev(&self, other: &MetricTensor2) -> f64 {
        (self.g_tt - other.g_tt)
            .abs()
            .max((self.g_tp - other.g_tp).abs())
            .max((self.g_pp - other.g_pp).abs())
    }
}

/// Tangent vectors ∂_θ|ψ⟩ and ∂_φ|ψ⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentPair {
    pub d_theta: DVector<Complex64>,
    pub d_phi: DVector<Complex64>,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive {
            name: "gamma",
            value: gamma,
        })
    }
}

/// s + s² − m², computed exactly from doubled integers.
fn radius_factor(spin: Spin, m: HalfInt) -> Result<f64> {
    spin.index_of(m)?;
    let two_s = spin.half_int().twice();
    let two_m = m.twice();
    // 4(s + s² − m²) = 2·(2s) + (2s)² − (2m)²
    Ok((2 * two_s + two_s * two_s - two_m * two_m) as f64 / 4.0)
}

/// Analytic tangent vectors of the manifold at (θ, φ).
pub fn state_derivatives(s: HalfInt, m: HalfInt, theta: f64, phi: f64) -> Result<TangentPair> {
    let (d_theta, d_phi) = RotationalManifold::new(s, m)?.derivatives(theta, phi);
    Ok(TangentPair { d_theta, d_phi })
}

/// Assembles γ² Re(⟨ψ_α|ψ_β⟩ − ⟨ψ_α|ψ⟩⟨ψ|ψ_β⟩) from a state and its tangents.
pub fn metric_from_tangents(psi: &StateVector, tangents: &TangentPair, gamma: f64) -> MetricTensor2 {
    let v = psi.amplitudes();
    let (dt, dp) = (&tangents.d_theta, &tangents.d_phi);
    let component = |a: &DVector<Complex64>, b: &DVector<Complex64>| {
        let g = a.dotc(b) - a.dotc(v) * v.dotc(b);
        gamma * gamma * g.re
    };
    MetricTensor2 {
        g_tt: component(dt, dt),
        g_tp: component(dt, dp),
        g_pp: component(dp, dp),
        gamma,
    }
}

/// Metric computed from the state and its analytic derivatives.
pub fn metric_tensor_numeric(s: HalfInt, m: HalfInt, theta: f64, phi: f64, gamma: f64) -> Result<MetricTensor2> {
    check_gamma(gamma)?;
    let manifold = RotationalManifold::new(s, m)?;
    let psi = manifold.state(theta, phi);
    let (d_theta, d_phi) = manifold.derivatives(theta, phi);
    Ok(metric_from_tangents(&psi, &TangentPair { d_theta, d_phi }, gamma))
}

/// Closed form g_θθ = (γ²/2)(s + s² − m²), g_φφ = g_θθ sin²θ, g_θφ = 0.
pub fn metric_tensor_closed(s: HalfInt, m: HalfInt, theta: f64, gamma: f64) -> Result<MetricTensor2> {
    check_gamma(gamma)?;
    let g_tt = gamma * gamma / 2.0 * radius_factor(Spin::new(s)?, m)?;
    Ok(MetricTensor2 {
        g_tt,
        g_tp: 0.0,
        g_pp: g_tt * theta.sin().powi(2),
        gamma,
    })
}

/// R = (γ/√2)·√(s + s² − m²).
pub fn manifold_radius(s: HalfInt, m: HalfInt, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    Ok(gamma * (radius_factor(Spin::new(s)?, m)? / 2.0).sqrt())
}

/// Distinct manifold radii for spin `s`, ordered from |m| = s inward.
pub fn distinct_radii(s: HalfInt, gamma: f64) -> Result<Vec<f64>> {
    let spin = Spin::new(s)?;
    let mut radii: Vec<f64> = Vec::new();
    for m in spin.projections() {
        let r = manifold_radius(s, m, gamma)?;
        if !radii.iter().any(|&x| (x - r).abs() <= 1e-12 * x.max(1.0)) {
            radii.push(r);
        }
    }
    Ok(radii)
}

/// ⟨ψ₀(θ,φ)|ψ₀(θ′,φ′)⟩ on the spin-1 m = 0 manifold, which equals n·n′.
pub fn m0_overlap(theta: f64, phi: f64, theta2: f64, phi2: f64) -> f64 {
    theta.sin() * theta2.sin() * (phi - phi2).cos() + theta.cos() * theta2.cos()
}

/// Fubini-Study distance γ·arccos|⟨a|b⟩|.
///
/// Evaluated as γ·asin‖b − ⟨a|b⟩a‖ below π/4, which stays accurate for
/// nearly identical states where the arccos form loses half its digits.
pub fn fubini_study_distance(a: &StateVector, b: &StateVector, gamma: f64) -> f64 {
    let overlap = a.inner(b);
    let modulus = overlap.norm().min(1.0);
    let angle = if modulus > std::f64::consts::FRAC_1_SQRT_2 {
        let residual = b.amplitudes() - a.amplitudes() * overlap;
        residual.norm().min(1.0).asin()
    } else {
        modulus.acos()
    };
    gamma * angle
}
