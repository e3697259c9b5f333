//! Weak-probe response extracted from the density-matrix equations.
//!
//! Each circular probe component is driven on its own, so s⁺ is the response
//! of ρ_1g to g₁ alone and s⁻ that of ρ_2g to g₂ alone:
//! ρ_1g = (g₁/γ₁)·s⁺, ρ_2g = (g₂/γ₂)·s⁻.
//! With both controls on, the equations also carry a cross response of ρ_1g
//! to g₂ through ρ_eg (∝ G₁*G₂); it is not part of s±.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use super::{build_generator, steady_state, EngineError, Level};
use crate::params::{SusceptibilityPair, SystemParams};

/// Largest probe half-Rabi amplitude accepted by [`probe_response_finite`].
pub const MAX_FINITE_PROBE: f64 = 1e-2;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// First-order probe response with ground-state populations ρ_gg = 1.
///
/// The unknowns (ρ_1g, ρ_2g, ρ_eg) obey
///
/// ```text
/// 0 = −(γ₁ + i(δ+Ω)) ρ_1g + i g₁ + i G₁* ρ_eg
/// 0 = −(γ₂ + i(δ−Ω)) ρ_2g + i g₂ + i G₂* ρ_eg
/// 0 = −(Γ₁+Γ₂ + i(Δ+δ)) ρ_eg + i G₁ ρ_1g + i G₂ ρ_2g
/// ```
///
/// All other coherences are at least second order in the probe.
pub fn probe_response_perturbative(p: &SystemParams) -> Result<SusceptibilityPair, EngineError> {
    perturbative_with_amplitude(p, 1.0)
}

pub(crate) fn perturbative_with_amplitude(p: &SystemParams, amplitude: f64) -> Result<SusceptibilityPair, EngineError> {
    let p = p.validate()?;
    let (c1, c2) = (p.control1, p.control2);
    let (om, pd) = (p.zeeman, p.probe_detuning);
    let arm1 = Complex64::new(p.gamma1, pd + om);
    let arm2 = Complex64::new(p.gamma2, pd - om);
    let two_photon = Complex64::new(p.upper_decay(), p.control_detuning + pd);

    #[rustfmt::skip]
    let system = Matrix3::new(
        -arm1, ZERO,  I * c1.conj(),
        ZERO,  -arm2, I * c2.conj(),
        I * c1, I * c2, -two_photon,
    );
    let lu = system.lu();
    let singular = || EngineError::Singular { stage: "perturbative", params: Box::new(p) };

    let amp = Complex64::new(amplitude, 0.0);
    // RHS is −i g for the driven arm
    let drive_plus = Vector3::new(-I * amp, ZERO, ZERO);
    let drive_minus = Vector3::new(ZERO, -I * amp, ZERO);
    let x_plus = lu.solve(&drive_plus).ok_or_else(singular)?;
    let x_minus = lu.solve(&drive_minus).ok_or_else(singular)?;

    let s = SusceptibilityPair { s_plus: x_plus[0] * p.gamma1 / amp, s_minus: x_minus[1] * p.gamma2 / amp };
    if !s.is_finite() {
        return Err(singular());
    }
    Ok(s)
}

/// Response from the full steady state at probe strength `g_mag`.
///
/// The two circular components are probed in separate solves. Amplitudes
/// carry the signs of an x-polarized probe, g₁ = −g and g₂ = +g; these
/// cancel in the ratio ρ_ig/g_i. The result tends to the first-order
/// response with an O(g²) relative error.
pub fn probe_response_finite(p: &SystemParams, g_mag: f64) -> Result<SusceptibilityPair, EngineError> {
    if !g_mag.is_finite() || g_mag <= 0.0 {
        return Err(EngineError::ProbeNonPositive(g_mag));
    }
    if g_mag > MAX_FINITE_PROBE {
        return Err(EngineError::ProbeTooStrong(g_mag));
    }
    let p = p.validate()?;
    let g1 = Complex64::new(-g_mag, 0.0);
    let g2 = Complex64::new(g_mag, 0.0);

    let rho_plus = steady_state(&build_generator(&p, g1, ZERO)?)?;
    let rho_minus = steady_state(&build_generator(&p, ZERO, g2)?)?;
    Ok(SusceptibilityPair {
        s_plus: rho_plus.element(Level::One, Level::Ground) * p.gamma1 / g1,
        s_minus: rho_minus.element(Level::Two, Level::Ground) * p.gamma2 / g2,
    })
}
