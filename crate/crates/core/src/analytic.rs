//! Closed-form weak-probe susceptibilities.
//!
//! The expressions below are only valid for equal lower-level decay rates
//! γ₁ = γ₂ = γ. Each is evaluated in the grouping it is usually printed in,
//! with
//!
//! ```text
//! a = γ + i(δ + Ω)      σ₊ probe arm, |g⟩ ↔ |1⟩
//! b = γ + i(δ − Ω)      σ₋ probe arm, |g⟩ ↔ |2⟩
//! c = Γ₁ + Γ₂ + i(Δ + δ) two-photon coherence |g⟩ ↔ |e⟩
//!
//! s⁺ = iγ (|G₂|² + b c) / (|G₂|² a + b (|G₁|² + a c))
//! s⁻ = iγ (|G₁|² + a c) / (|G₁|² b + a (|G₂|² + b c))
//! ```

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

use crate::params::{ParamError, SusceptibilityPair, SystemParams};

/// Denominators smaller than this (in units of γ) are reported as an error.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("closed forms require gamma1 == gamma2 (got {gamma1} and {gamma2})")]
    UnequalGammas { gamma1: f64, gamma2: f64 },
    #[error("vanishing denominator in {which} (|den| = {magnitude:e})")]
    VanishingDenominator { which: &'static str, magnitude: f64 },
    #[error("expected a pure sigma-minus control (G2 = 0), got G2 = {0}")]
    ControlTwoNonzero(Complex64),
    #[error("nonpositive wavenumber k = {0}")]
    NonPositiveWavenumber(f64),
    #[error("negative absorption coefficient alpha = {0}")]
    NegativeAbsorption(f64),
}

struct Arms {
    gamma: f64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
}

fn arms(p: &SystemParams) -> Result<Arms, AnalyticError> {
    let p = p.validate()?;
    if p.gamma1 != p.gamma2 {
        return Err(AnalyticError::UnequalGammas { gamma1: p.gamma1, gamma2: p.gamma2 });
    }
    let gamma = p.gamma1;
    let delta = p.probe_detuning;
    Ok(Arms {
        gamma,
        a: Complex64::new(gamma, 0.0) + I * (delta + p.zeeman),
        b: Complex64::new(gamma, 0.0) + I * (delta - p.zeeman),
        c: Complex64::new(p.upper_decay(), 0.0) + I * (p.control_detuning + delta),
    })
}

fn guarded(which: &'static str, den: Complex64) -> Result<Complex64, AnalyticError> {
    let magnitude = den.norm();
    if magnitude < DENOMINATOR_GUARD {
        Err(AnalyticError::VanishingDenominator { which, magnitude })
    } else {
        Ok(den)
    }
}

/// Both scaled susceptibilities for arbitrary control polarization.
pub fn s_pair(p: &SystemParams) -> Result<SusceptibilityPair, AnalyticError> {
    let Arms { gamma, a, b, c } = arms(p)?;
    let g1_sq = p.control1.norm_sqr();
    let g2_sq = p.control2.norm_sqr();
    let i_gamma = I * gamma;

    let den_plus = guarded("s_plus", g2_sq * a + b * (g1_sq + a * c))?;
    let den_minus = guarded("s_minus", g1_sq * b + a * (g2_sq + b * c))?;
    let s_plus = i_gamma * (g2_sq + b * c) / den_plus;
    let s_minus = i_gamma * (g1_sq + a * c) / den_minus;
    Ok(SusceptibilityPair { s_plus, s_minus })
}

/// Bare-atom response: s± = γ / ((δ ± Ω) − iγ).
pub fn s_no_control(p: &SystemParams) -> Result<SusceptibilityPair, ParamError> {
    let p = p.validate()?;
    let delta = p.probe_detuning;
    let s_plus = p.gamma1 / Complex64::new(delta + p.zeeman, -p.gamma1);
    let s_minus = p.gamma2 / Complex64::new(delta - p.zeeman, -p.gamma2);
    Ok(SusceptibilityPair { s_plus, s_minus })
}

/// s⁺ for a purely σ₋ control (G₂ = 0):
/// iγ c / (|G₁|² + a c). The matching s⁻ is the bare iγ / b.
pub fn s_plus_sigma_minus_control(p: &SystemParams) -> Result<Complex64, AnalyticError> {
    if p.control2 != Complex64::new(0.0, 0.0) {
        return Err(AnalyticError::ControlTwoNonzero(p.control2));
    }
    let Arms { gamma, a, c, .. } = arms(p)?;
    let den = guarded("s_plus", p.control1.norm_sqr() + a * c)?;
    Ok(I * gamma * c / den)
}

/// s⁻ for a purely σ₋ control: iγ / (γ + i(δ − Ω)), independent of G₁.
pub fn s_minus_sigma_minus_control(p: &SystemParams) -> Result<Complex64, AnalyticError> {
    if p.control2 != Complex64::new(0.0, 0.0) {
        return Err(AnalyticError::ControlTwoNonzero(p.control2));
    }
    let Arms { gamma, b, .. } = arms(p)?;
    Ok(I * gamma / guarded("s_minus", b)?)
}

/// Physical susceptibility χ = (α / 4πk)·s.
pub fn chi_from_s(s: Complex64, alpha: f64, k: f64) -> Result<Complex64, AnalyticError> {
    if k.is_nan() || k <= 0.0 {
        return Err(AnalyticError::NonPositiveWavenumber(k));
    }
    if alpha < 0.0 {
        return Err(AnalyticError::NegativeAbsorption(alpha));
    }
    Ok(s * (alpha / (4.0 * PI * k)))
}
