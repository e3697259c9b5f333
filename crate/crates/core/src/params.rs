//! Model parameters for the four-level scheme {e, 1, 2, g}.
//!
//! Every rate and frequency is expressed in units of the lower-transition
//! decay half-rate γ. The microscopic constants (atomic density, dipole
//! matrix elements, wavenumber, cell length) never appear on their own: they
//! enter only through the optical depth `alpha_l` and the complex Rabi
//! half-amplitudes.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("parameter `{name}` is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },
    #[error("nonpositive decay `{name}` = {value}; lower-level decay rates must be > 0")]
    NonPositiveDecay { name: &'static str, value: f64 },
    #[error("negative decay `{name}` = {value}")]
    NegativeDecay { name: &'static str, value: f64 },
    #[error("upper level undamped: Gamma1 + Gamma2 must be > 0")]
    UpperLevelUndamped,
    #[error("negative optical depth alpha_l = {0}")]
    NegativeOpticalDepth(f64),
}

impl ParamError {
    /// Name of the offending parameter, as used in config files.
    pub fn key(&self) -> &'static str {
        match self {
            ParamError::NonFinite { name, .. }
            | ParamError::NonPositiveDecay { name, .. }
            | ParamError::NegativeDecay { name, .. } => name,
            ParamError::UpperLevelUndamped => "Gamma1+Gamma2",
            ParamError::NegativeOpticalDepth(_) => "alpha_l",
        }
    }
}

/// Rates, detunings and drive amplitudes of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Half decay rate of |1⟩ → |g⟩ (full rate 2γ₁).
    pub gamma1: f64,
    /// Half decay rate of |2⟩ → |g⟩.
    pub gamma2: f64,
    /// Half decay rate of |e⟩ → |1⟩ (Γ₁).
    pub upper_gamma1: f64,
    /// Half decay rate of |e⟩ → |2⟩ (Γ₂).
    pub upper_gamma2: f64,
    /// Half Zeeman splitting Ω; the m = ±1 sublevels sit 2Ω apart.
    pub zeeman: f64,
    /// Control detuning Δ.
    pub control_detuning: f64,
    /// Probe detuning δ, measured from the zero-field position of the j=1 level.
    pub probe_detuning: f64,
    /// Control half-Rabi amplitude G₁ on |e⟩ ↔ |1⟩ (σ₋ control component).
    pub control1: Complex64,
    /// Control half-Rabi amplitude G₂ on |e⟩ ↔ |2⟩ (σ₊ control component).
    pub control2: Complex64,
    /// Resonant optical depth αl of the slab.
    pub alpha_l: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            gamma1: 1.0,
            gamma2: 1.0,
            upper_gamma1: 1.0,
            upper_gamma2: 1.0,
            zeeman: 0.0,
            control_detuning: 0.0,
            probe_detuning: 0.0,
            control1: Complex64::new(0.0, 0.0),
            control2: Complex64::new(0.0, 0.0),
            alpha_l: 30.0,
        }
    }
}

impl SystemParams {
    /// Total upper-level decay Γ₁ + Γ₂.
    pub fn upper_decay(&self) -> f64 {
        self.upper_gamma1 + self.upper_gamma2
    }

    pub fn with_probe_detuning(mut self, delta: f64) -> Self {
        self.probe_detuning = delta;
        self
    }

    /// Checks every invariant and returns `self` untouched if they hold.
    pub fn validate(self) -> Result<Self, ParamError> {
        let reals = [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("Gamma1", self.upper_gamma1),
            ("Gamma2", self.upper_gamma2),
            ("Omega", self.zeeman),
            ("Delta", self.control_detuning),
            ("delta", self.probe_detuning),
            ("G1.re", self.control1.re),
            ("G1.im", self.control1.im),
            ("G2.re", self.control2.re),
            ("G2.im", self.control2.im),
            ("alpha_l", self.alpha_l),
        ];
        if let Some(&(name, value)) = reals.iter().find(|(_, v)| !v.is_finite()) {
            return Err(ParamError::NonFinite { name, value });
        }
        for (name, value) in [("gamma1", self.gamma1), ("gamma2", self.gamma2)] {
            if value <= 0.0 {
                return Err(ParamError::NonPositiveDecay { name, value });
            }
        }
        for (name, value) in [("Gamma1", self.upper_gamma1), ("Gamma2", self.upper_gamma2)] {
            if value < 0.0 {
                return Err(ParamError::NegativeDecay { name, value });
            }
        }
        if self.upper_decay() <= 0.0 {
            return Err(ParamError::UpperLevelUndamped);
        }
        if self.alpha_l < 0.0 {
            return Err(ParamError::NegativeOpticalDepth(self.alpha_l));
        }
        Ok(self)
    }
}

/// Free-function form of [`SystemParams::validate`].
pub fn validate_params(p: SystemParams) -> Result<SystemParams, ParamError> {
    p.validate()
}

/// Scaled susceptibilities s± of the σ± probe components; χ± = (α/4πk)·s±.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusceptibilityPair {
    pub s_plus: Complex64,
    pub s_minus: Complex64,
}

impl SusceptibilityPair {
    pub fn new(s_plus: Complex64, s_minus: Complex64) -> Self {
        Self { s_plus, s_minus }
    }

    pub fn is_finite(&self) -> bool {
        self.s_plus.is_finite() && self.s_minus.is_finite()
    }

    /// Both absorptive parts non-negative.
    pub fn is_passive(&self) -> bool {
        self.s_plus.im >= 0.0 && self.s_minus.im >= 0.0
    }

    /// Largest componentwise relative deviation from `other`, measured
    /// against the magnitude of `other`.
    pub fn max_relative_error(&self, other: &SusceptibilityPair) -> f64 {
        let rel = |a: Complex64, b: Complex64| {
            let scale = b.norm();
            if scale == 0.0 {
                a.norm()
            } else {
                (a - b).norm() / scale
            }
        };
        rel(self.s_plus, other.s_plus).max(rel(self.s_minus, other.s_minus))
    }
}
