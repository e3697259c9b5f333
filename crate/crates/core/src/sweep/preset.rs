//! Built-in sweeps for three reference spectra.
//!
//! All three use γ₁ = γ₂ = Γ₁ = Γ₂ = 1 and αl = 30.
//!
//! * `fig2`: no magnetic field, resonant σ₋ control, G₁ ∈ {20, 50, 100}.
//! * `fig3`: 2Ω = 10, σ₋ control either resonant (Δ = Ω = 5) with
//!   G₁ ∈ {0, 20, 50} or detuned (Δ = −20, −30) with G₁ = 20.
//! * `fig4`: as the resonant part of `fig3` with an added σ₊ control G₂ = 10.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{DeltaGrid, EngineChoice, OutputSpec, Overrides, SweepConfig, SweepError, Variant};
use crate::params::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig2, Preset::Fig3, Preset::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
        }
    }

    pub fn config(self) -> SweepConfig {
        match self {
            Preset::Fig2 => fig2(),
            Preset::Fig3 => fig3(),
            Preset::Fig4 => fig4(),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| SweepError::UnknownPreset(s.to_owned()))
    }
}

/// Looks a preset up by name.
pub fn preset(name: &str) -> Result<SweepConfig, SweepError> {
    Ok(name.parse::<Preset>()?.config())
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn control1(g1: f64) -> Variant {
    Variant::new(format!("G1={g1}"), Overrides { control1: Some(real(g1)), ..Default::default() })
}

fn control1_detuned(g1: f64, delta: f64) -> Variant {
    Variant::new(
        format!("G1={g1} Delta={delta}"),
        Overrides { control1: Some(real(g1)), control_detuning: Some(delta), ..Default::default() },
    )
}

fn config(base: SystemParams, delta_grid: DeltaGrid, variants: Vec<Variant>) -> SweepConfig {
    SweepConfig { base, delta_grid, variants, engine: EngineChoice::Analytic, output: OutputSpec::default() }
}

fn fig2() -> SweepConfig {
    config(
        SystemParams::default(),
        DeltaGrid::new(-150.0, 150.0, 2001),
        [20.0, 50.0, 100.0].into_iter().map(control1).collect(),
    )
}

fn fig3() -> SweepConfig {
    config(
        SystemParams { zeeman: 5.0, ..Default::default() },
        DeltaGrid::new(-80.0, 80.0, 1601),
        vec![
            control1_detuned(0.0, 5.0),
            control1_detuned(20.0, 5.0),
            control1_detuned(50.0, 5.0),
            control1_detuned(20.0, -20.0),
            control1_detuned(20.0, -30.0),
        ],
    )
}

fn fig4() -> SweepConfig {
    config(
        SystemParams { zeeman: 5.0, control_detuning: 5.0, control2: real(10.0), ..Default::default() },
        DeltaGrid::new(-80.0, 80.0, 1601),
        [0.0, 20.0, 50.0].into_iter().map(control1).collect(),
    )
}
