//! Control-field induced birefringence and magneto-optical rotation of a
//! weak probe in a four-level atomic medium.
//!
//! A σ₋ (and optionally σ₊) control laser drives |1⟩, |2⟩ ↔ |e⟩ while an
//! x-polarized probe addresses |g⟩ ↔ |1⟩, |2⟩. The scaled susceptibilities
//! s± of the two circular probe components are computed two ways:
//! [`analytic`] evaluates the closed forms, [`engine`] solves the
//! density-matrix equations. [`observables`] turns s± into crossed-polarizer
//! transmission and rotation, and [`sweep`] runs δ scans and writes CSV/JSON.

pub mod analytic;
pub mod engine;
pub mod observables;
pub mod params;
pub mod polarization;
pub mod sweep;

pub use params::{validate_params, ParamError, SusceptibilityPair, SystemParams};
pub use polarization::{cartesian_to_circular, circular_to_cartesian, JonesVector};
