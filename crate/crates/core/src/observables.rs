//! Measurable quantities behind a uniform slab of optical depth αl.
//!
//! Each circular component propagates independently and picks up the factor
//! exp(i·αl·s±/2).

use num_complex::Complex64;

use crate::params::SusceptibilityPair;
use crate::polarization::{circular_to_cartesian, JonesVector};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn propagators(s: &SusceptibilityPair, alpha_l: f64) -> (Complex64, Complex64) {
    let half = 0.5 * alpha_l;
    ((I * half * s.s_plus).exp(), (I * half * s.s_minus).exp())
}

/// Intensity through a y-polarized analyzer for x-polarized input,
/// normalized to the input: ¼|e₊ − e₋|².
pub fn transmission_y(s: &SusceptibilityPair, alpha_l: f64) -> f64 {
    let (plus, minus) = propagators(s, alpha_l);
    0.25 * (plus - minus).norm_sqr()
}

/// Co-polarized (x analyzer) transmission: ¼|e₊ + e₋|².
pub fn transmission_x(s: &SusceptibilityPair, alpha_l: f64) -> f64 {
    let (plus, minus) = propagators(s, alpha_l);
    0.25 * (plus + minus).norm_sqr()
}

/// Polarization rotation θ = (αl/4)·Re(s⁻ − s⁺) in radians.
///
/// This is the lossless-limit rotation; it ignores absorption and is not
/// reduced to any branch.
pub fn rotation_angle(s: &SusceptibilityPair, alpha_l: f64) -> f64 {
    0.25 * alpha_l * (s.s_minus - s.s_plus).re
}

/// Field after the slab.
pub fn output_field(e_in: &JonesVector, s: &SusceptibilityPair, alpha_l: f64) -> JonesVector {
    let (plus, minus) = propagators(s, alpha_l);
    JonesVector::new(e_in.e_plus * plus, e_in.e_minus * minus)
}

/// (T_x, T_y) computed by propagating a unit x-polarized field and
/// projecting onto the cartesian axes.
pub fn analyzer_intensities(s: &SusceptibilityPair, alpha_l: f64) -> (f64, f64) {
    let out = output_field(&JonesVector::x_polarized(1.0), s, alpha_l);
    let (ex, ey) = circular_to_cartesian(out);
    (ex.norm_sqr(), ey.norm_sqr())
}
