//! Circular/cartesian polarization basis, with ε̂± = (x̂ ± iŷ)/√2.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Field amplitudes on the circular unit vectors ε̂₊ and ε̂₋.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector {
    pub e_plus: Complex64,
    pub e_minus: Complex64,
}

impl JonesVector {
    pub fn new(e_plus: Complex64, e_minus: Complex64) -> Self {
        Self { e_plus, e_minus }
    }

    /// x-polarized field of amplitude `e0`.
    pub fn x_polarized(e0: f64) -> Self {
        cartesian_to_circular(Complex64::new(e0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn intensity(&self) -> f64 {
        self.e_plus.norm_sqr() + self.e_minus.norm_sqr()
    }

    pub fn to_cartesian(self) -> (Complex64, Complex64) {
        circular_to_cartesian(self)
    }
}

/// Projects (Ex, Ey) onto ε̂±: E± = (Ex ∓ iEy)/√2.
pub fn cartesian_to_circular(ex: Complex64, ey: Complex64) -> JonesVector {
    JonesVector { e_plus: (ex - I * ey) * FRAC_1_SQRT_2, e_minus: (ex + I * ey) * FRAC_1_SQRT_2 }
}

/// Inverse of [`cartesian_to_circular`]: Ex = (E₊ + E₋)/√2, Ey = i(E₊ − E₋)/√2.
pub fn circular_to_cartesian(j: JonesVector) -> (Complex64, Complex64) {
    let ex = (j.e_plus + j.e_minus) * FRAC_1_SQRT_2;
    let ey = I * (j.e_plus - j.e_minus) * FRAC_1_SQRT_2;
    (ex, ey)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn x_polarized_splits_evenly() {
        let e0 = 2.5;
        let j = cartesian_to_circular(c(e0, 0.0), c(0.0, 0.0));
        assert!(close(j.e_plus, c(e0 * FRAC_1_SQRT_2, 0.0)));
        assert!(close(j.e_minus, c(e0 * FRAC_1_SQRT_2, 0.0)));
        assert_eq!(j, JonesVector::x_polarized(e0));
    }

    #[test]
    fn y_polarized() {
        let j = cartesian_to_circular(c(0.0, 0.0), c(1.0, 0.0));
        assert!(close(j.e_plus, c(0.0, -FRAC_1_SQRT_2)));
        assert!(close(j.e_minus, c(0.0, FRAC_1_SQRT_2)));
    }

    #[test]
    fn back_to_x() {
        let (ex, ey) = circular_to_cartesian(JonesVector::new(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)));
        assert!(close(ex, c(1.0, 0.0)));
        assert!(close(ey, c(0.0, 0.0)));
    }

    #[test]
    fn pure_sigma_plus() {
        let (ex, ey) = JonesVector::new(c(1.0, 0.0), c(0.0, 0.0)).to_cartesian();
        assert!(close(ex, c(FRAC_1_SQRT_2, 0.0)));
        assert!(close(ey, c(0.0, FRAC_1_SQRT_2)));
    }

    proptest! {
        #[test]
        fn round_trip_and_norm(a in -1e3..1e3f64, b in -1e3..1e3f64, p in -1e3..1e3f64, q in -1e3..1e3f64) {
            let (ex, ey) = (c(a, b), c(p, q));
            let j = cartesian_to_circular(ex, ey);
            let (rx, ry) = circular_to_cartesian(j);
            let scale = 1.0 + ex.norm() + ey.norm();
            prop_assert!((rx - ex).norm() <= 1e-15 * scale);
            prop_assert!((ry - ey).norm() <= 1e-15 * scale);
            let n_in = ex.norm_sqr() + ey.norm_sqr();
            assert_abs_diff_eq!(j.intensity(), n_in, epsilon = 1e-13 * (1.0 + n_in));
        }
    }
}
