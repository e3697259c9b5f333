//! Stationary state by a constrained direct solve.
//!
//! Populations are conserved, so the ρ_gg row of L is linearly dependent on
//! the other population rows. It is replaced by the trace condition
//! Σ ρ_ii = 1 and the resulting nonsingular 16×16 system is solved by LU
//! with partial pivoting.

use nalgebra::SVector;
use num_complex::Complex64;

use super::generator::{unstack, GeneratorMatrix, StackedState};
use super::{vec_index, DensityMatrix, EngineError, Level};

/// Bound on ‖L·ρ‖₂ / ‖L‖_F for an accepted steady state.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

pub fn steady_state(generator: &GeneratorMatrix) -> Result<DensityMatrix, EngineError> {
    let l = generator.matrix();
    let constraint_row = vec_index(Level::Ground, Level::Ground);

    let mut system = *l;
    system.row_mut(constraint_row).fill(Complex64::new(0.0, 0.0));
    for level in Level::ALL {
        system[(constraint_row, vec_index(level, level))] = Complex64::new(1.0, 0.0);
    }
    let mut rhs = StackedState::zeros();
    rhs[constraint_row] = Complex64::new(1.0, 0.0);

    let solution: SVector<Complex64, 16> = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| EngineError::Singular { stage: "steady-state", params: Box::new(*generator.params()) })?;
    if solution.iter().any(|z| !z.is_finite()) {
        return Err(EngineError::Singular { stage: "steady-state", params: Box::new(*generator.params()) });
    }

    let residual = (l * solution).norm();
    let bound = RESIDUAL_TOLERANCE * l.norm();
    if residual.is_nan() || residual > bound {
        return Err(EngineError::Residual { residual, bound });
    }
    DensityMatrix::new(unstack(&solution))
}

/// ‖L·ρ‖₂ / ‖L‖_F for a candidate state.
pub fn relative_residual(generator: &GeneratorMatrix, rho: &DensityMatrix) -> f64 {
    let l = generator.matrix();
    (l * super::generator::stack(rho.matrix())).norm() / l.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::build_generator;
    use crate::params::SystemParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn no_probe_leaves_everything_in_ground() {
        for (g1, g2, delta) in [(0.0, 0.0, 0.0), (50.0, 0.0, 3.0), (20.0, 10.0, -7.5), (100.0, 100.0, 40.0)] {
            let p = SystemParams {
                control1: c(g1, 0.3 * g1),
                control2: c(0.0, g2),
                zeeman: 5.0,
                control_detuning: delta,
                ..Default::default()
            };
            let l = build_generator(&p, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
            let rho = steady_state(&l).unwrap();
            let expected = DensityMatrix::pure(Level::Ground);
            let dev = (rho.matrix() - expected.matrix()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
            assert!(dev < 1e-12, "deviation {dev}");
        }
    }

    #[test]
    fn random_states_are_physical() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let mut draw = |lo: f64, hi: f64| rng.random_range(lo..hi);
            let p = SystemParams {
                gamma1: draw(0.2, 2.0),
                gamma2: draw(0.2, 2.0),
                upper_gamma1: draw(0.1, 2.0),
                upper_gamma2: draw(0.1, 2.0),
                zeeman: draw(-20.0, 20.0),
                control_detuning: draw(-20.0, 20.0),
                probe_detuning: draw(-20.0, 20.0),
                control1: c(draw(-50.0, 50.0), draw(-50.0, 50.0)),
                control2: c(draw(-50.0, 50.0), draw(-50.0, 50.0)),
                ..Default::default()
            };
            let g1 = c(draw(-2.0, 2.0), draw(-2.0, 2.0));
            let g2 = c(draw(-2.0, 2.0), draw(-2.0, 2.0));
            let l = build_generator(&p, g1, g2).unwrap();
            let rho = steady_state(&l).unwrap();
            assert!(relative_residual(&l, &rho) <= RESIDUAL_TOLERANCE);
            assert!(Level::ALL.iter().all(|&lv| rho.population(lv) >= -1e-12));
        }
    }

    #[test]
    fn strong_probe_saturates_lower_levels() {
        // a strong resonant probe with no control moves population into |1⟩, |2⟩
        let l = build_generator(&SystemParams::default(), c(5.0, 0.0), c(5.0, 0.0)).unwrap();
        let rho = steady_state(&l).unwrap();
        assert!(rho.population(Level::One) > 0.1);
        assert!(rho.population(Level::Excited).abs() < 1e-12);
    }
}
