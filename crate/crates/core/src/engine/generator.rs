//! Rotating-frame equations of motion as a 16×16 superoperator.

use nalgebra::{Matrix4, SMatrix, SVector};
use num_complex::Complex64;

use super::{vec_index, EngineError, Level};
use crate::params::SystemParams;

pub type Superoperator = SMatrix<Complex64, 16, 16>;
pub type StackedState = SVector<Complex64, 16>;

const I: Complex64 = Complex64::new(0.0, 1.0);

use Level::{Excited as E, Ground as G, One as L1, Two as L2};

/// Linear map L with dρ/dt = L·vec(ρ), together with the probe amplitudes
/// it was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix {
    matrix: Superoperator,
    params: SystemParams,
    g1: Complex64,
    g2: Complex64,
}

/// One right-hand-side term: `coef · ρ[from]`.
type Term = (Complex64, (Level, Level));

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Right-hand sides of the ten independent equations (upper triangle plus
/// diagonal). The remaining six follow by Hermitian conjugation.
fn equations(p: &SystemParams, g1: Complex64, g2: Complex64) -> Vec<((Level, Level), Vec<Term>)> {
    let (c1, c2) = (p.control1, p.control2);
    let (gam1, gam2) = (p.gamma1, p.gamma2);
    let (big1, big2) = (p.upper_gamma1, p.upper_gamma2);
    let big = big1 + big2;
    let (om, cd, pd) = (p.zeeman, p.control_detuning, p.probe_detuning);

    vec![
        (
            (E, E),
            vec![
                (real(-2.0 * big), (E, E)),
                (I * c1, (L1, E)),
                (-I * c1.conj(), (E, L1)),
                (I * c2, (L2, E)),
                (-I * c2.conj(), (E, L2)),
            ],
        ),
        (
            (E, L1),
            vec![
                (-(real(big + gam1) + I * (cd - om)), (E, L1)),
                (I * c1, (L1, L1)),
                (-I * c1, (E, E)),
                (I * c2, (L2, L1)),
                (-I * g1.conj(), (E, G)),
            ],
        ),
        (
            (E, L2),
            vec![
                (-(real(big + gam2) + I * (cd + om)), (E, L2)),
                (I * c2, (L2, L2)),
                (-I * c2, (E, E)),
                (I * c1, (L1, L2)),
                (-I * g2.conj(), (E, G)),
            ],
        ),
        (
            (E, G),
            vec![
                (-(real(big) + I * (cd + pd)), (E, G)),
                (I * c1, (L1, G)),
                (I * c2, (L2, G)),
                (-I * g1, (E, L1)),
                (-I * g2, (E, L2)),
            ],
        ),
        (
            (L1, L1),
            vec![
                (real(2.0 * big1), (E, E)),
                (real(-2.0 * gam1), (L1, L1)),
                (I * c1.conj(), (E, L1)),
                (-I * c1, (L1, E)),
                (I * g1, (G, L1)),
                (-I * g1.conj(), (L1, G)),
            ],
        ),
        (
            (L1, L2),
            vec![
                (-(real(gam1 + gam2) + I * (2.0 * om)), (L1, L2)),
                (I * c1.conj(), (E, L2)),
                (I * g1, (G, L2)),
                (-I * c2, (L1, E)),
                (-I * g2.conj(), (L1, G)),
            ],
        ),
        (
            (L1, G),
            vec![
                (-(real(gam1) + I * (pd + om)), (L1, G)),
                (I * g1, (G, G)),
                (-I * g1, (L1, L1)),
                (I * c1.conj(), (E, G)),
                (-I * g2, (L1, L2)),
            ],
        ),
        (
            (L2, L2),
            vec![
                (real(2.0 * big2), (E, E)),
                (real(-2.0 * gam2), (L2, L2)),
                (I * c2.conj(), (E, L2)),
                (-I * c2, (L2, E)),
                (I * g2, (G, L2)),
                (-I * g2.conj(), (L2, G)),
            ],
        ),
        (
            (L2, G),
            vec![
                (-(real(gam2) + I * (pd - om)), (L2, G)),
                (I * g2, (G, G)),
                (-I * g2, (L2, L2)),
                (I * c2.conj(), (E, G)),
                (-I * g1, (L2, L1)),
            ],
        ),
        (
            (G, G),
            vec![
                (real(2.0 * gam1), (L1, L1)),
                (real(2.0 * gam2), (L2, L2)),
                (I * g1.conj(), (L1, G)),
                (-I * g1, (G, L1)),
                (I * g2.conj(), (L2, G)),
                (-I * g2, (G, L2)),
            ],
        ),
    ]
}

/// Assembles the superoperator for `p` with probe half-Rabi amplitudes
/// `g1` (|g⟩ ↔ |1⟩) and `g2` (|g⟩ ↔ |2⟩).
pub fn build_generator(p: &SystemParams, g1: Complex64, g2: Complex64) -> Result<GeneratorMatrix, EngineError> {
    let params = p.validate()?;
    let mut matrix = Superoperator::zeros();
    for ((row, col), terms) in equations(&params, g1, g2) {
        let target = vec_index(row, col);
        let mirror = vec_index(col, row);
        for (coef, (k, l)) in terms {
            matrix[(target, vec_index(k, l))] += coef;
            if row != col {
                // d/dt ρ_ji = conj(d/dt ρ_ij), and conj(ρ_kl) = ρ_lk
                matrix[(mirror, vec_index(l, k))] += coef.conj();
            }
        }
    }
    Ok(GeneratorMatrix { matrix, params, g1, g2 })
}

pub(crate) fn stack(rho: &Matrix4<Complex64>) -> StackedState {
    StackedState::from_iterator(rho.iter().copied())
}

pub(crate) fn unstack(v: &StackedState) -> Matrix4<Complex64> {
    Matrix4::from_iterator(v.iter().copied())
}

impl GeneratorMatrix {
    pub fn matrix(&self) -> &Superoperator {
        &self.matrix
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn probe(&self) -> (Complex64, Complex64) {
        (self.g1, self.g2)
    }

    /// Coefficient of ρ_kl in the equation for dρ_ij/dt.
    pub fn coefficient(&self, target: (Level, Level), source: (Level, Level)) -> Complex64 {
        self.matrix[(vec_index(target.0, target.1), vec_index(source.0, source.1))]
    }

    /// Time derivative of an arbitrary 4×4 matrix.
    pub fn apply(&self, rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
        unstack(&(self.matrix * stack(rho)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::DensityMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_params(rng: &mut ChaCha8Rng) -> SystemParams {
        let mut draw = |lo: f64, hi: f64| rng.random_range(lo..hi);
        SystemParams {
            gamma1: draw(0.1, 3.0),
            gamma2: draw(0.1, 3.0),
            upper_gamma1: draw(0.0, 3.0),
            upper_gamma2: draw(0.1, 3.0),
            zeeman: draw(-50.0, 50.0),
            control_detuning: draw(-50.0, 50.0),
            probe_detuning: draw(-50.0, 50.0),
            control1: c(draw(-100.0, 100.0), draw(-100.0, 100.0)),
            control2: c(draw(-100.0, 100.0), draw(-100.0, 100.0)),
            alpha_l: 30.0,
        }
    }

    fn random_hermitian(rng: &mut ChaCha8Rng) -> Matrix4<Complex64> {
        let a = Matrix4::from_fn(|_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        (a + a.adjoint()) * c(0.5, 0.0)
    }

    fn max_abs(m: &Matrix4<Complex64>) -> f64 {
        m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    #[test]
    fn trace_and_hermiticity_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = random_params(&mut rng);
            let g1 = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let g2 = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let l = build_generator(&p, g1, g2).unwrap();
            let rho = random_hermitian(&mut rng);
            let d = l.apply(&rho);
            assert!(d.trace().norm() < 1e-12, "trace {}", d.trace());
            assert!(max_abs(&(d - d.adjoint())) < 1e-12);
        }
    }

    #[test]
    fn lower_level_decay() {
        let l = build_generator(&SystemParams::default(), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let d = l.apply(DensityMatrix::pure(Level::One).matrix());
        assert_eq!(d[(1, 1)], c(-2.0, 0.0));
        assert_eq!(d[(3, 3)], c(2.0, 0.0));
        assert!(max_abs(&d) <= 2.0);
    }

    #[test]
    fn excited_coherence_damping() {
        let p = SystemParams {
            upper_gamma1: 0.7,
            upper_gamma2: 1.3,
            gamma1: 0.4,
            control_detuning: 3.0,
            zeeman: 1.25,
            ..Default::default()
        };
        let l = build_generator(&p, c(0.1, 0.0), c(0.0, 0.2)).unwrap();
        let expected = -(c(0.7 + 1.3 + 0.4, 0.0) + I * (3.0 - 1.25));
        assert_eq!(l.coefficient((E, L1), (E, L1)), expected);
    }

    #[test]
    fn coherence_rates() {
        let p = SystemParams {
            gamma1: 0.5,
            gamma2: 1.5,
            zeeman: 2.0,
            control_detuning: -4.0,
            probe_detuning: 1.0,
            ..Default::default()
        };
        let l = build_generator(&p, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(l.coefficient((L1, L2), (L1, L2)), c(-2.0, -4.0));
        assert_eq!(l.coefficient((E, G), (E, G)), c(-2.0, 3.0));
        assert_eq!(l.coefficient((L1, G), (L1, G)), c(-0.5, -3.0));
        assert_eq!(l.coefficient((L2, G), (L2, G)), c(-1.5, 1.0));
        // conjugate rows
        assert_eq!(l.coefficient((G, L1), (G, L1)), c(-0.5, 3.0));
    }

    #[test]
    fn drive_couplings() {
        let p = SystemParams { control1: c(3.0, 1.0), control2: c(-2.0, 0.5), ..Default::default() };
        let (g1, g2) = (c(0.25, -0.5), c(0.1, 0.3));
        let l = build_generator(&p, g1, g2).unwrap();
        assert_eq!(l.coefficient((L1, G), (E, G)), I * p.control1.conj());
        assert_eq!(l.coefficient((L1, G), (G, G)), I * g1);
        assert_eq!(l.coefficient((E, G), (L2, G)), I * p.control2);
        assert_eq!(l.coefficient((E, L1), (E, G)), -I * g1.conj());
        assert_eq!(l.coefficient((L1, L2), (L1, G)), -I * g2.conj());
        assert_eq!(l.coefficient((L2, G), (L2, L1)), -I * g1);
        assert_eq!(l.probe(), (g1, g2));
    }

    #[test]
    fn rejects_invalid_params() {
        let p = SystemParams { upper_gamma1: 0.0, upper_gamma2: 0.0, ..Default::default() };
        assert!(matches!(build_generator(&p, c(0.0, 0.0), c(0.0, 0.0)), Err(EngineError::Params(_))));
    }
}
