use serde::Serialize;

use super::{EngineChoice, PointError, SweepConfig, SweepError};
use crate::analytic::s_pair;
use crate::engine::probe_response_perturbative;
use crate::observables::{rotation_angle, transmission_x, transmission_y};
use crate::params::{SusceptibilityPair, SystemParams};

/// Largest relative analytic/numeric disagreement accepted with
/// [`EngineChoice::Both`].
pub const CROSS_VALIDATION_TOLERANCE: f64 = 1e-6;

/// One spectral sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRow {
    pub variant: String,
    pub delta: f64,
    pub re_s_plus: f64,
    pub im_s_plus: f64,
    pub re_s_minus: f64,
    pub im_s_minus: f64,
    pub t_y: f64,
    pub t_x: f64,
    pub theta_rad: f64,
    pub engine: &'static str,
}

impl OutputRow {
    pub fn new(variant: &str, delta: f64, s: &SusceptibilityPair, alpha_l: f64, engine: &'static str) -> Self {
        Self {
            variant: variant.to_owned(),
            delta,
            re_s_plus: s.s_plus.re,
            im_s_plus: s.s_plus.im,
            re_s_minus: s.s_minus.re,
            im_s_minus: s.s_minus.im,
            t_y: transmission_y(s, alpha_l),
            t_x: transmission_x(s, alpha_l),
            theta_rad: rotation_angle(s, alpha_l),
            engine,
        }
    }

    pub fn susceptibilities(&self) -> SusceptibilityPair {
        SusceptibilityPair::new(
            num_complex::Complex64::new(self.re_s_plus, self.im_s_plus),
            num_complex::Complex64::new(self.re_s_minus, self.im_s_minus),
        )
    }
}

/// Scheduling of the independent sweep points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    /// Rayon data-parallel map. Without the `parallel` feature this runs
    /// serially.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Serial
        }
    }
}

struct Job<'a> {
    variant: &'a str,
    params: SystemParams,
}

struct Evaluated {
    rows: Vec<OutputRow>,
    disagreement: Option<f64>,
}

fn evaluate(job: &Job<'_>, engine: EngineChoice) -> Result<Evaluated, SweepError> {
    let p = &job.params;
    let delta = p.probe_detuning;
    let wrap = |source: PointError| SweepError::Point { variant: job.variant.to_owned(), delta, source };
    let analytic = || s_pair(p).map_err(|e| wrap(e.into()));
    let numeric = || probe_response_perturbative(p).map_err(|e| wrap(e.into()));

    let row = |s: &SusceptibilityPair, tag| OutputRow::new(job.variant, delta, s, p.alpha_l, tag);
    Ok(match engine {
        EngineChoice::Analytic => Evaluated { rows: vec![row(&analytic()?, "analytic")], disagreement: None },
        EngineChoice::Numeric => Evaluated { rows: vec![row(&numeric()?, "numeric")], disagreement: None },
        EngineChoice::Both => {
            let a = analytic()?;
            let n = numeric()?;
            Evaluated {
                rows: vec![row(&a, "analytic"), row(&n, "numeric")],
                disagreement: Some(n.max_relative_error(&a)),
            }
        }
    })
}

#[cfg(feature = "parallel")]
fn map_jobs(jobs: &[Job<'_>], engine: EngineChoice, execution: Execution) -> Vec<Result<Evaluated, SweepError>> {
    use rayon::prelude::*;
    match execution {
        Execution::Parallel => jobs.par_iter().map(|j| evaluate(j, engine)).collect(),
        Execution::Serial => jobs.iter().map(|j| evaluate(j, engine)).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn map_jobs(jobs: &[Job<'_>], engine: EngineChoice, _execution: Execution) -> Vec<Result<Evaluated, SweepError>> {
    jobs.iter().map(|j| evaluate(j, engine)).collect()
}

/// Evaluates every (variant, δ) point with the default [`Execution`].
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<OutputRow>, SweepError> {
    run_sweep_with(cfg, Execution::default())
}

pub fn run_sweep_with(cfg: &SweepConfig, execution: Execution) -> Result<Vec<OutputRow>, SweepError> {
    cfg.validate()?;
    let series = cfg.series();
    let deltas = cfg.delta_grid.values();
    let jobs: Vec<Job<'_>> = series
        .iter()
        .flat_map(|v| {
            let params = v.overrides.apply(&cfg.base);
            deltas.iter().map(move |&d| Job { variant: v.name.as_str(), params: params.with_probe_detuning(d) })
        })
        .collect();

    // results come back in job order; the first failing point (in that
    // order) is reported
    let mut rows = Vec::with_capacity(jobs.len() * if cfg.engine == EngineChoice::Both { 2 } else { 1 });
    let mut worst: Option<(usize, f64)> = None;
    for (i, result) in map_jobs(&jobs, cfg.engine, execution).into_iter().enumerate() {
        let evaluated = result?;
        if let Some(err) = evaluated.disagreement {
            if worst.is_none_or(|(_, w)| err > w || err.is_nan()) {
                worst = Some((i, err));
            }
        }
        rows.extend(evaluated.rows);
    }

    if let Some((i, rel_error)) = worst {
        if rel_error.is_nan() || rel_error > CROSS_VALIDATION_TOLERANCE {
            return Err(SweepError::CrossValidation {
                variant: jobs[i].variant.to_owned(),
                delta: jobs[i].params.probe_detuning,
                rel_error,
                tolerance: CROSS_VALIDATION_TOLERANCE,
            });
        }
    }
    Ok(rows)
}
