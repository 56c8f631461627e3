//! Implicit-Euler update for a viscoelastic stress model whose relaxation
//! time stiffens exponentially with stress magnitude.
//!
//! With relaxation time `tau(s) = tau_p * exp(-||s||/sigma_c)`, the
//! backward-Euler discretization of `ds/dt = d_el/dt - s/tau(s)` gives, per
//! step,
//!
//! ```text
//! (1 + (dt/tau_p) * exp(||s_new||/sigma_c)) s_new = s_rot + d_el
//! ```
//!
//! which is the matrix equation solved by this crate with `a = dt/tau_p`
//! and `b = -sigma_c`. Since `a > 0` and `b < 0` the scalar norm equation
//! is strictly increasing, so every step has exactly one solution.

use crate::equation::{self, MatrixValue, NormKind, SolutionSet};
use crate::error::{Error, Result};
use crate::scalar::SolverParams;

/// Stress states with `|trace| > 1e-8 * ||Y||_F` on the predictor trigger a
/// deviatoric-drift warning.
const TRACE_WARN_REL: f64 = 1e-8;

/// Material and discretization parameters for the stress update.
#[derive(Debug, Clone)]
pub struct StressStepConfig {
    /// Relaxation time at zero stress, `tau_p > 0`.
    pub tau_p: f64,
    /// Stress scale of the exponential stiffening, `sigma_c > 0`.
    pub sigma_c: f64,
    /// Time step, `dt > 0`.
    pub dt: f64,
    /// Norm closing the scalar equation.
    pub norm: NormKind,
}

impl StressStepConfig {
    pub fn new(tau_p: f64, sigma_c: f64, dt: f64, norm: NormKind) -> Result<Self> {
        let config = Self {
            tau_p,
            sigma_c,
            dt,
            norm,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("tau_p", self.tau_p),
            ("sigma_c", self.sigma_c),
            ("dt", self.dt),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    what: format!("{name} must be positive and finite, got {value}"),
                });
            }
        }
        Ok(())
    }

    /// Equation parameters of one step: `a = dt/tau_p`, `b = -sigma_c`.
    pub fn params(&self) -> Result<SolverParams> {
        SolverParams::new(self.dt / self.tau_p, -self.sigma_c)
    }
}

/// Stress tensor together with the simulation time it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct StressState {
    pub stress: MatrixValue,
    pub time: f64,
}

/// Advances the stress by one implicit-Euler step.
///
/// The elastic predictor is `Y = previous.stress + delta_elastic`; the new
/// stress is the unique solution of the matrix equation at `Y`. Stress
/// tensors must be square. A predictor whose trace is not negligible
/// against its Frobenius norm logs a warning, since the model is meant for
/// deviatoric stress.
pub fn step(
    config: &StressStepConfig,
    previous: &StressState,
    delta_elastic: &MatrixValue,
) -> Result<StressState> {
    config.validate()?;
    if previous.stress.rows() != previous.stress.cols() {
        return Err(Error::ShapeMismatch {
            expected: (previous.stress.rows(), previous.stress.rows()),
            got: previous.stress.shape(),
        });
    }
    let y = previous.stress.add(delta_elastic)?;

    let trace = y.trace()?;
    let scale = equation::norm(&y, &NormKind::Frobenius);
    if trace.abs() > TRACE_WARN_REL * scale {
        log::warn!(
            "stress predictor has trace {trace:e} against Frobenius norm {scale:e}; \
             the model assumes deviatoric stress"
        );
    }

    let params = config.params()?;
    let solutions = match equation::solve_equation(&params, &y, &config.norm)? {
        SolutionSet::Finite(s) => s,
        SolutionSet::ZeroUnionSphere { .. } => {
            return Err(Error::Internal {
                what: "degenerate solution set in a strictly monotone regime".to_string(),
            })
        }
    };
    let solution = solutions.into_iter().next().ok_or_else(|| Error::Internal {
        what: "empty solution set in a strictly monotone regime".to_string(),
    })?;

    Ok(StressState {
        stress: solution.matrix,
        time: previous.time + config.dt,
    })
}

/// Runs a full loading history.
///
/// Starts from `initial` (zero stress at time zero when absent, with the
/// shape of the first increment) and applies one step per elastic
/// increment. When a `rotate` callback is given it maps the previous
/// stress into the current frame before the increment is added, receiving
/// the step index as its second argument. Returns the trajectory including
/// the initial state, so the result has one more entry than `increments`.
pub fn simulate(
    config: &StressStepConfig,
    initial: Option<StressState>,
    increments: &[MatrixValue],
    rotate: Option<&dyn Fn(&MatrixValue, usize) -> MatrixValue>,
) -> Result<Vec<StressState>> {
    config.validate()?;
    let mut current = match initial {
        Some(state) => state,
        None => {
            let first = increments.first().ok_or_else(|| Error::InvalidParameter {
                what: "simulate needs an initial state or at least one increment".to_string(),
            })?;
            StressState {
                stress: MatrixValue::zeros(first.rows(), first.cols())?,
                time: 0.0,
            }
        }
    };

    let mut states = Vec::with_capacity(increments.len() + 1);
    states.push(current.clone());
    for (index, increment) in increments.iter().enumerate() {
        if let Some(rotate) = rotate {
            let rotated = rotate(&current.stress, index);
            if rotated.shape() != current.stress.shape() {
                return Err(Error::ShapeMismatch {
                    expected: current.stress.shape(),
                    got: rotated.shape(),
                });
            }
            current.stress = rotated;
        }
        current = step(config, &current, increment)?;
        states.push(current.clone());
    }
    Ok(states)
}
