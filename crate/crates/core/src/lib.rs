//! Solvers for the scalar-coefficient matrix equation
//! `(1 + a*exp(-||X||/b)) * X = Y` over real m-by-n matrices.
//!
//! Taking norms reduces the equation to the scalar problem
//! `|1 + a*exp(-x/b)| * x = ||Y||` on `[0, inf)`. The crate classifies the
//! parameter plane into fifteen regimes with one, two, three, or infinitely
//! many solutions, computes every real solution, and layers two applications
//! on top:
//!
//! * [`lambert_w`]: the two real branches of the Lambert W function, which
//!   locate the critical points of the scalar problem,
//! * [`scalar`]: classification and root finding for the scalar equation,
//! * [`equation`]: matrix-level solution sets under the 1, 2, infinity,
//!   Frobenius, or a caller-supplied absolutely homogeneous norm,
//! * [`stress`]: an implicit-Euler update for viscoelastic overstress whose
//!   per-step equation is the unique-solution regime of the same equation.

pub mod equation;
pub mod error;
pub mod lambert_w;
pub mod scalar;
pub mod stress;

mod bracket;

pub use equation::{
    norm, reconstruct, residual, sample_degenerate, solve_equation, CustomNorm, MatrixSolution,
    MatrixValue, NormKind, SolutionSet,
};
pub use error::{Error, Result};
pub use scalar::{
    classify, coefficient, critical_points, f_eval, newton_case_a, solve_scalar, CaseLabel,
    CaseTag, CriticalPoints, RootExpectation, ScalarRoot, ScalarRoots, Sign, SolverParams,
};
pub use stress::{simulate, step, StressState, StressStepConfig};
