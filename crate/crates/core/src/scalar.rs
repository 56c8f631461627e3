//! Classification and solution of the scalar norm equation
//! `f(x) = |1 + a*exp(-x/b)| * x = y` on `[0, inf)`.
//!
//! The sign pattern of the coefficient `1 + a*exp(-x/b)` and the critical
//! points of `f` split the parameter plane `(a, b != 0)` into fifteen cases,
//! labelled `A` through `O`. Depending on the case and on where `y` sits
//! relative to the local extreme values of `f`, the equation has one, two,
//! or three roots, or (for `y = 0` with a sign change at positive `x`) the
//! degenerate root pair `{0, b*ln|a|}`.
//!
//! Critical points come from the real Lambert W branches: where they exist,
//! `x0 = b*(1 - W0(-e/a))` is the interior local maximum of `f` and
//! `x1 = b*(1 - W-1(-e/a))` the interior local minimum. The threshold values
//! that separate the root-count regions are `f` evaluated at those points.

use crate::bracket;
use crate::error::{Error, Result};
use crate::lambert_w;

const E_SQUARED: f64 = std::f64::consts::E * std::f64::consts::E;

/// Residual bound guaranteed for every returned non-tangent root:
/// `|f(x) - y| <= 1e-10 * max(1, y)`.
const RESID_TOL: f64 = 1e-10;

/// Newton stops once `|f(x) - y| <= 1e-12 * max(1, y)`.
const NEWTON_RESID_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 200;

const BRENT_XTOL: f64 = 1e-15;
const BRENT_RTOL: f64 = 1e-14;
const BRENT_MAX_ITER: usize = 300;

/// Parameters `(a, b)` of the equation. Construction rejects `b = 0` and
/// non-finite values; everything else is a valid regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams {
    a: f64,
    b: f64,
}

impl SolverParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter {
                what: format!("parameters must be finite, got a = {a}, b = {b}"),
            });
        }
        if b == 0.0 {
            return Err(Error::InvalidParameter {
                what: "b must be nonzero".to_string(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// The scalar coefficient `1 + a*exp(-x/b)`.
///
/// For `a = 0` the exponential is skipped so the coefficient is exactly 1
/// for every `x`, including values of `x/b` that would overflow `exp`.
pub fn coefficient(params: &SolverParams, x: f64) -> f64 {
    if params.a == 0.0 {
        return 1.0;
    }
    1.0 + params.a * (-x / params.b).exp()
}

fn f_unchecked(params: &SolverParams, x: f64) -> f64 {
    coefficient(params, x).abs() * x
}

/// Evaluates `f(x) = |1 + a*exp(-x/b)| * x` for `x >= 0`.
pub fn f_eval(params: &SolverParams, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::OutOfDomain {
            func: "f_eval",
            arg: x,
            reason: "x must be nonnegative",
        });
    }
    Ok(f_unchecked(params, x))
}

/// Critical structure of `f` for one parameter pair.
///
/// `x0` is the interior local maximum and `x1` the interior local minimum of
/// `f`, populated only in the regimes where they exist: `x0` for
/// `(-1 < a < 0, b < 0)`, `(a >= e^2, b > 0)`, and `(a < -1, b > 0)`; `x1`
/// additionally for `(a >= e^2, b > 0)`. `sign_change = b*ln|a|` is the
/// positive zero of the coefficient, present for `(b > 0, a < -1)` and
/// `(b < 0, -1 < a < 0)`. `f_at_x0` and `f_at_x1` are `f` evaluated at the
/// critical points; they are the thresholds that separate root-count
/// regions, and evaluating `f` keeps them numerically consistent with the
/// root finder's view of the function.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CriticalPoints {
    pub x0: Option<f64>,
    pub x1: Option<f64>,
    pub sign_change: Option<f64>,
    pub f_at_x0: Option<f64>,
    pub f_at_x1: Option<f64>,
}

/// Computes the critical points of `f` for the regime of `params`.
///
/// Regimes without interior critical structure (monotone `f`) return an
/// empty record. The Lambert W arguments `-e/a` are inside the branch
/// domains by construction in every populated regime, up to rounding at
/// `a = e^2` which the W implementation clamps.
pub fn critical_points(params: &SolverParams) -> CriticalPoints {
    let (a, b) = (params.a, params.b);
    let e = std::f64::consts::E;
    let mut cp = CriticalPoints::default();

    if b < 0.0 && -1.0 < a && a < 0.0 {
        let w = lambert_w::w0(-e / a).expect("-e/a > e lies inside the W0 domain");
        let x0 = b * (1.0 - w);
        cp.x0 = Some(x0);
        cp.f_at_x0 = Some(f_unchecked(params, x0));
        cp.sign_change = Some(b * a.abs().ln());
    } else if b > 0.0 && a >= E_SQUARED {
        let z = -e / a;
        let w_up = lambert_w::w0(z).expect("-e/a in [-1/e, 0) lies inside the W0 domain");
        let w_lo = lambert_w::w_minus1(z).expect("-e/a in [-1/e, 0) lies inside the W-1 domain");
        let x0 = b * (1.0 - w_up);
        let x1 = b * (1.0 - w_lo);
        cp.x0 = Some(x0);
        cp.x1 = Some(x1);
        cp.f_at_x0 = Some(f_unchecked(params, x0));
        cp.f_at_x1 = Some(f_unchecked(params, x1));
    } else if b > 0.0 && a < -1.0 {
        let w = lambert_w::w0(-e / a).expect("-e/a in (0, e) lies inside the W0 domain");
        let x0 = b * (1.0 - w);
        cp.x0 = Some(x0);
        cp.f_at_x0 = Some(f_unchecked(params, x0));
        cp.sign_change = Some(b * a.abs().ln());
    }
    cp
}

/// The fifteen solvability cases.
///
/// * `A`: `a >= 0, b < 0` (unique root)
/// * `B`: `a <= -1, b < 0` (unique root)
/// * `C`..`F`: `-1 < a < 0, b < 0`, split by `y` against the local maximum
///   value: `C` is `y = 0` (roots `{0, b*ln|a|}`), `D` below (three roots),
///   `E` at (two roots, one tangent), `F` above (unique root)
/// * `G`: `0 <= a <= e^2, b > 0` (unique root)
/// * `H`..`J`: `a > e^2, b > 0`, split by `y` against the local extreme
///   values: outside `[f(x1), f(x0)]` one root (`H`), at either two (`I`),
///   strictly between three (`J`)
/// * `K`: `-1 <= a < 0, b > 0` (unique root)
/// * `L`..`O`: `a < -1, b > 0`, the mirror of `C`..`F`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    N,
    O,
}

impl CaseTag {
    pub fn letter(&self) -> char {
        match self {
            CaseTag::A => 'A',
            CaseTag::B => 'B',
            CaseTag::C => 'C',
            CaseTag::D => 'D',
            CaseTag::E => 'E',
            CaseTag::F => 'F',
            CaseTag::G => 'G',
            CaseTag::H => 'H',
            CaseTag::I => 'I',
            CaseTag::J => 'J',
            CaseTag::K => 'K',
            CaseTag::L => 'L',
            CaseTag::M => 'M',
            CaseTag::N => 'N',
            CaseTag::O => 'O',
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Number of scalar roots a case produces, or the degenerate marker for the
/// two cases whose matrix solution set is `{0}` union a whole norm level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootExpectation {
    Count(usize),
    /// Cases `C` and `L` with `y = 0`: besides zero, every point at this
    /// norm level solves the matrix equation.
    ZeroUnionSphere { radius: f64 },
}

/// Classification outcome: the case letter and its root expectation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseLabel {
    pub tag: CaseTag,
    pub expected_roots: RootExpectation,
}

/// Sign of the coefficient `1 + a*exp(-x/b)` at a root. `Zero` occurs only
/// for `y = 0` (at `x = 0` when `1 + a = 0`, and at `x = b*ln|a|` in the
/// degenerate cases).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Zero => "0",
        }
    }
}

/// One root of the scalar equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarRoot {
    pub x: f64,
    pub coefficient_sign: Sign,
    /// Set when the root is a critical point where `y` meets a local
    /// extreme value of `f` (a double root).
    pub tangent: bool,
}

/// All roots of the scalar equation, in increasing order of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarRoots {
    pub roots: Vec<ScalarRoot>,
}

impl ScalarRoots {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ScalarRoot> {
        self.roots.iter()
    }
}

fn validate_y(y: f64) -> Result<()> {
    if !y.is_finite() || y < 0.0 {
        return Err(Error::InvalidParameter {
            what: format!("y must be a finite nonnegative real, got {y}"),
        });
    }
    Ok(())
}

/// Width of the band around a threshold inside which `y` is treated as
/// meeting the threshold exactly (tangent cases `E`, `I`, `N`). Deciding
/// between a tangent double root and a near-tangent pair is ill-posed below
/// this resolution in double precision.
fn tangent_tol(threshold: f64) -> f64 {
    1e-9 * threshold.max(1.0)
}

/// Maps `(a, b, y)` to its solvability case.
///
/// Total over `b != 0`, `y >= 0`: every parameter combination lands in
/// exactly one of the fifteen cases. `y` within `tangent_tol` of a threshold
/// classifies as the tangent case.
pub fn classify(params: &SolverParams, y: f64) -> Result<CaseLabel> {
    let cp = critical_points(params);
    classify_with(params, &cp, y)
}

fn classify_with(params: &SolverParams, cp: &CriticalPoints, y: f64) -> Result<CaseLabel> {
    validate_y(y)?;
    let (a, b) = (params.a, params.b);

    let (tag, expected_roots) = if b < 0.0 {
        if a >= 0.0 {
            (CaseTag::A, RootExpectation::Count(1))
        } else if a <= -1.0 {
            (CaseTag::B, RootExpectation::Count(1))
        } else {
            let t0 = cp.f_at_x0.expect("x0 exists for -1 < a < 0, b < 0");
            let radius = cp.sign_change.expect("sign change exists for -1 < a < 0, b < 0");
            if y == 0.0 {
                (CaseTag::C, RootExpectation::ZeroUnionSphere { radius })
            } else if (y - t0).abs() <= tangent_tol(t0) {
                (CaseTag::E, RootExpectation::Count(2))
            } else if y < t0 {
                (CaseTag::D, RootExpectation::Count(3))
            } else {
                (CaseTag::F, RootExpectation::Count(1))
            }
        }
    } else if (0.0..=E_SQUARED).contains(&a) {
        (CaseTag::G, RootExpectation::Count(1))
    } else if a > E_SQUARED {
        let t0 = cp.f_at_x0.expect("x0 exists for a > e^2, b > 0");
        let t1 = cp.f_at_x1.expect("x1 exists for a > e^2, b > 0");
        if (y - t0).abs() <= tangent_tol(t0) || (y - t1).abs() <= tangent_tol(t1) {
            (CaseTag::I, RootExpectation::Count(2))
        } else if t1 < y && y < t0 {
            (CaseTag::J, RootExpectation::Count(3))
        } else {
            (CaseTag::H, RootExpectation::Count(1))
        }
    } else if a >= -1.0 {
        (CaseTag::K, RootExpectation::Count(1))
    } else {
        let t0 = cp.f_at_x0.expect("x0 exists for a < -1, b > 0");
        let radius = cp.sign_change.expect("sign change exists for a < -1, b > 0");
        if y == 0.0 {
            (CaseTag::L, RootExpectation::ZeroUnionSphere { radius })
        } else if (y - t0).abs() <= tangent_tol(t0) {
            (CaseTag::N, RootExpectation::Count(2))
        } else if y < t0 {
            (CaseTag::M, RootExpectation::Count(3))
        } else {
            (CaseTag::O, RootExpectation::Count(1))
        }
    };

    Ok(CaseLabel {
        tag,
        expected_roots,
    })
}

fn sign_of(c: f64) -> Sign {
    if c > 0.0 {
        Sign::Positive
    } else if c < 0.0 {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

fn root(x: f64, coefficient_sign: Sign, tangent: bool) -> ScalarRoot {
    ScalarRoot {
        x,
        coefficient_sign,
        tangent,
    }
}

/// Doubles an upper bound from `lo` until `f` reaches `y`; `f` grows
/// without bound on every tail interval this is called on.
fn grow_upper(params: &SolverParams, y: f64, lo: f64) -> Result<f64> {
    let mut hi = 2.0 * lo.max(0.5);
    for _ in 0..1200 {
        if f_unchecked(params, hi) >= y {
            return Ok(hi);
        }
        hi *= 2.0;
    }
    Err(Error::Internal {
        what: format!("no upper bracket for y = {y:e} growing from {lo:e}"),
    })
}

/// Finds the root of `f(x) = y` inside `[lo, hi]`, where `f - y` changes
/// sign. Classification at a tolerance band edge can leave `y` marginally
/// outside the interval's value range; in that situation the better
/// endpoint is accepted if it already meets the residual contract.
fn root_on_interval(params: &SolverParams, y: f64, lo: f64, hi: f64) -> Result<f64> {
    let g = |x: f64| f_unchecked(params, x) - y;
    let glo = g(lo);
    if glo == 0.0 {
        return Ok(lo);
    }
    let ghi = g(hi);
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        let (x, gx) = if glo.abs() <= ghi.abs() {
            (lo, glo)
        } else {
            (hi, ghi)
        };
        if gx.abs() <= RESID_TOL * y.max(1.0) {
            return Ok(x);
        }
        return Err(Error::Internal {
            what: format!("lost bracket on [{lo:e}, {hi:e}] for y = {y:e}"),
        });
    }
    bracket::brent(g, lo, hi, BRENT_XTOL, BRENT_RTOL, BRENT_MAX_ITER).ok_or_else(|| {
        Error::Internal {
            what: format!("root finder stalled on [{lo:e}, {hi:e}] for y = {y:e}"),
        }
    })
}

fn root_from_zero(params: &SolverParams, y: f64) -> Result<f64> {
    let hi = grow_upper(params, y, 0.0)?;
    root_on_interval(params, y, 0.0, hi)
}

/// Newton iteration for the `a >= 0, b < 0` regime, started at `x = y`.
///
/// There `g(x) = (1 + a*exp(-x/b))*x - y` is increasing and convex with
/// `g(y) = a*exp(-y/b)*y >= 0`, so the iteration descends monotonically onto
/// the unique root. Stops once `|g| <= 1e-12 * max(1, y)`; errors if 200
/// iterations do not get there or an iterate leaves the finite range (which
/// happens when `exp(y/|b|)` overflows; callers fall back to bisection).
pub fn newton_case_a(params: &SolverParams, y: f64) -> Result<f64> {
    if !(params.a >= 0.0 && params.b < 0.0) {
        return Err(Error::InvalidParameter {
            what: format!(
                "newton_case_a requires a >= 0 and b < 0, got a = {}, b = {}",
                params.a, params.b
            ),
        });
    }
    validate_y(y)?;
    if y == 0.0 {
        return Ok(0.0);
    }
    let mut x = y;
    for _ in 0..NEWTON_MAX_ITER {
        let c = coefficient(params, x);
        let g = c * x - y;
        if g.abs() <= NEWTON_RESID_TOL * y.max(1.0) {
            return Ok(x);
        }
        let gp = 1.0 + (c - 1.0) * (1.0 - x / params.b);
        let next = x - g / gp;
        if !next.is_finite() {
            return Err(Error::NoConvergence {
                what: "Newton iteration for the a >= 0, b < 0 regime",
                iterations: NEWTON_MAX_ITER,
            });
        }
        x = next;
    }
    Err(Error::NoConvergence {
        what: "Newton iteration for the a >= 0, b < 0 regime",
        iterations: NEWTON_MAX_ITER,
    })
}

/// Computes every root of `f(x) = y`, in increasing order.
///
/// Classifies, then finds one root per monotone piece of `f` whose value
/// range contains `y`. Tangent cases return the critical point itself with
/// the `tangent` flag set. Every non-tangent root satisfies
/// `|f(x) - y| <= 1e-10 * max(1, y)`; tangent roots meet `y` to within the
/// classification band instead.
pub fn solve_scalar(params: &SolverParams, y: f64) -> Result<ScalarRoots> {
    let cp = critical_points(params);
    let label = classify_with(params, &cp, y)?;
    use CaseTag::*;

    let roots = match label.tag {
        C | L => {
            let radius = cp.sign_change.expect("degenerate cases have a sign change");
            let s0 = if label.tag == C {
                Sign::Positive
            } else {
                Sign::Negative
            };
            vec![root(0.0, s0, false), root(radius, Sign::Zero, false)]
        }
        _ if y == 0.0 => {
            vec![root(0.0, sign_of(1.0 + params.a), false)]
        }
        A => {
            let x = match newton_case_a(params, y) {
                Ok(x) => x,
                Err(_) => root_from_zero(params, y)?,
            };
            vec![root(x, Sign::Positive, false)]
        }
        B => vec![root(root_from_zero(params, y)?, Sign::Negative, false)],
        G | K => vec![root(root_from_zero(params, y)?, Sign::Positive, false)],
        D | M => {
            let x0 = cp.x0.expect("three-root cases have x0");
            let x2 = cp.sign_change.expect("three-root cases have a sign change");
            let inner = if label.tag == D {
                Sign::Positive
            } else {
                Sign::Negative
            };
            let outer = if label.tag == D {
                Sign::Negative
            } else {
                Sign::Positive
            };
            let r1 = root_on_interval(params, y, 0.0, x0)?;
            let r2 = root_on_interval(params, y, x0, x2)?;
            let hi = grow_upper(params, y, x2)?;
            let r3 = root_on_interval(params, y, x2, hi)?;
            vec![root(r1, inner, false), root(r2, inner, false), root(r3, outer, false)]
        }
        E | N => {
            let x0 = cp.x0.expect("tangent cases have x0");
            let x2 = cp.sign_change.expect("tangent cases have a sign change");
            let inner = if label.tag == E {
                Sign::Positive
            } else {
                Sign::Negative
            };
            let outer = if label.tag == E {
                Sign::Negative
            } else {
                Sign::Positive
            };
            let hi = grow_upper(params, y, x2)?;
            let r = root_on_interval(params, y, x2, hi)?;
            vec![root(x0, inner, true), root(r, outer, false)]
        }
        F | O => {
            let x2 = cp.sign_change.expect("one-root outer cases have a sign change");
            let outer = if label.tag == F {
                Sign::Negative
            } else {
                Sign::Positive
            };
            let hi = grow_upper(params, y, x2)?;
            vec![root(root_on_interval(params, y, x2, hi)?, outer, false)]
        }
        H => {
            let x0 = cp.x0.expect("a > e^2 cases have x0");
            let x1 = cp.x1.expect("a > e^2 cases have x1");
            let t1 = cp.f_at_x1.expect("a > e^2 cases have f_at_x1");
            let x = if y < t1 {
                root_on_interval(params, y, 0.0, x0)?
            } else {
                let hi = grow_upper(params, y, x1)?;
                root_on_interval(params, y, x1, hi)?
            };
            vec![root(x, Sign::Positive, false)]
        }
        I => {
            let x0 = cp.x0.expect("a > e^2 cases have x0");
            let x1 = cp.x1.expect("a > e^2 cases have x1");
            let t0 = cp.f_at_x0.expect("a > e^2 cases have f_at_x0");
            if (y - t0).abs() <= tangent_tol(t0) {
                let hi = grow_upper(params, y, x1)?;
                let r = root_on_interval(params, y, x1, hi)?;
                vec![root(x0, Sign::Positive, true), root(r, Sign::Positive, false)]
            } else {
                let r = root_on_interval(params, y, 0.0, x0)?;
                vec![root(r, Sign::Positive, false), root(x1, Sign::Positive, true)]
            }
        }
        J => {
            let x0 = cp.x0.expect("a > e^2 cases have x0");
            let x1 = cp.x1.expect("a > e^2 cases have x1");
            let r1 = root_on_interval(params, y, 0.0, x0)?;
            let r2 = root_on_interval(params, y, x0, x1)?;
            let hi = grow_upper(params, y, x1)?;
            let r3 = root_on_interval(params, y, x1, hi)?;
            vec![
                root(r1, Sign::Positive, false),
                root(r2, Sign::Positive, false),
                root(r3, Sign::Positive, false),
            ]
        }
    };

    Ok(ScalarRoots { roots })
}
