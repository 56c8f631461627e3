//! Real branches of the Lambert W function.
//!
//! W is the inverse of `w -> w*e^w`. Over the reals it has two branches:
//!
//! * `w0`: the principal branch, mapping `[-1/e, inf)` onto `[-1, inf)`,
//! * `w_minus1`: the lower branch, mapping `[-1/e, 0)` onto `(-inf, -1]`.
//!
//! Both branches meet at the branch point `z = -1/e`, where W = -1. Values
//! are computed from a cheap initial guess (a series expansion around the
//! branch point, a rational approximation, or the asymptotic
//! `ln z - ln ln z`) refined by Halley iteration on `w*e^w - z`.
//!
//! Accuracy: the defining identity `|W(z)*e^W(z) - z| <= 1e-12 * max(1, |z|)`
//! holds on both branch domains. Within `|z + 1/e| < 1e-12` of the branch
//! point the square-root singularity limits attainable accuracy to about
//! 1e-8 absolute in W, which is the information content of a double there.

use crate::error::{Error, Result};

/// Location of the branch point `-1/e` where both real branches meet.
pub const BRANCH_POINT: f64 = -1.0 / std::f64::consts::E;

/// Inputs this far below the branch point are treated as rounding noise and
/// clamped onto the domain edge.
const DOMAIN_SLACK: f64 = 1e-15;

/// Inside this distance of the branch point the series value is returned
/// without refinement; the derivative of `w*e^w` vanishes there and Halley
/// steps would divide cancellation noise by a near-zero slope.
const NEAR_BRANCH: f64 = 1e-12;

const MAX_ITER: usize = 50;
const REL_STEP_TOL: f64 = 1e-15;

/// Expansion frame around the branch point shared by both branches.
///
/// Holds the input `z >= -1/e` together with the expansion variable
/// `p = sqrt(2*(e*z + 1))`, in which both branches are analytic:
/// W = -1 + p - p^2/3 + ... on the principal side and the same series in
/// `-p` on the lower side.
#[derive(Debug, Clone, Copy)]
pub struct BranchPointNeighborhood {
    z: f64,
    p: f64,
}

impl BranchPointNeighborhood {
    /// Builds the expansion frame, clamping rounding noise up to
    /// `1e-15` below the branch point onto it.
    pub fn new(z: f64) -> Result<Self> {
        if !(z >= BRANCH_POINT - DOMAIN_SLACK) {
            return Err(Error::OutOfDomain {
                func: "BranchPointNeighborhood::new",
                arg: z,
                reason: "z must lie at or above -1/e",
            });
        }
        let z = z.max(BRANCH_POINT);
        let p = (2.0 * (std::f64::consts::E * z + 1.0)).max(0.0).sqrt();
        Ok(Self { z, p })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Expansion variable `p = sqrt(2*(e*z + 1)) >= 0`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Series value on the principal side (w >= -1).
    pub fn series_upper(&self) -> f64 {
        branch_series(self.p)
    }

    /// Series value on the lower side (w <= -1).
    pub fn series_lower(&self) -> f64 {
        branch_series(-self.p)
    }
}

/// Series around the branch point in the signed expansion variable.
fn branch_series(p: f64) -> f64 {
    const A2: f64 = -1.0 / 3.0;
    const A3: f64 = 11.0 / 72.0;
    const A4: f64 = -43.0 / 540.0;
    const A5: f64 = 769.0 / 17280.0;
    const A6: f64 = -221.0 / 8505.0;
    -1.0 + p * (1.0 + p * (A2 + p * (A3 + p * (A4 + p * (A5 + p * A6)))))
}

/// Principal branch W0 on `[-1/e, inf)`, with range `[-1, inf)`.
///
/// Inputs up to `1e-15` below `-1/e` are clamped onto the branch point;
/// anything further below is a domain error, as is NaN.
pub fn w0(z: f64) -> Result<f64> {
    if !(z >= BRANCH_POINT - DOMAIN_SLACK) {
        return Err(Error::OutOfDomain {
            func: "w0",
            arg: z,
            reason: "z must lie at or above -1/e",
        });
    }
    let z = z.max(BRANCH_POINT);
    if z == BRANCH_POINT {
        return Ok(-1.0);
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z - BRANCH_POINT < NEAR_BRANCH {
        return Ok(BranchPointNeighborhood::new(z)?.series_upper());
    }

    let guess = if z < -0.25 {
        BranchPointNeighborhood::new(z)?.series_upper()
    } else if z < 6.46 {
        z / (1.0 + z)
    } else {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    let w = halley(z, guess)?;
    Ok(w.max(-1.0))
}

/// Lower branch W-1 on `[-1/e, 0)`, with range `(-inf, -1]`.
///
/// Inputs up to `1e-15` below `-1/e` are clamped onto the branch point;
/// anything further below, any `z >= 0`, and NaN are domain errors.
pub fn w_minus1(z: f64) -> Result<f64> {
    if !(z >= BRANCH_POINT - DOMAIN_SLACK) || z >= 0.0 {
        return Err(Error::OutOfDomain {
            func: "w_minus1",
            arg: z,
            reason: "z must lie in [-1/e, 0)",
        });
    }
    let z = z.max(BRANCH_POINT);
    if z == BRANCH_POINT {
        return Ok(-1.0);
    }
    if z - BRANCH_POINT < NEAR_BRANCH {
        return Ok(BranchPointNeighborhood::new(z)?.series_lower());
    }

    let guess = if z < -0.3 {
        BranchPointNeighborhood::new(z)?.series_lower()
    } else {
        let l1 = (-z).ln();
        l1 - (-l1).ln()
    };
    let w = halley(z, guess)?;
    Ok(w.min(-1.0))
}

/// Halley refinement of `w*e^w = z` from an initial guess.
///
/// The step is formed from the ratios `f/f'` and `f''/f'`, which keeps every
/// intermediate on the scale of `w` itself; `w*e^w` is never multiplied out
/// against `z`, so the loop is overflow-safe across the whole double range.
fn halley(z: f64, guess: f64) -> Result<f64> {
    let mut w = guess;
    let mut prev_step = f64::INFINITY;
    for _ in 0..MAX_ITER {
        // f/f' = (w*e^w - z) / (e^w*(w + 1)), written to avoid forming w*e^w.
        let u = if w > 1.0 {
            (w - z * (-w).exp()) / (w + 1.0)
        } else {
            let ew = w.exp();
            (w * ew - z) / (ew * (w + 1.0))
        };
        if u == 0.0 {
            return Ok(w);
        }
        let v = (w + 2.0) / (w + 1.0);
        let denom = 2.0 - u * v;
        let step = if denom.abs() > 0.5 { 2.0 * u / denom } else { u };
        let next = w - step;
        if !next.is_finite() {
            return Err(Error::NoConvergence {
                what: "Lambert W Halley iteration",
                iterations: MAX_ITER,
            });
        }
        if step.abs() <= REL_STEP_TOL * next.abs() {
            return Ok(next);
        }
        // Steps contract strictly until rounding noise in f/f' takes over,
        // which happens well above the relative tolerance when the slope is
        // small (close to the branch point). Once contraction stops while
        // the correction is already tiny, the iterate is as good as the
        // slope allows.
        if step.abs() >= prev_step && u.abs() <= 1e-6 * (w.abs() + 1.0) {
            return Ok(next);
        }
        prev_step = step.abs();
        w = next;
    }
    Err(Error::NoConvergence {
        what: "Lambert W Halley iteration",
        iterations: MAX_ITER,
    })
}
