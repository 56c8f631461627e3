//! The matrix equation `(1 + a*exp(-||X||/b)) X = Y`.
//!
//! For any norm with absolute homogeneity, taking norms on both sides turns
//! the matrix equation into the scalar norm equation: `||X||` must solve
//! `|1 + a*exp(-x/b)| x = ||Y||`. Each scalar root `x` then lifts back to
//! exactly one matrix solution `X = (1 + a*exp(-x/b))^{-1} Y` (for `Y != 0`),
//! so the matrix solution set is a scaled copy of `Y` per root, except in
//! the two degenerate cases where `Y = 0` meets a coefficient zero at
//! positive radius and a whole norm level solves the equation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{self, RootExpectation, ScalarRoot, Sign, SolverParams};

/// Coefficients with magnitude at or below this are treated as singular in
/// `reconstruct`.
const SINGULAR_TOL: f64 = 1e-14;

/// Solutions whose coefficient magnitude falls below this are flagged
/// `near_singular`: the direct division form of the reconstruction would be
/// ill-conditioned there, even though the returned solution itself is fine.
const NEAR_SINGULAR_TOL: f64 = 1e-8;

const POWER_MAX_ITER: usize = 10_000;
const POWER_REL_TOL: f64 = 1e-13;

/// Dense real matrix, row-major. Entries are validated finite at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixValue {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl MatrixValue {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter {
                what: format!("matrix dimensions must be positive, got {rows}x{cols}"),
            });
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidParameter {
                what: format!(
                    "matrix data length {} does not match {rows}x{cols}",
                    data.len()
                ),
            });
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                what: format!("matrix entries must be finite, got {bad}"),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter {
                what: "matrix must have at least one row".to_string(),
            });
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter {
                what: "matrix rows must all have the same length".to_string(),
            });
        }
        let nrows = rows.len();
        Self::new(nrows, cols, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Entrywise `s * self`. No finiteness re-validation, so internal
    /// callers may produce overflowed entries; public call sites keep `s`
    /// within range.
    pub fn scaled(&self, s: f64) -> MatrixValue {
        MatrixValue {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| s * v).collect(),
        }
    }

    pub fn add(&self, other: &MatrixValue) -> Result<MatrixValue> {
        self.check_shape(other)?;
        Ok(MatrixValue {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn sub(&self, other: &MatrixValue) -> Result<MatrixValue> {
        self.check_shape(other)?;
        Ok(MatrixValue {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| x - y)
                .collect(),
        })
    }

    pub fn trace(&self) -> Result<f64> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch {
                expected: (self.rows, self.rows),
                got: (self.rows, self.cols),
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    fn check_shape(&self, other: &MatrixValue) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                got: other.shape(),
            });
        }
        Ok(())
    }
}

/// User-supplied norm, registered through [`NormKind::custom`] which spot
/// checks absolute homogeneity.
#[derive(Clone)]
pub struct CustomNorm {
    f: Arc<dyn Fn(&MatrixValue) -> f64 + Send + Sync>,
}

/// Which norm closes the equation. All built-in kinds are absolutely
/// homogeneous; custom ones are spot checked at registration.
#[derive(Clone)]
pub enum NormKind {
    /// Maximum absolute column sum.
    One,
    /// Largest singular value.
    Two,
    /// Maximum absolute row sum.
    Infinity,
    Frobenius,
    Custom(CustomNorm),
}

impl std::fmt::Debug for NormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            NormKind::One => "One",
            NormKind::Two => "Two",
            NormKind::Infinity => "Infinity",
            NormKind::Frobenius => "Frobenius",
            NormKind::Custom(_) => "Custom",
        };
        f.write_str(name)
    }
}

impl NormKind {
    /// Registers a custom norm after spot checking `f(t X) = |t| f(X)` on a
    /// handful of fixed pseudorandom matrices and scale factors. The check
    /// is a smoke test, not a proof: a function that passes it is accepted
    /// as given.
    pub fn custom<F>(f: F) -> Result<NormKind>
    where
        F: Fn(&MatrixValue) -> f64 + Send + Sync + 'static,
    {
        let mut rng = XorShift(0xD1B5_4A32_D192_ED03);
        for &(m, n) in &[(1usize, 1usize), (2, 2), (2, 3)] {
            let data: Vec<f64> = (0..m * n).map(|_| 2.0 * rng.next_f64() - 1.0).collect();
            let mat = MatrixValue::new(m, n, data).expect("sample matrix is well formed");
            let base = f(&mat);
            if !base.is_finite() || base < 0.0 {
                return Err(Error::InvalidParameter {
                    what: format!("custom norm returned {base} on a finite matrix"),
                });
            }
            for &t in &[2.0, -3.5, 0.25] {
                let got = f(&mat.scaled(t));
                let want = t.abs() * base;
                let rel = (got - want).abs() / want.abs().max(1e-300);
                if !(rel <= 1e-8) {
                    return Err(Error::NotAbsolutelyHomogeneous {
                        relative_error: rel,
                    });
                }
            }
        }
        Ok(NormKind::Custom(CustomNorm { f: Arc::new(f) }))
    }
}

/// Evaluates the chosen norm of `x`.
pub fn norm(x: &MatrixValue, kind: &NormKind) -> f64 {
    match kind {
        NormKind::One => one_norm(x),
        NormKind::Two => two_norm(x),
        NormKind::Infinity => infinity_norm(x),
        NormKind::Frobenius => frobenius_norm(x),
        NormKind::Custom(c) => (c.f)(x),
    }
}

fn one_norm(x: &MatrixValue) -> f64 {
    (0..x.cols)
        .map(|j| (0..x.rows).map(|i| x.get(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn infinity_norm(x: &MatrixValue) -> f64 {
    (0..x.rows)
        .map(|i| (0..x.cols).map(|j| x.get(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn frobenius_norm(x: &MatrixValue) -> f64 {
    x.data.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Tiny deterministic generator for start vectors and spot-check samples;
/// keeps the library free of an RNG dependency and the results
/// reproducible.
struct XorShift(u64);

impl XorShift {
    fn next_f64(&mut self) -> f64 {
        let mut s = self.0;
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        self.0 = s;
        (s >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn euclid(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn apply(a: &MatrixValue, v: &[f64]) -> Vec<f64> {
    (0..a.rows)
        .map(|i| {
            (0..a.cols)
                .map(|j| a.get(i, j) * v[j])
                .sum::<f64>()
        })
        .collect()
}

fn apply_transpose(a: &MatrixValue, v: &[f64]) -> Vec<f64> {
    (0..a.cols)
        .map(|j| {
            (0..a.rows)
                .map(|i| a.get(i, j) * v[i])
                .sum::<f64>()
        })
        .collect()
}

/// Largest singular value by power iteration on `A^T A`.
///
/// The singular value estimate is `||A v||` for the current unit vector
/// `v`; iteration stops when consecutive estimates agree to `1e-13`
/// relative. If the start vector lands in the null space the iteration
/// restarts from standard basis vectors. Closely clustered leading
/// singular values slow the gap-driven convergence; after `1e4` sweeps the
/// current estimate is returned as is.
fn two_norm(a: &MatrixValue) -> f64 {
    if a.data.iter().all(|&v| v == 0.0) {
        return 0.0;
    }
    let n = a.cols;
    let mut rng = XorShift(0x2545_F491_4F6C_DD1D);
    let mut v: Vec<f64> = (0..n).map(|_| 0.5 + rng.next_f64()).collect();
    let vn = euclid(&v);
    for x in v.iter_mut() {
        *x /= vn;
    }

    let mut sigma = 0.0;
    let mut sigma_prev = f64::NAN;
    let mut restart = 0usize;
    for _ in 0..POWER_MAX_ITER {
        let mut av = apply(a, &v);
        sigma = euclid(&av);
        if sigma == 0.0 {
            if restart >= n {
                return 0.0;
            }
            v = vec![0.0; n];
            v[restart] = 1.0;
            restart += 1;
            sigma_prev = f64::NAN;
            continue;
        }
        if (sigma - sigma_prev).abs() <= POWER_REL_TOL * sigma.max(1.0) {
            break;
        }
        sigma_prev = sigma;
        for x in av.iter_mut() {
            *x /= sigma;
        }
        let mut u = apply_transpose(a, &av);
        let un = euclid(&u);
        for x in u.iter_mut() {
            *x /= un;
        }
        v = u;
    }
    sigma
}

/// One matrix solution: the matrix itself, the scalar root it came from,
/// and whether the coefficient there is small enough that direct division
/// by it would be ill-conditioned.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSolution {
    pub matrix: MatrixValue,
    pub root: ScalarRoot,
    pub near_singular: bool,
}

/// The full solution set of the matrix equation.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionSet {
    /// One solution per scalar root, ordered by increasing root.
    Finite(Vec<MatrixSolution>),
    /// `Y = 0` in a regime whose coefficient vanishes at positive radius:
    /// the zero matrix together with every matrix of norm `radius` solves
    /// the equation.
    ZeroUnionSphere { radius: f64 },
}

/// Recovers `X` from a scalar root by direct division:
/// `X = (1 + a*exp(-x/b))^{-1} Y`. Errors when the coefficient magnitude
/// is at or below `1e-14`; near (but above) that level the division is
/// ill-conditioned, which [`solve_equation`] avoids by scaling `Y` through
/// the norm ratio instead.
pub fn reconstruct(params: &SolverParams, x: f64, y: &MatrixValue) -> Result<MatrixValue> {
    let c = scalar::coefficient(params, x);
    if c.abs() <= SINGULAR_TOL {
        return Err(Error::SingularCoefficient { coefficient: c });
    }
    Ok(y.scaled(1.0 / c))
}

/// Norm of `(1 + a*exp(-||X||/b)) X - Y` in the chosen norm.
pub fn residual(
    params: &SolverParams,
    x: &MatrixValue,
    y: &MatrixValue,
    kind: &NormKind,
) -> Result<f64> {
    x.check_shape(y)?;
    let c = scalar::coefficient(params, norm(x, kind));
    Ok(norm(&x.scaled(c).sub(y)?, kind))
}

/// Solves `(1 + a*exp(-||X||/b)) X = Y` for all `X`.
///
/// Classifies `(a, b, ||Y||)`, solves the scalar norm equation, and lifts
/// each root `x` to `X = s * (x/||Y||) * Y` where `s` is the structural
/// coefficient sign of that root. The ratio form is algebraically equal to
/// dividing by the coefficient but stays accurate when the coefficient is
/// tiny, so every returned solution inherits the scalar residual bound:
/// `||cX - Y|| = |f(x) - ||Y|||` in the chosen norm. Solutions whose
/// coefficient magnitude falls below `1e-8` carry the `near_singular` flag.
pub fn solve_equation(
    params: &SolverParams,
    y: &MatrixValue,
    kind: &NormKind,
) -> Result<SolutionSet> {
    let y_norm = norm(y, kind);
    if !y_norm.is_finite() || y_norm < 0.0 {
        return Err(Error::InvalidParameter {
            what: format!("norm of the right-hand side must be finite and nonnegative, got {y_norm}"),
        });
    }

    let label = scalar::classify(params, y_norm)?;
    if let RootExpectation::ZeroUnionSphere { radius } = label.expected_roots {
        return Ok(SolutionSet::ZeroUnionSphere { radius });
    }

    let roots = scalar::solve_scalar(params, y_norm)?;
    let mut solutions = Vec::with_capacity(roots.len());
    for root in roots.iter() {
        let matrix = if y_norm == 0.0 {
            MatrixValue::zeros(y.rows(), y.cols())?
        } else {
            let s = match root.coefficient_sign {
                Sign::Positive => 1.0,
                Sign::Negative => -1.0,
                Sign::Zero => {
                    return Err(Error::Internal {
                        what: "zero coefficient sign at a positive norm level".to_string(),
                    })
                }
            };
            y.scaled(s * root.x / y_norm)
        };
        let c = scalar::coefficient(params, root.x);
        solutions.push(MatrixSolution {
            matrix,
            root: *root,
            near_singular: c.abs() < NEAR_SINGULAR_TOL,
        });
    }
    Ok(SolutionSet::Finite(solutions))
}

/// Deterministic witnesses for the degenerate solution set: `count`
/// distinct matrices of the given shape whose norm equals `radius`.
///
/// Two entries per matrix are set so the norm comes out exactly (up to a
/// final rounding) for each built-in kind. A `1x1` shape has only the two
/// points `{radius, -radius}` at that level, so at most two matrices come
/// back. Custom norms have no generic level-set parametrization and are
/// rejected.
pub fn sample_degenerate(
    rows: usize,
    cols: usize,
    radius: f64,
    kind: &NormKind,
    count: usize,
) -> Result<Vec<MatrixValue>> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidParameter {
            what: format!("radius must be positive and finite, got {radius}"),
        });
    }
    if count == 0 {
        return Err(Error::InvalidParameter {
            what: "sample count must be positive".to_string(),
        });
    }
    if matches!(kind, NormKind::Custom(_)) {
        return Err(Error::InvalidParameter {
            what: "cannot sample the level set of a custom norm".to_string(),
        });
    }

    if rows == 1 && cols == 1 {
        let mut out = vec![MatrixValue::new(1, 1, vec![radius])?];
        if count > 1 {
            out.push(MatrixValue::new(1, 1, vec![-radius])?);
        }
        return Ok(out);
    }

    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let c = radius * (k + 1) as f64 / (count + 1) as f64;
        let mut m = MatrixValue::zeros(rows, cols)?;
        match kind {
            NormKind::Frobenius | NormKind::Two => {
                // Both entries on one line: rank one, so the two-norm and
                // the Frobenius norm both equal the Euclidean length.
                let head = (radius * radius - c * c).sqrt();
                m.set(0, 0, head);
                if cols >= 2 {
                    m.set(0, 1, c);
                } else {
                    m.set(1, 0, c);
                }
            }
            NormKind::One => {
                if cols >= 2 {
                    m.set(0, 0, radius);
                    m.set(0, 1, c);
                } else {
                    m.set(0, 0, radius - c);
                    m.set(1, 0, c);
                }
            }
            NormKind::Infinity => {
                if rows >= 2 {
                    m.set(0, 0, radius);
                    m.set(1, 0, c);
                } else {
                    m.set(0, 0, radius - c);
                    m.set(0, 1, c);
                }
            }
            NormKind::Custom(_) => unreachable!("rejected above"),
        }
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CaseTag;

    fn params(a: f64, b: f64) -> SolverParams {
        SolverParams::new(a, b).unwrap()
    }

    fn mat(rows: Vec<Vec<f64>>) -> MatrixValue {
        MatrixValue::from_rows(rows).unwrap()
    }

    #[test]
    fn construction_validates_shape_and_entries() {
        assert!(MatrixValue::new(0, 2, vec![]).is_err());
        assert!(MatrixValue::new(2, 2, vec![1.0; 3]).is_err());
        assert!(MatrixValue::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(MatrixValue::new(1, 2, vec![1.0, f64::INFINITY]).is_err());
        assert!(MatrixValue::from_rows(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(MatrixValue::from_rows(vec![]).is_err());

        let m = mat(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(m.shape(), (2, 2));
        assert_eq!(m.get(1, 0), 3.0);
        assert_eq!(m.to_rows(), vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
    }

    #[test]
    fn arithmetic_checks_shapes() {
        let a = mat(vec![vec![1.0, 2.0]]);
        let b = mat(vec![vec![1.0], vec![2.0]]);
        assert!(a.add(&b).is_err());
        assert!(a.sub(&b).is_err());
        assert!(b.trace().is_err());
        let s = a.add(&a).unwrap();
        assert_eq!(s.data(), &[2.0, 4.0]);
        assert_eq!(
            mat(vec![vec![1.0, 5.0], vec![7.0, 2.0]]).trace().unwrap(),
            3.0
        );
    }

    #[test]
    fn entrywise_norms_match_hand_values() {
        let m = mat(vec![vec![1.0, -2.0], vec![3.0, 4.0]]);
        assert_eq!(norm(&m, &NormKind::One), 6.0);
        assert_eq!(norm(&m, &NormKind::Infinity), 7.0);
        assert!((norm(&m, &NormKind::Frobenius) - 30.0f64.sqrt()).abs() <= 1e-15);
    }

    #[test]
    fn two_norm_matches_known_singular_values() {
        let checks = vec![
            (mat(vec![vec![3.0, 0.0], vec![0.0, 4.0]]), 4.0),
            (mat(vec![vec![1.0, 2.0], vec![2.0, 4.0]]), 5.0),
            (mat(vec![vec![0.0, 1.0], vec![0.0, 0.0]]), 1.0),
            (mat(vec![vec![1.0, 0.0], vec![0.0, 1.0]]), 1.0),
            (mat(vec![vec![3.0, 4.0]]), 5.0),
            (mat(vec![vec![3.0], vec![4.0]]), 5.0),
            (mat(vec![vec![0.0, 0.0], vec![0.0, 0.0]]), 0.0),
            // Symmetric with eigenvalues 3 and -1.
            (mat(vec![vec![1.0, 2.0], vec![2.0, 1.0]]), 3.0),
        ];
        for (m, want) in checks {
            let got = norm(&m, &NormKind::Two);
            assert!(
                (got - want).abs() <= 1e-9 * want.max(1.0),
                "two-norm {got} != {want} for {m:?}"
            );
        }
    }

    #[test]
    fn two_norm_sits_between_frobenius_bounds() {
        let mut rng = XorShift(42);
        for _ in 0..20 {
            let data: Vec<f64> = (0..12).map(|_| 4.0 * rng.next_f64() - 2.0).collect();
            let m = MatrixValue::new(3, 4, data).unwrap();
            let two = norm(&m, &NormKind::Two);
            let fro = norm(&m, &NormKind::Frobenius);
            assert!(two <= fro * (1.0 + 1e-9), "two = {two} > fro = {fro}");
            assert!(
                fro <= two * 2.0 + 1e-12,
                "fro = {fro} > sqrt(rank)*two = {}",
                two * 2.0
            );
        }
    }

    #[test]
    fn custom_norm_registration_spot_checks_homogeneity() {
        let doubled = NormKind::custom(|m: &MatrixValue| 2.0 * frobenius_norm(m)).unwrap();
        let m = mat(vec![vec![1.0, -2.0], vec![3.0, 4.0]]);
        assert!((norm(&m, &doubled) - 2.0 * 30.0f64.sqrt()).abs() <= 1e-12);

        // Maximum entry without absolute value is not homogeneous under
        // negative scaling.
        let err = NormKind::custom(|m: &MatrixValue| {
            m.data().iter().fold(f64::MIN, |acc, &v| acc.max(v))
        });
        match err {
            Err(Error::NotAbsolutelyHomogeneous { relative_error }) => {
                assert!(relative_error > 1e-8)
            }
            other => panic!("expected a homogeneity failure, got {other:?}"),
        }

        assert!(NormKind::custom(|_: &MatrixValue| f64::NAN).is_err());
    }

    #[test]
    fn reconstruct_inverts_the_forward_scaling() {
        let p = params(1.0, -1.0);
        let x_mat = mat(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let c = scalar::coefficient(&p, 1.0);
        let y = x_mat.scaled(c);
        let back = reconstruct(&p, 1.0, &y).unwrap();
        for (got, want) in back.data().iter().zip(x_mat.data()) {
            assert!((got - want).abs() <= 1e-14 * want.abs());
        }
    }

    #[test]
    fn reconstruct_rejects_singular_coefficients() {
        // a = -1, x = 0 makes the coefficient exactly zero.
        let p = params(-1.0, -5.0);
        let y = mat(vec![vec![1.0]]);
        match reconstruct(&p, 0.0, &y) {
            Err(Error::SingularCoefficient { coefficient }) => assert_eq!(coefficient, 0.0),
            other => panic!("expected a singular coefficient error, got {other:?}"),
        }
    }

    #[test]
    fn solve_round_trips_a_unique_case() {
        let p = params(1.0, -1.0);
        let x_mat = mat(vec![vec![0.6, -0.8], vec![0.0, 1.0]]);
        let kind = NormKind::Frobenius;
        let x_norm = norm(&x_mat, &kind);
        let c = scalar::coefficient(&p, x_norm);
        let y = x_mat.scaled(c);

        match solve_equation(&p, &y, &kind).unwrap() {
            SolutionSet::Finite(sols) => {
                assert_eq!(sols.len(), 1);
                let sol = &sols[0];
                assert!(!sol.near_singular);
                assert_eq!(sol.root.coefficient_sign, Sign::Positive);
                for (got, want) in sol.matrix.data().iter().zip(x_mat.data()) {
                    assert!((got - want).abs() <= 1e-12);
                }
                let r = residual(&p, &sol.matrix, &y, &kind).unwrap();
                assert!(r <= 1e-10 * norm(&y, &kind).max(1.0));
            }
            other => panic!("expected a finite solution set, got {other:?}"),
        }
    }

    #[test]
    fn solve_returns_three_ordered_solutions_in_case_j() {
        let p = params(15.0, 1.0);
        let kind = NormKind::One;
        // One-norm 6 by column sums.
        let y = mat(vec![vec![2.0, 0.5], vec![4.0, 1.0]]);
        assert_eq!(norm(&y, &kind), 6.0);
        assert_eq!(scalar::classify(&p, 6.0).unwrap().tag, CaseTag::J);

        match solve_equation(&p, &y, &kind).unwrap() {
            SolutionSet::Finite(sols) => {
                assert_eq!(sols.len(), 3);
                let xs: Vec<f64> = sols.iter().map(|s| s.root.x).collect();
                assert!(xs[0] < xs[1] && xs[1] < xs[2]);
                for sol in &sols {
                    let r = residual(&p, &sol.matrix, &y, &kind).unwrap();
                    assert!(r <= 1e-8 * 6.0f64.max(1.0), "residual {r}");
                    assert!((norm(&sol.matrix, &kind) - sol.root.x).abs() <= 1e-12 * sol.root.x);
                }
            }
            other => panic!("expected a finite solution set, got {other:?}"),
        }
    }

    #[test]
    fn solve_flags_near_singular_solutions() {
        // Tiny y in a sign-change regime puts two roots right next to the
        // coefficient zero.
        let p = params(-0.5, -10.0);
        let kind = NormKind::Frobenius;
        let y = mat(vec![vec![1e-9, 0.0], vec![0.0, 0.0]]);
        match solve_equation(&p, &y, &kind).unwrap() {
            SolutionSet::Finite(sols) => {
                assert_eq!(sols.len(), 3);
                assert!(!sols[0].near_singular);
                assert!(sols[1].near_singular);
                assert!(sols[2].near_singular);
                for sol in &sols {
                    let r = residual(&p, &sol.matrix, &y, &kind).unwrap();
                    assert!(r <= 1e-10, "residual {r}");
                }
            }
            other => panic!("expected a finite solution set, got {other:?}"),
        }
    }

    #[test]
    fn solve_handles_zero_rhs() {
        // Monotone regime: unique zero solution.
        match solve_equation(&params(1.0, -1.0), &MatrixValue::zeros(2, 3).unwrap(), &NormKind::One)
            .unwrap()
        {
            SolutionSet::Finite(sols) => {
                assert_eq!(sols.len(), 1);
                assert_eq!(sols[0].matrix, MatrixValue::zeros(2, 3).unwrap());
                assert_eq!(sols[0].root.x, 0.0);
            }
            other => panic!("expected a finite solution set, got {other:?}"),
        }

        // Sign-change regime: the whole norm level joins in.
        match solve_equation(&params(-2.0, 10.0), &MatrixValue::zeros(2, 2).unwrap(), &NormKind::Two)
            .unwrap()
        {
            SolutionSet::ZeroUnionSphere { radius } => {
                assert!((radius - 6.931_471_805_599_453).abs() <= 1e-12 * radius)
            }
            other => panic!("expected the degenerate set, got {other:?}"),
        }
    }

    #[test]
    fn solve_one_by_one_follows_the_scalar_picture() {
        let p = params(1.0, -1.0);
        let y = mat(vec![vec![7.231_228_033_484_182]]);
        match solve_equation(&p, &y, &NormKind::Frobenius).unwrap() {
            SolutionSet::Finite(sols) => {
                assert_eq!(sols.len(), 1);
                let got = sols[0].matrix.get(0, 0);
                assert!((got - std::f64::consts::SQRT_2).abs() <= 1e-10);
            }
            other => panic!("expected a finite solution set, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_samples_hit_the_level_exactly() {
        let radius = 2.5;
        for kind in [
            NormKind::One,
            NormKind::Two,
            NormKind::Infinity,
            NormKind::Frobenius,
        ] {
            for (rows, cols) in [(2, 3), (3, 1), (1, 3), (4, 4)] {
                let samples = sample_degenerate(rows, cols, radius, &kind, 5).unwrap();
                assert_eq!(samples.len(), 5, "{kind:?} {rows}x{cols}");
                for s in &samples {
                    let got = norm(s, &kind);
                    assert!(
                        (got - radius).abs() <= 1e-12 * radius,
                        "{kind:?} {rows}x{cols}: norm {got} != {radius}"
                    );
                }
                for i in 0..samples.len() {
                    for j in i + 1..samples.len() {
                        assert_ne!(samples[i], samples[j], "{kind:?} duplicate sample");
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_samples_on_scalars_are_the_two_points() {
        let samples = sample_degenerate(1, 1, 3.0, &NormKind::Frobenius, 10).unwrap();
        assert_eq!(samples.len(), 2);
        assert_eq!(samples[0].get(0, 0), 3.0);
        assert_eq!(samples[1].get(0, 0), -3.0);
    }

    #[test]
    fn degenerate_sampling_rejects_bad_requests() {
        assert!(sample_degenerate(2, 2, 0.0, &NormKind::One, 3).is_err());
        assert!(sample_degenerate(2, 2, -1.0, &NormKind::One, 3).is_err());
        assert!(sample_degenerate(2, 2, f64::INFINITY, &NormKind::One, 3).is_err());
        assert!(sample_degenerate(2, 2, 1.0, &NormKind::One, 0).is_err());
        let custom = NormKind::custom(frobenius_norm).unwrap();
        assert!(sample_degenerate(2, 2, 1.0, &custom, 3).is_err());
    }

    #[test]
    fn residual_measures_the_defect_in_the_chosen_norm() {
        let p = params(0.0, -1.0);
        // a = 0: equation reduces to X = Y.
        let x = mat(vec![vec![1.0, 2.0]]);
        let y = mat(vec![vec![1.0, 1.0]]);
        assert_eq!(residual(&p, &x, &y, &NormKind::One).unwrap(), 1.0);
        assert_eq!(residual(&p, &x, &x, &NormKind::One).unwrap(), 0.0);
        assert!(residual(&p, &x, &mat(vec![vec![1.0], vec![1.0]]), &NormKind::One).is_err());
    }
}
