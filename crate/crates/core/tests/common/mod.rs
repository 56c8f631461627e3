//! Shared oracles and parameter draws for the integration suites.
//!
//! The oracles are deliberately primitive: plain bisection for Lambert W
//! and a dense sign-change scan for root counts. They share no code with
//! the library paths they check.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use expnorm::{
    coefficient, critical_points, norm, CriticalPoints, MatrixValue, NormKind, SolverParams,
};

pub const E_SQUARED: f64 = std::f64::consts::E * std::f64::consts::E;

/// Margin keeping randomized draws strictly inside their case region,
/// relative to the governing threshold.
pub const DRAW_MARGIN: f64 = 1e-3;

fn bisect(z: f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = |w: f64| w * w.exp() - z;
    let lo_negative = g(lo) < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bisection solution of `w*e^w = z` on the principal range `[-1, inf)`.
pub fn bisect_w0(z: f64) -> f64 {
    bisect(z, -1.0, 710.0)
}

/// Bisection solution of `w*e^w = z` on the lower range `(-inf, -1]`.
pub fn bisect_w_minus1(z: f64) -> f64 {
    bisect(z, -710.0, -1.0)
}

/// Counts transversal crossings of `|1 + a*exp(-x/b)|x = y` on a dense
/// grid over `(0, x_max]`, where `x_max` provably clears the largest root.
/// Requires `y > 0`; tangent double roots do not cross and are invisible
/// here by design.
pub fn grid_root_count(a: f64, b: f64, y: f64, points: usize) -> usize {
    assert!(y > 0.0, "the sign-change oracle needs y > 0");
    let ln_term = if a == 0.0 { 0.0 } else { a.abs().ln().abs() };
    let x_max = f64::max(10.0, 3.0 * (b.abs() * (1.0 + ln_term) + y));
    let g = |x: f64| {
        let c = if a == 0.0 {
            1.0
        } else {
            1.0 + a * (-x / b).exp()
        };
        c.abs() * x - y
    };
    let mut count = 0usize;
    let mut prev_negative = true;
    for k in 1..=points {
        let x = x_max * (k as f64) / (points as f64);
        let v = g(x);
        if v == 0.0 {
            count += 1;
            prev_negative = !prev_negative;
            continue;
        }
        let negative = v < 0.0;
        if negative != prev_negative {
            count += 1;
            prev_negative = negative;
        }
    }
    count
}

/// One randomized parameter draw strictly inside a case region.
#[derive(Debug, Clone, Copy)]
pub struct CaseDraw {
    pub a: f64,
    pub b: f64,
    pub y: f64,
}

impl CaseDraw {
    pub fn params(&self) -> SolverParams {
        SolverParams::new(self.a, self.b).unwrap()
    }

    pub fn critical(&self) -> CriticalPoints {
        critical_points(&self.params())
    }
}

fn hump_b_negative(rng: &mut StdRng) -> (f64, f64, CriticalPoints) {
    loop {
        let a = -rng.gen_range(0.05..0.95);
        let b = -rng.gen_range(0.5..20.0);
        let cp = critical_points(&SolverParams::new(a, b).unwrap());
        if cp.f_at_x0.unwrap() >= 1e-4 {
            return (a, b, cp);
        }
    }
}

fn hump_b_positive(rng: &mut StdRng) -> (f64, f64, CriticalPoints) {
    loop {
        let a = -rng.gen_range(1.1..8.0);
        let b = rng.gen_range(0.5..20.0);
        let cp = critical_points(&SolverParams::new(a, b).unwrap());
        if cp.f_at_x0.unwrap() >= 1e-4 {
            return (a, b, cp);
        }
    }
}

fn double_threshold(rng: &mut StdRng) -> (f64, f64, CriticalPoints) {
    loop {
        let a = rng.gen_range(9.0..60.0);
        let b = rng.gen_range(0.2..5.0);
        let cp = critical_points(&SolverParams::new(a, b).unwrap());
        let t0 = cp.f_at_x0.unwrap();
        let t1 = cp.f_at_x1.unwrap();
        if t0 - t1 >= 1e-3 * t0.max(1.0) && t1 >= 1e-4 {
            return (a, b, cp);
        }
    }
}

fn maybe_zero_y(rng: &mut StdRng, hi: f64) -> f64 {
    if rng.gen_bool(0.02) {
        0.0
    } else {
        rng.gen_range(0.0..hi)
    }
}

fn band_offset(rng: &mut StdRng, threshold: f64) -> f64 {
    threshold + rng.gen_range(-0.5e-9..0.5e-9) * threshold.max(1.0)
}

/// Draws `(a, b, y)` strictly inside the region of the given case letter.
pub fn draw_case(tag: char, rng: &mut StdRng) -> CaseDraw {
    let (a, b, y) = match tag {
        'A' => {
            let a = rng.gen_range(0.01..10.0);
            let b = -rng.gen_range(0.1..20.0);
            (a, b, maybe_zero_y(rng, 50.0))
        }
        'B' => {
            let a = -rng.gen_range(1.001..10.0);
            let b = -rng.gen_range(0.1..20.0);
            (a, b, maybe_zero_y(rng, 50.0))
        }
        'C' => {
            let (a, b, _) = hump_b_negative(rng);
            (a, b, 0.0)
        }
        'D' => {
            let (a, b, cp) = hump_b_negative(rng);
            let u = rng.gen_range(DRAW_MARGIN..1.0 - DRAW_MARGIN);
            (a, b, u * cp.f_at_x0.unwrap())
        }
        'E' => {
            let (a, b, cp) = hump_b_negative(rng);
            (a, b, band_offset(rng, cp.f_at_x0.unwrap()))
        }
        'F' => {
            let (a, b, cp) = hump_b_negative(rng);
            let u = rng.gen_range(DRAW_MARGIN..2.0);
            (a, b, cp.f_at_x0.unwrap() * (1.0 + u))
        }
        'G' => {
            let a = rng.gen_range(0.0..E_SQUARED * 0.999);
            let b = rng.gen_range(0.1..20.0);
            (a, b, maybe_zero_y(rng, 50.0))
        }
        'H' => {
            let (a, b, cp) = double_threshold(rng);
            let y = if rng.gen_bool(0.5) {
                cp.f_at_x1.unwrap() * rng.gen_range(DRAW_MARGIN..1.0 - DRAW_MARGIN)
            } else {
                cp.f_at_x0.unwrap() * (1.0 + rng.gen_range(DRAW_MARGIN..2.0))
            };
            (a, b, y)
        }
        'I' => {
            let (a, b, cp) = double_threshold(rng);
            let t = if rng.gen_bool(0.5) {
                cp.f_at_x0.unwrap()
            } else {
                cp.f_at_x1.unwrap()
            };
            (a, b, band_offset(rng, t))
        }
        'J' => {
            let (a, b, cp) = double_threshold(rng);
            let t0 = cp.f_at_x0.unwrap();
            let t1 = cp.f_at_x1.unwrap();
            let u = rng.gen_range(DRAW_MARGIN..1.0 - DRAW_MARGIN);
            (a, b, t1 + u * (t0 - t1))
        }
        'K' => {
            let a = -rng.gen_range(0.05..0.995);
            let b = rng.gen_range(0.1..20.0);
            (a, b, maybe_zero_y(rng, 50.0))
        }
        'L' => {
            let (a, b, _) = hump_b_positive(rng);
            (a, b, 0.0)
        }
        'M' => {
            let (a, b, cp) = hump_b_positive(rng);
            let u = rng.gen_range(DRAW_MARGIN..1.0 - DRAW_MARGIN);
            (a, b, u * cp.f_at_x0.unwrap())
        }
        'N' => {
            let (a, b, cp) = hump_b_positive(rng);
            (a, b, band_offset(rng, cp.f_at_x0.unwrap()))
        }
        'O' => {
            let (a, b, cp) = hump_b_positive(rng);
            let u = rng.gen_range(DRAW_MARGIN..2.0);
            (a, b, cp.f_at_x0.unwrap() * (1.0 + u))
        }
        other => panic!("unknown case letter {other}"),
    };
    CaseDraw { a, b, y }
}

pub const ALL_CASES: [char; 15] = [
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O',
];

/// Root count of each case, with the degenerate pair counted as two.
pub fn expected_count(tag: char) -> usize {
    match tag {
        'A' | 'B' | 'F' | 'G' | 'H' | 'K' | 'O' => 1,
        'C' | 'E' | 'I' | 'L' | 'N' => 2,
        'D' | 'J' | 'M' => 3,
        other => panic!("unknown case letter {other}"),
    }
}

pub fn builtin_kind(index: usize) -> NormKind {
    match index % 4 {
        0 => NormKind::One,
        1 => NormKind::Two,
        2 => NormKind::Infinity,
        _ => NormKind::Frobenius,
    }
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> MatrixValue {
    let data = (0..rows * cols).map(|_| rng.gen_range(-3.0..3.0)).collect();
    MatrixValue::new(rows, cols, data).unwrap()
}

fn upper_norm_scale(p: &SolverParams) -> f64 {
    let cp = critical_points(p);
    let base = match cp.sign_change {
        Some(x2) => 3.0 * x2,
        None => match cp.x1 {
            Some(x1) => 3.0 * x1,
            None => 30.0,
        },
    };
    base.max(1.0)
}

fn near_critical(p: &SolverParams, x: f64) -> bool {
    let cp = critical_points(p);
    [cp.x0, cp.x1].iter().flatten().any(|&cx| {
        (x - cx).abs() < 1e-3 * cx.max(1.0)
    })
}

/// Draws `(params, X0, kind)` for forward/backward round trips: the target
/// norm stays clear of the critical points (where the inverse problem is
/// information-limited in doubles) and the coefficient clear of zero.
pub fn round_trip_draw(rng: &mut StdRng) -> (SolverParams, MatrixValue, NormKind) {
    loop {
        let (a, b) = match rng.gen_range(0..7) {
            0 => (rng.gen_range(0.0..10.0), -rng.gen_range(0.1..10.0)),
            1 => (-rng.gen_range(1.0..8.0), -rng.gen_range(0.1..10.0)),
            2 => (-rng.gen_range(0.05..0.95), -rng.gen_range(0.5..10.0)),
            3 => (rng.gen_range(0.0..E_SQUARED), rng.gen_range(0.1..10.0)),
            4 => (rng.gen_range(7.6..40.0), rng.gen_range(0.2..5.0)),
            5 => (-rng.gen_range(0.05..1.0), rng.gen_range(0.1..10.0)),
            _ => (-rng.gen_range(1.05..8.0), rng.gen_range(0.5..10.0)),
        };
        let p = SolverParams::new(a, b).unwrap();
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m = random_matrix(rng, rows, cols);
        let kind = builtin_kind(rng.gen_range(0..4));
        let base = norm(&m, &kind);
        if !(base > 1e-6) {
            continue;
        }
        let target = rng.gen_range(0.05..upper_norm_scale(&p));
        let x0 = m.scaled(target / base);
        let n = norm(&x0, &kind);
        if near_critical(&p, n) || coefficient(&p, n).abs() < 1e-6 {
            continue;
        }
        return (p, x0, kind);
    }
}
