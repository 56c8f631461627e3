//! Report rendering. JSON mode prints every floating point number with 17
//! significant digits so values round trip exactly; text mode prints 6
//! significant digits.

use expnorm::{CriticalPoints, MatrixValue, ScalarRoot, Sign};
use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a JSON value with exponent-form floats at full precision.
pub fn to_json(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(buf).expect("report JSON is UTF-8")
}

/// Formats with 6 significant digits, plain notation for moderate
/// magnitudes and exponent notation outside them.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

pub fn matrix_value(m: &MatrixValue) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "data": m.data(),
    })
}

pub fn matrix_text(m: &MatrixValue, indent: &str) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        out.push_str(indent);
        out.push('[');
        for j in 0..m.cols() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&sig6(m.get(i, j)));
        }
        out.push_str("]\n");
    }
    out
}

pub fn root_value(root: &ScalarRoot) -> Value {
    json!({
        "x": root.x,
        "sign": match root.coefficient_sign {
            Sign::Positive => 1,
            Sign::Negative => -1,
            Sign::Zero => 0,
        },
        "tangent": root.tangent,
    })
}

/// Threshold object holding only the levels that exist for the parameters.
pub fn thresholds_value(cp: &CriticalPoints) -> Value {
    let mut map = Map::new();
    if let Some(t0) = cp.f_at_x0 {
        map.insert("t0".into(), json!(t0));
    }
    if let Some(t1) = cp.f_at_x1 {
        map.insert("t1".into(), json!(t1));
    }
    Value::Object(map)
}

pub fn thresholds_text(cp: &CriticalPoints) -> Option<String> {
    match (cp.f_at_x0, cp.f_at_x1) {
        (Some(t0), Some(t1)) => Some(format!("thresholds: t0 = {}, t1 = {}", sig6(t0), sig6(t1))),
        (Some(t0), None) => Some(format!("threshold: t0 = {}", sig6(t0))),
        _ => None,
    }
}
