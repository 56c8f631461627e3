//! Matrix and trajectory input/output: CSV and JSON matrix parsing, the
//! blank-line-separated driving sequence format, and the trajectory CSV
//! writer.

use std::io::Write;

use expnorm::{coefficient, norm, MatrixValue, NormKind, SolverParams, StressState};
use serde::Deserialize;

#[derive(Deserialize)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Parses a matrix from either format, sniffing JSON by a leading `{`.
///
/// CSV: one row per line, entries comma separated. JSON: an object
/// `{"rows": m, "cols": n, "data": [row-major entries]}`.
pub fn parse_matrix(text: &str) -> Result<MatrixValue, String> {
    if text.trim_start().starts_with('{') {
        parse_json_matrix(text)
    } else {
        parse_csv_matrix(text)
    }
}

fn parse_json_matrix(text: &str) -> Result<MatrixValue, String> {
    let parsed: JsonMatrix =
        serde_json::from_str(text).map_err(|e| format!("malformed JSON matrix: {e}"))?;
    MatrixValue::new(parsed.rows, parsed.cols, parsed.data).map_err(|e| e.to_string())
}

fn parse_csv_matrix(text: &str) -> Result<MatrixValue, String> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                cell.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("line {}: cannot parse {:?} as a number", lineno + 1, cell.trim()))
            })
            .collect::<Result<Vec<f64>, String>>()?;
        rows.push(row);
    }
    let m = rows.len();
    if m == 0 {
        return Err("empty matrix input".into());
    }
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err("rows have differing lengths".into());
    }
    let data = rows.into_iter().flatten().collect();
    MatrixValue::new(m, n, data).map_err(|e| e.to_string())
}

/// Parses a driving sequence: CSV matrix blocks separated by one or more
/// blank lines.
pub fn parse_driving(text: &str) -> Result<Vec<MatrixValue>, String> {
    let mut blocks = Vec::new();
    let mut current = String::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    if blocks.is_empty() {
        return Err("empty driving sequence".into());
    }
    blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            parse_csv_matrix(block).map_err(|e| format!("driving block {}: {e}", i + 1))
        })
        .collect()
}

/// Writes one CSV row per solver step: the step index, the nine entries of
/// the stress state, its Frobenius norm, the scalar root, and the
/// coefficient value at that root. The initial state is not a step and is
/// not written.
pub fn write_trajectory(
    out: &mut dyn Write,
    params: &SolverParams,
    trajectory: &[StressState],
) -> std::io::Result<()> {
    writeln!(
        out,
        "step,s11,s12,s13,s21,s22,s23,s31,s32,s33,norm_frobenius,root,coefficient"
    )?;
    for (k, state) in trajectory.iter().enumerate().skip(1) {
        let n = norm(&state.stress, &NormKind::Frobenius);
        let c = coefficient(params, n);
        write!(out, "{k}")?;
        for entry in state.stress.data() {
            write!(out, ",{entry:.16e}")?;
        }
        writeln!(out, ",{n:.16e},{n:.16e},{c:.16e}")?;
    }
    Ok(())
}
