//! On-disk formats: square matrices, vectors, rotation sequences, and the
//! experiment CSV.
//!
//! All formats are line-oriented text. Floats are written either in
//! shortest round-trip form (matrices, vectors, CSV) or with 17 significant
//! digits (sequence angles), both of which reparse to the identical bits,
//! so `load(save(x)) == x` holds exactly and output files diff cleanly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use givens_core::{
    DenseMatrix, Error, ExperimentRecord, FactorizeTrace, GivensRotation, GivensSequence, Result,
};

const SEQ_MAGIC: &str = "givens-seq v1";

pub enum NumericInput {
    Matrix(DenseMatrix),
    Vector(Vec<f64>),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    let value: f64 = token
        .parse()
        .map_err(|_| parse_err(line, format!("bad number '{token}'")))?;
    if !value.is_finite() {
        return Err(parse_err(line, format!("non-finite value '{token}'")));
    }
    Ok(value)
}

/// Reads the matrix/vector format: first line the dimension `d`, then
/// either `d*d` values (matrix, row-major) or `d` values (vector) spread
/// over the remaining lines.
pub fn read_numeric(path: &Path) -> Result<NumericInput> {
    parse_numeric(&fs::read_to_string(path)?)
}

pub fn parse_numeric(text: &str) -> Result<NumericInput> {
    let mut lines = text.lines().enumerate();
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected a dimension line"))?;
    let dim: usize = first
        .trim()
        .parse()
        .map_err(|_| parse_err(first_no + 1, format!("bad dimension '{}'", first.trim())))?;

    let mut values = Vec::with_capacity(dim * dim);
    for (idx, line) in lines {
        for token in line.split_whitespace() {
            values.push(parse_f64(token, idx + 1)?);
        }
    }
    if values.len() == dim * dim {
        Ok(NumericInput::Matrix(DenseMatrix::new(dim, values)?))
    } else if values.len() == dim {
        Ok(NumericInput::Vector(values))
    } else {
        Err(Error::invalid(format!(
            "expected {} (matrix) or {dim} (vector) values for dimension {dim}, found {}",
            dim * dim,
            values.len()
        )))
    }
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix> {
    match parse_numeric(text)? {
        NumericInput::Matrix(m) => Ok(m),
        NumericInput::Vector(_) => Err(Error::invalid(
            "input holds a vector, expected a square matrix",
        )),
    }
}

pub fn write_matrix(path: &Path, m: &DenseMatrix) -> Result<()> {
    let d = m.dim();
    let mut out = String::new();
    let _ = writeln!(out, "{d}");
    for r in 0..d {
        let row: Vec<String> = m.row(r).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn write_vector(path: &Path, v: &[f64]) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(out, "{}", v.len());
    let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "{}", row.join(" "));
    fs::write(path, out)?;
    Ok(())
}

/// Saves a rotation sequence: a three-line header (format version,
/// dimension, factor count) followed by one `i j angle` row per factor.
pub fn write_sequence(path: &Path, seq: &GivensSequence) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(out, "{SEQ_MAGIC}");
    let _ = writeln!(out, "dim {}", seq.dim());
    let _ = writeln!(out, "count {}", seq.len());
    for g in seq.factors() {
        let _ = writeln!(out, "{} {} {:.16e}", g.i(), g.j(), g.angle());
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_sequence(path: &Path) -> Result<GivensSequence> {
    let text = fs::read_to_string(path)?;
    parse_sequence(&text)
}

pub fn parse_sequence(text: &str) -> Result<GivensSequence> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|(_, l)| l.trim());
    if header != Some(SEQ_MAGIC) {
        return Err(parse_err(1, format!("expected '{SEQ_MAGIC}' header")));
    }
    let mut expect_field = |name: &str| -> Result<usize> {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("missing '{name}' line")))?;
        let rest = line
            .trim()
            .strip_prefix(name)
            .ok_or_else(|| parse_err(idx + 1, format!("expected '{name} <int>'")))?;
        rest.trim()
            .parse()
            .map_err(|_| parse_err(idx + 1, format!("bad '{name}' value")))
    };
    let dim = expect_field("dim")?;
    let count = expect_field("count")?;

    let mut factors = Vec::with_capacity(count);
    for (idx, line) in lines {
        let line_no = idx + 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let mut tokens = text.split_whitespace();
        let (i, j, angle) = match (tokens.next(), tokens.next(), tokens.next(), tokens.next()) {
            (Some(i), Some(j), Some(a), None) => (i, j, a),
            _ => {
                return Err(parse_err(
                    line_no,
                    format!("expected 'i j angle', got '{text}'"),
                ))
            }
        };
        let parse_idx = |tok: &str| -> Result<usize> {
            tok.parse()
                .map_err(|_| parse_err(line_no, format!("bad index '{tok}'")))
        };
        let (i, j) = (parse_idx(i)?, parse_idx(j)?);
        if i == j {
            return Err(parse_err(line_no, "rotation plane indices must differ"));
        }
        factors.push(GivensRotation::new(i, j, parse_f64(angle, line_no)?));
    }
    if factors.len() != count {
        return Err(Error::invalid(format!(
            "sequence header promises {count} factors, file holds {}",
            factors.len()
        )));
    }
    GivensSequence::new(dim, factors)
}

pub fn write_records_csv(path: &Path, records: &[ExperimentRecord]) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(out, "{}", ExperimentRecord::CSV_HEADER);
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    fs::write(path, out)?;
    Ok(())
}

/// Long-format run trace: per-iteration objective values and the error
/// checkpoints, one `kind,n,value` row each.
pub fn write_trace_csv(path: &Path, trace: &FactorizeTrace) -> Result<()> {
    let mut out = String::from("kind,n,value\n");
    for (n, value) in trace.objective_history.iter().enumerate() {
        let _ = writeln!(out, "objective,{n},{value}");
    }
    for &(n, value) in &trace.error_checkpoints {
        let _ = writeln!(out, "error,{n},{value}");
    }
    fs::write(path, out)?;
    Ok(())
}
