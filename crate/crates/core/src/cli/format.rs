//! The `phm` text format for partial Hermitian matrices.
//!
//! ```text
//! # comment
//! phm 3
//! 1 1 1 0
//! 1 2 0.5 -0.25
//! 2 2 2 0
//! 3 3 1 0
//! ```
//!
//! Entries are 1-based upper-triangle positions `i j re im` with `i <= j`;
//! the lower triangle is the conjugate. Every diagonal entry must appear,
//! with zero imaginary part, and no position may appear twice.

use std::fmt;

use crate::completion::PartialHermitianMatrix;
use crate::numeric::{HermitianMatrix, C64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number; `None` for problems detected at end of input.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "end of input: {}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line: Some(line),
        message: message.into(),
    }
}

pub fn parse_phm(text: &str) -> Result<PartialHermitianMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError {
        line: None,
        message: "missing `phm <n>` header".into(),
    })?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["phm", n] => n
            .parse::<usize>()
            .map_err(|_| err(hline, format!("invalid dimension `{n}`")))?,
        _ => return Err(err(hline, "expected header `phm <n>`")),
    };
    if n == 0 {
        return Err(err(hline, "dimension must be at least 1"));
    }

    let mut p = PartialHermitianMatrix::new(n);
    for (lno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [si, sj, sre, sim] = toks.as_slice() else {
            return Err(err(
                lno,
                format!("expected `i j re im`, found {} fields", toks.len()),
            ));
        };
        let i = parse_index(si, n, lno)?;
        let j = parse_index(sj, n, lno)?;
        if i > j {
            return Err(err(
                lno,
                format!("entry ({i}, {j}) is below the diagonal; give it as ({j}, {i})"),
            ));
        }
        let re = parse_value(sre, lno)?;
        let im = parse_value(sim, lno)?;
        if i == j && im != 0.0 {
            return Err(err(
                lno,
                format!("diagonal entry ({i}, {i}) has non-zero imaginary part {im}"),
            ));
        }
        if p.is_specified(i - 1, j - 1) {
            return Err(err(lno, format!("duplicate entry ({i}, {j})")));
        }
        p.set(i - 1, j - 1, C64::new(re, im))
            .map_err(|e| err(lno, e.to_string()))?;
    }
    if let Some(k) = (0..n).find(|&k| !p.is_specified(k, k)) {
        return Err(ParseError {
            line: None,
            message: format!("diagonal entry ({0}, {0}) is missing", k + 1),
        });
    }
    Ok(p)
}

fn parse_index(tok: &str, n: usize, line: usize) -> Result<usize, ParseError> {
    match tok.parse::<usize>() {
        Ok(k) if (1..=n).contains(&k) => Ok(k),
        Ok(k) => Err(err(line, format!("index {k} out of range 1..={n}"))),
        Err(_) => Err(err(line, format!("invalid index `{tok}`"))),
    }
}

fn parse_value(tok: &str, line: usize) -> Result<f64, ParseError> {
    match tok.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(err(line, format!("non-finite value `{tok}`"))),
        Err(_) => Err(err(line, format!("invalid number `{tok}`"))),
    }
}

/// Shortest decimal string that parses back to exactly `x`; `-0` prints as `0`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn emit_phm(p: &PartialHermitianMatrix) -> String {
    let n = p.dim();
    let mut s = format!("phm {n}\n");
    for i in 0..n {
        for j in i..n {
            if let Some(z) = p.get(i, j) {
                s.push_str(&format!(
                    "{} {} {} {}\n",
                    i + 1,
                    j + 1,
                    format_float(z.re),
                    format_float(z.im)
                ));
            }
        }
    }
    s
}

pub fn emit_hermitian(h: &HermitianMatrix) -> String {
    emit_phm(&PartialHermitianMatrix::from_hermitian(h))
}
