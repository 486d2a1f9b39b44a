//! Text format for polynomial matrices.
//!
//! One matrix row per line, entries separated by commas, each entry a sum of
//! terms `0`, `1`, `D` or `D^k`:
//!
//! ```text
//! 1, 0, D
//! D, 1+D, 0
//! ```
//!
//! Whitespace is ignored. Blank lines and lines starting with `#` are skipped.

use std::str::FromStr;

use super::matrix::PolyMatrix;
use super::poly::BinaryPoly;
use crate::error::{Error, Result};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a single polynomial such as `1+D+D^3`. `column` is the 1-based
/// position of `text` in its line, used in error reports.
fn parse_poly_at(text: &str, line: usize, column: usize) -> Result<BinaryPoly> {
    let mut poly = BinaryPoly::ZERO;
    let mut offset = 0;
    for raw in text.split('+') {
        let term_col = column + offset + (raw.len() - raw.trim_start().len());
        offset += raw.len() + 1;
        let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        let value = match term.as_str() {
            "" => return Err(parse_error(line, term_col, "empty term")),
            "0" => BinaryPoly::ZERO,
            "1" => BinaryPoly::ONE,
            "D" => BinaryPoly::monomial(1),
            t => {
                let exp = t
                    .strip_prefix("D^")
                    .ok_or_else(|| parse_error(line, term_col, format!("unexpected term `{t}`")))?;
                let exp: u32 = exp
                    .parse()
                    .map_err(|_| parse_error(line, term_col, format!("bad exponent `{exp}`")))?;
                if exp > BinaryPoly::MAX_DEGREE {
                    return Err(parse_error(line, term_col, format!("exponent {exp} too large")));
                }
                BinaryPoly::monomial(exp)
            }
        };
        poly += value;
    }
    Ok(poly)
}

impl FromStr for BinaryPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly_at(s, 1, 1)
    }
}

impl FromStr for PolyMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows: Vec<Vec<BinaryPoly>> = Vec::new();
        let mut last_line = 0;
        for (idx, line) in s.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            let mut col = 1;
            for entry in line.split(',') {
                row.push(parse_poly_at(entry, line_no, col)?);
                col += entry.chars().count() + 1;
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(parse_error(
                        line_no,
                        1,
                        format!("expected {} entries, found {}", first.len(), row.len()),
                    ));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(parse_error(last_line.max(1), 1, "no matrix rows"));
        }
        PolyMatrix::from_rows(rows)
    }
}
