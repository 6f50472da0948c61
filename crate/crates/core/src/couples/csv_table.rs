//! Joint tables as CSV: a header `X\Y,y_1,...,y_m`, then one row per
//! `x_i` followed by its `m` probabilities.

use std::path::Path;

use num_traits::{One, Signed, Zero};

use super::JointLaw;
use crate::error::{Error, Result};
use crate::exact::{self, format_rational, parse_rational};

/// Decimal-only tables within this distance of 1 are rescaled.
pub const DECIMAL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedJoint {
    pub joint: JointLaw,
    /// Set when a decimal table was rescaled to sum to exactly one.
    pub renormalized: bool,
}

fn parse_error(row: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        row,
        column,
        message: message.into(),
    }
}

fn parse_coordinate(text: &str, row: usize, column: usize) -> Result<f64> {
    let t = text.trim();
    let v = if t.contains('/') {
        parse_rational(t).map(|q| exact::to_f64(&q)).ok()
    } else {
        t.parse::<f64>().ok()
    };
    match v {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(parse_error(row, column, format!("{t:?} is not a finite number"))),
    }
}

impl JointLaw {
    /// Rows and columns in errors are 1-based, the header being row 1.
    pub fn from_csv_str(text: &str) -> Result<ParsedJoint> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());

        let mut records = reader.records();
        let header = match records.next() {
            Some(r) => r.map_err(|e| parse_error(1, 1, e.to_string()))?,
            None => return Err(parse_error(1, 1, "empty table")),
        };
        if header.len() < 2 {
            return Err(parse_error(1, 1, "header needs a corner cell and at least one Y value"));
        }
        let y_values = header
            .iter()
            .enumerate()
            .skip(1)
            .map(|(c, cell)| parse_coordinate(cell, 1, c + 1))
            .collect::<Result<Vec<f64>>>()?;

        let mut x_values = Vec::new();
        let mut matrix = Vec::new();
        let mut any_fraction = false;
        for (r, record) in records.enumerate() {
            let row = r + 2;
            let record = record.map_err(|e| parse_error(row, 1, e.to_string()))?;
            if record.len() != header.len() {
                return Err(parse_error(
                    row,
                    record.len().min(header.len()) + 1,
                    format!("expected {} cells, found {}", header.len(), record.len()),
                ));
            }
            x_values.push(parse_coordinate(&record[0], row, 1)?);
            let mut cells = Vec::with_capacity(y_values.len());
            for (c, cell) in record.iter().enumerate().skip(1) {
                let p = parse_rational(cell).map_err(|e| parse_error(row, c + 1, e.to_string()))?;
                if p.is_negative() {
                    return Err(parse_error(row, c + 1, "negative probability"));
                }
                any_fraction |= cell.contains('/');
                cells.push(p);
            }
            matrix.push(cells);
        }
        if matrix.is_empty() {
            return Err(parse_error(2, 1, "table has no rows"));
        }

        let total = exact::sum(matrix.iter().flatten());
        let mut renormalized = false;
        if !total.is_one() {
            let gap = (exact::to_f64(&total) - 1.0).abs();
            if any_fraction || gap > DECIMAL_TOLERANCE || total.is_zero() {
                return Err(Error::Normalization(format_rational(&total)));
            }
            for p in matrix.iter_mut().flatten() {
                *p = &*p / &total;
            }
            renormalized = true;
        }
        let joint = JointLaw::new(x_values, y_values, matrix)?;
        Ok(ParsedJoint { joint, renormalized })
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<ParsedJoint> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
        JointLaw::from_csv_str(&text)
    }

    /// Writes exact entries as `num/den`.
    pub fn to_csv_string(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["X\\Y".to_string()];
        header.extend(self.y_values.iter().map(|y| y.to_string()));
        writer.write_record(&header).expect("in-memory write");
        for (x, row) in self.x_values.iter().zip(&self.matrix) {
            let mut record = vec![x.to_string()];
            record.extend(row.iter().map(format_rational));
            writer.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}
