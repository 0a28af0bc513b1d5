//! Rectangular result tables and their CSV form.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Significant digits used when printing table values.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    /// Free-form unit label; empty for dimensionless labels.
    pub unit: String,
}

impl Column {
    pub fn new(name: &str, unit: &str) -> Self {
        Column {
            name: name.to_owned(),
            unit: unit.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    columns: Vec<Column>,
    rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn new(columns: Vec<Column>) -> Self {
        SweepTable {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Shape(format!(
                "row of {} values for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn column_values(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Comma-separated, header row first, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&format_significant(*v, SIGNIFICANT_DIGITS));
            }
            out.push('\n');
        }
        out
    }

    /// Parses CSV produced by [`SweepTable::to_csv`]. Units are not stored
    /// in CSV and come back empty.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Shape("empty CSV".into()))?;
        let columns = header.split(',').map(|n| Column::new(n, "")).collect();
        let mut table = SweepTable::new(columns);
        for (lineno, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| Error::Shape(format!("line {}: field {f:?}: {e}", lineno + 2)))
                })
                .collect::<Result<Vec<f64>>>()?;
            table.push_row(row)?;
        }
        Ok(table)
    }
}

/// Formats like C's `%.{digits}g`: fixed notation for decimal exponents in
/// `[-4, digits)`, scientific otherwise, trailing zeros removed.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_owned();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = digits.max(1);
    // the exponent after rounding to `digits` significant figures
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mut s = String::new();
        let _ = write!(s, "{}e{}", trim_zeros(mantissa), exp);
        s
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
