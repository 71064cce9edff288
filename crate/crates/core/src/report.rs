//! TSV rendering for score tables.
//!
//! Metric scores print with 2 decimals and error-class rates with 1. Column
//! order is fixed: BLEU, TER, METEOR, CHRF1, then the five error classes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::erroranalysis::{ErrorClass, ErrorRates};
use crate::metrics::{MetricName, MetricScore};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Column {
    Metric(MetricName),
    Error(ErrorClass),
}

impl Column {
    pub fn header(self) -> String {
        match self {
            Column::Metric(m) => format!("{}{}", m.label(), if m.higher_is_better() { "↑" } else { "↓" }),
            Column::Error(c) => format!("{}↓", c.name()),
        }
    }

    pub fn decimals(self) -> usize {
        match self {
            Column::Metric(_) => 2,
            Column::Error(_) => 1,
        }
    }
}

/// Fixed-precision display; negative zero prints as zero.
pub fn format_fixed(value: f64, decimals: usize) -> String {
    let s = format!("{value:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_owned(),
        _ => s,
    }
}

/// One system's scores.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    values: BTreeMap<Column, f64>,
}

impl ReportRow {
    pub fn new(label: impl Into<String>) -> Self {
        ReportRow {
            label: label.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn with_metric(mut self, name: MetricName, value: f64) -> Self {
        self.values.insert(Column::Metric(name), value);
        self
    }

    pub fn with_score(self, score: &MetricScore) -> Self {
        self.with_metric(score.name, score.value)
    }

    pub fn with_error_rate(mut self, class: ErrorClass, value: f64) -> Self {
        self.values.insert(Column::Error(class), value);
        self
    }

    pub fn with_error_rates(self, rates: &ErrorRates) -> Self {
        ErrorClass::ALL
            .into_iter()
            .fold(self, |row, c| row.with_error_rate(c, rates.get(c)))
    }

    pub fn columns(&self) -> impl Iterator<Item = Column> + '_ {
        self.values.keys().copied()
    }

    pub fn get(&self, column: Column) -> Option<f64> {
        self.values.get(&column).copied()
    }
}

/// Header plus one row per system, in the given order.
pub fn render_comparison(rows: &[ReportRow]) -> Result<String> {
    let columns: Vec<Column> = rows.first().map(|r| r.columns().collect()).unwrap_or_default();
    let mut out = String::from("system");
    for c in &columns {
        out.push('\t');
        out.push_str(&c.header());
    }
    out.push('\n');
    for row in rows {
        if !row.columns().eq(columns.iter().copied()) {
            return Err(Error::InconsistentRows { row: row.label.clone() });
        }
        out.push_str(&row.label);
        for (c, v) in &row.values {
            out.push('\t');
            out.push_str(&format_fixed(*v, c.decimals()));
        }
        out.push('\n');
    }
    Ok(out)
}

/// `NAME<TAB>value<TAB>key=value,...`, components at full precision.
pub fn render_score_line(score: &MetricScore) -> String {
    let mut out = format!("{}\t{}\t", score.name.label(), format_fixed(score.value, 2));
    for (i, (k, v)) in score.components.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{k}={v}");
    }
    out.push('\n');
    out
}

/// Pads TSV columns with spaces for reading in a terminal.
pub fn align_columns(tsv: &str) -> String {
    let rows: Vec<Vec<&str>> = tsv.lines().map(|l| l.split('\t').collect()).collect();
    let mut widths: Vec<usize> = Vec::new();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            let w = cell.chars().count();
            if i >= widths.len() {
                widths.push(w);
            } else {
                widths[i] = widths[i].max(w);
            }
        }
    }
    let mut out = String::new();
    for row in &rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                line.extend(std::iter::repeat_n(' ', widths[i] - cell.chars().count()));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
