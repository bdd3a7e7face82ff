use super::Format;
use crate::enclosure::RationalInterval;
use crate::exact::{to_decimal_string, Rational};
use serde::{Deserialize, Serialize};

pub(crate) const APPROX_DIGITS: usize = 15;

pub(crate) fn approx(r: &Rational) -> String {
    to_decimal_string(r, APPROX_DIGITS)
}

pub(crate) fn approx_interval(iv: &RationalInterval) -> String {
    iv.approx(APPROX_DIGITS)
}

/// Rows of strings under named columns. Columns ending in `_approx` hold
/// truncated decimal renderings; all other numeric cells are exact `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub kind: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(kind: &str, columns: &[&str]) -> Self {
        Table {
            kind: kind.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing memory")).expect("csv output is utf-8")
    }

    /// Aligned columns; exact `p/q` cells longer than 40 characters are
    /// elided in favour of the approximate columns.
    fn to_text(&self) -> String {
        let show = |c: &str| {
            if c.len() > 40 {
                "…".to_string()
            } else {
                c.to_string()
            }
        };
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| show(c)).collect())
            .collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |row: &[String]| {
            let parts: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.columns);
        for row in &cells {
            out += &line(row);
        }
        out
    }
}

pub(crate) fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
