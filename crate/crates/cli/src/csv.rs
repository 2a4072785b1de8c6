//! The results CSV.
//!
//! Fixed header `t,scheme,mean_subopt,std_subopt,n_reps,bound`, one row per
//! (record point, scheme) sorted by (scheme, t). Reals carry 17 significant
//! digits so parsing a value back returns exactly the written `f64`. The
//! `std_subopt` field is empty for single-repetition runs and the `bound`
//! field is empty where no bound was requested.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use subgrad::Aggregate;

pub const CSV_HEADER: &str = "t,scheme,mean_subopt,std_subopt,n_reps,bound";

/// Serializes a real with 17 significant digits.
pub fn fmt_real(value: f64) -> String {
    format!("{value:.16e}")
}

/// Renders the aggregate; `bounds` maps scheme label -> (t -> bound value).
pub fn emit_csv(agg: &Aggregate, bounds: &BTreeMap<String, BTreeMap<usize, f64>>) -> String {
    let mut rows: Vec<(String, usize, usize)> = Vec::new();
    for (s, scheme) in agg.schemes.iter().enumerate() {
        for (p, &t) in agg.record_points.iter().enumerate() {
            rows.push((scheme.label(), t, p * agg.schemes.len() + s));
        }
    }
    rows.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));

    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (label, t, flat) in rows {
        let (p, s) = (flat / agg.schemes.len(), flat % agg.schemes.len());
        let cell = &agg.cells[p][s];
        let std = cell.std.map(fmt_real).unwrap_or_default();
        let bound = bounds
            .get(&label)
            .and_then(|per_t| per_t.get(&t))
            .map(|b| fmt_real(*b))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{t},{label},{},{std},{},{bound}",
            fmt_real(cell.mean),
            agg.repetitions
        );
    }
    out
}

/// A parsed results row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub t: usize,
    pub scheme: String,
    pub mean_subopt: f64,
    pub std_subopt: Option<f64>,
    pub n_reps: usize,
    pub bound: Option<f64>,
}

/// Parses text produced by [`emit_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty csv")?;
    if header != CSV_HEADER {
        return Err(format!("unexpected header {header:?}"));
    }
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(format!("row {}: expected 6 fields, got {}", n + 2, fields.len()));
        }
        let parse_f64 = |s: &str| -> Result<f64, String> {
            s.parse().map_err(|e| format!("row {}: {e}", n + 2))
        };
        let optional = |s: &str| -> Result<Option<f64>, String> {
            if s.is_empty() {
                Ok(None)
            } else {
                parse_f64(s).map(Some)
            }
        };
        rows.push(CsvRow {
            t: fields[0].parse().map_err(|e| format!("row {}: {e}", n + 2))?,
            scheme: fields[1].to_string(),
            mean_subopt: parse_f64(fields[2])?,
            std_subopt: optional(fields[3])?,
            n_reps: fields[4].parse().map_err(|e| format!("row {}: {e}", n + 2))?,
            bound: optional(fields[5])?,
        });
    }
    Ok(rows)
}
