//! Result tables and their CSV form.
//!
//! Metadata goes in leading `# key=value` lines, followed by a header row
//! and one row per (scheme, threshold). Floats are written with 17
//! significant digits so reading a table back gives the same values.

use crate::{CliError, Result};
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub scenario_hash: String,
    /// `None` for analytic tables.
    pub seed: Option<u64>,
    pub tool_version: String,
}

impl Metadata {
    pub fn new(scenario_hash: String, seed: Option<u64>) -> Self {
        Self {
            scenario_hash,
            seed,
            tool_version: format!("hetdiv {}", env!("CARGO_PKG_VERSION")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub scheme: String,
    pub threshold_db: f64,
    pub p_cov: f64,
    /// Quadrature error bound (analytic) or one-sigma Wilson half-width
    /// (simulated).
    pub est_error: f64,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub metadata: Metadata,
    pub rows: Vec<Row>,
}

pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.parse().map_err(|_| CliError::Config(format!("table line {line}: '{s}' is not a number")))
}

/// Writes `# key=value` lines.
pub(crate) fn write_metadata<W: Write>(out: &mut W, meta: &Metadata) -> std::io::Result<()> {
    writeln!(out, "# tool_version={}", meta.tool_version)?;
    writeln!(out, "# scenario_hash={}", meta.scenario_hash)?;
    match meta.seed {
        Some(s) => writeln!(out, "# seed={s}"),
        None => writeln!(out, "# seed=none"),
    }
}

/// Splits leading `#` lines into key/value pairs; returns them with the
/// remaining text.
pub(crate) fn split_metadata(text: &str) -> (Vec<(String, String)>, &str) {
    let mut pairs = Vec::new();
    let mut rest = text;
    while let Some(line) = rest.strip_prefix('#') {
        let (line, tail) = line.split_once('\n').unwrap_or((line, ""));
        if let Some((k, v)) = line.trim().split_once('=') {
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        rest = tail;
    }
    (pairs, rest)
}

pub(crate) fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

impl ResultTable {
    pub fn new(metadata: Metadata) -> Self {
        Self {
            metadata,
            rows: Vec::new(),
        }
    }

    /// Checks p_cov ∈ [0, 1] and ascending thresholds within each scheme.
    pub fn validate(&self) -> Result<()> {
        for (i, r) in self.rows.iter().enumerate() {
            if !(0.0..=1.0).contains(&r.p_cov) {
                return Err(CliError::Numerical(format!(
                    "{} at {} dB: coverage {} outside [0, 1]",
                    r.scheme, r.threshold_db, r.p_cov
                )));
            }
            if let Some(prev) = self.rows[..i].iter().rev().find(|p| p.scheme == r.scheme && p.method == r.method) {
                if prev.threshold_db >= r.threshold_db {
                    return Err(CliError::Numerical(format!("{}: thresholds not ascending", r.scheme)));
                }
            }
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        write_metadata(&mut out, &self.metadata)?;
        let mut w = csv_writer(out);
        w.write_record(["scheme", "threshold_db", "p_cov", "est_error", "method"])?;
        for r in &self.rows {
            w.write_record([
                r.scheme.clone(),
                fmt_f64(r.threshold_db),
                fmt_f64(r.p_cov),
                fmt_f64(r.est_error),
                r.method.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let (pairs, body) = split_metadata(text);
        let get = |k: &str| {
            pairs
                .iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| CliError::Config(format!("table metadata lacks '{k}'")))
        };
        let seed = match get("seed")?.as_str() {
            "none" => None,
            s => Some(s.parse().map_err(|_| CliError::Config(format!("bad seed '{s}'")))?),
        };
        let metadata = Metadata {
            scenario_hash: get("scenario_hash")?,
            seed,
            tool_version: get("tool_version")?,
        };
        let mut rdr = csv::ReaderBuilder::new().from_reader(body.as_bytes());
        let header = rdr.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["scheme", "threshold_db", "p_cov", "est_error", "method"] {
            return Err(CliError::Config(format!("unexpected table header {header:?}")));
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let line = i + 2 + pairs.len();
            rows.push(Row {
                scheme: rec[0].to_string(),
                threshold_db: parse_f64(&rec[1], line)?,
                p_cov: parse_f64(&rec[2], line)?,
                est_error: parse_f64(&rec[3], line)?,
                method: rec[4].to_string(),
            });
        }
        Ok(Self { metadata, rows })
    }
}

/// Analytic and simulated coverage side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub scheme: String,
    pub threshold_db: f64,
    pub p_analytic: f64,
    pub p_simulated: f64,
    pub wilson_se: f64,
}

impl ComparisonRow {
    /// `(simulated − analytic) / Wilson SE`.
    pub fn z(&self) -> f64 {
        (self.p_simulated - self.p_analytic) / self.wilson_se
    }
}

pub fn write_comparison_csv<W: Write>(meta: &Metadata, rows: &[ComparisonRow], mut out: W) -> Result<()> {
    write_metadata(&mut out, meta)?;
    let mut w = csv_writer(out);
    w.write_record(["scheme", "threshold_db", "p_analytic", "p_simulated", "wilson_se", "z"])?;
    for r in rows {
        w.write_record([
            r.scheme.clone(),
            fmt_f64(r.threshold_db),
            fmt_f64(r.p_analytic),
            fmt_f64(r.p_simulated),
            fmt_f64(r.wilson_se),
            fmt_f64(r.z()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        let mut t = ResultTable::new(Metadata::new("0123456789abcdef".into(), Some(7)));
        for (i, p) in [0.9, 0.5, 1.0 / 3.0].into_iter().enumerate() {
            t.rows.push(Row {
                scheme: "IB_MRC".into(),
                threshold_db: -10.0 + 0.1 * i as f64,
                p_cov: p,
                est_error: 1e-12 * p,
                method: "analytic".into(),
            });
        }
        t
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = sample();
        let text = t.to_csv_string();
        assert!(text.starts_with("# tool_version=hetdiv "));
        assert!(!text.contains('\r'));
        assert_eq!(ResultTable::from_csv(&text).unwrap(), t);
        let mut a = t.clone();
        a.metadata.seed = None;
        assert_eq!(ResultTable::from_csv(&a.to_csv_string()).unwrap(), a);
    }

    #[test]
    fn validation() {
        let mut t = sample();
        assert!(t.validate().is_ok());
        t.rows[2].threshold_db = -20.0;
        assert!(t.validate().is_err());
        let mut t = sample();
        t.rows[0].p_cov = 1.5;
        assert!(t.validate().is_err());
    }
}
