//! Machine-readable experiment reports.
//!
//! JSON is the canonical form (see `docs/FORMATS.md`); the CSV form holds the
//! check table only and parses back into the same checks.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::LadderRung;

/// Version tag written into every report.
pub const SCHEMA: &str = "disco-top.report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    /// `value ≥ bound − tolerance`
    Ge,
    /// `value ≤ bound + tolerance`
    Le,
    /// `|value − bound| ≤ tolerance`
    Eq,
}

impl Comparison {
    fn name(self) -> &'static str {
        match self {
            Comparison::Ge => "ge",
            Comparison::Le => "le",
            Comparison::Eq => "eq",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "ge" => Ok(Comparison::Ge),
            "le" => Ok(Comparison::Le),
            "eq" => Ok(Comparison::Eq),
            _ => Err(Error::invalid(format!("unknown comparison `{s}`"))),
        }
    }

    pub fn holds(self, value: f64, bound: f64, tolerance: f64) -> bool {
        match self {
            Comparison::Ge => value >= bound - tolerance,
            Comparison::Le => value <= bound + tolerance,
            Comparison::Eq => (value - bound).abs() <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub passed: bool,
    /// Failing mandatory checks make the run fail.
    pub mandatory: bool,
    /// Set for exact (combinatorial or closed-form) values; sampled values
    /// carry their scale ladder instead.
    pub exact: bool,
    pub ladder: Vec<LadderRung>,
    pub citation: String,
    pub detail: String,
}

impl Check {
    /// An exact check; `passed` is computed from the comparison.
    pub fn exact(name: &str, value: f64, comparison: Comparison, bound: f64, tolerance: f64, citation: &str) -> Self {
        Self {
            name: name.to_string(),
            value,
            bound,
            comparison,
            tolerance,
            passed: comparison.holds(value, bound, tolerance),
            mandatory: true,
            exact: true,
            ladder: Vec::new(),
            citation: citation.to_string(),
            detail: String::new(),
        }
    }

    /// A sampled check measured on a scale ladder.
    pub fn sampled(
        name: &str,
        value: f64,
        ladder: Vec<LadderRung>,
        comparison: Comparison,
        bound: f64,
        tolerance: f64,
        citation: &str,
    ) -> Self {
        Self { exact: false, ladder, ..Self::exact(name, value, comparison, bound, tolerance, citation) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn optional(mut self) -> Self {
        self.mandatory = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub version: String,
    pub prng: String,
    pub wall_time_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub experiment: String,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(experiment: &str, config: serde_json::Value, seed: Option<u64>) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            experiment: experiment.to_string(),
            config,
            checks: Vec::new(),
            provenance: Provenance {
                seed,
                version: crate::VERSION.to_string(),
                prng: crate::rng::PRNG_NAME.to_string(),
                wall_time_seconds: 0.0,
            },
        }
    }

    pub fn set_wall_time(&mut self, d: Duration) {
        self.provenance.wall_time_seconds = d.as_secs_f64();
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.mandatory)
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let tag = if c.passed { "PASS" } else if c.mandatory { "FAIL" } else { "warn" };
                format!("{tag} {}: {:?} {} {:?} (tol {:?}) [{}]", c.name, c.value, c.comparison.name(), c.bound, c.tolerance, c.citation)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

const CSV_HEADER: [&str; 11] =
    ["name", "value", "bound", "comparison", "tolerance", "passed", "mandatory", "exact", "ladder", "citation", "detail"];

fn ladder_text(l: &[LadderRung]) -> String {
    l.iter().map(|r| format!("{:?}:{:?}", r.rho, r.value)).collect::<Vec<_>>().join(";")
}

fn parse_ladder(s: &str) -> Result<Vec<LadderRung>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|part| {
            let (a, b) = part.split_once(':').ok_or_else(|| Error::invalid(format!("bad ladder entry `{part}`")))?;
            Ok(LadderRung { rho: parse_f64(a)?, value: parse_f64(b)? })
        })
        .collect()
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::invalid(format!("bad number `{s}`")))
}

fn parse_bool(s: &str) -> Result<bool> {
    s.parse().map_err(|_| Error::invalid(format!("bad flag `{s}`")))
}

/// Serializes a report. JSON output is the whole report with stable field
/// order; CSV output is the check table with a header row.
pub fn emit_report(rep: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rep)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for c in &rep.checks {
                w.write_record([
                    c.name.clone(),
                    format!("{:?}", c.value),
                    format!("{:?}", c.bound),
                    c.comparison.name().to_string(),
                    format!("{:?}", c.tolerance),
                    c.passed.to_string(),
                    c.mandatory.to_string(),
                    c.exact.to_string(),
                    ladder_text(&c.ladder),
                    c.citation.clone(),
                    c.detail.clone(),
                ])?;
            }
            w.into_inner().map_err(|e| Error::Io(e.into_error()))
        }
    }
}

pub fn parse_report_json(bytes: &[u8]) -> Result<Report> {
    let rep: Report = serde_json::from_slice(bytes)?;
    if rep.schema != SCHEMA {
        return Err(Error::invalid(format!("unsupported schema `{}`", rep.schema)));
    }
    Ok(rep)
}

/// Parses the CSV check table written by [`emit_report`].
pub fn parse_checks_csv(bytes: &[u8]) -> Result<Vec<Check>> {
    let mut r = csv::Reader::from_reader(bytes);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::invalid("unexpected CSV header"));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            Ok(Check {
                name: rec[0].to_string(),
                value: parse_f64(&rec[1])?,
                bound: parse_f64(&rec[2])?,
                comparison: Comparison::parse(&rec[3])?,
                tolerance: parse_f64(&rec[4])?,
                passed: parse_bool(&rec[5])?,
                mandatory: parse_bool(&rec[6])?,
                exact: parse_bool(&rec[7])?,
                ladder: parse_ladder(&rec[8])?,
                citation: rec[9].to_string(),
                detail: rec[10].to_string(),
            })
        })
        .collect()
}
