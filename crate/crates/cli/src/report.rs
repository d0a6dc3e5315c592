//! Report records and serialization. Exact scalars are serialized as
//! strings so no value ever round-trips through a float.

use serde::Serialize;
use std::io::Write;

/// How the expected value of a check was obtained.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// A definitional identity; the check restates the construction.
    Identity,
    /// Compared against an independent computation in the test harness.
    Oracle,
    /// A value quoted from the literature on current algebras.
    Literature,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// A formula-style statement of what is being checked.
    pub anchor: String,
    /// Digest of the inputs that produced this record.
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub basis: Basis,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(
        name: &str,
        anchor: &str,
        inputs: String,
        expected: String,
        actual: String,
        basis: Basis,
    ) -> CheckRecord {
        let pass = expected == actual;
        CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            inputs,
            expected,
            actual,
            basis,
            pass,
        }
    }

    pub fn judged(mut self, pass: bool) -> CheckRecord {
        self.pass = pass;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub spec: SpecEcho,
    pub checks: Vec<CheckRecord>,
    /// All windowed computations re-ran at a widened window without a
    /// change in answer.
    pub window_stable: bool,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

/// The resolved suite parameters, echoed verbatim for reproducibility.
#[derive(Debug, Clone, Serialize)]
pub struct SpecEcho {
    pub dim: usize,
    pub lie: String,
    pub rep: String,
    pub theta: String,
    pub weight_box: i64,
    pub kmax: u32,
    pub deg_max: u32,
    pub sym_cutoff: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Report {
    pub fn assemble(suite: &str, spec: SpecEcho, mut checks: Vec<CheckRecord>) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        Report {
            suite: suite.to_string(),
            spec,
            checks,
            window_stable: true,
            passed,
            failed,
            elapsed_ms: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn write_report(report: &Report, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "name,basis,inputs,expected,actual,pass")?;
            for c in &report.checks {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    csv_field(&c.name),
                    csv_field(&format!("{:?}", c.basis).to_lowercase()),
                    csv_field(&c.inputs),
                    csv_field(&c.expected),
                    csv_field(&c.actual),
                    c.pass
                )?;
            }
        }
        Format::Text => {
            writeln!(out, "suite: {}", report.suite)?;
            for c in &report.checks {
                writeln!(
                    out,
                    "[{}] {}: expected {} actual {}  ({})",
                    if c.pass { "pass" } else { "FAIL" },
                    c.name,
                    c.expected,
                    c.actual,
                    c.anchor
                )?;
            }
            writeln!(
                out,
                "{} passed, {} failed, window stable: {}",
                report.passed, report.failed, report.window_stable
            )?;
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
