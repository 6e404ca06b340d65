//! Report documents: versioned, canonically ordered JSON and a plain text
//! rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value as Json;
use sha2::{Digest, Sha256};
use shpoisson::freecdga::Window;
use shpoisson::report::{Check, Report, Verdict};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Result of a command before it is wrapped into a document.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub report: Report,
    pub tables: BTreeMap<String, Json>,
}

impl Outcome {
    pub fn table(&mut self, name: &str, value: impl Serialize) {
        self.tables.insert(name.into(), serde_json::to_value(value).expect("tables serialize"));
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub schema_version: u32,
    pub command: String,
    pub inputs_digest: String,
    pub window: Window,
    pub verdict: String,
    pub exit_code: i32,
    pub checks: Vec<Check>,
    pub tables: BTreeMap<String, Json>,
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    let bytes = h.finalize();
    let mut out = String::from("sha256:");
    for b in bytes {
        write!(out, "{b:02x}").expect("writing to a String");
    }
    out
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn exit_for(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 3,
    }
}

fn variant_name(e: &shpoisson::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

/// Library errors that describe the input rather than a mathematical
/// outcome are usage errors; a too-small window is inconclusive; the rest
/// are failed checks.
fn classify(e: &shpoisson::Error) -> Option<Verdict> {
    use shpoisson::Error::*;
    match e {
        WindowTooSmall(_) => Some(Verdict::Inconclusive),
        Invalid(_) | DimensionMismatch(_) | ShiftMismatch { .. } | ArityTooLarge(_) => None,
        _ => Some(Verdict::Fail),
    }
}

pub fn document(command: &str, inputs_digest: String, window: Window, result: Result<Outcome, CliError>) -> Document {
    let base = |verdict: &str, exit_code, checks, tables, error| Document {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        inputs_digest: inputs_digest.clone(),
        window,
        verdict: verdict.to_string(),
        exit_code,
        checks,
        tables,
        error,
        timings: None,
    };
    match result {
        Ok(out) => {
            let v = out.report.verdict();
            base(verdict_name(v), exit_for(v), out.report.checks, out.tables, None)
        }
        Err(CliError::Library(e)) => {
            let kind = variant_name(&e);
            let info = ErrorInfo { kind: kind.clone(), message: e.to_string() };
            match classify(&e) {
                Some(v) => {
                    let mut r = Report::new();
                    match v {
                        Verdict::Inconclusive => r.inconclusive(kind, e.to_string()),
                        _ => r.fail(kind, e.to_string()),
                    }
                    base(verdict_name(v), exit_for(v), r.checks, BTreeMap::new(), Some(info))
                }
                None => base("error", 2, Vec::new(), BTreeMap::new(), Some(info)),
            }
        }
        Err(e) => {
            let kind = match &e {
                CliError::Dsl(d) => match d {
                    crate::dsl::DslError::Parse { .. } => "ParseError",
                    crate::dsl::DslError::DuplicateName { .. } => "DuplicateName",
                    crate::dsl::DslError::UnresolvedReference { .. } => "UnresolvedReference",
                },
                _ => "UsageError",
            };
            base("error", 2, Vec::new(), BTreeMap::new(), Some(ErrorInfo { kind: kind.into(), message: e.to_string() }))
        }
    }
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn to_text(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {} (exit {})", doc.command, doc.verdict, doc.exit_code);
    if let Some(e) = &doc.error {
        let _ = writeln!(out, "error[{}]: {}", e.kind, e.message);
    }
    for c in &doc.checks {
        let mark = match c.verdict {
            Verdict::Pass => "ok  ",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "??  ",
        };
        if c.witness.is_empty() {
            let _ = writeln!(out, "  {mark} {}", c.name);
        } else {
            let _ = writeln!(out, "  {mark} {}: {}", c.name, c.witness);
        }
    }
    for (name, value) in &doc.tables {
        match value {
            Json::Array(rows) if !rows.is_empty() => {
                let _ = writeln!(out, "{name}:");
                for row in rows {
                    let _ = writeln!(out, "  {}", compact(row));
                }
            }
            other => {
                let _ = writeln!(out, "{name}: {}", compact(other));
            }
        }
    }
    if let Some(t) = &doc.timings {
        let _ = writeln!(out, "elapsed: {} ms", t.elapsed_ms);
    }
    out
}

fn compact(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}
