//! Report building and rendering behind the `tauhh` binary.
//!
//! The JSON document has the top-level keys `input`, `invariants`,
//! `closed_forms`, `notes`, `version` and `timing_ms`. Each entry of
//! `invariants` is `{name, value, routes: [{name, value}], agree}`, with
//! `value` an integer for dimensions and a boolean for yes/no properties.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use tauhh::bqa::{build_algebra, Algebra, Presentation};
use tauhh::closed_forms::{cross_validate_report, monomial_classification};
use tauhh::cohomology::{compute_report, ComputeOptions, Value};
use tauhh::linalg::Field;
use tauhh::quiver::{classify_shape, parse_presentation_with};
use tauhh::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const MISMATCH: i32 = 2;
}

/// Parses `q` or `fp:<p>`.
pub fn parse_field(s: &str) -> Result<Field, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("fp:")
        .ok_or_else(|| format!("unknown field `{s}`, expected `q` or `fp:<p>`"))?;
    let p: u64 = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F_{p}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonValue {
    Int(i64),
    Bool(bool),
}

impl From<Value> for JsonValue {
    fn from(v: Value) -> JsonValue {
        match v {
            Value::Dim(d) => JsonValue::Int(d),
            Value::Flag(b) => JsonValue::Bool(b),
        }
    }
}

impl std::fmt::Display for JsonValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JsonValue::Int(d) => write!(f, "{d}"),
            JsonValue::Bool(b) => f.write_str(if *b { "yes" } else { "no" }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub source: String,
    pub field: String,
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub nilpotency: usize,
    pub dim_algebra: usize,
    pub dim_relation_quotient: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteDoc {
    pub name: String,
    pub value: JsonValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDoc {
    pub name: String,
    pub value: JsonValue,
    pub routes: Vec<RouteDoc>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub family: String,
    pub invariant: String,
    pub closed: String,
    pub general: String,
    pub matches: bool,
}

/// The columns of the triangular monomial table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub z: Vec<String>,
    pub nu: Vec<String>,
    pub excess: i64,
    pub hh1: i64,
    pub tau_hh1: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormsDoc {
    pub families: Vec<String>,
    pub checks: Vec<CheckDoc>,
    pub monomial: Option<MonomialDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub input: InputEcho,
    pub invariants: Vec<InvariantDoc>,
    pub closed_forms: ClosedFormsDoc,
    pub notes: Vec<String>,
    pub version: String,
    pub timing_ms: u64,
}

impl ReportDocument {
    /// Every multi-route row agrees and every closed form matches.
    pub fn ok(&self) -> bool {
        self.invariants.iter().all(|r| r.agree) && self.closed_forms.checks.iter().all(|c| c.matches)
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            exit::OK
        } else {
            exit::MISMATCH
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document is serializable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<ReportDocument> {
        serde_json::from_str(s)
    }

    pub fn render_text(&self) -> String {
        let i = &self.input;
        let mut s = String::new();
        let _ = writeln!(s, "input      {}", i.source);
        let _ = writeln!(
            s,
            "field {}, {} vertices, {} arrows, {} relations, n = {}, dim = {}, dim I/I^2 = {}",
            i.field, i.vertices, i.arrows, i.relations, i.nilpotency, i.dim_algebra, i.dim_relation_quotient
        );
        s.push('\n');
        for row in &self.invariants {
            let routes: Vec<String> = row.routes.iter().map(|r| format!("{}: {}", r.name, r.value)).collect();
            let mark = if row.agree { "" } else { "  MISMATCH" };
            let _ = writeln!(s, "{:<18} {:>5}   [{}]{mark}", row.name, row.value.to_string(), routes.join("; "));
        }
        let cf = &self.closed_forms;
        if let Some(m) = &cf.monomial {
            s.push('\n');
            let _ = writeln!(s, "{:<20} {:<20} {:>3} {:>4} {:>7}", "Z", "(Q1//B)_nu", "e", "HH1", "tauHH1");
            let set = |v: &[String]| if v.is_empty() { "{}".to_string() } else { format!("{{{}}}", v.join(", ")) };
            let _ = writeln!(
                s,
                "{:<20} {:<20} {:>3} {:>4} {:>7}",
                set(&m.z),
                set(&m.nu),
                m.excess,
                m.hh1,
                m.tau_hh1
            );
        }
        s.push('\n');
        if cf.families.is_empty() {
            s.push_str("closed forms: none applies\n");
        } else {
            let _ = writeln!(s, "closed forms: {}", cf.families.join(", "));
            for c in &cf.checks {
                let status = if c.matches { "ok" } else { "MISMATCH" };
                let _ = writeln!(
                    s,
                    "  {:<20} {:<17} closed {:<6} general {:<6} {status}",
                    c.family, c.invariant, c.closed, c.general
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(s, "{}", if self.ok() { "all routes agree" } else { "ROUTE MISMATCH" });
        s
    }
}

/// Settings of the `report` command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportSettings {
    pub field: Option<Field>,
    pub length_cap: usize,
    pub compute: ComputeOptions,
}

impl Default for ReportSettings {
    fn default() -> ReportSettings {
        ReportSettings { field: None, length_cap: tauhh::bqa::DEFAULT_LENGTH_CAP, compute: ComputeOptions::default() }
    }
}

/// A failed report: the message and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::RouteMismatch { .. } => exit::MISMATCH,
            _ => exit::INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Parses `text` and computes the full report for it.
pub fn report_from_text(source: &str, text: &str, settings: &ReportSettings) -> Result<ReportDocument, Failure> {
    let start = Instant::now();
    let p = parse_presentation_with(text, settings.field)?;
    let alg = build_algebra(&p, settings.length_cap)?;
    let mut doc = build_document(source, &p, &alg, &settings.compute)?;
    doc.timing_ms = start.elapsed().as_millis() as u64;
    Ok(doc)
}

/// Reads a presentation file and computes its report.
pub fn report_from_file(path: &std::path::Path, settings: &ReportSettings) -> Result<ReportDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: exit::INPUT, message: format!("cannot read {}: {e}", path.display()) })?;
    report_from_text(&path.display().to_string(), &text, settings)
}

fn build_document(
    source: &str,
    p: &Presentation,
    alg: &Algebra,
    opts: &ComputeOptions,
) -> Result<ReportDocument, Error> {
    let report = compute_report(alg, opts)?;
    let cv = cross_validate_report(alg, &report)?;
    let q = p.quiver();
    let invariants = report
        .rows
        .iter()
        .map(|r| InvariantDoc {
            name: r.name.clone(),
            value: r.value.into(),
            routes: r.routes.iter().map(|x| RouteDoc { name: x.name.clone(), value: x.value.into() }).collect(),
            agree: r.agree(),
        })
        .collect();
    let monomial = if p.is_monomial() && classify_shape(q).acyclic {
        let c = monomial_classification(p)?;
        let dim = |name| report.dim(name).unwrap_or_default();
        Some(MonomialDoc {
            z: c.relations.iter().map(|g| q.path_string(g)).collect(),
            nu: c.nu.iter().map(|x| x.render(q)).collect(),
            excess: dim("excess"),
            hh1: dim("hh1"),
            tau_hh1: dim("tau_hh1"),
        })
    } else {
        None
    };
    let closed_forms = ClosedFormsDoc {
        families: cv.families.iter().map(|f| f.to_string()).collect(),
        checks: cv
            .checks
            .iter()
            .map(|c| CheckDoc {
                family: c.family.to_string(),
                invariant: c.invariant.clone(),
                closed: c.closed.clone(),
                general: c.general.clone(),
                matches: c.matches(),
            })
            .collect(),
        monomial,
    };
    Ok(ReportDocument {
        input: InputEcho {
            source: source.to_string(),
            field: field_name(p.field()),
            vertices: q.num_vertices(),
            arrows: q.num_arrows(),
            relations: p.relations().len(),
            nilpotency: report.nilpotency,
            dim_algebra: report.dim_algebra,
            dim_relation_quotient: report.dim_relation_quotient,
        },
        invariants,
        closed_forms,
        notes: report.notes.clone(),
        version: VERSION.to_string(),
        timing_ms: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q_CA: &str = "field Q\nvertices 1 2 3\narrow a 1 2\narrow b 1 2\narrow c 2 3\nrelations\nc*a\n";

    #[test]
    fn field_flags() {
        assert_eq!(parse_field("q").unwrap(), Field::Rational);
        assert_eq!(parse_field("fp:5").unwrap(), Field::Prime(5));
        assert!(parse_field("fp:4").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn example_document() {
        let doc = report_from_text("inline", Q_CA, &ReportSettings::default()).unwrap();
        assert!(doc.ok());
        let value = |n: &str| doc.invariants.iter().find(|r| r.name == n).unwrap().value;
        assert_eq!(value("excess"), JsonValue::Int(1));
        assert_eq!(value("hh1"), JsonValue::Int(2));
        assert_eq!(value("tau_hh1"), JsonValue::Int(3));
        let m = doc.closed_forms.monomial.as_ref().unwrap();
        assert_eq!((m.z.clone(), m.nu.clone()), (vec!["ca".to_string()], vec!["(a,b)".to_string()]));
        let text = doc.render_text();
        assert!(text.contains("{(a,b)}") && text.contains("all routes agree"));
    }

    #[test]
    fn json_round_trip() {
        let doc = report_from_text("inline", Q_CA, &ReportSettings::default()).unwrap();
        let json = doc.to_json();
        let back = ReportDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn field_override() {
        let dual = "field Q\nvertices v\narrow x v v\nrelations\nx*x\n";
        let settings = ReportSettings { field: Some(Field::Prime(2)), ..ReportSettings::default() };
        let doc = report_from_text("inline", dual, &settings).unwrap();
        let value = |n: &str| doc.invariants.iter().find(|r| r.name == n).unwrap().value;
        assert_eq!(value("hh1"), JsonValue::Int(2));
        assert_eq!(value("excess"), JsonValue::Int(0));
        assert_eq!(doc.input.field, "F_2");
    }

    #[test]
    fn short_relation_is_an_input_error() {
        let bad = "field Q\nvertices 1 2\narrow a 1 2\nrelations\na\n";
        let err = report_from_text("inline", bad, &ReportSettings::default()).unwrap_err();
        assert_eq!(err.code, exit::INPUT);
        assert!(err.message.contains("relation violates I ⊆ F²"), "{}", err.message);
    }
}
