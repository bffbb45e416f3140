//! JSON report layout, schema 1.

use serde::Serialize;

use garside_core::props::{CriterionReport, Separation};
use garside_core::{Basis, Category, Status, Verdict};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub input: Input,
    pub options: Settings,
    pub command: String,
    pub result: CommandResult,
    /// Process exit status implied by the result; not serialized.
    #[serde(skip)]
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Input {
    pub backend: String,
    pub sha256: String,
}

/// Flags that can change the result. `--jobs` never does, so it is left out.
#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub depth: usize,
    pub fuel: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum CommandResult {
    Validate(ValidateResult),
    NormalForm(NormalFormResult),
    Classify(ClassifyResult),
    Boundary(BoundaryJson),
    Check(CheckResult),
    Gc(GcResult),
    Dot(DotResult),
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateResult {
    pub valid: bool,
    pub checks: Vec<AxiomJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomJson {
    pub axiom: String,
    pub verdict: VerdictJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalFormResult {
    pub word: String,
    pub element: String,
    pub normal_form: String,
    pub letters: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairJson {
    pub t: Vec<String>,
    pub d: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticePair {
    pub t: Vec<String>,
    pub d: Vec<String>,
    pub in_boundary: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyResult {
    pub family: Vec<String>,
    pub candidates: u64,
    pub pairs: Vec<LatticePair>,
    pub hasse: Vec<(usize, usize)>,
    pub boundary: BoundaryJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryJson {
    pub t: Vec<String>,
    pub d: Vec<String>,
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub reports: Vec<CriterionJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionJson {
    pub criterion: String,
    pub depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GcResult {
    pub numerator: String,
    pub denominator: String,
    pub separated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separator: Option<String>,
    /// Set when no separator exists at any length.
    pub certain: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DotResult {
    pub target: String,
    pub dot: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub status: &'static str,
    pub basis: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub witness: Vec<WitnessJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub label: &'static str,
    pub element: String,
}

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Unknown => "unknown",
    }
}

pub fn verdict_json(cat: &Category, v: &Verdict) -> VerdictJson {
    let (basis, reason, depth) = match v.basis {
        Basis::Structural(r) => ("structural", Some(r), None),
        Basis::Vacuous => ("vacuous", None, None),
        Basis::Exhaustive => ("exhaustive", None, None),
        Basis::Bounded(d) => ("bounded", None, Some(d)),
        Basis::Unsupported(r) => ("unsupported", Some(r), None),
    };
    VerdictJson {
        status: status_name(v.status),
        basis,
        reason,
        depth,
        witness: v.witness.iter().map(|(l, m)| WitnessJson { label: l, element: cat.render(m) }).collect(),
    }
}

pub fn criterion_json(cat: &Category, r: &CriterionReport) -> CriterionJson {
    CriterionJson {
        criterion: r.criterion.name().to_string(),
        depth: r.depth,
        verdict: Some(verdict_json(cat, &r.verdict)),
        error: None,
    }
}

pub fn gc_json(cat: &Category, num: String, den: String, s: &Separation) -> GcResult {
    match s {
        Separation::Separator(p) => {
            GcResult { numerator: num, denominator: den, separated: true, separator: Some(cat.render(p)), certain: true }
        }
        Separation::NoSeparator { certain, .. } => {
            GcResult { numerator: num, denominator: den, separated: false, separator: None, certain: *certain }
        }
    }
}

fn verdict_text(v: &VerdictJson) -> String {
    let mut s = v.status.to_string();
    match (v.basis, v.reason, v.depth) {
        (b, Some(r), _) => s.push_str(&format!(" ({}: {})", b, r)),
        (b, None, Some(d)) => s.push_str(&format!(" ({} to depth {})", b, d)),
        (b, None, None) => s.push_str(&format!(" ({})", b)),
    }
    if !v.witness.is_empty() {
        let parts: Vec<String> = v.witness.iter().map(|w| format!("{}={}", w.label, w.element)).collect();
        s.push_str(&format!(" [{}]", parts.join(" ")));
    }
    s
}

fn pair_text(t: &[String], d: &[String]) -> String {
    format!("T = {{{}}}, D = {{{}}}", t.join(", "), d.join(", "))
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.result {
            CommandResult::Validate(v) => {
                out.push_str(if v.valid { "valid\n" } else { "invalid\n" });
                for c in &v.checks {
                    out.push_str(&format!("{}: {}\n", c.axiom, verdict_text(&c.verdict)));
                }
            }
            CommandResult::NormalForm(n) => out.push_str(&format!("{}\n", n.normal_form)),
            CommandResult::Classify(c) => {
                out.push_str(&format!("{} pairs from {} candidates\n", c.pairs.len(), c.candidates));
                for (i, p) in c.pairs.iter().enumerate() {
                    let mark = if p.in_boundary { " (boundary)" } else { "" };
                    out.push_str(&format!("{}: {}{}\n", i, pair_text(&p.t, &p.d), mark));
                }
                for (i, j) in &c.hasse {
                    out.push_str(&format!("{} < {}\n", i, j));
                }
                out.push_str(&format!("boundary: {}\n", pair_text(&c.boundary.t, &c.boundary.d)));
            }
            CommandResult::Boundary(b) => {
                let note = if b.exact { "" } else { " (inexact)" };
                out.push_str(&format!("{}{}\n", pair_text(&b.t, &b.d), note));
            }
            CommandResult::Check(c) => {
                for r in &c.reports {
                    match (&r.verdict, &r.error) {
                        (Some(v), _) => out.push_str(&format!("{}: {}\n", r.criterion, verdict_text(v))),
                        (None, Some(e)) => out.push_str(&format!("{}: error: {}\n", r.criterion, e)),
                        (None, None) => {}
                    }
                }
            }
            CommandResult::Gc(g) => match (&g.separator, g.certain) {
                (Some(p), _) => out.push_str(&format!("separator {}\n", p)),
                (None, true) => out.push_str("no separator exists\n"),
                (None, false) => out.push_str(&format!("no separator up to depth {}\n", self.options.depth)),
            },
            CommandResult::Dot(d) => out.push_str(&d.dot),
        }
        out
    }
}
