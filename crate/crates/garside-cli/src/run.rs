//! Command dispatch.

use std::thread;

use sha2::{Digest, Sha256};

use garside_core::cat::validate_category;
use garside_core::garside::standard_family;
use garside_core::invariants::{assemble_lattice, boundary_pair, candidate_count, enumerate_range, Pair};
use garside_core::props::{self, Criterion};
use garside_core::{Category, CategorySpec, Error, GarsideFamily, Morphism};

use crate::dot;
use crate::format::{parse_spec, ParseError};
use crate::report::*;

pub const DEFAULT_DEPTH: usize = 4;
pub const DEFAULT_FUEL: usize = 10_000;
pub const ENUMERATION_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub depth: usize,
    pub fuel: usize,
    pub jobs: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { depth: DEFAULT_DEPTH, fuel: DEFAULT_FUEL, jobs: 1, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotTarget {
    Lattice,
    Skeleton,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    NormalForm(String),
    Classify,
    Boundary,
    /// A criterion name or `all`.
    Check(String),
    /// `u/v` for `u v⁻¹`; a bare word means `v = 1`.
    Gc(String),
    ExportDot(DotTarget),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::NormalForm(_) => "normal-form",
            Command::Classify => "classify",
            Command::Boundary => "boundary",
            Command::Check(_) => "check",
            Command::Gc(_) => "gc",
            Command::ExportDot(_) => "export-dot",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{op}: {source}")]
    Core {
        op: &'static str,
        #[source]
        source: Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for exhausted fuel or capacity, 1 for anything wrong with the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { source, .. } if source.is_exhaustion() => 2,
            _ => 1,
        }
    }
}

fn core(op: &'static str) -> impl FnOnce(Error) -> CliError {
    move |source| CliError::Core { op, source }
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{:02x}", b)).collect()
}

/// Parses `text`, runs `command` and assembles the report.
pub fn run(command: &Command, text: &str, opts: &Options) -> Result<Report, CliError> {
    let spec = parse_spec(text)?;
    let (result, exit_code) = match command {
        Command::Validate => validate(&spec)?,
        _ => {
            let cat = Category::new(&spec).map_err(core("validate_category"))?.with_fuel(opts.fuel);
            (dispatch(command, &cat, opts)?, 0)
        }
    };
    let exit_code = match &result {
        CommandResult::Check(c) if c.reports.iter().any(|r| r.error.is_some()) => 2,
        _ => exit_code,
    };
    Ok(Report {
        schema: SCHEMA,
        tool: format!("garside {}", env!("CARGO_PKG_VERSION")),
        input: Input { backend: spec.backend_name().to_string(), sha256: digest(text) },
        options: Settings { depth: opts.depth, fuel: opts.fuel, seed: opts.seed },
        command: command.name().to_string(),
        result,
        exit_code,
    })
}

fn validate(spec: &CategorySpec) -> Result<(CommandResult, i32), CliError> {
    let (cat, report) = validate_category(spec).map_err(core("validate_category"))?;
    let checks = report
        .checks
        .iter()
        .map(|c| AxiomJson { axiom: c.axiom.to_string(), verdict: verdict_json(&cat, &c.verdict) })
        .collect();
    let valid = report.is_valid();
    Ok((CommandResult::Validate(ValidateResult { valid, checks }), if valid { 0 } else { 1 }))
}

fn family(cat: &Category) -> Result<GarsideFamily<'_>, CliError> {
    standard_family(cat).map_err(core("standard_family"))
}

fn dispatch(command: &Command, cat: &Category, opts: &Options) -> Result<CommandResult, CliError> {
    match command {
        Command::Validate => unreachable!("handled before the category is built"),
        Command::NormalForm(word) => {
            let m = cat.parse_word(word).map_err(core("parse_word"))?;
            let fam = family(cat)?;
            let nf = fam.normal_decompose(&m).map_err(core("normal_decompose"))?;
            Ok(CommandResult::NormalForm(NormalFormResult {
                word: word.clone(),
                element: cat.render(&m),
                normal_form: fam.render_word(&nf),
                letters: nf.letters.iter().map(|&s| fam.render_letter(s)).collect(),
            }))
        }
        Command::Classify => {
            let fam = family(cat)?;
            let (candidates, lat) = classify(&fam, opts)?;
            let pairs = lat
                .pairs
                .iter()
                .zip(&lat.in_boundary)
                .map(|(p, &b)| {
                    let j = pair_json(&fam, &p.pair);
                    LatticePair { t: j.t, d: j.d, in_boundary: b }
                })
                .collect();
            Ok(CommandResult::Classify(ClassifyResult {
                family: fam.letters().iter().map(|m| cat.render(m)).collect(),
                candidates,
                pairs,
                hasse: lat.hasse.clone(),
                boundary: boundary_json(&fam, &lat.boundary.pair, lat.boundary.exact),
            }))
        }
        Command::Boundary => {
            let fam = family(cat)?;
            let b = boundary_pair(&fam, opts.depth).map_err(core("boundary_pair"))?;
            Ok(CommandResult::Boundary(boundary_json(&fam, &b.pair, b.exact)))
        }
        Command::Check(which) => {
            let criteria: Vec<Criterion> = if which == "all" {
                Criterion::ALL.to_vec()
            } else {
                vec![Criterion::from_name(which).ok_or_else(|| {
                    let names: Vec<&str> = Criterion::ALL.iter().map(|c| c.name()).collect();
                    CliError::Usage(format!("unknown criterion '{}'; expected all or one of {}", which, names.join(", ")))
                })?]
            };
            let results = parallel_map(&criteria, opts.jobs, |&c| props::check(cat, c, opts.depth));
            let mut reports = Vec::new();
            for (c, r) in criteria.iter().zip(results) {
                match r {
                    Ok(r) => reports.push(criterion_json(cat, &r)),
                    Err(e) if which == "all" => reports.push(CriterionJson {
                        criterion: c.name().to_string(),
                        depth: opts.depth,
                        verdict: None,
                        error: Some(e.to_string()),
                    }),
                    Err(e) => return Err(core("check")(e)),
                }
            }
            Ok(CommandResult::Check(CheckResult { reports }))
        }
        Command::Gc(fraction) => {
            let (num, den) = fraction.split_once('/').unwrap_or((fraction.as_str(), "1"));
            let parse = |w: &str| -> Result<Morphism, CliError> {
                let w = w.trim();
                if w.is_empty() {
                    return Ok(Morphism::identity(0));
                }
                cat.parse_word(w).map_err(core("parse_word"))
            };
            let (u, v) = (parse(num)?, parse(den)?);
            let s = props::gc_probe(cat, &u, &v, opts.depth).map_err(core("gc_probe"))?;
            Ok(CommandResult::Gc(gc_json(cat, cat.render(&u), cat.render(&v), &s)))
        }
        Command::ExportDot(DotTarget::Skeleton) => {
            Ok(CommandResult::Dot(DotResult { target: "skeleton".into(), dot: dot::skeleton(cat) }))
        }
        Command::ExportDot(DotTarget::Lattice) => {
            let fam = family(cat)?;
            let (_, lat) = classify(&fam, opts)?;
            Ok(CommandResult::Dot(DotResult { target: "lattice".into(), dot: dot::lattice(&fam, &lat) }))
        }
    }
}

/// Splits the candidate masks into `jobs` contiguous ranges.
fn classify(
    fam: &GarsideFamily<'_>,
    opts: &Options,
) -> Result<(u64, garside_core::invariants::SubspaceLattice), CliError> {
    let n = candidate_count(fam).map_err(core("enumerate_pairs"))?;
    if n > ENUMERATION_CAP {
        return Err(CliError::Core {
            op: "enumerate_pairs",
            source: Error::Capacity(format!("{} candidate pairs exceed the cap of {}", n, ENUMERATION_CAP)),
        });
    }
    let jobs = opts.jobs.max(1) as u64;
    let chunk = n.div_ceil(jobs).max(1);
    let ranges: Vec<(u64, u64)> = (0..jobs).map(|i| (i * chunk, ((i + 1) * chunk).min(n))).filter(|r| r.0 < r.1).collect();
    let mut pairs = Vec::new();
    for part in parallel_map(&ranges, opts.jobs, |&(lo, hi)| enumerate_range(fam, lo, hi)) {
        pairs.extend(part.map_err(core("enumerate_pairs"))?);
    }
    let lat = assemble_lattice(fam, pairs, opts.depth).map_err(core("enumerate_pairs"))?;
    Ok((n, lat))
}

/// Maps over `items` on up to `jobs` threads; results keep input order.
fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let f = &f;
    let mut slots: Vec<Option<R>> = items.iter().map(|_| None).collect();
    thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                s.spawn(move || {
                    items.iter().enumerate().skip(w).step_by(jobs).map(|(i, x)| (i, f(x))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every slot filled")).collect()
}

fn pair_json(fam: &GarsideFamily<'_>, p: &Pair) -> PairJson {
    PairJson { t: fam.render_set(&p.t), d: p.d.iter().map(|&v| fam.cat().objects()[v].clone()).collect() }
}

fn boundary_json(fam: &GarsideFamily<'_>, p: &Pair, exact: bool) -> BoundaryJson {
    let j = pair_json(fam, p);
    BoundaryJson { t: j.t, d: j.d, exact }
}
