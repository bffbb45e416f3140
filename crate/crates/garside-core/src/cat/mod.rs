//! A uniform interface to left cancellative small categories.
//!
//! Elements are [`Morphism`] values holding a canonical word over atoms, so
//! equality of elements is equality of values. Composition follows the
//! convention that `c·d` is defined iff the domain of `c` is the target of `d`.

mod coxeter;
mod explicit;
mod paths;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::spec::CategorySpec;
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

pub(crate) use coxeter::Coxeter;
pub use coxeter::Reversal;
pub(crate) use explicit::Table;
pub(crate) use paths::Paths;

pub type ObjId = usize;
pub type AtomId = usize;

/// Upper bound on the number of elements any enumeration may produce.
pub const BALL_CAP: usize = 2_000_000;
/// Default step budget for word reversing.
pub const DEFAULT_FUEL: usize = 10_000;

/// An element of a category: a canonical word with its target and domain.
///
/// The empty word is the identity at `dst == src`. For finite tables each
/// non-identity element is a one-letter word naming the element itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub dst: ObjId,
    pub src: ObjId,
    pub word: Vec<AtomId>,
}

impl Morphism {
    pub fn identity(v: ObjId) -> Self {
        Morphism { dst: v, src: v, word: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendKind {
    Explicit,
    GraphPath,
    KGraph,
    Artin,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Explicit => "explicit",
            BackendKind::GraphPath => "graphpath",
            BackendKind::KGraph => "kgraph",
            BackendKind::Artin => "artin",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
    /// Degree color, starting at 1. Always 1 outside k-graphs.
    pub color: usize,
}

#[derive(Debug, Clone)]
pub(crate) enum Backend {
    Explicit(Table),
    Paths(Paths),
    Artin(Coxeter),
}

#[derive(Debug, Clone)]
pub struct Category {
    kind: BackendKind,
    objects: Vec<String>,
    atoms: Vec<Atom>,
    pub(crate) backend: Backend,
    fuel: usize,
}

/// One checked axiom.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| !c.verdict.is_fails())
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.verdict.is_fails())
    }
}

/// Builds the category and checks its axioms.
///
/// Malformed payloads are reported as errors; axiom violations are reported
/// as failing checks in the returned report.
pub fn validate_category(spec: &CategorySpec) -> Result<(Category, ValidationReport)> {
    let cat = Category::build_unchecked(spec)?;
    let report = cat.validate();
    Ok((cat, report))
}

impl Category {
    /// Builds and validates. Any failing axiom is turned into an error.
    pub fn new(spec: &CategorySpec) -> Result<Self> {
        let (cat, report) = validate_category(spec)?;
        if let Some(bad) = report.first_failure() {
            let names: Vec<String> =
                bad.verdict.witness.iter().map(|(l, m)| format!("{}={}", l, cat.render(m))).collect();
            return Err(Error::Invalid(format!("{} fails at ({})", bad.axiom, names.join(", "))));
        }
        Ok(cat)
    }

    pub fn build_unchecked(spec: &CategorySpec) -> Result<Self> {
        match spec {
            CategorySpec::Explicit(s) => explicit::build(s),
            CategorySpec::GraphPath(s) => paths::build(s, false),
            CategorySpec::KGraph(s) => paths::build(s, true),
            CategorySpec::Artin(s) => coxeter::build(s),
        }
    }

    pub(crate) fn from_parts(kind: BackendKind, objects: Vec<String>, atoms: Vec<Atom>, backend: Backend) -> Self {
        Category { kind, objects, atoms, backend, fuel: DEFAULT_FUEL }
    }

    pub fn validate(&self) -> ValidationReport {
        let checks = match &self.backend {
            Backend::Explicit(t) => t.validate(self),
            Backend::Paths(p) => p.validate(self),
            Backend::Artin(c) => c.validate(self),
        };
        ValidationReport { checks }
    }

    /// Sets the step budget used by reversing.
    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn fuel(&self) -> usize {
        self.fuel
    }

    pub fn kind(&self) -> BackendKind {
        self.kind
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn atom_id(&self, name: &str) -> Option<AtomId> {
        self.atoms.iter().position(|a| a.name == name)
    }

    pub fn atom(&self, a: AtomId) -> Morphism {
        match &self.backend {
            Backend::Explicit(t) => t.element(t.n_obj + a),
            _ => Morphism { dst: self.atoms[a].dst, src: self.atoms[a].src, word: vec![a] },
        }
    }

    pub fn identity(&self, v: ObjId) -> Morphism {
        Morphism::identity(v)
    }

    /// Number of colors of the degree functor (1 outside k-graphs).
    pub fn rank(&self) -> usize {
        match &self.backend {
            Backend::Paths(p) => p.k,
            _ => 1,
        }
    }

    /// Canonical element denoted by a composable word of atoms read left to right.
    pub fn word(&self, atoms: &[AtomId]) -> Result<Morphism> {
        let Some(&first) = atoms.first() else {
            return Err(Error::Argument("empty word has no object; use identity".into()));
        };
        let mut acc = self.atom(first);
        for &a in &atoms[1..] {
            acc = self.compose(&acc, &self.atom(a))?;
        }
        Ok(acc)
    }

    pub fn compose(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        if a.src != b.dst {
            return Err(Error::Composability { left: self.render(a), right: self.render(b) });
        }
        if b.is_identity() {
            return Ok(a.clone());
        }
        if a.is_identity() {
            return Ok(b.clone());
        }
        match &self.backend {
            Backend::Explicit(t) => t.compose(a, b).ok_or_else(|| {
                Error::Invalid(format!("composition {} {} is not defined", self.render(a), self.render(b)))
            }),
            Backend::Paths(p) => {
                let mut w = a.word.clone();
                w.extend_from_slice(&b.word);
                Ok(Morphism { dst: a.dst, src: b.src, word: p.canonical(self, w) })
            }
            Backend::Artin(c) => {
                let mut w = a.word.clone();
                w.extend_from_slice(&b.word);
                Ok(Morphism { dst: a.dst, src: b.src, word: c.canonical(&w) })
            }
        }
    }

    /// Product of a sequence of composable elements.
    pub fn product<'a>(&self, target: ObjId, parts: impl IntoIterator<Item = &'a Morphism>) -> Result<Morphism> {
        let mut acc = Morphism::identity(target);
        for p in parts {
            acc = self.compose(&acc, p)?;
        }
        Ok(acc)
    }

    pub fn is_unit(&self, a: &Morphism) -> bool {
        match &self.backend {
            Backend::Explicit(t) => t.is_unit(a),
            _ => a.is_identity(),
        }
    }

    /// Whether the only invertible elements are identities.
    pub fn has_trivial_units(&self) -> bool {
        match &self.backend {
            Backend::Explicit(t) => t.units_are_trivial(),
            _ => true,
        }
    }

    /// Whether every loop unit `u` at a vertex is that vertex.
    pub fn has_trivial_loop_units(&self) -> bool {
        match &self.backend {
            Backend::Explicit(t) => t.loop_units_are_trivial(),
            _ => true,
        }
    }

    /// Inverse of a unit.
    pub fn inverse(&self, u: &Morphism) -> Option<Morphism> {
        match &self.backend {
            Backend::Explicit(t) => t.inverse(u),
            _ => u.is_identity().then(|| u.clone()),
        }
    }

    /// Chosen representative of the class `a𝔠*`.
    pub fn class_rep(&self, a: &Morphism) -> Morphism {
        match &self.backend {
            Backend::Explicit(t) => t.class_rep(a),
            _ => a.clone(),
        }
    }

    /// Whether `a𝔠* = b𝔠*`.
    pub fn unit_equivalent(&self, a: &Morphism, b: &Morphism) -> bool {
        self.class_rep(a) == self.class_rep(b)
    }

    /// Decides `a ⪯ b`, i.e. `b ∈ a𝔠`.
    pub fn left_divides(&self, a: &Morphism, b: &Morphism) -> bool {
        self.quotient(a, b).is_some()
    }

    /// The unique `x` with `a·x = b`, if any.
    pub fn quotient(&self, a: &Morphism, b: &Morphism) -> Option<Morphism> {
        if a.dst != b.dst {
            return None;
        }
        if a.is_identity() {
            return Some(b.clone());
        }
        match &self.backend {
            Backend::Explicit(t) => t.quotient(a, b),
            Backend::Paths(p) => p.quotient(self, a, b),
            Backend::Artin(c) => c.quotient(a, b),
        }
    }

    /// One representative per unit class of the minimal common right multiples.
    ///
    /// An empty result certifies `a𝔠 ∩ b𝔠 = ∅`.
    pub fn mcm_set(&self, a: &Morphism, b: &Morphism) -> Result<Vec<Morphism>> {
        if a.dst != b.dst {
            return Err(Error::Argument(format!(
                "mcm needs a common target, got {} and {}",
                self.render(a),
                self.render(b)
            )));
        }
        if self.left_divides(a, b) {
            return Ok(vec![self.class_rep(b)]);
        }
        if self.left_divides(b, a) {
            return Ok(vec![self.class_rep(a)]);
        }
        match &self.backend {
            Backend::Explicit(t) => Ok(t.mcm_set(a, b)),
            Backend::Paths(p) => Ok(p.mcm_set(self, a, b)),
            Backend::Artin(c) => match c.reverse(&a.word, &b.word, self.fuel) {
                Reversal::Complement { v_tail, .. } => {
                    let mut w = a.word.clone();
                    w.extend(v_tail);
                    Ok(vec![Morphism { dst: a.dst, src: a.src, word: c.canonical(&w) }])
                }
                Reversal::Empty => Ok(Vec::new()),
                Reversal::OutOfFuel { steps } => Err(Error::OutOfFuel(steps)),
            },
        }
    }

    /// Whether `a𝔠 ∩ b𝔠 = ∅`.
    pub fn disjoint(&self, a: &Morphism, b: &Morphism) -> Result<bool> {
        if a.dst != b.dst {
            return Ok(true);
        }
        Ok(self.mcm_set(a, b)?.is_empty())
    }

    /// Number of atoms in the canonical word.
    pub fn atom_len(&self, a: &Morphism) -> usize {
        a.word.len()
    }

    /// Degree in ℕ^k for path categories.
    pub fn degree(&self, a: &Morphism) -> Option<Vec<usize>> {
        match &self.backend {
            Backend::Paths(p) => Some(p.degree(self, &a.word)),
            _ => None,
        }
    }

    /// All elements with target `v` of atom length at most `radius`, sorted.
    pub fn ball(&self, v: ObjId, radius: usize) -> Result<Vec<Morphism>> {
        let mut out = match &self.backend {
            Backend::Explicit(t) => t.ball(v, radius),
            Backend::Paths(p) => p.ball(self, v, radius)?,
            Backend::Artin(c) => c.ball(v, radius)?,
        };
        out.sort_by(|x, y| (x.word.len(), &x.word, x.src).cmp(&(y.word.len(), &y.word, y.src)));
        Ok(out)
    }

    /// Elements with target `v`, up to unit equivalence, at atom length ≤ radius.
    pub fn ball_classes(&self, v: ObjId, radius: usize) -> Result<Vec<Morphism>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for m in self.ball(v, radius)? {
            let r = self.class_rep(&m);
            if seen.insert(r.clone()) {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Whether `c x = d x` forces `c = d`.
    pub fn is_right_cancellative(&self) -> bool {
        match &self.backend {
            Backend::Explicit(t) => t.right_cancellation_witness().is_none(),
            _ => true,
        }
    }

    /// Vertices `u` with a morphism from `u` to `w`, i.e. `w𝔠u ≠ ∅`.
    pub fn sources_reaching(&self, w: ObjId) -> BTreeSet<ObjId> {
        let mut seen = BTreeSet::new();
        seen.insert(w);
        let mut stack = vec![w];
        while let Some(x) = stack.pop() {
            for a in self.atoms.iter().filter(|a| a.dst == x) {
                if seen.insert(a.src) {
                    stack.push(a.src);
                }
            }
        }
        seen
    }

    /// Checks that intersections of principal cones are covered by the mcm set.
    pub fn finite_alignment_probe(&self, depth: usize) -> Result<Verdict> {
        match &self.backend {
            Backend::Paths(_) => Ok(Verdict::holds(Basis::Structural(
                "finite skeleton: each degree join has finitely many factorizations",
            ))),
            Backend::Artin(_) => Ok(Verdict::holds(Basis::Structural(
                "right reversing is complete for Artin-Tits presentations",
            ))),
            Backend::Explicit(_) => {
                for v in 0..self.num_objects() {
                    let ball = self.ball(v, depth.max(1))?;
                    for a in &ball {
                        for b in &ball {
                            let mcms = self.mcm_set(a, b)?;
                            for m in &ball {
                                if self.left_divides(a, m)
                                    && self.left_divides(b, m)
                                    && !mcms.iter().any(|c| self.left_divides(c, m))
                                {
                                    return Ok(Verdict::fails(
                                        Basis::Exhaustive,
                                        vec![("a", a.clone()), ("b", b.clone()), ("uncovered", m.clone())],
                                    ));
                                }
                            }
                        }
                    }
                }
                Ok(Verdict::holds(Basis::Exhaustive))
            }
        }
    }

    pub fn render(&self, a: &Morphism) -> String {
        if a.is_identity() {
            return self.render_identity(a.dst);
        }
        let single = self.atoms.iter().all(|x| x.name.chars().count() == 1);
        let names: Vec<&str> = a.word.iter().map(|&x| self.atoms[x].name.as_str()).collect();
        if single {
            names.concat()
        } else {
            names.join(" ")
        }
    }

    pub fn render_identity(&self, v: ObjId) -> String {
        if self.objects.len() == 1 {
            "1".to_string()
        } else {
            format!("1_{}", self.objects[v])
        }
    }

    /// Parses a word of atom names by longest match. `.` and spaces separate,
    /// `1` or `1_<vertex>` denote identities.
    pub fn parse_word(&self, text: &str) -> Result<Morphism> {
        let t = text.trim();
        if t == "1" || t.is_empty() {
            if self.objects.len() == 1 {
                return Ok(Morphism::identity(0));
            }
            return Err(Error::Argument("identity needs a vertex: write 1_<vertex>".into()));
        }
        if let Some(name) = t.strip_prefix("1_") {
            if let Some(v) = self.object_id(name) {
                return Ok(Morphism::identity(v));
            }
        }
        let mut names: Vec<(usize, &str)> = self.atoms.iter().enumerate().map(|(i, a)| (i, a.name.as_str())).collect();
        names.sort_by(|x, y| y.1.len().cmp(&x.1.len()).then(x.0.cmp(&y.0)));
        let mut atoms = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let trimmed = rest.trim_start_matches(|c: char| c == '.' || c.is_whitespace() || c == '·');
            if trimmed.is_empty() {
                break;
            }
            rest = trimmed;
            let Some(&(id, name)) = names.iter().find(|(_, n)| rest.starts_with(n)) else {
                return Err(Error::Argument(format!("unknown atom at '{}'", rest)));
            };
            atoms.push(id);
            rest = &rest[name.len()..];
        }
        self.word(&atoms)
    }

    /// Map from atom name to id, for callers building words by name.
    pub fn atom_names(&self) -> BTreeMap<&str, AtomId> {
        self.atoms.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect()
    }
}

impl Category {
    /// Vertices `u` with `v𝔠u ≠ ∅`.
    pub fn reachable_from(&self, v: ObjId) -> BTreeSet<ObjId> {
        let mut seen = BTreeSet::new();
        seen.insert(v);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for a in self.atoms.iter().filter(|a| a.dst == x) {
                if seen.insert(a.src) {
                    stack.push(a.src);
                }
            }
        }
        seen
    }

    /// Whether any two principal cones with target `v` intersect, when this
    /// can be settled structurally. `None` means no certificate either way.
    pub fn cones_always_meet(&self, v: ObjId) -> Option<bool> {
        match &self.backend {
            Backend::Explicit(_) => {
                let ball = self.ball(v, 1).ok()?;
                for a in &ball {
                    for b in &ball {
                        if self.mcm_set(a, b).ok()?.is_empty() {
                            return Some(false);
                        }
                    }
                }
                Some(true)
            }
            Backend::Paths(p) => {
                let mut all_single = true;
                for u in self.reachable_from(v) {
                    let mut per_color = vec![0usize; p.k];
                    for &e in p.edges_into(u) {
                        per_color[p.color(e) - 1] += 1;
                    }
                    if per_color.iter().any(|&n| n >= 2) {
                        return Some(false);
                    }
                    if p.k > 1 && per_color.contains(&0) {
                        all_single = false;
                    }
                }
                if all_single {
                    Some(true)
                } else {
                    None
                }
            }
            Backend::Artin(c) => {
                for a in 0..c.n {
                    for b in 0..c.n {
                        if c.m(a, b).is_none() {
                            return Some(false);
                        }
                    }
                }
                match self.lcm_of_atoms() {
                    Ok(Some(_)) => Some(true),
                    _ => None,
                }
            }
        }
    }

    /// Least common multiple of all atoms of an Artin-Tits monoid, by iterated
    /// reversing. `Ok(None)` certifies that it does not exist.
    pub fn lcm_of_atoms(&self) -> Result<Option<Morphism>> {
        let Backend::Artin(c) = &self.backend else {
            return Err(Error::Unsupported("lcm of atoms needs an Artin-Tits backend".into()));
        };
        let mut delta: Vec<AtomId> = Vec::new();
        for a in 0..c.n {
            match c.reverse(&delta, &[a], self.fuel) {
                Reversal::Complement { v_tail, .. } => {
                    delta.extend(v_tail);
                    delta = c.canonical(&delta);
                }
                Reversal::Empty => return Ok(None),
                Reversal::OutOfFuel { steps } => return Err(Error::OutOfFuel(steps)),
            }
        }
        Ok(Some(Morphism { dst: 0, src: 0, word: delta }))
    }
}

#[cfg(test)]
mod tests;
