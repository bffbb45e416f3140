//! Finite categories given by a multiplication table.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Atom, AxiomCheck, Backend, BackendKind, Category, Morphism, ObjId};
use crate::spec::ExplicitSpec;
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

/// Elements `0..n_obj` are identities; element `n_obj + i` is declared morphism `i`.
#[derive(Debug, Clone)]
pub(crate) struct Table {
    pub n_obj: usize,
    src: Vec<ObjId>,
    dst: Vec<ObjId>,
    /// `comp[f][g] = f·g` where defined.
    comp: Vec<Vec<Option<usize>>>,
    /// Composable pairs declared more than once with different results.
    conflicts: Vec<(usize, usize)>,
    inverse: Vec<Option<usize>>,
    rep: Vec<usize>,
}

pub(crate) fn build(spec: &ExplicitSpec) -> Result<Category> {
    if spec.objects.is_empty() {
        return Err(Error::structural("objects", "the empty category is not allowed"));
    }
    let mut names: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, o) in spec.objects.iter().enumerate() {
        if names.insert(o.as_str(), i).is_some() {
            return Err(Error::structural(format!("vertex {}", o), "duplicate name"));
        }
    }
    let n_obj = spec.objects.len();
    let mut src: Vec<ObjId> = (0..n_obj).collect();
    let mut dst: Vec<ObjId> = (0..n_obj).collect();
    let mut atoms = Vec::new();
    for (i, m) in spec.mors.iter().enumerate() {
        let field = format!("mor {}", m.name);
        let s = *names.get(m.src.as_str()).ok_or_else(|| Error::structural(&field, format!("unknown object {}", m.src)))?;
        let d = *names.get(m.dst.as_str()).ok_or_else(|| Error::structural(&field, format!("unknown object {}", m.dst)))?;
        if names.insert(m.name.as_str(), n_obj + i).is_some() {
            return Err(Error::structural(field, "duplicate name"));
        }
        if s >= n_obj || d >= n_obj {
            return Err(Error::structural(field, "endpoints must be objects"));
        }
        src.push(s);
        dst.push(d);
        atoms.push(Atom { name: m.name.clone(), src: s, dst: d, color: 1 });
    }
    let n = src.len();
    let mut comp = vec![vec![None; n]; n];
    for f in 0..n {
        for g in 0..n {
            if src[f] == dst[g] {
                if f < n_obj {
                    comp[f][g] = Some(g);
                } else if g < n_obj {
                    comp[f][g] = Some(f);
                }
            }
        }
    }
    let mut conflicts = Vec::new();
    for c in &spec.comps {
        let field = format!("comp {} {}", c.f, c.g);
        let look = |x: &str| names.get(x).copied().ok_or_else(|| Error::structural(&field, format!("unknown name {}", x)));
        let (f, g, h) = (look(&c.f)?, look(&c.g)?, look(&c.h)?);
        if f < n_obj || g < n_obj {
            return Err(Error::structural(field, "identities compose implicitly; declare only morphisms"));
        }
        if src[f] != dst[g] {
            return Err(Error::structural(field, "domain of the first factor must be the target of the second"));
        }
        if dst[h] != dst[f] || src[h] != src[g] {
            return Err(Error::structural(field, format!("result {} has the wrong endpoints", c.h)));
        }
        match comp[f][g] {
            Some(old) if old != h => conflicts.push((f, g)),
            _ => comp[f][g] = Some(h),
        }
    }
    let mut table = Table { n_obj, src, dst, comp, conflicts, inverse: vec![None; n], rep: (0..n).collect() };
    table.compute_units();
    Ok(Category::from_parts(BackendKind::Explicit, spec.objects.clone(), atoms, Backend::Explicit(table)))
}

impl Table {
    fn n(&self) -> usize {
        self.src.len()
    }

    fn mul(&self, f: usize, g: usize) -> Option<usize> {
        self.comp[f][g]
    }

    fn compute_units(&mut self) {
        let n = self.n();
        for u in 0..n {
            for v in 0..n {
                if self.mul(u, v) == Some(self.dst[u]) && self.mul(v, u) == Some(self.src[u]) {
                    self.inverse[u] = Some(v);
                    break;
                }
            }
        }
        for a in 0..n {
            let mut best = a;
            for u in 0..n {
                if self.inverse[u].is_some() && self.dst[u] == self.src[a] {
                    if let Some(b) = self.mul(a, u) {
                        best = best.min(b);
                    }
                }
            }
            self.rep[a] = best;
        }
    }

    pub fn element(&self, e: usize) -> Morphism {
        if e < self.n_obj {
            Morphism::identity(e)
        } else {
            Morphism { dst: self.dst[e], src: self.src[e], word: vec![e - self.n_obj] }
        }
    }

    pub fn index(&self, m: &Morphism) -> usize {
        match m.word.first() {
            None => m.dst,
            Some(&a) => self.n_obj + a,
        }
    }

    pub fn compose(&self, a: &Morphism, b: &Morphism) -> Option<Morphism> {
        self.mul(self.index(a), self.index(b)).map(|e| self.element(e))
    }

    pub fn is_unit(&self, a: &Morphism) -> bool {
        self.inverse[self.index(a)].is_some()
    }

    pub fn inverse(&self, a: &Morphism) -> Option<Morphism> {
        self.inverse[self.index(a)].map(|e| self.element(e))
    }

    pub fn units_are_trivial(&self) -> bool {
        (self.n_obj..self.n()).all(|e| self.inverse[e].is_none())
    }

    pub fn loop_units_are_trivial(&self) -> bool {
        (self.n_obj..self.n()).all(|e| self.inverse[e].is_none() || self.src[e] != self.dst[e])
    }

    pub fn class_rep(&self, a: &Morphism) -> Morphism {
        self.element(self.rep[self.index(a)])
    }

    pub fn quotient(&self, a: &Morphism, b: &Morphism) -> Option<Morphism> {
        let (ia, ib) = (self.index(a), self.index(b));
        (0..self.n()).find(|&x| self.mul(ia, x) == Some(ib)).map(|x| self.element(x))
    }

    fn divides(&self, a: usize, b: usize) -> bool {
        (0..self.n()).any(|x| self.mul(a, x) == Some(b))
    }

    pub fn mcm_set(&self, a: &Morphism, b: &Morphism) -> Vec<Morphism> {
        let (ia, ib) = (self.index(a), self.index(b));
        let common: Vec<usize> =
            (0..self.n()).filter(|&m| self.dst[m] == a.dst && self.divides(ia, m) && self.divides(ib, m)).collect();
        let mut out: Vec<usize> = Vec::new();
        for &m in &common {
            let minimal = common.iter().all(|&c| !self.divides(c, m) || self.divides(m, c));
            if minimal && !out.contains(&self.rep[m]) {
                out.push(self.rep[m]);
            }
        }
        out.sort_unstable();
        out.into_iter().map(|e| self.element(e)).collect()
    }

    pub fn ball(&self, v: ObjId, radius: usize) -> Vec<Morphism> {
        if radius == 0 {
            return vec![Morphism::identity(v)];
        }
        (0..self.n()).filter(|&e| self.dst[e] == v).map(|e| self.element(e)).collect()
    }

    pub fn right_cancellation_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n();
        for c in 0..n {
            for d in 0..n {
                if c == d || self.src[c] != self.src[d] || self.dst[c] != self.dst[d] {
                    continue;
                }
                for x in 0..n {
                    if let (Some(p), Some(q)) = (self.mul(c, x), self.mul(d, x)) {
                        if p == q {
                            return Some((c, d, x));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn validate(&self, _cat: &Category) -> Vec<AxiomCheck> {
        let n = self.n();
        let el = |e: usize| self.element(e);
        let mut checks = Vec::new();
        let conflicts = match self.conflicts.first() {
            Some(&(f, g)) => Verdict::fails(Basis::Exhaustive, vec![("f", el(f)), ("g", el(g))]),
            None => Verdict::holds(Basis::Exhaustive),
        };
        checks.push(AxiomCheck { axiom: "well-defined composition", verdict: conflicts });
        let mut missing = None;
        'outer: for f in 0..n {
            for g in 0..n {
                if self.src[f] == self.dst[g] && self.mul(f, g).is_none() {
                    missing = Some((f, g));
                    break 'outer;
                }
            }
        }
        let total = missing.is_none();
        checks.push(AxiomCheck {
            axiom: "totality",
            verdict: match missing {
                Some((f, g)) => Verdict::fails(Basis::Exhaustive, vec![("f", el(f)), ("g", el(g))]),
                None => Verdict::holds(Basis::Exhaustive),
            },
        });
        checks.push(AxiomCheck { axiom: "identities", verdict: Verdict::holds(Basis::Structural("identities are implicit")) });
        if !total {
            let skip = Verdict::unsupported("composition table is partial");
            checks.push(AxiomCheck { axiom: "associativity", verdict: skip.clone() });
            checks.push(AxiomCheck { axiom: "left cancellation", verdict: skip });
            return checks;
        }
        let mut assoc = Verdict::holds(Basis::Exhaustive);
        'assoc: for f in 0..n {
            for g in 0..n {
                let Some(fg) = self.mul(f, g) else { continue };
                for h in 0..n {
                    let Some(gh) = self.mul(g, h) else { continue };
                    if self.mul(fg, h) != self.mul(f, gh) {
                        assoc = Verdict::fails(Basis::Exhaustive, vec![("f", el(f)), ("g", el(g)), ("h", el(h))]);
                        break 'assoc;
                    }
                }
            }
        }
        checks.push(AxiomCheck { axiom: "associativity", verdict: assoc });
        let mut cancel = Verdict::holds(Basis::Exhaustive);
        'cancel: for c in 0..n {
            for x in 0..n {
                for y in (x + 1)..n {
                    if let (Some(p), Some(q)) = (self.mul(c, x), self.mul(c, y)) {
                        if p == q {
                            cancel = Verdict::fails(Basis::Exhaustive, vec![("c", el(c)), ("x", el(x)), ("y", el(y))]);
                            break 'cancel;
                        }
                    }
                }
            }
        }
        checks.push(AxiomCheck { axiom: "left cancellation", verdict: cancel });
        checks
    }
}
