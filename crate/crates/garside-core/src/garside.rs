//! Garside families: heads, normal decompositions and word arithmetic.
//!
//! A family is a finite list of non-invertible letters. Products of two
//! letters are tabulated once as `(H(st), remainder)`, after which all
//! normal-form arithmetic on words is table driven.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cat::{AxiomCheck, BackendKind, Category, Morphism, ObjId};
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

pub type LetterId = usize;

/// Cap on enumerated normal words.
pub const WORD_CAP: usize = 2_000_000;

/// A normal word `s₁|s₂|⋯|sₙ` read left to right; `target` is `𝔱(s₁)`, or the
/// vertex itself for the empty word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalWord {
    pub target: ObjId,
    pub letters: Vec<LetterId>,
}

impl NormalWord {
    pub fn empty(v: ObjId) -> Self {
        NormalWord { target: v, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct GarsideFamily<'c> {
    cat: &'c Category,
    letters: Vec<Morphism>,
    by_target: Vec<Vec<LetterId>>,
    index: BTreeMap<Morphism, LetterId>,
    nf2: BTreeMap<(LetterId, LetterId), (LetterId, Option<LetterId>)>,
    /// `div[s][t] = Some(q)` iff `s ⪯ t` with `t = s·q`; `q = None` is a unit.
    div: Vec<Vec<Option<Option<LetterId>>>>,
    lmcm: BTreeMap<(LetterId, LetterId), Vec<LetterId>>,
    atoms_are_letters: bool,
}

#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub checks: Vec<AxiomCheck>,
}

impl FamilyReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| !c.verdict.is_fails())
    }
}

/// The family the backend ships with: edges, `𝕕⁻¹(S_P)`, divisors of Δ,
/// clique products, or unit classes of a finite table.
pub fn standard_family(cat: &Category) -> Result<GarsideFamily<'_>> {
    match cat.kind() {
        BackendKind::GraphPath | BackendKind::KGraph => crate::kgraph::build_garside_family(cat),
        BackendKind::Artin => crate::artin::garside_family(cat),
        BackendKind::Explicit => {
            let mut letters = Vec::new();
            for v in 0..cat.num_objects() {
                for m in cat.ball_classes(v, 1)? {
                    if !cat.is_unit(&m) {
                        letters.push(m);
                    }
                }
            }
            GarsideFamily::new(cat, letters)
        }
    }
}

/// Checks the Garside axioms for a candidate letter list at the given depth.
pub fn validate_family(cat: &Category, letters: &[Morphism], depth: usize) -> Result<FamilyReport> {
    for s in letters {
        if cat.is_unit(s) {
            return Err(Error::Argument(format!("letter {} is invertible", cat.render(s))));
        }
    }
    let in_sharp = |m: &Morphism| cat.is_unit(m) || letters.iter().any(|s| cat.unit_equivalent(s, m));
    let mut checks = Vec::new();

    let mut transverse = Verdict::holds(Basis::Exhaustive);
    'tr: for (i, s) in letters.iter().enumerate() {
        for t in &letters[i + 1..] {
            if cat.unit_equivalent(s, t) {
                transverse = Verdict::fails(Basis::Exhaustive, vec![("s", s.clone()), ("t", t.clone())]);
                break 'tr;
            }
        }
    }
    checks.push(AxiomCheck { axiom: "unit transversality", verdict: transverse });

    let mut generation = Verdict::holds(Basis::Bounded(depth));
    'gen: for v in 0..cat.num_objects() {
        for x in cat.ball(v, depth)? {
            let mut rest = x.clone();
            let mut guard = 0;
            while !cat.is_unit(&rest) {
                let Some(q) = letters.iter().find_map(|s| cat.quotient(s, &rest)) else {
                    generation = Verdict::fails(Basis::Bounded(depth), vec![("element", x.clone())]);
                    break 'gen;
                };
                rest = q;
                guard += 1;
                if guard > cat.atom_len(&x) + 1 && cat.kind() != BackendKind::Explicit {
                    break;
                }
                if guard > 64 {
                    break;
                }
            }
        }
    }
    checks.push(AxiomCheck { axiom: "generation", verdict: generation });

    let mut divisors = Verdict::holds(Basis::Exhaustive);
    'div: for s in letters {
        for x in cat.ball(s.dst, cat.atom_len(s))? {
            if let Some(y) = cat.quotient(&x, s) {
                if !in_sharp(&y) {
                    divisors = Verdict::fails(Basis::Exhaustive, vec![("letter", s.clone()), ("right divisor", y)]);
                    break 'div;
                }
            }
        }
    }
    checks.push(AxiomCheck { axiom: "right-divisor closure", verdict: divisors });

    let mut comultiples = Verdict::holds(Basis::Exhaustive);
    'mcm: for s in letters {
        for t in letters.iter().filter(|t| t.dst == s.dst) {
            for m in cat.mcm_set(s, t)? {
                if !in_sharp(&m) {
                    comultiples = Verdict::fails(Basis::Exhaustive, vec![("s", s.clone()), ("t", t.clone()), ("mcm", m)]);
                    break 'mcm;
                }
            }
        }
    }
    checks.push(AxiomCheck { axiom: "right-comultiple closure", verdict: comultiples });

    checks.push(AxiomCheck {
        axiom: "local boundedness",
        verdict: Verdict::holds(Basis::Structural("finitely many letters per vertex")),
    });
    Ok(FamilyReport { checks })
}

impl<'c> GarsideFamily<'c> {
    /// Tabulates a family. Fails if a letter is a unit, two letters are unit
    /// equivalent, or some two-letter product has no head and remainder in
    /// the family.
    pub fn new(cat: &'c Category, mut letters: Vec<Morphism>) -> Result<Self> {
        for s in &letters {
            if cat.is_unit(s) {
                return Err(Error::Argument(format!("letter {} is invertible", cat.render(s))));
            }
        }
        letters.sort_by(|x, y| (x.dst, x.word.len(), &x.word, x.src).cmp(&(y.dst, y.word.len(), &y.word, y.src)));
        letters.dedup();
        let mut index = BTreeMap::new();
        for (i, s) in letters.iter().enumerate() {
            if index.insert(cat.class_rep(s), i).is_some() {
                return Err(Error::Argument(format!("letter {} repeats a unit class", cat.render(s))));
            }
        }
        let mut by_target = vec![Vec::new(); cat.num_objects()];
        for (i, s) in letters.iter().enumerate() {
            by_target[s.dst].push(i);
        }
        let atoms_are_letters = cat.kind() != BackendKind::Explicit
            && (0..cat.atoms().len()).all(|a| index.contains_key(&cat.atom(a)));
        let mut fam = GarsideFamily {
            cat,
            letters,
            by_target,
            index,
            nf2: BTreeMap::new(),
            div: Vec::new(),
            lmcm: BTreeMap::new(),
            atoms_are_letters,
        };
        fam.tabulate()?;
        Ok(fam)
    }

    fn tabulate(&mut self) -> Result<()> {
        let n = self.letters.len();
        let mut div = vec![vec![None; n]; n];
        for s in 0..n {
            for t in 0..n {
                if let Some(q) = self.cat.quotient(&self.letters[s], &self.letters[t]) {
                    div[s][t] = Some(self.sharp_letter(&q)?);
                }
            }
        }
        self.div = div;
        for s in 0..n {
            for t in 0..n {
                if self.letters[s].src != self.letters[t].dst {
                    continue;
                }
                let p = self.cat.compose(&self.letters[s], &self.letters[t])?;
                let h = self.head_of(&p)?.ok_or_else(|| {
                    Error::Argument(format!("product {} has no head in the family", self.cat.render(&p)))
                })?;
                let q = self.cat.quotient(&self.letters[h], &p).expect("head divides");
                let r = self.sharp_letter(&q)?;
                self.nf2.insert((s, t), (h, r));
            }
        }
        for s in 0..n {
            for t in 0..n {
                if self.letters[s].dst != self.letters[t].dst {
                    continue;
                }
                let common: Vec<LetterId> =
                    (0..n).filter(|&r| self.div[s][r].is_some() && self.div[t][r].is_some()).collect();
                let minimal: Vec<LetterId> = common
                    .iter()
                    .copied()
                    .filter(|&r| !common.iter().any(|&r2| r2 != r && self.div[r2][r].is_some()))
                    .collect();
                self.lmcm.insert((s, t), minimal);
            }
        }
        Ok(())
    }

    /// `None` for units, the letter for elements of `𝔖𝔠*`, an error otherwise.
    fn sharp_letter(&self, q: &Morphism) -> Result<Option<LetterId>> {
        if self.cat.is_unit(q) {
            return Ok(None);
        }
        self.letter_of(q).map(Some).ok_or_else(|| {
            Error::Argument(format!("{} is neither a unit nor a letter up to units", self.cat.render(q)))
        })
    }

    /// The divisibility-maximal letter dividing `a`, straight from the definition.
    fn head_of(&self, a: &Morphism) -> Result<Option<LetterId>> {
        let cands: Vec<LetterId> =
            self.by_target[a.dst].iter().copied().filter(|&r| self.cat.left_divides(&self.letters[r], a)).collect();
        if cands.is_empty() {
            return Ok(None);
        }
        for &h in &cands {
            if cands.iter().all(|&r| self.cat.left_divides(&self.letters[r], &self.letters[h])) {
                return Ok(Some(h));
            }
        }
        Err(Error::Argument(format!("{} has no unique maximal letter divisor", self.cat.render(a))))
    }

    pub fn cat(&self) -> &'c Category {
        self.cat
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Morphism] {
        &self.letters
    }

    pub fn letter(&self, s: LetterId) -> &Morphism {
        &self.letters[s]
    }

    /// Letters with target `v`.
    pub fn at(&self, v: ObjId) -> &[LetterId] {
        &self.by_target[v]
    }

    /// Every family here is finite.
    pub fn locally_finite(&self) -> bool {
        true
    }

    /// The letter unit-equivalent to `m`, if any.
    pub fn letter_of(&self, m: &Morphism) -> Option<LetterId> {
        self.index.get(&self.cat.class_rep(m)).copied()
    }

    pub fn src(&self, s: LetterId) -> ObjId {
        self.letters[s].src
    }

    pub fn dst(&self, s: LetterId) -> ObjId {
        self.letters[s].dst
    }

    /// Domain of the product of a normal word.
    pub fn word_src(&self, w: &NormalWord) -> ObjId {
        w.letters.last().map(|&s| self.src(s)).unwrap_or(w.target)
    }

    /// `(H(st), remainder)` for composable letters.
    pub fn nf2(&self, s: LetterId, t: LetterId) -> Option<(LetterId, Option<LetterId>)> {
        self.nf2.get(&(s, t)).copied()
    }

    /// Whether `s|t` is normal.
    pub fn is_normal_pair(&self, s: LetterId, t: LetterId) -> bool {
        matches!(self.nf2(s, t), Some((h, _)) if h == s)
    }

    /// `Some(q)` iff `s ⪯ t`, with `t = s·q`.
    pub fn letter_divides(&self, s: LetterId, t: LetterId) -> Option<Option<LetterId>> {
        self.div[s][t]
    }

    /// Minimal common multiples of two letters with a common target.
    pub fn letter_mcm(&self, s: LetterId, t: LetterId) -> &[LetterId] {
        self.lmcm.get(&(s, t)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Letters `t` with `s|t` normal.
    pub fn normal_successors(&self, s: LetterId) -> impl Iterator<Item = LetterId> + '_ {
        self.by_target[self.src(s)].iter().copied().filter(move |&t| self.is_normal_pair(s, t))
    }

    pub fn product(&self, w: &NormalWord) -> Morphism {
        let mut acc = Morphism::identity(w.target);
        for &s in &w.letters {
            acc = self.cat.compose(&acc, &self.letters[s]).expect("normal words are composable");
        }
        acc
    }

    /// Normal form of `s·w`, by the left-multiplication rule.
    pub fn left_mul_letter(&self, s: LetterId, w: &NormalWord) -> NormalWord {
        let mut out = Vec::with_capacity(w.letters.len() + 1);
        let mut carry = Some(s);
        let mut i = 0;
        while let Some(c) = carry {
            if i == w.letters.len() {
                out.push(c);
                carry = None;
                break;
            }
            let (h, r) = self.nf2(c, w.letters[i]).expect("composable letters");
            out.push(h);
            carry = r;
            i += 1;
        }
        let _ = carry;
        out.extend_from_slice(&w.letters[i..]);
        NormalWord { target: self.dst(s), letters: out }
    }

    /// Left multiplication by an element that is a unit or a letter.
    pub fn left_mul_sharp(&self, s: Option<LetterId>, w: &NormalWord) -> NormalWord {
        match s {
            Some(s) => self.left_mul_letter(s, w),
            None => w.clone(),
        }
    }

    /// Normal form of `u·w`.
    pub fn mul(&self, u: &NormalWord, w: &NormalWord) -> NormalWord {
        let mut acc = w.clone();
        for &s in u.letters.iter().rev() {
            acc = self.left_mul_letter(s, &acc);
        }
        if u.letters.is_empty() {
            acc.target = u.target;
        }
        acc
    }

    /// Normal form of an element, computed by table lookups when atoms are letters.
    pub fn normal_form(&self, m: &Morphism) -> Result<NormalWord> {
        if !self.atoms_are_letters {
            return self.normal_decompose(m);
        }
        let mut w = NormalWord::empty(m.src);
        for &a in m.word.iter().rev() {
            let s = self.letter_of(&self.cat.atom(a)).expect("atoms are letters");
            w = self.left_mul_letter(s, &w);
        }
        w.target = m.dst;
        Ok(w)
    }

    /// `H(a)`: the maximal letter dividing `a`.
    pub fn head(&self, a: &Morphism) -> Result<LetterId> {
        if self.cat.is_unit(a) {
            return Err(Error::Argument(format!("{} is invertible and has no head", self.cat.render(a))));
        }
        self.head_of(a)?.ok_or_else(|| Error::Argument(format!("no letter divides {}", self.cat.render(a))))
    }

    /// Greedy peeling of heads, straight from the definition.
    pub fn normal_decompose(&self, a: &Morphism) -> Result<NormalWord> {
        let mut letters = Vec::new();
        let mut rest = a.clone();
        while !self.cat.is_unit(&rest) {
            let h = self.head(&rest)?;
            rest = self.cat.quotient(&self.letters[h], &rest).expect("head divides");
            letters.push(h);
            if letters.len() > WORD_CAP {
                return Err(Error::Capacity("normal decomposition does not terminate".into()));
            }
        }
        Ok(NormalWord { target: a.dst, letters })
    }

    /// `‖a‖`.
    pub fn s_length(&self, a: &Morphism) -> Result<usize> {
        Ok(self.normal_form(a)?.len())
    }

    /// Junction test against every letter: `Ok(None)` if normal, else the
    /// first failing junction (1-based).
    pub fn is_normal(&self, path: &[LetterId]) -> Result<Option<usize>> {
        for (k, pair) in path.windows(2).enumerate() {
            let (s, t) = (pair[0], pair[1]);
            if self.src(s) != self.dst(t) {
                return Err(Error::Composability {
                    left: self.cat.render(&self.letters[s]),
                    right: self.cat.render(&self.letters[t]),
                });
            }
            let st = self.cat.compose(&self.letters[s], &self.letters[t])?;
            for &r in self.at(self.dst(s)) {
                let rl = &self.letters[r];
                if self.cat.left_divides(rl, &st) && !self.cat.left_divides(rl, &self.letters[s]) {
                    return Ok(Some(k + 1));
                }
            }
        }
        Ok(None)
    }

    /// `H(a₁⋯aₙ·r₁)` by the nested rule `H(a₁ H(a₂ ⋯ H(aₙ r₁)))`.
    pub fn head_incremental(&self, prefix: &[LetterId], r1: LetterId) -> Result<LetterId> {
        let mut h = r1;
        for &a in prefix.iter().rev() {
            h = self
                .nf2(a, h)
                .ok_or_else(|| Error::Composability {
                    left: self.cat.render(&self.letters[a]),
                    right: self.cat.render(&self.letters[h]),
                })?
                .0;
        }
        Ok(h)
    }

    /// `Some(q)` iff `a ⪯ b`, with `b = a·q` in normal form.
    pub fn divides(&self, a: &NormalWord, b: &NormalWord) -> Option<NormalWord> {
        if a.target != b.target {
            return None;
        }
        let mut rest = b.clone();
        for &s in &a.letters {
            let (&b1, tail) = rest.letters.split_first()?;
            let q = self.div[s][b1]?;
            let tail = NormalWord { target: self.src(b1), letters: tail.to_vec() };
            let mut next = self.left_mul_sharp(q, &tail);
            next.target = self.src(s);
            rest = next;
        }
        Some(rest)
    }

    /// Minimal common right multiples of two normal words with equal target.
    pub fn mcm(&self, a: &NormalWord, b: &NormalWord) -> Vec<NormalWord> {
        if a.target != b.target {
            return Vec::new();
        }
        let raw = self.mcm_raw(a, b);
        let mut out: Vec<NormalWord> = Vec::new();
        for m in &raw {
            let dominated = raw.iter().any(|m2| m2 != m && self.divides(m2, m).is_some());
            if !dominated && !out.contains(m) {
                out.push(m.clone());
            }
        }
        out.sort();
        out
    }

    fn mcm_raw(&self, a: &NormalWord, b: &NormalWord) -> Vec<NormalWord> {
        let Some((&a1, rest)) = a.letters.split_first() else {
            return vec![b.clone()];
        };
        if b.letters.is_empty() {
            return vec![a.clone()];
        }
        let tail = NormalWord { target: self.src(a1), letters: rest.to_vec() };
        let mut out = Vec::new();
        for m in self.mcm_letter(a1, b) {
            let q = self.divides(&NormalWord { target: a.target, letters: vec![a1] }, &m).expect("a1 divides m");
            for m2 in self.mcm_raw(&tail, &q) {
                let mut w = NormalWord { target: self.src(a1), letters: m2.letters };
                w = self.left_mul_letter(a1, &w);
                out.push(w);
            }
        }
        out
    }

    /// Union-of-cones generators for `s𝔠 ∩ b𝔠`.
    fn mcm_letter(&self, s: LetterId, b: &NormalWord) -> Vec<NormalWord> {
        let Some((&b1, rest)) = b.letters.split_first() else {
            return vec![NormalWord { target: b.target, letters: vec![s] }];
        };
        let tail = NormalWord { target: self.src(b1), letters: rest.to_vec() };
        let mut out = Vec::new();
        for &m in self.letter_mcm(b1, s) {
            let q = self.div[b1][m].expect("b1 divides its multiple");
            let parts = match q {
                None => vec![tail.clone()],
                Some(q) => self.mcm_letter(q, &tail),
            };
            for p in parts {
                let mut w = p;
                w.target = self.src(b1);
                out.push(self.left_mul_letter(b1, &w));
            }
        }
        out
    }

    /// Normal words with target `v` and at most `radius` letters, shortest first.
    pub fn ball(&self, v: ObjId, radius: usize) -> Result<Vec<NormalWord>> {
        let mut out = vec![NormalWord::empty(v)];
        let mut frontier = vec![NormalWord::empty(v)];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                match w.letters.last() {
                    None => {
                        for &t in self.at(v) {
                            next.push(NormalWord { target: v, letters: vec![t] });
                        }
                    }
                    Some(&s) => {
                        for t in self.normal_successors(s) {
                            let mut l = w.letters.clone();
                            l.push(t);
                            next.push(NormalWord { target: v, letters: l });
                        }
                    }
                }
            }
            if out.len() + next.len() > WORD_CAP {
                return Err(Error::Capacity(format!("normal-word ball of radius {} is too large", radius)));
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    /// Normal words at every vertex, up to `radius` letters.
    pub fn all_words(&self, radius: usize) -> Result<Vec<NormalWord>> {
        let mut out = Vec::new();
        for v in 0..self.cat.num_objects() {
            out.extend(self.ball(v, radius)?);
        }
        Ok(out)
    }

    pub fn render_letter(&self, s: LetterId) -> String {
        self.cat.render(&self.letters[s])
    }

    /// Letters joined by `.`; the empty word renders as its identity.
    pub fn render_word(&self, w: &NormalWord) -> String {
        if w.letters.is_empty() {
            return self.cat.render_identity(w.target);
        }
        let parts: Vec<String> = w.letters.iter().map(|&s| self.render_letter(s)).collect();
        parts.join(".")
    }

    pub fn render_set(&self, set: &BTreeSet<LetterId>) -> Vec<String> {
        set.iter().map(|&s| self.render_letter(s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn m(cat: &Category, w: &str) -> Morphism {
        cat.parse_word(w).unwrap()
    }

    fn names(fam: &GarsideFamily<'_>) -> Vec<String> {
        let mut v: Vec<String> = (0..fam.len()).map(|s| fam.render_letter(s)).collect();
        v.sort();
        v
    }

    /// `r ⪯ a` by searching the ball for a cofactor.
    fn divides_by_search(cat: &Category, r: &Morphism, a: &Morphism) -> bool {
        r.dst == a.dst
            && cat.ball(r.src, a.len()).unwrap().iter().any(|x| x.dst == r.src && cat.compose(r, x).unwrap() == *a)
    }

    /// Maximal letter divisor, found by search.
    fn oracle_head(cat: &Category, letters: &[Morphism], a: &Morphism) -> Morphism {
        let cands: Vec<&Morphism> = letters.iter().filter(|r| divides_by_search(cat, r, a)).collect();
        (*cands.iter().find(|h| cands.iter().all(|r| divides_by_search(cat, r, h))).unwrap()).clone()
    }

    fn oracle_decompose(cat: &Category, letters: &[Morphism], a: &Morphism) -> Vec<Morphism> {
        let mut out = Vec::new();
        let mut rest = a.clone();
        while !rest.is_empty() {
            let h = oracle_head(cat, letters, &rest);
            let q = cat
                .ball(h.src, rest.len())
                .unwrap()
                .into_iter()
                .find(|x| x.dst == h.src && cat.compose(&h, x).unwrap() == rest)
                .unwrap();
            out.push(h);
            rest = q;
        }
        out
    }

    #[test]
    fn families_of_reference_backends() {
        let free = fixtures::free();
        assert_eq!(names(&standard_family(&free).unwrap()), ["a", "b"]);
        let b3 = fixtures::b3();
        assert_eq!(names(&standard_family(&b3).unwrap()), ["a", "ab", "aba", "b", "ba"]);
        let sq = fixtures::square2();
        assert_eq!(names(&standard_family(&sq).unwrap()), ["e", "ef", "f"]);
        let raag = fixtures::raag();
        assert_eq!(names(&standard_family(&raag).unwrap()), ["a", "ac", "b", "c"]);
        let nat = fixtures::nat();
        assert_eq!(names(&standard_family(&nat).unwrap()), ["a"]);
    }

    #[test]
    fn heads_in_b3() {
        let cat = fixtures::b3();
        let fam = standard_family(&cat).unwrap();
        assert_eq!(fam.render_letter(fam.head(&m(&cat, "aa")).unwrap()), "a");
        assert_eq!(fam.render_letter(fam.head(&m(&cat, "abab")).unwrap()), "aba");
        let w = fam.normal_decompose(&m(&cat, "abab")).unwrap();
        assert_eq!(fam.render_word(&w), "aba.b");
        assert_eq!(fam.s_length(&m(&cat, "abab")).unwrap(), 2);
        assert!(fam.head(&Morphism::identity(0)).is_err());
    }

    #[test]
    fn heads_in_square() {
        let cat = fixtures::square2();
        let fam = standard_family(&cat).unwrap();
        assert_eq!(fam.render_letter(fam.head(&m(&cat, "fe")).unwrap()), "ef");
        assert_eq!(fam.render_word(&fam.normal_decompose(&m(&cat, "eef")).unwrap()), "ef.e");
        let e = fam.letter_of(&m(&cat, "e")).unwrap();
        let f = fam.letter_of(&m(&cat, "f")).unwrap();
        assert_eq!(fam.is_normal(&[e, e]).unwrap(), None);
        assert_eq!(fam.render_letter(fam.head_incremental(&[f], e).unwrap()), "ef");
    }

    #[test]
    fn normality_examples_in_b3() {
        let cat = fixtures::b3();
        let fam = standard_family(&cat).unwrap();
        let l = |w: &str| fam.letter_of(&m(&cat, w)).unwrap();
        assert_eq!(fam.is_normal(&[l("aba"), l("b")]).unwrap(), None);
        // a·ab = aab has no letter divisor beyond a, so the pair is normal.
        assert_eq!(fam.is_normal(&[l("a"), l("ab")]).unwrap(), None);
        assert_eq!(fam.is_normal(&[l("a"), l("b")]).unwrap(), Some(1));
        assert_eq!(fam.render_letter(fam.head_incremental(&[l("a")], l("b")).unwrap()), "ab");
        assert_eq!(fam.render_letter(fam.head_incremental(&[l("a"), l("a")], l("b")).unwrap()), "a");
    }

    #[test]
    fn validation_reports() {
        let free = fixtures::free();
        let letters = [m(&free, "a"), m(&free, "b")];
        assert!(validate_family(&free, &letters, 4).unwrap().is_valid());

        let b3 = fixtures::b3();
        let s: Vec<Morphism> = ["a", "b", "ab", "ba", "aba"].iter().map(|w| m(&b3, w)).collect();
        assert!(validate_family(&b3, &s, 4).unwrap().is_valid());
        let atoms = [m(&b3, "a"), m(&b3, "b")];
        let rep = validate_family(&b3, &atoms, 3).unwrap();
        let bad = rep.checks.iter().find(|c| c.verdict.is_fails()).unwrap();
        assert_eq!(bad.axiom, "right-comultiple closure");
        assert_eq!(bad.verdict.witness[2].1, m(&b3, "aba"));

        assert!(matches!(validate_family(&b3, &[Morphism::identity(0)], 2), Err(Error::Argument(_))));
    }

    #[test]
    fn decomposition_matches_search_oracle() {
        for cat in [fixtures::b3(), fixtures::square2(), fixtures::raag(), fixtures::two()] {
            let fam = standard_family(&cat).unwrap();
            for v in 0..cat.num_objects() {
                for a in cat.ball(v, 4).unwrap() {
                    let ours: Vec<Morphism> =
                        fam.normal_decompose(&a).unwrap().letters.iter().map(|&s| fam.letter(s).clone()).collect();
                    assert_eq!(ours, oracle_decompose(&cat, fam.letters(), &a), "{}", cat.render(&a));
                    assert_eq!(fam.normal_form(&a).unwrap(), fam.normal_decompose(&a).unwrap());
                }
            }
        }
    }

    #[test]
    fn word_mcm_matches_category_mcm() {
        for cat in [fixtures::b3(), fixtures::square2(), fixtures::raag(), fixtures::flip()] {
            let fam = standard_family(&cat).unwrap();
            let ball = cat.ball(0, 3).unwrap();
            for a in &ball {
                for b in &ball {
                    let mut ours: Vec<Morphism> = fam
                        .mcm(&fam.normal_form(a).unwrap(), &fam.normal_form(b).unwrap())
                        .iter()
                        .map(|w| fam.product(w))
                        .collect();
                    ours.sort();
                    let mut theirs = cat.mcm_set(a, b).unwrap();
                    theirs.sort();
                    assert_eq!(ours, theirs, "{} {}", cat.render(a), cat.render(b));
                }
            }
        }
    }

    #[test]
    fn ball_of_normal_words_is_ball_of_s_length() {
        let cat = fixtures::square2();
        let fam = standard_family(&cat).unwrap();
        let mut one: Vec<String> = fam.ball(0, 1).unwrap().iter().map(|w| cat.render(&fam.product(w))).collect();
        one.sort();
        assert_eq!(one, ["1", "e", "ef", "f"]);
        let b3 = fixtures::b3();
        let fam = standard_family(&b3).unwrap();
        assert_eq!(fam.ball(0, 1).unwrap().len(), 6);
    }

    #[test]
    fn explicit_family_is_class_level() {
        let cat = fixtures::z2();
        let fam = standard_family(&cat).unwrap();
        assert!(fam.is_empty());
        assert_eq!(fam.normal_form(&cat.parse_word("u").unwrap()).unwrap(), NormalWord::empty(0));
    }

    fn random_normal_word(fam: &GarsideFamily<'_>, choices: &[usize]) -> NormalWord {
        let mut w = NormalWord::empty(0);
        for (i, &c) in choices.iter().enumerate() {
            let opts: Vec<LetterId> = match w.letters.last() {
                None => fam.at(0).to_vec(),
                Some(&s) => fam.normal_successors(s).collect(),
            };
            if opts.is_empty() || i > 5 {
                break;
            }
            w.letters.push(opts[c % opts.len()]);
        }
        w
    }

    proptest! {
        #[test]
        fn normal_words_are_fixed_points(choices in proptest::collection::vec(0usize..16, 0..6)) {
            for cat in [fixtures::b3(), fixtures::flip(), fixtures::raag()] {
                let fam = standard_family(&cat).unwrap();
                let w = random_normal_word(&fam, &choices);
                prop_assert_eq!(fam.normal_decompose(&fam.product(&w)).unwrap(), w.clone());
                prop_assert_eq!(fam.is_normal(&w.letters).unwrap(), None);
            }
        }

        #[test]
        fn multiplication_agrees_with_composition(x in proptest::collection::vec(0usize..16, 0..5), y in proptest::collection::vec(0usize..16, 0..5)) {
            for cat in [fixtures::b3(), fixtures::square2(), fixtures::raag()] {
                let fam = standard_family(&cat).unwrap();
                let (u, w) = (random_normal_word(&fam, &x), random_normal_word(&fam, &y));
                let uw = fam.mul(&u, &w);
                prop_assert_eq!(fam.product(&uw), cat.compose(&fam.product(&u), &fam.product(&w)).unwrap());
                prop_assert!(uw.len() <= u.len() + w.len());
                if let (Some(&h1), false) = (w.letters.first(), u.is_empty()) {
                    prop_assert_eq!(uw.letters[0], fam.head_incremental(&u.letters, h1).unwrap());
                }
                prop_assert_eq!(fam.divides(&u, &uw), Some(w.clone()).map(|mut q| { if q.is_empty() { q.target = fam.word_src(&u); } q }));
            }
        }
    }
}
