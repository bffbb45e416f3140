//! Points of Ω as normal words, cone evaluation, and germs `[cd⁻¹, χ]`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cat::{BackendKind, Morphism, ObjId};
use crate::garside::{GarsideFamily, LetterId, NormalWord};
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

/// A character: `χ_𝔳`, `χ_x` for a finite normal word, or `χ_w` for an
/// eventually periodic infinite normal word `pre·period^ω`.
///
/// Infinite characters are stored with a primitive period and the shortest
/// preperiod, so structural equality is equality of characters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Character {
    Vertex(ObjId),
    Finite(NormalWord),
    Infinite { pre: NormalWord, period: NormalWord },
}

/// A constructible set: a union of cones, or `x𝔠 \ ⋃ yᵢ𝔠`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealExpr {
    Union(Vec<Morphism>),
    Relative { positive: Morphism, negative: Vec<Morphism> },
}

impl IdealExpr {
    pub fn cone(x: Morphism) -> Self {
        IdealExpr::Union(vec![x])
    }
}

/// The arrow `[cd⁻¹, base]`; requires `𝔡(c) = 𝔡(d)` and `base(d𝔠) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    pub c: Morphism,
    pub d: Morphism,
    pub base: Character,
}

/// Result of [`limit_of_letters`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Letter(LetterId),
    Vertex(ObjId),
}

impl Character {
    /// `χ_x` for a normal word; the empty word gives the vertex character.
    pub fn of_word(w: NormalWord) -> Self {
        if w.is_empty() {
            Character::Vertex(w.target)
        } else {
            Character::Finite(w)
        }
    }

    pub fn of_morphism(fam: &GarsideFamily<'_>, m: &Morphism) -> Result<Self> {
        Ok(Self::of_word(fam.normal_form(m)?))
    }

    /// `χ_w` for `w = pre·period^ω`; checks normality and canonicalizes.
    pub fn infinite(fam: &GarsideFamily<'_>, pre: Vec<LetterId>, period: Vec<LetterId>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Argument("an infinite character needs a nonempty period".into()));
        }
        let mut path = pre.clone();
        path.extend_from_slice(&period);
        path.push(period[0]);
        for pair in path.windows(2) {
            if !fam.is_normal_pair(pair[0], pair[1]) {
                return Err(Error::Argument(format!(
                    "{}|{} is not a normal junction",
                    fam.render_letter(pair[0]),
                    fam.render_letter(pair[1])
                )));
            }
        }
        Ok(Self::canonical_infinite(fam, pre, period))
    }

    fn canonical_infinite(fam: &GarsideFamily<'_>, mut pre: Vec<LetterId>, mut period: Vec<LetterId>) -> Self {
        let n = period.len();
        if let Some(p) = (1..=n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| period[i] == period[i - p])) {
            period.truncate(p);
        }
        while let Some(&l) = pre.last() {
            if l != *period.last().expect("nonempty period") {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        let target = pre.first().or(period.first()).map(|&s| fam.dst(s)).expect("nonempty");
        let ptarget = fam.dst(period[0]);
        Character::Infinite {
            pre: NormalWord { target, letters: pre },
            period: NormalWord { target: ptarget, letters: period },
        }
    }

    pub fn target(&self) -> ObjId {
        match self {
            Character::Vertex(v) => *v,
            Character::Finite(w) => w.target,
            Character::Infinite { pre, .. } => pre.target,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Character::Infinite { .. })
    }

    /// Number of letters, `None` when infinite.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            Character::Vertex(_) => Some(0),
            Character::Finite(w) => Some(w.len()),
            Character::Infinite { .. } => None,
        }
    }

    /// The `i`-th letter (0-based).
    pub fn letter_at(&self, i: usize) -> Option<LetterId> {
        match self {
            Character::Vertex(_) => None,
            Character::Finite(w) => w.letters.get(i).copied(),
            Character::Infinite { pre, period } => Some(if i < pre.len() {
                pre.letters[i]
            } else {
                period.letters[(i - pre.len()) % period.len()]
            }),
        }
    }

    /// `w_n`, truncated to the word for finite characters.
    pub fn prefix(&self, n: usize) -> NormalWord {
        let len = self.finite_len().map_or(n, |l| l.min(n));
        NormalWord { target: self.target(), letters: (0..len).map(|i| self.letter_at(i).expect("in range")).collect() }
    }

    /// Every letter occurring in the word.
    pub fn letters(&self) -> BTreeSet<LetterId> {
        match self {
            Character::Vertex(_) => BTreeSet::new(),
            Character::Finite(w) => w.letters.iter().copied().collect(),
            Character::Infinite { pre, period } => pre.letters.iter().chain(&period.letters).copied().collect(),
        }
    }

    /// Tail `w_{>n}` of an infinite character as `(pre, period)` letter lists.
    fn tail(&self, n: usize) -> (Vec<LetterId>, Vec<LetterId>) {
        let Character::Infinite { pre, period } = self else { unreachable!("tail of a finite character") };
        if n <= pre.len() {
            (pre.letters[n..].to_vec(), period.letters.clone())
        } else {
            let mut p = period.letters.clone();
            let shift = (n - pre.len()) % p.len();
            p.rotate_left(shift);
            (Vec::new(), p)
        }
    }

    /// The finite element `x` with `χ = χ_x`.
    fn element(&self, fam: &GarsideFamily<'_>) -> Option<Morphism> {
        match self {
            Character::Vertex(v) => Some(Morphism::identity(*v)),
            Character::Finite(w) => Some(fam.product(w)),
            Character::Infinite { .. } => None,
        }
    }
}

/// `χ(x𝔠)`.
pub fn in_cone(fam: &GarsideFamily<'_>, chi: &Character, x: &Morphism) -> bool {
    if x.dst != chi.target() {
        return false;
    }
    let cat = fam.cat();
    match chi.element(fam) {
        Some(e) => cat.left_divides(x, &e),
        None => {
            let Ok(xw) = fam.normal_form(x) else { return false };
            let Character::Infinite { period, .. } = chi else { unreachable!() };
            let n = xw.len() + period.len();
            fam.divides(&xw, &chi.prefix(n)).is_some()
        }
    }
}

/// `χ(e)`.
pub fn eval(fam: &GarsideFamily<'_>, chi: &Character, e: &IdealExpr) -> bool {
    match e {
        IdealExpr::Union(roots) => roots.iter().any(|x| in_cone(fam, chi, x)),
        IdealExpr::Relative { positive, negative } => {
            in_cone(fam, chi, positive) && !negative.iter().any(|y| in_cone(fam, chi, y))
        }
    }
}

/// Normal form of `l·w` for an infinite word `w = pre·period^ω`, found by
/// tracking `(carry, phase)` until the carry dies or a state repeats.
fn lmul_infinite(
    fam: &GarsideFamily<'_>,
    l: LetterId,
    pre: &[LetterId],
    period: &[LetterId],
) -> (Vec<LetterId>, Vec<LetterId>) {
    let p = period.len();
    let at = |i: usize| if i < pre.len() { pre[i] } else { period[(i - pre.len()) % p] };
    let mut out = Vec::new();
    let mut seen: BTreeMap<(LetterId, usize), usize> = BTreeMap::new();
    let mut carry = l;
    let mut i = 0;
    loop {
        if i >= pre.len() {
            let phase = (i - pre.len()) % p;
            if let Some(&j) = seen.get(&(carry, phase)) {
                let per = out.split_off(j);
                return (out, per);
            }
            seen.insert((carry, phase), out.len());
        }
        let (h, r) = fam.nf2(carry, at(i)).expect("composable");
        out.push(h);
        i += 1;
        match r {
            Some(r) => carry = r,
            None => {
                if i <= pre.len() {
                    out.extend_from_slice(&pre[i..]);
                    return (out, period.to_vec());
                }
                let mut per = period.to_vec();
                per.rotate_left((i - pre.len()) % p);
                return (out, per);
            }
        }
    }
}

/// `y·w` for a normal word `y` and the infinite tail `(pre, period)`.
fn prepend_word(
    fam: &GarsideFamily<'_>,
    y: &NormalWord,
    mut pre: Vec<LetterId>,
    mut period: Vec<LetterId>,
) -> Character {
    for &l in y.letters.iter().rev() {
        let (a, b) = lmul_infinite(fam, l, &pre, &period);
        pre = a;
        period = b;
    }
    Character::canonical_infinite(fam, pre, period)
}

/// Smallest `n` with `d ⪯ w_n`, if the character lies in `d𝔠`.
fn divisor_depth(fam: &GarsideFamily<'_>, chi: &Character, d: &NormalWord) -> Option<usize> {
    (0..=d.len()).find(|&n| fam.divides(d, &chi.prefix(n)).is_some())
}

fn check_germ(fam: &GarsideFamily<'_>, g: &Germ) -> Result<()> {
    if g.c.src != g.d.src {
        return Err(Error::Composability { left: fam.cat().render(&g.c), right: fam.cat().render(&g.d) });
    }
    if !in_cone(fam, &g.base, &g.d) {
        return Err(Error::Domain(format!("germ undefined: base does not lie in {}𝔠", fam.cat().render(&g.d))));
    }
    Ok(())
}

/// `cd⁻¹.χ`.
pub fn germ_apply(fam: &GarsideFamily<'_>, g: &Germ) -> Result<Character> {
    check_germ(fam, g)?;
    let cat = fam.cat();
    if let Some(x) = g.base.element(fam) {
        let q = cat.quotient(&g.d, &x).expect("checked above");
        return Character::of_morphism(fam, &cat.compose(&g.c, &q)?);
    }
    let dw = fam.normal_form(&g.d)?;
    let n = divisor_depth(fam, &g.base, &dw).expect("checked above");
    let xn = fam.divides(&dw, &g.base.prefix(n)).expect("d divides w_n");
    let y = fam.mul(&fam.normal_form(&g.c)?, &xn);
    let (pre, period) = g.base.tail(n);
    Ok(prepend_word(fam, &y, pre, period))
}

/// Whether two germs are the same arrow.
pub fn germ_eq(fam: &GarsideFamily<'_>, g1: &Germ, g2: &Germ) -> Result<bool> {
    check_germ(fam, g1)?;
    check_germ(fam, g2)?;
    if g1.base != g2.base {
        return Ok(false);
    }
    if g1.c.dst != g2.c.dst {
        return Ok(false);
    }
    let cat = fam.cat();
    if let Some(x) = g1.base.element(fam) {
        let y1 = cat.compose(&g1.c, &cat.quotient(&g1.d, &x).expect("checked"))?;
        let y2 = cat.compose(&g2.c, &cat.quotient(&g2.d, &x).expect("checked"))?;
        return Ok(y1 == y2);
    }
    let (d1, d2) = (fam.normal_form(&g1.d)?, fam.normal_form(&g2.d)?);
    let n = d1.len().max(d2.len());
    let wn = g1.base.prefix(n);
    let y1 = fam.mul(&fam.normal_form(&g1.c)?, &fam.divides(&d1, &wn).expect("checked"));
    let y2 = fam.mul(&fam.normal_form(&g2.c)?, &fam.divides(&d2, &wn).expect("checked"));
    Ok(y1 == y2)
}

/// `g1 ∘ g2`: apply `g2` first. The base of `g1` must be the range of `g2`.
pub fn germ_compose(fam: &GarsideFamily<'_>, g1: &Germ, g2: &Germ) -> Result<Germ> {
    let mid = germ_apply(fam, g2)?;
    if mid != g1.base {
        return Err(Error::Domain("range of the inner germ is not the base of the outer germ".into()));
    }
    check_germ(fam, g1)?;
    let cat = fam.cat();
    for m in cat.mcm_set(&g1.d, &g2.c)? {
        let y = cat.quotient(&g1.d, &m).expect("mcm is a multiple");
        let z = cat.quotient(&g2.c, &m).expect("mcm is a multiple");
        let cand = Germ { c: cat.compose(&g1.c, &y)?, d: cat.compose(&g2.d, &z)?, base: g2.base.clone() };
        if in_cone(fam, &cand.base, &cand.d) {
            return Ok(cand);
        }
    }
    Err(Error::Invalid("no comultiple branch contains the base character".into()))
}

pub fn germ_inverse(fam: &GarsideFamily<'_>, g: &Germ) -> Result<Germ> {
    Ok(Germ { c: g.d.clone(), d: g.c.clone(), base: germ_apply(fam, g)? })
}

/// `[1, χ]`.
pub fn unit_germ(chi: &Character) -> Germ {
    let v = chi.target();
    Germ { c: Morphism::identity(v), d: Morphism::identity(v), base: chi.clone() }
}

/// Membership in Ω_max: every cone missed by `χ` is separated from some
/// prefix cone of `χ`. Infinite characters are checked on the normal-word
/// ball of radius `depth`.
pub fn in_omega_max(fam: &GarsideFamily<'_>, chi: &Character, depth: usize) -> Result<Verdict> {
    let cat = fam.cat();
    if let Some(x) = chi.element(fam) {
        let v = x.src;
        return Ok(match fam.at(v).first() {
            Some(&s) => Verdict::fails(Basis::Exhaustive, vec![("e", cat.compose(&x, fam.letter(s))?)]),
            None => Verdict::holds(Basis::Structural("no non-invertible element starts at the endpoint")),
        });
    }
    let Character::Infinite { pre, period } = chi else { unreachable!() };
    if matches!(cat.kind(), BackendKind::GraphPath | BackendKind::KGraph) && cat.rank() == 1 {
        return Ok(Verdict::holds(Basis::Structural("distinct paths of a directed graph have disjoint cones")));
    }
    for xw in fam.ball(chi.target(), depth)? {
        let n = xw.len() + pre.len() + 2 * period.len();
        let wn = chi.prefix(n);
        if fam.divides(&xw, &wn).is_some() {
            continue;
        }
        if !fam.mcm(&xw, &wn).is_empty() {
            let x = fam.product(&xw);
            return Ok(match cat.cones_always_meet(chi.target()) {
                Some(true) => Verdict::fails(Basis::Structural("principal cones always meet"), vec![("e", x)]),
                _ => Verdict::unknown(depth, vec![("e", x)]),
            });
        }
    }
    Ok(Verdict::holds(Basis::Bounded(depth)))
}

/// The ⪯-maximal letter dividing every term of the cyclically repeated
/// sequence, or the common target vertex when no letter does.
pub fn limit_of_letters(fam: &GarsideFamily<'_>, seq: &[LetterId]) -> Result<Limit> {
    let Some(&first) = seq.first() else {
        return Err(Error::Argument("empty letter sequence".into()));
    };
    let v = fam.dst(first);
    if seq.iter().any(|&s| fam.dst(s) != v) {
        return Err(Error::Argument("letters of the sequence have different targets".into()));
    }
    let common: Vec<LetterId> =
        fam.at(v).iter().copied().filter(|&r| seq.iter().all(|&s| fam.letter_divides(r, s).is_some())).collect();
    for &r in &common {
        if common.iter().all(|&r2| fam.letter_divides(r2, r).is_some()) {
            return Ok(Limit::Letter(r));
        }
    }
    if common.is_empty() {
        Ok(Limit::Vertex(v))
    } else {
        Err(Error::Argument("common divisors of the sequence have no maximum".into()))
    }
}
