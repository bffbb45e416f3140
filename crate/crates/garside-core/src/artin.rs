//! Artin-Tits monoids: reversing, sphericity, Garside families for the
//! spherical and right-angled cases, and the expected classification.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cat::{AtomId, Backend, Category, Coxeter, Morphism, Reversal};
use crate::garside::GarsideFamily;
use crate::invariants::{closure, Pair};
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

fn coxeter(cat: &Category) -> Result<&Coxeter> {
    match &cat.backend {
        Backend::Artin(c) => Ok(c),
        _ => Err(Error::Unsupported(format!("{} is not an Artin-Tits backend", cat.kind().name()))),
    }
}

fn element(word: Vec<AtomId>) -> Morphism {
    Morphism { dst: 0, src: 0, word }
}

/// Right reversing of `u⁻¹v`.
pub fn reverse(cat: &Category, u: &[AtomId], v: &[AtomId], fuel: usize) -> Result<Reversal> {
    Ok(coxeter(cat)?.reverse(u, v, fuel))
}

/// Iterated lcm of the atoms. Holds carries `Δ` as witness `delta`; Fails
/// names the partial lcm and the atom with no common multiple.
pub fn spherical_probe(cat: &Category, fuel: usize) -> Result<Verdict> {
    let c = coxeter(cat)?;
    let mut delta: Vec<AtomId> = Vec::new();
    for a in 0..c.n {
        match c.reverse(&delta, &[a], fuel) {
            Reversal::Complement { v_tail, .. } => {
                delta.extend(v_tail);
                delta = c.canonical(&delta);
            }
            Reversal::Empty => {
                return Ok(Verdict::fails(
                    Basis::Structural("reversing certifies disjoint cones"),
                    vec![("lcm so far", element(delta)), ("atom", cat.atom(a))],
                ))
            }
            Reversal::OutOfFuel { .. } => return Ok(Verdict::unknown(fuel, vec![("lcm so far", element(delta))])),
        }
    }
    Ok(Verdict::holds_with(Basis::Exhaustive, vec![("delta", element(delta))]))
}

/// Whether every `m` lies in {2, ∞}.
pub fn is_right_angled(cat: &Category) -> Result<bool> {
    let c = coxeter(cat)?;
    Ok((0..c.n).all(|a| (0..c.n).all(|b| a == b || matches!(c.m(a, b), None | Some(2)))))
}

/// Connectivity of the graph joining atoms with `m ≠ 2`.
pub fn is_irreducible(cat: &Category) -> Result<bool> {
    let c = coxeter(cat)?;
    if c.n == 0 {
        return Ok(false);
    }
    let mut seen = BTreeSet::new();
    seen.insert(0);
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in 0..c.n {
            if a != b && c.m(a, b) != Some(2) && seen.insert(b) {
                stack.push(b);
            }
        }
    }
    Ok(seen.len() == c.n)
}

/// Divisors of `Δ` in the spherical case, products of cliques of the
/// commutation graph in the right-angled case.
pub fn garside_family(cat: &Category) -> Result<GarsideFamily<'_>> {
    let c = coxeter(cat)?;
    if is_right_angled(cat)? {
        let mut letters = Vec::new();
        for mask in 1u64..(1 << c.n) {
            let set: Vec<AtomId> = (0..c.n).filter(|&a| mask >> a & 1 == 1).collect();
            if set.iter().all(|&a| set.iter().all(|&b| a == b || c.m(a, b) == Some(2))) {
                letters.push(element(c.canonical(&set)));
            }
        }
        return GarsideFamily::new(cat, letters);
    }
    let probe = spherical_probe(cat, cat.fuel())?;
    if probe.is_holds() {
        let delta = &probe.witness[0].1.word;
        let mut letters = BTreeSet::new();
        for w in c.class(delta) {
            for n in 1..=w.len() {
                letters.insert(c.canonical(&w[..n]));
            }
        }
        return GarsideFamily::new(cat, letters.into_iter().map(element).collect());
    }
    if probe.is_fails() {
        return Err(Error::Unsupported(
            "finite Garside families of non-spherical, non-right-angled Artin-Tits monoids (low elements) are not implemented"
                .into(),
        ));
    }
    Err(Error::OutOfFuel(cat.fuel()))
}

/// All principal cones meet. For finitely many atoms this is sphericity.
pub fn left_reversibility_probe(cat: &Category, fuel: usize) -> Result<Verdict> {
    let c = coxeter(cat)?;
    let sph = spherical_probe(cat, fuel)?;
    if sph.is_holds() {
        return Ok(Verdict::holds(Basis::Structural("spherical")));
    }
    for a in 0..c.n {
        for b in a + 1..c.n {
            if c.reverse(&[a], &[b], fuel) == Reversal::Empty {
                return Ok(Verdict::fails(
                    Basis::Structural("reversing certifies disjoint cones"),
                    vec![("a", cat.atom(a)), ("b", cat.atom(b))],
                ));
            }
        }
    }
    if sph.is_fails() {
        let w = sph.witness.clone();
        return Ok(Verdict::fails(Basis::Structural("reversing certifies disjoint cones"), w));
    }
    Ok(Verdict::unknown(fuel, Vec::new()))
}

/// Atoms dividing `x` on the left and on the right.
pub fn lr_sets(cat: &Category, x: &Morphism) -> Result<(BTreeSet<AtomId>, BTreeSet<AtomId>)> {
    let c = coxeter(cat)?;
    let mut l = BTreeSet::new();
    let mut r = BTreeSet::new();
    for w in c.class(&x.word) {
        if let (Some(&f), Some(&e)) = (w.first(), w.last()) {
            l.insert(f);
            r.insert(e);
        }
    }
    Ok((l, r))
}

/// The classification predicted for an irreducible monoid, with the
/// non-spherical mechanism check.
#[derive(Debug, Clone)]
pub struct Regression {
    pub spherical: bool,
    pub expected: Vec<Pair>,
    /// Non-spherical: `closure({t}, ∅) = (S, ∅)` for every letter `t`.
    pub mechanism: Verdict,
}

pub fn at_classification_regression(fam: &GarsideFamily<'_>) -> Result<Regression> {
    let cat = fam.cat();
    if !is_irreducible(cat)? {
        return Err(Error::Unsupported("classification targets cover irreducible monoids only".into()));
    }
    let sph = spherical_probe(cat, cat.fuel())?;
    let all = Pair::new(0..fam.len(), []);
    let top = Pair::new(0..fam.len(), [0]);
    if sph.is_holds() {
        let delta = fam.letter_of(&sph.witness[0].1).expect("Δ is a letter");
        let mut expected = vec![Pair::default(), Pair::new([delta], []), all, top];
        expected.dedup();
        return Ok(Regression { spherical: true, expected, mechanism: Verdict::holds(Basis::Vacuous) });
    }
    if !sph.is_fails() {
        return Err(Error::OutOfFuel(cat.fuel()));
    }
    let mut mechanism = Verdict::holds(Basis::Exhaustive);
    for t in 0..fam.len() {
        if closure(fam, &Pair::new([t], []))? != all {
            mechanism = Verdict::fails(Basis::Exhaustive, vec![("t", fam.letter(t).clone())]);
            break;
        }
    }
    Ok(Regression { spherical: false, expected: vec![Pair::default(), all, top], mechanism })
}
