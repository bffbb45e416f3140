//! Artin-Tits monoids: word equality via the finite equivalence class of a
//! word, and lcm computation by right reversing.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Atom, AtomId, AxiomCheck, Backend, BackendKind, Category, Morphism, ObjId, BALL_CAP};
use crate::spec::ArtinSpec;
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

/// Outcome of right reversing `u⁻¹v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reversal {
    /// `u·v_tail = v·u_tail` is the least common right multiple.
    Complement { u_tail: Vec<AtomId>, v_tail: Vec<AtomId> },
    /// `u𝔠 ∩ v𝔠 = ∅`.
    Empty,
    OutOfFuel { steps: usize },
}

#[derive(Debug, Clone)]
pub(crate) struct Coxeter {
    pub n: usize,
    m: Vec<Vec<Option<u32>>>,
    asymmetric: Vec<(AtomId, AtomId)>,
    too_small: Vec<(AtomId, AtomId)>,
    relations: Vec<(Vec<AtomId>, Vec<AtomId>)>,
}

/// The alternating word `x y x y ⋯` of length `len`.
pub(crate) fn alternating(x: AtomId, y: AtomId, len: usize) -> Vec<AtomId> {
    (0..len).map(|i| if i % 2 == 0 { x } else { y }).collect()
}

pub(crate) fn build(spec: &ArtinSpec) -> Result<Category> {
    let mut atoms: Vec<Atom> = Vec::new();
    for a in &spec.atoms {
        if atoms.iter().any(|x| &x.name == a) {
            return Err(Error::structural(format!("atom {}", a), "duplicate name"));
        }
        atoms.push(Atom { name: a.clone(), src: 0, dst: 0, color: 1 });
    }
    let n = atoms.len();
    let mut m: Vec<Vec<Option<Option<u32>>>> = vec![vec![None; n]; n];
    let mut asymmetric = Vec::new();
    let mut too_small = Vec::new();
    for (a, b, val) in &spec.m {
        let field = format!("m {} {}", a, b);
        let ia = atoms.iter().position(|x| &x.name == a).ok_or_else(|| Error::structural(&field, format!("unknown atom {}", a)))?;
        let ib = atoms.iter().position(|x| &x.name == b).ok_or_else(|| Error::structural(&field, format!("unknown atom {}", b)))?;
        if ia == ib {
            return Err(Error::structural(field, "diagonal entries are not used"));
        }
        if matches!(val, Some(v) if *v < 2) {
            too_small.push((ia, ib));
            continue;
        }
        for (x, y) in [(ia, ib), (ib, ia)] {
            match m[x][y] {
                Some(old) if old != *val => {
                    if !asymmetric.contains(&(ia, ib)) {
                        asymmetric.push((ia, ib));
                    }
                }
                _ => m[x][y] = Some(*val),
            }
        }
    }
    let m: Vec<Vec<Option<u32>>> = m.into_iter().map(|row| row.into_iter().map(|v| v.flatten()).collect()).collect();
    let mut relations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if let Some(k) = m[a][b] {
                if a != b {
                    relations.push((alternating(a, b, k as usize), alternating(b, a, k as usize)));
                }
            }
        }
    }
    let cox = Coxeter { n, m, asymmetric, too_small, relations };
    Ok(Category::from_parts(BackendKind::Artin, vec![String::from("v")], atoms, Backend::Artin(cox)))
}

impl Coxeter {
    /// `m_{a,b}`, with `None` for ∞.
    pub fn m(&self, a: AtomId, b: AtomId) -> Option<u32> {
        if a == b {
            Some(1)
        } else {
            self.m[a][b]
        }
    }

    /// All words equal to `w` in the monoid. Finite because relations are homogeneous.
    pub fn class(&self, w: &[AtomId]) -> BTreeSet<Vec<AtomId>> {
        let mut seen = BTreeSet::new();
        seen.insert(w.to_vec());
        let mut stack = vec![w.to_vec()];
        while let Some(x) = stack.pop() {
            for (lhs, rhs) in &self.relations {
                let k = lhs.len();
                if k > x.len() {
                    continue;
                }
                for i in 0..=x.len() - k {
                    if x[i..i + k] == lhs[..] {
                        let mut y = x.clone();
                        y[i..i + k].copy_from_slice(rhs);
                        if seen.insert(y.clone()) {
                            stack.push(y);
                        }
                    }
                }
            }
        }
        seen
    }

    /// Lexicographically least word of the class.
    pub fn canonical(&self, w: &[AtomId]) -> Vec<AtomId> {
        if w.len() < 2 {
            return w.to_vec();
        }
        self.class(w).into_iter().next().unwrap_or_default()
    }

    pub fn quotient(&self, a: &Morphism, b: &Morphism) -> Option<Morphism> {
        if a.word.len() > b.word.len() {
            return None;
        }
        let n = a.word.len();
        self.class(&b.word)
            .into_iter()
            .find(|w| w[..n] == a.word[..])
            .map(|w| Morphism { dst: 0, src: 0, word: self.canonical(&w[n..]) })
    }

    /// Right reversing of `u⁻¹v` with a step budget.
    pub fn reverse(&self, u: &[AtomId], v: &[AtomId], fuel: usize) -> Reversal {
        // (letter, positive)
        let mut w: Vec<(AtomId, bool)> = u.iter().rev().map(|&a| (a, false)).collect();
        w.extend(v.iter().map(|&a| (a, true)));
        let mut steps = 0;
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| !w[i].1 && w[i + 1].1) {
            if steps >= fuel {
                return Reversal::OutOfFuel { steps };
            }
            steps += 1;
            let (x, y) = (w[i].0, w[i + 1].0);
            if x == y {
                w.drain(i..i + 2);
                continue;
            }
            let Some(k) = self.m(x, y) else {
                return Reversal::Empty;
            };
            let k = k as usize - 1;
            let mut rep: Vec<(AtomId, bool)> = alternating(y, x, k).into_iter().map(|a| (a, true)).collect();
            rep.extend(alternating(x, y, k).into_iter().rev().map(|a| (a, false)));
            w.splice(i..i + 2, rep);
        }
        let split = w.iter().position(|&(_, pos)| !pos).unwrap_or(w.len());
        let v_tail = w[..split].iter().map(|&(a, _)| a).collect();
        let u_tail = w[split..].iter().rev().map(|&(a, _)| a).collect();
        Reversal::Complement { u_tail, v_tail }
    }

    pub fn ball(&self, _v: ObjId, radius: usize) -> Result<Vec<Morphism>> {
        let mut all: BTreeSet<Vec<AtomId>> = BTreeSet::new();
        all.insert(Vec::new());
        let mut layer: BTreeSet<Vec<AtomId>> = all.clone();
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for w in &layer {
                for a in 0..self.n {
                    let mut x = w.clone();
                    x.push(a);
                    next.insert(self.canonical(&x));
                }
            }
            if all.len() + next.len() > BALL_CAP {
                return Err(Error::Capacity(format!("ball of radius {} exceeds {} elements", radius, BALL_CAP)));
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        Ok(all.into_iter().map(|word| Morphism { dst: 0, src: 0, word }).collect())
    }

    pub fn validate(&self, cat: &Category) -> Vec<AxiomCheck> {
        let pair = |(a, b): (AtomId, AtomId)| vec![("a", cat.atom(a)), ("b", cat.atom(b))];
        vec![
            AxiomCheck {
                axiom: "symmetric exponents",
                verdict: match self.asymmetric.first() {
                    Some(&p) => Verdict::fails(Basis::Exhaustive, pair(p)),
                    None => Verdict::holds(Basis::Exhaustive),
                },
            },
            AxiomCheck {
                axiom: "exponents at least 2",
                verdict: match self.too_small.first() {
                    Some(&p) => Verdict::fails(Basis::Exhaustive, pair(p)),
                    None => Verdict::holds(Basis::Exhaustive),
                },
            },
            AxiomCheck {
                axiom: "left cancellation",
                verdict: Verdict::holds(Basis::Structural("Artin-Tits monoids are cancellative")),
            },
        ]
    }
}
