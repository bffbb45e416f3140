//! Higher-rank graph specifics: the family of paths with 0/1 degrees, the
//! degree-level pair conditions, and hereditary saturated vertex sets.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cat::{Backend, BackendKind, Category, Morphism, ObjId};
use crate::garside::{GarsideFamily, LetterId};
use crate::invariants::{interior, Boundary, Pair};
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

/// Largest vertex count for subset enumeration.
pub const VERTEX_CAP: usize = 20;

/// Outcome of [`check_conditions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conditions {
    pub a: Verdict,
    pub i: Verdict,
    pub c: Verdict,
}

fn require_paths(cat: &Category) -> Result<&crate::cat::Paths> {
    match &cat.backend {
        Backend::Paths(p) => Ok(p),
        _ => Err(Error::Unsupported(format!("{} is not a graph or k-graph backend", cat.kind().name()))),
    }
}

/// Every path whose degree has entries in {0, 1} and is nonzero.
pub fn build_garside_family(cat: &Category) -> Result<GarsideFamily<'_>> {
    let p = require_paths(cat)?;
    let k = p.k;
    let mut letters = Vec::new();
    for v in 0..cat.num_objects() {
        for mask in 1u32..(1 << k) {
            let deg: Vec<usize> = (0..k).map(|i| (mask >> i & 1) as usize).collect();
            for word in p.paths_of_degree(cat, v, &deg) {
                let src = cat.atoms()[*word.last().expect("nonzero degree")].src;
                letters.push(Morphism { dst: v, src, word });
            }
            if letters.len() > crate::garside::WORD_CAP {
                return Err(Error::Capacity("too many letters of 0/1 degree".into()));
            }
        }
    }
    GarsideFamily::new(cat, letters)
}

/// Degree of a letter.
pub fn degree(fam: &GarsideFamily<'_>, s: LetterId) -> Vec<usize> {
    fam.cat().degree(fam.letter(s)).expect("graded backend")
}

fn leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Conditions (A), (I) and (C) read off degrees.
pub fn check_conditions(fam: &GarsideFamily<'_>, p: &Pair) -> Result<Conditions> {
    let cat = fam.cat();
    let paths = require_paths(cat)?;
    let k = paths.k;

    let mut a = Verdict::holds(Basis::Exhaustive);
    for &t in &p.t {
        let ok = p.d.contains(&fam.src(t))
            || p.t.iter().any(|&t2| fam.dst(t2) == fam.src(t) && leq(&degree(fam, t2), &degree(fam, t)));
        if !ok {
            a = Verdict::fails(Basis::Exhaustive, vec![("t", fam.letter(t).clone())]);
            break;
        }
    }

    let mut i = Verdict::holds(Basis::Exhaustive);
    let items: Vec<(Morphism, Vec<usize>)> = p
        .t
        .iter()
        .map(|&t| (fam.letter(t).clone(), degree(fam, t)))
        .chain(p.d.iter().map(|&v| (Morphism::identity(v), vec![0; k])))
        .collect();
    'outer: for (x, dx) in &items {
        for (atom_id, atom) in cat.atoms().iter().enumerate() {
            if atom.src != x.dst {
                continue;
            }
            let am = cat.atom(atom_id);
            let c = atom.color - 1;
            let needed = if dx[c] == 0 {
                cat.compose(&am, x)?
            } else {
                let mut dr = dx.clone();
                dr[c] -= 1;
                let r = if dr.iter().all(|&n| n == 0) {
                    Morphism::identity(x.dst)
                } else {
                    fam.at(x.dst)
                        .iter()
                        .map(|&r| fam.letter(r))
                        .find(|r| cat.degree(r).as_deref() == Some(&dr[..]) && cat.left_divides(r, x))
                        .cloned()
                        .ok_or_else(|| Error::Invalid("missing factorization".into()))?
                };
                cat.compose(&am, &r)?
            };
            if !fam.letter_of(&needed).is_some_and(|s| p.t.contains(&s)) {
                i = Verdict::fails(Basis::Exhaustive, vec![("a", am), ("t", x.clone())]);
                break 'outer;
            }
        }
    }

    let c = Verdict::holds(Basis::Vacuous);
    Ok(Conditions { a, i, c })
}

/// `v ∈ H` and `𝔱(a) = v` force `𝔡(a) ∈ H`.
pub fn is_hereditary(cat: &Category, h: &BTreeSet<ObjId>) -> bool {
    cat.atoms().iter().all(|a| !h.contains(&a.dst) || h.contains(&a.src))
}

/// Whether every vertex receives an edge of every color.
pub fn is_sourceless(cat: &Category) -> bool {
    let k = cat.rank();
    (0..cat.num_objects()).all(|v| (1..=k).all(|c| cat.atoms().iter().any(|a| a.dst == v && a.color == c)))
}

/// Row-finite saturation. For directed graphs a vertex joins `H` when it
/// receives at least one edge and all of them start in `H`. For k ≥ 2 the
/// same rule applies per color and the graph must be sourceless.
pub fn is_saturated(cat: &Category, h: &BTreeSet<ObjId>) -> Result<bool> {
    let k = cat.rank();
    if k >= 2 && !is_sourceless(cat) {
        return Err(Error::Domain("saturation for k ≥ 2 needs every vertex to receive every color".into()));
    }
    for v in (0..cat.num_objects()).filter(|v| !h.contains(v)) {
        for c in 1..=k {
            let mut into = cat.atoms().iter().filter(|a| a.dst == v && a.color == c).peekable();
            if into.peek().is_some() && into.all(|a| h.contains(&a.src)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All hereditary saturated vertex sets, by brute force over subsets.
pub fn hereditary_saturated_enumerate(cat: &Category) -> Result<Vec<BTreeSet<ObjId>>> {
    require_paths(cat)?;
    let n = cat.num_objects();
    if n > VERTEX_CAP {
        return Err(Error::Capacity(format!("{} vertices exceed the subset cap of {}", n, VERTEX_CAP)));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let h: BTreeSet<ObjId> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if is_hereditary(cat, &h) && is_saturated(cat, &h)? {
            out.push(h);
        }
    }
    out.sort_by_key(|h| (h.len(), h.iter().copied().collect::<Vec<_>>()));
    Ok(out)
}

/// Vertices whose boundary characters all avoid `X(p)`.
pub fn pair_to_hereditary(fam: &GarsideFamily<'_>, p: &Pair, boundary: &Boundary) -> Result<BTreeSet<ObjId>> {
    if !p.is_subset(&boundary.pair) {
        return Err(Error::Domain("pair is not contained in the boundary pair".into()));
    }
    let q = interior(fam, p);
    Ok((0..fam.cat().num_objects())
        .filter(|v| !q.d.contains(v) && !q.t.iter().any(|&t| fam.dst(t) == *v))
        .collect())
}

/// The pair of the boundary characters that never pass through `H`.
pub fn hereditary_to_pair(fam: &GarsideFamily<'_>, h: &BTreeSet<ObjId>, boundary: &Boundary) -> Pair {
    let b = &boundary.pair;
    let t = b.t.iter().copied().filter(|&s| !h.contains(&fam.src(s)) && !h.contains(&fam.dst(s)));
    let d = b.d.iter().copied().filter(|v| !h.contains(v));
    interior(fam, &Pair::new(t, d))
}

/// Whether the backend is a directed graph or k-graph.
pub fn is_graded(cat: &Category) -> bool {
    matches!(cat.kind(), BackendKind::GraphPath | BackendKind::KGraph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::garside::standard_family;
    use crate::invariants::{boundary_pair, enumerate_pairs, is_admissible, is_h_invariant};

    fn set(v: &[ObjId]) -> BTreeSet<ObjId> {
        v.iter().copied().collect()
    }

    #[test]
    fn family_sizes() {
        assert_eq!(build_garside_family(&fixtures::square2()).unwrap().len(), 3);
        assert_eq!(build_garside_family(&fixtures::two()).unwrap().len(), 2);
        assert_eq!(build_garside_family(&fixtures::flip3()).unwrap().len(), 5);
        assert_eq!(build_garside_family(&fixtures::flip()).unwrap().len(), 8);
        assert!(build_garside_family(&fixtures::b3()).is_err());
    }

    #[test]
    fn degree_is_additive() {
        for cat in [fixtures::square2(), fixtures::flip(), fixtures::flip3()] {
            let ball = cat.ball(0, 3).unwrap();
            for a in &ball {
                for b in &ball {
                    let sum: Vec<usize> =
                        cat.degree(a).unwrap().iter().zip(cat.degree(b).unwrap()).map(|(x, y)| x + y).collect();
                    assert_eq!(cat.degree(&cat.compose(a, b).unwrap()).unwrap(), sum);
                }
            }
        }
    }

    #[test]
    fn condition_examples() {
        let cat = fixtures::square2();
        let fam = standard_family(&cat).unwrap();
        let l = |w: &str| fam.letter_of(&cat.parse_word(w).unwrap()).unwrap();
        let c = check_conditions(&fam, &Pair::new([l("ef")], [])).unwrap();
        assert!(c.a.is_holds() && c.i.is_holds() && c.c.is_holds());
        assert_eq!(c.c.basis, Basis::Vacuous);
        let c = check_conditions(&fam, &Pair::new([l("e")], [])).unwrap();
        assert!(c.i.is_fails());
        assert_eq!(c.i.witness[0].1, cat.parse_word("f").unwrap());
        let c = check_conditions(&fam, &Pair::default()).unwrap();
        assert!(c.a.is_holds() && c.i.is_holds() && c.c.is_holds());
    }

    /// Every pair gets the same verdicts from the degree conditions and from
    /// the general predicates.
    #[test]
    fn conditions_match_general_predicates() {
        for cat in [fixtures::square2(), fixtures::flip(), fixtures::flip3(), fixtures::two(), fixtures::free(), fixtures::disconnected()] {
            let fam = standard_family(&cat).unwrap();
            let n = fam.len() + cat.num_objects();
            for mask in 0u32..(1 << n) {
                let p = Pair::new(
                    (0..fam.len()).filter(|&t| mask >> t & 1 == 1),
                    (0..cat.num_objects()).filter(|&v| mask >> (fam.len() + v) & 1 == 1),
                );
                let c = check_conditions(&fam, &p).unwrap();
                assert_eq!(c.a.status, is_admissible(&fam, &p).status, "{:?}", p);
                assert_eq!(c.i.status, is_h_invariant(&fam, &p).unwrap().status, "{:?}", p);
            }
        }
    }

    #[test]
    fn hereditary_saturated_sets() {
        let one = fixtures::free();
        assert_eq!(hereditary_saturated_enumerate(&one).unwrap(), [set(&[]), set(&[0])]);
        let two = fixtures::two();
        assert_eq!(hereditary_saturated_enumerate(&two).unwrap(), [set(&[]), set(&[0]), set(&[0, 1])]);
        let dis = fixtures::disconnected();
        assert_eq!(hereditary_saturated_enumerate(&dis).unwrap(), [set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]);
        assert!(hereditary_saturated_enumerate(&fixtures::b3()).is_err());
        let with_source = fixtures::kgraph(
            &["v", "w"],
            alloc::vec![fixtures::edge("e", "v", "v", 1), fixtures::edge("f", "w", "w", 2)],
            alloc::vec![],
        );
        assert!(matches!(is_saturated(&with_source, &set(&[])), Err(Error::Domain(_))));
    }

    #[test]
    fn correspondence_with_pairs() {
        for cat in [fixtures::square2(), fixtures::two(), fixtures::disconnected(), fixtures::free()] {
            let fam = standard_family(&cat).unwrap();
            let b = boundary_pair(&fam, 3).unwrap();
            assert_eq!(pair_to_hereditary(&fam, &b.pair, &b).unwrap(), set(&[]));
            let all: BTreeSet<ObjId> = (0..cat.num_objects()).collect();
            assert_eq!(pair_to_hereditary(&fam, &Pair::default(), &b).unwrap(), all);
            let hs = hereditary_saturated_enumerate(&cat).unwrap();
            for h in &hs {
                let p = hereditary_to_pair(&fam, h, &b);
                assert_eq!(&pair_to_hereditary(&fam, &p, &b).unwrap(), h);
            }
            let lattice = enumerate_pairs(&fam, 3).unwrap();
            let inside = lattice.in_boundary.iter().filter(|&&x| x).count();
            assert_eq!(inside, hs.len());
        }
        let cat = fixtures::two();
        let fam = standard_family(&cat).unwrap();
        let b = boundary_pair(&fam, 3).unwrap();
        assert_eq!(b.pair, Pair::new(0..fam.len(), [0]));
        assert!(matches!(pair_to_hereditary(&fam, &Pair::full(&fam), &b), Err(Error::Domain(_))));
    }
}
