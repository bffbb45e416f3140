//! Pairs `(T, D)` of letters and vertices, which classify the closed
//! invariant subspaces of Ω.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cat::{BackendKind, Morphism, ObjId};
use crate::chars::Character;
use crate::garside::{GarsideFamily, LetterId, NormalWord};
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

/// Largest `|𝔖| + |𝔠⁰|` accepted by [`enumerate_pairs`].
pub const ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub t: BTreeSet<LetterId>,
    pub d: BTreeSet<ObjId>,
}

impl Pair {
    pub fn new(t: impl IntoIterator<Item = LetterId>, d: impl IntoIterator<Item = ObjId>) -> Self {
        Pair { t: t.into_iter().collect(), d: d.into_iter().collect() }
    }

    pub fn full(fam: &GarsideFamily<'_>) -> Self {
        Pair::new(0..fam.len(), 0..fam.cat().num_objects())
    }

    pub fn is_subset(&self, other: &Pair) -> bool {
        self.t.is_subset(&other.t) && self.d.is_subset(&other.d)
    }

    pub fn union(&self, other: &Pair) -> Pair {
        Pair { t: &self.t | &other.t, d: &self.d | &other.d }
    }

    pub fn intersection(&self, other: &Pair) -> Pair {
        Pair { t: &self.t & &other.t, d: &self.d & &other.d }
    }

    fn key(&self) -> (usize, Vec<LetterId>, usize, Vec<ObjId>) {
        (self.t.len(), self.t.iter().copied().collect(), self.d.len(), self.d.iter().copied().collect())
    }
}

/// A pair with its three defining predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPair {
    pub pair: Pair,
    pub admissible: Verdict,
    pub h_invariant: Verdict,
    pub max_closed: Verdict,
}

impl InvariantPair {
    pub fn assess(fam: &GarsideFamily<'_>, pair: Pair) -> Result<Self> {
        Ok(InvariantPair {
            admissible: is_admissible(fam, &pair),
            h_invariant: is_h_invariant(fam, &pair)?,
            max_closed: is_max_closed(fam, &pair),
            pair,
        })
    }

    pub fn is_valid(&self) -> bool {
        self.admissible.is_holds() && self.h_invariant.is_holds() && self.max_closed.is_holds()
    }
}

/// Valid pairs ordered by `(|T|, T, |D|, D)`, with covering relations.
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    pub pairs: Vec<InvariantPair>,
    /// `(i, j)` when pair `i` is covered by pair `j`.
    pub hasse: Vec<(usize, usize)>,
    pub boundary: Boundary,
    /// Whether each pair lies below the boundary pair.
    pub in_boundary: Vec<bool>,
}

/// The pair of the boundary `∂Ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub pair: Pair,
    /// False when some letter was excluded only for lack of a witness at the searched depth.
    pub exact: bool,
}

/// The letters `H(ax)` forced into `T` by each letter or vertex `x`.
#[derive(Debug, Clone)]
struct Requirements {
    by_letter: Vec<BTreeSet<LetterId>>,
    by_vertex: Vec<BTreeSet<LetterId>>,
    /// A witness `a` for each forced head, for failure reports.
    why_letter: Vec<BTreeMap<LetterId, Morphism>>,
    why_vertex: Vec<BTreeMap<LetterId, Morphism>>,
}

impl Requirements {
    fn new(fam: &GarsideFamily<'_>) -> Result<Self> {
        let cat = fam.cat();
        let n_obj = cat.num_objects();
        let mut by_letter = vec![BTreeSet::new(); fam.len()];
        let mut by_vertex = vec![BTreeSet::new(); n_obj];
        let mut why_letter = vec![BTreeMap::new(); fam.len()];
        let mut why_vertex = vec![BTreeMap::new(); n_obj];
        if cat.kind() == BackendKind::Explicit {
            let mut non_units = Vec::new();
            for v in 0..n_obj {
                non_units.extend(cat.ball(v, 1)?.into_iter().filter(|a| !cat.is_unit(a)));
            }
            for a in &non_units {
                let h = fam.head(a)?;
                by_vertex[a.src].insert(h);
                why_vertex[a.src].entry(h).or_insert_with(|| a.clone());
                for x in 0..fam.len() {
                    if fam.dst(x) == a.src {
                        let h = fam.head(&cat.compose(a, fam.letter(x))?)?;
                        by_letter[x].insert(h);
                        why_letter[x].entry(h).or_insert_with(|| a.clone());
                    }
                }
            }
        } else {
            for s in 0..fam.len() {
                by_vertex[fam.src(s)].insert(s);
                why_vertex[fam.src(s)].entry(s).or_insert_with(|| fam.letter(s).clone());
                for x in 0..fam.len() {
                    if let Some((h, _)) = fam.nf2(s, x) {
                        by_letter[x].insert(h);
                        why_letter[x].entry(h).or_insert_with(|| fam.letter(s).clone());
                    }
                }
            }
        }
        Ok(Requirements { by_letter, by_vertex, why_letter, why_vertex })
    }
}

fn letter_witness(fam: &GarsideFamily<'_>, s: LetterId) -> Morphism {
    fam.letter(s).clone()
}

/// Every `t ∈ T` has `t′ ∈ T` with `t|t′` normal, or `𝔡(t) ∈ D`.
pub fn is_admissible(fam: &GarsideFamily<'_>, p: &Pair) -> Verdict {
    for &t in &p.t {
        if p.d.contains(&fam.src(t)) {
            continue;
        }
        if !p.t.iter().any(|&t2| fam.is_normal_pair(t, t2)) {
            return Verdict::fails(Basis::Exhaustive, vec![("t", letter_witness(fam, t))]);
        }
    }
    Verdict::holds(Basis::Exhaustive)
}

/// `H(ax) ∈ T` for every non-invertible `a` and `x ∈ T ∪ D` with `𝔡(a) = 𝔱(x)`.
///
/// Exact: on presented backends the nested-head rule reduces `a` to single
/// letters, and explicit tables are finite.
pub fn is_h_invariant(fam: &GarsideFamily<'_>, p: &Pair) -> Result<Verdict> {
    let req = Requirements::new(fam)?;
    Ok(h_invariant_with(fam, &req, p))
}

fn h_invariant_with(fam: &GarsideFamily<'_>, req: &Requirements, p: &Pair) -> Verdict {
    for &x in &p.t {
        if let Some(h) = req.by_letter[x].iter().find(|h| !p.t.contains(h)) {
            return Verdict::fails(
                Basis::Exhaustive,
                vec![("a", req.why_letter[x][h].clone()), ("x", letter_witness(fam, x))],
            );
        }
    }
    for &v in &p.d {
        if let Some(h) = req.by_vertex[v].iter().find(|h| !p.t.contains(h)) {
            return Verdict::fails(
                Basis::Exhaustive,
                vec![("a", req.why_vertex[v][h].clone()), ("x", Morphism::identity(v))],
            );
        }
    }
    Verdict::holds(Basis::Exhaustive)
}

/// Vacuous: all families here are locally finite, so sequences in `T`
/// converge only by being eventually constant.
pub fn is_max_closed(fam: &GarsideFamily<'_>, _p: &Pair) -> Verdict {
    debug_assert!(fam.locally_finite());
    Verdict::holds(Basis::Vacuous)
}

/// Smallest H-invariant pair containing `p`.
pub fn closure(fam: &GarsideFamily<'_>, p: &Pair) -> Result<Pair> {
    let req = Requirements::new(fam)?;
    Ok(closure_with(&req, p))
}

fn closure_with(req: &Requirements, p: &Pair) -> Pair {
    let mut out = p.clone();
    for &v in &p.d {
        out.t.extend(req.by_vertex[v].iter().copied());
    }
    let mut stack: Vec<LetterId> = out.t.iter().copied().collect();
    while let Some(x) = stack.pop() {
        for &h in &req.by_letter[x] {
            if out.t.insert(h) {
                stack.push(h);
            }
        }
    }
    out
}

/// Largest admissible pair inside `p`.
pub fn interior(fam: &GarsideFamily<'_>, p: &Pair) -> Pair {
    let mut out = p.clone();
    loop {
        let dead: Vec<LetterId> = out
            .t
            .iter()
            .copied()
            .filter(|&t| !out.d.contains(&fam.src(t)) && !out.t.iter().any(|&t2| fam.is_normal_pair(t, t2)))
            .collect();
        if dead.is_empty() {
            return out;
        }
        for t in dead {
            out.t.remove(&t);
        }
    }
}

/// `χ ∈ X(T, D)`. Finite words need their letters in `T` and their domain in `D`.
pub fn x_membership(fam: &GarsideFamily<'_>, p: &Pair, chi: &Character) -> bool {
    match chi {
        Character::Vertex(v) => p.d.contains(v),
        Character::Finite(w) => w.letters.iter().all(|s| p.t.contains(s)) && p.d.contains(&fam.word_src(w)),
        Character::Infinite { .. } => chi.letters().iter().all(|s| p.t.contains(s)),
    }
}

/// `(𝔗(X), 𝔇(X))` of a sample of characters.
pub fn pair_of_subspace(sample: &[Character]) -> Pair {
    let mut p = Pair::default();
    for chi in sample {
        match chi {
            Character::Vertex(v) => {
                p.d.insert(*v);
            }
            _ => p.t.extend(chi.letters()),
        }
    }
    p
}

/// Characters of `X(p)` that together use every letter of `T` and every
/// vertex of `D`. Each letter starts a greedy walk inside `T`. Requires `p`
/// admissible.
pub fn generating_sample(fam: &GarsideFamily<'_>, p: &Pair) -> Result<Vec<Character>> {
    let mut out: Vec<Character> = p.d.iter().map(|&v| Character::Vertex(v)).collect();
    for &t in &p.t {
        let mut path = vec![t];
        let mut pos: BTreeMap<LetterId, usize> = BTreeMap::new();
        pos.insert(t, 0);
        loop {
            let cur = *path.last().expect("nonempty");
            if p.d.contains(&fam.src(cur)) {
                out.push(Character::Finite(NormalWord { target: fam.dst(t), letters: path }));
                break;
            }
            let Some(next) = p.t.iter().copied().find(|&n| fam.is_normal_pair(cur, n)) else {
                return Err(Error::Argument(format!("pair is not admissible at {}", fam.render_letter(cur))));
            };
            if let Some(&j) = pos.get(&next) {
                let period = path.split_off(j);
                out.push(Character::infinite(fam, path, period)?);
                break;
            }
            pos.insert(next, path.len());
            path.push(next);
        }
    }
    Ok(out)
}

/// Bitmask form of the two predicates, for enumeration.
struct MaskOracle {
    n_letters: usize,
    succ: Vec<u32>,
    src_bit: Vec<u32>,
    req: Vec<u32>,
}

impl MaskOracle {
    fn new(fam: &GarsideFamily<'_>) -> Result<Self> {
        let n_letters = fam.len();
        let n_obj = fam.cat().num_objects();
        if n_letters + n_obj > ENUMERATION_CAP {
            return Err(Error::Capacity(format!(
                "{} letters and {} vertices exceed the enumeration cap of {}; use closure from seed pairs instead",
                n_letters, n_obj, ENUMERATION_CAP
            )));
        }
        let r = Requirements::new(fam)?;
        let mask = |set: &BTreeSet<LetterId>| set.iter().fold(0u32, |m, &s| m | (1 << s));
        let succ = (0..n_letters).map(|s| fam.normal_successors(s).fold(0u32, |m, t| m | (1 << t))).collect();
        let src_bit = (0..n_letters).map(|s| 1u32 << (n_letters + fam.src(s))).collect();
        let mut req: Vec<u32> = r.by_letter.iter().map(mask).collect();
        req.extend(r.by_vertex.iter().map(mask));
        Ok(MaskOracle { n_letters, succ, src_bit, req })
    }

    fn valid(&self, m: u32) -> bool {
        let tm = m & ((1 << self.n_letters) - 1);
        let mut bits = m;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.req[i] & !tm != 0 {
                return false;
            }
            if i < self.n_letters && self.succ[i] & tm == 0 && self.src_bit[i] & m == 0 {
                return false;
            }
        }
        true
    }

    fn pair(&self, m: u32) -> Pair {
        let t = (0..self.n_letters).filter(|&i| m >> i & 1 == 1);
        let d = (self.n_letters..self.req.len()).filter(|&i| m >> i & 1 == 1).map(|i| i - self.n_letters);
        Pair::new(t, d)
    }
}

/// Number of candidate masks, for splitting [`enumerate_range`] across workers.
pub fn candidate_count(fam: &GarsideFamily<'_>) -> Result<u64> {
    let o = MaskOracle::new(fam)?;
    Ok(1u64 << o.req.len())
}

/// Valid pairs among candidate masks in `lo..hi`, unsorted.
pub fn enumerate_range(fam: &GarsideFamily<'_>, lo: u64, hi: u64) -> Result<Vec<Pair>> {
    let o = MaskOracle::new(fam)?;
    let hi = hi.min(1u64 << o.req.len());
    Ok((lo..hi).map(|m| m as u32).filter(|&m| o.valid(m)).map(|m| o.pair(m)).collect())
}

/// All valid pairs, ordered and linked by covering relations.
pub fn enumerate_pairs(fam: &GarsideFamily<'_>, depth: usize) -> Result<SubspaceLattice> {
    let n = candidate_count(fam)?;
    let pairs = enumerate_range(fam, 0, n)?;
    assemble_lattice(fam, pairs, depth)
}

/// Sorts, deduplicates and links pairs found by [`enumerate_range`].
pub fn assemble_lattice(fam: &GarsideFamily<'_>, mut pairs: Vec<Pair>, depth: usize) -> Result<SubspaceLattice> {
    pairs.sort_by_key(|p| p.key());
    pairs.dedup();
    let boundary = boundary_pair(fam, depth)?;
    let mut hasse = Vec::new();
    for j in 0..pairs.len() {
        for i in 0..j {
            if pairs[i].is_subset(&pairs[j])
                && !(0..pairs.len())
                    .any(|k| k != i && k != j && pairs[i].is_subset(&pairs[k]) && pairs[k].is_subset(&pairs[j]))
            {
                hasse.push((i, j));
            }
        }
    }
    let in_boundary = pairs.iter().map(|p| p.is_subset(&boundary.pair)).collect();
    let pairs = pairs.into_iter().map(|p| InvariantPair::assess(fam, p)).collect::<Result<Vec<_>>>()?;
    Ok(SubspaceLattice { pairs, hasse, boundary, in_boundary })
}

/// `(𝔗̄_Max, 𝔇̄_max)`.
pub fn boundary_pair(fam: &GarsideFamily<'_>, depth: usize) -> Result<Boundary> {
    let cat = fam.cat();
    let d_max: BTreeSet<ObjId> = (0..cat.num_objects()).filter(|&v| fam.at(v).is_empty()).collect();
    let mut t = BTreeSet::new();
    let mut exact = true;
    for s in 0..fam.len() {
        let v = fam.src(s);
        if cat.kind() == BackendKind::KGraph || cat.kind() == BackendKind::GraphPath {
            let deg = |r: LetterId| cat.degree(fam.letter(r)).expect("graded");
            let top = fam.at(fam.dst(s)).iter().map(|&r| deg(r).iter().sum::<usize>()).max().unwrap_or(0);
            if deg(s).iter().sum::<usize>() == top {
                t.insert(s);
            }
            continue;
        }
        let tildes: Vec<&Morphism> = fam
            .at(v)
            .iter()
            .filter(|&&u| cat.compose(fam.letter(s), fam.letter(u)).ok().and_then(|m| fam.letter_of(&m)).is_some())
            .map(|&u| fam.letter(u))
            .collect();
        if tildes.is_empty() {
            t.insert(s);
            continue;
        }
        let radius = if cat.kind() == BackendKind::Explicit { 1 } else { depth };
        let mut found = false;
        for x in fam.ball(v, radius)? {
            let xm = fam.product(&x);
            let mut ok = true;
            for u in &tildes {
                if !cat.disjoint(&xm, u)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                found = true;
                break;
            }
        }
        if found {
            t.insert(s);
        } else if cat.kind() != BackendKind::Explicit && cat.cones_always_meet(v) != Some(true) {
            exact = false;
        }
    }
    let mut reach: BTreeSet<LetterId> = (0..fam.len()).filter(|&s| d_max.contains(&fam.src(s))).collect();
    loop {
        let more: Vec<LetterId> = (0..fam.len())
            .filter(|s| !reach.contains(s))
            .filter(|&s| fam.normal_successors(s).any(|u| reach.contains(&u)))
            .collect();
        if more.is_empty() {
            break;
        }
        reach.extend(more);
    }
    t.extend(reach);
    let pair = closure(fam, &Pair { t, d: d_max })?;
    Ok(Boundary { pair, exact })
}

fn minus(a: &BTreeSet<LetterId>, b: &BTreeSet<LetterId>) -> BTreeSet<LetterId> {
    a - b
}

/// Hypotheses of the sufficient condition for topological freeness of
/// `X(p2) \ X(p1)`, over normal paths of length at most `depth`.
pub fn garside_topfree_probe(fam: &GarsideFamily<'_>, p1: &Pair, p2: &Pair, depth: usize) -> Result<Verdict> {
    if !p1.is_subset(p2) {
        return Err(Error::Argument("the first pair must be contained in the second".into()));
    }
    let cat = fam.cat();
    for &v in p2.d.difference(&p1.d) {
        if cat.kind() == BackendKind::Explicit {
            for u in cat.ball(v, 1)? {
                if u.src == v && cat.is_unit(&u) && !cat.unit_equivalent(&u, &Morphism::identity(v)) {
                    return Ok(Verdict::fails(Basis::Exhaustive, vec![("unit", u)]));
                }
            }
        }
    }
    let diff = minus(&p2.t, &p1.t);
    let words = fam.all_words(depth)?;
    for &s in &diff {
        let ts: Vec<LetterId> = diff.iter().copied().filter(|&t| fam.is_normal_pair(s, t)).collect();
        let mut groups: BTreeMap<(ObjId, Vec<LetterId>), Vec<(Option<LetterId>, usize)>> = BTreeMap::new();
        for (wi, a) in words.iter().enumerate() {
            if fam.word_src(a) != fam.src(s) {
                continue;
            }
            let sig = ts.iter().map(|&t| fam.head_incremental(&a.letters, t)).collect::<Result<Vec<_>>>()?;
            let first = a.letters.first().copied();
            let entry = groups.entry((a.target, sig)).or_default();
            if let Some(&(_, wj)) = entry.iter().find(|(f, _)| *f != first) {
                return Ok(Verdict::fails(
                    Basis::Bounded(depth),
                    vec![
                        ("a", fam.product(&words[wj])),
                        ("b", fam.product(a)),
                        ("s", fam.letter(s).clone()),
                    ],
                ));
            }
            if !entry.iter().any(|(f, _)| *f == first) {
                entry.push((first, wi));
            }
        }
    }
    Ok(Verdict::holds(Basis::Bounded(depth)))
}

/// Whether the letters of `set` carry an infinite normal path.
pub fn has_infinite_path(fam: &GarsideFamily<'_>, set: &BTreeSet<LetterId>) -> bool {
    let mut alive = set.clone();
    loop {
        let dead: Vec<LetterId> =
            alive.iter().copied().filter(|&s| !fam.normal_successors(s).any(|t| alive.contains(&t))).collect();
        if dead.is_empty() {
            return !alive.is_empty();
        }
        for s in dead {
            alive.remove(&s);
        }
    }
}

/// Normal paths of length `len` with letters in `set`, as letter lists.
fn paths_in(fam: &GarsideFamily<'_>, set: &BTreeSet<LetterId>, len: usize) -> Vec<Vec<LetterId>> {
    let mut cur: Vec<Vec<LetterId>> = set.iter().map(|&s| vec![s]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &cur {
            let last = *p.last().expect("nonempty");
            for t in fam.normal_successors(last).filter(|t| set.contains(t)) {
                let mut q = p.clone();
                q.push(t);
                next.push(q);
            }
        }
        cur = next;
    }
    if len == 0 {
        Vec::new()
    } else {
        cur
    }
}

/// Hypotheses of the sufficient condition for local contractiveness of
/// `X(p2) \ X(p1)`. The paths `q₁ ≠ q₂` are taken of equal length, with
/// letters in `T₂ \ T₁`.
pub fn garside_loccontr_probe(fam: &GarsideFamily<'_>, p1: &Pair, p2: &Pair, depth: usize) -> Result<Verdict> {
    if !p1.is_subset(p2) {
        return Err(Error::Argument("the first pair must be contained in the second".into()));
    }
    let diff = minus(&p2.t, &p1.t);
    if diff.is_empty() {
        return Ok(Verdict::holds(Basis::Vacuous));
    }
    if fam.len() + fam.cat().num_objects() <= ENUMERATION_CAP {
        let lattice = enumerate_range(fam, 0, candidate_count(fam)?)?;
        for q in lattice.iter().filter(|q| p1.is_subset(q) && q.is_subset(p2) && *q != p2) {
            if !has_infinite_path(fam, &minus(&p2.t, &q.t)) {
                let witness = match p2.t.difference(&q.t).next() {
                    Some(&s) => ("outside", fam.letter(s).clone()),
                    None => ("outside", Morphism::identity(*p2.d.difference(&q.d).next().expect("proper subpair"))),
                };
                return Ok(Verdict::fails(Basis::Exhaustive, vec![witness]));
            }
        }
    }
    let maximal: Vec<LetterId> = diff
        .iter()
        .copied()
        .filter(|&s| !diff.iter().any(|&r| r != s && fam.letter_divides(s, r).is_some()))
        .collect();
    let all_paths: Vec<Vec<Vec<LetterId>>> = (0..=depth).map(|l| paths_in(fam, &diff, l)).collect();
    let mut ends: BTreeMap<(LetterId, LetterId), &Vec<LetterId>> = BTreeMap::new();
    for c in all_paths.iter().flatten() {
        ends.entry((c[0], *c.last().expect("nonempty"))).or_insert(c);
    }
    let junction = |x: Option<LetterId>, y: LetterId| x.is_none_or(|x| fam.is_normal_pair(x, y));
    for (&(c_first, c_last), &c_path) in &ends {
        let mut ok = false;
        'search: for &s in &maximal {
            let p_ok = junction(Some(c_last), s)
                || all_paths.iter().skip(1).take(depth.saturating_sub(1)).flatten().any(|p| {
                    fam.is_normal_pair(c_last, p[0]) && fam.is_normal_pair(*p.last().expect("nonempty"), s)
                });
            if !p_ok {
                continue;
            }
            for paths in all_paths.iter().skip(1).take(depth) {
                let qs: Vec<&Vec<LetterId>> = paths
                    .iter()
                    .filter(|q| fam.is_normal_pair(s, q[0]) && fam.is_normal_pair(*q.last().expect("nonempty"), c_first))
                    .collect();
                if qs.len() >= 2 {
                    ok = true;
                    break 'search;
                }
            }
        }
        if !ok {
            let c = fam.product(&NormalWord { target: fam.dst(c_first), letters: c_path.clone() });
            return Ok(Verdict::unknown(depth, vec![("c", c)]));
        }
    }
    Ok(Verdict::holds(Basis::Bounded(depth)))
}
