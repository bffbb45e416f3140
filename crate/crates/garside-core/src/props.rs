//! Deciders for the groupoid criteria of finitely aligned left cancellative
//! categories, and the separator search behind the group `G^c`.
//!
//! Every probe quantifies over balls of atom length at most `depth`. Finite
//! backends are searched exhaustively; structural shortcuts are used where a
//! backend property settles the quantifier outright.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::artin::lr_sets;
use crate::cat::{AtomId, Backend, BackendKind, Category, Morphism, ObjId};
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    Hausdorff,
    BoundaryHausdorff,
    TopFree,
    Effective,
    BoundaryMinimal,
    BoundaryLocContr,
    BoundaryTopFree,
    BoundaryEffective,
    Cofinal,
    PureInfWitness,
    GcTrivial,
}

impl Criterion {
    pub const ALL: [Criterion; 11] = [
        Criterion::Hausdorff,
        Criterion::BoundaryHausdorff,
        Criterion::TopFree,
        Criterion::Effective,
        Criterion::BoundaryMinimal,
        Criterion::BoundaryLocContr,
        Criterion::BoundaryTopFree,
        Criterion::BoundaryEffective,
        Criterion::Cofinal,
        Criterion::PureInfWitness,
        Criterion::GcTrivial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Hausdorff => "hausdorff",
            Criterion::BoundaryHausdorff => "boundary-hausdorff",
            Criterion::TopFree => "topfree",
            Criterion::Effective => "effective",
            Criterion::BoundaryMinimal => "boundary-minimal",
            Criterion::BoundaryLocContr => "boundary-loccontr",
            Criterion::BoundaryTopFree => "boundary-topfree",
            Criterion::BoundaryEffective => "boundary-effective",
            Criterion::Cofinal => "cofinal",
            Criterion::PureInfWitness => "pure-inf",
            Criterion::GcTrivial => "gc-trivial",
        }
    }

    pub fn from_name(name: &str) -> Option<Criterion> {
        Criterion::ALL.iter().copied().find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    pub depth: usize,
}

pub fn check(cat: &Category, criterion: Criterion, depth: usize) -> Result<CriterionReport> {
    match criterion {
        Criterion::Hausdorff => hausdorff_probe(cat, depth),
        Criterion::BoundaryHausdorff => boundary_hausdorff_probe(cat, depth),
        Criterion::TopFree => topfree_probe(cat, depth),
        Criterion::Effective => effective_probe(cat, depth),
        Criterion::BoundaryMinimal => boundary_minimal_probe(cat, depth),
        Criterion::BoundaryLocContr => boundary_loccontr_probe(cat, depth),
        Criterion::BoundaryTopFree => boundary_topfree_probe(cat, depth),
        Criterion::BoundaryEffective => boundary_effective_probe(cat, depth),
        Criterion::Cofinal => Ok(cofinality_check(cat)),
        Criterion::PureInfWitness => pure_inf_witness(cat, depth),
        Criterion::GcTrivial => gc_trivial_probe(cat, depth),
    }
}

pub fn check_all(cat: &Category, depth: usize) -> Result<Vec<CriterionReport>> {
    Criterion::ALL.iter().map(|&c| check(cat, c, depth)).collect()
}

fn report(criterion: Criterion, verdict: Verdict, depth: usize) -> CriterionReport {
    CriterionReport { criterion, verdict, depth }
}

fn radius(cat: &Category, depth: usize) -> usize {
    if cat.kind() == BackendKind::Explicit {
        depth.max(1)
    } else {
        depth
    }
}

/// Exhaustive for explicit tables, bounded otherwise.
fn search_basis(cat: &Category, depth: usize) -> Basis {
    if cat.kind() == BackendKind::Explicit {
        Basis::Exhaustive
    } else {
        Basis::Bounded(depth)
    }
}

/// Every element of atom length at most `depth`, over all targets.
fn everything(cat: &Category, depth: usize) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for v in 0..cat.num_objects() {
        out.extend(cat.ball(v, radius(cat, depth))?);
    }
    Ok(out)
}

fn parallel(c: &Morphism, d: &Morphism) -> bool {
    c.src == d.src && c.dst == d.dst
}

fn meets(cat: &Category, a: &Morphism, b: &Morphism) -> Result<bool> {
    Ok(!cat.disjoint(a, b)?)
}

fn all_meet(cat: &Category, v: ObjId) -> bool {
    cat.cones_always_meet(v) == Some(true)
}

/// `{x : cx = dx}` inside `range`.
fn equalizer(cat: &Category, c: &Morphism, d: &Morphism, range: &[Morphism]) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for x in range.iter().filter(|x| x.dst == c.src) {
        if cat.compose(c, x)? == cat.compose(d, x)? {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// For all parallel `c ≠ d` the equalizer is a finite union of cones.
pub fn hausdorff_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    if cat.is_right_cancellative() {
        let v = Verdict::holds(Basis::Structural("finitely aligned and right cancellative"));
        return Ok(report(Criterion::Hausdorff, v, depth));
    }
    // Only explicit tables can fail right cancellation, so the ball is everything.
    let all = everything(cat, depth)?;
    for c in &all {
        for d in all.iter().filter(|d| *d != c && parallel(c, d)) {
            for x in equalizer(cat, c, d, &all)? {
                for y in all.iter().filter(|y| y.dst == x.src) {
                    let xy = cat.compose(&x, y)?;
                    if cat.compose(c, &xy)? != cat.compose(d, &xy)? {
                        let w = vec![("c", c.clone()), ("d", d.clone()), ("x", x.clone()), ("y", y.clone())];
                        return Ok(report(Criterion::Hausdorff, Verdict::fails(Basis::Exhaustive, w), depth));
                    }
                }
            }
        }
    }
    Ok(report(Criterion::Hausdorff, Verdict::holds(Basis::Exhaustive), depth))
}

/// For `𝔱(c) = 𝔱(d)`, the equalizers of `c, d` are covered up to meeting
/// by finitely many of them.
pub fn boundary_hausdorff_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    if cat.is_right_cancellative() {
        let v = Verdict::holds(Basis::Structural("finitely aligned and right cancellative"));
        return Ok(report(Criterion::BoundaryHausdorff, v, depth));
    }
    let all = everything(cat, depth)?;
    for c in &all {
        for d in all.iter().filter(|d| d.dst == c.dst && d.src == c.src) {
            let eq = equalizer(cat, c, d, &all)?;
            let gens: Vec<&Morphism> = eq
                .iter()
                .filter(|x| !eq.iter().any(|y| cat.left_divides(y, x) && !cat.left_divides(x, y)))
                .collect();
            for x in &eq {
                let mut covered = false;
                for g in &gens {
                    if meets(cat, x, g)? {
                        covered = true;
                        break;
                    }
                }
                if !covered {
                    let w = vec![("c", c.clone()), ("d", d.clone()), ("x", x.clone())];
                    return Ok(report(Criterion::BoundaryHausdorff, Verdict::fails(Basis::Exhaustive, w), depth));
                }
            }
        }
    }
    Ok(report(Criterion::BoundaryHausdorff, Verdict::holds(Basis::Exhaustive), depth))
}

pub fn topfree_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    Ok(report(Criterion::TopFree, unit_probe(cat, false)?, depth))
}

pub fn effective_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    Ok(report(Criterion::Effective, unit_probe(cat, true)?, depth))
}

const MAX_CONE_FAMILY: usize = 16;

/// For every loop unit `u` at `v` and every finite family of non-units, if
/// `u` fixes the complement of their cones up to units, then it fixes some
/// point of it (`every = false`) or all of it (`every = true`).
fn unit_probe(cat: &Category, every: bool) -> Result<Verdict> {
    if cat.has_trivial_loop_units() {
        return Ok(Verdict::holds(Basis::Structural("the only loop units are identities")));
    }
    for v in 0..cat.num_objects() {
        let at_v = cat.ball(v, 1)?;
        let units: Vec<&Morphism> = at_v.iter().filter(|u| u.src == v && cat.is_unit(u) && !u.is_identity()).collect();
        let nonunits: Vec<&Morphism> = at_v.iter().filter(|x| !cat.is_unit(x)).collect();
        if nonunits.len() > MAX_CONE_FAMILY {
            return Err(Error::Capacity(format!("{} non-units at one object", nonunits.len())));
        }
        for u in &units {
            for mask in 0u32..(1 << nonunits.len()) {
                let cones: Vec<&Morphism> =
                    nonunits.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| *c).collect();
                let rest: Vec<&Morphism> =
                    at_v.iter().filter(|z| !cones.iter().any(|c| cat.left_divides(c, z))).collect();
                let mut hypothesis = true;
                let mut fixed = 0;
                for z in &rest {
                    let uz = cat.compose(u, z)?;
                    hypothesis &= cat.unit_equivalent(&uz, z);
                    fixed += usize::from(&uz == *z);
                }
                let conclusion = if every { fixed == rest.len() } else { fixed > 0 };
                if hypothesis && !conclusion {
                    let mut w = vec![("unit", (*u).clone())];
                    w.extend(cones.iter().map(|c| ("cone", (*c).clone())));
                    return Ok(Verdict::fails(Basis::Exhaustive, w));
                }
            }
        }
    }
    Ok(Verdict::holds(Basis::Exhaustive))
}

/// For all objects `v, w`: finitely many `xᵢ ∈ v𝔠` with `w𝔠𝔡(xᵢ) ≠ ∅` such
/// that every `x ∈ v𝔠` meets some `xᵢ𝔠`.
pub fn boundary_minimal_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    if cat.num_objects() == 1 {
        let v = Verdict::holds_with(Basis::Structural("one object: the identity meets every cone"), vec![(
            "x1",
            Morphism::identity(0),
        )]);
        return Ok(report(Criterion::BoundaryMinimal, v, depth));
    }
    let mut searched = false;
    for v in 0..cat.num_objects() {
        let ball = cat.ball(v, radius(cat, depth))?;
        for w in 0..cat.num_objects() {
            let reach = cat.sources_reaching(w);
            if reach.contains(&v) {
                continue;
            }
            let cands: Vec<&Morphism> = ball.iter().filter(|x| reach.contains(&x.src)).collect();
            for x in &ball {
                // Any xᵢ meeting x gives an element of 𝔡(x)𝔠 whose domain reaches w.
                if cat.reachable_from(x.src).is_disjoint(&reach) {
                    let wit = vec![("x", x.clone()), ("w", Morphism::identity(w))];
                    return Ok(report(Criterion::BoundaryMinimal, Verdict::fails(Basis::Structural("no extension of x reaches w"), wit), depth));
                }
                let mut covered = false;
                for c in &cands {
                    if meets(cat, x, c)? {
                        covered = true;
                        break;
                    }
                }
                if !covered {
                    // A finite table has nothing beyond the ball, and more xᵢ only help.
                    let wit = vec![("x", x.clone()), ("w", Morphism::identity(w))];
                    let verdict = if cat.kind() == BackendKind::Explicit {
                        Verdict::fails(Basis::Exhaustive, wit)
                    } else {
                        Verdict::unknown(depth, wit)
                    };
                    return Ok(report(Criterion::BoundaryMinimal, verdict, depth));
                }
            }
            searched = true;
        }
    }
    let basis = if !searched {
        Basis::Structural("every object reaches every other: the identity serves")
    } else {
        search_basis(cat, depth)
    };
    Ok(report(Criterion::BoundaryMinimal, Verdict::holds(basis), depth))
}

/// A witness `(c, d, y₀, …, yₙ)` for one `x`, with `d = x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionWitness {
    pub c: Morphism,
    pub d: Morphism,
    pub ys: Vec<Morphism>,
}

/// For every `x` in the ball: `c, d` with a common domain and `y₀..yₙ` such
/// that `dyᵢ𝔠 ⊆ x𝔠`, each `cyᵢ𝔠` is covered up to meeting by the `dyⱼ𝔠`,
/// and `dy₀𝔠` misses every `cyᵢ𝔠`.
pub fn boundary_loccontr_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    let mut wit = Vec::new();
    for v in 0..cat.num_objects() {
        for x in cat.ball(v, radius(cat, depth))? {
            match loccontr_witness(cat, &x, depth)? {
                Some(found) => {
                    if x.is_identity() {
                        wit.push(("c", found.c));
                        wit.extend(found.ys.into_iter().map(|y| ("y", y)));
                    }
                }
                None => {
                    return Ok(report(Criterion::BoundaryLocContr, Verdict::unknown(depth, vec![("x", x)]), depth));
                }
            }
        }
    }
    Ok(report(Criterion::BoundaryLocContr, Verdict::holds_with(search_basis(cat, depth), wit), depth))
}

const MAX_Y_CHOICES: usize = 8;

pub fn loccontr_witness(cat: &Category, x: &Morphism, depth: usize) -> Result<Option<ContractionWitness>> {
    let ys: Vec<Morphism> = cat.ball(x.src, 1)?.into_iter().filter(|y| !y.is_identity()).collect();
    if ys.len() > MAX_Y_CHOICES {
        return Err(Error::Capacity(format!("{} atoms into one object", ys.len())));
    }
    let cs: Vec<Morphism> = cat
        .ball(x.dst, radius(cat, cat.atom_len(x) + 1))?
        .into_iter()
        .filter(|c| c.src == x.src && c != x)
        .collect();
    let dys: Vec<Morphism> = ys.iter().map(|y| cat.compose(x, y)).collect::<Result<_>>()?;
    for c in &cs {
        let cys: Vec<Morphism> = ys.iter().map(|y| cat.compose(c, y)).collect::<Result<_>>()?;
        for y0 in 0..ys.len() {
            let others: Vec<usize> = (0..ys.len()).filter(|&i| i != y0).collect();
            'family: for mask in 0u32..(1 << others.len()) {
                let mut fam = vec![y0];
                fam.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &j)| j));
                for &i in &fam {
                    if meets(cat, &dys[y0], &cys[i])? {
                        continue 'family;
                    }
                }
                let targets: Vec<&Morphism> = fam.iter().map(|&j| &dys[j]).collect();
                for &i in &fam {
                    if !covered(cat, &cys[i], &targets, depth.min(1))? {
                        continue 'family;
                    }
                }
                let chosen = fam.iter().map(|&j| ys[j].clone()).collect();
                return Ok(Some(ContractionWitness { c: c.clone(), d: x.clone(), ys: chosen }));
            }
        }
    }
    Ok(None)
}

/// Every `z ∈ a𝔠` meets some target cone: exact through a dividing target,
/// otherwise checked on extensions by `budget` atoms.
fn covered(cat: &Category, a: &Morphism, targets: &[&Morphism], budget: usize) -> Result<bool> {
    if targets.iter().any(|t| cat.left_divides(t, a)) {
        return Ok(true);
    }
    let mut any = false;
    for t in targets {
        if meets(cat, a, t)? {
            any = true;
            break;
        }
    }
    if !any || budget == 0 {
        return Ok(any);
    }
    for w in cat.ball(a.src, 1)?.iter().filter(|w| !w.is_identity()) {
        if !covered(cat, &cat.compose(a, w)?, targets, budget - 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For parallel `c ≠ d` whose translates meet along every `x` with
/// `cx ∈ d𝔠`, every admissible `(y, z₁..zₙ)` leaves room for an equalizer
/// `z′` avoiding the `zᵢ`.
pub fn boundary_topfree_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    let v = if cat.is_right_cancellative() { topfree_cancellative(cat, depth)? } else { topfree_literal(cat, depth)? };
    Ok(report(Criterion::BoundaryTopFree, v, depth))
}

/// An `x` with `cx ∈ d𝔠` and `cx𝔠 ∩ dx𝔠 = ∅`, searched over `range`.
fn hypothesis_breaker(cat: &Category, c: &Morphism, d: &Morphism, range: &[Morphism]) -> Result<Option<Morphism>> {
    for x in range.iter().filter(|x| x.dst == c.src) {
        let cx = cat.compose(c, x)?;
        if cat.left_divides(d, &cx) && cat.disjoint(&cx, &cat.compose(d, x)?)? {
            return Ok(Some(x.clone()));
        }
    }
    Ok(None)
}

/// With right cancellation no `z′` equalizes `c ≠ d`, so the criterion fails
/// exactly when some pair with meeting cones satisfies the hypothesis.
fn topfree_cancellative(cat: &Category, depth: usize) -> Result<Verdict> {
    let all = everything(cat, depth)?;
    for c in &all {
        for d in all.iter().filter(|d| *d != c && parallel(c, d)) {
            let Some(m) = cat.mcm_set(c, d)?.into_iter().next() else { continue };
            let y = cat.quotient(c, &m).ok_or_else(|| Error::Invalid("mcm is not a multiple".into()))?;
            let w = vec![("c", c.clone()), ("d", d.clone()), ("y", y)];
            if all_meet(cat, c.dst) {
                return Ok(Verdict::fails(Basis::Structural("all cones meet and no element equalizes c ≠ d"), w));
            }
            // Breakers sit past d, so the x range grows with the pair.
            let reach = depth + cat.atom_len(c).max(cat.atom_len(d));
            if hypothesis_breaker(cat, c, d, &cat.ball(c.src, reach)?)?.is_none() {
                return Ok(Verdict::unknown(depth, w));
            }
        }
    }
    Ok(Verdict::holds(Basis::Bounded(depth)))
}

fn subsets<T: Clone>(items: &[T]) -> Result<Vec<Vec<T>>> {
    if items.len() > MAX_CONE_FAMILY {
        return Err(Error::Capacity(format!("{} candidate cones", items.len())));
    }
    Ok((0u32..(1 << items.len()))
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()).collect())
        .collect())
}

fn avoids(cat: &Category, z: &Morphism, family: &[Morphism]) -> Result<bool> {
    for f in family {
        if meets(cat, z, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Literal quantifiers over a finite table.
fn topfree_literal(cat: &Category, depth: usize) -> Result<Verdict> {
    let all = everything(cat, depth)?;
    for c in &all {
        for d in all.iter().filter(|d| *d != c && parallel(c, d)) {
            if hypothesis_breaker(cat, c, d, &all)?.is_some() {
                continue;
            }
            let eq = equalizer(cat, c, d, &all)?;
            for y in all.iter().filter(|y| y.dst == c.src) {
                if !cat.left_divides(d, &cat.compose(c, y)?) {
                    continue;
                }
                let cone: Vec<Morphism> = all.iter().filter(|z| cat.left_divides(y, z)).cloned().collect();
                for zs in subsets(&cone)? {
                    let mut room = false;
                    for z in &cone {
                        if avoids(cat, z, &zs)? {
                            room = true;
                            break;
                        }
                    }
                    if !room {
                        continue;
                    }
                    let mut found = false;
                    for z in &eq {
                        if avoids(cat, z, &zs)? {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        let mut w = vec![("c", c.clone()), ("d", d.clone()), ("y", y.clone())];
                        w.extend(zs.into_iter().map(|z| ("z", z)));
                        return Ok(Verdict::fails(Basis::Exhaustive, w));
                    }
                }
            }
        }
    }
    Ok(Verdict::holds(Basis::Exhaustive))
}

/// For parallel `c, d` and every relative cone `δ = a𝔠 \ ⋃ aₕ𝔠` inside
/// `c⁻¹(d𝔠 ∩ c𝔠)` on which the translates meet, `δ` is covered by pieces
/// where `c` and `d` agree.
pub fn boundary_effective_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    let v = if cat.is_right_cancellative() { effective_cancellative(cat, depth)? } else { effective_literal(cat, depth)? };
    Ok(report(Criterion::BoundaryEffective, v, depth))
}

/// No piece can equalize `c ≠ d`, so any nonempty admissible `δ` fails. Only
/// principal `δ = a𝔠` are searched.
fn effective_cancellative(cat: &Category, depth: usize) -> Result<Verdict> {
    let all = everything(cat, depth)?;
    for c in &all {
        for d in all.iter().filter(|d| *d != c && parallel(c, d)) {
            if cat.disjoint(c, d)? {
                continue;
            }
            for a in cat.ball(c.src, depth)? {
                if !cat.left_divides(d, &cat.compose(c, &a)?) {
                    continue;
                }
                let w = vec![("c", c.clone()), ("d", d.clone()), ("a", a.clone())];
                if all_meet(cat, c.dst) {
                    return Ok(Verdict::fails(Basis::Structural("all cones meet and no element equalizes c ≠ d"), w));
                }
                let reach = depth + cat.atom_len(c).max(cat.atom_len(d));
                let ext: Vec<Morphism> =
                    cat.ball(a.src, reach)?.iter().map(|x| cat.compose(&a, x)).collect::<Result<_>>()?;
                if hypothesis_breaker(cat, c, d, &ext)?.is_none() {
                    return Ok(Verdict::unknown(depth, w));
                }
            }
        }
    }
    Ok(Verdict::holds(Basis::Bounded(depth)))
}

fn effective_literal(cat: &Category, depth: usize) -> Result<Verdict> {
    let all = everything(cat, depth)?;
    for c in &all {
        for d in all.iter().filter(|d| *d != c && parallel(c, d)) {
            let eq = equalizer(cat, c, d, &all)?;
            for a in all.iter().filter(|a| a.dst == c.src) {
                let cone: Vec<Morphism> = all.iter().filter(|z| cat.left_divides(a, z)).cloned().collect();
                for holes in subsets(&cone)? {
                    let delta: Vec<&Morphism> =
                        cone.iter().filter(|z| !holes.iter().any(|h| cat.left_divides(h, z))).collect();
                    if !effective_instance(cat, c, d, &all, &eq, &delta)? {
                        let mut w = vec![("c", c.clone()), ("d", d.clone()), ("a", a.clone())];
                        w.extend(holes.into_iter().map(|h| ("hole", h)));
                        return Ok(Verdict::fails(Basis::Exhaustive, w));
                    }
                }
            }
        }
    }
    Ok(Verdict::holds(Basis::Exhaustive))
}

/// One `δ`: false when the hypothesis holds and no family of agreeing pieces
/// covers it. The largest agreeing piece below `b` is `b𝔠` minus everything
/// outside `δ`, so it suffices to try all of them at once.
fn effective_instance(
    cat: &Category,
    c: &Morphism,
    d: &Morphism,
    all: &[Morphism],
    eq: &[Morphism],
    delta: &[&Morphism],
) -> Result<bool> {
    let in_delta = |z: &Morphism| delta.contains(&z);
    for y in delta {
        if !cat.left_divides(d, &cat.compose(c, y)?) {
            return Ok(true);
        }
    }
    for x in delta {
        let cone_inside = all.iter().filter(|z| cat.left_divides(x, z)).all(in_delta);
        if cone_inside && cat.disjoint(&cat.compose(c, x)?, &cat.compose(d, x)?)? {
            return Ok(true);
        }
    }
    let mut pieces: BTreeSet<Morphism> = BTreeSet::new();
    for b in eq.iter().filter(|b| in_delta(b)) {
        for y in all.iter().filter(|y| cat.left_divides(b, y)) {
            let path_inside = all.iter().filter(|w| cat.left_divides(b, w) && cat.left_divides(w, y)).all(in_delta);
            if path_inside {
                pieces.insert(y.clone());
            }
        }
    }
    for z in delta {
        if !all.iter().any(|y| pieces.contains(y) && cat.left_divides(z, y)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `w𝔠v ≠ ∅` for all objects `v, w`.
pub fn cofinality_check(cat: &Category) -> CriterionReport {
    for w in 0..cat.num_objects() {
        let reach = cat.sources_reaching(w);
        for v in 0..cat.num_objects() {
            if !reach.contains(&v) {
                let wit = vec![("v", Morphism::identity(v)), ("w", Morphism::identity(w))];
                return report(Criterion::Cofinal, Verdict::fails(Basis::Exhaustive, wit), 0);
            }
        }
    }
    report(Criterion::Cofinal, Verdict::holds(Basis::Exhaustive), 0)
}

/// Each object `v` carries `a, b ∈ v𝔠` with disjoint cones.
pub fn pure_inf_witness(cat: &Category, depth: usize) -> Result<CriterionReport> {
    let mut wit = Vec::new();
    for v in 0..cat.num_objects() {
        let ball = cat.ball(v, radius(cat, depth))?;
        let mut found = None;
        'search: for (i, a) in ball.iter().enumerate() {
            for b in &ball[i + 1..] {
                if cat.disjoint(a, b)? {
                    found = Some((a.clone(), b.clone()));
                    break 'search;
                }
            }
        }
        match found {
            Some((a, b)) => {
                wit.push(("a", a));
                wit.push(("b", b));
            }
            None if all_meet(cat, v) => {
                let v = Verdict::fails(Basis::Structural("all cones meet"), vec![("v", Morphism::identity(v))]);
                return Ok(report(Criterion::PureInfWitness, v, depth));
            }
            None => {
                let v = Verdict::unknown(depth, vec![("v", Morphism::identity(v))]);
                return Ok(report(Criterion::PureInfWitness, v, depth));
            }
        }
    }
    Ok(report(Criterion::PureInfWitness, Verdict::holds_with(Basis::Exhaustive, wit), depth))
}

/// Outcome of the separator search for one `g = u v⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    /// `pP ∩ gpP = ∅`, so `g ∉ G^c`.
    Separator(Morphism),
    /// No separator of length at most `depth`. With `certain`, none exists
    /// at all and `g ∈ G^c`.
    NoSeparator { depth: usize, certain: bool },
}

enum GroupModel {
    /// Every two principal right ideals meet.
    Ore,
    /// Free partially commutative: `commute[a][b]` when `ab = ba` is a relation.
    Trace(Vec<Vec<bool>>),
}

fn group_model(cat: &Category) -> Result<GroupModel> {
    if cat.num_objects() != 1 {
        return Err(Error::Unsupported("G^c needs a monoid".into()));
    }
    if all_meet(cat, 0) {
        return Ok(GroupModel::Ore);
    }
    let n = cat.atoms().len();
    match &cat.backend {
        Backend::Paths(_) if cat.kind() == BackendKind::GraphPath => Ok(GroupModel::Trace(vec![vec![false; n]; n])),
        Backend::Artin(c) => {
            let mut commute = vec![vec![false; n]; n];
            for a in 0..n {
                for b in 0..n {
                    match c.m(a, b) {
                        Some(2) => commute[a][b] = true,
                        None => {}
                        _ if a == b => {}
                        _ => return Err(Error::Unsupported("group embedding is only declared for right-angled or spherical Artin-Tits monoids".into())),
                    }
                }
            }
            Ok(GroupModel::Trace(commute))
        }
        _ => Err(Error::Unsupported("group embedding is not declared for this backend".into())),
    }
}

type Signed = (AtomId, bool);

/// Free reduction up to commutation: cancels `a^ε w a^-ε` when `w` commutes with `a`.
fn reduce_trace(commute: &[Vec<bool>], mut w: Vec<Signed>) -> Vec<Signed> {
    'again: loop {
        for i in 0..w.len() {
            let (a, s) = w[i];
            for j in i + 1..w.len() {
                if w[j].0 == a {
                    if w[j].1 != s {
                        w.remove(j);
                        w.remove(i);
                        continue 'again;
                    }
                    break;
                }
                if !commute[a][w[j].0] {
                    break;
                }
            }
        }
        return w;
    }
}

/// Whether a reduced trace lies in `PP⁻¹`: no inverse letter must precede a
/// positive one in the heap order.
fn in_positive_negative(commute: &[Vec<bool>], w: &[Signed]) -> bool {
    for i in (0..w.len()).filter(|&i| !w[i].1) {
        let mut above = vec![i];
        for l in i + 1..w.len() {
            if above.iter().any(|&k| w[k].0 == w[l].0 || !commute[w[k].0][w[l].0]) {
                if w[l].1 {
                    return false;
                }
                above.push(l);
            }
        }
    }
    true
}

fn signed(m: &Morphism, positive: bool) -> Vec<Signed> {
    if positive {
        m.word.iter().map(|&a| (a, true)).collect()
    } else {
        m.word.iter().rev().map(|&a| (a, false)).collect()
    }
}

fn right_divisible(cat: &Category, x: &Morphism, a: AtomId) -> Result<bool> {
    if x.is_identity() {
        return Ok(false);
    }
    if cat.kind() == BackendKind::Artin {
        return Ok(lr_sets(cat, x)?.1.contains(&a));
    }
    let atom = cat.atom(a);
    for y in cat.ball(x.dst, cat.atom_len(x) - 1)? {
        if y.src == atom.dst && cat.compose(&y, &atom)? == *x {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_fraction(cat: &Category, u: &Morphism, v: &Morphism) -> Result<()> {
    for m in [u, v] {
        if m.src != 0 || m.dst != 0 {
            return Err(Error::Argument(format!("{} is not an element of the monoid", cat.render(m))));
        }
    }
    for a in 0..cat.atoms().len() {
        if right_divisible(cat, u, a)? && right_divisible(cat, v, a)? {
            return Err(Error::Argument(format!(
                "the fraction {}·({})⁻¹ is not reduced: both end in {}",
                cat.render(u),
                cat.render(v),
                cat.atoms()[a].name
            )));
        }
    }
    Ok(())
}

/// Searches `p` with `|p| ≤ depth` and `pP ∩ gpP = ∅` for `g = u v⁻¹`.
///
/// `gpP` meets `pP` iff `p⁻¹gp ∈ PP⁻¹`, decided on reduced traces.
pub fn gc_probe(cat: &Category, u: &Morphism, v: &Morphism, depth: usize) -> Result<Separation> {
    let model = group_model(cat)?;
    check_fraction(cat, u, v)?;
    if u.is_identity() && v.is_identity() {
        return Ok(Separation::NoSeparator { depth, certain: true });
    }
    let commute = match model {
        GroupModel::Ore => return Ok(Separation::NoSeparator { depth, certain: true }),
        GroupModel::Trace(c) => c,
    };
    for p in cat.ball(0, depth)? {
        let mut h = signed(&p, false);
        h.extend(signed(u, true));
        h.extend(signed(v, false));
        h.extend(signed(&p, true));
        if !in_positive_negative(&commute, &reduce_trace(&commute, h)) {
            return Ok(Separation::Separator(p));
        }
    }
    Ok(Separation::NoSeparator { depth, certain: false })
}

/// Every reduced `g = u v⁻¹ ≠ 1` with `|u| + |v| ≤ depth` has a separator.
pub fn gc_trivial_probe(cat: &Category, depth: usize) -> Result<CriterionReport> {
    if let Err(e) = group_model(cat) {
        return match e {
            Error::Unsupported(_) => Ok(report(Criterion::GcTrivial, Verdict::unsupported("no declared group embedding"), depth)),
            e => Err(e),
        };
    }
    let ball = cat.ball(0, depth)?;
    for total in 1..=depth {
        for u in ball.iter().filter(|u| cat.atom_len(u) <= total) {
            for v in ball.iter().filter(|v| cat.atom_len(u) + cat.atom_len(v) == total) {
                if check_fraction(cat, u, v).is_err() {
                    continue;
                }
                match gc_probe(cat, u, v, depth)? {
                    Separation::Separator(_) => {}
                    Separation::NoSeparator { certain, .. } => {
                        let w = vec![("numerator", u.clone()), ("denominator", v.clone())];
                        let verdict = if certain {
                            Verdict::fails(Basis::Structural("left reversible: every translate meets"), w)
                        } else {
                            Verdict::unknown(depth, w)
                        };
                        return Ok(report(Criterion::GcTrivial, verdict, depth));
                    }
                }
            }
        }
    }
    Ok(report(Criterion::GcTrivial, Verdict::holds(Basis::Bounded(depth)), depth))
}
