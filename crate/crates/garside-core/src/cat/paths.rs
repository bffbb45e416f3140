//! Path categories of directed graphs and of k-graphs given by squares.
//!
//! Canonical words list colors in ascending order. Squares are stored in both
//! orientations, so any bi-colored pair can be swapped in one lookup.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Atom, AtomId, AxiomCheck, Backend, BackendKind, Category, Morphism, ObjId, BALL_CAP};
use crate::spec::PathSpec;
use crate::verdict::{Basis, Verdict};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct Paths {
    pub k: usize,
    swap: BTreeMap<(AtomId, AtomId), (AtomId, AtomId)>,
    conflicts: Vec<(AtomId, AtomId)>,
    by_target: Vec<Vec<AtomId>>,
    colors: Vec<usize>,
}

pub(crate) fn build(spec: &PathSpec, kgraph: bool) -> Result<Category> {
    if spec.vertices.is_empty() {
        return Err(Error::structural("vertices", "the empty category is not allowed"));
    }
    let mut vid: BTreeMap<&str, ObjId> = BTreeMap::new();
    for (i, v) in spec.vertices.iter().enumerate() {
        if vid.insert(v.as_str(), i).is_some() {
            return Err(Error::structural(format!("vertex {}", v), "duplicate name"));
        }
    }
    let mut eid: BTreeMap<&str, AtomId> = BTreeMap::new();
    let mut atoms = Vec::new();
    for (i, e) in spec.edges.iter().enumerate() {
        let field = format!("edge {}", e.name);
        if eid.insert(e.name.as_str(), i).is_some() {
            return Err(Error::structural(field, "duplicate name"));
        }
        let s = *vid.get(e.src.as_str()).ok_or_else(|| Error::structural(&field, format!("unknown vertex {}", e.src)))?;
        let d = *vid.get(e.dst.as_str()).ok_or_else(|| Error::structural(&field, format!("unknown vertex {}", e.dst)))?;
        if e.color == 0 || (!kgraph && e.color != 1) {
            return Err(Error::structural(field, "colors start at 1; plain graphs use a single color"));
        }
        atoms.push(Atom { name: e.name.clone(), src: s, dst: d, color: e.color });
    }
    if !kgraph && !spec.squares.is_empty() {
        return Err(Error::structural("square", "plain graphs carry no squares"));
    }
    let k = atoms.iter().map(|a| a.color).max().unwrap_or(1);
    let mut swap = BTreeMap::new();
    let mut conflicts = Vec::new();
    for sq in &spec.squares {
        let field = format!("square {} {} = {} {}", sq.first, sq.second, sq.third, sq.fourth);
        let look = |x: &str| eid.get(x).copied().ok_or_else(|| Error::structural(&field, format!("unknown edge {}", x)));
        let (x, y, z, w) = (look(&sq.first)?, look(&sq.second)?, look(&sq.third)?, look(&sq.fourth)?);
        let (ax, ay, az, aw) = (&atoms[x], &atoms[y], &atoms[z], &atoms[w]);
        if ax.src != ay.dst || az.src != aw.dst {
            return Err(Error::structural(field, "each side must be a composable path"));
        }
        if ax.color == ay.color || az.color != ay.color || aw.color != ax.color {
            return Err(Error::structural(field, "a square relates two bi-colored paths with swapped colors"));
        }
        if ax.dst != az.dst || ay.src != aw.src {
            return Err(Error::structural(field, "both sides must share target and domain"));
        }
        for (key, val) in [((x, y), (z, w)), ((z, w), (x, y))] {
            match swap.get(&key) {
                Some(old) if *old != val => conflicts.push(key),
                _ => {
                    swap.insert(key, val);
                }
            }
        }
    }
    let mut by_target = vec![Vec::new(); spec.vertices.len()];
    for (i, a) in atoms.iter().enumerate() {
        by_target[a.dst].push(i);
    }
    let colors = atoms.iter().map(|a| a.color).collect();
    let paths = Paths { k, swap, conflicts, by_target, colors };
    let kind = if kgraph { BackendKind::KGraph } else { BackendKind::GraphPath };
    Ok(Category::from_parts(kind, spec.vertices.clone(), atoms, Backend::Paths(paths)))
}

impl Paths {
    pub fn color(&self, a: AtomId) -> usize {
        self.colors[a]
    }

    pub fn edges_into(&self, v: ObjId) -> &[AtomId] {
        &self.by_target[v]
    }

    pub fn swap_pair(&self, x: AtomId, y: AtomId) -> Option<(AtomId, AtomId)> {
        self.swap.get(&(x, y)).copied()
    }

    /// Sorts colors ascending by repeated square swaps.
    pub fn canonical(&self, _cat: &Category, mut w: Vec<AtomId>) -> Vec<AtomId> {
        loop {
            let mut changed = false;
            for i in 0..w.len().saturating_sub(1) {
                if self.colors[w[i]] > self.colors[w[i + 1]] {
                    if let Some((a, b)) = self.swap_pair(w[i], w[i + 1]) {
                        w[i] = a;
                        w[i + 1] = b;
                        changed = true;
                    }
                }
            }
            if !changed {
                return w;
            }
        }
    }

    /// Rewrites `w` so that its colors read `pattern`, which must be a
    /// permutation of the colors of `w`.
    pub fn rearrange(&self, mut w: Vec<AtomId>, pattern: &[usize]) -> Option<Vec<AtomId>> {
        if pattern.len() != w.len() {
            return None;
        }
        for (i, &c) in pattern.iter().enumerate() {
            let j = (i..w.len()).find(|&j| self.colors[w[j]] == c)?;
            for p in (i..j).rev() {
                let (a, b) = self.swap_pair(w[p], w[p + 1])?;
                w[p] = a;
                w[p + 1] = b;
            }
        }
        Some(w)
    }

    pub fn degree(&self, _cat: &Category, w: &[AtomId]) -> Vec<usize> {
        let mut d = vec![0; self.k];
        for &a in w {
            d[self.colors[a] - 1] += 1;
        }
        d
    }

    fn ascending(deg: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &n) in deg.iter().enumerate() {
            out.extend(core::iter::repeat_n(i + 1, n));
        }
        out
    }

    pub fn quotient(&self, cat: &Category, a: &Morphism, b: &Morphism) -> Option<Morphism> {
        let da = self.degree(cat, &a.word);
        let db = self.degree(cat, &b.word);
        if da.iter().zip(&db).any(|(x, y)| x > y) {
            return None;
        }
        let rest: Vec<usize> = db.iter().zip(&da).map(|(y, x)| y - x).collect();
        let mut pattern = Self::ascending(&da);
        pattern.extend(Self::ascending(&rest));
        let r = self.rearrange(b.word.clone(), &pattern)?;
        let n = a.word.len();
        if r[..n] != a.word[..] {
            return None;
        }
        Some(Morphism { dst: a.src, src: b.src, word: r[n..].to_vec() })
    }

    pub fn mcm_set(&self, cat: &Category, a: &Morphism, b: &Morphism) -> Vec<Morphism> {
        let da = self.degree(cat, &a.word);
        let db = self.degree(cat, &b.word);
        let join: Vec<usize> = da.iter().zip(&db).map(|(x, y)| *x.max(y)).collect();
        let need: Vec<usize> = join.iter().zip(&da).map(|(j, x)| j - x).collect();
        let mut out = BTreeSet::new();
        for y in self.paths_of_degree(cat, a.src, &need) {
            let mut w = a.word.clone();
            w.extend(y);
            let last_src = w.last().map(|&e| cat.atoms()[e].src).unwrap_or(a.src);
            let m = Morphism { dst: a.dst, src: last_src, word: self.canonical(cat, w) };
            if self.quotient(cat, b, &m).is_some() {
                out.insert(m);
            }
        }
        out.into_iter().collect()
    }

    /// Canonical paths with target `v` of the given degree.
    pub fn paths_of_degree(&self, cat: &Category, v: ObjId, deg: &[usize]) -> Vec<Vec<AtomId>> {
        let mut out = Vec::new();
        let mut remaining = deg.to_vec();
        let mut cur = Vec::new();
        self.walk_degree(cat, v, &mut remaining, &mut cur, &mut out);
        out
    }

    fn walk_degree(&self, cat: &Category, v: ObjId, remaining: &mut [usize], cur: &mut Vec<AtomId>, out: &mut Vec<Vec<AtomId>>) {
        let Some(c) = remaining.iter().position(|&n| n > 0) else {
            out.push(cur.clone());
            return;
        };
        remaining[c] -= 1;
        for &e in &self.by_target[v] {
            if self.colors[e] == c + 1 {
                cur.push(e);
                self.walk_degree(cat, cat.atoms()[e].src, remaining, cur, out);
                cur.pop();
            }
        }
        remaining[c] += 1;
    }

    pub fn ball(&self, cat: &Category, v: ObjId, radius: usize) -> Result<Vec<Morphism>> {
        let mut out = vec![Morphism::identity(v)];
        let mut frontier = vec![Morphism::identity(v)];
        for _ in 0..radius {
            let mut next = Vec::new();
            for m in &frontier {
                let min_color = m.word.last().map(|&e| self.colors[e]).unwrap_or(0);
                for &e in &self.by_target[m.src] {
                    if self.colors[e] >= min_color {
                        let mut w = m.word.clone();
                        w.push(e);
                        next.push(Morphism { dst: v, src: cat.atoms()[e].src, word: w });
                    }
                }
            }
            if out.len() + next.len() > BALL_CAP {
                return Err(Error::Capacity(format!("ball of radius {} exceeds {} elements", radius, BALL_CAP)));
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    pub fn validate(&self, cat: &Category) -> Vec<AxiomCheck> {
        let atoms = cat.atoms();
        let mut checks = Vec::new();
        let mut missing = None;
        'outer: for x in 0..atoms.len() {
            for &y in &self.by_target[atoms[x].src] {
                if self.colors[x] != self.colors[y] && !self.swap.contains_key(&(x, y)) {
                    missing = Some((x, y));
                    break 'outer;
                }
            }
        }
        checks.push(AxiomCheck {
            axiom: "square completeness",
            verdict: match missing {
                Some((x, y)) => Verdict::fails(Basis::Exhaustive, vec![("first", cat.atom(x)), ("second", cat.atom(y))]),
                None => Verdict::holds(Basis::Exhaustive),
            },
        });
        checks.push(AxiomCheck {
            axiom: "square uniqueness",
            verdict: match self.conflicts.first() {
                Some(&(x, y)) => Verdict::fails(Basis::Exhaustive, vec![("first", cat.atom(x)), ("second", cat.atom(y))]),
                None => Verdict::holds(Basis::Exhaustive),
            },
        });
        if self.k >= 3 {
            checks.push(AxiomCheck { axiom: "cube condition", verdict: self.cube_check(cat) });
        }
        checks.push(AxiomCheck {
            axiom: "left cancellation",
            verdict: Verdict::holds(Basis::Structural("unique factorization")),
        });
        checks
    }

    fn bubble(&self, mut w: Vec<AtomId>, from_left: bool) -> Option<Vec<AtomId>> {
        loop {
            let n = w.len();
            let pos: Vec<usize> = (0..n - 1).filter(|&i| self.colors[w[i]] > self.colors[w[i + 1]]).collect();
            let i = if from_left { pos.first() } else { pos.last() };
            let Some(&i) = i else { return Some(w) };
            let (a, b) = self.swap_pair(w[i], w[i + 1])?;
            w[i] = a;
            w[i + 1] = b;
        }
    }

    fn cube_check(&self, cat: &Category) -> Verdict {
        let atoms = cat.atoms();
        for x in 0..atoms.len() {
            for &y in &self.by_target[atoms[x].src] {
                for &z in &self.by_target[atoms[y].src] {
                    let (cx, cy, cz) = (self.colors[x], self.colors[y], self.colors[z]);
                    if cx == cy || cy == cz || cx == cz {
                        continue;
                    }
                    let w = vec![x, y, z];
                    let l = self.bubble(w.clone(), true);
                    let r = self.bubble(w, false);
                    if l != r {
                        return Verdict::fails(
                            Basis::Exhaustive,
                            vec![("first", cat.atom(x)), ("second", cat.atom(y)), ("third", cat.atom(z))],
                        );
                    }
                }
            }
        }
        Verdict::holds(Basis::Exhaustive)
    }
}
