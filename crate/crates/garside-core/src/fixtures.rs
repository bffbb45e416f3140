//! Reference categories shared by the unit tests.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::spec::{ArtinSpec, CategorySpec, CompDecl, EdgeDecl, ExplicitSpec, MorDecl, PathSpec, SquareDecl};
use crate::Category;

fn s(x: &str) -> String {
    x.to_string()
}

pub fn edge(name: &str, src: &str, dst: &str, color: usize) -> EdgeDecl {
    EdgeDecl { name: s(name), src: s(src), dst: s(dst), color }
}

pub fn square(a: &str, b: &str, c: &str, d: &str) -> SquareDecl {
    SquareDecl { first: s(a), second: s(b), third: s(c), fourth: s(d) }
}

pub fn graph(vertices: &[&str], edges: Vec<EdgeDecl>) -> Category {
    let spec = PathSpec { vertices: vertices.iter().map(|v| s(v)).collect(), edges, squares: Vec::new() };
    Category::new(&CategorySpec::GraphPath(spec)).unwrap()
}

pub fn kgraph(vertices: &[&str], edges: Vec<EdgeDecl>, squares: Vec<SquareDecl>) -> Category {
    let spec = PathSpec { vertices: vertices.iter().map(|v| s(v)).collect(), edges, squares };
    Category::new(&CategorySpec::KGraph(spec)).unwrap()
}

pub fn artin(atoms: &[&str], m: &[(&str, &str, Option<u32>)]) -> Category {
    let spec = ArtinSpec {
        atoms: atoms.iter().map(|a| s(a)).collect(),
        m: m.iter().map(|(a, b, k)| (s(a), s(b), *k)).collect(),
    };
    Category::new(&CategorySpec::Artin(spec)).unwrap()
}

pub fn explicit_spec(objects: &[&str], mors: &[(&str, &str, &str)], comps: &[(&str, &str, &str)]) -> CategorySpec {
    CategorySpec::Explicit(ExplicitSpec {
        objects: objects.iter().map(|o| s(o)).collect(),
        mors: mors.iter().map(|(n, a, b)| MorDecl { name: s(n), src: s(a), dst: s(b) }).collect(),
        comps: comps.iter().map(|(f, g, h)| CompDecl { f: s(f), g: s(g), h: s(h) }).collect(),
    })
}

/// Free monoid on `a`, `b` as a one-vertex graph.
pub fn free() -> Category {
    graph(&["v"], alloc::vec![edge("a", "v", "v", 1), edge("b", "v", "v", 1)])
}

/// The monoid ℕ as a one-loop graph.
pub fn nat() -> Category {
    graph(&["v"], alloc::vec![edge("a", "v", "v", 1)])
}

pub fn b3() -> Category {
    artin(&["a", "b"], &[("a", "b", Some(3))])
}

/// Right-angled on a, b, c with only a and c commuting.
pub fn raag() -> Category {
    artin(&["a", "b", "c"], &[("a", "c", Some(2))])
}

/// One vertex, blue `e`, red `f`, `ef = fe`.
pub fn square2() -> Category {
    kgraph(&["v"], alloc::vec![edge("e", "v", "v", 1), edge("f", "v", "v", 2)], alloc::vec![square("e", "f", "f", "e")])
}

/// One vertex, blue `e1 e2`, red `f1 f2`, with `e_i f_j = f_i e_j`.
pub fn flip() -> Category {
    let edges = alloc::vec![edge("e1", "v", "v", 1), edge("e2", "v", "v", 1), edge("f1", "v", "v", 2), edge("f2", "v", "v", 2)];
    let mut sq = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            sq.push(square(&alloc::format!("e{}", i), &alloc::format!("f{}", j), &alloc::format!("f{}", i), &alloc::format!("e{}", j)));
        }
    }
    kgraph(&["v"], edges, sq)
}

/// `e: v → w` plus a loop `l` at `w`.
pub fn two() -> Category {
    graph(&["v", "w"], alloc::vec![edge("e", "v", "w", 1), edge("l", "w", "w", 1)])
}

/// Two vertices, each with one loop.
pub fn disconnected() -> Category {
    graph(&["v", "w"], alloc::vec![edge("a", "v", "v", 1), edge("b", "w", "w", 1)])
}

/// The group of order two on one object.
pub fn z2() -> Category {
    Category::new(&explicit_spec(&["v"], &[("u", "v", "v")], &[("u", "u", "v")])).unwrap()
}

/// Affine type Ã₂: three atoms, every `m = 3`.
pub fn a2_tilde() -> Category {
    artin(&["a", "b", "c"], &[("a", "b", Some(3)), ("b", "c", Some(3)), ("a", "c", Some(3))])
}

/// Free monoid on `a`, `b` as an Artin-Tits monoid.
pub fn free_artin() -> Category {
    artin(&["a", "b"], &[])
}

/// One vertex, blue `e1 e2`, red `f`, with `e1 f = f e2` and `e2 f = f e1`.
pub fn flip3() -> Category {
    let edges = alloc::vec![edge("e1", "v", "v", 1), edge("e2", "v", "v", 1), edge("f", "v", "v", 2)];
    kgraph(&["v"], edges, alloc::vec![square("e1", "f", "f", "e2"), square("e2", "f", "f", "e1")])
}

/// A loop unit `u` at `v` swapping the two arrows `x, y: w → v`.
pub fn swap() -> Category {
    let mors = [("u", "v", "v"), ("x", "w", "v"), ("y", "w", "v")];
    Category::new(&explicit_spec(&["v", "w"], &mors, &[("u", "u", "v"), ("u", "x", "y"), ("u", "y", "x")])).unwrap()
}

/// `c, d: B → C` equalized by `x: A → B`; left but not right cancellative.
pub fn fork() -> Category {
    let mors = [("x", "A", "B"), ("c", "B", "C"), ("d", "B", "C"), ("e", "A", "C")];
    Category::new(&explicit_spec(&["A", "B", "C"], &mors, &[("c", "x", "e"), ("d", "x", "e")])).unwrap()
}

/// A directed cycle on two vertices.
pub fn cycle() -> Category {
    graph(&["v", "w"], alloc::vec![edge("e", "v", "w", 1), edge("f", "w", "v", 1)])
}
