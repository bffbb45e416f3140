//! Plain-data descriptions of categories, as produced by a parser.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategorySpec {
    Explicit(ExplicitSpec),
    GraphPath(PathSpec),
    KGraph(PathSpec),
    Artin(ArtinSpec),
}

/// A finite category given by its multiplication table.
///
/// Identities are implicit: one per object, named after the object. In a
/// `comp` line the result may name an object, meaning its identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExplicitSpec {
    pub objects: Vec<String>,
    pub mors: Vec<MorDecl>,
    pub comps: Vec<CompDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorDecl {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// `f ∘ g = h`, defined when the domain of `f` is the target of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompDecl {
    pub f: String,
    pub g: String,
    pub h: String,
}

/// Skeleton of a path category. Plain graphs use a single color and no squares.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDecl>,
    pub squares: Vec<SquareDecl>,
}

/// `src` is the domain and `dst` the target. Colors start at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecl {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub color: usize,
}

/// The commuting square `first·second = third·fourth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecl {
    pub first: String,
    pub second: String,
    pub third: String,
    pub fourth: String,
}

/// Artin-Tits presentation. `None` encodes m = ∞; unlisted pairs default to ∞.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArtinSpec {
    pub atoms: Vec<String>,
    pub m: Vec<(String, String, Option<u32>)>,
}

impl CategorySpec {
    pub fn backend_name(&self) -> &'static str {
        match self {
            CategorySpec::Explicit(_) => "explicit",
            CategorySpec::GraphPath(_) => "graphpath",
            CategorySpec::KGraph(_) => "kgraph",
            CategorySpec::Artin(_) => "artin",
        }
    }
}
