//! Three-valued answers for bounded decisions.

use alloc::vec::Vec;

use crate::cat::Morphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// A structural property of the backend settles the question.
    Structural(&'static str),
    /// Nothing to check.
    Vacuous,
    /// Every instance was checked; the quantifier range is finite.
    Exhaustive,
    /// Instances were checked up to the given depth only.
    Bounded(usize),
    /// The backend is outside the scope of the decision procedure.
    Unsupported(&'static str),
}

/// Fails always carries a witness; Unknown always carries the depth searched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub basis: Basis,
    pub witness: Vec<(&'static str, Morphism)>,
}

impl Verdict {
    pub fn holds(basis: Basis) -> Self {
        Verdict { status: Status::Holds, basis, witness: Vec::new() }
    }

    pub fn holds_with(basis: Basis, witness: Vec<(&'static str, Morphism)>) -> Self {
        Verdict { status: Status::Holds, basis, witness }
    }

    pub fn fails(basis: Basis, witness: Vec<(&'static str, Morphism)>) -> Self {
        debug_assert!(!witness.is_empty(), "a failing verdict needs a witness");
        Verdict { status: Status::Fails, basis, witness }
    }

    pub fn unknown(depth: usize, witness: Vec<(&'static str, Morphism)>) -> Self {
        Verdict { status: Status::Unknown, basis: Basis::Bounded(depth), witness }
    }

    pub fn unsupported(reason: &'static str) -> Self {
        Verdict { status: Status::Unknown, basis: Basis::Unsupported(reason), witness: Vec::new() }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    /// Conjunction: the first failure wins, then the first unknown.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self.status, other.status) {
            (Status::Fails, _) => self,
            (_, Status::Fails) => other,
            (Status::Unknown, _) => self,
            (_, Status::Unknown) => other,
            _ => match (self.basis, other.basis) {
                (Basis::Bounded(a), Basis::Bounded(b)) => Verdict::holds(Basis::Bounded(a.min(b))),
                (Basis::Bounded(_), _) => self,
                (_, Basis::Bounded(_)) => other,
                _ => self,
            },
        }
    }
}
