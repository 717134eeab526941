//! Three-valued outcomes for checks that run on finite windows.

use std::fmt;

/// How much of the claim a `Verified` outcome actually covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scope {
    /// Every element of a finite semigroup was checked.
    Exhaustive,
    /// A built-in structural argument settles the claim for the whole semigroup.
    Structural,
    /// No violation inside the window. Not a proof.
    Window,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Exhaustive => "exhaustive",
            Scope::Structural => "structural",
            Scope::Window => "window",
        }
    }

    pub fn is_proof(self) -> bool {
        !matches!(self, Scope::Window)
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Verified(Scope),
    Counterexample(W),
}

impl<W> Verdict<W> {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified(_))
    }

    pub fn scope(&self) -> Option<Scope> {
        match self {
            Verdict::Verified(s) => Some(*s),
            Verdict::Counterexample(_) => None,
        }
    }

    pub fn counterexample(&self) -> Option<&W> {
        match self {
            Verdict::Verified(_) => None,
            Verdict::Counterexample(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Verified(s) => Verdict::Verified(s),
            Verdict::Counterexample(w) => Verdict::Counterexample(f(w)),
        }
    }
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NoneWithinBounds,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::NoneWithinBounds => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}
