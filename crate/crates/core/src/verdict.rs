use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::Rational;

/// First counterexample of a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Label of the violated equation.
    pub identity: String,
    /// Zero-based basis indices, one per variable of the equation.
    pub tuple: Vec<usize>,
    /// Nonzero residual (a vector, or a matrix flattened row-major).
    pub residual: Vec<Rational>,
}

impl Failure {
    pub fn names(&self, basis: &[String]) -> Vec<String> {
        self.tuple.iter().map(|&i| basis.get(i).cloned().unwrap_or_default()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub failure: Option<Failure>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, failure: None }
    }

    pub fn fail(f: Failure) -> Self {
        Verdict { holds: false, failure: Some(f) }
    }

    /// Conjunction keeping the first failure.
    pub fn and(self, other: Verdict) -> Verdict {
        if self.holds {
            other
        } else {
            self
        }
    }
}
