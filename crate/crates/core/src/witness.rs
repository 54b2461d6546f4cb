use serde::Serialize;

use crate::scalar::Scalar;

/// A failing instance of an identity: which identity, on which basis
/// tuples, and the two sides that disagree (matrices flattened row-major).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: String,
    pub args: Vec<Vec<usize>>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl Violation {
    pub fn new(identity: impl Into<String>, args: Vec<Vec<usize>>, lhs: Vec<Scalar>, rhs: Vec<Scalar>) -> Self {
        Self { identity: identity.into(), args, lhs, rhs }
    }

    /// The same witness with basis indices shifted to 1-based labels.
    pub fn one_based(&self) -> Self {
        Self { args: self.args.iter().map(|t| t.iter().map(|i| i + 1).collect()).collect(), ..self.clone() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at {:?}", self.identity, self.args)
    }
}

/// Outcome of an exhaustive identity check.
pub type Check = std::result::Result<(), Violation>;
