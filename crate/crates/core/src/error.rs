use thiserror::Error;

use crate::solver::ConditionFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{k} does not divide {n}")]
    NotADivisor { k: u64, n: u64 },

    #[error("vertex <{k},{l}> is not in the graph")]
    VertexNotInGraph { k: u64, l: u64 },

    /// A division that must be exact left a remainder. The formulas are
    /// integral, so this always indicates an upstream bug.
    #[error("inexact division in {context}: {numerator} / {divisor}")]
    InexactDivision {
        context: String,
        numerator: String,
        divisor: u64,
    },

    /// A subtraction in the h recursion went negative.
    #[error("negative intermediate value in {context}")]
    NegativeIntermediate { context: String },

    #[error("arithmetic overflow in {context}")]
    Overflow { context: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("σξ = ξσ^{l} has no solution in S_{n}: gcd({l}, {n}) > 1")]
    NoSolution { n: usize, l: usize },

    #[error("invalid parameters (n={n}, k={k}, l={l}): {reason}")]
    InvalidParameters {
        n: usize,
        k: usize,
        l: usize,
        reason: ConditionFailure,
    },

    #[error("σ is not a cycle of length {0}")]
    NotFullCycle(usize),

    #[error("n = {n} exceeds the oracle bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
}
