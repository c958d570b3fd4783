//! Counting the classes of the symmetric group `S_n` under the relation
//! `α ~ β  ⇔  σ^k α = β σ^l` for a fixed full cycle `σ`.
//!
//! The pipeline is:
//!
//! * [`zn`]: arithmetic in `{1..n}` with `n` as the zero representative,
//!   divisors and Euler's totient.
//! * [`perm`]: permutations with left-to-right composition
//!   (`(αβ)(i) = β(α(i))`).
//! * [`graph`]: the divisor-lattice graph of `(k, l)` vertices, its path
//!   order and predecessor counts.
//! * [`counting`]: exact class counts, generic over an integer scalar.
//! * [`solver`]: constructive solutions of `σ^k ξ = ξ σ^l`.
//! * [`oracle`]: brute-force orbit enumeration used as ground truth.
//!
//! Counting is generic over [`CountScalar`]; the aliases below fix the
//! scalar for the common cases. [`Nat`] is the default everywhere in the
//! CLI since `h(n, n)` contains `(n-1)!`.

pub mod counting;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod perm;
pub mod scalar;
pub mod solver;
pub mod zn;

pub use counting::{
    count_table, count_table_for_graph, h_count, p_count, q_count, q_prime, wilson_check,
    Column, CountTable,
};
pub use error::{Error, Result};
pub use graph::{GammaGraph, Vertex};
pub use oracle::{
    count_equation_solutions, enumerate_classes, sigma_independence_check, ClassReport, Oracle,
};
pub use perm::Permutation;
pub use scalar::CountScalar;
pub use solver::{
    enumerate_solutions, min_left_exponent, solve_base, BlockPartition, ConditionFailure,
    EquationInstance,
};
pub use zn::{divisors, gcd, totient, ZnElement};

/// Arbitrary-precision count.
pub type Nat = num_bigint::BigUint;

/// Count table over arbitrary-precision integers.
pub type NatCountTable = CountTable<Nat>;

/// Count table over `u128`; overflows (as an error) once `(n-1)!` leaves 128 bits.
pub type U128CountTable = CountTable<u128>;

/// Count table over `u64`; overflows (as an error) for `n >= 22`.
pub type U64CountTable = CountTable<u64>;
