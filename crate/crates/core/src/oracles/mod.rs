//! Independent brute-force checks: finite-field point counts, Hom-space triples,
//! Bruhat order and an exhaustive fixed-point filter.

pub mod brute;
pub mod bruhat;
pub mod finite_field;
pub mod hom;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("instance too large for exhaustive search: {size} basis vectors, limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension vector has {got} entries, quiver has {expected} vertices")]
    DimensionMismatch { got: usize, expected: usize },
}
