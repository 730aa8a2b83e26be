// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is rational, expected a quadratic irrational")]
    NotIrrational,
    #[error("invalid discriminant {0}: must be a positive nonsquare integer")]
    InvalidDiscriminant(BigInt),
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(BigInt, BigInt),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(BigInt),
    #[error("point is not the root of an integral form of discriminant {0}")]
    NotAFormRoot(BigInt),
    #[error("cannot compose: target of the first morphism is not the source of the second")]
    ComposeMismatch,
    #[error("target value m must be nonzero")]
    ZeroTarget,
    #[error("{m} does not divide n^2 - delta = {value}")]
    NotDivisible { m: BigInt, value: BigInt },
    #[error("internal limit of {0} steps exceeded")]
    InternalLimit(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
