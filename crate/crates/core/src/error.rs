use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(i64),
    #[error("{a} is not invertible modulo {n}")]
    NotInvertible { a: i64, n: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataSetError {
    #[error("cone order {m} does not divide {order}")]
    ConeOrderDoesNotDivide { m: i64, order: i64 },
    #[error("degree must exceed 1, got {0}")]
    BadDegree(i64),
    #[error("genus is not an integer (twice the genus is {twice})")]
    NonIntegralGenus { twice: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("input data set is invalid: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("genus must be at least 1, got {0}")]
    BadGenus(i64),
    #[error("oracle refuses genus {genus}: configured bound is {bound}")]
    OracleBoundExceeded { genus: i64, bound: i64 },
}
