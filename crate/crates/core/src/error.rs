use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("integer overflow in exact rational arithmetic")]
    Overflow,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group order exceeds the configured cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("subgroups do not commute: {a}*{b} is not in the reverse product")]
    NotCommuting { a: usize, b: usize },

    #[error("subgroup is not protonormal (witness x = {x})")]
    NotProtonormal { x: usize },

    #[error("subgroup is not subnormal")]
    NotSubnormal,

    #[error("empty set where a nonempty one is required")]
    EmptySet,

    #[error("operator is not in the Hecke algebra: f_a is not constant on the double coset of {element}")]
    NotInHeckeAlgebra { element: usize },

    #[error("lambda map rejected: {0}")]
    Lambda(String),

    #[error("normality chain H <| N <| G broken: {0}")]
    NormalityChain(String),

    #[error("invalid section: {0}")]
    InvalidSection(String),

    #[error("family is not bi-invariant: value at {element} differs from its double coset representative")]
    NotBiInvariant { element: usize },

    #[error("product relation violated at (x, y) = ({x}, {y})")]
    RelationViolation { x: usize, y: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("membership check failed: {0}")]
    Membership(String),

    #[error("result contradicts a proved theorem: {0}")]
    Contradiction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
