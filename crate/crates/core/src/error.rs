use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("points {0} and {1} coincide")]
    Collision(usize, usize),

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("configuration is not equilateral-cyclic (edge spread {0:.3e})")]
    NotEquilateral(f64),

    #[error("empty interval")]
    EmptyInterval,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no bifurcation found for A in [{0}, {1}]")]
    NoBifurcation(f64, f64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
