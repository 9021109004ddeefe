use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parity violation: structure entry ({i}, {j}) has a nonzero coefficient on generator {k} of the wrong parity")]
    ParityViolation { i: usize, j: usize, k: usize },
    #[error("invalid structure table: {0}")]
    InvalidStructure(String),
    #[error("{law} fails for basis indices ({r}, {s}, {t})")]
    AlgebraLaw {
        law: &'static str,
        r: usize,
        s: usize,
        t: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
