use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("lattice basis does not have full column rank")]
    RankDeficient,
    #[error("column {column} is not in the integer span of the basis")]
    NoSolution { column: usize },
    #[error("action matrix does not satisfy T^{m} = I")]
    ActionOrder { m: u64 },
    #[error("group order must be at least {min}, got {m}")]
    InvalidGroupOrder { m: u64, min: u64 },
    #[error("index {index} does not divide group order {m}")]
    InvalidIndex { index: u64, m: u64 },
    #[error("the sign character needs an even group order, got {m}")]
    InvalidOrder { m: u64 },
    #[error("group orders differ: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("table does not cover degree {degree}")]
    DegreeNotCovered { degree: usize },
    #[error("fixed-locus cohomology has torsion in degree {degree}")]
    TorsionFixedLocus { degree: usize },
    #[error("maps {index} and {next} are not composable")]
    NotComposable { index: usize, next: usize },
    #[error("map {index} is not well defined: {reason}")]
    IllFormedMap { index: usize, reason: String },
    #[error("moduli differ: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("surface fails hypotheses: {}", .0.join("; "))]
    InadmissibleSurface(Vec<String>),
    #[error("invalid Chern vector: {0}")]
    InvalidChernVector(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
