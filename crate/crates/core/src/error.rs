use thiserror::Error;

/// Which level of a crossed module an error or witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Level {
    /// The bottom group `T₁`.
    One,
    /// The top group `T₂`.
    Two,
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Level::One => write!(f, "level 1"),
            Level::Two => write!(f, "level 2"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("table is not square or is empty (row {row} has length {len}, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("operation is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("{what} exceeds the configured cap of {limit}")]
    SizeLimitExceeded { what: &'static str, limit: usize },
    #[error("not a homomorphism: image of {x}*{y} differs from product of images")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("map has wrong length {len}, expected {expected}")]
    WrongLength { len: usize, expected: usize },
    #[error("{0}")]
    Mismatch(String),
    #[error("subgroup is not normal: conjugate of {member} by {by} escapes")]
    NotNormal { member: usize, by: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("CM1 violated: boundary of ^{b}{t} is not the conjugate of the boundary of {t} by {b}")]
    Cm1Violation { b: usize, t: usize },
    #[error("CM2 (Peiffer) violated: ^(d {t}){s} != {t}*{s}*{t}^-1")]
    Cm2Violation { s: usize, t: usize },
    #[error("morphism square does not commute with the boundaries at bottom element {t}")]
    BoundaryNotCommuting { t: usize },
    #[error("morphism is not equivariant at (b, t) = ({b}, {t})")]
    NotEquivariant { b: usize, t: usize },
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("subcrossed module is not normal: {0}")]
    NotNormalSub(String),
    #[error("not a subcrossed module: {0}")]
    NotSubCrossedModule(String),
    #[error("sequence is not exact at {level}: {stage}")]
    NotExact { level: Level, stage: &'static str },
    #[error("induced map is not well defined at {level}, element {element}")]
    NotWellDefined { level: Level, element: usize },
    #[error("fiberwise condition fails: ^{x2}{t1}*{t1}^-1 is not in the localized kernel")]
    ConditionFails { x2: usize, t1: usize },
    #[error("ladder stage {stage}: {invariant}")]
    StageAssertionFailed { stage: usize, invariant: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integer overflow in abelian group arithmetic")]
    Overflow,
    #[error("invalid abelian group data: {0}")]
    InvalidAb(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
