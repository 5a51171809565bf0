use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table not closed: entry ({a}, {b}) = {value} is out of range for order {order}")]
    NotClosed { a: usize, b: usize, value: usize, order: usize },
    #[error("table not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("empty table")]
    EmptyTable,
    #[error("parse error in {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("unsupported group name {0:?}")]
    UnsupportedName(String),
    #[error("closure exceeds the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("subset is not a subgroup of the given group")]
    ForeignSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("map has wrong length {len}, source order is {order}")]
    MapLength { len: usize, order: usize },
    #[error("cokernel is infinite")]
    InfiniteCokernel,
    #[error("bottom subgroup is not contained in top subgroup")]
    NotNested,
    #[error("quotient is not abelian")]
    NonAbelianQuotient,
    #[error("morphism is not well defined on the given abelian groups")]
    IllDefinedMorphism,
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("solver size {size} exceeds the configured cap {cap}")]
    SolverCapExceeded { size: usize, cap: usize },
    #[error("values do not form a normalized 2-cocycle at ({x}, {y}, {z})")]
    NotACocycle { x: usize, y: usize, z: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("morphism is not surjective")]
    NotSurjective,
    #[error("extension is not central")]
    NotCentral,
    #[error("kernel identification mismatch: {0}")]
    KernelMismatch(String),
    #[error("extensions have different base groups")]
    BaseMismatch,
    #[error("group catalog has no entries of order {0}")]
    CatalogIncomplete(usize),
    #[error("arrows are not composable at position {0}")]
    NotComposable(usize),
    #[error("group is not perfect")]
    NotPerfect,
    #[error("coefficient group must be abelian")]
    NotAbelian,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
