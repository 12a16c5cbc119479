use thiserror::Error;

/// Errors produced by constructors and operations on finite algebras.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("requested carrier of {requested} elements exceeds the size guard ({cap})")]
    SizeGuard { requested: u128, cap: usize },
    #[error("element {index} out of range for carrier of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("a chain needs at least two elements (q >= 1)")]
    EmptyChain,
    #[error("product of an empty family")]
    EmptyProduct,
    #[error("subset is not a subuniverse: {0}")]
    NotClosed(String),
    #[error("not a deductive system: {0}")]
    NotDeductive(String),
    #[error("deductive system is improper (equals the whole carrier)")]
    ImproperDs,
    #[error("deductive system does not have a chain quotient")]
    NotChainValued,
    #[error("the given set does not generate the algebra")]
    NotGenerating,
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("verified property failed: {0}")]
    Verification(String),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
