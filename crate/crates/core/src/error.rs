use crate::exactlin::LinError;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("validation failed: {law} (witness {src} -> {dst})")]
    Validation { law: String, src: String, dst: String },
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("not a p-morphism: {0}")]
    NotAPMorphism(String),
    #[error("complex `{0}` has no U-action")]
    MissingUAction(String),
    #[error("complex `{0}` has no Y-action")]
    MissingYAction(String),
    #[error("graded modules with nonzero modulus are not supported here")]
    ModulusUnsupported,
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("assembly inconsistent: {0}")]
    AssemblyInconsistent(String),
    #[error("positivity violated on {src} -> {dst} (exponent {exponent})")]
    PositivityViolated { src: String, dst: String, exponent: i64 },
    #[error("identification failed: {0}")]
    IdentificationFailed(String),
    #[error("invalid window {0}..{1}")]
    InvalidWindow(i64, i64),
    #[error(transparent)]
    Lin(#[from] LinError),
}

pub type Result<T> = std::result::Result<T, Error>;
