use thiserror::Error;

use crate::syntax::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid atom name `{0}` (expected [a-z][A-Za-z0-9_]*)")]
    InvalidAtomName(String),
    #[error("atom universe is full ({0} atoms)")]
    UniverseFull(usize),
    #[error("generated atom name `{0}` is already taken")]
    FreshCollision(String),
    #[error("programs were built over different atom universes")]
    MixedUniverse,

    #[error("here part {here} is not a subset of there part {there}")]
    NotHereThere { here: String, there: String },
    #[error("enumeration over {atoms} atoms exceeds the cap of {cap}")]
    EnumerationCap { atoms: usize, cap: usize },
    #[error("rule {rule} carries no weight")]
    MissingWeight { rule: usize },

    #[error("independent-set name {name} out of range for {n_rules} rules")]
    NameOutOfRange { name: u64, n_rules: usize },
    #[error("all-zero local pattern names I_0, which is not an independent set")]
    ZeroName,
    #[error("tuple has {n_rules} rules; at most {max} are supported for naming")]
    TooManyRules { n_rules: usize, max: usize },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("independent sets {0} and {1} share atoms")]
    OverlappingSets(u32, u32),

    #[error("S-RP needs a non-empty independent set, I_{name} is empty")]
    ReplaceOnEmpty { name: u32 },
    #[error("S-DL needs |I_{name}| > 2, found {size}")]
    DeleteTooSmall { name: u32, size: usize },
    #[error("S-RD needs 0 < |I_{name}| <= 2, found {size}")]
    ReduceSize { name: u32, size: usize },
    #[error("S-AD needs |I_{name}| >= 2, found {size}")]
    AddTooSmall { name: u32, size: usize },
    #[error("S-EX needs |I_{name}| <= 1, found {size}")]
    ExtendTooLarge { name: u32, size: usize },
    #[error("this transformation needs {0}")]
    MissingOperand(&'static str),
    #[error("atom {atom} is not in I_{name}")]
    AtomNotInSet { atom: String, name: u32 },
    #[error("fresh atom {0} already occurs in the tuple")]
    FreshAtomInUse(String),
    #[error("no preservation class for {kind} on a set of size {size}")]
    PreservationGuard { kind: String, size: usize },

    #[error("search space of {names} names is too large for {what}")]
    SearchSpaceTooLarge { names: usize, what: &'static str },
    #[error("condition set is empty")]
    EmptyConditions,

    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
