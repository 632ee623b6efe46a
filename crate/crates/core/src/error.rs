use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation `{op}` has arity {expected}, got {got} arguments")]
    ArityMismatch {
        op: String,
        expected: usize,
        got: usize,
    },

    #[error("element {element} out of range for universe of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("not a congruence: operation `{op}` breaks it at arguments {tuple:?}")]
    NotACongruence { op: String, tuple: Vec<usize> },

    #[error("partition not found in the congruence lattice: {0}")]
    NotInLattice(String),

    #[error("lattice elements {lo} and {hi} are not ordered lo <= hi")]
    NotOrdered { lo: usize, hi: usize },

    #[error("algebra is not subdirectly irreducible ({atoms} atoms)")]
    NotSubdirectlyIrreducible { atoms: usize },

    #[error("commutator consistency check failed (input is probably not congruence modular): {0}")]
    NonModularSignal(String),

    #[error("resource cap exceeded: {what} > {limit}")]
    ResourceCap { what: &'static str, limit: usize },

    #[error("time budget exhausted")]
    TimeBudget,

    #[error("hypothesis gate not met: {0}")]
    GateNotMet(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Resource exhaustion as opposed to a defect in the input or the program.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap { .. } | Error::TimeBudget)
    }
}
