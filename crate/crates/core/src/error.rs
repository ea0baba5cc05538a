use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure categories shared by every module.
///
/// The CLI maps these onto exit codes through [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes do not fit together: variable counts, indices, foreign facets.
    #[error("structural error: {0}")]
    Structural(String),
    /// An input outside the domain of the operation (zero, unit, ...).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    /// A repeated factor that blocks normalization has no rational root.
    #[error("a factor of multiplicity {multiplicity} on the facet with normal ({wx}, {wy}) has no rational root")]
    IrrationalFactor { multiplicity: u32, wx: u64, wy: u64 },
    #[error("normalization did not finish within {0} substitutions")]
    IterationCap(usize),
    /// The curves share a component through the origin, or the step budget ran out.
    #[error("intersection multiplicity is not finite")]
    NonFiniteMultiplicity,
    /// A sub-computation that had to be exact was not.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Domain,
    Engine,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::Structural(_) | Error::Domain(_) | Error::NonFiniteMultiplicity => {
                ErrorKind::Domain
            }
            Error::IrrationalFactor { .. } | Error::IterationCap(_) | Error::Inconclusive(_) => {
                ErrorKind::Engine
            }
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
