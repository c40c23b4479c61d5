use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("proposition id {id} out of range (structure has {len})")]
    InvalidProp { id: usize, len: usize },

    #[error("realizer id {id} out of range (structure has {len})")]
    InvalidReal { id: usize, len: usize },

    #[error("element id {id} out of range (carrier has {len})")]
    InvalidElement { id: usize, len: usize },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("budget exceeded: {bound} = {limit}, but {required} needed")]
    Budget {
        bound: &'static str,
        limit: u128,
        required: u128,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("embedding is not a sub-structure: {0}")]
    NotSubstructure(String),

    #[error("blocks are not pairwise disjoint and nonempty: {0}")]
    Blocks(String),

    /// A checked consequence of a proven statement failed; this indicates a
    /// bug in the implementation, never a property of the input.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_budget(bound: &'static str, limit: u128, required: u128) -> Result<()> {
    if required > limit {
        Err(Error::Budget {
            bound,
            limit,
            required,
        })
    } else {
        Ok(())
    }
}
