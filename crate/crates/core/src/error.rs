use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("universe of {requested} vertices exceeds the limit of {limit}")]
    UniverseOverflow { requested: u128, limit: usize },

    #[error("vertex {vertex} is outside the universe of {universe} vertices")]
    VertexOutOfRange { vertex: usize, universe: usize },

    #[error("digit {digit} at position {position} is not below radix {k}")]
    DigitOutOfRange { digit: u32, position: usize, k: u32 },

    #[error("dimension {dimension} is out of range for an {n}-dimensional cube")]
    DimensionOutOfRange { dimension: usize, n: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertex set does not induce a connected subgraph")]
    NotConnectedSet,

    #[error("graph has fewer than {needed} vertices")]
    TooFewVertices { needed: usize },

    #[error("u and v must be distinct (got {0} twice)")]
    SameVertex(usize),

    #[error("malformed automorphism: {0}")]
    MalformedAutomorphism(String),

    #[error("symmetry reduction requires a vertex-transitive cube description")]
    SymmetryWithoutTransitivity,

    #[error("graph does not match the supplied cube parameters")]
    CubeMismatch,

    #[error("work of {required} subsets exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("{0}")]
    Hypothesis(String),
}
