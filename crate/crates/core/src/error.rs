use thiserror::Error;

use crate::flis::LeafRecord;
use crate::geometry::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown seed patch `{0}` (expected kite, dart, sun or star)")]
    UnknownSeed(String),

    #[error("invalid patch: {} violation(s), first: {}", .0.len(), .0[0])]
    InvalidPatch(Vec<Violation>),

    #[error("order {order} exceeds the {tiles} tiles of the graph")]
    OrderTooLarge { order: usize, tiles: usize },

    #[error("no induced subtree of order {0} exists in the graph")]
    NoSubtree(usize),

    #[error("budget exceeded after finding {} leaves at order {}", .partial.max_leaves, .partial.n)]
    BudgetExceeded { partial: Box<LeafRecord> },

    #[error("tile set is not an induced tree: {0}")]
    NotATree(String),

    #[error("graft rejected: {0}")]
    Graft(String),

    #[error("not a prime caterpillar: {0}")]
    NotPrime(String),

    #[error("star graph: {0}")]
    StarGraph(String),

    #[error("structural violation: {0}")]
    Structural(String),

    #[error("no decomposition into grafted prime caterpillars: {0}")]
    Decomposition(String),

    #[error("chain rejected: {0}")]
    ChainRejected(String),

    #[error("extension budget exceeded at {} + {} primes", .0.left, .0.right)]
    ExtensionBudget(Box<crate::inflation_lab::ExtensionReport>),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
