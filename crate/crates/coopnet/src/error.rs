//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. The CLI maps errors to exit
//! codes: budget refusals exit 1, everything else (bad input, bad parameters,
//! violated preconditions) exits 2.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A strategy label does not exist in the named player's strategy set.
    #[error("player {player}: unknown strategy label `{label}`")]
    UnknownLabel { player: usize, label: String },

    /// A profile's length does not match the game's player count.
    #[error("profile lists {got} choices but the game has {expected} players")]
    ProfileLength { expected: usize, got: usize },

    /// A player index is out of range.
    #[error("player index {player} out of range (game has {n_players} players)")]
    PlayerIndex { player: usize, n_players: usize },

    /// A strategy index is out of range for the named player.
    #[error("strategy index {index} out of range for player {player} ({n_strategies} strategies)")]
    StrategyIndex {
        player: usize,
        index: usize,
        n_strategies: usize,
    },

    /// An exhaustive pass would visit more profiles than the budget allows.
    #[error("analysis over {required} profiles exceeds the budget of {budget}; rerun with a larger --budget")]
    BudgetExceeded { required: u128, budget: u64 },

    /// A numeric or structural parameter is invalid.
    #[error("invalid parameter: {0}")]
    Param(String),

    /// A cooperate/defect payoff schedule violates its standing assumptions.
    #[error("invalid payoff schedule: {0}")]
    Schedule(String),

    /// An operation was called on inputs outside its stated domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A line of an edge-list file could not be parsed.
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },

    /// A scenario file is structurally valid JSON but semantically wrong.
    #[error("scenario: {0}")]
    Scenario(String),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 for budget refusals, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 1,
            _ => 2,
        }
    }
}
