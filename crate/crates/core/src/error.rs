use thiserror::Error;

/// Errors raised by game construction and value computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("player count {0} is outside the supported range 1..={1}")]
    PlayerCount(usize, usize),
    #[error("worth table has length {got}, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("the empty coalition must have worth 0")]
    NonZeroEmptyWorth,
    #[error("the empty coalition must have dividend 0")]
    NonZeroEmptyDividend,
    #[error("coalition must be non-empty")]
    EmptyCoalition,
    #[error("coalition {mask:#b} references players outside 0..{n}")]
    CoalitionOutOfRange { mask: u64, n: usize },
    #[error("player {player} is outside 0..{n}")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("games have mismatched player counts ({0} vs {1})")]
    PlayerCountMismatch(usize, usize),
    #[error("linear combination needs at least one term")]
    EmptyCombination,
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("cannot remove every player from the game")]
    RemovesAllPlayers,
    #[error("invalid semivalue weights: {0}")]
    InvalidWeights(String),
    #[error("weights cover games of up to {have} players, game has {need}")]
    MissingWeights { have: usize, need: usize },
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("cannot parse number {0:?}")]
    ParseNumber(String),
    #[error("game file: {0}")]
    GameFile(String),
    #[error("unknown value name {0:?}")]
    UnknownValue(String),
    #[error("unknown axiom name {0:?}")]
    UnknownAxiom(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
