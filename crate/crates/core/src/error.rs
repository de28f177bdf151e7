use thiserror::Error;

/// Errors raised while building or querying a category and running dynamics on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate object label `{0}`")]
    DuplicateLabel(String),

    #[error("empty object label at position {0}")]
    EmptyLabel(usize),

    #[error("duplicate generator {dom} -> {cod}")]
    DuplicateGenerator { dom: String, cod: String },

    #[error("generator {dom} -> {cod} has weight {weight}, expected a value in (0, 1]")]
    WeightOutOfRange {
        dom: String,
        cod: String,
        weight: f64,
    },

    #[error("self-loop generator on `{0}`; identities are implicit")]
    SelfLoopGenerator(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown generator id {0}")]
    UnknownGenerator(usize),

    #[error("morphisms are not composable: cod({first}) = `{first_cod}` but dom({second}) = `{second_dom}`")]
    NonComposable {
        first: String,
        first_cod: String,
        second: String,
        second_dom: String,
    },

    #[error("invalid generator path: {0}")]
    InvalidPath(String),

    #[error("step limit of {0} exceeded")]
    StepLimitExceeded(u32),

    #[error("basic rule violated: {0}")]
    BasicRuleViolated(String),

    #[error("invalid rule configuration: {0}")]
    InvalidConfig(String),

    #[error("metaphor generator {0} is not excited in the snapshot")]
    MetaphorNotExcited(usize),

    #[error("excited subcategory has {0} objects; the exhaustive miner accepts at most {1}")]
    TooLarge(usize, usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
