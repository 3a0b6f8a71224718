use thiserror::Error;

/// Errors raised while constructing graphs and instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{u}, {v}}} has an endpoint outside 0..{vertex_count}")]
    EdgeOutOfRange {
        u: usize,
        v: usize,
        vertex_count: usize,
    },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("alpha has {got} entries, expected {expected}")]
    AlphaLength { got: usize, expected: usize },
    #[error("alpha({district}) = {value} exceeds the district size {s}")]
    AlphaExceedsSize { district: usize, value: u64, s: u64 },
    #[error("r_alpha given without an A-supporter distribution")]
    TargetWithoutAlpha,
    #[error("r_alpha = {r_alpha} exceeds the number of districts {n}")]
    TargetTooLarge { r_alpha: usize, n: usize },
}

/// Errors raised by solvers when their preconditions do not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("instance has {n} districts, above the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("the {strategy} strategy requires {requirement}")]
    Precondition {
        strategy: &'static str,
        requirement: &'static str,
    },
    #[error("district {0} is out of range")]
    DistrictOutOfRange(usize),
    #[error("district {0} is both dissolved and winning")]
    RolesOverlap(usize),
    #[error("an A-supporter distribution is required")]
    MissingAlpha,
    #[error("invalid star partition: {0}")]
    InvalidStarPartition(String),
    #[error("solution rejected by the verifier: {0}")]
    InvalidSolution(String),
}

/// Errors raised by the instance generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("target {target} is not divisible by gcd({s}, {delta_s}) = {gcd}")]
    NotDivisible {
        s: u64,
        delta_s: u64,
        target: i64,
        gcd: u64,
    },
    #[error("invalid exact-cover instance: {0}")]
    InvalidExactCover(String),
    #[error("set size {got} does not match (s + delta_s) / gcd = {expected}")]
    SetSizeMismatch { got: usize, expected: u64 },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("edge set is not a two-factor: {0}")]
    NotTwoFactor(String),
    #[error("two-factor has a cycle of length {0}, which is not a multiple of four")]
    CycleLength(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} districts, above the oracle cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("an A-supporter distribution is required")]
    MissingAlpha,
}

/// Reasons a role assignment cannot be turned into a flow network.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoleError {
    #[error("district {0} is out of range")]
    OutOfRange(usize),
    #[error("district {0} is both dissolved and winning")]
    Overlap(usize),
    /// The district needs more A-supporters than it can receive at all.
    #[error("district {district} needs {demand} A-supporters but only grows by {delta_s}")]
    Unwinnable {
        district: usize,
        demand: u64,
        delta_s: u64,
    },
}
