use thiserror::Error;

/// Crate-wide error type. Construction errors carry enough context to point
/// at the offending vertex / snapshot; parse errors carry a line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // ---- instance construction ----
    #[error("vertex {vertex} out of range (n = {n})")]
    OutOfRangeVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex} in snapshot {t}")]
    SelfLoop { vertex: usize, t: usize },
    #[error("duplicate edge {{{u}, {v}}} in snapshot {t}")]
    DuplicateEdgeInSnapshot { u: usize, v: usize, t: usize },
    #[error("weight of vertex {vertex} must be positive")]
    NonPositiveWeight { vertex: usize },
    #[error("got {got} weights for {n} vertices")]
    WeightCountMismatch { got: usize, n: usize },
    #[error("time step {t} out of range (lifetime = {l})")]
    TimeStepOutOfRange { t: usize, l: usize },
    #[error("instance must have at least one vertex")]
    EmptyVertexSet,

    // ---- text format ----
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    // ---- certificates ----
    #[error("certificate entry {index} is not a connected component of snapshot {t}")]
    NotAComponent { index: usize, t: usize },
    #[error("certificate entries {first} and {second} do not intersect")]
    NonIntersectingConsecutive { first: usize, second: usize },
    #[error("walk times are not non-decreasing at step {index}")]
    NonMonotoneTimes { index: usize },
    #[error("edge {{{u}, {v}}} is absent from snapshot {t}")]
    EdgeAbsentAtTime { u: usize, v: usize, t: usize },
    #[error("certificate does not start at the source vertex")]
    SourceNotCovered,
    #[error("certificate is empty")]
    EmptyCertificate,

    // ---- solvers ----
    #[error("instance too large for the exact solver (n = {n}, limit = {limit})")]
    InstanceTooLargeForOracle { n: usize, limit: usize },
    #[error("search budget exceeded (estimated {estimate} sequences, budget {budget})")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("vertex {vertex} is not a vertex of the tree")]
    VertexNotInTree { vertex: usize },
    #[error("underlying graph is not a tree")]
    NotATree,
    #[error("some edge of the tree appears in more than one snapshot")]
    MultipleAppearances,

    // ---- decomposition / kernelization ----
    #[error("underlying graph is disconnected")]
    DisconnectedGraph,
    #[error("structural decomposition violated: {0}")]
    StructureViolation(String),
    #[error("rule not applicable")]
    NotApplicable,
    #[error("internal rule error: {0}")]
    InternalError(String),
    #[error("iteration cap exceeded after {applications} rule applications")]
    IterationCapExceeded { applications: usize },
    #[error("arithmetic overflow in weight computation")]
    ArithmeticOverflow,

    // ---- generators ----
    #[error("formula has no variables or no clauses")]
    EmptyFormula,
    #[error("literal {literal} out of range for {num_vars} variables")]
    BadLiteral { literal: i64, num_vars: usize },
    #[error("formula is not monotone: clause {clause} mixes positive and negative literals")]
    NotMonotone { clause: usize },
    #[error("clause {clause} has more than three literals")]
    ClauseTooWide { clause: usize },
    #[error("graph is not {d}-regular: vertex {vertex} has degree {degree}")]
    NotRegular { d: usize, vertex: usize, degree: usize },
    #[error("edge inside a single part of the partition: {{{u}, {v}}}")]
    IntraPartEdge { u: usize, v: usize },
    #[error("number of instances ({0}) is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("generator input invalid: {0}")]
    BadGeneratorInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
