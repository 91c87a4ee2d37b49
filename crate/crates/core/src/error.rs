use thiserror::Error;

/// Errors produced anywhere in the solver pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: malformed line: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("edge ({u}, {v}) has an endpoint outside 1..={n}")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("bag index {index} outside 1..={k}")]
    BagIndexOutOfRange { index: usize, k: usize },
    #[error("vertex {v} in bag {bag} outside 1..={n}")]
    VertexOutOfRange { bag: usize, v: usize, n: usize },
    #[error("tree edges do not form a tree: {0}")]
    NotATree(String),
    #[error("header declares width+1 = {declared} but the largest bag has {actual} vertices")]
    WidthMismatch { declared: usize, actual: usize },
    #[error("bag {bag} has {children} children after rooting (at most 2 supported); try another root")]
    DegreeTooHigh { bag: usize, children: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("search space of {size} exceeds the limit of {limit}")]
    SearchSpaceTooLarge { size: f64, limit: f64 },
    #[error("no consistent order exists at bag {bag}")]
    Infeasible { bag: usize },
    #[error("drawing does not match style: {0}")]
    StyleMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
