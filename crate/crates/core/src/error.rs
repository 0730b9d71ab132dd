use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),

    #[error("matrices or subspaces live over different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u32, right: u32 },

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("quiver contains a directed cycle")]
    Cycle,

    #[error("more than {cap} paths; use composites instead of enumeration")]
    PathExplosion { cap: usize },

    #[error("edge `{edge}` carries a {found_rows}x{found_cols} matrix, expected {expected_rows}x{expected_cols}")]
    Shape {
        edge: String,
        expected_rows: usize,
        expected_cols: usize,
        found_rows: usize,
        found_cols: usize,
    },

    #[error("path does not compose: {0}")]
    BrokenPath(String),

    #[error("paths [{}] and [{}] from `{from}` to `{to}` have different composites",
        .first.join(", "), .second.join(", "))]
    Commutativity {
        from: String,
        to: String,
        first: Vec<String>,
        second: Vec<String>,
    },

    #[error("representation has not passed commutativity validation")]
    NotValidated,

    #[error("quiver is not weakly connected; the induced morphism lim → colim is not unique")]
    Disconnected,

    #[error("`{0}` is not a source vertex")]
    InvalidSubset(String),

    #[error("no edge from `{from}` into `{to}`")]
    MissingEdge { from: String, to: String },

    #[error("complex at `{small}` is not a subcomplex of the complex at `{large}`: missing simplex [{}]", .missing.join(" "))]
    NotSubcomplex {
        small: String,
        large: String,
        missing: Vec<String>,
    },

    #[error("filtration quiver is not a linear chain")]
    NotAChain,

    #[error("filtration quiver is not a grid: {0}")]
    NotAGrid(String),

    #[error("grid vertex `{u}` is not below `{v}`")]
    NotComparable { u: String, v: String },

    #[error("index {index} out of range (max {max})")]
    OutOfRange { index: usize, max: usize },

    #[error("invalid subspace for `{vertex}`: {reason}")]
    InvalidSubspace { vertex: String, reason: String },
}
