use crate::graph::VertexSet;

/// Errors across the crate. Parse failures keep their own sub-enum so the
/// CLI can map them to a dedicated exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph6(#[from] Graph6Error),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex set {set:?} has bits at or above n = {n}")]
    SetOutOfRange { set: VertexSet, n: usize },

    #[error("graph on {n} vertices exceeds the supported maximum of 62")]
    GraphTooLarge { n: usize },

    #[error("substituted graph must have at least one vertex")]
    EmptySubstitution,

    #[error("{op}: input size {n} exceeds cap {cap}")]
    CapExceeded {
        op: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("weight function contains a zero weight at vertex {vertex}")]
    ZeroWeight { vertex: usize },

    #[error("total weight does not fit in 63 signed bits")]
    WeightOverflow,

    #[error("weight functions have different lengths ({left} vs {right})")]
    WeightLengthMismatch { left: usize, right: usize },

    #[error("division sets escape the stated ground set {ground:?}")]
    DivisionOutsideGround { ground: VertexSet },

    #[error("weight reduction target {newval} is not in 1..{current}")]
    BadReductionTarget { newval: u64, current: u64 },

    #[error("no perfect division exists for subset {subset:?}")]
    NotDivisible { subset: VertexSet },

    #[error("provider ground mismatch: {what}")]
    ProviderMismatch { what: &'static str },

    #[error("certificate check failed: {what}")]
    CertificateCheck { what: String },

    #[error("internal verification failed in {stage} on subset {subset:?}")]
    InternalVerification {
        stage: &'static str,
        subset: VertexSet,
    },
}

/// graph6 parse failures, one variant per distinct malformation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Graph6Error {
    #[error("empty graph6 word")]
    Empty,

    #[error("graph6 word has {got} payload bytes, expected {expected}")]
    BadLength { got: usize, expected: usize },

    #[error("byte {byte:#04x} at position {pos} outside the graph6 alphabet")]
    CharOutOfRange { pos: usize, byte: u8 },

    #[error("graph6 order exceeds 62 (single-byte size form only)")]
    OrderTooLarge,

    #[error("trailing garbage after the edge bits")]
    TrailingGarbage,
}
