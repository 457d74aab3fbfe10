use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The graph has no vertices.
    EmptyGraph,
    DisconnectedGraph,
    NonpositiveLength {
        edge: String,
    },
    DanglingEndpoint {
        edge: String,
        vertex: String,
    },
    DuplicateVertex(String),
    DuplicateEdge(String),
    UnknownVertex(String),
    UnknownEdge(String),
    /// An offset outside `[0, length]` of its edge.
    OffsetOutOfRange {
        edge: String,
        offset: String,
    },
    InvalidRational(String),
    CurrentNotConserved,
    /// The grounded Laplacian was singular (the network is disconnected).
    SingularSystem,
    /// A divisor that should have been effective was not.
    NotEffective,
    /// Slopes of a function that should be piecewise Z-linear were not integers.
    NonIntegralSlope,
    /// The resistance restricted to the sampled segment is not a single quadratic.
    NotQuadratic,
    InvalidSegment,
    InvalidMesh,
    NonGenericLocus,
    GenericityRetriesExceeded {
        degree: i64,
        attempts: u32,
    },
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGraph => write!(f, "graph has no vertices"),
            Error::DisconnectedGraph => write!(f, "graph is not connected"),
            Error::NonpositiveLength { edge } => {
                write!(f, "edge {edge} has a nonpositive length")
            }
            Error::DanglingEndpoint { edge, vertex } => {
                write!(f, "edge {edge} refers to unknown vertex {vertex}")
            }
            Error::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            Error::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Error::UnknownEdge(e) => write!(f, "unknown edge {e}"),
            Error::OffsetOutOfRange { edge, offset } => {
                write!(f, "offset {offset} lies outside edge {edge}")
            }
            Error::InvalidRational(s) => write!(f, "cannot parse rational {s:?}"),
            Error::CurrentNotConserved => write!(f, "external currents do not sum to zero"),
            Error::SingularSystem => write!(f, "grounded Laplacian is singular"),
            Error::NotEffective => write!(f, "divisor is not effective"),
            Error::NonIntegralSlope => write!(f, "function has a non-integer slope"),
            Error::NotQuadratic => {
                write!(f, "resistance is not quadratic on the segment; subdivide it")
            }
            Error::InvalidSegment => write!(f, "invalid segment"),
            Error::InvalidMesh => write!(f, "mesh must be at least 2"),
            Error::NonGenericLocus => write!(f, "Weierstrass locus has interval components"),
            Error::GenericityRetriesExceeded { degree, attempts } => {
                write!(f, "no generic divisor of degree {degree} found after {attempts} attempts")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
