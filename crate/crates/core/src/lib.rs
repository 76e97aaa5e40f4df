//! Induced forests in planar multigraphs.
//!
//! The crate revolves around one quantity: the largest vertex set of a
//! multigraph whose induced subgraph is a forest (parallel edges count as
//! 2-cycles, so at most one endpoint of a doubled edge can survive).
//! It provides:
//!
//! * exact solvers for induced forests, induced linear forests and
//!   independent sets, plus acyclic-coloring search ([`solvers`]);
//! * reductions that transport certificates and values between a multigraph
//!   and its simplifications ([`reductions`]);
//! * combinatorial plane embeddings as rotation systems with an explicit
//!   placement forest for disconnected graphs, face tracing, and the
//!   counting identities that every embedding must satisfy ([`embedding`]);
//! * a nesting analysis of doubled edges and an exact-rational discharging
//!   audit over faces, edges and 2-cycles ([`discharging`]);
//! * generators for the extremal families used to probe the bounds
//!   ([`generators`]);
//! * lower-bound verification reports and a manifest-driven suite runner
//!   ([`report`]).
//!
//! Everything is deterministic: solvers return lexicographically least
//! certificates, searches enumerate in a fixed order, and reports are
//! byte-stable across runs.

pub mod discharging;
pub mod embedding;
pub mod generators;
pub mod io;
pub mod multigraph;
pub mod reductions;
pub mod report;
pub mod sampler;
pub mod solvers;
mod union_find;

pub use multigraph::{EdgeId, Multigraph, VertexId};

/// Crate-wide error type. Variants mirror the contract breaches the
/// operations can detect: malformed inputs, violated preconditions, and
/// structural violations that would falsify an audit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("loop at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexRange { vertex: usize, n: usize },
    #[error("edge {edge} out of range for m = {m}")]
    EdgeRange { edge: usize, m: usize },
    #[error("disjoint union needs at least one part")]
    EmptyUnion,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid rotation system: {0}")]
    Rotation(String),
    #[error("invalid embedding: {0}")]
    Embedding(String),
    #[error("invalid placement: {0}")]
    Placement(String),
    #[error("graph has parallel edges")]
    NotSimple,
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("invalid coloring: {0}")]
    Coloring(String),
    #[error("embedding has a face of degree 2")]
    TwoFacePresent,
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("parallel pair {u}-{v} has multiplicity {mult}, expected exactly 2")]
    MultiplicityNotTwo { u: usize, v: usize, mult: usize },
    #[error("no parallel pairs: discharging does not apply")]
    NoParallelPairs,
    #[error("graph has no edges")]
    NoEdges,
    #[error("discharging structure violation: {0}")]
    Structure(String),
    #[error("invalid weighted forest: {0}")]
    Weights(String),
    #[error("family index {0} is out of range; it must be at least 1")]
    FamilyIndex(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
