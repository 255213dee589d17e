//! Executable spectral Turán-type machinery for graphs of given size:
//! certified spectral radii, equitable quotients, the named extremal
//! families, forbidden-motif detection, isomorphism-free enumeration by
//! edge count, and scenario checks that tie them together.

pub mod algebraic;
pub mod bounds;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod motifs;
pub mod poly;
pub mod reconstruct;
pub mod spectral;
pub mod verify;

pub use algebraic::CertifiedRoot;
pub use error::{Error, Result};
pub use graph::{Graph, NeighborhoodStrata, VertexSet};
pub use poly::{Dyadic, IntPoly};
