pub mod error;
pub mod graph;
pub mod rational;

pub use error::{Error, Result};
pub use graph::{Edge, Multigraph, VertexSet};
pub use rational::Rational;
pub mod flows;
pub mod valuations;
pub mod coloring;
pub mod constructions;
pub mod harness;
