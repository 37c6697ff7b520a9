//! Uncolourability measures of cubic graphs.
//!
//! Three measures are computed here: resistance (the fewest vertices whose
//! removal leaves a 3-edge-colourable graph), weak oddness (the fewest odd
//! components in an even factor) and oddness (the fewest odd circuits in a
//! 2-factor). For every bridgeless cubic graph they satisfy
//! `resistance <= weak oddness <= oddness`.
//!
//! Small graphs are handled by the exhaustive oracles in [`colour`] and
//! [`factors`]. Large graphs built from 2-poles ([`twopole`]) are handled by
//! the exact block decomposition in [`blockdp`], which only ever runs the
//! oracles on the individual blocks.

pub mod blockdp;
pub mod colour;
pub mod composed;
pub mod error;
pub mod factors;
pub mod format;
pub mod graph;
pub mod ids;
pub mod paper;
pub mod twopole;

pub use blockdp::{ColourProfile, Cost, FactorMode, FactorProfile};
pub use error::{Error, Result};
pub use graph::{ComponentSummary, Graph};

pub use ids::{EdgeSet, VertexSet};
pub use twopole::{ComposedGraph, SeriesBlock, TwoPole};
