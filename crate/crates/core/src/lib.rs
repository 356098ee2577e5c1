//! Core & Peel: disjoint dense community detection for large sparse graphs.
//!
//! The pipeline orders nodes by core number and core count, grows a
//! core-filtered neighbourhood around each unmarked seed, and peels it down
//! to a subgraph meeting a minimum size and density. Found communities are
//! marked so later seeds cannot reuse their nodes.
//!
//! Thresholds are generic over [`Scalar`], so the same code runs with `f64`,
//! `f32` or exact rationals. The aliases below cover the common choices.

pub mod bench;
pub mod error;
pub mod gen;
pub mod graph;
pub mod kcore;
pub mod nodeset;
pub mod pdc;
pub mod peel;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, parse_edge_list_str, Graph, Label, Node};
pub use kcore::CoreInfo;
pub use nodeset::NodeSet;
pub use pdc::{core_and_peel, CoverResult, PdcParams, Violation};
pub use peel::{peel, peel_max_avg_degree, PeelOutcome, PeelStatus};
pub use scalar::Scalar;

/// Exact rational thresholds.
pub type Exact = num_rational::Ratio<i64>;

pub type Params = PdcParams<f64>;
pub type Params32 = PdcParams<f32>;
pub type ExactParams = PdcParams<Exact>;

pub type Cover = CoverResult<f64>;
pub type ExactCover = CoverResult<Exact>;
