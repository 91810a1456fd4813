//! Bipartite graphs with the maximum sum of squared degrees.
//!
//! Given `n` vertices and `m` edges, [`extremal::classify`] returns the
//! maximum of `σ₂(G) = Σ d(v)²` over all bipartite graphs `G` and every graph
//! attaining it. [`oracle`] re-derives the same answers by exhaustive
//! enumeration for `n <= 10`.
//!
//! ```
//! use bipartite_sigma::extremal::{classify, GraphParams, Regime};
//!
//! let c = classify(GraphParams::new(9, 16).unwrap()).unwrap();
//! assert_eq!(c.regime, Regime::CaseA);
//! assert_eq!(c.max_sigma2, 132);
//! assert_eq!(c.iso_classes, 2);
//! ```

pub mod canon;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod format;
pub mod graph;
pub mod oracle;

pub use canon::CanonicalForm;
pub use error::{EngineError, GraphError, OracleError};
pub use extremal::{classify, max_sigma2, ExtremalClassification, GraphParams, Regime};
pub use format::Format;
pub use graph::{BipartiteGraph, DegreeSequence};
