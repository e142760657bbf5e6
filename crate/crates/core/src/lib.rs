//! Friendship-paradox seeding, degree-based network means and
//! epidemic-control experiments on undirected simple graphs.
//!
//! ```
//! use fpseed::graph::fixtures::friendship_example;
//! use fpseed::metrics::means_report;
//!
//! let g = friendship_example();
//! let report = means_report(&g).unwrap();
//! assert_eq!(report.mu_d, 2.0);
//! assert!(report.mu_l > report.mu_g);
//! ```

pub mod epidemic;
pub mod error;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod rng;
pub mod runner;
pub mod seeding;
pub mod stats;

pub use error::{Error, Result};
pub use graph::Graph;
