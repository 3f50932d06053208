//! Source-oblivious broadcast on graphs.
//!
//! Every node holds one ordered list of neighbors and, once informed, calls
//! them in that order regardless of where the message came from. This crate
//! builds graph families whose lists broadcast in `ceil(log2 n)` rounds from
//! any source, simulates list-driven broadcast under three adaptivity
//! models, and checks the constructions against exhaustive oracles.
//!
//! ```
//! use listcast::schemes::subcube_union;
//! use listcast::sim::{max_broadcast_time, Model, RoundCount};
//!
//! let scheme = subcube_union(6).unwrap();
//! let times = max_broadcast_time(&scheme.graph, &scheme.lists, Model::FullyAdaptive).unwrap();
//! assert_eq!(times.worst, RoundCount::Finite(3));
//! ```

pub mod binomial;
pub mod bounds;
pub mod error;
pub mod graph;
pub mod instance;
pub mod lists;
pub mod oracle;
pub mod schemes;
pub mod search;
pub mod sim;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, Labels, NodeId, SizeCap};
pub use lists::ListAssignment;
pub use sim::{Model, RoundCount, SimulationTrace};
