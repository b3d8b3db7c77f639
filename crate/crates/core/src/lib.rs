//! Finite soft sets over a fixed parameter set, the elementary soft-set
//! algebra, and soft topologies built from it.

pub mod algebra;
pub mod base;
pub mod context;
pub mod corpus;
pub mod element;
pub mod error;
pub mod instance;
pub mod laws;
pub mod map;
pub mod miner;
pub mod separation;
pub mod soft_set;
pub mod topology;

pub use context::Context;
pub use element::{generate, soft_elements, SoftElement, SoftElementSet};
pub use error::{Result, SoftError};
pub use soft_set::{Classification, PointwiseOp, SoftSet};
pub use topology::{Flavor, SoftTopology, ValidationReport};
