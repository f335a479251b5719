//! Subset search problems, gadget reductions that carry a blow-up factor,
//! and exhaustive evaluators for recoverable robust variants.

pub mod error;
pub mod gen;
pub mod problems;
pub mod reductions;
pub mod rr;
pub mod set;
pub mod ssp;

pub use error::{Result, SspError};
pub use set::ElementSet;
pub use ssp::{distance, relabel, DistanceMeasure, ElementId, InjectiveMap, Limits, LopEnvelope, Universe};
