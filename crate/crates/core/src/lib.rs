//! Exact computations for teaching-dimension theory over finite domains.
//!
//! Instances are numbered `1..=n`. Concepts and instance sets are packed bit
//! vectors, so agreement and difference checks are word operations.

pub mod bits;
pub mod bounds;
pub mod budget;
pub mod classical;
pub mod concept;
pub mod error;
pub mod experiments;
pub mod hitting;
pub mod johnson;
pub mod nc;
pub mod rng;
pub mod tournament;

pub use budget::Budget;
pub use concept::{agrees_on, complement, difference_set, Concept, ConceptClass, InstanceSet};
pub use error::{Error, RecoveryError, Result};
