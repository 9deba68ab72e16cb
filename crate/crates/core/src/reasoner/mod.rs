//! Extension computation for ground singleton-head theories.
//!
//! [`ground`] instantiates variables over the theory's constants,
//! [`compute_extension`] derives the four conclusion sets with the
//! counter-based propagation engine, [`prove`] answers single tagged
//! queries, and [`brute_force_extension`] is the independent fixpoint
//! oracle used to cross-check the engine.

mod brute;
mod engine;
mod extension;
mod ground;

pub use brute::brute_force_extension;
pub use engine::{compute_extension, prove, ReasonError};
pub use extension::Extension;
pub use ground::{ground, GroundError};
