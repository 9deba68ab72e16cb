//! Domain model for modal defeasible theories.
//!
//! A theory is a triple of facts, rules and an acyclic superiority relation.
//! Premises and conclusions are modal literals: atoms with classical negation
//! and an optional deontic modality carrying bearer / auxiliary-party slots.
//! Rule heads are reparation chains (`a (x) b (x) c`): each item becomes the
//! obligation in force once every item before it has been violated.

mod atom;
mod chain;
mod conflict;
mod literal;
mod modality;
mod rule;
pub mod syntax;
mod theory;

pub use atom::{Atom, Term};
pub use chain::OmegaChain;
pub use conflict::{conflicts_with, ConflictTable};
pub use literal::{ModalLiteral, ModalityError};
pub use modality::{Modality, ModalityTag};
pub use rule::{Label, Rule, RuleType};
pub use theory::{ConclusionTag, ProofLevel, Sign, Theory, TheoryViolation, ValidationReport};
