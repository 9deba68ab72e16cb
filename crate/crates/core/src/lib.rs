//! Compiler and reasoner for legal norms.
//!
//! The crate turns LegalRuleML documents into modal defeasible-logic
//! theories and computes their extensions:
//!
//! * [`lrml`] — typed document model for the supported LegalRuleML subset,
//!   with an XML parser, key reference resolution and association handling;
//! * [`dl`] — the theory model: modal literals, reparation chains, rules,
//!   superiority, and the deontic conflict table;
//! * [`transform`] — compilation of a document into a theory: statement
//!   mapping, Or/And splitting, penalty attachment, chain expansion,
//!   verification-rule generation and jurisdiction filtering;
//! * [`reasoner`] — grounding plus the four-set extension (`+D`, `-D`,
//!   `+d`, `-d`), with an independent brute-force fixpoint for checking;
//! * [`render`] — serialization back to LegalRuleML and to the line-based
//!   DFL theory format, and the DFL parser;
//! * [`gen`] — seeded random test-data generation.

pub mod dl;
pub mod gen;
pub mod lrml;
pub mod reasoner;
pub mod render;
pub mod transform;
