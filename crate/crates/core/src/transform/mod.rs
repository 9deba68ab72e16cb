//! Compilation of LegalRuleML documents into defeasible theories.
//!
//! The pipeline in [`transform`] strings together the individual rewrites:
//! statement mapping (constitutive/prescriptive/factual/override), body
//! flattening over disjunctions, head splitting over suborder lists and
//! conjunctions, penalty attachment, chain expansion ([`reduct`]),
//! verification-rule generation for conditional elements, and jurisdiction
//! filtering ([`filter_jurisdiction`]).

mod body;
mod error;
mod head;
mod jurisdiction;
mod penalty;
mod pipeline;
mod reduct;
mod statement;
mod subrule;
mod verify;
mod work;

pub use body::{flatten_body, BodyBranch};
pub use error::TransformError;
pub use head::split_head;
pub use jurisdiction::filter_jurisdiction;
pub use pipeline::{transform, TransformOptions, TransformOutput};
pub use reduct::reduct;
pub use statement::{factual_to_fact, label_base, map_modality, statement_to_rules};
pub use subrule::{subrule_labels, SubruleName};
pub use verify::{verify_body, verify_rule_generation};
pub use work::{Attachment, HeadItem, PendingRef, WorkRule};
