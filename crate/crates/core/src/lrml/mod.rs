//! Typed model and parser for the supported LegalRuleML subset.
//!
//! [`parse_document`] turns XML text into an [`LrmlDocument`];
//! [`resolve_keyrefs`] resolves `keyref` attributes (template reuse and
//! conditional elements); [`apply_associations`] copies strength,
//! jurisdiction and source annotations onto their target statements;
//! [`to_xml`] serializes a document model back to XML.

mod error;
mod model;
mod parse;
mod resolve;
mod xml;

pub use error::LrmlError;
pub use model::{
    Association, CondKind, CondTarget, ConditionNode, ConditionalRef, DeonticNode, Jurisdiction,
    LrmlDocument, Reparation, RuleStrength, RuleTemplate, Statement, StatementBody,
};
pub use parse::parse_document;
pub use resolve::{apply_associations, collect_keys, resolve_keyrefs, KeyEntry};
pub use xml::to_xml;
