use thiserror::Error;

use crate::dl::{ModalityError, ValidationReport};
use crate::lrml::LrmlError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Lrml(#[from] LrmlError),
    #[error("statement '{statement}': head carries no literal (malformed head)")]
    MalformedHead { statement: String },
    #[error("statement '{statement}': Or is not supported in a rule head")]
    UnsupportedHeadOr { statement: String },
    #[error("statement '{statement}': a constitutive statement cannot have a deontic head")]
    DeonticHeadOnConstitutive { statement: String },
    #[error("statement '{statement}': more than 26 conjunctive head splits exhaust the label alphabet")]
    LabelOverflow { statement: String },
    #[error("{context}: {source}")]
    Modality { context: String, source: ModalityError },
    #[error("{context}: {message}")]
    Structural { context: String, message: String },
    #[error("label '{label}' uses the reserved separator '!'")]
    ReservedLabel { label: String },
    #[error("conditional element key '{key}' has not been resolved; run keyref resolution first")]
    UnresolvedReference { key: String },
    #[error("dangling reference to '{key}'")]
    DanglingReference { key: String },
    #[error("reference to '{key}': {message}")]
    BadTarget { key: String, message: String },
    #[error("conditional element references statement '{key}' which maps to {count} rules; only single-rule targets are supported")]
    AmbiguousRuleReference { key: String, count: usize },
    #[error("unknown jurisdiction '{key}'; known jurisdictions: {}", known.join(", "))]
    UnknownJurisdiction { key: String, known: Vec<String> },
    #[error("transformed theory is invalid: {report}")]
    InvalidTheory { report: ValidationReport },
}

impl TransformError {
    pub(crate) fn structural(context: impl Into<String>, message: impl Into<String>) -> Self {
        TransformError::Structural { context: context.into(), message: message.into() }
    }

    pub(crate) fn modality(context: impl Into<String>, source: ModalityError) -> Self {
        TransformError::Modality { context: context.into(), source }
    }
}
