//! Intermediate rule representation used while compiling a document.
//!
//! Unlike a finished rule, a work rule still carries the conditional
//! elements discovered in the statement: attachments guarding head chain
//! items, and pending rule-status references waiting for verification-rule
//! generation.

use crate::dl::{Label, ModalLiteral, OmegaChain, Rule, RuleType};
use crate::lrml::{CondKind, CondTarget};

#[derive(Debug, Clone, PartialEq)]
pub struct WorkRule {
    pub label: Label,
    pub rtype: RuleType,
    pub body: Vec<ModalLiteral>,
    /// Rule-target conditional elements from the body, replaced by fresh
    /// status atoms during verification-rule generation.
    pub pending: Vec<PendingRef>,
    pub head: Vec<HeadItem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeadItem {
    pub literal: ModalLiteral,
    /// Conditional elements guarding this chain item.
    pub attachments: Vec<Attachment>,
}

impl HeadItem {
    pub fn bare(literal: ModalLiteral) -> HeadItem {
        HeadItem { literal, attachments: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attachment {
    pub kind: CondKind,
    pub target: CondTarget,
}

/// A rule-status reference: the body of the rule requires the referenced
/// statement's rule to be violated or complied with.
#[derive(Debug, Clone, PartialEq)]
pub struct PendingRef {
    pub kind: CondKind,
    /// Statement key of the referenced rule.
    pub statement: String,
}

impl WorkRule {
    pub fn from_rule(rule: &Rule) -> WorkRule {
        WorkRule {
            label: rule.label.clone(),
            rtype: rule.rtype,
            body: rule.antecedent.clone(),
            pending: Vec::new(),
            head: rule.head.items().iter().cloned().map(HeadItem::bare).collect(),
        }
    }

    /// True once every conditional element has been compiled away.
    pub fn is_lowered(&self) -> bool {
        self.pending.is_empty() && self.head.iter().all(|h| h.attachments.is_empty())
    }

    /// Contraction over the head chain, keeping first occurrences (and their
    /// attachments).
    pub fn normalize_head(&mut self) {
        let mut seen: Vec<ModalLiteral> = Vec::new();
        self.head.retain(|item| {
            if seen.contains(&item.literal) {
                false
            } else {
                seen.push(item.literal.clone());
                true
            }
        });
    }

    /// Converts to a finished rule. Any remaining conditional elements are
    /// reported through `dropped`.
    pub fn lower(&self, dropped: &mut Vec<String>) -> Rule {
        if !self.is_lowered() {
            dropped.push(format!(
                "rule '{}': {} unprocessed conditional element(s) dropped",
                self.label,
                self.pending.len()
                    + self.head.iter().map(|h| h.attachments.len()).sum::<usize>()
            ));
        }
        Rule::new(
            self.label.clone(),
            self.rtype,
            self.body.clone(),
            OmegaChain::new(self.head.iter().map(|h| h.literal.clone()).collect()),
        )
    }
}
