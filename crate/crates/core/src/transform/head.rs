//! Rule-head splitting into reparation chains.
//!
//! A suborder list contributes one chain position per child. A conjunction
//! inside the list is the point where the rule splits: each of its literals
//! starts an alternative chain sharing the preceding prefix. Conditional
//! elements inside such a conjunction do not occupy a chain position; they
//! attach to the literals of the same conjunction and are compiled into the
//! antecedent later. A head consisting only of conditional elements is
//! malformed.

use crate::lrml::ConditionNode;
use crate::transform::error::TransformError;
use crate::transform::work::{Attachment, HeadItem};

/// Splits a head tree into the chains of the resulting rules.
pub fn split_head(
    head: Option<&ConditionNode>,
    context: &str,
) -> Result<Vec<Vec<HeadItem>>, TransformError> {
    let node = head.ok_or_else(|| TransformError::MalformedHead {
        statement: context.to_string(),
    })?;

    let positions: Vec<&ConditionNode> = match node {
        ConditionNode::SuborderList { children, .. } => children.iter().collect(),
        other => vec![other],
    };

    let mut alternatives_per_position: Vec<Vec<HeadItem>> = Vec::new();
    for position in positions {
        let alternatives = position_alternatives(position, context)?;
        if !alternatives.is_empty() {
            alternatives_per_position.push(alternatives);
        }
    }
    if alternatives_per_position.is_empty() {
        return Err(TransformError::MalformedHead { statement: context.to_string() });
    }

    // Cartesian product over positions, leftmost position varying slowest.
    let mut chains: Vec<Vec<HeadItem>> = vec![Vec::new()];
    for alternatives in &alternatives_per_position {
        let mut next = Vec::with_capacity(chains.len() * alternatives.len());
        for chain in &chains {
            for alt in alternatives {
                let mut extended = chain.clone();
                extended.push(alt.clone());
                next.push(extended);
            }
        }
        chains = next;
    }
    Ok(chains)
}

fn position_alternatives(
    node: &ConditionNode,
    context: &str,
) -> Result<Vec<HeadItem>, TransformError> {
    match node {
        ConditionNode::And { children, .. } => {
            let mut attachments = Vec::new();
            let mut literals = Vec::new();
            for child in children {
                match child {
                    ConditionNode::ConditionalRef(cref) => {
                        let target = cref.target.clone().ok_or_else(|| {
                            TransformError::UnresolvedReference { key: cref.keyref.clone() }
                        })?;
                        attachments.push(Attachment { kind: cref.kind, target });
                    }
                    ConditionNode::Or { .. } => {
                        return Err(TransformError::UnsupportedHeadOr {
                            statement: context.to_string(),
                        })
                    }
                    leaf => {
                        let lit = leaf.leaf_literal().ok_or_else(|| {
                            TransformError::structural(
                                context,
                                "nested connective in a head conjunction",
                            )
                        })?;
                        literals.push(lit);
                    }
                }
            }
            if literals.is_empty() {
                return Err(TransformError::MalformedHead { statement: context.to_string() });
            }
            Ok(literals
                .into_iter()
                .map(|literal| HeadItem { literal, attachments: attachments.clone() })
                .collect())
        }
        ConditionNode::Or { .. } => {
            Err(TransformError::UnsupportedHeadOr { statement: context.to_string() })
        }
        ConditionNode::SuborderList { .. } => Err(TransformError::structural(
            context,
            "nested SuborderList in a rule head",
        )),
        ConditionNode::ConditionalRef(_) => {
            Err(TransformError::MalformedHead { statement: context.to_string() })
        }
        leaf => {
            let lit = leaf.leaf_literal().ok_or_else(|| {
                TransformError::structural(context, "unsupported node in rule head")
            })?;
            Ok(vec![HeadItem::bare(lit)])
        }
    }
}
