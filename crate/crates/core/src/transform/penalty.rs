//! Penalty attachment: reparation statements extend rule heads into chains.

use std::collections::BTreeMap;

use crate::dl::{Label, ModalLiteral, RuleType};
use crate::lrml::{ConditionNode, LrmlDocument, StatementBody};
use crate::transform::error::TransformError;
use crate::transform::work::{HeadItem, WorkRule};

/// For every reparation, appends the penalty suborder list's deontic
/// formulas to the head chain of each rule generated from the sanctioned
/// statement, then normalizes the chain. Penalties can only sanction
/// prescriptive statements.
pub(crate) fn attach_penalties(
    rules: &mut [WorkRule],
    doc: &LrmlDocument,
    stmt_labels: &BTreeMap<String, Vec<Label>>,
) -> Result<(), TransformError> {
    let penalties: BTreeMap<&str, &Vec<ConditionNode>> = doc
        .statements
        .iter()
        .filter_map(|s| match (&s.key, &s.body) {
            (Some(key), StatementBody::Penalty { suborder }) => Some((key.as_str(), suborder)),
            _ => None,
        })
        .collect();

    for stmt in &doc.statements {
        let rep = match &stmt.body {
            StatementBody::Reparation(rep) => rep,
            _ => continue,
        };
        let target_stmt = doc
            .statement_by_key(&rep.target)
            .ok_or_else(|| TransformError::DanglingReference { key: rep.target.clone() })?;
        match &target_stmt.body {
            StatementBody::Prescriptive(_) => {}
            StatementBody::Constitutive(_) => {
                return Err(TransformError::BadTarget {
                    key: rep.target.clone(),
                    message: "a reparation cannot sanction a constitutive statement \
                              (strict rules cannot carry reparation chains)"
                        .into(),
                })
            }
            _ => {
                return Err(TransformError::BadTarget {
                    key: rep.target.clone(),
                    message: "a reparation must sanction a prescriptive statement".into(),
                })
            }
        }
        let suborder = penalties.get(rep.penalty.as_str()).ok_or_else(|| {
            TransformError::BadTarget {
                key: rep.penalty.clone(),
                message: "appliesPenalty must reference a penalty statement".into(),
            }
        })?;
        let tail: Vec<ModalLiteral> = suborder
            .iter()
            .map(|node| {
                node.leaf_literal().ok_or_else(|| {
                    TransformError::structural(
                        rep.penalty.clone(),
                        "penalty suborder list must contain deontic formulas",
                    )
                })
            })
            .collect::<Result<_, _>>()?;
        if tail.is_empty() {
            continue;
        }

        let labels = stmt_labels.get(&rep.target).ok_or_else(|| {
            TransformError::DanglingReference { key: rep.target.clone() }
        })?;
        for rule in rules.iter_mut().filter(|r| labels.contains(&r.label)) {
            if rule.rtype != RuleType::Defeasible {
                return Err(TransformError::BadTarget {
                    key: rep.target.clone(),
                    message: format!(
                        "rule '{}' is not defeasible and cannot carry a reparation chain",
                        rule.label
                    ),
                });
            }
            rule.head.extend(tail.iter().cloned().map(HeadItem::bare));
            rule.normalize_head();
        }
    }
    Ok(())
}
