//! Rule-body flattening into disjunctive normal form.
//!
//! Every `Or` splits the rule; the result is one antecedent set per branch
//! combination, in document order. Conditional elements referencing a
//! literal are expanded into its violation/compliance set and appended after
//! the ordinary premises of their conjunction; references to rules stay
//! pending for verification-rule generation.

use crate::dl::ModalLiteral;
use crate::lrml::{CondKind, CondTarget, ConditionNode};
use crate::transform::error::TransformError;
use crate::transform::work::PendingRef;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BodyBranch {
    pub literals: Vec<ModalLiteral>,
    pub pending: Vec<PendingRef>,
}

impl BodyBranch {
    fn join(&self, other: &BodyBranch) -> BodyBranch {
        let mut out = self.clone();
        out.literals.extend(other.literals.iter().cloned());
        out.pending.extend(other.pending.iter().cloned());
        out
    }
}

/// Flattens a body tree. An absent body yields the single empty antecedent.
pub fn flatten_body(
    body: Option<&ConditionNode>,
    context: &str,
) -> Result<Vec<BodyBranch>, TransformError> {
    match body {
        None => Ok(vec![BodyBranch::default()]),
        Some(node) => branches(node, context),
    }
}

fn branches(node: &ConditionNode, context: &str) -> Result<Vec<BodyBranch>, TransformError> {
    match node {
        ConditionNode::And { children, .. } => {
            // Conditional elements are appended after the plain premises of
            // the conjunction.
            let (refs, plain): (Vec<_>, Vec<_>) = children
                .iter()
                .partition(|c| matches!(c, ConditionNode::ConditionalRef(_)));
            let mut acc = vec![BodyBranch::default()];
            for child in plain.into_iter().chain(refs) {
                let child_branches = branches(child, context)?;
                let mut next = Vec::with_capacity(acc.len() * child_branches.len());
                for left in &acc {
                    for right in &child_branches {
                        next.push(left.join(right));
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        ConditionNode::Or { children, .. } => {
            let mut acc = Vec::new();
            for child in children {
                acc.extend(branches(child, context)?);
            }
            if acc.is_empty() {
                return Err(TransformError::structural(context, "empty Or in rule body"));
            }
            Ok(acc)
        }
        ConditionNode::SuborderList { .. } => Err(TransformError::structural(
            context,
            "SuborderList is not allowed in a rule body",
        )),
        ConditionNode::ConditionalRef(cref) => {
            let target = cref.target.as_ref().ok_or_else(|| {
                TransformError::UnresolvedReference { key: cref.keyref.clone() }
            })?;
            match target {
                CondTarget::Literal(lit) => {
                    let set = match cref.kind {
                        CondKind::Violation => lit.violate_set(),
                        CondKind::Compliance => lit.comply_set(),
                    }
                    .map_err(|e| TransformError::modality(context.to_string(), e))?;
                    Ok(vec![BodyBranch { literals: set, pending: Vec::new() }])
                }
                CondTarget::Rule(key) => Ok(vec![BodyBranch {
                    literals: Vec::new(),
                    pending: vec![PendingRef { kind: cref.kind, statement: key.clone() }],
                }]),
            }
        }
        leaf => {
            let lit = leaf.leaf_literal().ok_or_else(|| {
                TransformError::structural(context, "unsupported node in rule body")
            })?;
            Ok(vec![BodyBranch { literals: vec![lit], pending: Vec::new() }])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl::syntax::parse_literal;
    use crate::dl::{Atom, ModalityTag, Term};
    use crate::lrml::{ConditionalRef, DeonticNode};

    fn atom(name: &str) -> ConditionNode {
        ConditionNode::Atom {
            key: None,
            negated: false,
            atom: Atom::new(name, vec![Term::Variable("X".into())]),
        }
    }

    fn and(children: Vec<ConditionNode>) -> ConditionNode {
        ConditionNode::And { key: None, children }
    }

    fn or(children: Vec<ConditionNode>) -> ConditionNode {
        ConditionNode::Or { key: None, children }
    }

    fn lits(branch: &BodyBranch) -> Vec<String> {
        branch.literals.iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn plain_conjunction_is_one_branch() {
        let out = flatten_body(Some(&and(vec![atom("a"), atom("b")])), "t").unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(lits(&out[0]), vec!["a(X)", "b(X)"]);
    }

    #[test]
    fn or_splits_into_branches_in_document_order() {
        // And[per, Or[obl, right]] -> {per,obl}, {per,right}
        let per = ConditionNode::Deontic(DeonticNode {
            key: None,
            tag: ModalityTag::Permission,
            bearer: Some("Y".into()),
            auxiliary: None,
            negated: false,
            atom: Atom::new("rel1", vec![Term::Variable("X".into())]),
        });
        let obl = ConditionNode::Deontic(DeonticNode {
            key: None,
            tag: ModalityTag::Obligation,
            bearer: None,
            auxiliary: None,
            negated: false,
            atom: Atom::new("rel2", vec![Term::Variable("X".into())]),
        });
        let right = ConditionNode::Deontic(DeonticNode {
            key: None,
            tag: ModalityTag::Right,
            bearer: Some("Y".into()),
            auxiliary: Some("Y".into()),
            negated: false,
            atom: Atom::new("rel2", vec![Term::Variable("X".into())]),
        });
        let out = flatten_body(Some(&and(vec![per, or(vec![obl, right])])), "t").unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(lits(&out[0]), vec!["[PER:Y:NULL]rel1(X)", "[OBL:NULL:NULL]rel2(X)"]);
        assert_eq!(lits(&out[1]), vec!["[PER:Y:NULL]rel1(X)", "[RIGHT:Y:Y]rel2(X)"]);
    }

    #[test]
    fn nested_or_flattens_fully() {
        let out =
            flatten_body(Some(&or(vec![atom("a"), or(vec![atom("b"), atom("c")])])), "t").unwrap();
        assert_eq!(out.len(), 3);
        // DNF oracle: enumerate assignments over {a,b,c} and compare the
        // tree's truth value with "some branch fully satisfied".
        let names = ["a", "b", "c"];
        for mask in 0u8..8 {
            let holds = |n: &str| {
                let i = names.iter().position(|x| *x == n).unwrap();
                mask & (1 << i) != 0
            };
            let tree_value = holds("a") || holds("b") || holds("c");
            let dnf_value = out.iter().any(|br| {
                br.literals.iter().all(|l| holds(&l.atom.predicate))
            });
            assert_eq!(tree_value, dnf_value, "assignment {mask:03b}");
        }
    }

    #[test]
    fn literal_violation_refs_are_appended_after_plain_premises() {
        let vref = ConditionNode::ConditionalRef(ConditionalRef {
            kind: CondKind::Violation,
            keyref: "ps3".into(),
            target: Some(crate::lrml::CondTarget::Literal(
                parse_literal("[OBL:NULL:NULL]q").unwrap(),
            )),
        });
        let out = flatten_body(Some(&and(vec![vref, atom("a")])), "t").unwrap();
        assert_eq!(lits(&out[0]), vec!["a(X)", "[OBL:NULL:NULL]q", "-q"]);
    }

    #[test]
    fn rule_refs_stay_pending() {
        let vref = ConditionNode::ConditionalRef(ConditionalRef {
            kind: CondKind::Violation,
            keyref: "ps3".into(),
            target: Some(crate::lrml::CondTarget::Rule("ps3".into())),
        });
        let out = flatten_body(Some(&vref), "t").unwrap();
        assert_eq!(out[0].pending.len(), 1);
        assert_eq!(out[0].pending[0].statement, "ps3");
    }

    #[test]
    fn suborder_list_is_rejected() {
        let node = ConditionNode::SuborderList { key: None, children: vec![] };
        assert!(flatten_body(Some(&node), "t").is_err());
    }

    #[test]
    fn unresolved_ref_is_an_error() {
        let vref = ConditionNode::ConditionalRef(ConditionalRef {
            kind: CondKind::Violation,
            keyref: "x".into(),
            target: None,
        });
        assert!(matches!(
            flatten_body(Some(&vref), "t"),
            Err(TransformError::UnresolvedReference { .. })
        ));
    }
}
