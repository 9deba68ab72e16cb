//! Compilation of conditional elements into verification machinery.
//!
//! After chain expansion every rule head is a single literal. A conditional
//! element still attached to a head literal moves into the antecedent as
//! that literal's violation/compliance set (literal targets) or stays
//! pending (rule targets). Pending rule targets are then compiled away:
//! for each referenced rule `rc`, five auxiliary rules over fresh atoms
//! `inf(rc)`, `compliance(rc)` and `violation(rc)` decide whether `rc` is in
//! force and whether its first head literal is complied with or violated,
//! and the pending reference becomes the corresponding status atom.

use std::collections::{BTreeMap, BTreeSet};

use crate::dl::syntax::is_identifier;
use crate::dl::{Atom, Label, ModalLiteral, RuleType, Term};
use crate::lrml::{CondKind, CondTarget};
use crate::transform::error::TransformError;
use crate::transform::work::{PendingRef, WorkRule};

/// Moves head attachments of defeasible rules into their antecedents.
/// Attachments on strict-rule heads are a constraint violation; defeaters
/// cannot carry them either, which raises a warning and drops the element.
pub fn verify_rule_generation(
    rules: Vec<WorkRule>,
    warnings: &mut Vec<String>,
) -> Result<Vec<WorkRule>, TransformError> {
    let mut out = Vec::with_capacity(rules.len());
    for mut rule in rules {
        if rule.head.len() == 1 && !rule.head[0].attachments.is_empty() {
            let attachments = std::mem::take(&mut rule.head[0].attachments);
            match rule.rtype {
                RuleType::Strict => {
                    return Err(TransformError::structural(
                        rule.label.as_str(),
                        "conditional element attached to a strict-rule head",
                    ))
                }
                RuleType::Defeater => {
                    warnings.push(format!(
                        "rule '{}': conditional element on a defeater head ignored",
                        rule.label
                    ));
                }
                RuleType::Defeasible => {
                    for attachment in attachments {
                        match &attachment.target {
                            CondTarget::Literal(lit) => {
                                let set = match attachment.kind {
                                    CondKind::Violation => lit.violate_set(),
                                    CondKind::Compliance => lit.comply_set(),
                                }
                                .map_err(|e| {
                                    TransformError::modality(rule.label.as_str().to_string(), e)
                                })?;
                                rule.body.extend(set);
                            }
                            CondTarget::Rule(key) => rule.pending.push(PendingRef {
                                kind: attachment.kind,
                                statement: key.clone(),
                            }),
                        }
                    }
                }
            }
        }
        out.push(rule);
    }
    Ok(out)
}

/// Replaces pending rule-status references with fresh atoms and generates
/// the five status rules per referenced rule. `stmt_labels` maps statement
/// keys to the rule labels generated from them; references may also name a
/// rule label directly.
pub fn verify_body(
    mut rules: Vec<WorkRule>,
    mut superiority: Vec<(Label, Label)>,
    stmt_labels: &BTreeMap<String, Vec<Label>>,
    facts: &[ModalLiteral],
) -> Result<(Vec<WorkRule>, Vec<(Label, Label)>), TransformError> {
    // Referenced rules in first-occurrence order.
    let mut resolution: BTreeMap<String, Label> = BTreeMap::new();
    let mut referenced: Vec<Label> = Vec::new();
    for rule in &rules {
        for pending in &rule.pending {
            if !resolution.contains_key(&pending.statement) {
                let label = resolve_rule_reference(&pending.statement, stmt_labels, &rules)?;
                resolution.insert(pending.statement.clone(), label.clone());
                if !referenced.contains(&label) {
                    referenced.push(label);
                }
            }
        }
    }
    if referenced.is_empty() {
        return Ok((rules, superiority));
    }

    let names = fresh_predicates(&rules, facts);
    let status_atom = |pred: &str, rc: &Label| {
        ModalLiteral::plain(Atom::new(pred, vec![Term::Constant(sanitize(rc.as_str()))]))
    };

    // Replace the pending references by status atoms, appended to the body.
    for rule in &mut rules {
        for pending in std::mem::take(&mut rule.pending) {
            let rc = resolution[&pending.statement].clone();
            let pred = match pending.kind {
                CondKind::Violation => &names.violation,
                CondKind::Compliance => &names.compliance,
            };
            rule.body.push(status_atom(pred, &rc));
        }
    }

    // Five status rules per referenced rule, generated once.
    let mut additions = Vec::new();
    for rc in &referenced {
        let target = rules
            .iter()
            .find(|r| &r.label == rc)
            .ok_or_else(|| TransformError::DanglingReference { key: rc.as_str().to_string() })?;
        let in_force = status_atom(&names.in_force, rc);
        let not_in_force = in_force.complement();
        let compliance = status_atom(&names.compliance, rc);
        let violation = status_atom(&names.violation, rc);
        let first = &target.head[0].literal;
        let comply = first.comply_set().map_err(|e| {
            TransformError::modality(format!("rule status of '{rc}'"), e)
        })?;
        let violate = first.violate_set().map_err(|e| {
            TransformError::modality(format!("rule status of '{rc}'"), e)
        })?;

        let mk = |suffix: &str, body: Vec<ModalLiteral>, head: ModalLiteral| WorkRule {
            label: Label::new(format!("{rc}!{suffix}")),
            rtype: RuleType::Defeasible,
            body,
            pending: Vec::new(),
            head: vec![crate::transform::work::HeadItem::bare(head)],
        };
        additions.push(mk("force", target.body.clone(), in_force.clone()));
        additions.push(mk("noforce", Vec::new(), not_in_force.clone()));
        additions.push(mk("fviol", vec![not_in_force], violation.clone()));
        let mut comp_body = vec![in_force.clone()];
        comp_body.extend(comply);
        additions.push(mk("comp", comp_body, compliance));
        let mut viol_body = vec![in_force];
        viol_body.extend(violate);
        additions.push(mk("viol", viol_body, violation));
        superiority.push((
            Label::new(format!("{rc}!force")),
            Label::new(format!("{rc}!noforce")),
        ));
    }
    rules.extend(additions);
    Ok((rules, superiority))
}

fn resolve_rule_reference(
    statement: &str,
    stmt_labels: &BTreeMap<String, Vec<Label>>,
    rules: &[WorkRule],
) -> Result<Label, TransformError> {
    if let Some(labels) = stmt_labels.get(statement) {
        return match labels.len() {
            1 => Ok(labels[0].clone()),
            n => Err(TransformError::AmbiguousRuleReference {
                key: statement.to_string(),
                count: n,
            }),
        };
    }
    if rules.iter().any(|r| r.label.as_str() == statement) {
        return Ok(Label::new(statement));
    }
    Err(TransformError::DanglingReference { key: statement.to_string() })
}

struct StatusNames {
    in_force: String,
    compliance: String,
    violation: String,
}

/// Picks predicate names for the status atoms that do not occur in the
/// theory's language, escalating to a numeric suffix on collision.
fn fresh_predicates(rules: &[WorkRule], facts: &[ModalLiteral]) -> StatusNames {
    let mut used: BTreeSet<&str> = BTreeSet::new();
    for rule in rules {
        for lit in rule.body.iter().chain(rule.head.iter().map(|h| &h.literal)) {
            used.insert(&lit.atom.predicate);
        }
    }
    for lit in facts {
        used.insert(&lit.atom.predicate);
    }
    let mut suffix = String::new();
    let mut n = 0;
    loop {
        let candidates = [
            format!("inf{suffix}"),
            format!("compliance{suffix}"),
            format!("violation{suffix}"),
        ];
        if candidates.iter().all(|c| !used.contains(c.as_str())) {
            let [in_force, compliance, violation] = candidates;
            return StatusNames { in_force, compliance, violation };
        }
        n += 1;
        suffix = format!("_{n}");
    }
}

/// Makes a rule label usable as a constant in a status atom.
fn sanitize(label: &str) -> String {
    let mut out: String = label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '_' | '%' | '.' | '-') {
                c.to_string()
            } else {
                format!("_x{:02x}_", c as u32)
            }
        })
        .collect();
    if !out.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
        out.insert(0, '_');
    }
    debug_assert!(is_identifier(&out));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::work::{Attachment, HeadItem};

    fn lit(s: &str) -> ModalLiteral {
        crate::dl::syntax::parse_literal(s).unwrap()
    }

    fn rule(label: &str, body: &[&str], head: &str) -> WorkRule {
        WorkRule {
            label: Label::new(label),
            rtype: RuleType::Defeasible,
            body: body.iter().map(|s| lit(s)).collect(),
            pending: Vec::new(),
            head: vec![HeadItem::bare(lit(head))],
        }
    }

    #[test]
    fn literal_attachment_extends_the_antecedent() {
        let mut r = rule("ps4!1", &["a"], "[OBL:NULL:NULL]rel4(X)");
        r.head[0].attachments.push(Attachment {
            kind: CondKind::Violation,
            target: CondTarget::Literal(lit("[OBL:NULL:NULL]m")),
        });
        let mut warnings = Vec::new();
        let out = verify_rule_generation(vec![r], &mut warnings).unwrap();
        assert_eq!(
            out[0].body,
            vec![lit("a"), lit("[OBL:NULL:NULL]m"), lit("-m")]
        );
        assert!(warnings.is_empty());
    }

    #[test]
    fn no_attachment_leaves_the_rule_unchanged() {
        let r = rule("r", &["a"], "b");
        let mut warnings = Vec::new();
        let out = verify_rule_generation(vec![r.clone()], &mut warnings).unwrap();
        assert_eq!(out, vec![r]);
    }

    #[test]
    fn compliance_attachment_uses_the_comply_set() {
        let mut r = rule("r", &[], "[OBL:NULL:NULL]x");
        r.head[0].attachments.push(Attachment {
            kind: CondKind::Compliance,
            target: CondTarget::Literal(lit("[PRO:NULL:NULL]m")),
        });
        let out = verify_rule_generation(vec![r], &mut Vec::new()).unwrap();
        assert_eq!(out[0].body, vec![lit("[PRO:NULL:NULL]m"), lit("-m")]);
    }

    #[test]
    fn strict_head_attachment_is_a_constraint_violation() {
        let mut r = rule("r", &[], "x");
        r.rtype = RuleType::Strict;
        r.head[0].attachments.push(Attachment {
            kind: CondKind::Violation,
            target: CondTarget::Literal(lit("m")),
        });
        assert!(verify_rule_generation(vec![r], &mut Vec::new()).is_err());
    }

    #[test]
    fn rule_reference_generates_the_five_status_rules_once() {
        let ps3 = rule("ps3", &["a(X)"], "[OBL:NULL:NULL]b(X)");
        let mut r1 = rule("r1", &["c"], "d");
        r1.pending.push(PendingRef { kind: CondKind::Violation, statement: "ps3" .into() });
        let mut r2 = rule("r2", &["e"], "f");
        r2.pending.push(PendingRef { kind: CondKind::Violation, statement: "ps3".into() });

        let mut labels = BTreeMap::new();
        labels.insert("ps3".to_string(), vec![Label::new("ps3")]);
        let (rules, sup) =
            verify_body(vec![ps3, r1, r2], Vec::new(), &labels, &[]).unwrap();

        assert_eq!(rules.len(), 3 + 5);
        let r1 = rules.iter().find(|r| r.label.as_str() == "r1").unwrap();
        assert_eq!(r1.body, vec![lit("c"), lit("violation(ps3)")]);
        assert_eq!(sup, vec![(Label::new("ps3!force"), Label::new("ps3!noforce"))]);

        let force = rules.iter().find(|r| r.label.as_str() == "ps3!force").unwrap();
        assert_eq!(force.body, vec![lit("a(X)")]);
        assert_eq!(force.head[0].literal, lit("inf(ps3)"));
        let viol = rules.iter().find(|r| r.label.as_str() == "ps3!viol").unwrap();
        assert_eq!(
            viol.body,
            vec![lit("inf(ps3)"), lit("[OBL:NULL:NULL]b(X)"), lit("-b(X)")]
        );
        let comp = rules.iter().find(|r| r.label.as_str() == "ps3!comp").unwrap();
        assert_eq!(
            comp.body,
            vec![lit("inf(ps3)"), lit("[OBL:NULL:NULL]b(X)"), lit("b(X)")]
        );
        let fviol = rules.iter().find(|r| r.label.as_str() == "ps3!fviol").unwrap();
        assert_eq!(fviol.body, vec![lit("-inf(ps3)")]);
    }

    #[test]
    fn status_atoms_avoid_the_existing_language() {
        let ps3 = rule("ps3", &["inf(q)"], "[OBL:NULL:NULL]b");
        let mut r1 = rule("r1", &[], "d");
        r1.pending.push(PendingRef { kind: CondKind::Violation, statement: "ps3".into() });
        let mut labels = BTreeMap::new();
        labels.insert("ps3".to_string(), vec![Label::new("ps3")]);
        let (rules, _) = verify_body(vec![ps3, r1], Vec::new(), &labels, &[]).unwrap();
        let r1 = rules.iter().find(|r| r.label.as_str() == "r1").unwrap();
        assert_eq!(r1.body, vec![lit("violation_1(ps3)")]);
    }

    #[test]
    fn no_rule_targets_is_a_no_op() {
        let rules = vec![rule("r", &["a"], "b")];
        let (out, sup) = verify_body(rules.clone(), Vec::new(), &BTreeMap::new(), &[]).unwrap();
        assert_eq!(out, rules);
        assert!(sup.is_empty());
    }

    #[test]
    fn split_statement_references_are_rejected() {
        let mut r1 = rule("r1", &[], "d");
        r1.pending.push(PendingRef { kind: CondKind::Violation, statement: "s".into() });
        let mut labels = BTreeMap::new();
        labels.insert("s".to_string(), vec![Label::new("s-1"), Label::new("s-2")]);
        assert!(matches!(
            verify_body(vec![r1], Vec::new(), &labels, &[]),
            Err(TransformError::AmbiguousRuleReference { count: 2, .. })
        ));
    }
}
