//! Rendering a theory back to LegalRuleML.
//!
//! Only information present in the theory is emitted: strict rules become
//! constitutive statements, defeasible and defeater rules prescriptive ones
//! (the defeater strength goes through `hasStrength`), facts become factual
//! statements, superiority pairs override statements, and the tail of a
//! reparation chain becomes a penalty/reparation statement pair. Metadata
//! such as jurisdictions or associations has no counterpart in a theory and
//! is not reconstructed.

use crate::dl::{ModalLiteral, Rule, RuleType, Theory};
use crate::lrml::{
    ConditionNode, DeonticNode, LrmlDocument, Reparation, RuleStrength, RuleTemplate, Statement,
    StatementBody,
};

/// Serializes a theory as a LegalRuleML document.
pub fn render_lrml(theory: &Theory) -> String {
    crate::lrml::to_xml(&theory_to_document(theory))
}

/// Builds the document model for a theory. Statement keys are synthesized
/// from rule labels; the reserved `!` of generated labels is escaped as
/// `_x21_` so the keys stay plain identifiers.
pub fn theory_to_document(theory: &Theory) -> LrmlDocument {
    let mut doc = LrmlDocument::default();

    for (i, fact) in theory.facts.iter().enumerate() {
        doc.statements.push(Statement::new(
            Some(format!("fact{}", i + 1)),
            StatementBody::Factual { template: literal_node(fact) },
        ));
    }

    for rule in theory.rules() {
        let key = escape_label(rule.label.as_str());
        let body = match rule.antecedent.len() {
            0 => None,
            _ => Some(ConditionNode::And {
                key: None,
                children: rule.antecedent.iter().map(literal_node).collect(),
            }),
        };
        let template = RuleTemplate {
            key: None,
            keyref: None,
            universal: false,
            strength: match rule.rtype {
                RuleType::Defeater => Some(RuleStrength::Defeater),
                _ => None,
            },
            body,
            head: Some(literal_node(rule.head.first())),
        };
        let statement_body = match rule.rtype {
            RuleType::Strict => StatementBody::Constitutive(template),
            RuleType::Defeasible | RuleType::Defeater => StatementBody::Prescriptive(template),
        };
        doc.statements.push(Statement::new(Some(key.clone()), statement_body));

        // Chain tails become a penalty bound back by a reparation.
        if rule.head.len() > 1 {
            let penalty_key = format!("{key}-pen");
            doc.statements.push(Statement::new(
                Some(penalty_key.clone()),
                StatementBody::Penalty {
                    suborder: rule.head.items()[1..].iter().map(literal_node).collect(),
                },
            ));
            doc.statements.push(Statement::new(
                Some(format!("{key}-rep")),
                StatementBody::Reparation(Reparation {
                    key: None,
                    penalty: penalty_key,
                    target: key.clone(),
                }),
            ));
        }
    }

    for (winner, loser) in &theory.superiority {
        doc.statements.push(Statement::new(
            None,
            StatementBody::Override {
                over: escape_label(winner.as_str()),
                under: escape_label(loser.as_str()),
            },
        ));
    }
    doc
}

fn literal_node(lit: &ModalLiteral) -> ConditionNode {
    match &lit.modality {
        Some(m) => ConditionNode::Deontic(DeonticNode {
            key: None,
            tag: m.tag,
            bearer: m.bearer.clone(),
            auxiliary: m.auxiliary.clone(),
            negated: lit.negated,
            atom: lit.atom.clone(),
        }),
        None => ConditionNode::Atom { key: None, negated: lit.negated, atom: lit.atom.clone() },
    }
}

fn escape_label(label: &str) -> String {
    label.replace('!', "_x21_")
}

/// Structural equality of two theories up to rule labels: the facts agree,
/// the rules pair up by type, antecedent set and head chain, and the
/// superiority relation agrees under that pairing. Used by round-trip
/// checks, where keys are synthesized and order is canonical.
pub fn equivalent_modulo_labels(a: &Theory, b: &Theory) -> bool {
    if a.facts != b.facts || a.rules().len() != b.rules().len() {
        return false;
    }
    let signature = |r: &Rule| {
        let mut body: Vec<String> = r.antecedent.iter().map(|l| l.to_string()).collect();
        body.sort();
        (r.rtype, body, r.head.to_string())
    };
    let mut pairs: Vec<(&Rule, &Rule)> = Vec::new();
    let mut unmatched: Vec<&Rule> = b.rules().iter().collect();
    for rule in a.rules() {
        let sig = signature(rule);
        match unmatched.iter().position(|c| signature(c) == sig) {
            Some(i) => pairs.push((rule, unmatched.remove(i))),
            None => return false,
        }
    }
    let map: std::collections::BTreeMap<&str, &str> = pairs
        .iter()
        .map(|(x, y)| (x.label.as_str(), y.label.as_str()))
        .collect();
    if map.len() != pairs.len() {
        return false;
    }
    let mapped: std::collections::BTreeSet<(String, String)> = a
        .superiority
        .iter()
        .filter_map(|(w, l)| {
            Some((map.get(w.as_str())?.to_string(), map.get(l.as_str())?.to_string()))
        })
        .collect();
    let expected: std::collections::BTreeSet<(String, String)> = b
        .superiority
        .iter()
        .map(|(w, l)| (w.as_str().to_string(), l.as_str().to_string()))
        .collect();
    mapped.len() == a.superiority.len() && mapped == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrml::parse_document;
    use crate::render::parse_dfl;
    use crate::transform::{transform, TransformOptions};

    fn round_trip_options() -> TransformOptions {
        // Chain expansion is part of compilation, not of rendering; keep the
        // comparison on the rendered structure itself.
        TransformOptions { jurisdiction: None, apply_reduct: false, apply_verify_rules: false }
    }

    #[test]
    fn empty_theory_renders_an_empty_statements_element() {
        let xml = render_lrml(&Theory::empty());
        assert!(xml.contains("<lrml:Statements>"));
        let doc = parse_document(&xml).unwrap();
        assert!(doc.statements.is_empty());
    }

    #[test]
    fn simple_rule_round_trips() {
        let t = parse_dfl("r1: specialOrder(X) => [OBL:NULL:NULL]surcharge(X)\n").unwrap();
        let xml = render_lrml(&t);
        assert!(xml.contains("PrescriptiveStatement"));
        let back = transform(&parse_document(&xml).unwrap(), &round_trip_options()).unwrap();
        assert!(equivalent_modulo_labels(&t, &back.theory), "{xml}");
    }

    #[test]
    fn chain_renders_as_penalty_and_reparation() {
        let t = parse_dfl(
            "ps1: goods(X),invoice(X) => [OBL:NULL:NULL]payIn7days(X) (x) \
             [OBL:NULL:NULL]payWith5%Interest(X) (x) [OBL:NULL:NULL]payWith6.5%Interest(X)\n",
        )
        .unwrap();
        let xml = render_lrml(&t);
        let doc = parse_document(&xml).unwrap();
        assert_eq!(doc.statements.len(), 3);
        let suborder = doc
            .statements
            .iter()
            .find_map(|s| match &s.body {
                StatementBody::Penalty { suborder } => Some(suborder),
                _ => None,
            })
            .unwrap();
        assert_eq!(suborder.len(), 2);
        let back = transform(&doc, &round_trip_options()).unwrap();
        assert!(equivalent_modulo_labels(&t, &back.theory), "{xml}");
    }

    #[test]
    fn facts_defeaters_and_superiority_round_trip() {
        let t = parse_dfl(
            ">> premiumCustomer(JohnDoe)\n\
             c1: a(X) -> b(X)\n\
             d1: c(X) ~> [PRO:NULL:NULL]e(X)\n\
             r1: b(X) => [OBL:NULL:NULL]-e(X)\n\
             r1 > d1\n",
        )
        .unwrap();
        let back =
            transform(&parse_document(&render_lrml(&t)).unwrap(), &round_trip_options()).unwrap();
        assert!(equivalent_modulo_labels(&t, &back.theory));
    }

    #[test]
    fn generated_labels_are_escaped_in_keys() {
        let t = parse_dfl("ps1!1: a => b\n").unwrap();
        let xml = render_lrml(&t);
        assert!(xml.contains("key=\"ps1_x21_1\""));
        assert!(!xml.contains("key=\"ps1!1\""));
    }

    #[test]
    fn rendering_is_deterministic() {
        let t = parse_dfl(">> p\nr2: a => b\nr1: c => -b\nr1 > r2\n").unwrap();
        assert_eq!(render_lrml(&t), render_lrml(&t));
    }
}
