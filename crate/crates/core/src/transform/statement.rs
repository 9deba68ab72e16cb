//! Mapping of individual statements onto rules and facts.

use crate::dl::{ModalLiteral, RuleType};
use crate::lrml::{ConditionNode, DeonticNode, RuleStrength, Statement, StatementBody};
use crate::transform::body::flatten_body;
use crate::transform::error::TransformError;
use crate::transform::head::split_head;
use crate::transform::subrule::subrule_labels;
use crate::transform::work::WorkRule;

/// Folds a deontic element into a modal literal: the tag from the element
/// kind, bearer and auxiliary party from its slots (`NULL` when absent), and
/// negation from an inner `Neg`.
pub fn map_modality(node: &DeonticNode) -> ModalLiteral {
    node.literal()
}

/// The base name the statement's rules are labeled with: a non-local rule
/// keyref wins over a non-local rule key, which wins over the statement key.
/// Keys opening with `:` are local identifiers and do not name rules.
pub fn label_base(stmt: &Statement) -> Result<String, TransformError> {
    let template = stmt.template();
    let non_local = |k: &Option<String>| {
        k.as_deref().filter(|k| !k.starts_with(':') && !k.is_empty()).map(str::to_string)
    };
    if let Some(t) = template {
        if let Some(base) = non_local(&t.keyref).or_else(|| non_local(&t.key)) {
            return Ok(base);
        }
    }
    non_local(&stmt.key).ok_or_else(|| {
        TransformError::structural(
            stmt.key.as_deref().unwrap_or("<unkeyed>"),
            "norm statement has no usable key to label its rules",
        )
    })
}

fn strength_rtype(s: RuleStrength) -> RuleType {
    match s {
        RuleStrength::Strict => RuleType::Strict,
        RuleStrength::Defeasible => RuleType::Defeasible,
        RuleStrength::Defeater => RuleType::Defeater,
    }
}

/// Compiles a constitutive or prescriptive statement into work rules:
/// constitutive statements default to strict rules, prescriptive ones to
/// defeasible rules, overridden by `hasStrength` and then by association
/// annotations. The body flattens to disjunctive normal form and the head
/// splits into chains; sub-rule labels follow the split naming convention.
pub fn statement_to_rules(stmt: &Statement) -> Result<Vec<WorkRule>, TransformError> {
    let (template, default_type, constitutive) = match &stmt.body {
        StatementBody::Constitutive(t) => (t, RuleType::Strict, true),
        StatementBody::Prescriptive(t) => (t, RuleType::Defeasible, false),
        other => {
            return Err(TransformError::structural(
                stmt.key.as_deref().unwrap_or("<unkeyed>"),
                format!("not a norm statement: {:?}", std::mem::discriminant(other)),
            ))
        }
    };
    let base = label_base(stmt)?;
    if base.contains('!') {
        return Err(TransformError::ReservedLabel { label: base });
    }

    if constitutive {
        if let Some(head) = &template.head {
            let mut deontic = false;
            head.walk(&mut |n| deontic |= matches!(n, ConditionNode::Deontic(_)));
            if deontic {
                return Err(TransformError::DeonticHeadOnConstitutive { statement: base });
            }
        }
    }

    let rtype = stmt
        .applied_strength
        .or(template.strength)
        .map(strength_rtype)
        .unwrap_or(default_type);

    let branches = flatten_body(template.body.as_ref(), &base)?;
    let chains = split_head(template.head.as_ref(), &base)?;
    let labels = subrule_labels(&base, branches.len(), chains.len())?;

    let mut out = Vec::with_capacity(labels.len());
    let mut names = labels.iter();
    for branch in &branches {
        for chain in &chains {
            let name = names.next().expect("label count matches split count");
            out.push(WorkRule {
                label: name.render().into(),
                rtype,
                body: branch.literals.clone(),
                pending: branch.pending.clone(),
                head: chain.clone(),
            });
        }
    }
    Ok(out)
}

/// The fact a factual statement expresses: the literal under its template,
/// modality mapped when a deontic wrapper is present.
pub fn factual_to_fact(stmt: &Statement) -> Result<ModalLiteral, TransformError> {
    let template = match &stmt.body {
        StatementBody::Factual { template } => template,
        _ => {
            return Err(TransformError::structural(
                stmt.key.as_deref().unwrap_or("<unkeyed>"),
                "not a factual statement",
            ))
        }
    };
    template.leaf_literal().ok_or_else(|| {
        TransformError::structural(
            stmt.key.as_deref().unwrap_or("<unkeyed>"),
            "factual statement must hold a single (possibly deontic) literal",
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrml::{parse_document, resolve_keyrefs};

    fn norm_rules(xml: &str) -> Vec<WorkRule> {
        let doc = resolve_keyrefs(&parse_document(xml).unwrap()).unwrap();
        let stmt = doc.statements.iter().find(|s| s.is_norm()).unwrap();
        statement_to_rules(stmt).unwrap()
    }

    #[test]
    fn prescriptive_statement_becomes_a_defeasible_rule() {
        // Shape of the surcharge listing: defeasible strength, one premise,
        // one obligation head.
        let rules = norm_rules(
            r#"<lrml:LegalRuleML><lrml:Statements>
            <lrml:PrescriptiveStatement key="r1">
              <ruleml:Rule key=":ruletemplate1">
                <lrml:hasStrength>
                  <lrml:DefeasibleStrength key="str1" iri="http://example.org/legalruleml/ontology#defeasible1"/>
                </lrml:hasStrength>
                <ruleml:if>
                  <ruleml:And>
                    <ruleml:Atom key=":atom2"><ruleml:Rel iri=":specialOrder"/><ruleml:Var>X</ruleml:Var></ruleml:Atom>
                  </ruleml:And>
                </ruleml:if>
                <ruleml:then>
                  <lrml:Obligation>
                    <ruleml:Atom key=":atom3"><ruleml:Rel iri=":surcharge"/><ruleml:Var>X</ruleml:Var></ruleml:Atom>
                  </lrml:Obligation>
                </ruleml:then>
              </ruleml:Rule>
            </lrml:PrescriptiveStatement>
            </lrml:Statements></lrml:LegalRuleML>"#,
        );
        assert_eq!(rules.len(), 1);
        let mut dropped = Vec::new();
        assert_eq!(
            rules[0].lower(&mut dropped).to_string(),
            "r1: specialOrder(X) => [OBL:NULL:NULL]surcharge(X)"
        );
        assert!(dropped.is_empty());
    }

    #[test]
    fn constitutive_statement_becomes_a_strict_rule() {
        let rules = norm_rules(
            r#"<lrml:LegalRuleML><lrml:Statements>
            <lrml:ConstitutiveStatement key="c1">
              <ruleml:Rule key=":t">
                <ruleml:if><ruleml:Atom><ruleml:Rel iri="premiumCustomer"/><ruleml:Var>X</ruleml:Var></ruleml:Atom></ruleml:if>
                <ruleml:then><ruleml:Atom><ruleml:Rel iri="discountEligible"/><ruleml:Var>X</ruleml:Var></ruleml:Atom></ruleml:then>
              </ruleml:Rule>
            </lrml:ConstitutiveStatement>
            </lrml:Statements></lrml:LegalRuleML>"#,
        );
        assert_eq!(rules[0].rtype, RuleType::Strict);
        let mut dropped = Vec::new();
        assert_eq!(
            rules[0].lower(&mut dropped).to_string(),
            "c1: premiumCustomer(X) -> discountEligible(X)"
        );
    }

    #[test]
    fn deontic_head_on_constitutive_is_rejected() {
        let doc = resolve_keyrefs(
            &parse_document(
                r#"<lrml:LegalRuleML><lrml:Statements>
            <lrml:ConstitutiveStatement key="c1">
              <ruleml:Rule key=":t">
                <ruleml:then><lrml:Obligation><ruleml:Atom><ruleml:Rel iri="p"/></ruleml:Atom></lrml:Obligation></ruleml:then>
              </ruleml:Rule>
            </lrml:ConstitutiveStatement>
            </lrml:Statements></lrml:LegalRuleML>"#,
            )
            .unwrap(),
        )
        .unwrap();
        assert!(matches!(
            statement_to_rules(&doc.statements[0]),
            Err(TransformError::DeonticHeadOnConstitutive { .. })
        ));
    }

    #[test]
    fn local_rule_keys_fall_back_to_the_statement_key() {
        let doc = parse_document(
            r#"<lrml:LegalRuleML><lrml:Statements>
            <lrml:PrescriptiveStatement key="ps2">
              <ruleml:Rule key="ruletemplate3">
                <ruleml:then><lrml:Obligation><ruleml:Atom><ruleml:Rel iri="p"/></ruleml:Atom></lrml:Obligation></ruleml:then>
              </ruleml:Rule>
            </lrml:PrescriptiveStatement>
            <lrml:PrescriptiveStatement key="ps4">
              <ruleml:Rule key=":ruletemplate3">
                <ruleml:then><lrml:Obligation><ruleml:Atom><ruleml:Rel iri="p"/></ruleml:Atom></lrml:Obligation></ruleml:then>
              </ruleml:Rule>
            </lrml:PrescriptiveStatement>
            </lrml:Statements></lrml:LegalRuleML>"#,
        )
        .unwrap();
        assert_eq!(label_base(&doc.statements[0]).unwrap(), "ruletemplate3");
        assert_eq!(label_base(&doc.statements[1]).unwrap(), "ps4");
    }

    #[test]
    fn factual_statement_yields_its_literal() {
        let doc = parse_document(
            r#"<lrml:LegalRuleML><lrml:Statements>
            <lrml:FactualStatement key="fact1">
              <lrml:hasTemplate>
                <ruleml:Atom key=":atom11"><ruleml:Rel iri=":premiumCustomer"/><ruleml:Ind iri=":JohnDoe"/></ruleml:Atom>
              </lrml:hasTemplate>
            </lrml:FactualStatement>
            <lrml:FactualStatement key="fact2">
              <lrml:hasTemplate>
                <lrml:Obligation><ruleml:Atom><ruleml:Rel iri="pay"/><ruleml:Ind>purchaser</ruleml:Ind></ruleml:Atom></lrml:Obligation>
              </lrml:hasTemplate>
            </lrml:FactualStatement>
            <lrml:FactualStatement key="fact3">
              <lrml:hasTemplate>
                <ruleml:Neg><ruleml:Atom><ruleml:Rel iri="promotion"/><ruleml:Ind>g1</ruleml:Ind></ruleml:Atom></ruleml:Neg>
              </lrml:hasTemplate>
            </lrml:FactualStatement>
            </lrml:Statements></lrml:LegalRuleML>"#,
        )
        .unwrap();
        let facts: Vec<String> = doc
            .statements
            .iter()
            .map(|s| factual_to_fact(s).unwrap().to_string())
            .collect();
        assert_eq!(
            facts,
            vec!["premiumCustomer(JohnDoe)", "[OBL:NULL:NULL]pay(purchaser)", "-promotion(g1)"]
        );
    }
}
