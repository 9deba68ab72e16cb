//! The full document-to-theory pipeline.

use std::collections::BTreeMap;

use crate::dl::{Label, ModalLiteral, Theory};
use crate::lrml::{apply_associations, resolve_keyrefs, LrmlDocument, StatementBody};
use crate::transform::error::TransformError;
use crate::transform::jurisdiction::filter_jurisdiction;
use crate::transform::penalty::attach_penalties;
use crate::transform::reduct::reduct_rules;
use crate::transform::statement::{factual_to_fact, statement_to_rules};
use crate::transform::verify::{verify_body, verify_rule_generation};
use crate::transform::work::WorkRule;

#[derive(Debug, Clone)]
pub struct TransformOptions {
    /// Restrict the document to one jurisdiction before compiling.
    pub jurisdiction: Option<String>,
    /// Expand reparation chains into singleton-head rules.
    pub apply_reduct: bool,
    /// Compile conditional elements into verification rules.
    pub apply_verify_rules: bool,
}

impl Default for TransformOptions {
    fn default() -> TransformOptions {
        TransformOptions { jurisdiction: None, apply_reduct: true, apply_verify_rules: true }
    }
}

#[derive(Debug, Clone)]
pub struct TransformOutput {
    pub theory: Theory,
    pub warnings: Vec<String>,
}

/// Compiles a parsed document into a validated theory.
///
/// Pipeline: resolve key references, apply associations, optionally filter
/// by jurisdiction, map statements to rules/facts/superiority, attach
/// penalties, expand chains, generate verification rules, validate.
pub fn transform(
    doc: &LrmlDocument,
    options: &TransformOptions,
) -> Result<TransformOutput, TransformError> {
    let resolved = resolve_keyrefs(doc)?;
    let annotated = apply_associations(&resolved);
    let filtered = match &options.jurisdiction {
        Some(j) => filter_jurisdiction(&annotated, j)?,
        None => annotated,
    };
    let mut warnings = filtered.warnings.clone();

    let mut facts: Vec<ModalLiteral> = Vec::new();
    let mut rules: Vec<WorkRule> = Vec::new();
    let mut stmt_labels: BTreeMap<String, Vec<Label>> = BTreeMap::new();
    let mut overrides: Vec<(String, String)> = Vec::new();

    for stmt in &filtered.statements {
        match &stmt.body {
            StatementBody::Constitutive(_) | StatementBody::Prescriptive(_) => {
                let generated = statement_to_rules(stmt)?;
                if let Some(key) = &stmt.key {
                    stmt_labels
                        .insert(key.clone(), generated.iter().map(|r| r.label.clone()).collect());
                }
                rules.extend(generated);
            }
            StatementBody::Factual { .. } => facts.push(factual_to_fact(stmt)?),
            StatementBody::Override { over, under } => {
                overrides.push((over.clone(), under.clone()))
            }
            // Consumed by attach_penalties below.
            StatementBody::Penalty { .. } | StatementBody::Reparation(_) => {}
        }
    }

    // Override statements expand pairwise over the labels of split statements.
    let mut superiority: Vec<(Label, Label)> = Vec::new();
    for (over, under) in overrides {
        let winners = norm_labels(&filtered, &stmt_labels, &over)?;
        let losers = norm_labels(&filtered, &stmt_labels, &under)?;
        for w in &winners {
            for l in &losers {
                superiority.push((w.clone(), l.clone()));
            }
        }
    }

    attach_penalties(&mut rules, &filtered, &stmt_labels)?;

    if options.apply_reduct {
        let (r, s) = reduct_rules(rules, superiority)?;
        rules = r;
        superiority = s;
    }
    if options.apply_verify_rules {
        rules = verify_rule_generation(rules, &mut warnings)?;
        let (r, s) = verify_body(rules, superiority, &stmt_labels, &facts)?;
        rules = r;
        superiority = s;
    }

    let mut dropped = Vec::new();
    let lowered: Vec<_> = rules.iter().map(|r| r.lower(&mut dropped)).collect();
    warnings.extend(dropped);

    let theory = Theory::new(facts, lowered, superiority);
    let report = theory.validate();
    if !report.is_ok() {
        return Err(TransformError::InvalidTheory { report });
    }
    Ok(TransformOutput { theory, warnings })
}

fn norm_labels(
    doc: &LrmlDocument,
    stmt_labels: &BTreeMap<String, Vec<Label>>,
    key: &str,
) -> Result<Vec<Label>, TransformError> {
    match stmt_labels.get(key) {
        Some(labels) => Ok(labels.clone()),
        None => match doc.statement_by_key(key) {
            Some(stmt) => Err(TransformError::BadTarget {
                key: key.to_string(),
                message: format!(
                    "override must reference a norm statement, found {} (facts have no rule label)",
                    stmt.kind_name()
                ),
            }),
            None => Err(TransformError::DanglingReference { key: key.to_string() }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrml::parse_document;
    use crate::render::render_dfl;

    #[test]
    fn empty_document_gives_the_empty_theory() {
        let doc = parse_document("<lrml:LegalRuleML/>").unwrap();
        let out = transform(&doc, &TransformOptions::default()).unwrap();
        assert_eq!(out.theory, Theory::empty());
    }

    #[test]
    fn override_statement_becomes_superiority() {
        // Surcharge example: two prescriptive statements and an override.
        let xml = r##"<lrml:LegalRuleML><lrml:Statements>
          <lrml:PrescriptiveStatement key="r1">
            <ruleml:Rule key=":t1">
              <ruleml:if><ruleml:Atom><ruleml:Rel iri=":specialOrder"/><ruleml:Var>X</ruleml:Var></ruleml:Atom></ruleml:if>
              <ruleml:then><lrml:Obligation><ruleml:Atom><ruleml:Rel iri=":surcharge"/><ruleml:Var>X</ruleml:Var></ruleml:Atom></lrml:Obligation></ruleml:then>
            </ruleml:Rule>
          </lrml:PrescriptiveStatement>
          <lrml:PrescriptiveStatement key="r2">
            <ruleml:Rule key=":t2">
              <ruleml:if><ruleml:And>
                <ruleml:Atom><ruleml:Rel iri=":specialOrder"/><ruleml:Var>X</ruleml:Var></ruleml:Atom>
                <ruleml:Atom><ruleml:Rel iri=":premiumCustomer"/><ruleml:Var>Y</ruleml:Var></ruleml:Atom>
              </ruleml:And></ruleml:if>
              <ruleml:then><lrml:Obligation><ruleml:Neg><ruleml:Atom><ruleml:Rel iri=":surcharge"/><ruleml:Var>X</ruleml:Var></ruleml:Atom></ruleml:Neg></lrml:Obligation></ruleml:then>
            </ruleml:Rule>
          </lrml:PrescriptiveStatement>
          <lrml:OverrideStatement>
            <lrml:Override over="#r2" under="#r1"/>
          </lrml:OverrideStatement>
        </lrml:Statements></lrml:LegalRuleML>"##;
        let out = transform(&parse_document(xml).unwrap(), &TransformOptions::default()).unwrap();
        assert_eq!(
            render_dfl(&out.theory),
            "r1: specialOrder(X) => [OBL:NULL:NULL]surcharge(X)\n\
             r2: specialOrder(X),premiumCustomer(Y) => [OBL:NULL:NULL]-surcharge(X)\n\
             r2 > r1\n"
        );
    }

    #[test]
    fn override_on_a_factual_statement_is_a_type_error() {
        let xml = r##"<lrml:LegalRuleML><lrml:Statements>
          <lrml:FactualStatement key="f1">
            <lrml:hasTemplate><ruleml:Atom><ruleml:Rel iri="p"/></ruleml:Atom></lrml:hasTemplate>
          </lrml:FactualStatement>
          <lrml:PrescriptiveStatement key="r1">
            <ruleml:Rule key=":t1">
              <ruleml:then><lrml:Obligation><ruleml:Atom><ruleml:Rel iri="q"/></ruleml:Atom></lrml:Obligation></ruleml:then>
            </ruleml:Rule>
          </lrml:PrescriptiveStatement>
          <lrml:OverrideStatement>
            <lrml:Override over="#f1" under="#r1"/>
          </lrml:OverrideStatement>
        </lrml:Statements></lrml:LegalRuleML>"##;
        assert!(matches!(
            transform(&parse_document(xml).unwrap(), &TransformOptions::default()),
            Err(TransformError::BadTarget { .. })
        ));
    }
}
