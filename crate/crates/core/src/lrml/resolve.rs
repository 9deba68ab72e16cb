//! Key-reference resolution and association application.

use std::collections::BTreeMap;

use crate::dl::ModalLiteral;
use crate::lrml::error::LrmlError;
use crate::lrml::model::{
    CondTarget, ConditionNode, LrmlDocument, RuleStrength, RuleTemplate, Statement, StatementBody,
};

/// What a document-wide key points at.
#[derive(Debug, Clone)]
pub enum KeyEntry {
    /// Index of a statement in document order.
    Statement(usize),
    /// Rule template owned by the statement at the index.
    RuleTemplate(usize),
    /// A keyed deontic or atom node, reduced to its literal.
    Literal(ModalLiteral),
    /// A keyed element that cannot be a reference target (connectives,
    /// jurisdictions, associations, reparations).
    Other,
}

/// Collects every key in the document. In strict mode a repeated key is an
/// error; otherwise the first occurrence wins.
pub fn collect_keys(doc: &LrmlDocument, strict: bool) -> Result<BTreeMap<String, KeyEntry>, LrmlError> {
    let mut keys: BTreeMap<String, KeyEntry> = BTreeMap::new();
    let mut insert = |key: &Option<String>, entry: KeyEntry| -> Result<(), LrmlError> {
        if let Some(k) = key {
            if keys.contains_key(k) {
                if strict {
                    return Err(LrmlError::DuplicateKey { key: k.clone() });
                }
            } else {
                keys.insert(k.clone(), entry);
            }
        }
        Ok(())
    };

    for (idx, stmt) in doc.statements.iter().enumerate() {
        insert(&stmt.key, KeyEntry::Statement(idx))?;
        if let Some(template) = stmt.template() {
            insert(&template.key, KeyEntry::RuleTemplate(idx))?;
        }
        if let StatementBody::Reparation(rep) = &stmt.body {
            insert(&rep.key, KeyEntry::Other)?;
        }
        let mut node_err = None;
        for_each_condition(stmt, &mut |node| {
            let entry = match node.leaf_literal() {
                Some(lit) => KeyEntry::Literal(lit),
                None => KeyEntry::Other,
            };
            if let Err(e) = insert(&node.key().map(str::to_string), entry) {
                node_err.get_or_insert(e);
            }
        });
        if let Some(e) = node_err {
            return Err(e);
        }
    }
    for assoc in &doc.associations {
        insert(&assoc.key, KeyEntry::Other)?;
    }
    for j in &doc.jurisdictions {
        insert(&Some(j.key.clone()), KeyEntry::Other)?;
    }
    Ok(keys)
}

fn for_each_condition<'a>(stmt: &'a Statement, visit: &mut dyn FnMut(&'a ConditionNode)) {
    match &stmt.body {
        StatementBody::Constitutive(t) | StatementBody::Prescriptive(t) => {
            if let Some(b) = &t.body {
                b.walk(visit);
            }
            if let Some(h) = &t.head {
                h.walk(visit);
            }
        }
        StatementBody::Factual { template } => template.walk(visit),
        StatementBody::Penalty { suborder } => {
            for c in suborder {
                c.walk(visit);
            }
        }
        _ => {}
    }
}

/// Resolves every key reference in the document: rule-template reuse is
/// inlined and each conditional element is annotated with the kind of thing
/// it points at (a literal or a rule). Idempotent.
pub fn resolve_keyrefs(doc: &LrmlDocument) -> Result<LrmlDocument, LrmlError> {
    let keys = collect_keys(doc, true)?;
    let mut out = doc.clone();

    // Template reuse: a rule with a keyref borrows the missing parts of the
    // referenced template.
    let templates: BTreeMap<String, RuleTemplate> = doc
        .statements
        .iter()
        .filter_map(|s| s.template())
        .filter_map(|t| t.key.clone().map(|k| (k, t.clone())))
        .collect();
    for stmt in &mut out.statements {
        let template = match &mut stmt.body {
            StatementBody::Constitutive(t) | StatementBody::Prescriptive(t) => t,
            _ => continue,
        };
        let mut seen: Vec<String> = template.key.iter().cloned().collect();
        let mut cursor = template.keyref.clone();
        while let Some(reference) = cursor {
            if template.body.is_some() && template.head.is_some() {
                break;
            }
            if seen.contains(&reference) {
                return Err(LrmlError::BadReference {
                    key: reference,
                    message: "rule template reference cycle".into(),
                });
            }
            let source = templates
                .get(&reference)
                .ok_or_else(|| LrmlError::DanglingReference { key: reference.clone() })?;
            if template.body.is_none() {
                template.body = source.body.clone();
            }
            if template.head.is_none() {
                template.head = source.head.clone();
            }
            seen.push(reference);
            cursor = source.keyref.clone();
        }
    }

    // Conditional elements: record what each one points at.
    for stmt in &mut out.statements {
        resolve_statement_refs(stmt, &keys, doc)?;
    }
    Ok(out)
}

fn resolve_statement_refs(
    stmt: &mut Statement,
    keys: &BTreeMap<String, KeyEntry>,
    doc: &LrmlDocument,
) -> Result<(), LrmlError> {
    let mut error = None;
    let mut resolve_node = |node: &mut ConditionNode| {
        if let ConditionNode::ConditionalRef(cref) = node {
            match keys.get(&cref.keyref) {
                Some(KeyEntry::Literal(lit)) => {
                    cref.target = Some(CondTarget::Literal(lit.clone()));
                }
                Some(KeyEntry::Statement(idx)) if doc.statements[*idx].is_norm() => {
                    cref.target = Some(CondTarget::Rule(cref.keyref.clone()));
                }
                Some(_) => {
                    error.get_or_insert(LrmlError::BadReference {
                        key: cref.keyref.clone(),
                        message: format!(
                            "{} element must reference a literal or a norm statement",
                            cref.kind.as_str()
                        ),
                    });
                }
                None => {
                    error.get_or_insert(LrmlError::DanglingReference { key: cref.keyref.clone() });
                }
            }
        }
    };

    fn walk_mut(node: &mut ConditionNode, f: &mut dyn FnMut(&mut ConditionNode)) {
        f(node);
        for child in node.children_mut() {
            walk_mut(child, f);
        }
    }

    match &mut stmt.body {
        StatementBody::Constitutive(t) | StatementBody::Prescriptive(t) => {
            if let Some(b) = &mut t.body {
                walk_mut(b, &mut resolve_node);
            }
            if let Some(h) = &mut t.head {
                walk_mut(h, &mut resolve_node);
            }
        }
        StatementBody::Factual { template } => walk_mut(template, &mut resolve_node),
        StatementBody::Penalty { suborder } => {
            for c in suborder {
                walk_mut(c, &mut resolve_node);
            }
        }
        StatementBody::Override { over, under } => {
            for key in [&*over, &*under] {
                if !keys.contains_key(key) {
                    return Err(LrmlError::DanglingReference { key: key.clone() });
                }
            }
        }
        StatementBody::Reparation(rep) => {
            for key in [&rep.penalty, &rep.target] {
                if !keys.contains_key(key) {
                    return Err(LrmlError::DanglingReference { key: key.clone() });
                }
            }
        }
    }
    if let Some(e) = error {
        return Err(e);
    }
    Ok(())
}

/// Applies associations to their target statements: rule strength (last
/// association wins), jurisdiction keys (accumulated) and source references.
/// Associations whose targets are keyed nodes rather than statements carry
/// modality metadata and are left as stored context.
pub fn apply_associations(doc: &LrmlDocument) -> LrmlDocument {
    let mut out = doc.clone();
    let keys = collect_keys(doc, false).unwrap_or_default();

    for assoc in &doc.associations {
        let strength = assoc.applies_modality.as_deref().and_then(RuleStrength::from_iri);
        for target in &assoc.targets {
            let stmt_idx = match keys.get(target) {
                Some(KeyEntry::Statement(idx)) => Some(*idx),
                Some(KeyEntry::RuleTemplate(idx)) => Some(*idx),
                Some(_) => None,
                None => {
                    out.warnings.push(format!(
                        "association{} targets unknown key '{target}'",
                        assoc.key.as_deref().map(|k| format!(" '{k}'")).unwrap_or_default()
                    ));
                    continue;
                }
            };
            let Some(idx) = stmt_idx else { continue };
            let stmt = &mut out.statements[idx];
            match strength {
                Some(s) => stmt.applied_strength = Some(s),
                None => {
                    if assoc.applies_modality.is_some() && stmt.is_norm() {
                        out.warnings.push(format!(
                            "unknown strength iri '{}' on statement '{}'; default kept",
                            assoc.applies_modality.as_deref().unwrap_or(""),
                            stmt.key.as_deref().unwrap_or("")
                        ));
                    }
                }
            }
            if let Some(j) = &assoc.applies_jurisdiction {
                stmt.applied_jurisdictions.insert(j.clone());
            }
            if let Some(s) = &assoc.applies_source {
                stmt.applied_sources.push(s.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrml::parse::parse_document;

    const DOC: &str = r##"<lrml:LegalRuleML>
  <lrml:Jurisdictions>
    <lrml:Jurisdiction key="italy" sameAs="http://example.org/jurisdiction#italy"/>
  </lrml:Jurisdictions>
  <lrml:Associations key="asn-1">
    <lrml:Association key="asn-ps3">
      <lrml:appliesSource keyref="#ex-ref1"/>
      <lrml:appliesModality iri="http://spin.nicta.com.au/spindle/ruleStrength#defeater"/>
      <lrml:appliesJurisdiction keyref="#italy"/>
      <lrml:toTarget keyref="#ps3"/>
    </lrml:Association>
  </lrml:Associations>
  <lrml:Statements>
    <lrml:PrescriptiveStatement key="ps3">
      <ruleml:Rule key="ruletemplate3x">
        <ruleml:if>
          <ruleml:Atom><ruleml:Rel iri="a"/></ruleml:Atom>
        </ruleml:if>
        <ruleml:then>
          <lrml:Obligation key="oblig1">
            <ruleml:Atom><ruleml:Rel iri="b"/></ruleml:Atom>
          </lrml:Obligation>
        </ruleml:then>
      </ruleml:Rule>
    </lrml:PrescriptiveStatement>
    <lrml:PrescriptiveStatement key="ps2">
      <ruleml:Rule key="t2">
        <ruleml:if><lrml:Violation keyref="#oblig1"/></ruleml:if>
        <ruleml:then>
          <lrml:Obligation><ruleml:Atom><ruleml:Rel iri="c"/></ruleml:Atom></lrml:Obligation>
        </ruleml:then>
      </ruleml:Rule>
    </lrml:PrescriptiveStatement>
    <lrml:PrescriptiveStatement key="ps5">
      <ruleml:Rule key="t5">
        <ruleml:if><lrml:Violation keyref="#ps3"/></ruleml:if>
        <ruleml:then>
          <lrml:Obligation><ruleml:Atom><ruleml:Rel iri="d"/></ruleml:Atom></lrml:Obligation>
        </ruleml:then>
      </ruleml:Rule>
    </lrml:PrescriptiveStatement>
  </lrml:Statements>
</lrml:LegalRuleML>"##;

    #[test]
    fn literal_and_rule_targets_are_distinguished() {
        let doc = resolve_keyrefs(&parse_document(DOC).unwrap()).unwrap();
        let find_target = |key: &str| {
            let t = doc.statement_by_key(key).unwrap().template().unwrap();
            let mut target = None;
            t.body.as_ref().unwrap().walk(&mut |n| {
                if let ConditionNode::ConditionalRef(c) = n {
                    target = c.target.clone();
                }
            });
            target.unwrap()
        };
        match find_target("ps2") {
            CondTarget::Literal(lit) => assert_eq!(lit.to_string(), "[OBL:NULL:NULL]b"),
            other => panic!("expected literal target, got {other:?}"),
        }
        match find_target("ps5") {
            CondTarget::Rule(key) => assert_eq!(key, "ps3"),
            other => panic!("expected rule target, got {other:?}"),
        }
    }

    #[test]
    fn resolution_is_idempotent() {
        let doc = parse_document(DOC).unwrap();
        let once = resolve_keyrefs(&doc).unwrap();
        let twice = resolve_keyrefs(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn dangling_reference_is_named() {
        let xml = DOC.replace("#oblig1", "#nowhere");
        match resolve_keyrefs(&parse_document(&xml).unwrap()) {
            Err(LrmlError::DanglingReference { key }) => assert_eq!(key, "nowhere"),
            other => panic!("expected dangling reference, got {other:?}"),
        }
    }

    #[test]
    fn associations_apply_strength_and_jurisdiction() {
        let doc = apply_associations(&resolve_keyrefs(&parse_document(DOC).unwrap()).unwrap());
        let ps3 = doc.statement_by_key("ps3").unwrap();
        assert_eq!(ps3.applied_strength, Some(RuleStrength::Defeater));
        assert!(ps3.applied_jurisdictions.contains("italy"));
        assert_eq!(ps3.applied_sources, vec!["ex-ref1".to_string()]);
    }

    #[test]
    fn later_association_wins_for_strength() {
        let xml = DOC.replace(
            "</lrml:Associations>",
            r##"<lrml:Association key="asn2">
                 <lrml:appliesModality iri="x#defeasible"/>
                 <lrml:toTarget keyref="#ps3"/>
               </lrml:Association></lrml:Associations>"##,
        );
        let doc = apply_associations(&parse_document(&xml).unwrap());
        let ps3 = doc.statement_by_key("ps3").unwrap();
        assert_eq!(ps3.applied_strength, Some(RuleStrength::Defeasible));
    }

    #[test]
    fn association_with_unmatched_target_warns() {
        let xml = DOC.replace("toTarget keyref=\"#ps3\"", "toTarget keyref=\"#missing\"");
        let doc = apply_associations(&parse_document(&xml).unwrap());
        assert!(doc.warnings.iter().any(|w| w.contains("missing")));
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let xml = DOC.replace("key=\"ps2\"", "key=\"ps3\"");
        match resolve_keyrefs(&parse_document(&xml).unwrap()) {
            Err(LrmlError::DuplicateKey { key }) => assert_eq!(key, "ps3"),
            other => panic!("expected duplicate key, got {other:?}"),
        }
    }
}
