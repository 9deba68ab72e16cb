//! Jurisdiction subtheory extraction.

use std::collections::BTreeSet;

use crate::lrml::{LrmlDocument, StatementBody};
use crate::transform::error::TransformError;

/// Restricts a document to one jurisdiction: norm statements annotated with
/// the key stay, as do rules flagged with a universal closure; supporting
/// statements (facts, overrides, penalties, reparations) stay while all of
/// their targets survive. Associations must already be applied.
pub fn filter_jurisdiction(
    doc: &LrmlDocument,
    jurisdiction: &str,
) -> Result<LrmlDocument, TransformError> {
    let known: Vec<String> = doc.jurisdictions.iter().map(|j| j.key.clone()).collect();
    if !known.iter().any(|k| k == jurisdiction) {
        return Err(TransformError::UnknownJurisdiction {
            key: jurisdiction.to_string(),
            known,
        });
    }

    // Pass 1: norm statements by annotation or universal closure; supporting
    // facts unless they are pinned to a different jurisdiction.
    let mut surviving: BTreeSet<String> = BTreeSet::new();
    let mut keep: Vec<bool> = Vec::with_capacity(doc.statements.len());
    for stmt in &doc.statements {
        let matches_jurisdiction = stmt.applied_jurisdictions.contains(jurisdiction);
        let kept = match &stmt.body {
            StatementBody::Constitutive(t) | StatementBody::Prescriptive(t) => {
                matches_jurisdiction || t.universal
            }
            StatementBody::Factual { .. } => {
                stmt.applied_jurisdictions.is_empty() || matches_jurisdiction
            }
            _ => false, // supporting statements are decided in pass 2
        };
        if kept {
            if let Some(k) = &stmt.key {
                surviving.insert(k.clone());
            }
        }
        keep.push(kept);
    }

    // Pass 2: overrides and reparations whose targets all survive, then the
    // penalties still referenced by a surviving reparation.
    let mut used_penalties: BTreeSet<String> = BTreeSet::new();
    for (i, stmt) in doc.statements.iter().enumerate() {
        match &stmt.body {
            StatementBody::Override { over, under } => {
                if surviving.contains(over) && surviving.contains(under) {
                    keep[i] = true;
                }
            }
            StatementBody::Reparation(rep) => {
                if surviving.contains(&rep.target) {
                    keep[i] = true;
                    used_penalties.insert(rep.penalty.clone());
                }
            }
            _ => {}
        }
    }
    for (i, stmt) in doc.statements.iter().enumerate() {
        if let (StatementBody::Penalty { .. }, Some(key)) = (&stmt.body, &stmt.key) {
            keep[i] = used_penalties.contains(key);
        }
    }

    let mut out = doc.clone();
    let mut iter = keep.iter();
    out.statements.retain(|_| *iter.next().unwrap());
    for stmt in &out.statements {
        if let Some(k) = &stmt.key {
            surviving.insert(k.clone());
        }
    }
    // Associations pointing at dropped statements go with them.
    out.associations.retain(|a| {
        a.targets.iter().all(|t| {
            surviving.contains(t) || doc.statement_by_key(t).is_none()
        })
    });
    if !out.statements.iter().any(|s| s.is_norm()) {
        out.warnings.push(format!(
            "jurisdiction '{jurisdiction}' matches no norm statements"
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrml::{apply_associations, parse_document, resolve_keyrefs};

    fn doc() -> LrmlDocument {
        let xml = r##"<lrml:LegalRuleML>
  <lrml:Jurisdictions>
    <lrml:Jurisdiction key="italy" sameAs="http://example.org/jurisdiction#italy"/>
    <lrml:Jurisdiction key="germany" sameAs="http://example.org/jurisdiction#germany"/>
  </lrml:Jurisdictions>
  <lrml:Associations key="asn-1">
    <lrml:Association key="asn-ps3">
      <lrml:appliesModality iri="http://spin.nicta.com.au/spindle/ruleStrength#defeater"/>
      <lrml:appliesJurisdiction keyref="#italy"/>
      <lrml:toTarget keyref="#ps3"/>
    </lrml:Association>
    <lrml:Association key="asn-ps5">
      <lrml:appliesJurisdiction keyref="#germany"/>
      <lrml:toTarget keyref="#ps5"/>
    </lrml:Association>
  </lrml:Associations>
  <lrml:Statements>
    <lrml:PrescriptiveStatement key="ps3">
      <ruleml:Rule key="ruletemplate3a">
        <ruleml:if><ruleml:Atom><ruleml:Rel iri="a"/></ruleml:Atom></ruleml:if>
        <ruleml:then><lrml:Obligation><ruleml:Atom><ruleml:Rel iri="b"/></ruleml:Atom></lrml:Obligation></ruleml:then>
      </ruleml:Rule>
    </lrml:PrescriptiveStatement>
    <lrml:PrescriptiveStatement key="ps4">
      <ruleml:Rule closure="universal" key="ruletemplate4">
        <ruleml:if><ruleml:Atom><ruleml:Rel iri="c"/></ruleml:Atom></ruleml:if>
        <ruleml:then><lrml:Obligation><ruleml:Atom><ruleml:Rel iri="d"/></ruleml:Atom></lrml:Obligation></ruleml:then>
      </ruleml:Rule>
    </lrml:PrescriptiveStatement>
    <lrml:PrescriptiveStatement key="ps5">
      <ruleml:Rule key="ruletemplate5">
        <ruleml:if><ruleml:Atom><ruleml:Rel iri="e"/></ruleml:Atom></ruleml:if>
        <ruleml:then><lrml:Obligation><ruleml:Atom><ruleml:Rel iri="f"/></ruleml:Atom></lrml:Obligation></ruleml:then>
      </ruleml:Rule>
    </lrml:PrescriptiveStatement>
    <lrml:OverrideStatement>
      <lrml:Override over="#ps3" under="#ps5"/>
    </lrml:OverrideStatement>
  </lrml:Statements>
</lrml:LegalRuleML>"##;
        apply_associations(&resolve_keyrefs(&parse_document(xml).unwrap()).unwrap())
    }

    #[test]
    fn keeps_matching_and_universal_statements_only() {
        let filtered = filter_jurisdiction(&doc(), "italy").unwrap();
        let keys: Vec<&str> =
            filtered.statements.iter().filter_map(|s| s.key.as_deref()).collect();
        assert_eq!(keys, vec!["ps3", "ps4"]);
    }

    #[test]
    fn override_is_dropped_when_one_side_is_dropped() {
        let filtered = filter_jurisdiction(&doc(), "italy").unwrap();
        assert!(!filtered
            .statements
            .iter()
            .any(|s| matches!(s.body, StatementBody::Override { .. })));
        // With germany, ps5 survives but ps3 does not, so the override still drops.
        let filtered = filter_jurisdiction(&doc(), "germany").unwrap();
        assert!(!filtered
            .statements
            .iter()
            .any(|s| matches!(s.body, StatementBody::Override { .. })));
    }

    #[test]
    fn unknown_jurisdiction_lists_known_keys() {
        match filter_jurisdiction(&doc(), "france") {
            Err(TransformError::UnknownJurisdiction { key, known }) => {
                assert_eq!(key, "france");
                assert_eq!(known, vec!["italy".to_string(), "germany".to_string()]);
            }
            other => panic!("expected unknown jurisdiction, got {other:?}"),
        }
    }

    #[test]
    fn empty_match_warns() {
        let mut d = doc();
        // Strip the universal closure so germany keeps only ps5, and italy
        // with everything non-matching warns.
        for stmt in &mut d.statements {
            if let StatementBody::Prescriptive(t) | StatementBody::Constitutive(t) = &mut stmt.body
            {
                t.universal = false;
            }
            stmt.applied_jurisdictions.clear();
        }
        let filtered = filter_jurisdiction(&d, "italy").unwrap();
        assert!(filtered.statements.iter().all(|s| !s.is_norm()));
        assert!(filtered.warnings.iter().any(|w| w.contains("matches no norm statements")));
    }
}
