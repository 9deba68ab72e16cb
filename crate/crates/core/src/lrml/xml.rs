//! Serializer from the document model back to LegalRuleML XML.

use std::fmt::Write as _;

use crate::dl::{Atom, ModalityTag, Term};
use crate::lrml::model::{
    ConditionNode, DeonticNode, LrmlDocument, RuleStrength, StatementBody,
};

const LRML_NS: &str = "http://docs.oasis-open.org/legalruleml/ns/v1.0/";
const RULEML_NS: &str = "http://ruleml.org/spec";
const STRENGTH_IRI: &str = "http://spin.nicta.com.au/spindle/ruleStrength";

/// Serializes the document model to UTF-8 XML with LF line endings.
pub fn to_xml(doc: &LrmlDocument) -> String {
    let mut w = Writer::new();
    w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    w.open_with(
        "lrml:LegalRuleML",
        &[("xmlns:lrml", LRML_NS), ("xmlns:ruleml", RULEML_NS)],
    );

    if !doc.jurisdictions.is_empty() {
        w.open("lrml:Jurisdictions");
        for j in &doc.jurisdictions {
            let mut attrs = vec![("key", j.key.clone())];
            if let Some(s) = &j.same_as {
                attrs.push(("sameAs", s.clone()));
            }
            w.empty("lrml:Jurisdiction", &attrs);
        }
        w.close("lrml:Jurisdictions");
    }

    if !doc.associations.is_empty() {
        w.open("lrml:Associations");
        for a in &doc.associations {
            w.open_keyed("lrml:Association", &a.key);
            if let Some(s) = &a.applies_source {
                w.empty("lrml:appliesSource", &[("keyref", format!("#{s}"))]);
            }
            if let Some(m) = &a.applies_modality {
                w.empty("lrml:appliesModality", &[("iri", m.clone())]);
            }
            if let Some(j) = &a.applies_jurisdiction {
                w.empty("lrml:appliesJurisdiction", &[("keyref", format!("#{j}"))]);
            }
            for t in &a.targets {
                w.empty("lrml:toTarget", &[("keyref", format!("#{t}"))]);
            }
            w.close("lrml:Association");
        }
        w.close("lrml:Associations");
    }

    w.open("lrml:Statements");
    for stmt in &doc.statements {
        match &stmt.body {
            StatementBody::Constitutive(t) | StatementBody::Prescriptive(t) => {
                w.open_keyed(stmt.kind_name_qualified(), &stmt.key);
                let mut attrs: Vec<(&str, String)> = Vec::new();
                if let Some(k) = &t.key {
                    attrs.push(("key", k.clone()));
                }
                if let Some(r) = &t.keyref {
                    attrs.push(("keyref", r.clone()));
                }
                if t.universal {
                    attrs.push(("closure", "universal".into()));
                }
                w.open_attrs("ruleml:Rule", &attrs);
                if let Some(s) = t.strength {
                    w.open("lrml:hasStrength");
                    w.empty(
                        "lrml:DefeasibleStrength",
                        &[("iri", format!("{STRENGTH_IRI}#{}", strength_name(s)))],
                    );
                    w.close("lrml:hasStrength");
                }
                if let Some(body) = &t.body {
                    w.open("ruleml:if");
                    write_condition(&mut w, body);
                    w.close("ruleml:if");
                }
                if let Some(head) = &t.head {
                    w.open("ruleml:then");
                    write_condition(&mut w, head);
                    w.close("ruleml:then");
                }
                w.close("ruleml:Rule");
                w.close(stmt.kind_name_qualified());
            }
            StatementBody::Factual { template } => {
                w.open_keyed("lrml:FactualStatement", &stmt.key);
                w.open("lrml:hasTemplate");
                write_condition(&mut w, template);
                w.close("lrml:hasTemplate");
                w.close("lrml:FactualStatement");
            }
            StatementBody::Override { over, under } => {
                w.open_keyed("lrml:OverrideStatement", &stmt.key);
                w.empty(
                    "lrml:Override",
                    &[("over", format!("#{over}")), ("under", format!("#{under}"))],
                );
                w.close("lrml:OverrideStatement");
            }
            StatementBody::Penalty { suborder } => {
                w.open_keyed("lrml:PenaltyStatement", &stmt.key);
                w.open("lrml:SuborderList");
                for c in suborder {
                    write_condition(&mut w, c);
                }
                w.close("lrml:SuborderList");
                w.close("lrml:PenaltyStatement");
            }
            StatementBody::Reparation(rep) => {
                w.open_keyed("lrml:ReparationStatement", &stmt.key);
                w.open_keyed("lrml:Reparation", &rep.key);
                w.empty("lrml:appliesPenalty", &[("keyref", format!("#{}", rep.penalty))]);
                w.empty(
                    "lrml:toPrescriptiveStatement",
                    &[("keyref", format!("#{}", rep.target))],
                );
                w.close("lrml:Reparation");
                w.close("lrml:ReparationStatement");
            }
        }
    }
    w.close("lrml:Statements");
    w.close("lrml:LegalRuleML");
    w.finish()
}

impl crate::lrml::model::Statement {
    fn kind_name_qualified(&self) -> &'static str {
        match &self.body {
            StatementBody::Constitutive(_) => "lrml:ConstitutiveStatement",
            StatementBody::Prescriptive(_) => "lrml:PrescriptiveStatement",
            StatementBody::Factual { .. } => "lrml:FactualStatement",
            StatementBody::Override { .. } => "lrml:OverrideStatement",
            StatementBody::Penalty { .. } => "lrml:PenaltyStatement",
            StatementBody::Reparation(_) => "lrml:ReparationStatement",
        }
    }
}

fn strength_name(s: RuleStrength) -> &'static str {
    match s {
        RuleStrength::Strict => "strict",
        RuleStrength::Defeasible => "defeasible",
        RuleStrength::Defeater => "defeater",
    }
}

fn write_condition(w: &mut Writer, node: &ConditionNode) {
    match node {
        ConditionNode::And { key, children } => write_branch(w, "ruleml:And", key, children),
        ConditionNode::Or { key, children } => write_branch(w, "ruleml:Or", key, children),
        ConditionNode::SuborderList { key, children } => {
            write_branch(w, "lrml:SuborderList", key, children)
        }
        ConditionNode::Atom { key, negated, atom } => write_atom(w, key, *negated, atom),
        ConditionNode::Deontic(d) => write_deontic(w, d),
        ConditionNode::ConditionalRef(c) => {
            let name = match c.kind {
                crate::lrml::model::CondKind::Violation => "lrml:Violation",
                crate::lrml::model::CondKind::Compliance => "lrml:Compliance",
            };
            w.empty(name, &[("keyref", format!("#{}", c.keyref))]);
        }
    }
}

fn write_branch(w: &mut Writer, name: &str, key: &Option<String>, children: &[ConditionNode]) {
    w.open_keyed(name, key);
    for c in children {
        write_condition(w, c);
    }
    w.close(name);
}

fn write_atom(w: &mut Writer, key: &Option<String>, negated: bool, atom: &Atom) {
    if negated {
        w.open("ruleml:Neg");
    }
    w.open_keyed("ruleml:Atom", key);
    w.empty("ruleml:Rel", &[("iri", atom.predicate.clone())]);
    for arg in &atom.args {
        match arg {
            Term::Variable(n) => w.text_element("ruleml:Var", n),
            Term::Constant(n) => w.text_element("ruleml:Ind", n),
        }
    }
    w.close("ruleml:Atom");
    if negated {
        w.close("ruleml:Neg");
    }
}

fn write_deontic(w: &mut Writer, d: &DeonticNode) {
    let name = match d.tag {
        ModalityTag::Obligation => "lrml:Obligation",
        ModalityTag::Permission => "lrml:Permission",
        ModalityTag::Prohibition => "lrml:Prohibition",
        ModalityTag::Right => "lrml:Right",
    };
    w.open_keyed(name, &d.key);
    for (role, value) in [("lrml:Bearer", &d.bearer), ("lrml:AuxiliaryParty", &d.auxiliary)] {
        if let Some(v) = value {
            w.open("ruleml:slot");
            w.empty::<&str>(role, &[]);
            if crate::dl::Term::from_ident(v).is_variable() {
                w.text_element("ruleml:Var", v);
            } else {
                w.text_element("ruleml:Ind", v);
            }
            w.close("ruleml:slot");
        }
    }
    if d.negated {
        w.open("ruleml:Neg");
    }
    w.open_keyed("ruleml:Atom", &None);
    w.empty("ruleml:Rel", &[("iri", d.atom.predicate.clone())]);
    for arg in &d.atom.args {
        match arg {
            Term::Variable(n) => w.text_element("ruleml:Var", n),
            Term::Constant(n) => w.text_element("ruleml:Ind", n),
        }
    }
    w.close("ruleml:Atom");
    if d.negated {
        w.close("ruleml:Neg");
    }
    w.close(name);
}

struct Writer {
    out: String,
    depth: usize,
}

impl Writer {
    fn new() -> Writer {
        Writer { out: String::new(), depth: 0 }
    }

    fn raw(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
    }

    fn open(&mut self, name: &str) {
        self.open_attrs::<String>(name, &[]);
    }

    fn open_with(&mut self, name: &str, attrs: &[(&str, &str)]) {
        let owned: Vec<(&str, String)> =
            attrs.iter().map(|(k, v)| (*k, v.to_string())).collect();
        self.open_attrs(name, &owned);
    }

    fn open_keyed(&mut self, name: &str, key: &Option<String>) {
        match key {
            Some(k) => self.open_attrs(name, &[("key", k.clone())]),
            None => self.open(name),
        }
    }

    fn open_attrs<S: AsRef<str>>(&mut self, name: &str, attrs: &[(&str, S)]) {
        self.indent();
        let _ = write!(self.out, "<{name}");
        for (k, v) in attrs {
            let _ = write!(self.out, " {k}=\"{}\"", escape(v.as_ref()));
        }
        self.out.push_str(">\n");
        self.depth += 1;
    }

    fn close(&mut self, name: &str) {
        self.depth -= 1;
        self.indent();
        let _ = writeln!(self.out, "</{name}>");
    }

    fn empty<S: AsRef<str>>(&mut self, name: &str, attrs: &[(&str, S)]) {
        self.indent();
        let _ = write!(self.out, "<{name}");
        for (k, v) in attrs {
            let _ = write!(self.out, " {k}=\"{}\"", escape(v.as_ref()));
        }
        self.out.push_str("/>\n");
    }

    fn text_element(&mut self, name: &str, text: &str) {
        self.indent();
        let _ = writeln!(self.out, "<{name}>{}</{name}>", escape(text));
    }

    fn finish(self) -> String {
        self.out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrml::parse::parse_document;

    #[test]
    fn serializer_output_reparses_to_the_same_model() {
        let xml = r##"<lrml:LegalRuleML>
  <lrml:Jurisdictions>
    <lrml:Jurisdiction key="italy" sameAs="http://example.org/jurisdiction#italy"/>
  </lrml:Jurisdictions>
  <lrml:Associations>
    <lrml:Association key="a1">
      <lrml:appliesModality iri="x#defeater"/>
      <lrml:appliesJurisdiction keyref="#italy"/>
      <lrml:toTarget keyref="#ps1"/>
    </lrml:Association>
  </lrml:Associations>
  <lrml:Statements>
    <lrml:PrescriptiveStatement key="ps1">
      <ruleml:Rule key="t1" closure="universal">
        <lrml:hasStrength>
          <lrml:DefeasibleStrength iri="q#defeasible1"/>
        </lrml:hasStrength>
        <ruleml:if>
          <ruleml:And>
            <lrml:Permission>
              <ruleml:slot><lrml:Bearer/><ruleml:Var>Y</ruleml:Var></ruleml:slot>
              <ruleml:Atom><ruleml:Rel iri="rel1"/><ruleml:Var>X</ruleml:Var></ruleml:Atom>
            </lrml:Permission>
            <lrml:Violation keyref="#ps2"/>
          </ruleml:And>
        </ruleml:if>
        <ruleml:then>
          <lrml:SuborderList>
            <lrml:Prohibition>
              <ruleml:Neg><ruleml:Atom><ruleml:Rel iri="rel3"/><ruleml:Var>X</ruleml:Var></ruleml:Atom></ruleml:Neg>
            </lrml:Prohibition>
            <ruleml:Atom><ruleml:Rel iri="rel4"/><ruleml:Ind>g1</ruleml:Ind></ruleml:Atom>
          </lrml:SuborderList>
        </ruleml:then>
      </ruleml:Rule>
    </lrml:PrescriptiveStatement>
    <lrml:PrescriptiveStatement key="ps2">
      <ruleml:Rule key="t2">
        <ruleml:then>
          <lrml:Obligation key="ob1"><ruleml:Atom><ruleml:Rel iri="rel9"/></ruleml:Atom></lrml:Obligation>
        </ruleml:then>
      </ruleml:Rule>
    </lrml:PrescriptiveStatement>
    <lrml:OverrideStatement>
      <lrml:Override over="#ps1" under="#ps2"/>
    </lrml:OverrideStatement>
    <lrml:PenaltyStatement key="pen1">
      <lrml:SuborderList>
        <lrml:Obligation><ruleml:Atom><ruleml:Rel iri="pay"/><ruleml:Var>X</ruleml:Var></ruleml:Atom></lrml:Obligation>
      </lrml:SuborderList>
    </lrml:PenaltyStatement>
    <lrml:ReparationStatement key="reps1">
      <lrml:Reparation key="rep1">
        <lrml:appliesPenalty keyref="#pen1"/>
        <lrml:toPrescriptiveStatement keyref="#ps1"/>
      </lrml:Reparation>
    </lrml:ReparationStatement>
  </lrml:Statements>
</lrml:LegalRuleML>"##;
        let doc = parse_document(xml).unwrap();
        let rendered = to_xml(&doc);
        let reparsed = parse_document(&rendered).unwrap();
        assert_eq!(doc, reparsed, "serialize/parse must be stable:\n{rendered}");
        // And the serializer itself is a fixed point.
        assert_eq!(rendered, to_xml(&reparsed));
    }
}
