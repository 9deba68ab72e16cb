//! XML parser producing the typed document model.
//!
//! Elements are matched by local name; prefixes left undeclared (common in
//! hand-written documents) are patched with synthetic declarations before the
//! XML parser sees them, so both properly namespaced and prefix-only
//! documents are accepted. Unknown elements are collected as warnings rather
//! than failing the parse.

use roxmltree::{Document, Node};

use crate::dl::{Atom, ModalityTag, Term};
use crate::lrml::error::LrmlError;
use crate::lrml::model::{
    Association, CondKind, ConditionNode, ConditionalRef, DeonticNode, Jurisdiction,
    LrmlDocument, Reparation, RuleStrength, RuleTemplate, Statement, StatementBody,
};

/// Parses a LegalRuleML document from XML text.
pub fn parse_document(xml: &str) -> Result<LrmlDocument, LrmlError> {
    let mut text = xml.to_string();
    let doc = loop {
        match Document::parse(&text) {
            Ok(doc) => break doc,
            Err(roxmltree::Error::UnknownNamespace(ref prefix, _)) if !prefix.is_empty() => {
                text = declare_prefix(&text, prefix).ok_or_else(|| LrmlError::Xml {
                    message: format!("undeclared namespace prefix '{prefix}'"),
                    line: 1,
                    col: 1,
                })?;
            }
            Err(e) => {
                let pos = e.pos();
                return Err(LrmlError::Xml {
                    message: e.to_string(),
                    line: pos.row,
                    col: pos.col,
                });
            }
        }
    };
    build_document(&doc)
}

/// Inserts a synthetic `xmlns:<prefix>` declaration into the root start tag.
fn declare_prefix(text: &str, prefix: &str) -> Option<String> {
    let mut search = 0;
    let root_start = loop {
        let lt = text[search..].find('<')? + search;
        match text.as_bytes().get(lt + 1) {
            Some(b'?') => search = text[lt..].find("?>")? + lt + 2,
            Some(b'!') => {
                if text[lt..].starts_with("<!--") {
                    search = text[lt..].find("-->")? + lt + 3;
                } else {
                    search = text[lt..].find('>')? + lt + 1;
                }
            }
            Some(_) => break lt,
            None => return None,
        }
    };
    let name_end = text[root_start + 1..]
        .find(|c: char| c.is_whitespace() || c == '>' || c == '/')?
        + root_start
        + 1;
    let mut out = String::with_capacity(text.len() + 64);
    out.push_str(&text[..name_end]);
    out.push_str(&format!(" xmlns:{prefix}=\"urn:x-undeclared-prefix:{prefix}\""));
    out.push_str(&text[name_end..]);
    Some(out)
}

struct Builder<'a, 'input> {
    doc: &'a Document<'input>,
    warnings: Vec<String>,
}

/// Where a formula tree appears; suborder lists are valid only in rule heads
/// and penalty statements.
#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Body,
    Head,
    Penalty,
    Factual,
}

fn local<'a>(node: &Node<'a, '_>) -> &'a str {
    node.tag_name().name()
}

fn key_attr(node: &Node) -> Option<String> {
    node.attribute("key").map(str::to_string)
}

fn keyref_attr(node: &Node, name: &str) -> Option<String> {
    node.attribute(name).map(|v| v.trim_start_matches('#').to_string())
}

/// Extracts the local part of an iri-valued attribute (`:surcharge`,
/// `http://…#defeater`).
fn iri_local(value: &str) -> String {
    value.rsplit(['#', '/', ':']).next().unwrap_or(value).to_string()
}

fn elements<'a, 'input>(node: &Node<'a, 'input>) -> impl Iterator<Item = Node<'a, 'input>> {
    node.children().filter(|n| n.is_element())
}

impl<'a, 'input> Builder<'a, 'input> {
    fn structural(&self, node: &Node, message: impl Into<String>) -> LrmlError {
        let pos = self.doc.text_pos_at(node.range().start);
        LrmlError::Structural { message: message.into(), line: pos.row, col: pos.col }
    }

    fn warn_unknown(&mut self, node: &Node, context: &str) {
        let pos = self.doc.text_pos_at(node.range().start);
        self.warnings.push(format!(
            "line {}: unknown element '{}' in {} ignored",
            pos.row,
            local(node),
            context
        ));
    }

    fn build(&mut self) -> Result<LrmlDocument, LrmlError> {
        let root = self.doc.root_element();
        if local(&root) != "LegalRuleML" {
            return Err(self.structural(&root, "document root must be LegalRuleML"));
        }
        let mut out = LrmlDocument::default();
        self.top_level(&root, &mut out)?;
        out.warnings = std::mem::take(&mut self.warnings);
        Ok(out)
    }

    fn top_level(&mut self, node: &Node<'a, 'input>, out: &mut LrmlDocument) -> Result<(), LrmlError> {
        for child in elements(node) {
            match local(&child) {
                "Statements" => {
                    for stmt in elements(&child) {
                        match self.statement(&stmt)? {
                            Some(s) => out.statements.push(s),
                            None => self.warn_unknown(&stmt, "Statements"),
                        }
                    }
                }
                "Associations" => self.associations(&child, out)?,
                "Jurisdictions" => {
                    for j in elements(&child) {
                        if local(&j) == "Jurisdiction" {
                            let key = key_attr(&j).ok_or_else(|| {
                                self.structural(&j, "Jurisdiction requires a key")
                            })?;
                            out.jurisdictions.push(Jurisdiction {
                                key,
                                same_as: j.attribute("sameAs").map(str::to_string),
                            });
                        } else {
                            self.warn_unknown(&j, "Jurisdictions");
                        }
                    }
                }
                // Context wraps associations in fully structured documents.
                "Context" => self.top_level(&child, out)?,
                _ => self.warn_unknown(&child, "LegalRuleML"),
            }
        }
        Ok(())
    }

    fn associations(&mut self, node: &Node<'a, 'input>, out: &mut LrmlDocument) -> Result<(), LrmlError> {
        for child in elements(node) {
            match local(&child) {
                "Association" => {
                    let mut assoc = Association {
                        key: key_attr(&child),
                        applies_modality: None,
                        applies_jurisdiction: None,
                        applies_source: None,
                        targets: Vec::new(),
                    };
                    for part in elements(&child) {
                        match local(&part) {
                            "appliesModality" => {
                                assoc.applies_modality = part.attribute("iri").map(str::to_string)
                            }
                            "appliesJurisdiction" => {
                                assoc.applies_jurisdiction = keyref_attr(&part, "keyref")
                            }
                            "appliesSource" => assoc.applies_source = keyref_attr(&part, "keyref"),
                            "toTarget" | "toTag" => {
                                if let Some(t) = keyref_attr(&part, "keyref") {
                                    assoc.targets.push(t);
                                }
                            }
                            _ => self.warn_unknown(&part, "Association"),
                        }
                    }
                    if assoc.targets.is_empty()
                        && assoc.applies_modality.is_none()
                        && assoc.applies_jurisdiction.is_none()
                        && assoc.applies_source.is_none()
                    {
                        return Err(self.structural(
                            &child,
                            "Association needs at least one applies* element and one target",
                        ));
                    }
                    out.associations.push(assoc);
                }
                // Nested grouping element.
                "Associations" => self.associations(&child, out)?,
                _ => self.warn_unknown(&child, "Associations"),
            }
        }
        Ok(())
    }

    fn statement(&mut self, node: &Node<'a, 'input>) -> Result<Option<Statement>, LrmlError> {
        let key = key_attr(node);
        let body = match local(node) {
            "ConstitutiveStatement" => StatementBody::Constitutive(self.rule_template(node)?),
            "PrescriptiveStatement" => StatementBody::Prescriptive(self.rule_template(node)?),
            "FactualStatement" => {
                if elements(node).any(|c| local(&c) == "Rule") {
                    return Err(
                        self.structural(node, "a factual statement cannot contain a rule")
                    );
                }
                let template = elements(node)
                    .find(|c| local(c) == "hasTemplate")
                    .ok_or_else(|| self.structural(node, "FactualStatement requires hasTemplate"))?;
                let content = self.condition_children(&template, Ctx::Factual)?;
                let template = self.single_condition(&template, content)?;
                StatementBody::Factual { template }
            }
            "OverrideStatement" => {
                let over_el = elements(node)
                    .find(|c| local(c) == "Override")
                    .ok_or_else(|| self.structural(node, "OverrideStatement requires Override"))?;
                let over = keyref_attr(&over_el, "over")
                    .ok_or_else(|| self.structural(&over_el, "Override requires 'over'"))?;
                let under = keyref_attr(&over_el, "under")
                    .ok_or_else(|| self.structural(&over_el, "Override requires 'under'"))?;
                StatementBody::Override { over, under }
            }
            "PenaltyStatement" => {
                let suborder = elements(node)
                    .find(|c| local(c) == "SuborderList")
                    .ok_or_else(|| self.structural(node, "PenaltyStatement requires SuborderList"))?;
                StatementBody::Penalty { suborder: self.condition_children(&suborder, Ctx::Penalty)? }
            }
            "ReparationStatement" => {
                let rep = elements(node)
                    .find(|c| local(c) == "Reparation")
                    .ok_or_else(|| self.structural(node, "ReparationStatement requires Reparation"))?;
                let penalty = elements(&rep)
                    .find(|c| local(c) == "appliesPenalty")
                    .and_then(|c| keyref_attr(&c, "keyref"))
                    .ok_or_else(|| self.structural(&rep, "Reparation requires appliesPenalty"))?;
                let target = elements(&rep)
                    .find(|c| local(c) == "toPrescriptiveStatement")
                    .and_then(|c| keyref_attr(&c, "keyref"))
                    .ok_or_else(|| {
                        self.structural(&rep, "Reparation requires toPrescriptiveStatement")
                    })?;
                StatementBody::Reparation(Reparation { key: key_attr(&rep), penalty, target })
            }
            _ => return Ok(None),
        };
        Ok(Some(Statement::new(key, body)))
    }

    fn rule_template(&mut self, statement: &Node<'a, 'input>) -> Result<RuleTemplate, LrmlError> {
        let rule = elements(statement)
            .find(|c| local(c) == "Rule")
            .ok_or_else(|| self.structural(statement, "norm statement requires a Rule"))?;
        let mut template = RuleTemplate {
            key: key_attr(&rule),
            keyref: keyref_attr(&rule, "keyref"),
            universal: rule.attribute("closure") == Some("universal"),
            strength: None,
            body: None,
            head: None,
        };
        for child in elements(&rule) {
            match local(&child) {
                "hasStrength" => {
                    let strength = elements(&child).next().and_then(|s| {
                        s.attribute("iri").and_then(RuleStrength::from_iri)
                    });
                    match strength {
                        Some(s) => template.strength = Some(s),
                        None => self.warnings.push(format!(
                            "statement '{}': unrecognized hasStrength, default kept",
                            key_attr(statement).unwrap_or_default()
                        )),
                    }
                }
                "if" => {
                    let content = self.condition_children(&child, Ctx::Body)?;
                    template.body = if content.is_empty() {
                        None
                    } else {
                        Some(self.single_condition(&child, content)?)
                    };
                }
                "then" => {
                    let content = self.condition_children(&child, Ctx::Head)?;
                    template.head = if content.is_empty() {
                        None
                    } else {
                        Some(self.single_condition(&child, content)?)
                    };
                }
                _ => self.warn_unknown(&child, "Rule"),
            }
        }
        Ok(template)
    }

    /// Wraps multiple sibling formulas in an implicit conjunction.
    fn single_condition(
        &self,
        _parent: &Node,
        mut nodes: Vec<ConditionNode>,
    ) -> Result<ConditionNode, LrmlError> {
        if nodes.len() == 1 {
            Ok(nodes.remove(0))
        } else {
            Ok(ConditionNode::And { key: None, children: nodes })
        }
    }

    fn condition_children(
        &mut self,
        node: &Node<'a, 'input>,
        ctx: Ctx,
    ) -> Result<Vec<ConditionNode>, LrmlError> {
        let mut out = Vec::new();
        for child in elements(node) {
            match self.condition(&child, ctx)? {
                Some(c) => out.push(c),
                None => self.warn_unknown(&child, "formula"),
            }
        }
        Ok(out)
    }

    fn condition(
        &mut self,
        node: &Node<'a, 'input>,
        ctx: Ctx,
    ) -> Result<Option<ConditionNode>, LrmlError> {
        let name = local(node);
        let cond = match name {
            "And" => ConditionNode::And {
                key: key_attr(node),
                children: self.condition_children(node, ctx)?,
            },
            "Or" => ConditionNode::Or {
                key: key_attr(node),
                children: self.condition_children(node, ctx)?,
            },
            "SuborderList" => {
                if ctx == Ctx::Body {
                    return Err(
                        self.structural(node, "SuborderList is not allowed in a rule body")
                    );
                }
                ConditionNode::SuborderList {
                    key: key_attr(node),
                    children: self.condition_children(node, ctx)?,
                }
            }
            "Atom" => {
                let (negated, atom, key) = (false, self.atom(node)?, key_attr(node));
                ConditionNode::Atom { key, negated, atom }
            }
            "Neg" => {
                let inner = elements(node)
                    .find(|c| local(c) == "Atom")
                    .ok_or_else(|| self.structural(node, "Neg must wrap an Atom"))?;
                ConditionNode::Atom {
                    key: key_attr(node).or_else(|| key_attr(&inner)),
                    negated: true,
                    atom: self.atom(&inner)?,
                }
            }
            "Obligation" | "Permission" | "Prohibition" | "Right" => {
                ConditionNode::Deontic(self.deontic(node)?)
            }
            "Violation" | "Compliance" => {
                let keyref = keyref_attr(node, "keyref")
                    .ok_or_else(|| self.structural(node, format!("{name} requires keyref")))?;
                let kind = if name == "Violation" { CondKind::Violation } else { CondKind::Compliance };
                ConditionNode::ConditionalRef(ConditionalRef { kind, keyref, target: None })
            }
            _ => return Ok(None),
        };
        Ok(Some(cond))
    }

    fn deontic(&mut self, node: &Node<'a, 'input>) -> Result<DeonticNode, LrmlError> {
        let tag = match local(node) {
            "Obligation" => ModalityTag::Obligation,
            "Permission" => ModalityTag::Permission,
            "Prohibition" => ModalityTag::Prohibition,
            "Right" => ModalityTag::Right,
            other => return Err(self.structural(node, format!("not a deontic element: {other}"))),
        };
        let mut bearer = None;
        let mut auxiliary = None;
        let mut literal: Option<(bool, Atom)> = None;
        for child in elements(node) {
            match local(&child) {
                "slot" => {
                    let mut parts = elements(&child);
                    let role = parts
                        .next()
                        .ok_or_else(|| self.structural(&child, "empty slot"))?;
                    let value = parts
                        .next()
                        .map(|v| self.term_text(&v))
                        .transpose()?
                        .ok_or_else(|| self.structural(&child, "slot requires a value"))?;
                    match local(&role) {
                        "Bearer" => bearer = Some(value),
                        "AuxiliaryParty" => auxiliary = Some(value),
                        other => {
                            self.warnings.push(format!("unknown slot role '{other}' ignored"))
                        }
                    }
                }
                "Atom" => {
                    if literal.is_some() {
                        return Err(self.structural(
                            node,
                            "deontic element must wrap exactly one atom",
                        ));
                    }
                    literal = Some((false, self.atom(&child)?));
                }
                "Neg" => {
                    if literal.is_some() {
                        return Err(self.structural(
                            node,
                            "deontic element must wrap exactly one atom",
                        ));
                    }
                    let inner = elements(&child)
                        .find(|c| local(c) == "Atom")
                        .ok_or_else(|| self.structural(&child, "Neg must wrap an Atom"))?;
                    literal = Some((true, self.atom(&inner)?));
                }
                _ => self.warn_unknown(&child, "deontic element"),
            }
        }
        let (negated, atom) = literal
            .ok_or_else(|| self.structural(node, "deontic element must wrap exactly one atom"))?;
        Ok(DeonticNode { key: key_attr(node), tag, bearer, auxiliary, negated, atom })
    }

    fn atom(&mut self, node: &Node<'a, 'input>) -> Result<Atom, LrmlError> {
        let mut predicate = None;
        let mut args = Vec::new();
        for child in elements(node) {
            match local(&child) {
                "Rel" => {
                    let name = child
                        .attribute("iri")
                        .map(|v| iri_local(v))
                        .or_else(|| child.text().map(|t| t.trim().to_string()))
                        .filter(|s| !s.is_empty())
                        .ok_or_else(|| self.structural(&child, "Rel requires a name"))?;
                    predicate = Some(name);
                }
                "Var" => {
                    let name = child.text().map(str::trim).unwrap_or_default();
                    if name.is_empty() {
                        return Err(self.structural(&child, "Var requires a name"));
                    }
                    args.push(Term::Variable(name.to_string()));
                }
                "Ind" => {
                    let name = child
                        .attribute("iri")
                        .map(|v| iri_local(v))
                        .or_else(|| child.text().map(|t| t.trim().to_string()))
                        .filter(|s| !s.is_empty())
                        .ok_or_else(|| self.structural(&child, "Ind requires a name"))?;
                    args.push(Term::Constant(name));
                }
                _ => self.warn_unknown(&child, "Atom"),
            }
        }
        let predicate =
            predicate.ok_or_else(|| self.structural(node, "Atom requires a Rel"))?;
        Ok(Atom::new(predicate, args))
    }

    fn term_text(&self, node: &Node) -> Result<String, LrmlError> {
        let text = node
            .attribute("iri")
            .map(|v| iri_local(v))
            .or_else(|| node.text().map(|t| t.trim().to_string()))
            .unwrap_or_default();
        if text.is_empty() {
            return Err(self.structural(node, "slot value must not be empty"));
        }
        Ok(text)
    }
}

fn build_document(doc: &Document) -> Result<LrmlDocument, LrmlError> {
    Builder { doc, warnings: Vec::new() }.build()
}
