use std::collections::BTreeSet;

use crate::dl::{Atom, Modality, ModalityTag, ModalLiteral};

/// Typed model of a LegalRuleML document: statements in document order plus
/// the context (associations, jurisdictions) they are interpreted under.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LrmlDocument {
    pub statements: Vec<Statement>,
    pub associations: Vec<Association>,
    pub jurisdictions: Vec<Jurisdiction>,
    /// Non-fatal findings collected while parsing or resolving.
    pub warnings: Vec<String>,
}

impl LrmlDocument {
    pub fn statement_by_key(&self, key: &str) -> Option<&Statement> {
        self.statements.iter().find(|s| s.key.as_deref() == Some(key))
    }
}

/// One statement, with the annotations later applied from associations.
#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub key: Option<String>,
    pub body: StatementBody,
    /// Rule strength applied through an association, overriding `hasStrength`.
    pub applied_strength: Option<RuleStrength>,
    /// Jurisdiction keys this statement is associated with.
    pub applied_jurisdictions: BTreeSet<String>,
    /// Source references carried as provenance, not interpreted.
    pub applied_sources: Vec<String>,
}

impl Statement {
    pub fn new(key: Option<String>, body: StatementBody) -> Statement {
        Statement {
            key,
            body,
            applied_strength: None,
            applied_jurisdictions: BTreeSet::new(),
            applied_sources: Vec::new(),
        }
    }

    pub fn is_norm(&self) -> bool {
        matches!(self.body, StatementBody::Constitutive(_) | StatementBody::Prescriptive(_))
    }

    pub fn template(&self) -> Option<&RuleTemplate> {
        match &self.body {
            StatementBody::Constitutive(t) | StatementBody::Prescriptive(t) => Some(t),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.body {
            StatementBody::Constitutive(_) => "ConstitutiveStatement",
            StatementBody::Prescriptive(_) => "PrescriptiveStatement",
            StatementBody::Factual { .. } => "FactualStatement",
            StatementBody::Override { .. } => "OverrideStatement",
            StatementBody::Penalty { .. } => "PenaltyStatement",
            StatementBody::Reparation(_) => "ReparationStatement",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementBody {
    Constitutive(RuleTemplate),
    Prescriptive(RuleTemplate),
    Factual { template: ConditionNode },
    Override { over: String, under: String },
    Penalty { suborder: Vec<ConditionNode> },
    Reparation(Reparation),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reparation {
    pub key: Option<String>,
    /// Key of the penalty statement to apply.
    pub penalty: String,
    /// Key of the prescriptive statement being sanctioned.
    pub target: String,
}

/// The `ruleml:Rule` element of a norm statement.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleTemplate {
    pub key: Option<String>,
    /// Reference to another rule template whose body this rule reuses.
    pub keyref: Option<String>,
    /// `closure="universal"`: the rule holds in every jurisdiction.
    pub universal: bool,
    /// Strength from a `hasStrength` child.
    pub strength: Option<RuleStrength>,
    pub body: Option<ConditionNode>,
    pub head: Option<ConditionNode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleStrength {
    Strict,
    Defeasible,
    Defeater,
}

impl RuleStrength {
    pub fn from_iri(iri: &str) -> Option<RuleStrength> {
        let tail = iri.rsplit(['#', ':', '/']).next().unwrap_or(iri);
        // Strength iris in the wild carry numeric suffixes (`#defeasible1`).
        let tail = tail.trim_end_matches(|c: char| c.is_ascii_digit());
        match tail {
            "strict" => Some(RuleStrength::Strict),
            "defeasible" => Some(RuleStrength::Defeasible),
            "defeater" => Some(RuleStrength::Defeater),
            _ => None,
        }
    }
}

/// A formula tree inside `if`, `then`, `hasTemplate` or a penalty suborder
/// list. Negation is folded into the leaves.
#[derive(Debug, Clone, PartialEq)]
pub enum ConditionNode {
    And { key: Option<String>, children: Vec<ConditionNode> },
    Or { key: Option<String>, children: Vec<ConditionNode> },
    SuborderList { key: Option<String>, children: Vec<ConditionNode> },
    Atom { key: Option<String>, negated: bool, atom: Atom },
    Deontic(DeonticNode),
    ConditionalRef(ConditionalRef),
}

/// A deontic element wrapping exactly one atom, with optional bearer and
/// auxiliary-party slots.
#[derive(Debug, Clone, PartialEq)]
pub struct DeonticNode {
    pub key: Option<String>,
    pub tag: ModalityTag,
    pub bearer: Option<String>,
    pub auxiliary: Option<String>,
    pub negated: bool,
    pub atom: Atom,
}

impl DeonticNode {
    /// The modal literal this node denotes, slots folded into the modality.
    pub fn literal(&self) -> ModalLiteral {
        ModalLiteral {
            negated: self.negated,
            modality: Some(Modality::with_slots(
                self.tag,
                self.bearer.clone(),
                self.auxiliary.clone(),
            )),
            atom: self.atom.clone(),
        }
    }
}

/// A `Violation` or `Compliance` conditional element. `target` is filled in
/// by key-reference resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalRef {
    pub kind: CondKind,
    pub keyref: String,
    pub target: Option<CondTarget>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondKind {
    Violation,
    Compliance,
}

impl CondKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CondKind::Violation => "Violation",
            CondKind::Compliance => "Compliance",
        }
    }
}

/// What a conditional element points at: a literal (its sets are spliced
/// into the rule) or a whole rule (handled by verification-rule generation).
#[derive(Debug, Clone, PartialEq)]
pub enum CondTarget {
    Literal(ModalLiteral),
    Rule(String),
}

impl ConditionNode {
    pub fn key(&self) -> Option<&str> {
        match self {
            ConditionNode::And { key, .. }
            | ConditionNode::Or { key, .. }
            | ConditionNode::SuborderList { key, .. }
            | ConditionNode::Atom { key, .. } => key.as_deref(),
            ConditionNode::Deontic(d) => d.key.as_deref(),
            ConditionNode::ConditionalRef(_) => None,
        }
    }

    pub fn children(&self) -> &[ConditionNode] {
        match self {
            ConditionNode::And { children, .. }
            | ConditionNode::Or { children, .. }
            | ConditionNode::SuborderList { children, .. } => children,
            _ => &[],
        }
    }

    pub fn children_mut(&mut self) -> &mut [ConditionNode] {
        match self {
            ConditionNode::And { children, .. }
            | ConditionNode::Or { children, .. }
            | ConditionNode::SuborderList { children, .. } => children,
            _ => &mut [],
        }
    }

    /// The literal a leaf denotes, if this is a leaf.
    pub fn leaf_literal(&self) -> Option<ModalLiteral> {
        match self {
            ConditionNode::Atom { negated, atom, .. } => Some(ModalLiteral {
                negated: *negated,
                modality: None,
                atom: atom.clone(),
            }),
            ConditionNode::Deontic(d) => Some(d.literal()),
            _ => None,
        }
    }

    /// Depth-first walk over this node and all descendants.
    pub fn walk<'a>(&'a self, visit: &mut dyn FnMut(&'a ConditionNode)) {
        visit(self);
        for child in self.children() {
            child.walk(visit);
        }
    }
}

/// Metadata link applying strength, jurisdiction or source information to
/// target elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Association {
    pub key: Option<String>,
    pub applies_modality: Option<String>,
    pub applies_jurisdiction: Option<String>,
    pub applies_source: Option<String>,
    pub targets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jurisdiction {
    pub key: String,
    pub same_as: Option<String>,
}
