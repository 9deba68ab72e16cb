use std::fmt;

use super::chain::OmegaChain;
use super::literal::ModalLiteral;

/// Unique identifier of a rule within a theory.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub String);

impl Label {
    pub fn new(s: impl Into<String>) -> Label {
        Label(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Label {
        Label(s.to_string())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Label {
        Label(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleType {
    Strict,
    Defeasible,
    Defeater,
}

impl RuleType {
    /// The arrow used in the plain-text theory format.
    pub fn arrow(&self) -> &'static str {
        match self {
            RuleType::Strict => "->",
            RuleType::Defeasible => "=>",
            RuleType::Defeater => "~>",
        }
    }
}

/// A labeled rule: a set of premises and a head chain.
///
/// Only defeasible rules may carry a chain of more than one literal; theory
/// validation reports violations of that constraint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub label: Label,
    pub rtype: RuleType,
    pub antecedent: Vec<ModalLiteral>,
    pub head: OmegaChain,
}

impl Rule {
    /// Builds a rule; the antecedent is de-duplicated preserving first
    /// occurrences and the head chain is normalized.
    pub fn new(
        label: impl Into<Label>,
        rtype: RuleType,
        antecedent: Vec<ModalLiteral>,
        head: OmegaChain,
    ) -> Rule {
        let mut seen = Vec::new();
        let mut body = Vec::with_capacity(antecedent.len());
        for lit in antecedent {
            if !seen.contains(&lit) {
                seen.push(lit.clone());
                body.push(lit);
            }
        }
        Rule { label: label.into(), rtype, antecedent: body, head: head.normalized() }
    }

    pub fn strict(
        label: impl Into<Label>,
        antecedent: Vec<ModalLiteral>,
        head: ModalLiteral,
    ) -> Rule {
        Rule::new(label, RuleType::Strict, antecedent, OmegaChain::singleton(head))
    }

    pub fn defeasible(
        label: impl Into<Label>,
        antecedent: Vec<ModalLiteral>,
        head: OmegaChain,
    ) -> Rule {
        Rule::new(label, RuleType::Defeasible, antecedent, head)
    }

    pub fn defeater(
        label: impl Into<Label>,
        antecedent: Vec<ModalLiteral>,
        head: ModalLiteral,
    ) -> Rule {
        Rule::new(label, RuleType::Defeater, antecedent, OmegaChain::singleton(head))
    }

    pub fn is_ground(&self) -> bool {
        self.antecedent.iter().all(|l| l.is_ground())
            && self.head.items().iter().all(|l| l.is_ground())
    }

    /// Every literal mentioned by the rule, antecedent first.
    pub fn literals(&self) -> impl Iterator<Item = &ModalLiteral> {
        self.antecedent.iter().chain(self.head.items().iter())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.label)?;
        for (i, lit) in self.antecedent.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{lit}")?;
        }
        if !self.antecedent.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "{} {}", self.rtype.arrow(), self.head)
    }
}
