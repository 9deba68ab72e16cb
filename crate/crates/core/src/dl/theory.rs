use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::literal::ModalLiteral;
use super::rule::{Label, Rule, RuleType};

/// A defeasible theory: facts, rules and an acyclic superiority relation.
///
/// Rules are kept sorted by label so that identical theories have identical
/// representations regardless of construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub facts: BTreeSet<ModalLiteral>,
    rules: Vec<Rule>,
    pub superiority: BTreeSet<(Label, Label)>,
}

impl Theory {
    pub fn new(
        facts: impl IntoIterator<Item = ModalLiteral>,
        rules: impl IntoIterator<Item = Rule>,
        superiority: impl IntoIterator<Item = (Label, Label)>,
    ) -> Theory {
        let mut rules: Vec<Rule> = rules.into_iter().collect();
        rules.sort_by(|a, b| a.label.cmp(&b.label));
        Theory {
            facts: facts.into_iter().collect(),
            rules,
            superiority: superiority.into_iter().collect(),
        }
    }

    pub fn empty() -> Theory {
        Theory::new([], [], [])
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, label: &Label) -> Option<&Rule> {
        self.rules.iter().find(|r| &r.label == label)
    }

    /// Every literal occurring in facts, antecedents or heads.
    pub fn literals(&self) -> BTreeSet<ModalLiteral> {
        let mut out: BTreeSet<ModalLiteral> = self.facts.iter().cloned().collect();
        for rule in &self.rules {
            out.extend(rule.literals().cloned());
        }
        out
    }

    /// Constants appearing anywhere in the theory (the Herbrand universe).
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for lit in self.literals() {
            for term in &lit.atom.args {
                if !term.is_variable() {
                    out.insert(term.name().to_string());
                }
            }
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.facts.iter().all(|f| f.is_ground()) && self.rules.iter().all(|r| r.is_ground())
    }

    /// Checks the structural invariants and returns every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let mut labels: BTreeSet<&Label> = BTreeSet::new();
        for rule in &self.rules {
            if !labels.insert(&rule.label) {
                violations.push(TheoryViolation::DuplicateLabel { label: rule.label.clone() });
            }
            if rule.rtype != RuleType::Defeasible && rule.head.len() > 1 {
                violations.push(TheoryViolation::ChainOnNonDefeasible { label: rule.label.clone() });
            }
        }

        for (winner, loser) in &self.superiority {
            for label in [winner, loser] {
                if !labels.contains(label) {
                    violations.push(TheoryViolation::DanglingLabel { label: label.clone() });
                }
            }
        }

        let mut arities: BTreeMap<String, usize> = BTreeMap::new();
        for lit in self.literals() {
            let seen = *arities.entry(lit.atom.predicate.clone()).or_insert(lit.atom.arity());
            if seen != lit.atom.arity() {
                violations.push(TheoryViolation::ArityMismatch {
                    predicate: lit.atom.predicate.clone(),
                    arities: (seen, lit.atom.arity()),
                });
            }
        }

        if let Some(path) = self.superiority_cycle() {
            violations.push(TheoryViolation::SuperiorityCycle { path });
        }

        violations.sort();
        violations.dedup();
        ValidationReport { violations }
    }

    /// Finds a cycle in the superiority relation, if any, as a label path.
    fn superiority_cycle(&self) -> Option<Vec<Label>> {
        let mut edges: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
        for (w, l) in &self.superiority {
            edges.entry(w).or_default().push(l);
        }
        let mut state: BTreeMap<&Label, u8> = BTreeMap::new(); // 1 = visiting, 2 = done
        let mut stack: Vec<&Label> = Vec::new();

        fn visit<'a>(
            node: &'a Label,
            edges: &BTreeMap<&'a Label, Vec<&'a Label>>,
            state: &mut BTreeMap<&'a Label, u8>,
            stack: &mut Vec<&'a Label>,
        ) -> Option<Vec<Label>> {
            match state.get(node) {
                Some(2) => return None,
                Some(1) => {
                    let start = stack.iter().position(|l| *l == node).unwrap();
                    return Some(stack[start..].iter().map(|l| (*l).clone()).collect());
                }
                _ => {}
            }
            state.insert(node, 1);
            stack.push(node);
            if let Some(next) = edges.get(node) {
                for n in next {
                    if let Some(cycle) = visit(n, edges, state, stack) {
                        return Some(cycle);
                    }
                }
            }
            stack.pop();
            state.insert(node, 2);
            None
        }

        let starts: Vec<&Label> = edges.keys().copied().collect();
        for start in starts {
            if let Some(cycle) = visit(start, &edges, &mut state, &mut stack) {
                return Some(cycle);
            }
        }
        None
    }
}

/// Result of validating a theory: empty means the theory is well-formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<TheoryViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoryViolation {
    SuperiorityCycle { path: Vec<Label> },
    DanglingLabel { label: Label },
    DuplicateLabel { label: Label },
    ArityMismatch { predicate: String, arities: (usize, usize) },
    ChainOnNonDefeasible { label: Label },
}

impl fmt::Display for TheoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryViolation::SuperiorityCycle { path } => {
                let path: Vec<&str> = path.iter().map(|l| l.as_str()).collect();
                write!(f, "superiority cycle [{}]", path.join(","))
            }
            TheoryViolation::DanglingLabel { label } => {
                write!(f, "superiority references unknown rule '{label}'")
            }
            TheoryViolation::DuplicateLabel { label } => {
                write!(f, "duplicate rule label '{label}'")
            }
            TheoryViolation::ArityMismatch { predicate, arities } => {
                write!(f, "predicate '{predicate}' used with arities {} and {}", arities.0, arities.1)
            }
            TheoryViolation::ChainOnNonDefeasible { label } => {
                write!(f, "rule '{label}' is not defeasible but carries a reparation chain")
            }
        }
    }
}

/// Provability levels: definite (strict rules and facts only) or defeasible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProofLevel {
    Definite,
    Defeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A tagged conclusion such as `+d -Discount(g1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConclusionTag {
    pub sign: Sign,
    pub level: ProofLevel,
    pub literal: ModalLiteral,
}

impl fmt::Display for ConclusionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        let level = match self.level {
            ProofLevel::Definite => 'D',
            ProofLevel::Defeasible => 'd',
        };
        write!(f, "{sign}{level} {}", self.literal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl::syntax::parse_literal;
    use crate::dl::OmegaChain;

    fn lit(s: &str) -> ModalLiteral {
        parse_literal(s).unwrap()
    }

    fn rule(label: &str, body: &[&str], head: &str) -> Rule {
        Rule::defeasible(
            label,
            body.iter().map(|s| lit(s)).collect(),
            OmegaChain::singleton(lit(head)),
        )
    }

    #[test]
    fn discount_superiority_is_accepted() {
        let t = Theory::new(
            [],
            [
                rule("r1", &["specialOrder(X)"], "-Discount(X)"),
                rule("r2", &["premiumCustomer(X)"], "Discount(X)"),
                rule("r3", &["promotion(X)"], "-Discount(X)"),
            ],
            [(Label::from("r3"), Label::from("r2")), (Label::from("r2"), Label::from("r1"))],
        );
        assert!(t.validate().is_ok());
    }

    #[test]
    fn two_cycle_is_reported_with_its_path() {
        let t = Theory::new(
            [],
            [rule("r1", &[], "a"), rule("r2", &[], "-a")],
            [(Label::from("r1"), Label::from("r2")), (Label::from("r2"), Label::from("r1"))],
        );
        let report = t.validate();
        assert_eq!(report.violations.len(), 1);
        match &report.violations[0] {
            TheoryViolation::SuperiorityCycle { path } => assert_eq!(path.len(), 2),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn dangling_and_duplicate_labels_are_reported() {
        let t = Theory::new(
            [],
            [rule("r1", &[], "a"), rule("r1", &[], "b")],
            [(Label::from("r1"), Label::from("rX"))],
        );
        let report = t.validate();
        assert!(report
            .violations
            .contains(&TheoryViolation::DanglingLabel { label: Label::from("rX") }));
        assert!(report
            .violations
            .contains(&TheoryViolation::DuplicateLabel { label: Label::from("r1") }));
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let t = Theory::new([lit("p(a)"), lit("p(a,b)")], [], []);
        assert_eq!(t.validate().violations.len(), 1);
    }

    #[test]
    fn chain_on_strict_rule_is_reported() {
        let r = Rule::new(
            "s1",
            RuleType::Strict,
            vec![],
            OmegaChain::new(vec![lit("a"), lit("b")]),
        );
        let t = Theory::new([], [r], []);
        assert_eq!(
            t.validate().violations,
            vec![TheoryViolation::ChainOnNonDefeasible { label: Label::from("s1") }]
        );
    }
}
