//! Grounding: instantiating rule variables over the theory's constants.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::dl::{Label, ModalLiteral, OmegaChain, Rule, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("rule '{rule}': head variable '{variable}' is unbound and no constants are available")]
    UnboundVariable { rule: Label, variable: String },
}

/// Instantiates every rule (and non-ground fact) for each substitution of
/// its variables by constants occurring in the theory. Ground theories pass
/// through unchanged; instantiated labels carry the substitution, e.g.
/// `r1[X/g1]`.
pub fn ground(theory: &Theory) -> Result<Theory, GroundError> {
    if theory.is_ground() {
        return Ok(theory.clone());
    }
    let constants: Vec<String> = theory.constants().into_iter().collect();

    let mut facts: BTreeSet<ModalLiteral> = BTreeSet::new();
    for fact in &theory.facts {
        if fact.is_ground() {
            facts.insert(fact.clone());
        } else {
            let vars = literal_variables(fact);
            for subst in substitutions(&vars, &constants) {
                facts.insert(apply_literal(fact, &subst));
            }
        }
    }

    let mut rules = Vec::new();
    let mut instances: Vec<(Label, Vec<Label>)> = Vec::new();
    for rule in theory.rules() {
        let vars = rule_variables(rule);
        if vars.is_empty() {
            instances.push((rule.label.clone(), vec![rule.label.clone()]));
            rules.push(rule.clone());
            continue;
        }
        if constants.is_empty() {
            let body_vars: BTreeSet<String> =
                rule.antecedent.iter().flat_map(|l| literal_variables(l)).collect();
            if let Some(unbound) = rule
                .head
                .items()
                .iter()
                .flat_map(|l| literal_variables(l))
                .find(|v| !body_vars.contains(v))
            {
                return Err(GroundError::UnboundVariable {
                    rule: rule.label.clone(),
                    variable: unbound,
                });
            }
            // No constants to instantiate over: the rule has no instances.
            instances.push((rule.label.clone(), Vec::new()));
            continue;
        }
        let mut labels = Vec::new();
        for subst in substitutions(&vars, &constants) {
            let label = Label::new(format!("{}{}", rule.label, subst_suffix(&subst)));
            labels.push(label.clone());
            rules.push(Rule::new(
                label,
                rule.rtype,
                rule.antecedent.iter().map(|l| apply_literal(l, &subst)).collect(),
                OmegaChain::new(
                    rule.head.items().iter().map(|l| apply_literal(l, &subst)).collect(),
                ),
            ));
        }
        instances.push((rule.label.clone(), labels));
    }

    let mut superiority = Vec::new();
    let lookup = |label: &Label| -> Vec<Label> {
        instances
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, inst)| inst.clone())
            .unwrap_or_else(|| vec![label.clone()])
    };
    for (winner, loser) in &theory.superiority {
        for w in lookup(winner) {
            for l in lookup(loser) {
                superiority.push((w.clone(), l));
            }
        }
    }

    Ok(Theory::new(facts, rules, superiority))
}

fn literal_variables(lit: &ModalLiteral) -> Vec<String> {
    lit.atom.variables().map(str::to_string).collect()
}

fn rule_variables(rule: &Rule) -> Vec<String> {
    let set: BTreeSet<String> = rule.literals().flat_map(literal_variables).collect();
    set.into_iter().collect()
}

type Subst = Vec<(String, String)>;

/// All substitutions of `vars` (sorted) by `constants`, in lexicographic
/// order.
fn substitutions(vars: &[String], constants: &[String]) -> Vec<Subst> {
    let mut out: Vec<Subst> = vec![Vec::new()];
    for var in vars {
        let mut next = Vec::with_capacity(out.len() * constants.len());
        for partial in &out {
            for c in constants {
                let mut s = partial.clone();
                s.push((var.clone(), c.clone()));
                next.push(s);
            }
        }
        out = next;
    }
    out
}

fn apply_literal(lit: &ModalLiteral, subst: &Subst) -> ModalLiteral {
    let mut atom = lit.atom.clone();
    for (var, constant) in subst {
        atom = atom.substitute(var, constant);
    }
    ModalLiteral { negated: lit.negated, modality: lit.modality.clone(), atom }
}

fn subst_suffix(subst: &Subst) -> String {
    let parts: Vec<String> = subst.iter().map(|(v, c)| format!("{v}/{c}")).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::parse_dfl;

    #[test]
    fn single_constant_instantiation() {
        let t = parse_dfl(">> specialOrder(g1)\nr1: specialOrder(X) => [OBL:NULL:NULL]surcharge(X)\n")
            .unwrap();
        let g = ground(&t).unwrap();
        assert_eq!(g.rules().len(), 1);
        assert_eq!(
            g.rules()[0].to_string(),
            "r1[X/g1]: specialOrder(g1) => [OBL:NULL:NULL]surcharge(g1)"
        );
    }

    #[test]
    fn ground_theory_is_a_fixed_point() {
        let t = parse_dfl(">> p(a)\nr: p(a) => q(a)\n").unwrap();
        assert_eq!(ground(&t).unwrap(), t);
    }

    #[test]
    fn instance_count_is_constants_to_the_variables() {
        let t = parse_dfl(">> p(g1)\n>> p(g2)\nr: p(X) => q(X,Y)\n").unwrap();
        let g = ground(&t).unwrap();
        // |constants|^|vars| = 2^2
        assert_eq!(g.rules().len(), 4);
        assert!(g.is_ground());
    }

    #[test]
    fn superiority_expands_over_instances() {
        let t = parse_dfl(
            ">> p(g1)\n>> p(g2)\nr1: p(X) => q(X)\nr2: p(X) => -q(X)\nr2 > r1\n",
        )
        .unwrap();
        let g = ground(&t).unwrap();
        assert_eq!(g.rules().len(), 4);
        assert_eq!(g.superiority.len(), 4);
    }

    #[test]
    fn unbound_head_variable_without_constants_errors() {
        let t = parse_dfl("r: p(X) => q(X,Z)\n").unwrap();
        match ground(&t) {
            Err(GroundError::UnboundVariable { variable, .. }) => assert_eq!(variable, "Z"),
            other => panic!("expected unbound variable, got {other:?}"),
        }
    }
}
