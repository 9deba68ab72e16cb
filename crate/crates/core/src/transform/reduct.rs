//! Chain expansion: rewriting reparation chains into singleton-head rules.
//!
//! A defeasible rule `r: A => c1 (x) c2 (x) ... (x) cn` becomes the cascade
//!
//! ```text
//! r:    A => c1
//! r!1:  A, violate(c1) => c2
//! r!2:  A, violate(c1), violate(c2) => c3
//! ...
//! ```
//!
//! where `violate(c)` is the violation set of the chain item. `!` is
//! reserved for generated labels so expansions cannot collide with document
//! rules. Superiority is inherited: every fragment of a winner beats every
//! fragment of the loser.

use std::collections::BTreeMap;

use crate::dl::{Label, Theory};
use crate::transform::error::TransformError;
use crate::transform::work::WorkRule;

pub(crate) fn reduct_rules(
    rules: Vec<WorkRule>,
    superiority: Vec<(Label, Label)>,
) -> Result<(Vec<WorkRule>, Vec<(Label, Label)>), TransformError> {
    let mut expansion: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
    let mut out = Vec::with_capacity(rules.len());

    for rule in rules {
        if rule.head.len() < 2 || rule.rtype != crate::dl::RuleType::Defeasible {
            expansion.insert(rule.label.clone(), vec![rule.label.clone()]);
            out.push(rule);
            continue;
        }
        let mut fragments = Vec::with_capacity(rule.head.len());
        let mut body = rule.body.clone();
        for (idx, item) in rule.head.iter().enumerate() {
            let label = if idx == 0 {
                rule.label.clone()
            } else {
                Label::new(format!("{}!{idx}", rule.label))
            };
            fragments.push(label.clone());
            out.push(WorkRule {
                label,
                rtype: rule.rtype,
                body: body.clone(),
                pending: rule.pending.clone(),
                head: vec![item.clone()],
            });
            if idx + 1 < rule.head.len() {
                let violated = item.literal.violate_set().map_err(|e| {
                    TransformError::modality(format!("chain expansion of '{}'", rule.label), e)
                })?;
                body.extend(violated);
            }
        }
        expansion.insert(rule.label.clone(), fragments);
    }

    let mut sup = Vec::new();
    for (winner, loser) in superiority {
        let winners = expansion.get(&winner).cloned().unwrap_or_else(|| vec![winner.clone()]);
        let losers = expansion.get(&loser).cloned().unwrap_or_else(|| vec![loser.clone()]);
        for w in &winners {
            for l in &losers {
                sup.push((w.clone(), l.clone()));
            }
        }
    }
    Ok((out, sup))
}

/// Expands every reparation chain of a theory into singleton-head rules.
/// A theory without chains passes through unchanged.
pub fn reduct(theory: &Theory) -> Result<Theory, TransformError> {
    let rules: Vec<WorkRule> = theory.rules().iter().map(WorkRule::from_rule).collect();
    let sup: Vec<(Label, Label)> = theory.superiority.iter().cloned().collect();
    let (rules, sup) = reduct_rules(rules, sup)?;
    let mut dropped = Vec::new();
    let lowered: Vec<_> = rules.iter().map(|r| r.lower(&mut dropped)).collect();
    Ok(Theory::new(theory.facts.iter().cloned(), lowered, sup))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::parse_dfl;
    use crate::render::render_dfl;

    #[test]
    fn three_link_chain_expands_to_the_interest_cascade() {
        let t = parse_dfl(
            "ps1: goods(X),invoice(X) => [OBL:NULL:NULL]payIn7days(X) (x) \
             [OBL:NULL:NULL]payWith5%Interest(X) (x) [OBL:NULL:NULL]payWith6.5%Interest(X)\n",
        )
        .unwrap();
        let out = reduct(&t).unwrap();
        assert_eq!(
            render_dfl(&out),
            "ps1: goods(X),invoice(X) => [OBL:NULL:NULL]payIn7days(X)\n\
             ps1!1: goods(X),invoice(X),[OBL:NULL:NULL]payIn7days(X),-payIn7days(X) => [OBL:NULL:NULL]payWith5%Interest(X)\n\
             ps1!2: goods(X),invoice(X),[OBL:NULL:NULL]payIn7days(X),-payIn7days(X),[OBL:NULL:NULL]payWith5%Interest(X),-payWith5%Interest(X) => [OBL:NULL:NULL]payWith6.5%Interest(X)\n"
        );
    }

    #[test]
    fn singleton_heads_are_a_fixed_point() {
        let t = parse_dfl(">> p\nr1: p => q\nr2: => -q\nr2 > r1\n").unwrap();
        assert_eq!(reduct(&t).unwrap(), t);
    }

    #[test]
    fn superiority_is_inherited_pairwise() {
        let t = parse_dfl(
            "a: => [OBL:NULL:NULL]x (x) [OBL:NULL:NULL]y\n\
             b: => [OBL:NULL:NULL]-x (x) [OBL:NULL:NULL]-y (x) [OBL:NULL:NULL]z\n\
             a > b\n",
        )
        .unwrap();
        let out = reduct(&t).unwrap();
        assert_eq!(out.rules().len(), 5);
        // |reduct(a)| * |reduct(b)| = 2 * 3
        assert_eq!(out.superiority.len(), 6);
        assert!(out.validate().is_ok());
    }

    #[test]
    fn output_chains_are_all_singletons_and_rule_count_is_the_chain_sum() {
        let t = parse_dfl(
            "a: => [OBL:NULL:NULL]x (x) [OBL:NULL:NULL]y\n\
             b: p => q\n",
        )
        .unwrap();
        let out = reduct(&t).unwrap();
        let total: usize = t.rules().iter().map(|r| r.head.len()).sum();
        assert_eq!(out.rules().len(), total);
        assert!(out.rules().iter().all(|r| r.head.len() == 1));
    }

    #[test]
    fn permission_in_a_chain_tail_position_is_rejected() {
        let t = parse_dfl("a: => [PER:NULL:NULL]x (x) [OBL:NULL:NULL]y\n").unwrap();
        assert!(matches!(reduct(&t), Err(TransformError::Modality { .. })));
    }
}
