//! Naive fixpoint oracle for the proof conditions.
//!
//! This is a direct transcription of the four proof conditions, re-evaluated
//! for every literal of the language until nothing changes. It shares no
//! inference code with the propagation engine and exists to check it on
//! small theories; cost grows quadratically with the language.

use std::collections::BTreeSet;

use crate::dl::{conflicts_with, ModalLiteral, Rule, RuleType, Theory};
use crate::reasoner::extension::Extension;

/// Computes the extension of a small ground theory by fixpoint iteration.
/// Expects singleton heads, like the engine.
pub fn brute_force_extension(theory: &Theory) -> Extension {
    let universe: Vec<ModalLiteral> = theory.literals().into_iter().collect();
    let facts = &theory.facts;

    let strict_for = |q: &ModalLiteral| -> Vec<&Rule> {
        theory
            .rules()
            .iter()
            .filter(|r| r.rtype == RuleType::Strict && r.head.first() == q)
            .collect()
    };
    let sd_for = |q: &ModalLiteral| -> Vec<&Rule> {
        theory
            .rules()
            .iter()
            .filter(|r| r.rtype != RuleType::Defeater && r.head.first() == q)
            .collect()
    };
    let all_for = |q: &ModalLiteral| -> Vec<&Rule> {
        theory.rules().iter().filter(|r| r.head.first() == q).collect()
    };
    let conflicting: Vec<Vec<&ModalLiteral>> = universe
        .iter()
        .map(|q| universe.iter().filter(|c| conflicts_with(q, c)).collect())
        .collect();
    let beats = |winner: &Rule, loser: &Rule| {
        theory.superiority.contains(&(winner.label.clone(), loser.label.clone()))
    };

    let mut ext = Extension::default();
    loop {
        let mut changed = false;
        for (qi, q) in universe.iter().enumerate() {
            let conf = &conflicting[qi];
            let holds = |set: &BTreeSet<ModalLiteral>, lits: &[ModalLiteral]| {
                lits.iter().all(|l| set.contains(l))
            };
            let refuted = |set: &BTreeSet<ModalLiteral>, lits: &[ModalLiteral]| {
                lits.iter().any(|l| set.contains(l))
            };

            // +D: q is a fact, or a strict rule with a definitely proved
            // antecedent concludes q.
            if !ext.plus_delta.contains(q) {
                let provable = facts.contains(q)
                    || strict_for(q).iter().any(|r| holds(&ext.plus_delta, &r.antecedent));
                if provable {
                    ext.plus_delta.insert(q.clone());
                    changed = true;
                }
            }

            // -D: q is not a fact and every strict rule for q has a
            // definitely rejected antecedent.
            if !ext.minus_delta.contains(q) {
                let rejected = !facts.contains(q)
                    && strict_for(q).iter().all(|r| refuted(&ext.minus_delta, &r.antecedent));
                if rejected {
                    ext.minus_delta.insert(q.clone());
                    changed = true;
                }
            }

            // +d: definitely proved; or every conflicting literal is
            // definitely rejected, some strict/defeasible rule for q is
            // applicable, and every rule for a conflicting literal is
            // discarded or beaten by an applicable rule for q.
            if !ext.plus_partial.contains(q) {
                let supported = ext.plus_delta.contains(q)
                    || (conf.iter().all(|c| ext.minus_delta.contains(*c))
                        && sd_for(q).iter().any(|r| holds(&ext.plus_partial, &r.antecedent))
                        && conf.iter().all(|c| {
                            all_for(c).iter().all(|s| {
                                refuted(&ext.minus_partial, &s.antecedent)
                                    || all_for(q).iter().any(|t| {
                                        holds(&ext.plus_partial, &t.antecedent) && beats(t, s)
                                    })
                            })
                        }));
                if supported {
                    ext.plus_partial.insert(q.clone());
                    changed = true;
                }
            }

            // -d: definitely rejected, and the +d condition fails
            // constructively.
            if !ext.minus_partial.contains(q) {
                let no_support =
                    sd_for(q).iter().all(|r| refuted(&ext.minus_partial, &r.antecedent));
                let proved_conflict = conf.iter().any(|c| ext.plus_delta.contains(*c));
                let overruled = conf.iter().any(|c| {
                    all_for(c).iter().any(|s| {
                        holds(&ext.plus_partial, &s.antecedent)
                            && all_for(q).iter().all(|t| {
                                refuted(&ext.minus_partial, &t.antecedent) || !beats(t, s)
                            })
                    })
                });
                if ext.minus_delta.contains(q) && (no_support || proved_conflict || overruled) {
                    ext.minus_partial.insert(q.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            return ext;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reasoner::compute_extension;
    use crate::reasoner::ground::ground;
    use crate::render::parse_dfl;

    #[test]
    fn agrees_with_the_engine_on_the_discount_scenarios() {
        let base = "\
r1: specialOrder(X) => -Discount(X)
r2: premiumCustomer(X) => Discount(X)
r3: promotion(X) => -Discount(X)
r3 > r2
r2 > r1
";
        for facts in [
            vec!["specialOrder(g1)"],
            vec!["specialOrder(g1)", "premiumCustomer(g1)"],
            vec!["specialOrder(g1)", "premiumCustomer(g1)", "promotion(g1)"],
        ] {
            let mut text = base.to_string();
            for f in &facts {
                text.push_str(&format!(">> {f}\n"));
            }
            let theory = ground(&parse_dfl(&text).unwrap()).unwrap();
            assert_eq!(brute_force_extension(&theory), compute_extension(&theory).unwrap());
        }
    }

    #[test]
    fn empty_theory_has_empty_sets() {
        assert_eq!(brute_force_extension(&Theory::empty()), Extension::default());
    }
}
