//! Seeded random theory generation for tests and cross-checking.
//!
//! The `NORMFORGE_SEED` environment variable fixes the seed of every
//! randomized generator, making failing runs reproducible.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::dl::{
    Atom, Modality, ModalityTag, ModalLiteral, OmegaChain, Rule, RuleType, Theory,
};

pub const DEFAULT_SEED: u64 = 0x4e4f_524d_464f_5247; // "NORMFORG"

/// Seed from `NORMFORGE_SEED`, or the default.
pub fn seed_from_env() -> u64 {
    std::env::var("NORMFORGE_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct GroundTheoryConfig {
    /// Distinct propositional atoms the literal pool draws from.
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_body: usize,
    /// Mix deontic literals into the pool.
    pub modal: bool,
    /// Probability of adding a superiority edge between two conflicting-head
    /// rules.
    pub superiority_density: f64,
}

impl Default for GroundTheoryConfig {
    fn default() -> GroundTheoryConfig {
        GroundTheoryConfig {
            max_atoms: 10,
            max_rules: 30,
            max_body: 3,
            modal: true,
            superiority_density: 0.5,
        }
    }
}

/// A random ground theory with singleton heads and an acyclic superiority
/// relation (edges always point from later to earlier rules).
pub fn random_ground_theory(rng: &mut StdRng, cfg: &GroundTheoryConfig) -> Theory {
    let n_atoms = rng.gen_range(1..=cfg.max_atoms.max(1));
    let mut pool: Vec<ModalLiteral> = Vec::new();
    for i in 0..n_atoms {
        let atom = Atom::prop(format!("p{i}"));
        pool.push(ModalLiteral::plain(atom.clone()));
        pool.push(ModalLiteral::negative(atom.clone()));
        if cfg.modal {
            for tag in [ModalityTag::Obligation, ModalityTag::Prohibition, ModalityTag::Permission]
            {
                pool.push(ModalLiteral::modal(Modality::new(tag), atom.clone()));
                pool.push(
                    ModalLiteral::modal(Modality::new(tag), atom.clone()).with_negation(true),
                );
            }
        }
    }
    let pick = |rng: &mut StdRng, pool: &[ModalLiteral]| pool[rng.gen_range(0..pool.len())].clone();

    let n_rules = rng.gen_range(0..=cfg.max_rules);
    let mut rules = Vec::with_capacity(n_rules);
    for i in 0..n_rules {
        let rtype = match rng.gen_range(0..10) {
            0..=1 => RuleType::Strict,
            2..=7 => RuleType::Defeasible,
            _ => RuleType::Defeater,
        };
        let body_len = rng.gen_range(0..=cfg.max_body);
        let body: Vec<ModalLiteral> = (0..body_len).map(|_| pick(rng, &pool)).collect();
        let head = pick(rng, &pool);
        rules.push(Rule::new(format!("r{i}"), rtype, body, OmegaChain::singleton(head)));
    }

    let n_facts = rng.gen_range(0..=3.min(pool.len()));
    let facts: Vec<ModalLiteral> = (0..n_facts).map(|_| pick(rng, &pool)).collect();

    // Superiority only between rules with conflicting heads, oriented by
    // rule index so the relation stays acyclic.
    let mut superiority = Vec::new();
    for i in 0..rules.len() {
        for j in 0..i {
            let conflicting =
                crate::dl::conflicts_with(rules[i].head.first(), rules[j].head.first());
            if conflicting && rng.gen_bool(cfg.superiority_density) {
                superiority.push((rules[i].label.clone(), rules[j].label.clone()));
            }
        }
    }

    Theory::new(facts, rules, superiority)
}

#[derive(Debug, Clone)]
pub struct ChainTheoryConfig {
    pub max_rules: usize,
    pub max_body: usize,
    pub max_chain: usize,
    /// Use variables and a small constant pool instead of propositions.
    pub with_variables: bool,
}

impl Default for ChainTheoryConfig {
    fn default() -> ChainTheoryConfig {
        ChainTheoryConfig { max_rules: 12, max_body: 3, max_chain: 3, with_variables: false }
    }
}

/// A random renderable theory: strict rules keep plain heads, defeasible
/// rules may carry obligation chains, and every rule body opens with a
/// rule-specific guard atom so rules stay structurally distinct.
pub fn random_chain_theory(rng: &mut StdRng, cfg: &ChainTheoryConfig) -> Theory {
    let term = |rng: &mut StdRng| {
        if cfg.with_variables && rng.gen_bool(0.5) {
            crate::dl::Term::Variable("X".into())
        } else {
            crate::dl::Term::Constant(format!("g{}", rng.gen_range(0..3)))
        }
    };
    let plain_lit = |rng: &mut StdRng, negated: bool| {
        let atom = Atom::new(format!("a{}", rng.gen_range(0..8)), vec![term(rng)]);
        ModalLiteral { negated, modality: None, atom }
    };
    let chain_lit = |rng: &mut StdRng| {
        let tag = if rng.gen_bool(0.7) { ModalityTag::Obligation } else { ModalityTag::Prohibition };
        let atom = Atom::new(format!("b{}", rng.gen_range(0..8)), vec![term(rng)]);
        ModalLiteral::modal(Modality::new(tag), atom).with_negation(rng.gen_bool(0.3))
    };

    let n_rules = rng.gen_range(1..=cfg.max_rules);
    let mut rules = Vec::with_capacity(n_rules);
    for i in 0..n_rules {
        let mut body = vec![ModalLiteral::plain(Atom::prop(format!("guard{i}")))];
        for _ in 0..rng.gen_range(0..=cfg.max_body) {
            let negated = rng.gen_bool(0.3);
            body.push(plain_lit(rng, negated));
        }
        let rtype = match rng.gen_range(0..10) {
            0..=2 => RuleType::Strict,
            3..=8 => RuleType::Defeasible,
            _ => RuleType::Defeater,
        };
        let head = match rtype {
            RuleType::Defeasible => {
                let len = rng.gen_range(1..=cfg.max_chain);
                OmegaChain::new((0..len).map(|_| chain_lit(rng)).collect())
            }
            // Strict rules must keep plain heads to stay renderable as
            // constitutive statements.
            RuleType::Strict => {
                let negated = rng.gen_bool(0.3);
                OmegaChain::singleton(plain_lit(rng, negated))
            }
            RuleType::Defeater => OmegaChain::singleton(chain_lit(rng)),
        };
        rules.push(Rule::new(format!("r{i}"), rtype, body, head));
    }

    let facts: Vec<ModalLiteral> =
        (0..rng.gen_range(0..4)).map(|_| plain_lit(rng, false)).collect();

    let mut superiority = Vec::new();
    for i in 1..rules.len() {
        if rng.gen_bool(0.3) {
            let j = rng.gen_range(0..i);
            superiority.push((rules[i].label.clone(), rules[j].label.clone()));
        }
    }
    Theory::new(facts, rules, superiority)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_ground_theories_are_valid_and_ground() {
        let mut rng = rng(7);
        for _ in 0..50 {
            let t = random_ground_theory(&mut rng, &GroundTheoryConfig::default());
            assert!(t.validate().is_ok(), "{}", t.validate());
            assert!(t.is_ground());
            assert!(t.rules().iter().all(|r| r.head.len() == 1));
        }
    }

    #[test]
    fn generated_chain_theories_are_valid() {
        let mut rng = rng(11);
        for _ in 0..50 {
            let t = random_chain_theory(&mut rng, &ChainTheoryConfig::default());
            assert!(t.validate().is_ok(), "{}", t.validate());
        }
    }
}
