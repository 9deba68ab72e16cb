//! Counter-based extension computation.
//!
//! The four conclusion sets are computed in three propagation passes, all
//! driven by work queues so the cost stays proportional to the number of
//! state changes rather than to repeated whole-theory scans:
//!
//! * `+D`: forward chaining of facts and strict rules over per-rule
//!   unsatisfied-antecedent counters;
//! * `-D`: constructive failure — a literal is definitely rejected once it
//!   is not a fact and every strict rule for it has a rejected antecedent;
//! * `+d`/`-d`: defeasible propagation under ambiguity blocking. A literal
//!   is defeasibly proved when every conflicting literal is definitely
//!   rejected, some applicable strict or defeasible rule supports it, and
//!   every rule for a conflicting literal is discarded or beaten by an
//!   applicable superior rule for the literal. Rejection is the constructive
//!   failure of that condition. Defeaters block and beat but never prove.
//!
//! Conflicts come from the deontic conflict table; the engine treats modal
//! literals as opaque tokens otherwise.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::dl::{ConclusionTag, ConflictTable, ModalLiteral, RuleType, Sign, Theory};
use crate::reasoner::extension::Extension;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonError {
    #[error("rule '{label}' carries a reparation chain; expand chains (reduct) before reasoning")]
    NonSingletonHead { label: String },
    #[error("rule '{label}' is not ground; ground the theory before reasoning")]
    NonGround { label: String },
    #[error("fact '{literal}' is not ground; ground the theory before reasoning")]
    NonGroundFact { literal: String },
}

/// Computes the extension of a ground, singleton-head theory.
pub fn compute_extension(theory: &Theory) -> Result<Extension, ReasonError> {
    Engine::build(theory)?.run()
}

/// Tests one tagged conclusion. Literals outside the theory's language are
/// never provable and always rejected.
pub fn prove(theory: &Theory, tag: &ConclusionTag) -> Result<bool, ReasonError> {
    let extension = compute_extension(theory)?;
    if extension.contains(tag) {
        return Ok(true);
    }
    let in_language = theory.literals().contains(&tag.literal);
    Ok(!in_language && tag.sign == Sign::Minus)
}

type LitId = usize;
type RuleId = usize;

struct EngineRule {
    rtype: RuleType,
    body: Vec<LitId>,
    head: LitId,
}

struct Engine {
    lits: Vec<ModalLiteral>,
    is_fact: Vec<bool>,
    rules: Vec<EngineRule>,
    strict_by_head: Vec<Vec<RuleId>>,
    sd_by_head: Vec<Vec<RuleId>>,
    all_by_head: Vec<Vec<RuleId>>,
    body_occ: Vec<Vec<RuleId>>,
    /// Conflicting literals present in the language, per literal.
    conf: Vec<Vec<LitId>>,
    /// Rules whose head conflicts with the literal.
    opp_rules: Vec<Vec<RuleId>>,
    /// Winners over each rule under the superiority relation.
    winners_over: Vec<Vec<RuleId>>,
    superior: HashSet<(RuleId, RuleId)>,
}

impl Engine {
    fn build(theory: &Theory) -> Result<Engine, ReasonError> {
        for fact in &theory.facts {
            if !fact.is_ground() {
                return Err(ReasonError::NonGroundFact { literal: fact.to_string() });
            }
        }
        for rule in theory.rules() {
            if rule.head.len() != 1 {
                return Err(ReasonError::NonSingletonHead { label: rule.label.to_string() });
            }
            if !rule.is_ground() {
                return Err(ReasonError::NonGround { label: rule.label.to_string() });
            }
        }

        let mut lits: Vec<ModalLiteral> = Vec::new();
        let mut index: HashMap<ModalLiteral, LitId> = HashMap::new();
        let mut intern = |lit: &ModalLiteral, lits: &mut Vec<ModalLiteral>| -> LitId {
            if let Some(&id) = index.get(lit) {
                return id;
            }
            let id = lits.len();
            lits.push(lit.clone());
            index.insert(lit.clone(), id);
            id
        };

        let mut rules = Vec::with_capacity(theory.rules().len());
        for rule in theory.rules() {
            let body = rule.antecedent.iter().map(|l| intern(l, &mut lits)).collect();
            let head = intern(rule.head.first(), &mut lits);
            rules.push(EngineRule { rtype: rule.rtype, body, head });
        }
        let mut is_fact = vec![false; lits.len()];
        for fact in &theory.facts {
            let id = intern(fact, &mut lits);
            if id >= is_fact.len() {
                is_fact.resize(lits.len(), false);
            }
            is_fact[id] = true;
        }
        is_fact.resize(lits.len(), false);

        let n = lits.len();
        let mut strict_by_head = vec![Vec::new(); n];
        let mut sd_by_head = vec![Vec::new(); n];
        let mut all_by_head = vec![Vec::new(); n];
        let mut body_occ = vec![Vec::new(); n];
        for (rid, rule) in rules.iter().enumerate() {
            all_by_head[rule.head].push(rid);
            match rule.rtype {
                RuleType::Strict => {
                    strict_by_head[rule.head].push(rid);
                    sd_by_head[rule.head].push(rid);
                }
                RuleType::Defeasible => sd_by_head[rule.head].push(rid),
                RuleType::Defeater => {}
            }
            for &b in &rule.body {
                body_occ[b].push(rid);
            }
        }

        let table = ConflictTable::standard();
        let mut conf = vec![Vec::new(); n];
        let mut opp_rules = vec![Vec::new(); n];
        for id in 0..n {
            for candidate in table.opponents(&lits[id]) {
                if let Some(&cid) = index.get(&candidate) {
                    conf[id].push(cid);
                    opp_rules[id].extend(all_by_head[cid].iter().copied());
                }
            }
        }

        let label_ids: HashMap<&str, RuleId> = theory
            .rules()
            .iter()
            .enumerate()
            .map(|(rid, r)| (r.label.as_str(), rid))
            .collect();
        let mut winners_over = vec![Vec::new(); rules.len()];
        let mut superior = HashSet::new();
        for (winner, loser) in &theory.superiority {
            if let (Some(&w), Some(&l)) = (label_ids.get(winner.as_str()), label_ids.get(loser.as_str()))
            {
                winners_over[l].push(w);
                superior.insert((w, l));
            }
        }

        Ok(Engine {
            lits,
            is_fact,
            rules,
            strict_by_head,
            sd_by_head,
            all_by_head,
            body_occ,
            conf,
            opp_rules,
            winners_over,
            superior,
        })
    }

    fn run(&self) -> Result<Extension, ReasonError> {
        let n = self.lits.len();
        let plus_delta = self.definite_proof();
        let minus_delta = self.definite_failure();

        // Defeasible pass.
        let mut plus = vec![false; n];
        let mut minus = vec![false; n];
        let mut missing: Vec<usize> = self.rules.iter().map(|r| r.body.len()).collect();
        let mut applicable: Vec<bool> = missing.iter().map(|&m| m == 0).collect();
        let mut discarded = vec![false; self.rules.len()];

        let mut queue: VecDeque<LitId> = (0..n).collect();
        let mut queued = vec![true; n];

        while let Some(q) = queue.pop_front() {
            queued[q] = false;

            if !plus[q] && self.provable(q, &plus_delta, &minus_delta, &applicable, &discarded) {
                plus[q] = true;
                for &rid in &self.body_occ[q] {
                    missing[rid] -= 1;
                    if missing[rid] == 0 {
                        applicable[rid] = true;
                        // The head gains support; its conflicts gain an
                        // applicable opposer.
                        self.wake(self.rules[rid].head, &mut queue, &mut queued);
                        self.wake_conflicts(self.rules[rid].head, &mut queue, &mut queued);
                    }
                }
            }

            if !minus[q] && self.refutable(q, &plus_delta, &minus_delta, &applicable, &discarded) {
                minus[q] = true;
                for &rid in &self.body_occ[q] {
                    if !discarded[rid] {
                        discarded[rid] = true;
                        self.wake(self.rules[rid].head, &mut queue, &mut queued);
                        self.wake_conflicts(self.rules[rid].head, &mut queue, &mut queued);
                    }
                }
            }
        }

        let collect = |flags: &[bool]| {
            flags
                .iter()
                .enumerate()
                .filter(|(_, &f)| f)
                .map(|(i, _)| self.lits[i].clone())
                .collect()
        };
        Ok(Extension {
            plus_delta: collect(&plus_delta),
            minus_delta: collect(&minus_delta),
            plus_partial: collect(&plus),
            minus_partial: collect(&minus),
        })
    }

    fn wake(&self, lit: LitId, queue: &mut VecDeque<LitId>, queued: &mut [bool]) {
        if !queued[lit] {
            queued[lit] = true;
            queue.push_back(lit);
        }
    }

    fn wake_conflicts(&self, lit: LitId, queue: &mut VecDeque<LitId>, queued: &mut [bool]) {
        for &c in &self.conf[lit] {
            self.wake(c, queue, queued);
        }
    }

    /// `+d` condition: definitely proved, or supported and all opposition
    /// discarded or beaten by an applicable superior rule for the literal.
    fn provable(
        &self,
        q: LitId,
        plus_delta: &[bool],
        minus_delta: &[bool],
        applicable: &[bool],
        discarded: &[bool],
    ) -> bool {
        if plus_delta[q] {
            return true;
        }
        if !self.conf[q].iter().all(|&c| minus_delta[c]) {
            return false;
        }
        if !self.sd_by_head[q].iter().any(|&r| applicable[r]) {
            return false;
        }
        self.opp_rules[q].iter().all(|&s| {
            discarded[s]
                || self.winners_over[s]
                    .iter()
                    .any(|&t| self.rules[t].head == q && applicable[t])
        })
    }

    /// `-d` condition: definitely rejected, and the proof condition fails
    /// constructively — no support, or a definitely proved conflict, or an
    /// applicable opposing rule no applicable rule for the literal beats.
    fn refutable(
        &self,
        q: LitId,
        plus_delta: &[bool],
        minus_delta: &[bool],
        applicable: &[bool],
        discarded: &[bool],
    ) -> bool {
        if !minus_delta[q] {
            return false;
        }
        if self.sd_by_head[q].iter().all(|&r| discarded[r]) {
            return true;
        }
        if self.conf[q].iter().any(|&c| plus_delta[c]) {
            return true;
        }
        self.opp_rules[q].iter().any(|&s| {
            applicable[s]
                && self.all_by_head[q]
                    .iter()
                    .all(|&t| discarded[t] || !self.superior.contains(&(t, s)))
        })
    }

    /// Forward chaining over facts and strict rules.
    fn definite_proof(&self) -> Vec<bool> {
        let n = self.lits.len();
        let mut proved = vec![false; n];
        let mut missing: Vec<usize> = self.rules.iter().map(|r| r.body.len()).collect();
        let mut queue: VecDeque<LitId> = VecDeque::new();
        for (id, &fact) in self.is_fact.iter().enumerate() {
            if fact {
                proved[id] = true;
                queue.push_back(id);
            }
        }
        for rule in &self.rules {
            if rule.rtype == RuleType::Strict && rule.body.is_empty() && !proved[rule.head] {
                proved[rule.head] = true;
                queue.push_back(rule.head);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &rid in &self.body_occ[q] {
                if self.rules[rid].rtype != RuleType::Strict {
                    continue;
                }
                missing[rid] -= 1;
                if missing[rid] == 0 && !proved[self.rules[rid].head] {
                    proved[self.rules[rid].head] = true;
                    queue.push_back(self.rules[rid].head);
                }
            }
        }
        proved
    }

    /// Constructive definite failure over per-literal live-rule counters.
    fn definite_failure(&self) -> Vec<bool> {
        let n = self.lits.len();
        let mut rejected = vec![false; n];
        let mut killed = vec![false; self.rules.len()];
        let mut alive: Vec<usize> = (0..n).map(|q| self.strict_by_head[q].len()).collect();
        let mut queue: VecDeque<LitId> = VecDeque::new();
        for q in 0..n {
            if !self.is_fact[q] && alive[q] == 0 {
                rejected[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &rid in &self.body_occ[q] {
                let rule = &self.rules[rid];
                if rule.rtype != RuleType::Strict || killed[rid] {
                    continue;
                }
                killed[rid] = true;
                alive[rule.head] -= 1;
                if alive[rule.head] == 0 && !self.is_fact[rule.head] && !rejected[rule.head] {
                    rejected[rule.head] = true;
                    queue.push_back(rule.head);
                }
            }
        }
        rejected
    }
}
