//! Built-in synthetic contract corpus for the bench command.
//!
//! Shaped like the business-contract document the scalability experiments
//! use: 6 constitutive statements, 78 prescriptive statements and 10
//! override statements, compiling to 6 strict rules, 78 defeasible rules and
//! 10 superiority pairs over exactly 121 distinct literals. Scaling happens
//! by duplicating all statements with renamed keys, which multiplies the
//! rules while keeping the language fixed.

use normforge::dl::{Atom, Term};
use normforge::lrml::{
    ConditionNode, DeonticNode, LrmlDocument, Reparation, RuleTemplate, Statement, StatementBody,
};

const CONSTITUTIVE: usize = 6;
const PRESCRIPTIVE: usize = 78;
const OVERRIDES: usize = 10;
const CONDITIONS: usize = 31;

fn var_x() -> Term {
    Term::Variable("X".into())
}

fn atom(name: String) -> ConditionNode {
    ConditionNode::Atom { key: None, negated: false, atom: Atom::new(name, vec![var_x()]) }
}

fn obligation(name: String, negated: bool) -> ConditionNode {
    ConditionNode::Deontic(DeonticNode {
        key: None,
        tag: normforge::dl::ModalityTag::Obligation,
        bearer: None,
        auxiliary: None,
        negated,
        atom: Atom::new(name, vec![var_x()]),
    })
}

fn norm(key: String, constitutive: bool, body: Vec<ConditionNode>, head: ConditionNode) -> Statement {
    let template = RuleTemplate {
        key: None,
        keyref: None,
        universal: false,
        strength: None,
        body: Some(if body.len() == 1 {
            body.into_iter().next().unwrap()
        } else {
            ConditionNode::And { key: None, children: body }
        }),
        head: Some(head),
    };
    let body = if constitutive {
        StatementBody::Constitutive(template)
    } else {
        StatementBody::Prescriptive(template)
    };
    Statement::new(Some(key), body)
}

/// The base synthetic document.
pub fn base_document() -> LrmlDocument {
    let mut doc = LrmlDocument::default();

    for i in 1..=CONSTITUTIVE {
        doc.statements.push(norm(
            format!("c{i}"),
            true,
            vec![atom(format!("class{i}"))],
            atom(format!("status{i}")),
        ));
    }

    for i in 1..=PRESCRIPTIVE {
        let body = vec![
            atom(format!("status{}", (i - 1) % CONSTITUTIVE + 1)),
            atom(format!("cond{}", (i - 1) % CONDITIONS + 1)),
        ];
        // The first twenty statements form ten conflicting pairs targeted by
        // the override statements; the rest oblige distinct duties.
        let head = if i <= 2 * OVERRIDES {
            let pair = (i + 1) / 2;
            obligation(format!("duty{pair}"), i % 2 == 0)
        } else {
            obligation(format!("duty{}", OVERRIDES + i - 2 * OVERRIDES), false)
        };
        doc.statements.push(norm(format!("p{i}"), false, body, head));
    }

    for j in 1..=OVERRIDES {
        doc.statements.push(Statement::new(
            Some(format!("o{j}")),
            StatementBody::Override { over: format!("p{}", 2 * j), under: format!("p{}", 2 * j - 1) },
        ));
    }
    doc
}

/// Duplicates all statements `copies` times, renaming every key and
/// statement-level reference with a `_dupN` suffix per copy. `copies = 1`
/// returns the document unchanged.
pub fn duplicate_document(base: &LrmlDocument, copies: usize) -> LrmlDocument {
    let mut out = base.clone();
    for n in 2..=copies {
        let suffix = format!("_dup{n}");
        for stmt in &base.statements {
            out.statements.push(suffix_statement(stmt, &suffix));
        }
        for assoc in &base.associations {
            let mut assoc = assoc.clone();
            assoc.key = assoc.key.map(|k| format!("{k}{suffix}"));
            for target in &mut assoc.targets {
                target.push_str(&suffix);
            }
            out.associations.push(assoc);
        }
    }
    out
}

fn suffix_statement(stmt: &Statement, suffix: &str) -> Statement {
    let rename = |k: &Option<String>| k.as_ref().map(|k| format!("{k}{suffix}"));
    let mut out = stmt.clone();
    out.key = rename(&stmt.key);
    match &mut out.body {
        StatementBody::Constitutive(t) | StatementBody::Prescriptive(t) => {
            t.key = rename(&t.key).map(|k| k.to_string());
            t.keyref = t.keyref.as_ref().map(|k| format!("{k}{suffix}"));
            if let Some(b) = &mut t.body {
                suffix_node(b, suffix);
            }
            if let Some(h) = &mut t.head {
                suffix_node(h, suffix);
            }
        }
        StatementBody::Factual { template } => suffix_node(template, suffix),
        StatementBody::Override { over, under } => {
            over.push_str(suffix);
            under.push_str(suffix);
        }
        StatementBody::Penalty { suborder } => {
            for node in suborder {
                suffix_node(node, suffix);
            }
        }
        StatementBody::Reparation(Reparation { key, penalty, target }) => {
            *key = key.as_ref().map(|k| format!("{k}{suffix}"));
            penalty.push_str(suffix);
            target.push_str(suffix);
        }
    }
    out
}

fn suffix_node(node: &mut ConditionNode, suffix: &str) {
    match node {
        ConditionNode::And { key, children }
        | ConditionNode::Or { key, children }
        | ConditionNode::SuborderList { key, children } => {
            *key = key.as_ref().map(|k| format!("{k}{suffix}"));
            for child in children {
                suffix_node(child, suffix);
            }
        }
        ConditionNode::Atom { key, .. } => {
            *key = key.as_ref().map(|k| format!("{k}{suffix}"));
        }
        ConditionNode::Deontic(d) => {
            d.key = d.key.as_ref().map(|k| format!("{k}{suffix}"));
        }
        ConditionNode::ConditionalRef(c) => {
            c.keyref.push_str(suffix);
        }
    }
}
