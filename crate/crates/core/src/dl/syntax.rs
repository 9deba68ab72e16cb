//! Canonical text syntax for modal literals.
//!
//! A literal is written as an optional `[TAG:bearer:aux]` modality prefix
//! (absent slots hold the reserved word `NULL`), an optional `-` for
//! classical negation, and a predicate application: `[OBL:NULL:NULL]-surcharge(X)`.
//! Printing and parsing are mutually inverse.

use thiserror::Error;

use super::atom::{is_variable_name, Atom, Term};
use super::literal::ModalLiteral;
use super::modality::{Modality, ModalityTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid literal '{input}': {reason}")]
pub struct LiteralSyntaxError {
    pub input: String,
    pub reason: String,
}

fn err(input: &str, reason: impl Into<String>) -> LiteralSyntaxError {
    LiteralSyntaxError { input: input.to_string(), reason: reason.into() }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '%' | '.' | '-'))
}

/// Prints the canonical form; inverse of [`parse_literal`].
pub fn print_literal(l: &ModalLiteral) -> String {
    l.to_string()
}

/// Parses a literal in canonical syntax.
pub fn parse_literal(input: &str) -> Result<ModalLiteral, LiteralSyntaxError> {
    let s = input.trim();
    let (modality, rest) = if let Some(stripped) = s.strip_prefix('[') {
        let end = stripped
            .find(']')
            .ok_or_else(|| err(input, "unterminated modality prefix"))?;
        (Some(parse_modality(input, &stripped[..end])?), &stripped[end + 1..])
    } else {
        (None, s)
    };

    let (negated, rest) = match rest.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, rest),
    };

    let atom = parse_atom(input, rest)?;
    Ok(ModalLiteral { negated, modality, atom })
}

fn parse_modality(input: &str, body: &str) -> Result<Modality, LiteralSyntaxError> {
    let parts: Vec<&str> = body.split(':').collect();
    if parts.len() != 3 {
        return Err(err(input, "modality prefix must be [TAG:bearer:aux]"));
    }
    let tag = ModalityTag::from_str(parts[0])
        .ok_or_else(|| err(input, format!("unknown modality tag '{}'", parts[0])))?;
    let slot = |s: &str| -> Result<Option<String>, LiteralSyntaxError> {
        if s == "NULL" {
            Ok(None)
        } else if is_identifier(s) {
            Ok(Some(s.to_string()))
        } else {
            Err(err(input, format!("invalid slot '{s}'")))
        }
    };
    Ok(Modality::with_slots(tag, slot(parts[1])?, slot(parts[2])?))
}

fn parse_atom(input: &str, s: &str) -> Result<Atom, LiteralSyntaxError> {
    let s = s.trim();
    let (name, args) = match s.find('(') {
        None => (s, Vec::new()),
        Some(open) => {
            let name = &s[..open];
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| err(input, "missing closing parenthesis"))?;
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|t| parse_term(input, t.trim()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            (name, args)
        }
    };
    if !is_identifier(name) {
        return Err(err(input, format!("invalid predicate '{name}'")));
    }
    Ok(Atom::new(name, args))
}

fn parse_term(input: &str, token: &str) -> Result<Term, LiteralSyntaxError> {
    if let Some(quoted) = token.strip_prefix('"') {
        let name = quoted
            .strip_suffix('"')
            .ok_or_else(|| err(input, "unterminated quoted constant"))?;
        if !is_identifier(name) {
            return Err(err(input, format!("invalid constant '{name}'")));
        }
        return Ok(Term::Constant(name.to_string()));
    }
    if let Some(name) = token.strip_prefix('?') {
        if !is_identifier(name) {
            return Err(err(input, format!("invalid variable '{name}'")));
        }
        return Ok(Term::Variable(name.to_string()));
    }
    if !is_identifier(token) {
        return Err(err(input, format!("invalid term '{token}'")));
    }
    if is_variable_name(token) {
        Ok(Term::Variable(token.to_string()))
    } else {
        Ok(Term::Constant(token.to_string()))
    }
}
