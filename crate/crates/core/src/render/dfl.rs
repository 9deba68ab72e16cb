//! Line-based plain-text theory format.
//!
//! One item per line, LF-terminated:
//!
//! ```text
//! # comment
//! >> premiumCustomer(JohnDoe)
//! c1: base(X) -> def(X)
//! r1: specialOrder(X) => [OBL:NULL:NULL]surcharge(X)
//! ps1: goods(X) => [OBL:NULL:NULL]payIn7days(X) (x) [OBL:NULL:NULL]payWith5%Interest(X)
//! d1: exception(X) ~> -surcharge(X)
//! r2 > r1
//! ```
//!
//! Facts open with `>>`, antecedent literals are comma-separated, `->`/`=>`/`~>`
//! mark strict, defeasible and defeater rules, and chain items are joined by
//! ` (x) ` (defeasible rules only). Rendering is deterministic — facts first,
//! rules by label, superiority pairs lexicographically — and parsing the
//! rendered text reproduces the theory exactly.

use std::fmt::Write as _;

use thiserror::Error;

use crate::dl::syntax::parse_literal;
use crate::dl::{Label, ModalLiteral, OmegaChain, Rule, RuleType, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DflError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate rule label '{label}'")]
    DuplicateLabel { line: usize, label: String },
}

/// Serializes a theory to DFL text.
pub fn render_dfl(theory: &Theory) -> String {
    let mut out = String::new();
    for fact in &theory.facts {
        let _ = writeln!(out, ">> {fact}");
    }
    for rule in theory.rules() {
        let _ = writeln!(out, "{rule}");
    }
    for (winner, loser) in &theory.superiority {
        let _ = writeln!(out, "{winner} > {loser}");
    }
    out
}

/// Parses DFL text into a theory.
pub fn parse_dfl(text: &str) -> Result<Theory, DflError> {
    let mut facts = Vec::new();
    let mut rules: Vec<Rule> = Vec::new();
    let mut superiority = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix(">>") {
            facts.push(literal(rest, line_no)?);
        } else if let Some(colon) = line.find(':') {
            let rule = parse_rule(&line[..colon], &line[colon + 1..], line_no)?;
            if rules.iter().any(|r| r.label == rule.label) {
                return Err(DflError::DuplicateLabel { line: line_no, label: rule.label.0 });
            }
            rules.push(rule);
        } else if line.contains('>') {
            superiority.push(parse_superiority(line, line_no)?);
        } else {
            return Err(syntax(line_no, "expected a fact, rule or superiority statement"));
        }
    }

    Ok(Theory::new(facts, rules, superiority))
}

fn syntax(line: usize, message: impl Into<String>) -> DflError {
    DflError::Syntax { line, message: message.into() }
}

fn literal(s: &str, line: usize) -> Result<ModalLiteral, DflError> {
    parse_literal(s).map_err(|e| syntax(line, e.to_string()))
}

fn parse_rule(label: &str, rest: &str, line: usize) -> Result<Rule, DflError> {
    let label = label.trim();
    if label.is_empty() || label.contains('>') || label.contains(char::is_whitespace) {
        return Err(syntax(line, format!("invalid rule label '{label}'")));
    }

    // '>' occurs only inside the rule arrow, so locate the arrow through it.
    let gt = rest
        .find('>')
        .ok_or_else(|| syntax(line, "missing rule arrow"))?;
    let rtype = match rest[..gt].chars().last() {
        Some('-') => RuleType::Strict,
        Some('=') => RuleType::Defeasible,
        Some('~') => RuleType::Defeater,
        _ => return Err(syntax(line, "missing rule arrow")),
    };

    let body_text = rest[..gt - 1].trim();
    let antecedent = if body_text.is_empty() {
        Vec::new()
    } else {
        body_text
            .split(',')
            .map(|s| literal(s, line))
            .collect::<Result<Vec<_>, _>>()?
    };

    let head_text = rest[gt + 1..].trim();
    if head_text.is_empty() {
        return Err(syntax(line, "rule has no head literal"));
    }
    let items: Vec<&str> = head_text.split(" (x) ").collect();
    if items.len() > 1 && rtype != RuleType::Defeasible {
        return Err(syntax(line, "reparation chains are only allowed on defeasible rules"));
    }
    let head = OmegaChain::new(
        items
            .into_iter()
            .map(|s| literal(s, line))
            .collect::<Result<Vec<_>, _>>()?,
    );

    Ok(Rule::new(label, rtype, antecedent, head))
}

fn parse_superiority(line: &str, line_no: usize) -> Result<(Label, Label), DflError> {
    let mut parts = line.splitn(2, '>');
    let winner = parts.next().unwrap_or("").trim();
    let loser = parts.next().unwrap_or("").trim();
    if winner.is_empty() || loser.is_empty() || loser.contains('>') {
        return Err(syntax(line_no, "superiority must be 'winner > loser'"));
    }
    Ok((Label::new(winner), Label::new(loser)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DISCOUNT: &str = "\
r1: specialOrder(X) => -Discount(X)
r2: premiumCustomer(X) => Discount(X)
r3: promotion(X) => -Discount(X)
r3 > r2
r2 > r1
";

    #[test]
    fn parses_the_discount_theory() {
        let t = parse_dfl(DISCOUNT).unwrap();
        assert_eq!(t.rules().len(), 3);
        assert_eq!(t.superiority.len(), 2);
        assert!(t.validate().is_ok());
    }

    #[test]
    fn render_parse_round_trip() {
        let text = "\
>> premiumCustomer(JohnDoe)
>> specialOrder(g1)
c1: premiumCustomer(X) -> customer(X)
d1: odd(X) ~> -customer(X)
ps1: goods(X),invoice(X) => [OBL:NULL:NULL]payIn7days(X) (x) [OBL:NULL:NULL]payWith5%Interest(X)
r0: => [PER:Y:NULL]rel1(X)
ps1 > c1
";
        let t = parse_dfl(text).unwrap();
        assert_eq!(render_dfl(&t), text);
        assert_eq!(parse_dfl(&render_dfl(&t)).unwrap(), t);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let t = parse_dfl("# header\n\n>> p\n").unwrap();
        assert_eq!(t.facts.len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_dfl(">> p\nr1: a =>\n") {
            Err(DflError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_dfl("r1: => a\nr1: => b\n") {
            Err(DflError::DuplicateLabel { line, label }) => {
                assert_eq!((line, label.as_str()), (2, "r1"));
            }
            other => panic!("expected duplicate label, got {other:?}"),
        }
        assert!(parse_dfl("r1: a -> b (x) c\n").is_err());
        assert!(parse_dfl("nonsense\n").is_err());
    }

    #[test]
    fn empty_text_is_the_empty_theory() {
        assert_eq!(parse_dfl("").unwrap(), Theory::empty());
        assert_eq!(render_dfl(&Theory::empty()), "");
    }
}
