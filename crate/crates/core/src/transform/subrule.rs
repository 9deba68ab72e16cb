//! Naming convention for rules split out of one statement.
//!
//! A disjunctive body split appends a hyphen and a 1-based number
//! (`ruletemplate3-1`, `ruletemplate3-2`); a conjunctive head split appends a
//! letter `a`-`z` after the number (`ruletemplate3-1a`). A statement that
//! splits neither way keeps its base name.

use crate::transform::error::TransformError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubruleName {
    pub base: String,
    pub or_index: Option<u32>,
    pub and_letter: Option<char>,
}

impl SubruleName {
    pub fn plain(base: impl Into<String>) -> SubruleName {
        SubruleName { base: base.into(), or_index: None, and_letter: None }
    }

    pub fn render(&self) -> String {
        match (self.or_index, self.and_letter) {
            (None, None) => self.base.clone(),
            (Some(n), None) => format!("{}-{n}", self.base),
            (Some(n), Some(c)) => format!("{}-{n}{c}", self.base),
            // A letter never appears without an index.
            (None, Some(c)) => format!("{}-1{c}", self.base),
        }
    }

    /// Recovers the name parts from a rendered label. Inverse of
    /// [`SubruleName::render`] on generated names.
    pub fn parse(label: &str) -> SubruleName {
        if let Some(dash) = label.rfind('-') {
            let suffix = &label[dash + 1..];
            let (digits, letter) = match suffix.chars().last() {
                Some(c) if c.is_ascii_lowercase() => (&suffix[..suffix.len() - 1], Some(c)),
                _ => (suffix, None),
            };
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                if let Ok(n) = digits.parse::<u32>() {
                    return SubruleName {
                        base: label[..dash].to_string(),
                        or_index: Some(n),
                        and_letter: letter,
                    };
                }
            }
        }
        SubruleName::plain(label)
    }
}

/// Labels for the rules a statement splits into: `n_or` disjunctive body
/// branches times `n_and` conjunctive head alternatives, branch-major.
pub fn subrule_labels(
    base: &str,
    n_or: usize,
    n_and: usize,
) -> Result<Vec<SubruleName>, TransformError> {
    assert!(n_or >= 1 && n_and >= 1, "split counts start at 1");
    if n_and > 26 {
        return Err(TransformError::LabelOverflow { statement: base.to_string() });
    }
    if n_or == 1 && n_and == 1 {
        return Ok(vec![SubruleName::plain(base)]);
    }
    let mut out = Vec::with_capacity(n_or * n_and);
    for i in 1..=n_or {
        for j in 0..n_and {
            out.push(SubruleName {
                base: base.to_string(),
                or_index: Some(i as u32),
                and_letter: if n_and == 1 {
                    None
                } else {
                    Some((b'a' + j as u8) as char)
                },
            });
        }
    }
    Ok(out)
}
