use std::fmt;

/// A term of an atom: either a variable or a constant.
///
/// The textual convention follows the rule corpus: a variable is a single
/// uppercase letter optionally followed by digits (`X`, `Y`, `X2`); every
/// other identifier (`g1`, `italy`, `JohnDoe`) names a constant. Terms built
/// from explicit markup (XML `Var` / `Ind` elements) may fall outside the
/// convention; the canonical text syntax escapes those so printing stays
/// invertible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Variable(String),
    Constant(String),
}

impl Term {
    /// Classifies a bare identifier by the textual convention.
    pub fn from_ident(name: &str) -> Term {
        if is_variable_name(name) {
            Term::Variable(name.to_string())
        } else {
            Term::Constant(name.to_string())
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Variable(n) | Term::Constant(n) => n,
        }
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }
}

/// True for identifiers that read as variables: one uppercase letter plus
/// optional digits.
pub(crate) fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_uppercase() => chars.all(|c| c.is_ascii_digit()),
        _ => false,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Escape terms that would re-classify under the convention.
            Term::Variable(n) if !is_variable_name(n) => write!(f, "?{n}"),
            Term::Constant(n) if is_variable_name(n) => write!(f, "\"{n}\""),
            Term::Variable(n) | Term::Constant(n) => write!(f, "{n}"),
        }
    }
}

/// An n-ary predicate application, e.g. `surcharge(X)` or `premiumCustomer(JohnDoe)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Atom {
        let predicate = predicate.into();
        debug_assert!(!predicate.is_empty(), "predicate must be non-empty");
        Atom { predicate, args }
    }

    /// Zero-arity atom.
    pub fn prop(predicate: impl Into<String>) -> Atom {
        Atom::new(predicate, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Variable(n) => Some(n.as_str()),
            Term::Constant(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_variable())
    }

    /// Replaces every occurrence of variable `var` with `constant`.
    pub fn substitute(&self, var: &str, constant: &str) -> Atom {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Variable(n) if n == var => Term::Constant(constant.to_string()),
                other => other.clone(),
            })
            .collect();
        Atom::new(self.predicate.clone(), args)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{arg}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_follows_convention() {
        assert!(Term::from_ident("X").is_variable());
        assert!(Term::from_ident("Y2").is_variable());
        assert!(!Term::from_ident("g1").is_variable());
        assert!(!Term::from_ident("JohnDoe").is_variable());
        assert!(!Term::from_ident("italy").is_variable());
    }

    #[test]
    fn display_escapes_off_convention_terms() {
        assert_eq!(Term::Constant("X".into()).to_string(), "\"X\"");
        assert_eq!(Term::Variable("ABC".into()).to_string(), "?ABC");
        assert_eq!(Term::Constant("JohnDoe".into()).to_string(), "JohnDoe");
    }

    #[test]
    fn substitute_only_touches_matching_variable() {
        let a = Atom::new("rel", vec![Term::from_ident("X"), Term::from_ident("Y")]);
        let g = a.substitute("X", "g1");
        assert_eq!(g.to_string(), "rel(g1,Y)");
    }
}
