use std::fmt;

use thiserror::Error;

use super::atom::Atom;
use super::modality::{Modality, ModalityTag};

/// An atom together with classical negation and an optional modality.
///
/// This is the unit of premises, conclusions and facts. Nesting of modal
/// operators is not representable: a literal carries at most one modality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModalLiteral {
    pub negated: bool,
    pub modality: Option<Modality>,
    pub atom: Atom,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModalityError {
    #[error("compliance/violation sets are defined only for plain, OBL and PRO literals, got {tag}")]
    Unsupported { tag: &'static str },
}

impl ModalLiteral {
    pub fn plain(atom: Atom) -> ModalLiteral {
        ModalLiteral { negated: false, modality: None, atom }
    }

    pub fn negative(atom: Atom) -> ModalLiteral {
        ModalLiteral { negated: true, modality: None, atom }
    }

    pub fn modal(modality: Modality, atom: Atom) -> ModalLiteral {
        ModalLiteral { negated: false, modality: Some(modality), atom }
    }

    pub fn with_negation(mut self, negated: bool) -> ModalLiteral {
        self.negated = negated;
        self
    }

    pub fn tag(&self) -> Option<ModalityTag> {
        self.modality.as_ref().map(|m| m.tag)
    }

    /// Flips the classical negation; the modality is untouched.
    pub fn complement(&self) -> ModalLiteral {
        ModalLiteral { negated: !self.negated, ..self.clone() }
    }

    /// The literal with its modality stripped (negation kept).
    pub fn bare(&self) -> ModalLiteral {
        ModalLiteral { negated: self.negated, modality: None, atom: self.atom.clone() }
    }

    /// Literals that must all hold for this literal to count as complied with.
    ///
    /// Plain `q` needs `q` itself; `[OBL]q` needs `[OBL]q` and `q`;
    /// `[PRO]q` needs `[PRO]q` and `-q`.
    pub fn comply_set(&self) -> Result<Vec<ModalLiteral>, ModalityError> {
        match self.tag() {
            None => Ok(vec![self.clone()]),
            Some(ModalityTag::Obligation) => Ok(vec![self.clone(), self.bare()]),
            Some(ModalityTag::Prohibition) => Ok(vec![self.clone(), self.bare().complement()]),
            Some(other) => Err(ModalityError::Unsupported { tag: other.as_str() }),
        }
    }

    /// Literals that must all hold for this literal to count as violated.
    ///
    /// Plain `q` is violated by `-q`; `[OBL]q` by `[OBL]q` and `-q`;
    /// `[PRO]q` by `[PRO]q` and `q`.
    pub fn violate_set(&self) -> Result<Vec<ModalLiteral>, ModalityError> {
        match self.tag() {
            None => Ok(vec![self.complement()]),
            Some(ModalityTag::Obligation) => Ok(vec![self.clone(), self.bare().complement()]),
            Some(ModalityTag::Prohibition) => Ok(vec![self.clone(), self.bare()]),
            Some(other) => Err(ModalityError::Unsupported { tag: other.as_str() }),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }
}

impl fmt::Display for ModalLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = &self.modality {
            write!(f, "{m}")?;
        }
        if self.negated {
            write!(f, "-")?;
        }
        write!(f, "{}", self.atom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl::atom::Term;

    fn lit(s: &str) -> ModalLiteral {
        crate::dl::syntax::parse_literal(s).unwrap()
    }

    #[test]
    fn complement_is_an_involution() {
        let l = lit("[OBL:NULL:NULL]surcharge(X)");
        assert_eq!(l.complement().complement(), l);
        assert_eq!(lit("p").complement(), lit("-p"));
        assert_eq!(lit("-p").complement(), lit("p"));
        assert_eq!(
            l.complement().to_string(),
            "[OBL:NULL:NULL]-surcharge(X)"
        );
    }

    #[test]
    fn comply_and_violate_sets() {
        let obl = lit("[OBL:NULL:NULL]a");
        assert_eq!(obl.comply_set().unwrap(), vec![lit("[OBL:NULL:NULL]a"), lit("a")]);
        assert_eq!(obl.violate_set().unwrap(), vec![lit("[OBL:NULL:NULL]a"), lit("-a")]);

        let pro = lit("[PRO:NULL:NULL]a");
        assert_eq!(pro.comply_set().unwrap(), vec![lit("[PRO:NULL:NULL]a"), lit("-a")]);
        assert_eq!(pro.violate_set().unwrap(), vec![lit("[PRO:NULL:NULL]a"), lit("a")]);

        let plain = lit("q");
        assert_eq!(plain.comply_set().unwrap(), vec![lit("q")]);
        assert_eq!(plain.violate_set().unwrap(), vec![lit("-q")]);
    }

    #[test]
    fn comply_set_rejects_permission_and_right() {
        assert!(lit("[PER:NULL:NULL]a").comply_set().is_err());
        assert!(lit("[RIGHT:Y:Y]a").violate_set().is_err());
    }

    #[test]
    fn negated_inner_literal_keeps_its_polarity_in_the_companion() {
        // comply([OBL]-p) = {[OBL]-p, -p}; violate([OBL]-p) = {[OBL]-p, p}
        let l = lit("[OBL:NULL:NULL]-p(X)");
        assert_eq!(l.comply_set().unwrap()[1], lit("-p(X)"));
        assert_eq!(l.violate_set().unwrap()[1], lit("p(X)"));
        assert!(l.violate_set().unwrap()[1].atom.args[0] == Term::Variable("X".into()));
    }
}
