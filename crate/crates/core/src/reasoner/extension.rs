use std::collections::BTreeSet;
use std::fmt;

use crate::dl::{ConclusionTag, ModalLiteral, ProofLevel, Sign};

/// The four conclusion sets of a theory.
///
/// `plus_delta`/`minus_delta` hold literals definitely proved/rejected using
/// facts and strict rules only; `plus_partial`/`minus_partial` hold the
/// defeasible conclusions. Definite provability implies defeasible
/// provability, and defeasible rejection implies definite rejection.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extension {
    pub plus_delta: BTreeSet<ModalLiteral>,
    pub minus_delta: BTreeSet<ModalLiteral>,
    pub plus_partial: BTreeSet<ModalLiteral>,
    pub minus_partial: BTreeSet<ModalLiteral>,
}

impl Extension {
    /// Membership of a tagged conclusion. Literals outside every set are
    /// unproven: positive tags are false, negative tags are true only if the
    /// literal is absent from the whole language (callers that know the
    /// language should prefer [`crate::reasoner::prove`]).
    pub fn contains(&self, tag: &ConclusionTag) -> bool {
        let set = match (tag.sign, tag.level) {
            (Sign::Plus, ProofLevel::Definite) => &self.plus_delta,
            (Sign::Minus, ProofLevel::Definite) => &self.minus_delta,
            (Sign::Plus, ProofLevel::Defeasible) => &self.plus_partial,
            (Sign::Minus, ProofLevel::Defeasible) => &self.minus_partial,
        };
        set.contains(&tag.literal)
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, set) in [
            ("+D", &self.plus_delta),
            ("-D", &self.minus_delta),
            ("+d", &self.plus_partial),
            ("-d", &self.minus_partial),
        ] {
            write!(f, "{name}:")?;
            for lit in set {
                write!(f, " {lit}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
