use std::fmt;

use super::literal::ModalLiteral;

/// A non-empty reparation chain over modal literals.
///
/// Associativity is implicit in the flat representation. Normalization
/// applies contraction: repeated items vanish after their first occurrence,
/// preserving the order of first occurrences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OmegaChain {
    items: Vec<ModalLiteral>,
}

impl OmegaChain {
    /// Builds a chain from its items. Panics on an empty list: a rule head
    /// always carries at least one literal.
    pub fn new(items: Vec<ModalLiteral>) -> OmegaChain {
        assert!(!items.is_empty(), "a reparation chain must be non-empty");
        OmegaChain { items }
    }

    pub fn singleton(item: ModalLiteral) -> OmegaChain {
        OmegaChain { items: vec![item] }
    }

    /// Contraction: drops every item equal to an earlier one.
    pub fn normalized(&self) -> OmegaChain {
        let mut seen: Vec<&ModalLiteral> = Vec::new();
        let mut items = Vec::with_capacity(self.items.len());
        for item in &self.items {
            if !seen.contains(&item) {
                seen.push(item);
                items.push(item.clone());
            }
        }
        OmegaChain { items }
    }

    pub fn items(&self) -> &[ModalLiteral] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> &ModalLiteral {
        &self.items[0]
    }

    /// Appends items to the chain (used when penalties extend a rule head).
    pub fn extended(&self, tail: impl IntoIterator<Item = ModalLiteral>) -> OmegaChain {
        let mut items = self.items.clone();
        items.extend(tail);
        OmegaChain { items }
    }
}

impl fmt::Display for OmegaChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, " (x) ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl::syntax::parse_literal;

    fn chain(items: &[&str]) -> OmegaChain {
        OmegaChain::new(items.iter().map(|s| parse_literal(s).unwrap()).collect())
    }

    #[test]
    fn contraction_keeps_first_occurrence() {
        assert_eq!(chain(&["a", "b", "a"]).normalized(), chain(&["a", "b"]));
        assert_eq!(chain(&["a"]).normalized(), chain(&["a"]));
        assert_eq!(chain(&["a", "b", "c"]).normalized(), chain(&["a", "b", "c"]));
    }

    #[test]
    fn normalization_is_idempotent() {
        let c = chain(&["a", "b", "a", "c", "b"]);
        assert_eq!(c.normalized(), c.normalized().normalized());
    }

    #[test]
    #[should_panic(expected = "non-empty")]
    fn empty_chain_is_rejected() {
        OmegaChain::new(Vec::new());
    }
}
