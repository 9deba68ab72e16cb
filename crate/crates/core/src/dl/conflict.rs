use super::literal::ModalLiteral;
use super::modality::{Modality, ModalityTag};

/// The deontic conflict table.
///
/// Two literals conflict when they cannot both be defeasibly concluded.
/// Within one modality this is the classical complement; across modalities
/// the table lists the incompatible pairs, all of which require the bearer
/// and auxiliary-party slots to coincide. The table is data so a different
/// deontic reading can be swapped in.
#[derive(Debug, Clone)]
pub struct ConflictTable {
    /// Tags whose complementary literals conflict (`[T]q` vs `[T]-q`).
    self_opposing: Vec<ModalityTag>,
    /// Whether complementary plain literals conflict (`q` vs `-q`).
    plain_opposing: bool,
    /// Cross-modal pairs: `(left, right, flip)` marks `[left]q` against
    /// `[right]q` (flip = false) or `[right]-q` (flip = true) as conflicting.
    cross: Vec<(ModalityTag, ModalityTag, bool)>,
}

impl ConflictTable {
    /// The standard reading: obligations and prohibitions self-oppose,
    /// `[OBL]q`/`[PRO]q`, `[PER]q`/`[PRO]q` and `[PER]q`/`[OBL]-q` clash.
    /// Permissions are not exclusive (`[PER]q` and `[PER]-q` coexist) and
    /// RIGHT takes no part in any conflict.
    pub fn standard() -> ConflictTable {
        use ModalityTag::*;
        ConflictTable {
            self_opposing: vec![Obligation, Prohibition],
            plain_opposing: true,
            cross: vec![
                (Obligation, Prohibition, false),
                (Permission, Prohibition, false),
                (Permission, Obligation, true),
            ],
        }
    }

    pub fn conflicts(&self, a: &ModalLiteral, b: &ModalLiteral) -> bool {
        if a.atom != b.atom {
            return false;
        }
        match (&a.modality, &b.modality) {
            (None, None) => self.plain_opposing && a.negated != b.negated,
            (Some(ma), Some(mb)) => {
                if !slots_match(ma, mb) {
                    return false;
                }
                if ma.tag == mb.tag {
                    return a.negated != b.negated && self.self_opposing.contains(&ma.tag);
                }
                self.cross.iter().any(|&(l, r, flip)| {
                    let polarity = if flip { a.negated != b.negated } else { a.negated == b.negated };
                    polarity && ((ma.tag, mb.tag) == (l, r) || (mb.tag, ma.tag) == (l, r))
                })
            }
            _ => false,
        }
    }

    /// All literals that would conflict with `l` under this table. Used by
    /// the reasoner to look conflicts up without scanning the whole language.
    pub fn opponents(&self, l: &ModalLiteral) -> Vec<ModalLiteral> {
        let mut out = Vec::new();
        match &l.modality {
            None => {
                if self.plain_opposing {
                    out.push(l.complement());
                }
            }
            Some(m) => {
                if self.self_opposing.contains(&m.tag) {
                    out.push(l.complement());
                }
                for &(left, right, flip) in &self.cross {
                    let other = if m.tag == left {
                        right
                    } else if m.tag == right {
                        left
                    } else {
                        continue;
                    };
                    let mut cand = l.clone();
                    cand.modality = Some(Modality::with_slots(
                        other,
                        m.bearer.clone(),
                        m.auxiliary.clone(),
                    ));
                    if flip {
                        cand.negated = !cand.negated;
                    }
                    out.push(cand);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

fn slots_match(a: &Modality, b: &Modality) -> bool {
    a.bearer == b.bearer && a.auxiliary == b.auxiliary
}

/// Conflict test under the standard table.
pub fn conflicts_with(a: &ModalLiteral, b: &ModalLiteral) -> bool {
    ConflictTable::standard().conflicts(a, b)
}
