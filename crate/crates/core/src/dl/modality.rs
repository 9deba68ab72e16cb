use std::fmt;

/// Deontic modality tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalityTag {
    Obligation,
    Permission,
    Prohibition,
    Right,
}

impl ModalityTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModalityTag::Obligation => "OBL",
            ModalityTag::Permission => "PER",
            ModalityTag::Prohibition => "PRO",
            ModalityTag::Right => "RIGHT",
        }
    }

    pub fn from_str(s: &str) -> Option<ModalityTag> {
        match s {
            "OBL" => Some(ModalityTag::Obligation),
            "PER" => Some(ModalityTag::Permission),
            "PRO" => Some(ModalityTag::Prohibition),
            "RIGHT" => Some(ModalityTag::Right),
            _ => None,
        }
    }
}

/// A modality with its bearer and auxiliary-party slots.
///
/// Slot information from the source markup is folded into the modality
/// itself, so `[OBL:Y:NULL]p` and `[OBL:NULL:NULL]p` are distinct literals.
/// An absent slot prints as the reserved word `NULL`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modality {
    pub tag: ModalityTag,
    pub bearer: Option<String>,
    pub auxiliary: Option<String>,
}

impl Modality {
    pub fn new(tag: ModalityTag) -> Modality {
        Modality { tag, bearer: None, auxiliary: None }
    }

    pub fn with_slots(
        tag: ModalityTag,
        bearer: Option<String>,
        auxiliary: Option<String>,
    ) -> Modality {
        Modality { tag, bearer, auxiliary }
    }

    fn slot(s: &Option<String>) -> &str {
        s.as_deref().unwrap_or("NULL")
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}:{}:{}]",
            self.tag.as_str(),
            Modality::slot(&self.bearer),
            Modality::slot(&self.auxiliary)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_rendering() {
        let m = Modality::with_slots(ModalityTag::Right, Some("Y".into()), Some("Y".into()));
        assert_eq!(m.to_string(), "[RIGHT:Y:Y]");
        assert_eq!(Modality::new(ModalityTag::Obligation).to_string(), "[OBL:NULL:NULL]");
    }
}
