//! Theory serialization: LegalRuleML rendering and the DFL text format.

mod dfl;
mod lrml;

pub use dfl::{parse_dfl, render_dfl, DflError};
pub use lrml::{equivalent_modulo_labels, render_lrml, theory_to_document};
