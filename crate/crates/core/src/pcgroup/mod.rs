//! Polycyclic presentations of finite solvable groups: parsing, collection
//! to normal form, consistency checks, and subgroup machinery.
//!
//! Conventions: `x^y = y^-1 x y` and `[x, y] = x^-1 y^-1 x y`.

mod collect;
mod consistency;
mod enumerate;
mod parse;
mod presentation;
mod series;
mod subgroup;

pub use consistency::{ConsistencyReport, OverlapFailure};
pub use enumerate::{default_max_order, ConjugacyClass, FiniteGroup, DEFAULT_MAX_ORDER, MAX_ORDER_ENV};
pub use parse::{parse_document, parse_presentation, ParsedDocument, METADATA_KEYS};
pub use presentation::{GroupElement, PcPresentation};
pub(crate) use presentation::PresentationBuilder;
pub use subgroup::Subgroup;

#[cfg(test)]
mod tests;
