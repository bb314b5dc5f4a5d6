//! Homogeneous finitely presented monoids: presentations, exact enumeration
//! up to a length bound, divisor sets and controlled maps.

mod controlled;
mod divisors;
mod presentation;
mod table;

pub use controlled::{ControlledMap, MapKind};
pub use divisors::{left_divides, left_divisors, right_divisors, right_lcm_check, LcmReport, LcmVerdict};
pub use presentation::{
    braid, builtin, free, nat, raag, MonoidPresentation, PresentationDoc, PresentationKind, Word,
};
pub use table::{Element, EnumerationTable, DEFAULT_MAX_WORDS};
