//! Massey products: defining systems, triple and n-fold products, exhaustive
//! value sets over prime fields, scaling by central classes, and restricted
//! powers.

mod defining;
mod exhaustive;
mod restricted;
mod scaling;
mod verdict;

pub use defining::{
    c_cocycle, c_of, entry_degree, entry_target, validate_defining_system, DefiningSystem,
    SystemIssue,
    SystemReport, Violation,
};
pub use exhaustive::{budget_from_env, massey_nfold_exhaustive, MasseyValueSet, DEFAULT_BUDGET};
pub use restricted::{restricted_power, RestrictedPowerResult};
pub use scaling::{scale_defining_system, ScaledSystem};
pub use verdict::{
    massey_nfold_witness, pushforward_massey, triple_massey, Essentiality, MasseyStatus,
    MasseyVerdict, Obstruction,
};
