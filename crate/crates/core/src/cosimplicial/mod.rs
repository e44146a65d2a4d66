//! The cosimplicial cdgl of Lawrence-Sullivan simplices.

pub mod build;
pub mod check;
pub mod lemma;
pub mod simplex;

pub use build::{build_ln, default_truncation, BuildOptions, HornSolver, LnPresentation, SolveMethod, Tower};
pub use check::{check_conditions, ConditionsReport};
pub use lemma::{check_gamma, gamma_element, verify_lemma, LemmaReport};
pub use simplex::{CosimplicialMap, SimplexAlphabet};
