//! Model checking for ceteris paribus counterfactuals.
//!
//! A conditional model assigns every world a similarity order over the
//! worlds it entertains. `[φ, Γ]ψ` holds at `w` when the closest φ-worlds,
//! compared only among worlds that keep Γ fixed, are ψ-worlds. "Keeping Γ
//! fixed" has three readings, selected by [`Interpretation`]:
//!
//! - `Cp`: only worlds agreeing with `w` on every member of Γ count
//! - `Nc`: worlds agreeing on more members of Γ come first
//! - `Ms`: worlds whose agreement sets are supersets come first
//!
//! ```
//! use ceteris::{builtin_model, parse_formula, satisfies, Interpretation};
//!
//! let fine = builtin_model("fine").unwrap();
//! let w = fine.world("w").unwrap();
//! let f = parse_formula("[p, {m}] h").unwrap();
//! assert!(satisfies(&fine, w, &f, Interpretation::Cp));
//! assert!(!satisfies(&fine, w, &parse_formula("p cf> h").unwrap(), Interpretation::Cp));
//! ```

pub mod cli;
pub mod dynamics;
pub mod models;
pub mod oracle;
pub mod semantics;
pub mod syntax;
pub mod translation;

pub use dynamics::{update, UpdateDescriptor};
pub use models::{parse_model, render_model, ConditionalModel, ModelError, RelationSpec, WorldId, WorldSet};
pub use oracle::builtin_model;
pub use semantics::{extension, satisfies, Interpretation};
pub use syntax::{parse_formula, render_formula, ClauseSet, Formula, ParseError};
pub use translation::{translate_full, TranslationBudget, TranslationError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Translation(#[from] TranslationError),
    #[error(transparent)]
    Dynamics(#[from] dynamics::DynamicsError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
