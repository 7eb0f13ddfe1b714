//! Dynamic ceteris paribus updates `[Γ]_X M`.
//!
//! An update replaces the similarity order of every world by the relation a
//! `[φ, Γ]` modality would have used there, so that `[φ, Γ]ψ` in `M` becomes
//! `φ □→ ψ` in the updated model. This only works for modality-free φ and ψ:
//! nested modalities are evaluated against the updated orders, and updates
//! do not iterate the way nested static modalities do.

use thiserror::Error;

use crate::models::{ConditionalModel, SimilarityOrder, WorldId};
use crate::semantics::{Evaluator, Interpretation};
use crate::syntax::{ClauseSet, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateDescriptor {
    pub clause: ClauseSet,
    pub interpretation: Interpretation,
}

impl UpdateDescriptor {
    pub fn new(clause: ClauseSet, interpretation: Interpretation) -> Self {
        UpdateDescriptor { clause, interpretation }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DynamicsError {
    #[error(
        "{which} `{formula}` contains a modality; static and dynamic readings only coincide for modality-free formulas"
    )]
    ModalOperand { which: &'static str, formula: String },
}

/// `[Γ]_X M`. Worlds and valuation are untouched.
///
/// Under `Cp` worlds outside `[x]_Γ` leave `W_x`. Under `Ms` the new order may
/// be partial, in which case it is kept as an explicit relation; validate
/// such models with [`ValidationMode::Relaxed`](crate::models::ValidationMode).
///
/// Updating an updated model is allowed but is not the same as nesting
/// modalities.
pub fn update(m: &ConditionalModel, d: &UpdateDescriptor) -> ConditionalModel {
    let n = m.len();
    let mut ev = Evaluator::new(m, d.interpretation);
    let spec = d.interpretation.relation_spec(d.clause.clone());
    let orders = m
        .world_ids()
        .map(|x| {
            let rel = ev.relation(x, &spec);
            SimilarityOrder::from_relation(n, x, rel.domain(), |u, v| rel.le(u, v)).normalized()
        })
        .collect();
    m.with_orders(orders)
}

/// Truth of `[φ, Γ]ψ` in `m` and of `φ □→ ψ` in `[Γ]_X m`, at `w`, with no
/// restriction on φ and ψ.
pub fn static_and_dynamic(
    m: &ConditionalModel,
    w: WorldId,
    phi: &Formula,
    clause: &ClauseSet,
    psi: &Formula,
    x: Interpretation,
) -> (bool, bool) {
    let stat = Evaluator::new(m, x).satisfies(w, &Formula::cp_box(phi.clone(), clause.clone(), psi.clone()));
    let updated = update(m, &UpdateDescriptor::new(clause.clone(), x));
    let dynamic = Evaluator::new(&updated, x).satisfies(w, &Formula::counterfactual(phi.clone(), psi.clone()));
    (stat, dynamic)
}

/// Whether the static and dynamic readings agree; φ and ψ must be
/// modality-free.
pub fn check_dynamic_static_agreement(
    m: &ConditionalModel,
    w: WorldId,
    phi: &Formula,
    clause: &ClauseSet,
    psi: &Formula,
    x: Interpretation,
) -> Result<bool, DynamicsError> {
    for (which, f) in [("antecedent", phi), ("consequent", psi)] {
        if f.is_modal() {
            return Err(DynamicsError::ModalOperand {
                which,
                formula: f.to_string(),
            });
        }
    }
    let (s, d) = static_and_dynamic(m, w, phi, clause, psi, x);
    Ok(s == d)
}
