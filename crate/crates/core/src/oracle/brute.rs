//! Direct, unoptimized reading of the truth conditions.
//!
//! Nothing here shares code with the library evaluator beyond the model
//! accessors: relations are rebuilt from their definitions on every query and
//! minimal worlds are found by comparing all pairs.

use crate::models::{ConditionalModel, RelationSpec, WorldId, WorldSet};
use crate::semantics::Interpretation;
use crate::syntax::{ClauseSet, Comparison, Formula, Node};

/// A relation at one center, as a domain plus an `≤` test.
pub struct BruteRelation<'a> {
    model: &'a ConditionalModel,
    center: WorldId,
    kind: u8,
    domain: Vec<WorldId>,
    agree: Vec<Vec<bool>>,
}

impl BruteRelation<'_> {
    pub fn domain(&self) -> &[WorldId] {
        &self.domain
    }

    pub fn le(&self, u: WorldId, v: WorldId) -> bool {
        if !self.domain.contains(&u) || !self.domain.contains(&v) {
            return false;
        }
        let base = self.model.order(self.center).le(u, v);
        match self.kind {
            0 | 1 => base,
            2 => {
                let cu = self.agree[u].iter().filter(|&&b| b).count();
                let cv = self.agree[v].iter().filter(|&&b| b).count();
                cu > cv || (cu == cv && base)
            }
            _ => {
                let (au, av) = (&self.agree[u], &self.agree[v]);
                let v_sub_u = av.iter().zip(au).all(|(&b, &a)| !b || a);
                (v_sub_u && au != av) || (au == av && base)
            }
        }
    }

    pub fn lt(&self, u: WorldId, v: WorldId) -> bool {
        self.le(u, v) && !self.le(v, u)
    }

    /// Pairwise minimality over `s ∩ domain`.
    pub fn min(&self, s: &[WorldId]) -> Vec<WorldId> {
        let cand: Vec<WorldId> = s.iter().copied().filter(|u| self.domain.contains(u)).collect();
        cand.iter()
            .copied()
            .filter(|&v| !cand.iter().any(|&u| self.lt(u, v)))
            .collect()
    }
}

pub fn brute_relation<'a>(
    m: &'a ConditionalModel,
    w: WorldId,
    spec: &RelationSpec,
    x: Interpretation,
) -> BruteRelation<'a> {
    let entertained: Vec<WorldId> = m.world_ids().filter(|&u| m.order(w).domain().contains(u)).collect();
    let (kind, clause) = match spec {
        RelationSpec::Base => (0, None),
        RelationSpec::CpRestricted(g) => (1, Some(g)),
        RelationSpec::Counting(g) => (2, Some(g)),
        RelationSpec::Superset(g) => (3, Some(g)),
    };
    let agree: Vec<Vec<bool>> = match clause {
        None => vec![Vec::new(); m.len()],
        Some(g) => m
            .world_ids()
            .map(|u| {
                g.iter()
                    .map(|gm| brute_satisfies(m, u, gm, x) == brute_satisfies(m, w, gm, x))
                    .collect()
            })
            .collect(),
    };
    let domain = if kind == 1 {
        entertained
            .into_iter()
            .filter(|&u| agree[u].iter().all(|&b| b))
            .collect()
    } else {
        entertained
    };
    BruteRelation {
        model: m,
        center: w,
        kind,
        domain,
        agree,
    }
}

pub fn brute_extension(m: &ConditionalModel, f: &Formula, x: Interpretation) -> Vec<WorldId> {
    m.world_ids().filter(|&w| brute_satisfies(m, w, f, x)).collect()
}

/// Truth at `w`, straight from the clauses.
pub fn brute_satisfies(m: &ConditionalModel, w: WorldId, f: &Formula, x: Interpretation) -> bool {
    match f.node() {
        Node::Atom(p) => m.valuation(p).contains(w),
        Node::Bottom => false,
        Node::Not(a) => !brute_satisfies(m, w, a, x),
        Node::Or(a, b) => brute_satisfies(m, w, a, x) || brute_satisfies(m, w, b, x),
        Node::CpBox {
            antecedent,
            clause,
            consequent,
        } => {
            let spec = spec_for(x, clause);
            let rel = brute_relation(m, w, &spec, x);
            let ante = brute_extension(m, antecedent, x);
            rel.min(&ante).into_iter().all(|v| brute_satisfies(m, v, consequent, x))
        }
        Node::Compare { kind, left, right } => {
            let spec = match kind {
                Comparison::Plain => RelationSpec::Base,
                Comparison::Restricted(g) => RelationSpec::CpRestricted(g.clone()),
                Comparison::Counting(g) => RelationSpec::Counting(g.clone()),
                Comparison::Superset(g) => RelationSpec::Superset(g.clone()),
            };
            let rel = brute_relation(m, w, &spec, x);
            rel.domain().iter().all(|&u| {
                !brute_satisfies(m, u, right, x)
                    || rel
                        .domain()
                        .iter()
                        .any(|&v| brute_satisfies(m, v, left, x) && rel.le(v, u))
            })
        }
    }
}

fn spec_for(x: Interpretation, g: &ClauseSet) -> RelationSpec {
    match x {
        Interpretation::Cp => RelationSpec::CpRestricted(g.clone()),
        Interpretation::Nc => RelationSpec::Counting(g.clone()),
        Interpretation::Ms => RelationSpec::Superset(g.clone()),
    }
}

/// The pairwise-scan minimum as a world set.
pub fn brute_min(m: &ConditionalModel, w: WorldId, spec: &RelationSpec, s: &WorldSet, x: Interpretation) -> WorldSet {
    let members: Vec<WorldId> = s.iter().collect();
    WorldSet::from_worlds(m.len(), brute_relation(m, w, spec, x).min(&members))
}
