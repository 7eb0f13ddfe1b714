//! Truth of formulas at worlds of a conditional model.
//!
//! Ceteris paribus conditionals are read under one of three interpretations:
//! strict agreement (`CP`), agreement counting (`NC`) and maximal agreement
//! sets (`MS`). Clause members and nested modalities are evaluated under the
//! same interpretation as the enclosing operator.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::models::{ConditionalModel, Relation, RelationKind, RelationSpec, WorldId, WorldSet};
use crate::syntax::{ClauseSet, Comparison, Formula, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpretation {
    /// strict agreement on the clause
    Cp,
    /// naive counting of agreements
    Nc,
    /// maximal supersets of agreements
    Ms,
}

impl Interpretation {
    pub const ALL: [Interpretation; 3] = [Interpretation::Cp, Interpretation::Nc, Interpretation::Ms];

    pub fn as_str(self) -> &'static str {
        match self {
            Interpretation::Cp => "cp",
            Interpretation::Nc => "nc",
            Interpretation::Ms => "ms",
        }
    }

    /// The relation a `[φ, Γ]ψ` at some world ranges over.
    pub fn relation_spec(self, clause: ClauseSet) -> RelationSpec {
        match self {
            Interpretation::Cp => RelationSpec::CpRestricted(clause),
            Interpretation::Nc => RelationSpec::Counting(clause),
            Interpretation::Ms => RelationSpec::Superset(clause),
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str().to_uppercase())
    }
}

impl FromStr for Interpretation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cp" => Ok(Interpretation::Cp),
            "nc" => Ok(Interpretation::Nc),
            "ms" => Ok(Interpretation::Ms),
            other => Err(format!("unknown interpretation `{other}` (expected cp, nc or ms)")),
        }
    }
}

/// `A_Γ(u, v)`: the clause members on which two worlds agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementSet {
    members: Vec<Formula>,
    bits: FixedBitSet,
}

impl AgreementSet {
    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    /// Positions within the clause's canonical order.
    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn as_clause(&self) -> ClauseSet {
        ClauseSet::new(self.members.iter().cloned())
    }
}

fn agreement_bits(exts: &[WorldSet], u: WorldId, v: WorldId) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(exts.len());
    for (i, e) in exts.iter().enumerate() {
        if e.contains(u) == e.contains(v) {
            b.insert(i);
        }
    }
    b
}

/// Memoizing evaluator for one model and interpretation.
///
/// Extensions are cached per shared formula node, so formulas with heavy
/// subterm sharing (such as translation output) are evaluated once per node.
pub struct Evaluator<'m> {
    model: &'m ConditionalModel,
    interp: Interpretation,
    memo: HashMap<usize, (Formula, WorldSet)>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m ConditionalModel, interp: Interpretation) -> Self {
        Evaluator {
            model,
            interp,
            memo: HashMap::new(),
        }
    }

    pub fn model(&self) -> &'m ConditionalModel {
        self.model
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interp
    }

    pub fn satisfies(&mut self, w: WorldId, f: &Formula) -> bool {
        self.extension(f).contains(w)
    }

    /// `⟦f⟧`
    pub fn extension(&mut self, f: &Formula) -> WorldSet {
        if let Some((_, ext)) = self.memo.get(&f.addr()) {
            return ext.clone();
        }
        let ext = self.compute(f);
        self.memo.insert(f.addr(), (f.clone(), ext.clone()));
        ext
    }

    fn compute(&mut self, f: &Formula) -> WorldSet {
        let m = self.model;
        let n = m.len();
        match f.node() {
            Node::Atom(p) => m.valuation(p),
            Node::Bottom => WorldSet::empty(n),
            Node::Not(a) => self.extension(a).complement(),
            Node::Or(a, b) => self.extension(a).union(&self.extension(b)),
            Node::CpBox {
                antecedent,
                clause,
                consequent,
            } => {
                let ante = self.extension(antecedent);
                let cons = self.extension(consequent);
                let spec = self.interp.relation_spec(clause.clone());
                let exts = self.clause_extensions(clause);
                WorldSet::from_worlds(
                    n,
                    m.world_ids()
                        .filter(|&w| realize(m, w, &spec, &exts).min(&ante).is_subset(&cons)),
                )
            }
            Node::Compare { kind, left, right } => {
                let l = self.extension(left);
                let r = self.extension(right);
                let spec = match kind {
                    Comparison::Plain => RelationSpec::Base,
                    Comparison::Counting(g) => RelationSpec::Counting(g.clone()),
                    Comparison::Restricted(g) => RelationSpec::CpRestricted(g.clone()),
                    Comparison::Superset(g) => RelationSpec::Superset(g.clone()),
                };
                let exts = kind.clause().map(|g| self.clause_extensions(g)).unwrap_or_default();
                WorldSet::from_worlds(
                    n,
                    m.world_ids().filter(|&w| {
                        let rel = realize(m, w, &spec, &exts);
                        let lefts = l.intersection(rel.domain());
                        r.intersection(rel.domain())
                            .iter()
                            .all(|u| lefts.iter().any(|v| rel.le(v, u)))
                    }),
                )
            }
        }
    }

    pub fn clause_extensions(&mut self, g: &ClauseSet) -> Vec<WorldSet> {
        g.iter().map(|gm| self.extension(gm)).collect()
    }

    /// The relation described by `spec` at center `w`.
    pub fn relation(&mut self, w: WorldId, spec: &RelationSpec) -> Relation<'m> {
        let exts = match spec {
            RelationSpec::Base => Vec::new(),
            RelationSpec::CpRestricted(g) | RelationSpec::Counting(g) | RelationSpec::Superset(g) => {
                self.clause_extensions(g)
            }
        };
        realize(self.model, w, spec, &exts)
    }

    pub fn agreement_set(&mut self, g: &ClauseSet, u: WorldId, v: WorldId) -> AgreementSet {
        let exts = self.clause_extensions(g);
        let bits = agreement_bits(&exts, u, v);
        AgreementSet {
            members: bits.ones().map(|i| g.members()[i].clone()).collect(),
            bits,
        }
    }

    /// `[w]_Γ`: the worlds entertainable from `w` that agree with it on all of Γ.
    pub fn agreement_class(&mut self, g: &ClauseSet, w: WorldId) -> WorldSet {
        let exts = self.clause_extensions(g);
        agreement_class_from(self.model, w, &exts)
    }
}

fn agreement_class_from(m: &ConditionalModel, w: WorldId, exts: &[WorldSet]) -> WorldSet {
    WorldSet::from_worlds(
        m.len(),
        m.entertainable(w)
            .iter()
            .filter(|&u| exts.iter().all(|e| e.contains(u) == e.contains(w))),
    )
}

fn realize<'m>(m: &'m ConditionalModel, w: WorldId, spec: &RelationSpec, exts: &[WorldSet]) -> Relation<'m> {
    let order = m.order(w);
    let agreements = || m.world_ids().map(|u| agreement_bits(exts, u, w)).collect();
    match spec {
        RelationSpec::Base => Relation::base(order),
        RelationSpec::CpRestricted(_) => Relation::restricted(order, &agreement_class_from(m, w, exts)),
        RelationSpec::Counting(_) => Relation::by_agreement(order, RelationKind::Counting, agreements()),
        RelationSpec::Superset(_) => Relation::by_agreement(order, RelationKind::Superset, agreements()),
    }
}

pub fn satisfies(m: &ConditionalModel, w: WorldId, f: &Formula, x: Interpretation) -> bool {
    Evaluator::new(m, x).satisfies(w, f)
}

pub fn extension(m: &ConditionalModel, f: &Formula, x: Interpretation) -> WorldSet {
    Evaluator::new(m, x).extension(f)
}

pub fn agreement_set(m: &ConditionalModel, g: &ClauseSet, u: WorldId, v: WorldId, x: Interpretation) -> AgreementSet {
    Evaluator::new(m, x).agreement_set(g, u, v)
}

pub fn agreement_class(m: &ConditionalModel, g: &ClauseSet, w: WorldId, x: Interpretation) -> WorldSet {
    Evaluator::new(m, x).agreement_class(g, w)
}

/// The relation `[φ, Γ]ψ` ranges over at `w` under interpretation `x`:
/// `⊴_w^Γ`, `≼_w^Γ` or `⊑_w^Γ`.
pub fn cp_relation<'m>(m: &'m ConditionalModel, g: &ClauseSet, w: WorldId, x: Interpretation) -> Relation<'m> {
    Evaluator::new(m, x).relation(w, &x.relation_spec(g.clone()))
}

/// `Min(S)` for the relation `spec` at center `w`; clause members are
/// evaluated under `x`.
pub fn min_worlds(m: &ConditionalModel, w: WorldId, spec: &RelationSpec, s: &WorldSet, x: Interpretation) -> WorldSet {
    Evaluator::new(m, x).relation(w, spec).min(s)
}

/// Verdict for a formula at a world, with the minimal worlds and agreement
/// class used when the formula is a conditional (or a negated one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub holds: bool,
    pub min_worlds: Option<WorldSet>,
    pub agreement_class: Option<WorldSet>,
}

pub fn explain(m: &ConditionalModel, w: WorldId, f: &Formula, x: Interpretation) -> Trace {
    let mut ev = Evaluator::new(m, x);
    let holds = ev.satisfies(w, f);
    let mut target = f;
    while let Node::Not(inner) = target.node() {
        target = inner;
    }
    let (min_worlds, agreement_class) = match target.node() {
        Node::CpBox { antecedent, clause, .. } => {
            let ante = ev.extension(antecedent);
            let min = ev.relation(w, &x.relation_spec(clause.clone())).min(&ante);
            (Some(min), Some(ev.agreement_class(clause, w)))
        }
        _ => (None, None),
    };
    Trace {
        holds,
        min_worlds,
        agreement_class,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::builtin_model;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn names(m: &ConditionalModel, s: &WorldSet) -> Vec<String> {
        m.names_of(s).into_iter().map(String::from).collect()
    }

    #[test]
    fn fine_and_lewis_baseline() {
        let fine = builtin_model("fine").unwrap();
        let lewis = builtin_model("lewis").unwrap();
        let w = fine.world("w").unwrap();
        for x in Interpretation::ALL {
            assert!(!satisfies(&fine, w, &f("p cf> h"), x));
            assert!(satisfies(&lewis, lewis.world("w").unwrap(), &f("p cf> h"), x));
        }
    }

    #[test]
    fn fine_ceteris_paribus_evaluations() {
        use Interpretation::*;
        let m = builtin_model("fine").unwrap();
        let w = m.world("w").unwrap();
        assert!(satisfies(&m, w, &f("[p, {m}] h"), Cp));
        assert!(satisfies(&m, w, &f("[p, {m, s}] h"), Cp));
        assert!(satisfies(&m, w, &f("[p, {m, s}] ~h"), Cp));
        assert!(!satisfies(&m, w, &f("[p, {m, s}] h"), Nc));
        assert!(!satisfies(&m, w, &f("[p, {m, s}] ~h"), Ms));
        assert!(!satisfies(&m, w, &f("[p, {m, s}] h"), Ms));
    }

    #[test]
    fn extensions_on_fine() {
        let m = builtin_model("fine").unwrap();
        let x = Interpretation::Cp;
        assert_eq!(names(&m, &extension(&m, &f("p"), x)), ["u1", "u2", "v1", "v2"]);
        assert_eq!(names(&m, &extension(&m, &f("~p"), x)), ["w"]);
        assert_eq!(names(&m, &extension(&m, &f("p & m"), x)), ["v1", "v2"]);
        assert_eq!(names(&m, &extension(&m, &f("zzz"), x)), Vec::<String>::new());
    }

    #[test]
    fn agreement_sets_and_classes() {
        let m = builtin_model("fine").unwrap();
        let x = Interpretation::Cp;
        let (w, v1) = (m.world("w").unwrap(), m.world("v1").unwrap());
        let ms = ClauseSet::of_atoms(["m", "s"]);
        let a = agreement_set(&m, &ms, v1, w, x);
        assert_eq!(a.as_clause(), ClauseSet::of_atoms(["s"]));
        assert_eq!(agreement_set(&m, &ms, w, v1, x), a);
        assert_eq!(agreement_set(&m, &ms, v1, v1, x).as_clause(), ms);
        assert!(agreement_set(&m, &ClauseSet::empty(), v1, w, x).is_empty());

        let cls = |g: &ClauseSet| names(&m, &agreement_class(&m, g, w, x));
        assert_eq!(cls(&ClauseSet::of_atoms(["m"])), ["w", "u1", "u2"]);
        assert_eq!(cls(&ms), ["w"]);
        assert_eq!(cls(&ClauseSet::empty()), ["w", "u1", "u2", "v1", "v2"]);
    }

    #[test]
    fn min_worlds_examples() {
        let m = builtin_model("fine").unwrap();
        let l = builtin_model("lewis").unwrap();
        let x = Interpretation::Cp;
        let w = m.world("w").unwrap();
        let p = extension(&m, &f("p"), x);
        assert_eq!(names(&m, &min_worlds(&m, w, &RelationSpec::Base, &p, x)), ["v1"]);
        let lp = extension(&l, &f("p"), x);
        assert_eq!(names(&l, &min_worlds(&l, w, &RelationSpec::Base, &lp, x)), ["u1"]);
        assert!(min_worlds(&m, w, &RelationSpec::Base, &WorldSet::empty(5), x).is_empty());
        let sup = RelationSpec::Superset(ClauseSet::of_atoms(["m", "s"]));
        assert_eq!(names(&m, &min_worlds(&m, w, &sup, &p, x)), ["u1", "v1"]);
    }

    #[test]
    fn cp_relation_examples() {
        let m = builtin_model("fine").unwrap();
        let w = m.world("w").unwrap();
        let (u1, v1) = (m.world("u1").unwrap(), m.world("v1").unwrap());
        let ms = ClauseSet::of_atoms(["m", "s"]);

        let nc = cp_relation(&m, &ms, w, Interpretation::Nc);
        assert!(nc.lt(v1, u1));
        for a in m.world_ids() {
            for b in m.world_ids() {
                assert_eq!(nc.le(a, b), m.order(w).le(a, b));
            }
        }

        let msr = cp_relation(&m, &ms, w, Interpretation::Ms);
        assert!(!msr.le(v1, u1) && !msr.le(u1, v1));

        for x in Interpretation::ALL {
            let r = cp_relation(&m, &ClauseSet::empty(), w, x);
            for a in m.world_ids() {
                for b in m.world_ids() {
                    assert_eq!(r.le(a, b), m.order(w).le(a, b), "{x}");
                }
            }
        }
    }

    #[test]
    fn comparative_possibility() {
        let m = builtin_model("fine").unwrap();
        let w = m.world("w").unwrap();
        let x = Interpretation::Cp;
        // v-worlds come first in F
        assert!(satisfies(&m, w, &f("(p & m) =< (p & s)"), x));
        assert!(!satisfies(&m, w, &f("(p & s) =< (p & m)"), x));
        assert!(satisfies(&m, w, &Formula::possibly(f("p")), x));
        assert!(!satisfies(&m, w, &Formula::possibly(f("p & ~p")), x));
        // with m fixed the v-worlds leave the domain
        assert!(satisfies(&m, w, &f("(p & s) =<{m}cp (p & m)"), x));
        assert!(!satisfies(&m, w, &f("(p & m) =<{m}cp (p & s)"), x));
        assert!(satisfies(&m, w, &f("(p & s) =<{m}nc (p & m)"), x));
        assert!(satisfies(&m, w, &f("(p & s) =<{m}ms (p & m)"), x));
        // incomparable under maximal supersets
        assert!(!satisfies(&m, w, &f("(p & s) =<{m, s}ms (p & m)"), x));
        assert!(!satisfies(&m, w, &f("(p & m) =<{m, s}ms (p & s)"), x));
    }

    #[test]
    fn trace_reports_minimal_worlds() {
        let m = builtin_model("fine").unwrap();
        let w = m.world("w").unwrap();
        let t = explain(&m, w, &f("[p, {m}] h"), Interpretation::Cp);
        assert!(t.holds);
        assert_eq!(names(&m, t.min_worlds.as_ref().unwrap()), ["u1"]);
        assert_eq!(names(&m, t.agreement_class.as_ref().unwrap()), ["w", "u1", "u2"]);
        let t = explain(&m, w, &f("p & q"), Interpretation::Cp);
        assert_eq!(t.min_worlds, None);
    }
}
