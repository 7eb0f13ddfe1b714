//! Finite conditional models `(W, ⪯, V)`.
//!
//! Worlds are dense indices into the model's world list. Each world carries a
//! similarity order over the worlds it can entertain; worlds without an
//! explicit order get the trivial order on themselves.

mod file;
mod relation;
mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::syntax::{ClauseSet, Prop};

pub(crate) use file::parse_model_unchecked;
pub use file::{parse_model, parse_model_with, render_model};
pub use relation::{Relation, RelationKind};
pub use validate::{validate_model, ValidationMode, ValidationReport, Violation};

pub type WorldId = usize;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("invalid model:\n{0}")]
    Invalid(ValidationReport),
}

/// A set of worlds of one model, as a bit set over world indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WorldSet(FixedBitSet);

impl WorldSet {
    pub fn empty(n: usize) -> Self {
        WorldSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(n);
        b.insert_range(..);
        WorldSet(b)
    }

    pub fn singleton(n: usize, w: WorldId) -> Self {
        let mut s = Self::empty(n);
        s.insert(w);
        s
    }

    pub fn from_worlds<I: IntoIterator<Item = WorldId>>(n: usize, items: I) -> Self {
        let mut s = Self::empty(n);
        for w in items {
            s.insert(w);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, w: WorldId) -> bool {
        self.0.contains(w)
    }

    pub fn insert(&mut self, w: WorldId) {
        self.0.insert(w)
    }

    pub fn remove(&mut self, w: WorldId) {
        self.0.set(w, false)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = WorldId> + '_ {
        self.0.ones()
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        let mut b = self.0.clone();
        b.union_with(&other.0);
        WorldSet(b)
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        let mut b = self.0.clone();
        b.intersect_with(&other.0);
        WorldSet(b)
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        let mut b = self.0.clone();
        b.difference_with(&other.0);
        WorldSet(b)
    }

    pub fn complement(&self) -> WorldSet {
        let mut b = self.0.clone();
        b.toggle_range(..);
        WorldSet(b)
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Shape {
    /// Most similar first; `rank_of[u]` is the first rank containing `u`.
    Ranked {
        ranks: Vec<Vec<WorldId>>,
        rank_of: Vec<Option<usize>>,
    },
    /// Explicit relation: `le[u]` holds every `v` with `u ≤ v`.
    Pairs { le: Vec<WorldSet> },
}

/// The similarity order of one world over its entertainable set `W_w`.
///
/// The ranked shape represents total preorders; the pair shape holds the
/// possibly partial preorders produced by maximal-superset updates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityOrder {
    center: WorldId,
    domain: WorldSet,
    shape: Shape,
}

impl SimilarityOrder {
    /// Ranked order over a model with `n` worlds. Ranks are not checked here;
    /// see [`validate_model`].
    pub fn ranked(n: usize, center: WorldId, ranks: Vec<Vec<WorldId>>) -> Self {
        let mut ranks = ranks;
        for r in &mut ranks {
            r.sort_unstable();
        }
        let mut rank_of = vec![None; n];
        let mut domain = WorldSet::empty(n);
        for (i, r) in ranks.iter().enumerate() {
            for &u in r {
                domain.insert(u);
                rank_of[u].get_or_insert(i);
            }
        }
        SimilarityOrder {
            center,
            domain,
            shape: Shape::Ranked { ranks, rank_of },
        }
    }

    /// `W_x = {x}`
    pub fn trivial(n: usize, center: WorldId) -> Self {
        Self::ranked(n, center, vec![vec![center]])
    }

    /// Order given by an explicit `≤` relation over `domain`; `le(u, v)` is
    /// only consulted for `u, v` in the domain.
    pub fn from_relation(n: usize, center: WorldId, domain: &WorldSet, le: impl Fn(WorldId, WorldId) -> bool) -> Self {
        let mut rows = vec![WorldSet::empty(n); n];
        for u in domain.iter() {
            for v in domain.iter() {
                if le(u, v) {
                    rows[u].insert(v);
                }
            }
        }
        SimilarityOrder {
            center,
            domain: domain.clone(),
            shape: Shape::Pairs { le: rows },
        }
    }

    /// Re-expresses an order given as a relation in ranked form when the
    /// relation is a total preorder, otherwise keeps the explicit pairs.
    pub fn normalized(self) -> Self {
        let Shape::Pairs { le } = &self.shape else {
            return self;
        };
        let members: Vec<WorldId> = self.domain.iter().collect();
        let total = members
            .iter()
            .all(|&u| members.iter().all(|&v| le[u].contains(v) || le[v].contains(u)));
        if !total {
            return self;
        }
        // in a total preorder the number of members at or below u orders the classes
        let mut keyed: Vec<(usize, WorldId)> = members
            .iter()
            .map(|&u| (members.iter().filter(|&&v| le[v].contains(u)).count(), u))
            .collect();
        keyed.sort_unstable();
        let mut ranks: Vec<Vec<WorldId>> = Vec::new();
        let mut last = None;
        for (k, u) in keyed {
            if last == Some(k) {
                ranks.last_mut().expect("rank open").push(u);
            } else {
                ranks.push(vec![u]);
                last = Some(k);
            }
        }
        Self::ranked(self.domain.capacity(), self.center, ranks)
    }

    pub fn center(&self) -> WorldId {
        self.center
    }

    /// The entertainable set `W_w`.
    pub fn domain(&self) -> &WorldSet {
        &self.domain
    }

    /// Rank list when the order is stored ranked.
    pub fn ranks(&self) -> Option<&[Vec<WorldId>]> {
        match &self.shape {
            Shape::Ranked { ranks, .. } => Some(ranks),
            Shape::Pairs { .. } => None,
        }
    }

    pub fn rank(&self, u: WorldId) -> Option<usize> {
        match &self.shape {
            Shape::Ranked { rank_of, .. } => rank_of.get(u).copied().flatten(),
            Shape::Pairs { .. } => None,
        }
    }

    pub fn is_ranked(&self) -> bool {
        matches!(self.shape, Shape::Ranked { .. })
    }

    /// `u ⪯ v`; false unless both are entertainable.
    pub fn le(&self, u: WorldId, v: WorldId) -> bool {
        if !self.domain.contains(u) || !self.domain.contains(v) {
            return false;
        }
        match &self.shape {
            Shape::Ranked { rank_of, .. } => rank_of[u] <= rank_of[v],
            Shape::Pairs { le } => le[u].contains(v),
        }
    }

    /// `u ≺ v`
    pub fn lt(&self, u: WorldId, v: WorldId) -> bool {
        self.le(u, v) && !self.le(v, u)
    }

    pub fn is_total(&self) -> bool {
        match &self.shape {
            Shape::Ranked { .. } => true,
            Shape::Pairs { .. } => self
                .domain
                .iter()
                .all(|u| self.domain.iter().all(|v| self.le(u, v) || self.le(v, u))),
        }
    }

    /// All `(u, v)` with `u ≤ v`, in index order.
    pub fn pairs(&self) -> Vec<(WorldId, WorldId)> {
        let mut out = Vec::new();
        for u in self.domain.iter() {
            for v in self.domain.iter() {
                if self.le(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.domain.len() == 1 && self.domain.contains(self.center)
    }
}

/// A finite conditional model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalModel {
    name: String,
    worlds: Vec<String>,
    index: HashMap<String, WorldId>,
    orders: Vec<SimilarityOrder>,
    explicit: Vec<bool>,
    valuation: BTreeMap<Prop, WorldSet>,
}

impl ConditionalModel {
    pub fn builder(name: &str) -> ModelBuilder {
        ModelBuilder {
            name: name.to_string(),
            worlds: Vec::new(),
            vals: Vec::new(),
            orders: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn world_ids(&self) -> std::ops::Range<WorldId> {
        0..self.worlds.len()
    }

    pub fn world_name(&self, w: WorldId) -> &str {
        &self.worlds[w]
    }

    pub fn world(&self, name: &str) -> Option<WorldId> {
        self.index.get(name).copied()
    }

    pub fn world_or_err(&self, name: &str) -> Result<WorldId, ModelError> {
        self.world(name)
            .ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    pub fn order(&self, w: WorldId) -> &SimilarityOrder {
        &self.orders[w]
    }

    /// Whether `w`'s order was given explicitly rather than defaulted to trivial.
    pub fn has_explicit_order(&self, w: WorldId) -> bool {
        self.explicit[w]
    }

    /// `W_w`
    pub fn entertainable(&self, w: WorldId) -> &WorldSet {
        self.orders[w].domain()
    }

    /// `V(p)`; unknown propositions are false everywhere.
    pub fn valuation(&self, p: &Prop) -> WorldSet {
        self.valuation
            .get(p)
            .cloned()
            .unwrap_or_else(|| WorldSet::empty(self.len()))
    }

    pub fn props(&self) -> impl Iterator<Item = &Prop> {
        self.valuation.keys()
    }

    pub fn names_of(&self, s: &WorldSet) -> Vec<&str> {
        s.iter().map(|w| self.world_name(w)).collect()
    }

    /// A copy with every world's order replaced.
    pub fn with_orders(&self, orders: Vec<SimilarityOrder>) -> ConditionalModel {
        assert_eq!(orders.len(), self.len());
        let explicit = orders
            .iter()
            .zip(&self.explicit)
            .map(|(o, &was)| was || !o.is_trivial())
            .collect();
        ConditionalModel {
            orders,
            explicit,
            ..self.clone()
        }
    }

    /// Checks the invariants in the given mode and fails on any violation.
    pub fn validated(self, mode: ValidationMode) -> Result<Self, ModelError> {
        let report = validate_model(&self, mode);
        if report.is_ok() {
            Ok(self)
        } else {
            Err(ModelError::Invalid(report))
        }
    }
}

/// Assembles a model from world names.
#[derive(Debug, Clone)]
pub struct ModelBuilder {
    name: String,
    worlds: Vec<String>,
    vals: Vec<(String, Vec<String>)>,
    orders: Vec<(String, OrderSpec)>,
}

#[derive(Debug, Clone)]
enum OrderSpec {
    Ranks(Vec<Vec<String>>),
    Pairs(Vec<(String, String)>),
}

impl ModelBuilder {
    pub fn worlds<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.worlds.extend(names.into_iter().map(Into::into));
        self
    }

    /// Sets the worlds where `prop` holds.
    pub fn val<I, S>(mut self, prop: &str, worlds: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vals
            .push((prop.to_string(), worlds.into_iter().map(Into::into).collect()));
        self
    }

    /// Ranked order at `center`, most similar rank first.
    pub fn order<R, S>(mut self, center: &str, ranks: R) -> Self
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ranks = ranks
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        self.orders.push((center.to_string(), OrderSpec::Ranks(ranks)));
        self
    }

    /// Order at `center` given by explicit `u ≤ v` pairs.
    pub fn order_pairs<I, S>(mut self, center: &str, pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let pairs = pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        self.orders.push((center.to_string(), OrderSpec::Pairs(pairs)));
        self
    }

    /// Resolves names without checking the model invariants.
    pub fn build_unchecked(self) -> Result<ConditionalModel, ModelError> {
        let mut index = HashMap::new();
        for (i, w) in self.worlds.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(ModelError::Syntax {
                    line: 0,
                    message: format!("world `{w}` declared twice"),
                });
            }
        }
        let n = self.worlds.len();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| ModelError::UnknownWorld(name.into()))
        };

        let mut valuation = BTreeMap::new();
        for (p, ws) in &self.vals {
            let mut set = WorldSet::empty(n);
            for w in ws {
                set.insert(lookup(w)?);
            }
            valuation
                .entry(Prop::new(p))
                .and_modify(|s: &mut WorldSet| *s = s.union(&set))
                .or_insert(set);
        }

        let mut orders: Vec<SimilarityOrder> = (0..n).map(|w| SimilarityOrder::trivial(n, w)).collect();
        let mut explicit = vec![false; n];
        for (center, spec) in &self.orders {
            let c = lookup(center)?;
            if explicit[c] {
                return Err(ModelError::Syntax {
                    line: 0,
                    message: format!("two orders given for `{center}`"),
                });
            }
            explicit[c] = true;
            orders[c] = match spec {
                OrderSpec::Ranks(ranks) => {
                    let ranks = ranks
                        .iter()
                        .map(|r| r.iter().map(|w| lookup(w)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    SimilarityOrder::ranked(n, c, ranks)
                }
                OrderSpec::Pairs(pairs) => {
                    let resolved = pairs
                        .iter()
                        .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
                        .collect::<Result<Vec<_>, ModelError>>()?;
                    let domain = WorldSet::from_worlds(n, resolved.iter().flat_map(|&(a, b)| [a, b]));
                    SimilarityOrder::from_relation(n, c, &domain, |u, v| resolved.contains(&(u, v)))
                }
            };
        }

        Ok(ConditionalModel {
            name: self.name,
            worlds: self.worlds,
            index,
            orders,
            explicit,
            valuation,
        })
    }

    /// Builds and validates strictly.
    pub fn build(self) -> Result<ConditionalModel, ModelError> {
        self.build_unchecked()?.validated(ValidationMode::Strict)
    }
}

/// Which relation a minimal-world computation ranges over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationSpec {
    /// `⪯_w`
    Base,
    /// `⊴_w^Γ`
    CpRestricted(ClauseSet),
    /// `≼_w^Γ`
    Counting(ClauseSet),
    /// `⊑_w^Γ`
    Superset(ClauseSet),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn world_set_ops() {
        let a = WorldSet::from_worlds(5, [0, 2, 4]);
        let b = WorldSet::from_worlds(5, [2, 3]);
        assert_eq!(a.intersection(&b), WorldSet::singleton(5, 2));
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![0, 4]);
        assert_eq!(a.complement().iter().collect::<Vec<_>>(), vec![1, 3]);
        assert!(WorldSet::empty(5).is_subset(&a));
        assert_eq!(WorldSet::full(3).len(), 3);
    }

    #[test]
    fn ranked_order_queries() {
        let o = SimilarityOrder::ranked(4, 0, vec![vec![0], vec![2, 1], vec![3]]);
        assert!(o.le(1, 2) && o.le(2, 1));
        assert!(o.lt(0, 1) && o.lt(2, 3));
        assert_eq!(o.rank(3), Some(2));
        assert_eq!(o.ranks().unwrap()[1], vec![1, 2]);
    }

    #[test]
    fn normalization_recovers_ranks_from_total_relations() {
        let o = SimilarityOrder::ranked(4, 0, vec![vec![0], vec![1, 3], vec![2]]);
        let rebuilt = SimilarityOrder::from_relation(4, 0, o.domain(), |u, v| o.le(u, v)).normalized();
        assert_eq!(rebuilt, o);

        let partial = SimilarityOrder::from_relation(3, 0, &WorldSet::full(3), |u, v| u == v || u == 0);
        let kept = partial.clone().normalized();
        assert!(!kept.is_ranked());
        assert!(!kept.is_total());
        assert_eq!(kept, partial);
    }

    #[test]
    fn builder_resolves_names() {
        let m = ConditionalModel::builder("t")
            .worlds(["a", "b"])
            .val("p", ["b"])
            .order("a", [vec!["a"], vec!["b"]])
            .build()
            .unwrap();
        assert_eq!(m.valuation(&Prop::new("p")), WorldSet::singleton(2, 1));
        assert_eq!(m.valuation(&Prop::new("zz")), WorldSet::empty(2));
        assert!(m.has_explicit_order(0) && !m.has_explicit_order(1));
        assert_eq!(m.entertainable(1), &WorldSet::singleton(2, 1));

        let err = ConditionalModel::builder("t").worlds(["a"]).val("p", ["x"]).build();
        assert!(matches!(err, Err(ModelError::UnknownWorld(w)) if w == "x"));
    }
}
