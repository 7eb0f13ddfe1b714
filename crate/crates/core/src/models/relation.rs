use fixedbitset::FixedBitSet;

use super::{SimilarityOrder, WorldId, WorldSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    /// `⪯_w` on `W_w`
    Base,
    /// `⊴_w^Γ`: `⪯_w` restricted to `[w]_Γ`
    Restricted,
    /// `≼_w^Γ`: more agreements first, ties broken by `⪯_w`
    Counting,
    /// `⊑_w^Γ`: larger agreement sets first, equal sets ordered by `⪯_w`
    Superset,
}

/// A comparison relation at one center world, realized over its domain.
///
/// The agreement data (`counts`, `agreement`) is indexed by world and already
/// computed against the center, so comparisons are constant time.
#[derive(Debug, Clone)]
pub struct Relation<'m> {
    kind: RelationKind,
    domain: WorldSet,
    base: &'m SimilarityOrder,
    counts: Vec<usize>,
    agreement: Vec<FixedBitSet>,
}

impl<'m> Relation<'m> {
    pub fn base(order: &'m SimilarityOrder) -> Self {
        Relation {
            kind: RelationKind::Base,
            domain: order.domain().clone(),
            base: order,
            counts: Vec::new(),
            agreement: Vec::new(),
        }
    }

    /// Restriction of `order` to `class ∩ W_w`.
    pub fn restricted(order: &'m SimilarityOrder, class: &WorldSet) -> Self {
        Relation {
            kind: RelationKind::Restricted,
            domain: order.domain().intersection(class),
            ..Self::base(order)
        }
    }

    /// Agreement-set relation; `agreement[u]` is `A_Γ(u, w)` as a bit set
    /// over clause positions. Counting only uses the cardinalities.
    pub fn by_agreement(order: &'m SimilarityOrder, kind: RelationKind, agreement: Vec<FixedBitSet>) -> Self {
        assert!(matches!(kind, RelationKind::Counting | RelationKind::Superset));
        Relation {
            kind,
            counts: agreement.iter().map(|a| a.count_ones(..)).collect(),
            agreement,
            ..Self::base(order)
        }
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn center(&self) -> WorldId {
        self.base.center()
    }

    pub fn domain(&self) -> &WorldSet {
        &self.domain
    }

    pub fn base_order(&self) -> &SimilarityOrder {
        self.base
    }

    pub fn le(&self, u: WorldId, v: WorldId) -> bool {
        if !self.domain.contains(u) || !self.domain.contains(v) {
            return false;
        }
        match self.kind {
            RelationKind::Base | RelationKind::Restricted => self.base.le(u, v),
            RelationKind::Counting => {
                let (cu, cv) = (self.counts[u], self.counts[v]);
                cu > cv || (cu == cv && self.base.le(u, v))
            }
            RelationKind::Superset => {
                let (au, av) = (&self.agreement[u], &self.agreement[v]);
                (av.is_subset(au) && av != au) || (au == av && self.base.le(u, v))
            }
        }
    }

    pub fn lt(&self, u: WorldId, v: WorldId) -> bool {
        self.le(u, v) && !self.le(v, u)
    }

    pub fn is_total(&self) -> bool {
        self.domain
            .iter()
            .all(|u| self.domain.iter().all(|v| self.le(u, v) || self.le(v, u)))
    }

    /// `Min(S)`: members of `S` in the domain with nothing strictly below
    /// them in `S`.
    ///
    /// Ranked base orders are handled by keyed selection (best agreement,
    /// then lowest rank); explicit-pair bases fall back to a pairwise scan.
    pub fn min(&self, s: &WorldSet) -> WorldSet {
        let cand = s.intersection(&self.domain);
        if cand.is_empty() {
            return cand;
        }
        if !self.base.is_ranked() {
            return self.min_pairwise(&cand);
        }
        let n = cand.capacity();
        let rank = |u: WorldId| self.base.rank(u).expect("domain member has a rank");
        let lowest_rank = |pool: &mut dyn Iterator<Item = WorldId>| -> WorldSet {
            let pool: Vec<WorldId> = pool.collect();
            let best = pool.iter().map(|&u| rank(u)).min();
            WorldSet::from_worlds(n, pool.into_iter().filter(|&u| Some(rank(u)) == best))
        };
        match self.kind {
            RelationKind::Base | RelationKind::Restricted => lowest_rank(&mut cand.iter()),
            RelationKind::Counting => {
                let best = cand.iter().map(|u| self.counts[u]).max();
                lowest_rank(&mut cand.iter().filter(|&u| Some(self.counts[u]) == best))
            }
            RelationKind::Superset => {
                let mut sets: Vec<&FixedBitSet> = Vec::new();
                for u in cand.iter() {
                    if !sets.contains(&&self.agreement[u]) {
                        sets.push(&self.agreement[u]);
                    }
                }
                let maximal: Vec<&FixedBitSet> = sets
                    .iter()
                    .copied()
                    .filter(|a| !sets.iter().any(|b| a.is_subset(b) && a != b))
                    .collect();
                let mut out = WorldSet::empty(n);
                for a in maximal {
                    out = out.union(&lowest_rank(&mut cand.iter().filter(|&u| &self.agreement[u] == a)));
                }
                out
            }
        }
    }

    fn min_pairwise(&self, cand: &WorldSet) -> WorldSet {
        WorldSet::from_worlds(
            cand.capacity(),
            cand.iter().filter(|&v| !cand.iter().any(|u| self.lt(u, v))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, on: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &i in on {
            b.insert(i);
        }
        b
    }

    #[test]
    fn base_min_and_restriction() {
        let o = SimilarityOrder::ranked(5, 0, vec![vec![0], vec![3], vec![4], vec![1], vec![2]]);
        let r = Relation::base(&o);
        let p = WorldSet::from_worlds(5, [1, 2, 3, 4]);
        assert_eq!(r.min(&p), WorldSet::singleton(5, 3));
        assert!(r.min(&WorldSet::empty(5)).is_empty());
        let r = Relation::restricted(&o, &WorldSet::from_worlds(5, [0, 1, 2]));
        assert_eq!(r.min(&p), WorldSet::singleton(5, 1));
        assert!(!r.le(3, 1));
    }

    #[test]
    fn counting_prefers_agreement_then_rank() {
        let o = SimilarityOrder::ranked(4, 0, vec![vec![0], vec![1], vec![2, 3]]);
        let agree = vec![bits(2, &[0, 1]), bits(2, &[]), bits(2, &[1]), bits(2, &[0])];
        let r = Relation::by_agreement(&o, RelationKind::Counting, agree);
        assert_eq!(
            r.min(&WorldSet::from_worlds(4, [1, 2, 3])),
            WorldSet::from_worlds(4, [2, 3])
        );
        assert!(r.lt(2, 1));
        assert!(r.is_total());
    }

    #[test]
    fn superset_keeps_incomparable_minima() {
        let o = SimilarityOrder::ranked(4, 0, vec![vec![0], vec![1], vec![2], vec![3]]);
        let agree = vec![bits(2, &[0, 1]), bits(2, &[1]), bits(2, &[0]), bits(2, &[0])];
        let r = Relation::by_agreement(&o, RelationKind::Superset, agree);
        assert_eq!(
            r.min(&WorldSet::from_worlds(4, [1, 2, 3])),
            WorldSet::from_worlds(4, [1, 2])
        );
        assert!(!r.le(1, 2) && !r.le(2, 1));
        assert!(r.lt(2, 3));
        assert!(!r.is_total());
    }

    #[test]
    fn pair_orders_use_pairwise_minimality() {
        let dom = WorldSet::full(3);
        let o = SimilarityOrder::from_relation(3, 0, &dom, |u, v| u == v || u == 0);
        let r = Relation::base(&o);
        assert_eq!(
            r.min(&WorldSet::from_worlds(3, [1, 2])),
            WorldSet::from_worlds(3, [1, 2])
        );
        assert_eq!(r.min(&dom), WorldSet::singleton(3, 0));
    }
}
