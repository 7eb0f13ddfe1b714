use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::OracleError;
use crate::models::{ConditionalModel, SimilarityOrder, WorldId};
use crate::syntax::{ClauseSet, Comparison, Formula};

const PROP_NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "m", "h", "a"];

/// Shape of randomly generated models.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub min_worlds: usize,
    pub max_worlds: usize,
    pub props: usize,
    /// Probability that a non-center world is entertainable.
    pub density: f64,
    /// Probability that a world shares the rank of the previous one.
    pub tie: f64,
    pub seed: u64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            min_worlds: 1,
            max_worlds: 6,
            props: 4,
            density: 0.75,
            tie: 0.3,
            seed: 0,
        }
    }
}

impl GeneratorParams {
    pub fn with_seed(&self, seed: u64) -> Self {
        GeneratorParams { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let ok = self.min_worlds >= 1
            && self.min_worlds <= self.max_worlds
            && self.props <= PROP_NAMES.len()
            && (0.0..=1.0).contains(&self.density)
            && (0.0..=1.0).contains(&self.tie);
        if ok {
            Ok(())
        } else {
            Err(OracleError::BadParams(format!("{self:?}")))
        }
    }

    /// Proposition names the generated models use.
    pub fn prop_names(&self) -> Vec<&'static str> {
        PROP_NAMES[..self.props].to_vec()
    }
}

/// Deterministic per-trial seed.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    // splitmix64 step
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random model; every world gets an explicit, valid order.
pub fn random_model(p: &GeneratorParams) -> ConditionalModel {
    p.validate().expect("generator parameters");
    model_from_rng(p, &mut ChaCha8Rng::seed_from_u64(p.seed))
}

/// The sequence of models drawn from one seeded generator.
pub fn random_models(p: &GeneratorParams) -> impl Iterator<Item = ConditionalModel> + '_ {
    p.validate().expect("generator parameters");
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    std::iter::repeat_with(move || model_from_rng(p, &mut rng))
}

fn model_from_rng(p: &GeneratorParams, rng: &mut ChaCha8Rng) -> ConditionalModel {
    let n = rng.gen_range(p.min_worlds..=p.max_worlds);
    let names: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let mut b = ConditionalModel::builder(&format!("random_{}", p.seed)).worlds(names.iter());
    for prop in p.prop_names() {
        let ws: Vec<&String> = names.iter().filter(|_| rng.gen_bool(0.5)).collect();
        b = b.val(prop, ws);
    }
    let mut m = b.build_unchecked().expect("generated model");
    let orders = (0..n)
        .map(|x| {
            let mut others: Vec<WorldId> = (0..n).filter(|&u| u != x && rng.gen_bool(p.density)).collect();
            others.shuffle(rng);
            SimilarityOrder::ranked(n, x, random_ranks(x, others, p.tie, rng))
        })
        .collect();
    m = m.with_orders(orders);
    m
}

fn random_ranks(center: WorldId, others: Vec<WorldId>, tie: f64, rng: &mut impl Rng) -> Vec<Vec<WorldId>> {
    let mut ranks = vec![vec![center]];
    for u in others {
        if ranks.len() > 1 && rng.gen_bool(tie) {
            ranks.last_mut().expect("nonempty").push(u);
        } else {
            ranks.push(vec![u]);
        }
    }
    ranks
}

/// Every model over worlds `w0..w{n-1}` and `k` propositions in which `w0`
/// carries a ranked, strictly centered order over some subset of the other
/// worlds; the remaining worlds keep the trivial order.
pub fn enumerate_models(n: usize, k: usize) -> Result<Vec<ConditionalModel>, OracleError> {
    if n == 0 || n > 3 || k > 2 {
        return Err(OracleError::Guard { worlds: n, props: k });
    }
    let names: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let props = &PROP_NAMES[..k];
    let orders = center_orders(n);
    let mut out = Vec::with_capacity(orders.len() << (n * k));
    for bits in 0..1usize << (n * k) {
        let mut b = ConditionalModel::builder(&format!("enum_{n}_{k}")).worlds(names.iter());
        for (j, prop) in props.iter().enumerate() {
            let ws: Vec<&String> = (0..n)
                .filter(|i| bits >> (j * n + i) & 1 == 1)
                .map(|i| &names[i])
                .collect();
            b = b.val(prop, ws);
        }
        let base = b.build_unchecked().expect("enumerated model");
        for ranks in &orders {
            let mut os: Vec<SimilarityOrder> = (0..n).map(|x| SimilarityOrder::trivial(n, x)).collect();
            os[0] = SimilarityOrder::ranked(n, 0, ranks.clone());
            out.push(base.with_orders(os));
        }
    }
    Ok(out)
}

fn center_orders(n: usize) -> Vec<Vec<Vec<WorldId>>> {
    let others: Vec<WorldId> = (1..n).collect();
    let mut out = Vec::new();
    for mask in 0..1usize << others.len() {
        let subset: Vec<WorldId> = others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &u)| u)
            .collect();
        for partition in ordered_partitions(&subset) {
            let mut ranks = vec![vec![0]];
            ranks.extend(partition);
            out.push(ranks);
        }
    }
    out
}

/// All ordered set partitions (weak orders) of `items`.
fn ordered_partitions(items: &[WorldId]) -> Vec<Vec<Vec<WorldId>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    // choose the nonempty first block, recurse on the rest
    let k = items.len();
    for mask in 1..1usize << k {
        let first: Vec<WorldId> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect();
        let rest: Vec<WorldId> = (0..k).filter(|i| mask >> i & 1 == 0).map(|i| items[i]).collect();
        for mut tail in ordered_partitions(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// Shape of random formulas.
#[derive(Debug, Clone)]
pub struct FormulaParams {
    pub props: Vec<&'static str>,
    pub depth: usize,
    pub max_clause: usize,
    /// Allow conditionals and comparisons.
    pub modal: bool,
    /// Clause members are Boolean; otherwise they may be modal themselves.
    pub boolean_clauses: bool,
}

impl FormulaParams {
    pub fn boolean(props: Vec<&'static str>, depth: usize) -> Self {
        FormulaParams {
            props,
            depth,
            max_clause: 2,
            modal: false,
            boolean_clauses: true,
        }
    }

    pub fn modal(props: Vec<&'static str>, depth: usize) -> Self {
        FormulaParams {
            modal: true,
            ..Self::boolean(props, depth)
        }
    }
}

pub fn random_formula(rng: &mut impl Rng, p: &FormulaParams) -> Formula {
    gen_formula(rng, p, p.depth)
}

fn atom(rng: &mut impl Rng, p: &FormulaParams) -> Formula {
    if p.props.is_empty() || rng.gen_bool(0.05) {
        return if rng.gen_bool(0.5) {
            Formula::bottom()
        } else {
            Formula::top()
        };
    }
    Formula::atom(p.props.choose(rng).expect("props"))
}

fn gen_formula(rng: &mut impl Rng, p: &FormulaParams, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return atom(rng, p);
    }
    let d = depth - 1;
    let choices = if p.modal { 9 } else { 5 };
    match rng.gen_range(0..choices) {
        0 => Formula::not(gen_formula(rng, p, d)),
        1 => Formula::or(gen_formula(rng, p, d), gen_formula(rng, p, d)),
        2 => Formula::and(gen_formula(rng, p, d), gen_formula(rng, p, d)),
        3 => Formula::implies(gen_formula(rng, p, d), gen_formula(rng, p, d)),
        4 => atom(rng, p),
        5 => Formula::cp_box(gen_formula(rng, p, d), random_clause(rng, p, d), gen_formula(rng, p, d)),
        6 => Formula::cp_diamond(gen_formula(rng, p, d), random_clause(rng, p, d), gen_formula(rng, p, d)),
        7 => Formula::counterfactual(gen_formula(rng, p, d), gen_formula(rng, p, d)),
        _ => {
            let g = random_clause(rng, p, d);
            let kind = match rng.gen_range(0..4) {
                0 => Comparison::Plain,
                1 => Comparison::Counting(g),
                2 => Comparison::Restricted(g),
                _ => Comparison::Superset(g),
            };
            Formula::compare(kind, gen_formula(rng, p, d), gen_formula(rng, p, d))
        }
    }
}

/// A clause of up to `max_clause` members of depth at most `depth` (at least 1).
pub fn random_clause(rng: &mut impl Rng, p: &FormulaParams, depth: usize) -> ClauseSet {
    let size = rng.gen_range(0..=p.max_clause);
    let member = FormulaParams {
        modal: p.modal && !p.boolean_clauses,
        ..p.clone()
    };
    ClauseSet::new((0..size).map(|_| gen_formula(rng, &member, depth.clamp(1, 2))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{validate_model, ValidationMode};

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_models(1, 1).unwrap().len(), 2);
        assert_eq!(enumerate_models(2, 1).unwrap().len(), 8);
        assert_eq!(enumerate_models(3, 0).unwrap().len(), 6);
        assert_eq!(enumerate_models(3, 2).unwrap().len(), 6 * 64);
        assert!(enumerate_models(4, 0).is_err());
        assert!(enumerate_models(2, 3).is_err());
    }

    #[test]
    fn ordered_partition_counts() {
        // Fubini numbers
        assert_eq!(ordered_partitions(&[]).len(), 1);
        assert_eq!(ordered_partitions(&[1]).len(), 1);
        assert_eq!(ordered_partitions(&[1, 2]).len(), 3);
        assert_eq!(ordered_partitions(&[1, 2, 3]).len(), 13);
    }

    #[test]
    fn enumerated_models_are_valid_and_distinct() {
        let ms = enumerate_models(3, 1).unwrap();
        for m in &ms {
            assert!(validate_model(m, ValidationMode::Strict).is_ok());
        }
        for (i, a) in ms.iter().enumerate() {
            assert!(ms[i + 1..].iter().all(|b| b != a));
        }
    }

    #[test]
    fn random_models_are_deterministic_and_valid() {
        let p = GeneratorParams {
            min_worlds: 3,
            max_worlds: 3,
            seed: 1,
            ..Default::default()
        };
        let a = random_model(&p);
        assert_eq!(a.len(), 3);
        assert_eq!(a, random_model(&p));
        assert!(validate_model(&a, ValidationMode::Strict).is_ok());
        let xs: Vec<_> = random_models(&p).take(5).collect();
        let ys: Vec<_> = random_models(&p).take(5).collect();
        assert_eq!(xs, ys);
        for m in random_models(&GeneratorParams::default()).take(200) {
            assert!(validate_model(&m, ValidationMode::Strict).is_ok());
        }
    }

    #[test]
    fn zero_density_gives_trivial_orders() {
        let p = GeneratorParams {
            density: 0.0,
            seed: 3,
            ..Default::default()
        };
        for m in random_models(&p).take(20) {
            assert!(m.world_ids().all(|w| m.order(w).is_trivial()));
        }
    }

    #[test]
    fn bad_params_are_rejected() {
        let p = GeneratorParams {
            density: 1.5,
            ..Default::default()
        };
        assert!(p.validate().is_err());
    }
}
