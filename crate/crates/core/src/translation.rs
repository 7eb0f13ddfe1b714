//! Compiling ceteris paribus modalities into plain comparative possibility.
//!
//! Translation runs in two stages. A conditional `[φ, Γ]ψ` is first lowered to
//! a comparative formula over the Γ-relation of its interpretation (`⊴^Γ`,
//! `≼^Γ` or `⊑^Γ`); each Γ-comparison is then rewritten into the fragment with
//! only the plain `≼`, by splitting on the agreement patterns `Γ*`. Formulas
//! are translated inside-out, so clause members and nested modalities are
//! already in the fragment when their parent is rewritten.
//!
//! Output formulas share subterms heavily. Their written-out size is
//! exponential in `|Γ|` (doubly so for the superset and counting relations)
//! and multiplies under nesting; [`TranslationBudget`] bounds the number of
//! distinct nodes actually built.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::semantics::Interpretation;
use crate::syntax::{ClauseSet, Comparison, Formula, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslationBudget {
    /// Largest clause that may be expanded.
    pub max_clause: usize,
    /// Largest output, counted as distinct shared nodes.
    pub max_nodes: u64,
}

impl Default for TranslationBudget {
    fn default() -> Self {
        TranslationBudget {
            max_clause: 3,
            max_nodes: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("clause of size {size} exceeds the limit of {max}")]
    ClauseTooLarge { size: usize, max: usize },
    #[error("translation would have at least {estimate} nodes, over the limit of {max}")]
    TooLarge { estimate: u64, max: u64 },
}

/// Which statement of a rewriting rule to apply.
///
/// `Sound` is the default. `Literal` keeps the textbook statements of the
/// strict-agreement and superset lowerings and of the counting elimination;
/// those are not equivalences on every model (see the tests), and are only
/// useful for exhibiting that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LemmaForm {
    #[default]
    Sound,
    Literal,
}

/// One member of `Γ*`: a sign for each clause member, in clause order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedConjunction {
    literals: Vec<(bool, Formula)>,
}

impl SignedConjunction {
    /// `(positive, γ)` pairs in canonical clause order.
    pub fn literals(&self) -> &[(bool, Formula)] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    fn literal(&self, i: usize) -> Formula {
        let (pos, g) = &self.literals[i];
        if *pos {
            g.clone()
        } else {
            Formula::not(g.clone())
        }
    }

    /// `⋀ ±γ`; `⊤` when the clause is empty.
    pub fn to_formula(&self) -> Formula {
        Formula::conj((0..self.len()).map(|i| self.literal(i)))
    }

    /// The conjunction of the literals selected by `mask` (bit `i` = literal `i`).
    pub fn sub_conjunction(&self, mask: usize) -> Formula {
        Formula::conj((0..self.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.literal(i)))
    }
}

impl fmt::Display for SignedConjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

fn check_clause(g: &ClauseSet, budget: &TranslationBudget) -> Result<(), TranslationError> {
    if g.len() > budget.max_clause {
        Err(TranslationError::ClauseTooLarge {
            size: g.len(),
            max: budget.max_clause,
        })
    } else {
        Ok(())
    }
}

fn check_size(f: &Formula, budget: &TranslationBudget) -> Result<(), TranslationError> {
    let n = f.dag_size() as u64;
    if n > budget.max_nodes {
        Err(TranslationError::TooLarge {
            estimate: n,
            max: budget.max_nodes,
        })
    } else {
        Ok(())
    }
}

fn gamma_star_unchecked(g: &ClauseSet) -> Vec<SignedConjunction> {
    let k = g.len();
    (0..1usize << k)
        .map(|mask| SignedConjunction {
            literals: g
                .iter()
                .enumerate()
                .map(|(i, gm)| (mask >> i & 1 == 0, gm.clone()))
                .collect(),
        })
        .collect()
}

/// `Γ*`: all `2^|Γ|` sign patterns. Bit `i` of the enumeration index negates
/// member `i`, so the first member alternates fastest.
pub fn gamma_star(g: &ClauseSet, budget: &TranslationBudget) -> Result<Vec<SignedConjunction>, TranslationError> {
    check_clause(g, budget)?;
    Ok(gamma_star_unchecked(g))
}

/// `[φ, Γ]ψ` as a comparative formula over the Γ-relation of `x`.
pub fn lower_cp_modality(phi: &Formula, g: &ClauseSet, psi: &Formula, x: Interpretation) -> Formula {
    lower_cp_modality_with(phi, g, psi, x, LemmaForm::Sound)
}

pub fn lower_cp_modality_with(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    x: Interpretation,
    form: LemmaForm,
) -> Formula {
    let pos = Formula::and(phi.clone(), psi.clone());
    let neg = Formula::and(phi.clone(), Formula::not(psi.clone()));
    match (x, form) {
        (Interpretation::Nc, _) => Formula::implies(
            Formula::possibly(phi.clone()),
            Formula::strict(Comparison::Counting(g.clone()), pos, neg),
        ),
        (Interpretation::Cp, LemmaForm::Literal) => Formula::implies(
            Formula::possibly(phi.clone()),
            Formula::strict(Comparison::Restricted(g.clone()), pos, neg),
        ),
        // the guard has to look inside [w]_Γ, not all of W_w
        (Interpretation::Cp, LemmaForm::Sound) => {
            let kind = Comparison::Restricted(g.clone());
            Formula::implies(
                Formula::strict(kind.clone(), phi.clone(), Formula::bottom()),
                Formula::strict(kind, pos, neg),
            )
        }
        (Interpretation::Ms, LemmaForm::Literal) => Formula::implies(
            Formula::possibly(phi.clone()),
            Formula::strict(Comparison::Superset(g.clone()), pos, neg),
        ),
        // one conjunct per maximal agreement pattern λ of the φ-worlds
        (Interpretation::Ms, LemmaForm::Sound) => {
            let kind = Comparison::Superset(g.clone());
            let k = g.len();
            Formula::conj(gamma_star_unchecked(g).iter().map(|gamma| {
                let per_lambda = (0..1usize << k).map(|lam| {
                    let l = gamma.sub_conjunction(lam);
                    let phi_l = Formula::and(phi.clone(), l.clone());
                    let guard = Formula::conj(std::iter::once(Formula::possibly(phi_l.clone())).chain(
                        strict_supersets(lam, k).map(|lp| {
                            Formula::not(Formula::possibly(Formula::and(phi.clone(), gamma.sub_conjunction(lp))))
                        }),
                    ));
                    Formula::implies(
                        guard,
                        Formula::strict(
                            kind.clone(),
                            Formula::and(phi_l.clone(), psi.clone()),
                            Formula::and(phi_l, Formula::not(psi.clone())),
                        ),
                    )
                });
                Formula::implies(gamma.to_formula(), Formula::conj(per_lambda))
            }))
        }
    }
}

fn strict_supersets(lam: usize, k: usize) -> impl Iterator<Item = usize> {
    (0..1usize << k).filter(move |&lp| lp != lam && lp & lam == lam)
}

fn larger_subsets(lam: usize, k: usize) -> impl Iterator<Item = usize> {
    (0..1usize << k).filter(move |&lp| lp.count_ones() > lam.count_ones())
}

/// `φ ⊴^Γ ψ` in the plain fragment: `⋀_{γ∈Γ*} (γ → (φ∧γ) ≼ (ψ∧γ))`.
pub fn eliminate_cp_order(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    budget: &TranslationBudget,
) -> Result<Formula, TranslationError> {
    let out = cp_order(phi, g, psi, budget)?;
    check_size(&out, budget)?;
    Ok(out)
}

fn cp_order(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    budget: &TranslationBudget,
) -> Result<Formula, TranslationError> {
    Ok(Formula::conj(gamma_star(g, budget)?.iter().map(|gamma| {
        let c = gamma.to_formula();
        Formula::implies(
            c.clone(),
            Formula::compare(
                Comparison::Plain,
                Formula::and(phi.clone(), c.clone()),
                Formula::and(psi.clone(), c),
            ),
        )
    })))
}

/// `φ ⊑^Γ ψ` in the plain fragment. For the pattern γ of the current world
/// and each `λ ⊆ γ`: if no φ-world agrees on a strict superset of λ, the
/// φ-worlds agreeing on λ must cover the ψ-worlds agreeing on λ.
pub fn eliminate_ms_order(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    budget: &TranslationBudget,
) -> Result<Formula, TranslationError> {
    let out = ms_order(phi, g, psi, budget)?;
    check_size(&out, budget)?;
    Ok(out)
}

fn ms_order(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    budget: &TranslationBudget,
) -> Result<Formula, TranslationError> {
    agreement_elimination(
        phi,
        g,
        psi,
        budget,
        |lam, k| strict_supersets(lam, k).collect(),
        |gamma, lam, _| gamma.sub_conjunction(lam),
    )
}

/// `φ ≼^Γ ψ` in the plain fragment, with the guard ranging over larger
/// agreement patterns.
pub fn eliminate_nc_order(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    budget: &TranslationBudget,
) -> Result<Formula, TranslationError> {
    eliminate_nc_order_with(phi, g, psi, budget, LemmaForm::Sound)
}

pub fn eliminate_nc_order_with(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    budget: &TranslationBudget,
    form: LemmaForm,
) -> Result<Formula, TranslationError> {
    let out = nc_order(phi, g, psi, budget, form)?;
    check_size(&out, budget)?;
    Ok(out)
}

fn nc_order(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    budget: &TranslationBudget,
    form: LemmaForm,
) -> Result<Formula, TranslationError> {
    agreement_elimination(
        phi,
        g,
        psi,
        budget,
        |lam, k| larger_subsets(lam, k).collect(),
        |gamma, lam, k| {
            match form {
                LemmaForm::Literal => gamma.sub_conjunction(lam),
                // a φ-world agreeing on as many members, not necessarily the same ones
                LemmaForm::Sound => Formula::disj(
                    (0..1usize << k)
                        .filter(|mu| mu.count_ones() == lam.count_ones())
                        .map(|mu| gamma.sub_conjunction(mu)),
                ),
            }
        },
    )
}

fn agreement_elimination(
    phi: &Formula,
    g: &ClauseSet,
    psi: &Formula,
    budget: &TranslationBudget,
    guards: impl Fn(usize, usize) -> Vec<usize>,
    witness: impl Fn(&SignedConjunction, usize, usize) -> Formula,
) -> Result<Formula, TranslationError> {
    let k = g.len();
    let star = gamma_star(g, budget)?;
    let out = Formula::conj(star.iter().map(|gamma| {
        let per_lambda = (0..1usize << k).map(|lam| {
            let guard = Formula::conj(
                guards(lam, k)
                    .into_iter()
                    .map(|lp| Formula::not(Formula::possibly(Formula::and(phi.clone(), gamma.sub_conjunction(lp))))),
            );
            Formula::implies(
                guard,
                Formula::compare(
                    Comparison::Plain,
                    Formula::and(phi.clone(), witness(gamma, lam, k)),
                    Formula::and(psi.clone(), gamma.sub_conjunction(lam)),
                ),
            )
        });
        Formula::implies(gamma.to_formula(), Formula::conj(per_lambda))
    }));
    Ok(out)
}

/// Rewrites one comparison whose operands and clause are already in the
/// plain fragment.
pub fn eliminate_comparison(
    kind: &Comparison,
    left: &Formula,
    right: &Formula,
    budget: &TranslationBudget,
    form: LemmaForm,
) -> Result<Formula, TranslationError> {
    let out = comparison(kind, left, right, budget, form)?;
    check_size(&out, budget)?;
    Ok(out)
}

fn comparison(
    kind: &Comparison,
    left: &Formula,
    right: &Formula,
    budget: &TranslationBudget,
    form: LemmaForm,
) -> Result<Formula, TranslationError> {
    match kind {
        Comparison::Plain => Ok(Formula::compare(Comparison::Plain, left.clone(), right.clone())),
        Comparison::Restricted(g) => cp_order(left, g, right, budget),
        Comparison::Superset(g) => ms_order(left, g, right, budget),
        Comparison::Counting(g) => nc_order(left, g, right, budget, form),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TranslationStats {
    /// Written-out tree size of the output.
    pub nodes: u64,
    /// Distinct shared nodes of the output.
    pub shared_nodes: usize,
    /// `|Γ*|` of the largest clause expanded.
    pub gamma_star_size: usize,
    pub modalities_lowered: usize,
    pub comparisons_eliminated: usize,
}

#[derive(Debug, Clone)]
pub struct Translation {
    pub formula: Formula,
    pub stats: TranslationStats,
}

struct Translator {
    x: Interpretation,
    budget: TranslationBudget,
    form: LemmaForm,
    memo: HashMap<usize, (Formula, Formula)>,
    /// Addresses of outputs, which are already in the fragment.
    done: HashSet<usize>,
    stats: TranslationStats,
}

impl Translator {
    fn clause(&mut self, g: &ClauseSet) -> Result<ClauseSet, TranslationError> {
        check_clause(g, &self.budget)?;
        self.stats.gamma_star_size = self.stats.gamma_star_size.max(1 << g.len());
        if g.iter().all(Formula::is_plain_fragment) {
            return Ok(g.clone());
        }
        let members = g.iter().map(|gm| self.go(gm)).collect::<Result<Vec<_>, _>>()?;
        Ok(ClauseSet::new(members))
    }

    fn eliminate_all(&mut self, f: &Formula) -> Result<Formula, TranslationError> {
        // lowering output only has Γ-comparisons over already translated parts
        let mut memo: HashMap<usize, (Formula, Formula)> = HashMap::new();
        self.eliminate_rec(f, &mut memo)
    }

    fn eliminate_rec(
        &mut self,
        f: &Formula,
        memo: &mut HashMap<usize, (Formula, Formula)>,
    ) -> Result<Formula, TranslationError> {
        if let Some((_, out)) = memo.get(&f.addr()) {
            return Ok(out.clone());
        }
        if self.done.contains(&f.addr()) {
            return Ok(f.clone());
        }
        let out = match f.node() {
            Node::Atom(_) | Node::Bottom => f.clone(),
            Node::Not(a) => {
                let a2 = self.eliminate_rec(a, memo)?;
                if a2.addr() == a.addr() {
                    f.clone()
                } else {
                    Formula::not(a2)
                }
            }
            Node::Or(a, b) => {
                let (a2, b2) = (self.eliminate_rec(a, memo)?, self.eliminate_rec(b, memo)?);
                if a2.addr() == a.addr() && b2.addr() == b.addr() {
                    f.clone()
                } else {
                    Formula::or(a2, b2)
                }
            }
            Node::Compare { kind, left, right } => {
                if *kind == Comparison::Plain {
                    f.clone()
                } else {
                    self.stats.comparisons_eliminated += 1;
                    comparison(kind, left, right, &self.budget, self.form)?
                }
            }
            Node::CpBox { .. } => unreachable!("lowering output has no conditionals"),
        };
        memo.insert(f.addr(), (f.clone(), out.clone()));
        Ok(out)
    }

    fn go(&mut self, f: &Formula) -> Result<Formula, TranslationError> {
        if let Some((_, out)) = self.memo.get(&f.addr()) {
            return Ok(out.clone());
        }
        let out = match f.node() {
            Node::Atom(_) | Node::Bottom => f.clone(),
            Node::Not(a) => Formula::not(self.go(a)?),
            Node::Or(a, b) => Formula::or(self.go(a)?, self.go(b)?),
            Node::CpBox {
                antecedent,
                clause,
                consequent,
            } => {
                let phi = self.go(antecedent)?;
                let psi = self.go(consequent)?;
                let g = self.clause(clause)?;
                self.stats.modalities_lowered += 1;
                let lowered = lower_cp_modality_with(&phi, &g, &psi, self.x, self.form);
                self.eliminate_all(&lowered)?
            }
            Node::Compare { kind, left, right } => {
                let l = self.go(left)?;
                let r = self.go(right)?;
                let kind = match kind {
                    Comparison::Plain => Comparison::Plain,
                    Comparison::Restricted(g) => Comparison::Restricted(self.clause(g)?),
                    Comparison::Counting(g) => Comparison::Counting(self.clause(g)?),
                    Comparison::Superset(g) => Comparison::Superset(self.clause(g)?),
                };
                if kind != Comparison::Plain {
                    self.stats.comparisons_eliminated += 1;
                }
                comparison(&kind, &l, &r, &self.budget, self.form)?
            }
        };
        if matches!(f.node(), Node::CpBox { .. } | Node::Compare { .. }) {
            check_size(&out, &self.budget)?;
        }
        self.done.insert(out.addr());
        self.memo.insert(f.addr(), (f.clone(), out.clone()));
        Ok(out)
    }
}

/// Translates `f`, read under `x`, into the plain fragment.
pub fn translate_full(f: &Formula, x: Interpretation, budget: &TranslationBudget) -> Result<Formula, TranslationError> {
    Ok(translate_with_stats(f, x, budget, LemmaForm::Sound)?.formula)
}

pub fn translate_with_stats(
    f: &Formula,
    x: Interpretation,
    budget: &TranslationBudget,
    form: LemmaForm,
) -> Result<Translation, TranslationError> {
    let mut t = Translator {
        x,
        budget: *budget,
        form,
        memo: HashMap::new(),
        done: HashSet::new(),
        stats: TranslationStats::default(),
    };
    let formula = t.go(f)?;
    let mut stats = t.stats;
    stats.nodes = formula.tree_size();
    stats.shared_nodes = formula.dag_size();
    Ok(Translation { formula, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ConditionalModel;
    use crate::oracle::builtin_model;
    use crate::semantics::{extension, satisfies};
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn same_extension(m: &ConditionalModel, a: &Formula, b: &Formula, x: Interpretation) -> bool {
        extension(m, a, x) == extension(m, b, x)
    }

    #[test]
    fn gamma_star_listing() {
        let g = ClauseSet::new([f("p"), f("~q")]);
        let star: Vec<String> = gamma_star(&g, &TranslationBudget::default())
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(star, ["p & ~q", "~p & ~q", "p & ~~q", "~p & ~~q"]);

        let empty = gamma_star(&ClauseSet::empty(), &TranslationBudget::default()).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].to_formula(), Formula::top());

        let three = ClauseSet::of_atoms(["a", "b", "c"]);
        assert_eq!(gamma_star(&three, &TranslationBudget::default()).unwrap().len(), 8);
        let four = ClauseSet::of_atoms(["a", "b", "c", "d"]);
        assert!(matches!(
            gamma_star(&four, &TranslationBudget::default()),
            Err(TranslationError::ClauseTooLarge { size: 4, max: 3 })
        ));
    }

    #[test]
    fn nc_lowering_shape() {
        let g = ClauseSet::of_atoms(["m"]);
        let out = lower_cp_modality(&f("p"), &g, &f("h"), Interpretation::Nc);
        let expected = Formula::implies(
            Formula::possibly(f("p")),
            Formula::strict(Comparison::Counting(g), f("p & h"), f("p & ~h")),
        );
        assert_eq!(out, expected);
        assert_eq!(out.to_string(), "~(_|_ =< p) -> ~(p & ~h =<{m}nc p & h)");
    }

    #[test]
    fn cp_order_elimination_shape() {
        let b = TranslationBudget::default();
        let out = eliminate_cp_order(&f("a"), &ClauseSet::of_atoms(["m"]), &f("b"), &b).unwrap();
        assert_eq!(out, f("(m -> (a & m =< b & m)) & (~m -> (a & ~m =< b & ~m))"));
        let out = eliminate_cp_order(&f("a"), &ClauseSet::empty(), &f("b"), &b).unwrap();
        assert_eq!(
            out,
            Formula::implies(
                Formula::top(),
                Formula::compare(
                    Comparison::Plain,
                    Formula::and(f("a"), Formula::top()),
                    Formula::and(f("b"), Formula::top()),
                )
            )
        );
    }

    #[test]
    fn ms_and_nc_coincide_on_singletons() {
        let b = TranslationBudget::default();
        let g = ClauseSet::of_atoms(["m"]);
        let ms = eliminate_ms_order(&f("a"), &g, &f("b"), &b).unwrap();
        let nc = eliminate_nc_order_with(&f("a"), &g, &f("b"), &b, LemmaForm::Literal).unwrap();
        assert_eq!(ms, nc);
    }

    #[test]
    fn orders_eliminate_on_fine() {
        let m = builtin_model("fine").unwrap();
        let b = TranslationBudget::default();
        for g in [
            ClauseSet::empty(),
            ClauseSet::of_atoms(["m"]),
            ClauseSet::of_atoms(["m", "s"]),
        ] {
            for (l, r) in [("p & m", "p & s"), ("p & s", "p & m"), ("p", "_|_"), ("h", "~h")] {
                let (l, r) = (f(l), f(r));
                for kind in [
                    Comparison::Restricted(g.clone()),
                    Comparison::Counting(g.clone()),
                    Comparison::Superset(g.clone()),
                ] {
                    let direct = Formula::compare(kind.clone(), l.clone(), r.clone());
                    let out = eliminate_comparison(&kind, &l, &r, &b, LemmaForm::Sound).unwrap();
                    assert!(out.is_plain_fragment());
                    assert!(same_extension(&m, &direct, &out, Interpretation::Cp), "{direct}");
                }
            }
        }
    }

    #[test]
    fn full_translation_on_builtins() {
        let b = TranslationBudget::default();
        for name in ["fine", "lewis", "noiter"] {
            let m = builtin_model(name).unwrap();
            for src in [
                "p cf> h",
                "[p, {m}] h",
                "[p, {m, s}] h",
                "[p, {m, s}] ~h",
                "[p, {s}] [q, {}] r",
                "<p, {s, h}> (q | r)",
                "[p, {[q, {}] r}] s",
            ] {
                for x in Interpretation::ALL {
                    let direct = f(src);
                    let out = translate_full(&direct, x, &b).unwrap();
                    assert!(out.is_plain_fragment());
                    for w in m.world_ids() {
                        assert_eq!(
                            satisfies(&m, w, &direct, x),
                            satisfies(&m, w, &out, Interpretation::Cp),
                            "{name} {src} {x} at {}",
                            m.world_name(w)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn literal_strict_lowering_fails_on_vacuous_clause() {
        let m = builtin_model("fine").unwrap();
        let w = m.world("w").unwrap();
        let g = ClauseSet::of_atoms(["m", "s"]);
        let lit = lower_cp_modality_with(&f("p"), &g, &f("h"), Interpretation::Cp, LemmaForm::Literal);
        let sound = lower_cp_modality(&f("p"), &g, &f("h"), Interpretation::Cp);
        let direct = f("[p, {m, s}] h");
        assert!(satisfies(&m, w, &direct, Interpretation::Cp));
        assert!(satisfies(&m, w, &sound, Interpretation::Cp));
        assert!(!satisfies(&m, w, &lit, Interpretation::Cp));
    }

    #[test]
    fn literal_superset_lowering_fails_on_incomparable_minima() {
        let m = builtin_model("fine").unwrap();
        let w = m.world("w").unwrap();
        let g = ClauseSet::of_atoms(["m", "s"]);
        let lit = lower_cp_modality_with(&f("p"), &g, &f("h"), Interpretation::Ms, LemmaForm::Literal);
        let sound = lower_cp_modality(&f("p"), &g, &f("h"), Interpretation::Ms);
        assert!(!satisfies(&m, w, &f("[p, {m, s}] h"), Interpretation::Ms));
        assert!(!satisfies(&m, w, &sound, Interpretation::Ms));
        assert!(satisfies(&m, w, &lit, Interpretation::Ms));
    }

    #[test]
    fn literal_counting_elimination_fails() {
        // w agrees with itself on a and b; v (a φ-world) agrees only on b and
        // u (a ψ-world) only on a, so v covers u by count alone
        let m = ConditionalModel::builder("nc")
            .worlds(["w", "v", "u"])
            .val("a", ["w", "u"])
            .val("b", ["w", "v"])
            .val("phi", ["v"])
            .val("psi", ["u"])
            .order("w", [vec!["w"], vec!["v"], vec!["u"]])
            .build()
            .unwrap();
        let w = m.world("w").unwrap();
        let b = TranslationBudget::default();
        let g = ClauseSet::of_atoms(["a", "b"]);
        let direct = Formula::compare(Comparison::Counting(g.clone()), f("phi"), f("psi"));
        let lit = eliminate_nc_order_with(&f("phi"), &g, &f("psi"), &b, LemmaForm::Literal).unwrap();
        let sound = eliminate_nc_order(&f("phi"), &g, &f("psi"), &b).unwrap();
        assert!(satisfies(&m, w, &direct, Interpretation::Cp));
        assert!(satisfies(&m, w, &sound, Interpretation::Cp));
        assert!(!satisfies(&m, w, &lit, Interpretation::Cp));
    }

    #[test]
    fn budget_is_enforced() {
        let tight = TranslationBudget {
            max_clause: 3,
            max_nodes: 50,
        };
        let r = translate_full(&f("[p, {a, b, c}] q"), Interpretation::Ms, &tight);
        assert!(matches!(r, Err(TranslationError::TooLarge { max: 50, .. })));
        let r = translate_full(
            &f("[p, {a, b, c, d}] q"),
            Interpretation::Cp,
            &TranslationBudget::default(),
        );
        assert!(matches!(r, Err(TranslationError::ClauseTooLarge { .. })));
    }

    #[test]
    fn stats_are_reported() {
        let t = translate_with_stats(
            &f("[p, {m}] h"),
            Interpretation::Cp,
            &TranslationBudget::default(),
            LemmaForm::Sound,
        )
        .unwrap();
        assert_eq!(t.stats.gamma_star_size, 2);
        assert_eq!(t.stats.modalities_lowered, 1);
        assert_eq!(t.stats.nodes, t.formula.tree_size());
    }
}
