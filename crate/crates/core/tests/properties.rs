use proptest::prelude::*;

use ceteris::dynamics::{update, UpdateDescriptor};
use ceteris::models::{validate_model, ValidationMode};
use ceteris::oracle::{random_model, GeneratorParams};
use ceteris::semantics::{agreement_set, Interpretation};
use ceteris::syntax::{
    parse_formula, render_formula, universe_of_discourse, von_wright_clause, ClauseSet, Comparison, Formula, Node,
    PropUniverse,
};

const ATOMS: [&str; 5] = ["p", "q", "r", "s", "h"];

fn boolean() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        6 => proptest::sample::select(&ATOMS[..]).prop_map(Formula::atom),
        1 => Just(Formula::bottom()),
    ];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::and(a, b)),
        ]
    })
}

fn clause() -> impl Strategy<Value = ClauseSet> {
    proptest::collection::vec(boolean(), 0..=2).prop_map(ClauseSet::new)
}

fn comparison() -> impl Strategy<Value = Comparison> {
    prop_oneof![
        Just(Comparison::Plain),
        clause().prop_map(Comparison::Counting),
        clause().prop_map(Comparison::Restricted),
        clause().prop_map(Comparison::Superset),
    ]
}

/// Formulas nested at most five deep, over every constructor and sugar form.
fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        6 => proptest::sample::select(&ATOMS[..]).prop_map(Formula::atom),
        1 => Just(Formula::bottom()),
        1 => Just(Formula::top()),
    ];
    leaf.prop_recursive(5, 48, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), clause(), inner.clone()).prop_map(|(a, g, b)| Formula::cp_box(a, g, b)),
            (inner.clone(), clause(), inner.clone()).prop_map(|(a, g, b)| Formula::cp_diamond(a, g, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::counterfactual(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::might(a, b)),
            (comparison(), inner.clone(), inner.clone()).prop_map(|(k, a, b)| Formula::compare(k, a, b)),
            (comparison(), inner.clone(), inner.clone()).prop_map(|(k, a, b)| Formula::strict(k, a, b)),
            inner.clone().prop_map(Formula::possibly),
            inner.prop_map(Formula::necessarily),
        ]
    })
}

fn occurrences(f: &Formula, out: &mut Vec<Formula>) {
    out.push(f.clone());
    if let Node::CpBox { clause, .. }
    | Node::Compare {
        kind: Comparison::Counting(clause) | Comparison::Restricted(clause) | Comparison::Superset(clause),
        ..
    } = f.node()
    {
        for g in clause {
            occurrences(g, out);
        }
    }
    for c in f.children() {
        occurrences(&c, out);
    }
}

fn small_model() -> impl Strategy<Value = ceteris::ConditionalModel> {
    any::<u64>().prop_map(|seed| {
        random_model(&GeneratorParams {
            max_worlds: 5,
            ..GeneratorParams::with_seed(&GeneratorParams::default(), seed)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn render_then_parse_is_identity(f in formula()) {
        let text = render_formula(&f);
        let back = parse_formula(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, f, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn universe_is_monotone(f in formula()) {
        let whole = universe_of_discourse(&f);
        let mut subs = Vec::new();
        occurrences(&f, &mut subs);
        for s in subs {
            prop_assert!(universe_of_discourse(&s).is_subset(&whole), "{}", s);
        }
    }

    #[test]
    fn von_wright_clause_avoids_mentioned(a in formula(), b in formula(), extra in proptest::collection::btree_set(proptest::sample::select(&["t", "u", "p", "q"][..]), 0..4)) {
        let mut universe: PropUniverse = universe_of_discourse(&a);
        universe.extend(universe_of_discourse(&b));
        universe.extend(extra.iter().map(|n| ceteris::syntax::Prop::new(n)));
        let g = von_wright_clause(&a, &b, &universe);
        let clause_props: PropUniverse = g.iter().flat_map(universe_of_discourse).collect();
        prop_assert!(clause_props.is_subset(&universe));
        prop_assert!(clause_props.is_disjoint(&universe_of_discourse(&a)));
        prop_assert!(clause_props.is_disjoint(&universe_of_discourse(&b)));
    }

    #[test]
    fn agreement_set_is_symmetric_and_full_on_diagonal(m in small_model(), g in clause()) {
        for x in Interpretation::ALL {
            for u in m.world_ids() {
                prop_assert_eq!(agreement_set(&m, &g, u, u, x).len(), g.len());
                for v in m.world_ids() {
                    prop_assert_eq!(agreement_set(&m, &g, u, v, x), agreement_set(&m, &g, v, u, x));
                }
            }
        }
    }

    #[test]
    fn generated_models_validate(m in small_model()) {
        let report = validate_model(&m, ValidationMode::Strict);
        prop_assert!(report.is_ok(), "{}", report);
    }

    #[test]
    fn cp_update_shrinks_and_is_idempotent(m in small_model(), g in clause()) {
        let d = UpdateDescriptor::new(g, Interpretation::Cp);
        let once = update(&m, &d);
        for w in m.world_ids() {
            prop_assert!(once.order(w).domain().is_subset(m.order(w).domain()));
        }
        let twice = update(&once, &d);
        for w in m.world_ids() {
            prop_assert_eq!(once.order(w), twice.order(w));
        }
    }

    #[test]
    fn nc_update_keeps_center_first(m in small_model(), g in clause()) {
        let once = update(&m, &UpdateDescriptor::new(g, Interpretation::Nc));
        for w in m.world_ids() {
            let o = once.order(w);
            prop_assert_eq!(o.domain(), m.order(w).domain());
            for u in o.domain().iter().filter(|&u| u != w) {
                prop_assert!(o.lt(w, u));
            }
        }
    }
}
