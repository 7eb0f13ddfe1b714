//! Reduce ceteris paribus formulas to the plain comparative possibility
//! fragment, then confirm on every world of a model that nothing changed.

use ceteris::translation::{translate_with_stats, LemmaForm};
use ceteris::{builtin_model, parse_formula, satisfies, Interpretation, TranslationBudget};

fn main() {
    let budget = TranslationBudget::default();
    let fine = builtin_model("fine").unwrap();
    for src in ["[p, {}] h", "[p, {m}] h", "[p, {m, s}] ~h", "<p, {m}> h =<{s}nc p"] {
        let f = parse_formula(src).unwrap();
        for x in Interpretation::ALL {
            let t = translate_with_stats(&f, x, &budget, LemmaForm::Sound).unwrap();
            let same = fine
                .world_ids()
                .all(|w| satisfies(&fine, w, &f, x) == satisfies(&fine, w, &t.formula, x));
            println!(
                "{src} [{x}] -> {} nodes ({} shared), agrees on fine: {same}",
                t.stats.nodes, t.stats.shared_nodes
            );
        }
    }
    let small = translate_with_stats(
        &parse_formula("[p, {m}] h").unwrap(),
        Interpretation::Cp,
        &budget,
        LemmaForm::Sound,
    )
    .unwrap();
    println!("[p, {{m}}] h under CP:\n  {}", small.formula);
}
