//! The three readings of "other things being equal" as orders at one world:
//! agreement sets, the induced relation, and the closest antecedent worlds.

use ceteris::semantics::{agreement_set, cp_relation};
use ceteris::{builtin_model, extension, parse_formula, ClauseSet, Interpretation};

fn main() {
    let fine = builtin_model("fine").unwrap();
    let w = fine.world("w").unwrap();
    let g = ClauseSet::of_atoms(["m", "s"]);
    let p = extension(&fine, &parse_formula("p").unwrap(), Interpretation::Cp);

    for u in fine.world_ids() {
        let a = agreement_set(&fine, &g, w, u, Interpretation::Cp);
        println!("A({}) = {}", fine.world_name(u), a.as_clause());
    }
    for x in Interpretation::ALL {
        let rel = cp_relation(&fine, &g, w, x);
        let strict: Vec<String> = rel
            .domain()
            .iter()
            .flat_map(|u| rel.domain().iter().map(move |v| (u, v)))
            .filter(|&(u, v)| rel.lt(u, v))
            .map(|(u, v)| format!("{}<{}", fine.world_name(u), fine.world_name(v)))
            .collect();
        println!(
            "{x}: total {}, min p-worlds {{{}}}, strict pairs {}",
            rel.is_total(),
            fine.names_of(&rel.min(&p)).join(" "),
            strict.join(" ")
        );
    }
}
