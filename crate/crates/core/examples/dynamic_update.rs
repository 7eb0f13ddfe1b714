//! Ceteris paribus updates: the updated model's plain counterfactual matches
//! the static modality for a single step, but not when updates are iterated.

use ceteris::dynamics::static_and_dynamic;
use ceteris::{builtin_model, parse_formula, render_model, update, ClauseSet, Interpretation, UpdateDescriptor};

fn main() {
    let fine = builtin_model("fine").unwrap();
    for x in Interpretation::ALL {
        let updated = update(&fine, &UpdateDescriptor::new(ClauseSet::of_atoms(["m", "s"]), x));
        println!("# {{m, s}} under {x}");
        print!("{}", render_model(&updated));
    }

    let noiter = builtin_model("noiter").unwrap();
    let w = noiter.world("w").unwrap();
    let (stat, dynamic) = static_and_dynamic(
        &noiter,
        w,
        &parse_formula("p").unwrap(),
        &ClauseSet::of_atoms(["s"]),
        &parse_formula("[q, {}] r").unwrap(),
        Interpretation::Cp,
    );
    println!("noiter: [p, {{s}}] [q, {{}}] r is {stat}; after updating with {{s}}, p cf> [q, {{}}] r is {dynamic}");
}
