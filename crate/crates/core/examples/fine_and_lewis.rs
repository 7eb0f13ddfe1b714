//! Evaluate the plain counterfactual and its ceteris paribus variants on the
//! two built-in Nixon models, with the closest worlds that decide each verdict.

use ceteris::semantics::explain;
use ceteris::{builtin_model, parse_formula, Interpretation};

fn main() {
    let queries = ["p cf> h", "[p, {m}] h", "[p, {m, s}] h", "[p, {m, s}] ~h"];
    for name in ["fine", "lewis"] {
        let m = builtin_model(name).unwrap();
        let w = m.world("w").unwrap();
        println!("{name}");
        for q in queries {
            let f = parse_formula(q).unwrap();
            for x in Interpretation::ALL {
                let t = explain(&m, w, &f, x);
                let min = t.min_worlds.map(|s| m.names_of(&s).join(" ")).unwrap_or_default();
                println!("  {x:<2} {:<5} {q:<16} min {{{min}}}", t.holds);
            }
        }
    }
}
