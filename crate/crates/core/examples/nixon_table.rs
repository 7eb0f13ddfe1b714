//! The Nixon table: update the Fine model with a clause, then read off the
//! plain counterfactuals `p cf> h` and `p cf> ~h` at the actual world.

use ceteris::oracle::nixon_table;

fn main() {
    let cells = nixon_table();
    println!("{:<12} {:<8} {:<4} {:<6} expected", "query", "clause", "sem", "value");
    for c in &cells {
        let mark = if c.computed == c.expected { "" } else { "  MISMATCH" };
        println!(
            "{:<12} {:<8} {:<4} {:<6} {}{mark}",
            c.counterfactual, c.clause, c.interpretation, c.computed, c.expected
        );
    }
    let good = cells.iter().filter(|c| c.computed == c.expected).count();
    println!("{good}/{} cells agree", cells.len());
}
