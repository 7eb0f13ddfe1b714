//! Seeded random models and the exhaustive enumeration of small ones.

use ceteris::oracle::{enumerate_models, random_models, GeneratorParams};
use ceteris::render_model;

fn main() {
    let params = GeneratorParams {
        max_worlds: 4,
        props: 2,
        seed: 2024,
        ..Default::default()
    };
    for m in random_models(&params).take(2) {
        print!("{}", render_model(&m));
        println!();
    }
    for (n, k) in [(1, 1), (2, 1), (3, 0), (3, 2)] {
        println!(
            "{n} worlds, {k} props: {} models",
            enumerate_models(n, k).unwrap().len()
        );
    }
}
