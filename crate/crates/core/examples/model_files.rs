//! Read a model file, report validation problems, and print it back.

use ceteris::models::{parse_model_with, validate_model, ValidationMode};
use ceteris::render_model;

const TEXT: &str = "\
model demo
worlds w a b c
val p: a b
val q: b
order w: w | a b | c
order a: a | w
";

const PARTIAL: &str = "\
model partial
worlds w a b
val p: a
order-pairs w: w<=w, w<=a, w<=b, a<=a, b<=b
";

const BROKEN: &str = "\
model broken
worlds w a
val p: a
order w: a | w
";

fn main() {
    let m = parse_model_with(TEXT, ValidationMode::Strict).unwrap();
    print!("{}", validate_model(&m, ValidationMode::Strict));
    print!("{}", render_model(&m));

    let loose = parse_model_with(PARTIAL, ValidationMode::Relaxed).unwrap();
    print!("{}", validate_model(&loose, ValidationMode::Strict));
    print!("{}", render_model(&loose));
    if let Err(e) = parse_model_with(BROKEN, ValidationMode::Relaxed) {
        println!("load: {e}");
    }
}
