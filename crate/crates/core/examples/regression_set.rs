//! Prints the regression formula set; its output is `data/regression_formulas.txt`.

use imodal::corpus::{generate_regression_formulas, REGRESSION_SIZE_CAP};
use imodal::formula::{render, Style};

fn main() {
    println!("# Formulas over p, q and false with at most {REGRESSION_SIZE_CAP} nodes and modal depth <= 2.");
    println!("# Regenerate with: cargo run -p imodal --example regression_set");
    for f in generate_regression_formulas() {
        println!("{}", render(&f, Style::Ascii));
    }
}
