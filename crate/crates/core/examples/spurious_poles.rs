//! A form dividing the numerator is removed before decomposing; the
//! reported degree counts it.

use pfdkit::fixtures::fixture;
use pfdkit::pfd::{reduce_and_pfd, reduced_exp, render_document, PfdOptions, RationalFunction};

fn main() -> pfdkit::Result<()> {
    let rf = RationalFunction::from_problem(&fixture("spurious")?.load_problem()?)?;
    let red = reduced_exp(&rf)?;
    for &i in &red.removed {
        println!("removed form {}: {}", i + 1, rf.forms()[i]);
    }
    println!("reduced numerator: {}", red.function.numerator());

    let res = reduce_and_pfd(&rf, &PfdOptions::default())?.expect("decomposes");
    print!("\n{}", render_document(&res, &rf));
    Ok(())
}
