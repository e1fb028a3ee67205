//! Iterative refinement decomposes each term again until nothing changes.

use pfdkit::fixtures::fixture;
use pfdkit::pfd::{reduce_and_pfd, render_document, PfdOptions, RationalFunction};

fn main() -> pfdkit::Result<()> {
    let rf = RationalFunction::from_problem(&fixture("two-pfds")?.load_problem()?)?;
    let once = reduce_and_pfd(&rf, &PfdOptions::default())?.expect("decomposes");
    let refined = reduce_and_pfd(&rf, &PfdOptions { iterative: true, ..Default::default() })?.expect("decomposes");
    println!("single pass: degree {}, {} terms", once.degree, once.terms.len());
    println!("iterative:   degree {}, {} terms\n", refined.degree, refined.terms.len());
    print!("{}", render_document(&refined, &rf));
    Ok(())
}
