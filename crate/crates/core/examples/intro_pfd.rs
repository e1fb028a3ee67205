//! Decompose `(13y - 6x) / ((y - 3x)(x + y)(x - 2y))` and check the result.

use pfdkit::parse::parse_problem;
use pfdkit::pfd::{pfd, render_document, verify_pfd, PfdOptions, RationalFunction};

const PROBLEM: &str = "\
mode: projective
vars: x y
numerator: 13*y - 6*x
denominators:
  y - 3*x
  x + y
  x - 2*y
";

fn main() -> pfdkit::Result<()> {
    let rf = RationalFunction::from_problem(&parse_problem(PROBLEM)?)?;
    let res = pfd(&rf, &PfdOptions::default())?.expect("the numerator lies in I_{L,1}");
    print!("{}", render_document(&res, &rf));
    assert!(verify_pfd(&res, &rf));
    println!("\nrecombines exactly: {} terms of degree {}", res.terms.len(), res.degree);
    Ok(())
}
