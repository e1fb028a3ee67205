//! A cosmological wavefunction coefficient over 11 facet hyperplanes:
//! flat census, then a degree-7 decomposition with constant numerators.
//!
//! Run in release mode: `cargo run --release --example wavefunction`.

use std::time::Instant;

use pfdkit::fixtures::fixture;
use pfdkit::matroid::census;
use pfdkit::pfd::{pfd, verify_pfd, Method, PfdOptions, RationalFunction};

fn main() -> pfdkit::Result<()> {
    let p = fixture("wavefunction")?.load_problem()?;
    let a = p.arrangement()?;
    let proper: Vec<_> = a.flats_min_size(5).into_iter().filter(|f| f.len() < a.len()).collect();
    for (size, count) in census(&proper) {
        println!("{count:>3} flats with {size} forms");
    }

    let rf = RationalFunction::from_problem(&p)?;
    let t = Instant::now();
    let res = pfd(&rf, &PfdOptions { method: Method::Linear, ..Default::default() })?.expect("degree 7 exists");
    let constant = res.terms.iter().filter(|t| t.numerator.is_constant()).count();
    println!(
        "\ndegree {}: {} terms, {constant} with constant numerators, {:.2} s, verified {}",
        res.degree,
        res.terms.len(),
        t.elapsed().as_secs_f64(),
        verify_pfd(&res, &rf)
    );
    Ok(())
}
