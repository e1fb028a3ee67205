//! Decide `f ∈ I_{L,d}` three ways: vanishing orders on flats, a Groebner
//! basis, and a bounded-degree linear solve.

use pfdkit::decomp::exists_pfd_via_flats;
use pfdkit::fixtures::fixture;
use pfdkit::ideal::{express_bounded_degree, BoundedOptions, GeneratorSpec, IdealWithBasis};

fn main() -> pfdkit::Result<()> {
    let p = fixture("two-pfds")?.load_problem()?;
    let a = p.arrangement()?;
    let f = p.numerator()?;
    let deg = f.total_degree().finite().unwrap_or(0) as i64;
    println!("f = {f}");
    for d in 1..=a.len() {
        let flats = exists_pfd_via_flats(f, &a, d)?;
        let gb = IdealWithBasis::dfold(&a, &GeneratorSpec::all(d))?.member(f)?;
        let linear =
            express_bounded_degree(f, &a, &GeneratorSpec::all(d), deg - d as i64, &BoundedOptions::default())?.is_some();
        print!("d = {d}: flats {} gb {gb} linear {linear}", flats.holds);
        match flats.witness {
            Some(w) => println!("  (flat {} has order {} < {})", w.flat.display_one_based(), w.actual, w.required),
            None => println!(),
        }
    }
    Ok(())
}
