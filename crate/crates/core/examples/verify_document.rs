//! Parse a decomposition document and recombine it against its problem.

use pfdkit::fixtures::fixture;
use pfdkit::pfd::{check_pfd, RationalFunction};

fn main() -> pfdkit::Result<()> {
    let entry = fixture("two-pfds")?;
    let rf = RationalFunction::from_problem(&entry.load_problem()?)?;
    for (name, doc) in entry.load_documents()? {
        let res = doc.to_result(&rf)?;
        println!("{name}: degree {}, {} terms: {:?}", res.degree, res.terms.len(), check_pfd(&res, &rf));
    }

    let mut broken = entry.load_documents()?.remove(0).1;
    broken.terms.pop();
    broken.term_count -= 1;
    let res = broken.to_result(&rf)?;
    println!("with a term dropped: {:?}", check_pfd(&res, &rf));
    Ok(())
}
