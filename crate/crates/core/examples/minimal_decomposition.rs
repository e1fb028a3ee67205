//! The flat decomposition can be redundant; `minimal_decomposition` prunes it.

use pfdkit::decomp::{minimal_decomposition, primary_decomposition, render_report, verify_decomposition};
use pfdkit::fixtures::fixture;

fn main() -> pfdkit::Result<()> {
    for name in ["matrix-a", "matrix-b"] {
        let a = fixture(name)?.load_problem()?.arrangement()?;
        let comps = primary_decomposition(&a, 4)?;
        let minimal = minimal_decomposition(&a, 4, &comps)?;
        println!("{name}: {} flat components, {} after pruning", comps.len(), minimal.len());
        print!("{}", render_report(&a, &minimal));
        println!("verified: {}\n", verify_decomposition(&a, 4, &minimal, 64)?);
    }
    Ok(())
}
