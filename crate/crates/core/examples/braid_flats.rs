//! Flats of the braid arrangement B5 grouped by partition type, and the
//! exponent census of its decomposition at d = 8.

use pfdkit::cli::braid_flat_table;
use pfdkit::decomp::{exponent_census, primary_decomposition};
use pfdkit::matroid::braid_arrangement;

fn main() -> pfdkit::Result<()> {
    println!("{:<12} {:>6} {:>5}", "type", "flats", "size");
    for (lambda, count, size) in braid_flat_table(5)? {
        println!("{:<12} {count:>6} {size:>5}", lambda.to_string());
    }

    let a = braid_arrangement(5)?;
    let comps = primary_decomposition(&a, 8)?;
    println!("\nd = 8:");
    for (exp, count) in exponent_census(&comps) {
        println!("  {count:>2} components with exponent {exp}");
    }
    Ok(())
}
