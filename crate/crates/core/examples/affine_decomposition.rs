//! Primary decomposition of `I_{L,3}` for x, y, x - 1, y - 1, x - y in the
//! affine plane: the two points where three lines meet.

use pfdkit::decomp::{component_ideal, homogenized_decomposition, primary_decomposition, render_report};
use pfdkit::fixtures::fixture;
use pfdkit::ideal::{ideal_equal, intersect_all, GeneratorSpec, IdealWithBasis};

fn main() -> pfdkit::Result<()> {
    let a = fixture("affine-grid")?.load_problem()?.arrangement()?;

    let h = a.homogenized("z")?;
    println!("homogenized ({} components):", homogenized_decomposition(&a, 3)?.len());
    print!("{}", render_report(&h, &homogenized_decomposition(&a, 3)?));

    let comps = primary_decomposition(&a, 3)?;
    println!("\naffine, components at infinity dropped:");
    print!("{}", render_report(&a, &comps));

    let ideals: Vec<IdealWithBasis> = comps.iter().map(|c| component_ideal(&a, c)).collect();
    let target = IdealWithBasis::dfold(&a, &GeneratorSpec::all(3))?;
    println!("\nintersection equals I_(L,3): {}", ideal_equal(&intersect_all(&ideals)?, &target)?);
    Ok(())
}
