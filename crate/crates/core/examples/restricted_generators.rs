//! Large arrangements: restrict the generators to a family of subsets. The
//! degree found is then only a lower bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pfdkit::bench::{feynman_large, random_subsets, synthetic_numerator};
use pfdkit::ideal::Restriction;
use pfdkit::pfd::{reduce_and_pfd, verify_pfd, PfdOptions};

fn main() -> pfdkit::Result<()> {
    let parts = feynman_large()?;
    let a = &parts.arrangement;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let family = random_subsets(a.len(), 6, 40, &mut rng);
    let f = synthetic_numerator(a, &family, 4, 2, &mut rng)?;
    let rf = parts.with_numerator(f)?;
    println!("{} forms, numerator with {} terms", a.len(), rf.numerator().len());

    let opts = PfdOptions { restriction: Restriction::Subsets(family), ..Default::default() };
    let res = reduce_and_pfd(&rf, &opts)?.expect("built inside the restricted ideal");
    println!(
        "degree {} ({}), {} terms, verified {}",
        res.degree,
        res.certification,
        res.terms.len(),
        verify_pfd(&res, &rf)
    );
    Ok(())
}
