//! Seeded synthetic numerators on the Feynman arrangements, timed by phase.
//!
//! `cargo run --release --example feynman_bench [SEED]`

use pfdkit::bench::{render, run, BenchConfig};

fn main() -> pfdkit::Result<()> {
    let mut cfg = BenchConfig { samples: 1, ..Default::default() };
    if let Some(seed) = std::env::args().nth(1) {
        cfg.seed = seed.parse().expect("seed is an integer");
    }
    print!("{}", render(&cfg, &run(&cfg)?));
    Ok(())
}
