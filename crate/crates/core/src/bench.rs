//! Seeded benchmark workloads on the Feynman arrangements.
//!
//! The published numerators for these denominators are not available, so
//! each sample builds one inside the ideal: a random combination
//! `Σ c_T ∏_{i∈T} ℓ_i` over a few `d`-subsets `T`, with small random
//! coefficients `c_T`. Phases are timed separately.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::bounded_pfd_via_flats;
use crate::error::{Error, Result};
use crate::ideal::{product_of, Restriction};
use crate::matroid::{Arrangement, Mode};
use crate::parse::parse_problem;
use crate::pfd::{reduce_and_pfd, verify_pfd, Certification, PfdOptions, RationalFunction};
use crate::poly::{monomials_up_to_degree, rat, Degree, Monomial, Polynomial};

pub const DEFAULT_SEED: u64 = 20_240_917;

const SMALL: &str = include_str!("../fixtures/feynman_small.problem");
const LARGE: &str = include_str!("../fixtures/feynman_large.problem");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// 12 forms in 6 variables, full generator set at degree 8.
    FeynmanSmall,
    /// 29 forms in 5 variables, restricted generator subsets.
    FeynmanLarge,
    All,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub suite: Suite,
    pub seed: u64,
    pub samples: usize,
    /// Generator degree of the synthetic numerators.
    pub d: Option<usize>,
    /// Degree of the random coefficients `c_T`.
    pub coefficient_degree: Option<u32>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { suite: Suite::All, seed: DEFAULT_SEED, samples: 2, d: None, coefficient_degree: None }
    }
}

#[derive(Clone, Debug)]
pub struct SampleReport {
    pub suite: &'static str,
    pub sample: usize,
    pub numerator_degree: u32,
    pub numerator_terms: usize,
    pub target: usize,
    pub degree: Option<usize>,
    pub terms: usize,
    pub certification: Option<Certification>,
    pub verified: bool,
    pub phases: Vec<(&'static str, Duration)>,
}

impl SampleReport {
    /// Found a decomposition of at least the construction degree that verifies.
    pub fn passed(&self) -> bool {
        self.verified && self.degree.is_some_and(|d| d >= self.target)
    }

    pub fn total(&self) -> Duration {
        self.phases.iter().map(|(_, t)| *t).sum()
    }
}

pub fn feynman_small() -> Result<RationalFunctionParts> {
    RationalFunctionParts::load(SMALL)
}

pub fn feynman_large() -> Result<RationalFunctionParts> {
    RationalFunctionParts::load(LARGE)
}

/// An arrangement from a problem file that carries no numerator.
#[derive(Clone, Debug)]
pub struct RationalFunctionParts {
    pub arrangement: Arrangement,
}

impl RationalFunctionParts {
    fn load(text: &str) -> Result<Self> {
        Ok(RationalFunctionParts { arrangement: parse_problem(text)?.arrangement()? })
    }

    pub fn with_numerator(&self, f: Polynomial) -> Result<RationalFunction> {
        RationalFunction::new(f, self.arrangement.forms().to_vec(), self.arrangement.mode())
    }
}

/// A random polynomial of total degree exactly `deg` with a few terms and
/// small nonzero integer coefficients; homogeneous in projective mode.
pub fn random_coefficient(a: &Arrangement, deg: u32, rng: &mut impl Rng) -> Polynomial {
    let r = a.vars().len();
    let all = monomials_up_to_degree(r, deg);
    let top: Vec<&Monomial> = all.iter().filter(|m| m.degree() == deg).collect();
    let lower: Vec<&Monomial> = all.iter().filter(|m| m.degree() < deg).collect();
    let mut terms: Vec<(Monomial, crate::poly::Rational)> = Vec::new();
    let coeff = |rng: &mut dyn rand::RngCore| {
        let c: i64 = rng.gen_range(1..=5);
        if rng.gen_bool(0.5) {
            rat(c)
        } else {
            rat(-c)
        }
    };
    terms.push(((*top.choose(rng).expect("some monomial")).clone(), coeff(rng)));
    let extra = rng.gen_range(0..=2);
    for _ in 0..extra {
        let pool = if a.mode() == Mode::Affine && !lower.is_empty() && rng.gen_bool(0.5) { &lower } else { &top };
        terms.push(((*pool.choose(rng).expect("some monomial")).clone(), coeff(rng)));
    }
    Polynomial::from_terms(a.vars(), terms)
}

/// `Σ c_T ∏_{i∈T} ℓ_i` over `k` distinct random subsets drawn from `candidates`,
/// resampled until the total degree is `d + coefficient_degree`.
pub fn synthetic_numerator(
    a: &Arrangement,
    candidates: &[Vec<usize>],
    k: usize,
    coefficient_degree: u32,
    rng: &mut impl Rng,
) -> Result<Polynomial> {
    let d = candidates.first().map(Vec::len).ok_or_else(|| Error::Invalid("no generator subsets".into()))?;
    let want = d as u32 + coefficient_degree;
    for _ in 0..100 {
        let chosen: Vec<&Vec<usize>> = candidates.choose_multiple(rng, k.min(candidates.len())).collect();
        let mut f = Polynomial::zero(a.vars());
        for t in chosen {
            let g = product_of(a, t);
            if g.is_zero() {
                continue;
            }
            f = &f + &(&random_coefficient(a, coefficient_degree, rng) * &g);
        }
        if f.total_degree() == Degree::Finite(want) {
            return Ok(f);
        }
    }
    Err(Error::Invalid("could not draw a numerator of the requested degree".into()))
}

/// `count` distinct random `d`-subsets of `0..n`, sorted.
pub fn random_subsets(n: usize, d: usize, count: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let idx: Vec<usize> = (0..n).collect();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        let mut t: Vec<usize> = idx.choose_multiple(rng, d).copied().collect();
        t.sort_unstable();
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.sort();
    out
}

fn all_subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

fn timed<T>(phases: &mut Vec<(&'static str, Duration)>, name: &'static str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    phases.push((name, t.elapsed()));
    out
}

fn run_sample(
    suite: &'static str,
    sample: usize,
    parts: &RationalFunctionParts,
    f: Polynomial,
    target: usize,
    opts: &PfdOptions,
) -> Result<SampleReport> {
    let mut phases = Vec::new();
    let a = &parts.arrangement;
    let numerator_degree = match f.total_degree() {
        Degree::Finite(k) => k,
        Degree::NegInfinity => 0,
    };
    let numerator_terms = f.len();
    let rf = parts.with_numerator(f)?;
    if opts.restriction == Restriction::All {
        let check = timed(&mut phases, "criterion", || bounded_pfd_via_flats(rf.numerator(), a, target))?;
        if !check.holds {
            return Err(Error::Invalid(format!("{suite} sample {sample}: synthetic numerator fails the criterion")));
        }
    }
    let res = timed(&mut phases, "pfd", || reduce_and_pfd(&rf, opts))?;
    let verified = match &res {
        Some(r) => timed(&mut phases, "verify", || verify_pfd(r, &rf)),
        None => false,
    };
    Ok(SampleReport {
        suite,
        sample,
        numerator_degree,
        numerator_terms,
        target,
        degree: res.as_ref().map(|r| r.degree),
        terms: res.as_ref().map_or(0, |r| r.terms.len()),
        certification: res.as_ref().map(|r| r.certification),
        verified,
        phases,
    })
}

/// Degree-`d + k` numerators in `I_{L,d}` on the 12-form arrangement,
/// decomposed with the full generator set.
pub fn small_suite(cfg: &BenchConfig) -> Result<Vec<SampleReport>> {
    let parts = feynman_small()?;
    let a = &parts.arrangement;
    let d = cfg.d.unwrap_or(8);
    let k = cfg.coefficient_degree.unwrap_or(3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let candidates = all_subsets(a.len(), d);
    let mut out = Vec::new();
    for s in 0..cfg.samples {
        let f = synthetic_numerator(a, &candidates, 4, k, &mut rng)?;
        out.push(run_sample("feynman-small", s + 1, &parts, f, d, &PfdOptions::default())?);
    }
    Ok(out)
}

/// The restricted workflow on the 29-form arrangement: a random family of
/// `d`-subsets is fixed, the numerator is built from a few of them, and the
/// decomposition uses only that family.
pub fn large_suite(cfg: &BenchConfig) -> Result<Vec<SampleReport>> {
    let parts = feynman_large()?;
    let a = &parts.arrangement;
    let d = cfg.d.unwrap_or(6);
    let k = cfg.coefficient_degree.unwrap_or(2);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9);
    let mut out = Vec::new();
    for s in 0..cfg.samples {
        let family = random_subsets(a.len(), d, 60, &mut rng);
        let f = synthetic_numerator(a, &family, 5, k, &mut rng)?;
        let opts = PfdOptions { restriction: Restriction::Subsets(family), ..Default::default() };
        out.push(run_sample("feynman-large", s + 1, &parts, f, d, &opts)?);
    }
    Ok(out)
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<SampleReport>> {
    let mut out = Vec::new();
    if matches!(cfg.suite, Suite::FeynmanSmall | Suite::All) {
        out.extend(small_suite(cfg)?);
    }
    if matches!(cfg.suite, Suite::FeynmanLarge | Suite::All) {
        out.extend(large_suite(cfg)?);
    }
    Ok(out)
}

fn secs(t: Duration) -> String {
    format!("{:.3}", t.as_secs_f64())
}

pub fn render(cfg: &BenchConfig, reports: &[SampleReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "seed: {}", cfg.seed);
    let _ = writeln!(
        s,
        "{:<14} {:>6} {:>6} {:>7} {:>6} {:>6} {:>6} {:<12} {:>9} {:>9} {:>9} {:>9}  status",
        "suite", "sample", "deg f", "f terms", "target", "degree", "terms", "cert", "criterion", "pfd", "verify", "total"
    );
    for r in reports {
        let phase = |name: &str| {
            r.phases.iter().find(|(n, _)| *n == name).map_or_else(|| "-".to_string(), |(_, t)| secs(*t))
        };
        let _ = writeln!(
            s,
            "{:<14} {:>6} {:>6} {:>7} {:>6} {:>6} {:>6} {:<12} {:>9} {:>9} {:>9} {:>9}  {}",
            r.suite,
            r.sample,
            r.numerator_degree,
            r.numerator_terms,
            r.target,
            r.degree.map_or_else(|| "-".to_string(), |d| d.to_string()),
            r.terms,
            r.certification.map_or_else(|| "-".to_string(), |c| c.to_string()),
            phase("criterion"),
            phase("pfd"),
            phase("verify"),
            secs(r.total()),
            if r.passed() { "ok" } else { "FAILED" }
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_numerators_are_reproducible() {
        let parts = feynman_small().unwrap();
        let cands = all_subsets(parts.arrangement.len(), 8);
        assert_eq!(cands.len(), 495);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            synthetic_numerator(&parts.arrangement, &cands, 3, 3, &mut rng).unwrap()
        };
        let f = draw(7);
        assert_eq!(f, draw(7));
        assert_eq!(f.total_degree(), Degree::Finite(11));
    }

    #[test]
    fn random_subsets_are_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_subsets(29, 6, 60, &mut rng);
        assert_eq!(s.len(), 60);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.iter().all(|t| t.len() == 6 && t.windows(2).all(|w| w[0] < w[1])));
    }
}
