//! Random cases and property checks shared by `properties` and `acceptance`.
#![allow(dead_code)]

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError};

use pfdkit::decomp::exists_pfd_via_flats;
use pfdkit::ideal::{
    express_bounded_degree, ideal_equal, maximal_ideal_power, product_of, BoundedOptions, GeneratorSpec,
    IdealWithBasis,
};
use pfdkit::linalg::RationalMatrix;
use pfdkit::matroid::{Arrangement, Mode};
use pfdkit::pfd::{check_pfd, reduce_and_pfd, reduced_exp, render_document, PfdOptions, RationalFunction};
use pfdkit::poly::{monomials_of_degree, rat, vars_from, Degree, Polynomial, Rational, Vars};

pub const SEED: u64 = 20_240_917;
pub const CASES: u32 = 200;

pub fn config() -> Config {
    Config { cases: CASES, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

const NAMES: [&str; 3] = ["x", "y", "z"];

pub fn ring(r: usize) -> Vars {
    vars_from(&NAMES[..r])
}

fn form(vars: &Vars, c: &[i64]) -> Polynomial {
    let coeffs: Vec<Rational> = c.iter().map(|&v| rat(v)).collect();
    Polynomial::linear(vars, &coeffs, rat(0))
}

fn forms(vars: &Vars, coeffs: &[i64]) -> Vec<Polynomial> {
    coeffs.chunks(vars.len()).map(|c| form(vars, c)).collect()
}

/// Homogeneous polynomial of degree `deg` from a stream of small integers.
fn homogeneous(vars: &Vars, deg: u32, coeffs: &[i64]) -> Polynomial {
    let ms = monomials_of_degree(vars.len(), deg);
    Polynomial::from_terms(vars, ms.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, rat(c))))
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// determinant identity

#[derive(Clone, Debug)]
pub struct DetCase {
    pub r: usize,
    pub d: usize,
    pub coeffs: Vec<i64>,
}

/// `r ≤ 3` variables and `n = r + d − 1 ≤ 6` forms.
pub fn det_case() -> impl Strategy<Value = DetCase> {
    (1usize..=3)
        .prop_flat_map(|r| (Just(r), 1usize..=(7 - r)))
        .prop_flat_map(|(r, d)| (Just(r), Just(d), proptest::collection::vec(-4i64..=4, (r + d - 1) * r)))
        .prop_map(|(r, d, coeffs)| DetCase { r, d, coeffs })
}

/// The coefficient matrix of the d-fold products has determinant equal,
/// up to sign, to the product of all maximal minors of the form matrix.
pub fn det_identity(c: &DetCase) -> Result<(), TestCaseError> {
    let vars = ring(c.r);
    let n = c.r + c.d - 1;
    let ls = forms(&vars, &c.coeffs);
    let a = ok(Arrangement::new(&vars, ls, Mode::Projective, true))?;
    let cols = monomials_of_degree(c.r, c.d as u32);
    let rows: Vec<Vec<Rational>> = subsets(n, c.d)
        .iter()
        .map(|t| {
            let p = product_of(&a, t);
            cols.iter().map(|m| p.coefficient(m)).collect()
        })
        .collect();
    check(rows.len() == cols.len(), "matrix is not square")?;
    let det = ok(RationalMatrix::from_rows(rows).det())?;
    let coeff_rows: Vec<Vec<Rational>> = c.coeffs.chunks(c.r).map(|v| v.iter().map(|&x| rat(x)).collect()).collect();
    let a_mat = RationalMatrix::from_rows(coeff_rows);
    let all_cols: Vec<usize> = (0..c.r).collect();
    let mut prod = rat(1);
    for s in subsets(n, c.r) {
        prod *= ok(a_mat.minor(&s, &all_cols))?;
    }
    check(det.abs() == prod.abs(), format!("det {det} vs minors {prod}"))
}

// generic arrangements

/// Forms in general position: every maximal minor is nonzero.
pub fn is_generic(r: usize, coeffs: &[i64]) -> bool {
    let n = coeffs.len() / r;
    let m = RationalMatrix::from_rows(coeffs.chunks(r).map(|v| v.iter().map(|&x| rat(x)).collect()).collect());
    let cols: Vec<usize> = (0..r).collect();
    n >= r && subsets(n, r).iter().all(|s| !m.minor(s, &cols).map(|v| v.is_zero()).unwrap_or(true))
}

pub fn generic_case() -> impl Strategy<Value = DetCase> {
    (1usize..=3)
        .prop_flat_map(|r| (Just(r), 1usize..=(7 - r)))
        .prop_flat_map(|(r, d)| (Just(r), Just(d), proptest::collection::vec(-5i64..=5, (r + d - 1) * r)))
        .prop_map(|(r, d, coeffs)| DetCase { r, d, coeffs })
        .prop_filter("general position", |c| is_generic(c.r, &c.coeffs))
}

pub fn generic_is_power_of_maximal(c: &DetCase) -> Result<(), TestCaseError> {
    let vars = ring(c.r);
    let a = ok(Arrangement::new(&vars, forms(&vars, &c.coeffs), Mode::Projective, false))?;
    let i = ok(IdealWithBasis::dfold(&a, &GeneratorSpec::all(c.d)))?;
    check(ok(ideal_equal(&i, &maximal_ideal_power(&vars, c.d as u32)))?, "I_{L,d} differs from m^d")
}

// membership

#[derive(Clone, Debug)]
pub struct MemberCase {
    pub r: usize,
    pub coeffs: Vec<i64>,
    pub d: usize,
    /// Build `f` from generators.
    pub member: bool,
    /// Degree of the coefficients on top of `d`.
    pub extra: u32,
    pub picks: Vec<usize>,
    pub values: Vec<i64>,
}

pub fn member_case() -> impl Strategy<Value = MemberCase> {
    (2usize..=3, 2usize..=6)
        .prop_flat_map(|(r, n)| {
            (
                Just(r),
                proptest::collection::vec(-2i64..=2, n * r),
                1usize..=n,
                any::<bool>(),
                0u32..=1,
                proptest::collection::vec(0usize..1000, 1..=3),
                proptest::collection::vec(-3i64..=3, 12),
            )
        })
        .prop_map(|(r, coeffs, d, member, extra, picks, values)| MemberCase { r, coeffs, d, member, extra, picks, values })
        .prop_filter("nonzero forms", |c| c.coeffs.chunks(c.r).all(|v| v.iter().any(|&x| x != 0)))
}

fn member_numerator(c: &MemberCase, a: &Arrangement) -> Polynomial {
    let vars = a.vars();
    if !c.member {
        return homogeneous(vars, c.d as u32 + c.extra, &c.values);
    }
    let all = subsets(a.len(), c.d);
    let mut f = Polynomial::zero(vars);
    for (k, &p) in c.picks.iter().enumerate() {
        let coeff = homogeneous(vars, c.extra, &c.values[k..]);
        f = &f + &(&coeff * &product_of(a, &all[p % all.len()]));
    }
    f
}

/// Groebner membership, the flat criterion and the bounded-degree solve
/// agree; returns the common verdict.
pub fn membership_agrees(c: &MemberCase) -> Result<bool, TestCaseError> {
    let vars = ring(c.r);
    let a = ok(Arrangement::new(&vars, forms(&vars, &c.coeffs), Mode::Projective, false))?;
    let f = member_numerator(c, &a);
    if f.is_zero() {
        return Ok(true);
    }
    let Degree::Finite(df) = f.total_degree() else { unreachable!() };
    let gb = ok(ok(IdealWithBasis::dfold(&a, &GeneratorSpec::all(c.d)))?.member(&f))?;
    let flats = ok(exists_pfd_via_flats(&f, &a, c.d))?.holds;
    let rep = ok(express_bounded_degree(&f, &a, &GeneratorSpec::all(c.d), df as i64 - c.d as i64, &BoundedOptions::default()))?;
    if let Some(rep) = &rep {
        check(rep.expand(&a) == f, "bounded representation does not expand to f")?;
    }
    check(gb == flats && flats == rep.is_some(), format!("gb {gb}, flats {flats}, bounded {}", rep.is_some()))?;
    check(!c.member || gb, "constructed member rejected")?;
    Ok(gb)
}

// wishlist

#[derive(Clone, Debug)]
pub struct RfCase {
    pub r: usize,
    pub coeffs: Vec<i64>,
    pub deg: u32,
    pub values: Vec<i64>,
    /// Forms multiplied into the numerator, creating removable poles.
    pub spurious: Vec<usize>,
}

pub fn rf_case() -> impl Strategy<Value = RfCase> {
    (2usize..=3, 2usize..=5)
        .prop_flat_map(|(r, n)| {
            (
                Just(r),
                proptest::collection::vec(-3i64..=3, n * r),
                0u32..=3,
                proptest::collection::vec(-4i64..=4, 10),
                proptest::collection::vec(0usize..n, 0..=2),
            )
        })
        .prop_map(|(r, coeffs, deg, values, spurious)| RfCase { r, coeffs, deg, values, spurious })
        .prop_filter("nonzero forms", |c| c.coeffs.chunks(c.r).all(|v| v.iter().any(|&x| x != 0)))
}

fn rational_function(c: &RfCase) -> Option<RationalFunction> {
    let vars = ring(c.r);
    let ls = forms(&vars, &c.coeffs);
    let mut f = homogeneous(&vars, c.deg, &c.values);
    for &i in &c.spurious {
        f = &f * &ls[i];
    }
    if f.is_zero() {
        return None;
    }
    RationalFunction::new(f, ls, Mode::Projective).ok()
}

/// (i) identical input gives byte-identical output.
pub fn deterministic(c: &RfCase) -> Result<(), TestCaseError> {
    let Some(rf) = rational_function(c) else { return Ok(()) };
    let run = || -> Result<Option<String>, TestCaseError> {
        Ok(ok(reduce_and_pfd(&rf, &PfdOptions::default()))?.map(|r| render_document(&r, &rf)))
    };
    check(run()? == run()?, "two runs differ")
}

/// (ii) every pole is an input form and every result verifies.
pub fn no_foreign_denominators(c: &RfCase) -> Result<(), TestCaseError> {
    let Some(rf) = rational_function(c) else { return Ok(()) };
    let Some(res) = ok(reduce_and_pfd(&rf, &PfdOptions::default()))? else { return Ok(()) };
    for t in &res.terms {
        check(t.denominator.iter().all(|&i| i < rf.len()), "denominator outside the input forms")?;
        check(t.denominator.windows(2).all(|w| w[0] < w[1]), "repeated denominator form")?;
    }
    check(check_pfd(&res, &rf).is_ok(), format!("{:?}", check_pfd(&res, &rf)))
}

#[derive(Clone, Debug)]
pub struct AddCase {
    pub member: MemberCase,
    pub other: Vec<usize>,
    pub other_values: Vec<i64>,
}

pub fn add_case() -> impl Strategy<Value = AddCase> {
    (
        member_case().prop_map(|mut c| {
            c.member = true;
            c
        }),
        proptest::collection::vec(0usize..1000, 1..=3),
        proptest::collection::vec(-3i64..=3, 12),
    )
        .prop_map(|(member, other, other_values)| AddCase { member, other, other_values })
}

/// (iii) coefficients of `f` and `g` add up to coefficients of `f + g`.
pub fn additive(c: &AddCase) -> Result<(), TestCaseError> {
    let vars = ring(c.member.r);
    let a = ok(Arrangement::new(&vars, forms(&vars, &c.member.coeffs), Mode::Projective, false))?;
    let f = member_numerator(&c.member, &a);
    let g = member_numerator(&MemberCase { picks: c.other.clone(), values: c.other_values.clone(), ..c.member.clone() }, &a);
    let spec = GeneratorSpec::all(c.member.d);
    let bound = c.member.extra as i64;
    let solve = |h: &Polynomial| {
        if h.is_zero() {
            return Ok(Some(pfdkit::ideal::Representation::new(Vec::new())));
        }
        ok(express_bounded_degree(h, &a, &spec, bound, &BoundedOptions::default()))
    };
    let (Some(rf), Some(rg)) = (solve(&f)?, solve(&g)?) else {
        return Err(TestCaseError::fail("member without representation"));
    };
    let sum = pfdkit::ideal::Representation::new(rf.terms.iter().chain(&rg.terms).cloned().collect());
    check(sum.expand(&a) == &f + &g, "summed coefficients miss f + g")?;
    let bounded = match sum.max_coefficient_degree() {
        Degree::Finite(k) => k as i64 <= bound,
        Degree::NegInfinity => true,
    };
    check(bounded, "summed coefficients exceed the degree bound")?;
    let h = &f + &g;
    check(h.is_zero() || solve(&h)?.is_some(), "f + g has no representation")
}

/// (iv) after reduction no form divides the numerator, and the removed
/// forms times the reduced numerator give back the input.
pub fn reduction_is_complete(c: &RfCase) -> Result<(), TestCaseError> {
    let Some(rf) = rational_function(c) else { return Ok(()) };
    let red = ok(reduced_exp(&rf))?;
    for l in red.function.forms() {
        check(ok(red.function.numerator().divide_by_linear(l))?.is_none(), format!("{l} still divides"))?;
    }
    let mut back = red.function.numerator().clone();
    for &i in &red.removed {
        back = &back * &rf.forms()[i];
    }
    check(&back == rf.numerator(), "reduction lost a factor")?;
    check(red.kept.len() + red.removed.len() == rf.len(), "form bookkeeping")
}
