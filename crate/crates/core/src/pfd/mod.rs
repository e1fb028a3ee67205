//! Partial fraction decompositions `f / (ℓ_1⋯ℓ_n) = Σ c_T / ∏_{j∉T} ℓ_j`.
//!
//! A decomposition of degree `d` uses `d`-subsets `T` and coefficients with
//! `deg c_T ≤ deg f − d`. The pipeline is:
//!
//! 1. [`reduced_exp`] removes spurious poles, forms dividing the numerator.
//! 2. [`pfd`] finds the largest `d` for which such a decomposition exists
//!    and extracts coefficients.
//! 3. [`verify_pfd`] recombines the terms exactly.
//!
//! ```
//! use pfdkit::parse::parse_problem;
//! use pfdkit::pfd::{pfd, verify_pfd, PfdOptions, RationalFunction};
//!
//! let text = "mode: projective\nvars: x y\nnumerator: 13*y - 6*x\n\
//!             denominators:\n  y - 3*x\n  x + y\n  x - 2*y\n";
//! let rf = RationalFunction::from_problem(&parse_problem(text).unwrap()).unwrap();
//! let result = pfd(&rf, &PfdOptions::default()).unwrap().unwrap();
//! assert_eq!(result.degree, 1);
//! assert_eq!(result.terms.len(), 3);
//! assert!(verify_pfd(&result, &rf));
//! ```

mod document;

pub use document::{parse_document, render_document, render_json, PfdDocument, TermRecord};

use std::fmt;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::decomp::FlatOrders;
use crate::error::{Error, Result};
use crate::ideal::{
    dfold_generators, express_bounded_degree, express_recursive, BoundedOptions, GbLimits, GeneratorSpec,
    IdealWithBasis, Representation, Restriction,
};
use crate::linalg::RationalMatrix;
use crate::matroid::{Arrangement, Mode};
use crate::parse::ProblemFile;
use crate::poly::{Degree, Polynomial, Rational, Vars};

/// `f / ∏ ℓ_i` with the forms kept as an ordered multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Polynomial,
    forms: Vec<Polynomial>,
    mode: Mode,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, forms: Vec<Polynomial>, mode: Mode) -> Result<Self> {
        if numerator.is_zero() {
            return Err(Error::Invalid("numerator is zero".into()));
        }
        for (i, l) in forms.iter().enumerate() {
            if !crate::poly::same_vars(l.vars(), numerator.vars()) {
                return Err(Error::AmbientMismatch);
            }
            if l.total_degree() != Degree::Finite(1) {
                return Err(Error::DenominatorDegree { index: i + 1, degree: l.total_degree().to_string() });
            }
            if mode == Mode::Projective && !l.is_homogeneous() {
                return Err(Error::Invalid(format!("form {} has a constant term in projective mode", i + 1)));
            }
        }
        if mode == Mode::Projective && !numerator.is_homogeneous() {
            return Err(Error::Invalid("projective numerator must be homogeneous".into()));
        }
        Ok(RationalFunction { numerator, forms, mode })
    }

    pub fn from_problem(p: &ProblemFile) -> Result<Self> {
        Self::new(p.numerator()?.clone(), p.denominators.clone(), p.mode)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vars(&self) -> &Vars {
        self.numerator.vars()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn arrangement(&self) -> Result<Arrangement> {
        Arrangement::new(self.vars(), self.forms.clone(), self.mode, false)
    }

    pub fn to_problem(&self) -> ProblemFile {
        ProblemFile {
            vars: self.vars().clone(),
            mode: self.mode,
            numerator: Some(self.numerator.clone()),
            denominators: self.forms.clone(),
            allow_zero_forms: false,
        }
    }

    /// Index of the first form dividing the numerator.
    pub fn first_divisor(&self) -> Result<Option<usize>> {
        for (i, l) in self.forms.iter().enumerate() {
            if self.numerator.divide_by_linear(l)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Output of [`reduced_exp`]; indices refer to the input forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub function: RationalFunction,
    pub removed: Vec<usize>,
    /// Input index of every surviving form.
    pub kept: Vec<usize>,
}

/// Divides out every form that divides the numerator, in index order.
pub fn reduced_exp(rf: &RationalFunction) -> Result<Reduced> {
    let mut f = rf.numerator.clone();
    let mut removed = Vec::new();
    let mut kept = Vec::new();
    for (i, l) in rf.forms.iter().enumerate() {
        match f.divide_by_linear(l)? {
            Some(q) => {
                f = q;
                removed.push(i);
            }
            None => kept.push(i),
        }
    }
    let forms = kept.iter().map(|&i| rf.forms[i].clone()).collect();
    Ok(Reduced { function: RationalFunction { numerator: f, forms, mode: rf.mode }, removed, kept })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Gb,
    Linear,
    Recursive,
    Generic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Gb => "gb",
            Method::Linear => "linear",
            Method::Recursive => "recursive",
            Method::Generic => "generic",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Method::Auto,
            "gb" => Method::Gb,
            "linear" => Method::Linear,
            "recursive" => Method::Recursive,
            "generic" => Method::Generic,
            _ => return Err(Error::Invalid(format!("unknown method `{s}`"))),
        })
    }
}

/// How far the reported degree is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// No decomposition of higher degree exists.
    Maximal,
    /// Found with a restricted generator set or by refinement; higher degrees may exist.
    LowerBound,
    /// The degree was fixed by the caller.
    Requested,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certification::Maximal => "maximal",
            Certification::LowerBound => "lower-bound",
            Certification::Requested => "requested",
        })
    }
}

impl std::str::FromStr for Certification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "maximal" => Certification::Maximal,
            "lower-bound" => Certification::LowerBound,
            "requested" => Certification::Requested,
            _ => return Err(Error::Invalid(format!("unknown certification `{s}`"))),
        })
    }
}

/// `numerator / ∏_{j ∈ denominator} ℓ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfdTerm {
    pub numerator: Polynomial,
    /// Sorted form indices.
    pub denominator: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfdResult {
    pub degree: usize,
    /// Sorted by denominator, one term per denominator.
    pub terms: Vec<PfdTerm>,
    pub method: Method,
    pub certification: Certification,
    pub iterative: bool,
}

impl PfdResult {
    /// Terms as `(T, c_T)` with `T` the complement of the denominator.
    pub fn representation(&self, n: usize) -> Representation {
        Representation::new(
            self.terms.iter().map(|t| (complement(&t.denominator, n), t.numerator.clone())).collect(),
        )
    }

    fn from_representation(rep: Representation, n: usize, degree: usize, method: Method, cert: Certification) -> Self {
        let mut terms: Vec<PfdTerm> = rep
            .terms
            .into_iter()
            .map(|(t, c)| PfdTerm { numerator: c, denominator: complement(&t, n) })
            .collect();
        terms.sort_by(|a, b| a.denominator.cmp(&b.denominator));
        PfdResult { degree, terms, method, certification: cert, iterative: false }
    }

    /// Merges like denominators, drops zero terms and sorts.
    fn normalize(&mut self) {
        let mut terms = std::mem::take(&mut self.terms);
        terms.sort_by(|a, b| a.denominator.cmp(&b.denominator));
        let mut out: Vec<PfdTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.denominator == t.denominator => last.numerator = &last.numerator + &t.numerator,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.numerator.is_zero());
        self.terms = out;
    }

    /// Re-indexes denominators through `map` (local index to input index).
    pub fn remap(&mut self, map: &[usize]) {
        for t in &mut self.terms {
            for i in &mut t.denominator {
                *i = map[*i];
            }
            t.denominator.sort_unstable();
        }
        self.normalize();
    }
}

fn complement(t: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| t.binary_search(i).is_err()).collect()
}

#[derive(Clone, Debug)]
pub struct PfdOptions {
    /// Compute at exactly this degree.
    pub degree: Option<usize>,
    /// Upper end of the degree search.
    pub max_degree: Option<usize>,
    pub method: Method,
    pub restriction: Restriction,
    pub iterative: bool,
    pub gb_limits: GbLimits,
    pub bounded: BoundedOptions,
    /// Above this many unknowns `auto` prefers the recursive method over the linear solve.
    pub auto_linear_unknowns: usize,
}

impl Default for PfdOptions {
    fn default() -> Self {
        PfdOptions {
            degree: None,
            max_degree: None,
            method: Method::Auto,
            restriction: Restriction::All,
            iterative: false,
            gb_limits: GbLimits::default(),
            bounded: BoundedOptions::default(),
            auto_linear_unknowns: 20_000,
        }
    }
}

/// Decomposition of maximal degree, or `None` when none of positive degree exists.
///
/// The input must be fully reduced; see [`reduced_exp`].
pub fn pfd(rf: &RationalFunction, opts: &PfdOptions) -> Result<Option<PfdResult>> {
    if let Some(i) = rf.first_divisor()? {
        return Err(Error::Precondition(format!(
            "form {} divides the numerator; reduce the expression first",
            i + 1
        )));
    }
    let n = rf.len();
    if let Some(d) = opts.degree {
        if d == 0 || d > n {
            return Err(Error::Invalid(format!("degree {d} must lie in 1..={n}")));
        }
    }
    if n == 0 {
        let term = PfdTerm { numerator: rf.numerator.clone(), denominator: Vec::new() };
        return Ok(Some(PfdResult {
            degree: 0,
            terms: vec![term],
            method: concrete(opts.method),
            certification: Certification::Maximal,
            iterative: false,
        }));
    }
    if opts.iterative {
        return iterate(rf, opts);
    }
    let a = rf.arrangement()?;
    let Degree::Finite(df) = rf.numerator.total_degree() else { unreachable!("nonzero numerator") };
    let spec = |d: usize| GeneratorSpec { d, restriction: opts.restriction.clone(), ..GeneratorSpec::all(d) };
    let restricted = opts.restriction != Restriction::All;

    if let Some(d) = opts.degree {
        return Ok(extract(rf, &a, &spec(d), opts)?
            .map(|(rep, m)| PfdResult::from_representation(rep, n, d, m, Certification::Requested)));
    }
    let cap = n.min(df as usize).min(opts.max_degree.unwrap_or(n));
    if cap == 0 {
        return Ok(None);
    }

    if restricted {
        let degrees: Vec<usize> = match &opts.restriction {
            Restriction::Subsets(s) => s.first().map(|t| vec![t.len()]).unwrap_or_default(),
            _ => (1..=cap).collect(),
        };
        let mut best = None;
        for d in degrees.into_iter().filter(|&d| d >= 1 && d <= cap) {
            match extract(rf, &a, &spec(d), opts)? {
                Some((rep, m)) => best = Some(PfdResult::from_representation(rep, n, d, m, Certification::LowerBound)),
                None => break,
            }
        }
        return Ok(best);
    }

    if opts.method == Method::Gb {
        // ideal membership first, then step down until the degree bound can be met
        let mut top = 0;
        for d in 1..=cap {
            let ideal = IdealWithBasis::dfold(&a, &spec(d))?.with_limits(opts.gb_limits);
            if ideal.member(&rf.numerator).map_err(guard)? {
                top = d;
            } else {
                break;
            }
        }
        for d in (1..=top).rev() {
            if let Some((rep, m)) = extract(rf, &a, &spec(d), opts)? {
                return Ok(Some(PfdResult::from_representation(rep, n, d, m, Certification::Maximal)));
            }
        }
        return Ok(None);
    }

    let orders = FlatOrders::new(&rf.numerator, &a, true)?;
    let mut top = 0;
    for d in 1..=cap {
        if orders.holds(d) {
            top = d;
        } else {
            break;
        }
    }
    if top == 0 {
        return Ok(None);
    }
    match extract(rf, &a, &spec(top), opts)? {
        Some((rep, m)) => Ok(Some(PfdResult::from_representation(rep, n, top, m, Certification::Maximal))),
        None => Err(Error::Invalid(format!("no coefficients found at degree {top} although the flat criterion holds"))),
    }
}

fn guard(e: Error) -> Error {
    match e {
        Error::ResourceGuard(m) => {
            Error::ResourceGuard(format!("{m}; consider --restrict-generators or --method linear"))
        }
        e => e,
    }
}

fn concrete(m: Method) -> Method {
    match m {
        Method::Auto => Method::Linear,
        m => m,
    }
}

/// Unknown count of the bounded linear system at degree `d`.
fn linear_unknowns(rf: &RationalFunction, spec: &GeneratorSpec) -> Result<u128> {
    let n = rf.len();
    let gens = match &spec.restriction {
        Restriction::All => binomial(n as u128, spec.d as u128),
        _ => spec.subsets(n)?.len() as u128,
    };
    let Degree::Finite(df) = rf.numerator.total_degree() else { return Ok(0) };
    let b = (df as usize).saturating_sub(spec.d) as u128;
    let r = rf.vars().len() as u128;
    let homogeneous = rf.mode == Mode::Projective;
    let monos = if homogeneous { binomial(r + b - 1, b) } else { binomial(r + b, b) };
    Ok(gens * monos)
}

/// Coefficients at degree `spec.d` with the bound `deg c_T ≤ deg f − d`.
fn extract(
    rf: &RationalFunction,
    a: &Arrangement,
    spec: &GeneratorSpec,
    opts: &PfdOptions,
) -> Result<Option<(Representation, Method)>> {
    let f = &rf.numerator;
    let Degree::Finite(df) = f.total_degree() else { unreachable!() };
    let d = spec.d;
    if (df as usize) < d {
        return Ok(None);
    }
    let bound = df as i64 - d as i64;
    let restricted = spec.restriction != Restriction::All;
    let linear = |spec: &GeneratorSpec| -> Result<Option<(Representation, Method)>> {
        Ok(express_bounded_degree(f, a, spec, bound, &opts.bounded)
            .map_err(guard)?
            .map(|r| (r, Method::Linear)))
    };
    let method = match opts.method {
        Method::Auto => {
            if !restricted && generic_applies(rf, a, d)? {
                Method::Generic
            } else if restricted || linear_unknowns(rf, spec)? <= opts.auto_linear_unknowns as u128 {
                Method::Linear
            } else {
                Method::Recursive
            }
        }
        m => m,
    };
    match method {
        Method::Generic => {
            if d as u32 != df || restricted {
                return Err(Error::Precondition("the generic method needs deg f = d and all generators".into()));
            }
            Ok(generic_solve(rf, a)?.map(|r| (r, Method::Generic)))
        }
        Method::Linear | Method::Auto => linear(spec),
        Method::Recursive => {
            if restricted {
                return linear(spec);
            }
            Ok(express_recursive(f, a, d)?.map(|r| (r, Method::Recursive)))
        }
        Method::Gb => {
            let gens = dfold_generators(a, spec)?;
            let polys: Vec<Polynomial> = gens.iter().map(|(_, g)| g.clone()).collect();
            let ideal = IdealWithBasis::new(a.vars(), polys).with_limits(opts.gb_limits);
            let Some(coeffs) = ideal.express_in_generators(f).map_err(guard)? else { return Ok(None) };
            let rep = Representation::new(gens.into_iter().map(|(t, _)| t).zip(coeffs).collect());
            if rep.max_coefficient_degree() <= Degree::Finite(bound as u32) {
                Ok(Some((rep, Method::Gb)))
            } else {
                // quotients broke the degree bound; the linear system enforces it
                linear(spec)
            }
        }
    }
}

fn generic_applies(rf: &RationalFunction, a: &Arrangement, d: usize) -> Result<bool> {
    let Degree::Finite(df) = rf.numerator.total_degree() else { return Ok(false) };
    if rf.mode != Mode::Projective || df as usize != d {
        return Ok(false);
    }
    let rank = a.rank();
    if a.len() + 1 != d + rank {
        return Ok(false);
    }
    is_uniform(a, rank, 20_000)
}

/// Whether every `rank`-subset of forms is independent; `false` above `limit` subsets.
fn is_uniform(a: &Arrangement, rank: usize, limit: u128) -> Result<bool> {
    if binomial(a.len() as u128, rank as u128) > limit {
        return Ok(false);
    }
    let subsets = GeneratorSpec { max_generators: usize::MAX, ..GeneratorSpec::all(rank) }.subsets(a.len())?;
    for s in subsets {
        if a.rank_of_subset(&s)? < rank {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique scalar solution over the `d`-fold products, `d = n − rank + 1`.
fn generic_solve(rf: &RationalFunction, a: &Arrangement) -> Result<Option<Representation>> {
    let d = a.len() + 1 - a.rank();
    let gens = dfold_generators(a, &GeneratorSpec::all(d))?;
    let mut index = std::collections::BTreeMap::new();
    for (m, _) in rf.numerator.terms().iter().chain(gens.iter().flat_map(|(_, g)| g.terms())) {
        let k = index.len();
        index.entry(m.clone()).or_insert(k);
    }
    let mut mat = RationalMatrix::zeros(index.len(), gens.len());
    for (j, (_, g)) in gens.iter().enumerate() {
        for (m, c) in g.terms() {
            mat.set(index[m], j, c.clone());
        }
    }
    let mut rhs = vec![Rational::from_integer(0.into()); index.len()];
    for (m, c) in rf.numerator.terms() {
        rhs[index[m]] = c.clone();
    }
    let Some(x) = mat.solve(&rhs) else { return Ok(None) };
    let terms = gens
        .into_iter()
        .zip(x)
        .map(|((t, _), c)| (t, Polynomial::constant(a.vars(), c)))
        .collect();
    Ok(Some(Representation::new(terms)))
}

/// The unique decomposition of a generic arrangement with `deg f = n − rank + 1`.
pub fn pfd_generic(rf: &RationalFunction) -> Result<Option<PfdResult>> {
    let a = rf.arrangement()?;
    let rank = a.rank();
    let d = a.len() + 1 - rank;
    if !rf.numerator.is_homogeneous() || rf.mode != Mode::Projective {
        return Err(Error::Precondition("the generic path needs a projective problem".into()));
    }
    if rf.numerator.total_degree() != Degree::Finite(d as u32) {
        return Err(Error::Precondition(format!(
            "numerator degree {} differs from n - rank + 1 = {d}",
            rf.numerator.total_degree()
        )));
    }
    if !is_uniform(&a, rank, u128::MAX)? {
        return Err(Error::Precondition(format!("some {rank} forms are dependent")));
    }
    Ok(generic_solve(rf, &a)?
        .map(|rep| PfdResult::from_representation(rep, a.len(), d, Method::Generic, Certification::Maximal)))
}

/// Iterative refinement: a degree-one split, then each term is decomposed
/// again over its own denominator until nothing changes.
fn iterate(rf: &RationalFunction, opts: &PfdOptions) -> Result<Option<PfdResult>> {
    let step = PfdOptions { iterative: false, max_degree: Some(1), degree: None, ..opts.clone() };
    let Some(first) = pfd(rf, &step)? else { return Ok(None) };
    let full = PfdOptions { iterative: false, max_degree: None, degree: None, ..opts.clone() };
    let mut done: Vec<PfdTerm> = Vec::new();
    let mut queue = first.terms;
    while let Some(term) = queue.pop() {
        if term.denominator.is_empty() {
            done.push(term);
            continue;
        }
        let forms = term.denominator.iter().map(|&i| rf.forms[i].clone()).collect();
        let sub = RationalFunction::new(term.numerator.clone(), forms, rf.mode)?;
        let red = reduced_exp(&sub)?;
        let map: Vec<usize> = red.kept.iter().map(|&k| term.denominator[k]).collect();
        let refined = if red.function.is_empty() { None } else { pfd(&red.function, &full)? };
        match refined {
            Some(mut res) if res.degree > 0 => {
                res.remap(&map);
                queue.extend(res.terms);
            }
            _ if !red.removed.is_empty() => queue.push(PfdTerm { numerator: red.function.numerator, denominator: map }),
            _ => done.push(term),
        }
    }
    let n = rf.len();
    let degree = n - done.iter().map(|t| t.denominator.len()).max().unwrap_or(0);
    let mut res = PfdResult {
        degree,
        terms: done,
        method: first.method,
        certification: Certification::LowerBound,
        iterative: true,
    };
    res.normalize();
    Ok(Some(res))
}

/// [`reduced_exp`] followed by [`pfd`], reported against the input forms.
///
/// Every removed form raises the degree by one. Without any decomposition
/// of the reduced expression, a nonempty removal still yields one term.
pub fn reduce_and_pfd(rf: &RationalFunction, opts: &PfdOptions) -> Result<Option<PfdResult>> {
    let red = reduced_exp(rf)?;
    let k = red.removed.len();
    let mut local = opts.clone();
    if let Some(d) = opts.degree {
        if d > rf.len() || d == 0 {
            return Err(Error::Invalid(format!("degree {d} must lie in 1..={}", rf.len())));
        }
        if d <= k {
            return Err(Error::Invalid(format!("degree {d} is below the {k} removed forms")));
        }
        local.degree = Some(d - k);
    }
    local.max_degree = opts.max_degree.map(|m| m.saturating_sub(k));
    local.restriction = restriction_after_removal(&opts.restriction, &red.removed, &red.kept, rf.forms());
    let res = match local.max_degree {
        Some(0) => None,
        _ => pfd(&red.function, &local)?,
    };
    let mut res = match res {
        Some(r) => r,
        None if k > 0 && opts.degree.is_none() => PfdResult {
            degree: 0,
            terms: vec![PfdTerm {
                numerator: red.function.numerator.clone(),
                denominator: (0..red.function.len()).collect(),
            }],
            method: concrete(opts.method),
            certification: if opts.restriction == Restriction::All {
                Certification::Maximal
            } else {
                Certification::LowerBound
            },
            iterative: opts.iterative,
        },
        None => return Ok(None),
    };
    res.degree += k;
    res.remap(&red.kept);
    Ok(Some(res))
}

/// Moves a generator restriction onto the reduced forms. Each removed form
/// is cancelled against itself or a proportional copy in the subset; a
/// subset without a match for every removed form is dropped.
fn restriction_after_removal(r: &Restriction, removed: &[usize], kept: &[usize], forms: &[Polynomial]) -> Restriction {
    if removed.is_empty() {
        return r.clone();
    }
    let local = |i: usize| kept.binary_search(&i).ok();
    let monic: Vec<Polynomial> = forms.iter().map(Polynomial::monic).collect();
    let cancel = |t: &[usize]| -> Option<Vec<usize>> {
        let mut rest = t.to_vec();
        for &i in removed {
            let at = rest.iter().position(|&j| j == i).or_else(|| rest.iter().position(|&j| monic[j] == monic[i]))?;
            rest.remove(at);
        }
        rest.iter().map(|&j| local(j)).collect()
    };
    match r {
        Restriction::All => Restriction::All,
        Restriction::Forms(pool) => Restriction::Forms(pool.iter().filter_map(|&i| local(i)).collect()),
        Restriction::Subsets(subsets) => {
            let mut out: Vec<Vec<usize>> = subsets.iter().filter_map(|t| cancel(t)).collect();
            for t in &mut out {
                t.sort_unstable();
            }
            out.sort();
            out.dedup();
            Restriction::Subsets(out)
        }
    }
}

/// Reason a decomposition fails to reproduce the input, if any.
pub fn check_pfd(result: &PfdResult, rf: &RationalFunction) -> std::result::Result<(), String> {
    let n = rf.len();
    let df = rf.numerator.total_degree();
    for (k, t) in result.terms.iter().enumerate() {
        if t.numerator.is_zero() {
            return Err(format!("term {} has a zero numerator", k + 1));
        }
        if !crate::poly::same_vars(t.numerator.vars(), rf.vars()) {
            return Err(format!("term {} lives in a different ring", k + 1));
        }
        if t.denominator.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("term {} has an unsorted or repeated denominator index", k + 1));
        }
        if t.denominator.iter().any(|&i| i >= n) {
            return Err(format!("term {} uses a form outside the input", k + 1));
        }
        if n - t.denominator.len() < result.degree {
            return Err(format!("term {} has {} denominator forms, more than n - d", k + 1, t.denominator.len()));
        }
        let Degree::Finite(df) = df else { unreachable!() };
        let allowed = df as i64 - (n - t.denominator.len()) as i64;
        if let Degree::Finite(dc) = t.numerator.total_degree() {
            if dc as i64 > allowed {
                return Err(format!("term {} numerator degree {dc} exceeds the bound {allowed}", k + 1));
            }
        }
    }
    let rep = result.representation(n);
    let lookup = |i: usize| &rf.forms[i];
    let sum = crate::ideal::expand_terms(rf.vars(), &lookup, &rep.terms, 0);
    if sum != rf.numerator {
        return Err("terms do not recombine to the numerator".into());
    }
    Ok(())
}

/// Exact recombination plus the degree and pole checks.
pub fn verify_pfd(result: &PfdResult, rf: &RationalFunction) -> bool {
    check_pfd(result, rf).is_ok()
}

/// Whether some decomposition term of degree `n − 1` is reducible, i.e.
/// whether some form divides the numerator.
pub fn reducible_term_criterion(rf: &RationalFunction, d: usize) -> Result<bool> {
    let n = rf.len();
    if n < 2 || d != n - 1 {
        return Err(Error::Precondition(format!("only d = n - 1 is covered (n = {n}, d = {d})")));
    }
    let a = rf.arrangement()?;
    for i in 0..n {
        for j in i + 1..n {
            if a.rank_of_subset(&[i, j])? < 2 {
                return Err(Error::Precondition(format!("forms {} and {} are proportional", i + 1, j + 1)));
            }
        }
    }
    if !crate::decomp::bounded_pfd_via_flats(&rf.numerator, &a, d)?.holds {
        return Err(Error::Precondition(format!("the numerator admits no decomposition of degree {d}")));
    }
    Ok(rf.first_divisor()?.is_some())
}

#[cfg(test)]
mod tests;
