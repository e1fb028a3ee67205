//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] owns a shared, ordered list of variable names (its
//! ambient ring) and a vector of terms kept in descending graded reverse
//! lexicographic order with no zero coefficients. Two polynomials can only
//! be combined when their ambient rings agree.

mod monomial;
mod order;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use monomial::Monomial;
pub use order::{grevlex_cmp, MonomialOrder, OrderKind};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

pub type Rational = BigRational;

/// Shared ordered variable list.
pub type Vars = Arc<[String]>;

pub fn vars_from<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat2(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// All monomials of total degree `d` in `n` variables, descending grevlex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| grevlex_cmp(b, a));
    out
}

/// All monomials of total degree at most `d`, descending grevlex.
pub fn monomials_up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).rev().flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// Total degree; the zero polynomial has degree −∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone)]
pub struct Polynomial {
    vars: Vars,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub(crate) fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(vars.len()), c));
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn variable(vars: &Vars, index: usize) -> Self {
        Polynomial { vars: vars.clone(), terms: vec![(Monomial::var(vars.len(), index), Rational::one())] }
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::variable(vars, i))
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(vars: &Vars, terms: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), vars.len());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &Vars, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
        Polynomial { vars: vars.clone(), terms }
    }

    /// Linear polynomial `Σ coeffs[i]·x_i + constant`.
    pub fn linear(vars: &Vars, coeffs: &[Rational], constant: Rational) -> Self {
        let n = vars.len();
        let mut terms: Vec<(Monomial, Rational)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(n, i), c.clone()))
            .collect();
        if !constant.is_zero() {
            terms.push((Monomial::one(n), constant));
        }
        // x_0 > x_1 > ... > 1 in grevlex
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| grevlex_cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Degree {
        // grevlex is graded, so the first term has maximal degree
        match self.terms.first() {
            None => Degree::NegInfinity,
            Some((m, _)) => Degree::Finite(m.degree()),
        }
    }

    /// Degree of the lowest-degree nonzero homogeneous component.
    pub fn min_degree(&self) -> Degree {
        match self.terms.last() {
            None => Degree::NegInfinity,
            Some((m, _)) => Degree::Finite(m.degree()),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(Polynomial { vars: self.vars.clone(), terms: merge(&self.terms, &other.terms, false) })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(Polynomial { vars: self.vars.clone(), terms: merge(&self.terms, &other.terms, true) })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let (short, long) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if short.len() <= 12 {
            // shifting by a monomial preserves the order: merge shifted copies
            let mut acc: Vec<(Monomial, Rational)> = Vec::new();
            for (m, c) in &short.terms {
                let shifted: Vec<_> = long.terms.iter().map(|(lm, lc)| (lm.mul(m), lc * c)).collect();
                acc = if acc.is_empty() { shifted } else { merge(&acc, &shifted, false) };
            }
            return Polynomial { vars: self.vars.clone(), terms: acc };
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(long.len() * 2);
        for (m1, c1) in &short.terms {
            for (m2, c2) in &long.terms {
                let m = m1.mul(m2);
                let prod = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        Polynomial::from_map(&self.vars, acc)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        assert!(same_vars(&self.vars, &g.vars), "ambient mismatch");
        let (lm, lc) = g.leading_term()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = lm.quotient_of(&m)?;
            let qc = c / lc;
            rem = rem.checked_sub(&g.mul_term(&q, &qc)).ok()?;
            quot.push((q, qc));
        }
        // quotient terms were produced in descending order
        Some(Polynomial { vars: self.vars.clone(), terms: quot })
    }

    /// Divides by a non-constant polynomial of degree 1.
    pub fn divide_by_linear(&self, l: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_same(l)?;
        if l.total_degree() != Degree::Finite(1) {
            return Err(Error::BadDivisor);
        }
        Ok(self.exact_div(l))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    ///
    /// All images must share one target ring, which may differ from ours.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.nvars())));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        if images.iter().any(|p| !same_vars(&p.vars, &target)) {
            return Err(Error::AmbientMismatch);
        }
        let terms: Vec<(Vec<u32>, Rational)> =
            self.terms.iter().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect();
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        Ok(horner(&terms, 0, images, &target, &mut cache))
    }

    /// Returns `f(Mx + p)`.
    pub fn substitute_linear(&self, m: &RationalMatrix, p: &[Rational]) -> Result<Polynomial> {
        let n = self.nvars();
        if m.rows() != n || m.cols() != n || p.len() != n {
            return Err(Error::Dimension(format!(
                "expected {n}x{n} matrix and length-{n} shift, got {}x{} and {}",
                m.rows(),
                m.cols(),
                p.len()
            )));
        }
        if m.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<Polynomial> =
            (0..n).map(|i| Polynomial::linear(&self.vars, m.row(i), p[i].clone())).collect();
        self.substitute(&images)
    }

    /// Adds `new_var` as the last variable and homogenizes with it.
    pub fn homogenize(&self, new_var: &str) -> Result<Polynomial> {
        if self.vars.iter().any(|v| v == new_var) {
            return Err(Error::NameCollision(new_var.to_string()));
        }
        let mut names: Vec<String> = self.vars.to_vec();
        names.push(new_var.to_string());
        let vars: Vars = names.into();
        Ok(self.homogenize_into(&vars))
    }

    /// Homogenizes into `vars`, which must be our ring plus one trailing variable.
    pub fn homogenize_into(&self, vars: &Vars) -> Polynomial {
        debug_assert_eq!(vars.len(), self.nvars() + 1);
        let d = self.total_degree().finite().unwrap_or(0);
        Polynomial::from_terms(vars, self.terms.iter().map(|(m, c)| (m.push_var(d - m.degree()), c.clone())))
    }

    /// Sets `var` to 1 and drops it from the ring.
    pub fn dehomogenize(&self, var: &str) -> Result<Polynomial> {
        let i = self.vars.iter().position(|v| v == var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let names: Vec<String> = self.vars.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let vars: Vars = names.into();
        Ok(self.dehomogenize_into(i, &vars))
    }

    pub fn dehomogenize_into(&self, var_index: usize, vars: &Vars) -> Polynomial {
        Polynomial::from_terms(vars, self.terms.iter().map(|(m, c)| (m.remove_var(var_index), c.clone())))
    }

    /// Re-embeds into a ring whose first variables are ours.
    pub fn extend_into(&self, vars: &Vars) -> Polynomial {
        debug_assert!(vars.len() >= self.nvars() && vars[..self.nvars()] == self.vars[..]);
        let extra = vars.len() - self.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.extend(std::iter::repeat_n(0, extra));
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        // appending zero exponents keeps grevlex order
        Polynomial { vars: vars.clone(), terms }
    }

    /// Components sorted by ascending degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, Polynomial)> {
        let mut out: Vec<(u32, Polynomial)> = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let d = m.degree();
            match out.last_mut() {
                Some((deg, p)) if *deg == d => p.terms.push((m.clone(), c.clone())),
                _ => out.push((d, Polynomial { vars: self.vars.clone(), terms: vec![(m.clone(), c.clone())] })),
            }
        }
        for (_, p) in out.iter_mut() {
            p.terms.reverse();
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficient vector and constant of a polynomial of degree at most 1.
    pub fn linear_parts(&self) -> Option<(Vec<Rational>, Rational)> {
        if self.total_degree() > Degree::Finite(1) {
            return None;
        }
        let n = self.nvars();
        let mut coeffs = vec![Rational::zero(); n];
        let mut constant = Rational::zero();
        for (m, c) in &self.terms {
            match m.exponents().iter().position(|&e| e == 1) {
                Some(i) => coeffs[i] = c.clone(),
                None => constant = c.clone(),
            }
        }
        Some((coeffs, constant))
    }

    /// Largest exponent of variable `var` over all terms.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }
}

fn merge(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], negate_b: bool) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match grevlex_cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        out.push((m.clone(), if negate_b { -c } else { c.clone() }));
    }
    out
}

/// Horner evaluation over variables `var..` with cached powers of the images.
fn horner(
    terms: &[(Vec<u32>, Rational)],
    var: usize,
    images: &[Polynomial],
    target: &Vars,
    cache: &mut Vec<Vec<Polynomial>>,
) -> Polynomial {
    if terms.is_empty() {
        return Polynomial::zero(target);
    }
    if var == images.len() {
        let c: Rational = terms.iter().map(|(_, c)| c.clone()).sum();
        return Polynomial::constant(target, c);
    }
    let mut buckets: std::collections::BTreeMap<u32, Vec<(Vec<u32>, Rational)>> = Default::default();
    for (e, c) in terms {
        buckets.entry(e[var]).or_default().push((e.clone(), c.clone()));
    }
    let mut acc = Polynomial::zero(target);
    for (e, bucket) in buckets {
        let inner = horner(&bucket, var + 1, images, target, cache);
        if inner.is_zero() {
            continue;
        }
        let p = power_cached(cache, images, var, e);
        acc = &acc + &inner.mul_unchecked(&p);
    }
    acc
}

fn power_cached(cache: &mut [Vec<Polynomial>], images: &[Polynomial], var: usize, e: u32) -> Polynomial {
    let powers = &mut cache[var];
    if powers.is_empty() {
        powers.push(Polynomial::one(&images[var].vars));
    }
    while powers.len() <= e as usize {
        let next = powers.last().unwrap().mul_unchecked(&images[var]);
        powers.push(next);
    }
    powers[e as usize].clone()
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials over different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials over different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials over different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Canonical rendering: descending grevlex, explicit `*` and `^`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = render_monomial(m, &self.vars);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn render_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}
