//! Ideals generated by products of linear forms, Gröbner bases, membership.
//!
//! The central object is `I_{L,d}`, generated by the products of `d` forms
//! with distinct indices. Three independent ways to express an element in
//! terms of these generators live here:
//!
//! - [`IdealWithBasis::express_in_generators`]: Gröbner quotients composed
//!   with the cofactor matrix,
//! - [`express_bounded_degree`]: an exact linear solve over the coefficient
//!   space of bounded degree,
//! - [`express_recursive`]: splitting along one form at a time, using
//!   `(I_{L,d} : ℓ_k) = I_{L∖k,d−1}` and `I_{L,d} + ⟨ℓ_k⟩ = I_{L̄,d} + ⟨ℓ_k⟩`.

mod bounded;
mod groebner;
mod ops;
mod power;
mod split;

use std::sync::OnceLock;

use num_integer::binomial;
use num_traits::One;

pub use bounded::{express_bounded_degree, BoundedOptions};
pub use groebner::GbLimits;
pub use ops::{ideal_equal, intersect, intersect_all, power_of_linear_ideal};
pub use power::{order_on_flat, point_on_flat, power_linear_membership};
pub use split::{express_recursive, fresh_var_name};

use crate::error::{Error, Result};
use crate::matroid::Arrangement;
use crate::poly::{Degree, MonomialOrder, Polynomial, Vars};
use groebner::{buchberger, Element, Ordered, Reducer};

/// Which d-subsets of forms generate the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    All,
    /// Only subsets drawn from these form indices.
    Forms(Vec<usize>),
    /// Exactly these index subsets.
    Subsets(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub d: usize,
    pub restriction: Restriction,
    /// Resource guard on the number of generators.
    pub max_generators: usize,
}

impl GeneratorSpec {
    pub fn all(d: usize) -> Self {
        GeneratorSpec { d, restriction: Restriction::All, max_generators: 2_000_000 }
    }

    pub fn restricted(d: usize, restriction: Restriction) -> Self {
        GeneratorSpec { restriction, ..Self::all(d) }
    }

    pub fn is_restricted(&self) -> bool {
        self.restriction != Restriction::All
    }

    /// Index subsets in lexicographic order, before dropping zero products.
    pub fn subsets(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        if self.d > n {
            return Err(Error::Invalid(format!("d = {} exceeds the number of forms {n}", self.d)));
        }
        let pool: Vec<usize> = match &self.restriction {
            Restriction::All => (0..n).collect(),
            Restriction::Forms(f) => {
                let mut f = f.clone();
                f.sort_unstable();
                f.dedup();
                if let Some(&bad) = f.iter().find(|&&i| i >= n) {
                    return Err(Error::IndexOutOfRange(bad));
                }
                f
            }
            Restriction::Subsets(s) => {
                let mut out = Vec::with_capacity(s.len());
                for t in s {
                    let mut t = t.clone();
                    t.sort_unstable();
                    t.dedup();
                    if t.len() != self.d {
                        return Err(Error::Invalid(format!("subset {t:?} does not have {} elements", self.d)));
                    }
                    if let Some(&bad) = t.iter().find(|&&i| i >= n) {
                        return Err(Error::IndexOutOfRange(bad));
                    }
                    out.push(t);
                }
                out.sort();
                out.dedup();
                return Ok(out);
            }
        };
        let count = binomial(pool.len() as u128, self.d as u128);
        if count > self.max_generators as u128 {
            return Err(Error::ResourceGuard(format!(
                "{count} generators exceed the cap of {}; restrict the generator set",
                self.max_generators
            )));
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut cur = Vec::with_capacity(self.d);
        fn rec(pool: &[usize], start: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == d {
                out.push(cur.clone());
                return;
            }
            let need = d - cur.len();
            for k in start..=pool.len().saturating_sub(need) {
                cur.push(pool[k]);
                rec(pool, k + 1, d, cur, out);
                cur.pop();
            }
        }
        rec(&pool, 0, self.d, &mut cur, &mut out);
        Ok(out)
    }
}

/// Product of the forms indexed by `t`.
pub fn product_of(a: &Arrangement, t: &[usize]) -> Polynomial {
    let mut p = Polynomial::one(a.vars());
    for &i in t {
        p = &p * a.form(i);
    }
    p
}

/// The d-fold products, lexicographic in the index sets, zero products omitted.
pub fn dfold_generators(a: &Arrangement, spec: &GeneratorSpec) -> Result<Vec<(Vec<usize>, Polynomial)>> {
    let subsets = spec.subsets(a.len())?;
    let mut out = Vec::with_capacity(subsets.len());
    // reuse the product of the shared prefix with the previous subset
    let mut prefix: Vec<(usize, Polynomial)> = Vec::new();
    for t in subsets {
        if t.iter().any(|&i| a.form(i).is_zero()) {
            continue;
        }
        let common = prefix.iter().zip(&t).take_while(|((i, _), j)| i == *j).count();
        prefix.truncate(common);
        for &i in &t[common..] {
            let base = prefix.last().map(|(_, p)| p.clone()).unwrap_or_else(|| Polynomial::one(a.vars()));
            prefix.push((i, &base * a.form(i)));
        }
        let p = prefix.last().map(|(_, p)| p.clone()).unwrap_or_else(|| Polynomial::one(a.vars()));
        out.push((t, p));
    }
    Ok(out)
}

/// `f = Σ c_T · ∏_{i∈T} ℓ_i` with nonzero coefficients, sorted by `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub terms: Vec<(Vec<usize>, Polynomial)>,
}

impl Representation {
    pub fn new(mut terms: Vec<(Vec<usize>, Polynomial)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        // merge equal index sets
        let mut merged: Vec<(Vec<usize>, Polynomial)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match merged.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = &*lc + &c,
                _ => merged.push((t, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Representation { terms: merged }
    }

    /// `Σ c_T ∏ ℓ_T`, expanded one form per trie level.
    pub fn expand(&self, a: &Arrangement) -> Polynomial {
        expand_terms(a.vars(), &|i| a.form(i), &self.terms, 0)
    }

    pub fn max_coefficient_degree(&self) -> Degree {
        self.terms.iter().map(|(_, c)| c.total_degree()).max().unwrap_or(Degree::NegInfinity)
    }
}

pub(crate) fn expand_terms<'a>(
    vars: &Vars,
    form: &dyn Fn(usize) -> &'a Polynomial,
    terms: &[(Vec<usize>, Polynomial)],
    depth: usize,
) -> Polynomial {
    let mut acc = Polynomial::zero(vars);
    let mut i = 0;
    while i < terms.len() {
        if terms[i].0.len() == depth {
            acc = &acc + &terms[i].1;
            i += 1;
            continue;
        }
        let head = terms[i].0[depth];
        let mut j = i;
        while j < terms.len() && terms[j].0.len() > depth && terms[j].0[depth] == head {
            j += 1;
        }
        let inner = expand_terms(vars, form, &terms[i..j], depth + 1);
        acc = &acc + &(&inner * form(head));
        i = j;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    /// Reduced, monic, ascending leading monomials.
    pub basis: Vec<Polynomial>,
    /// `cofactors[k][i]` multiplies generator `i` in basis element `k`.
    pub cofactors: Option<Vec<Vec<Polynomial>>>,
    ordered: Vec<Ordered>,
}

/// Generators with a lazily computed reduced Gröbner basis.
#[derive(Debug)]
pub struct IdealWithBasis {
    vars: Vars,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    limits: GbLimits,
    plain: OnceLock<std::result::Result<GroebnerBasis, usize>>,
    tracked: OnceLock<std::result::Result<GroebnerBasis, usize>>,
}

impl Clone for IdealWithBasis {
    fn clone(&self) -> Self {
        IdealWithBasis::with_order(&self.vars, self.generators.clone(), self.order.clone())
    }
}

impl IdealWithBasis {
    pub fn new(vars: &Vars, generators: Vec<Polynomial>) -> Self {
        Self::with_order(vars, generators, MonomialOrder::grevlex())
    }

    pub fn with_order(vars: &Vars, generators: Vec<Polynomial>, order: MonomialOrder) -> Self {
        debug_assert!(generators.iter().all(|g| crate::poly::same_vars(g.vars(), vars)));
        IdealWithBasis {
            vars: vars.clone(),
            generators,
            order,
            limits: GbLimits::default(),
            plain: OnceLock::new(),
            tracked: OnceLock::new(),
        }
    }

    pub fn with_limits(mut self, limits: GbLimits) -> Self {
        self.limits = limits;
        self
    }

    /// `I_{L,d}` (or its restricted version) with generators in lexicographic subset order.
    pub fn dfold(a: &Arrangement, spec: &GeneratorSpec) -> Result<Self> {
        let gens = dfold_generators(a, spec)?.into_iter().map(|(_, p)| p).collect();
        Ok(Self::new(a.vars(), gens))
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    fn compute(&self, track: bool) -> std::result::Result<GroebnerBasis, usize> {
        let out = buchberger(&self.generators, &self.vars, &self.order, track, self.limits)?;
        Ok(GroebnerBasis {
            basis: out.basis.iter().map(|p| p.to_poly(&self.vars)).collect(),
            cofactors: out.cofactors,
            ordered: out.basis,
        })
    }

    fn guard(r: &std::result::Result<GroebnerBasis, usize>) -> Result<&GroebnerBasis> {
        r.as_ref().map_err(|n| Error::ResourceGuard(format!("Gröbner basis exceeded {n} critical pairs")))
    }

    /// The reduced Gröbner basis.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(t) = self.tracked.get() {
            return Self::guard(t);
        }
        Self::guard(self.plain.get_or_init(|| self.compute(false)))
    }

    /// The reduced Gröbner basis together with its cofactor matrix.
    pub fn groebner_with_cofactors(&self) -> Result<&GroebnerBasis> {
        Self::guard(self.tracked.get_or_init(|| self.compute(true)))
    }

    fn elements(gb: &GroebnerBasis) -> Vec<Element> {
        gb.ordered.iter().map(|p| Element { poly: p.clone(), cofactors: None }).collect()
    }

    /// `(remainder, quotients)` with `f = Σ q_k gb_k + remainder`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<(Polynomial, Vec<Polynomial>)> {
        let gb = self.groebner()?;
        let elements = Self::elements(gb);
        let reducer = Reducer { basis: &elements, order: &self.order };
        let mut qs = vec![Polynomial::zero(&self.vars); elements.len()];
        let r = reducer.reduce(&Ordered::from_poly(f, &self.order), None, &self.vars, Some(&mut qs));
        Ok((r.to_poly(&self.vars), qs))
    }

    /// Remainder only; cheaper than [`Self::normal_form`].
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        let gb = self.groebner()?;
        let elements = Self::elements(gb);
        let reducer = Reducer { basis: &elements, order: &self.order };
        Ok(reducer.reduce(&Ordered::from_poly(f, &self.order), None, &self.vars, None).to_poly(&self.vars))
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Coefficients over the original generators, or `None` if `f` is not a member.
    pub fn express_in_generators(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        let gb = self.groebner_with_cofactors()?;
        let elements = Self::elements(gb);
        let reducer = Reducer { basis: &elements, order: &self.order };
        let mut qs = vec![Polynomial::zero(&self.vars); elements.len()];
        let r = reducer.reduce(&Ordered::from_poly(f, &self.order), None, &self.vars, Some(&mut qs));
        if !r.is_zero() {
            return Ok(None);
        }
        let cof = gb.cofactors.as_ref().expect("tracked");
        let mut out = vec![Polynomial::zero(&self.vars); self.generators.len()];
        for (q, row) in qs.iter().zip(cof) {
            if q.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(row) {
                if !c.is_zero() {
                    *o = &*o + &(q * c);
                }
            }
        }
        Ok(Some(out))
    }

    /// Whether every generator of `other` lies in this ideal.
    pub fn contains_ideal(&self, other: &IdealWithBasis) -> Result<bool> {
        for g in other.generators() {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.groebner()?;
        Ok(gb.basis.len() == 1 && gb.basis[0].is_constant() && !gb.basis[0].is_zero())
    }
}

/// Unit ideal check helper used by callers that build ideals from constants.
pub fn unit_ideal(vars: &Vars) -> IdealWithBasis {
    IdealWithBasis::new(vars, vec![Polynomial::one(vars)])
}

/// `⟨all monomials of degree d⟩`.
pub fn maximal_ideal_power(vars: &Vars, d: u32) -> IdealWithBasis {
    let gens = crate::poly::monomials_of_degree(vars.len(), d)
        .into_iter()
        .map(|m| Polynomial::monomial(vars, m, crate::poly::Rational::one()))
        .collect();
    IdealWithBasis::new(vars, gens)
}


#[cfg(test)]
mod tests;
