//! Intersection and equality of ideals, powers of linear ideals.

use num_traits::One;

use super::split::fresh_var_name;
use super::IdealWithBasis;
use crate::error::{Error, Result};
use crate::matroid::Span;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Vars};

/// Embeds `p` into `vars`, whose first variable is new.
fn prepend_var(p: &Polynomial, vars: &Vars, e: u32) -> Polynomial {
    Polynomial::from_terms(
        vars,
        p.terms().iter().map(|(m, c)| {
            let mut x = vec![e];
            x.extend_from_slice(m.exponents());
            (Monomial::from_exponents(&x), c.clone())
        }),
    )
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
pub fn intersect(i: &IdealWithBasis, j: &IdealWithBasis) -> Result<IdealWithBasis> {
    if !crate::poly::same_vars(i.vars(), j.vars()) {
        return Err(Error::AmbientMismatch);
    }
    let vars = i.vars();
    let t = fresh_var_name(vars, "t");
    let mut names = vec![t];
    names.extend(vars.iter().cloned());
    let big: Vars = names.into();
    let tpoly = Polynomial::variable(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &tpoly;
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(prepend_var(g, &big, 1));
    }
    for g in j.generators() {
        gens.push(&one_minus_t * &prepend_var(g, &big, 0));
    }
    let elim = IdealWithBasis::with_order(&big, gens, MonomialOrder::block_elimination(1));
    let gb = elim.groebner()?;
    let kept: Vec<Polynomial> = gb
        .basis
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| g.dehomogenize_into(0, vars))
        .collect();
    Ok(IdealWithBasis::new(vars, kept))
}

pub fn intersect_all(ideals: &[IdealWithBasis]) -> Result<IdealWithBasis> {
    let mut it = ideals.iter();
    let first = it.next().ok_or_else(|| Error::Invalid("empty intersection".into()))?;
    let mut acc = first.clone();
    for j in it {
        acc = intersect(&acc, j)?;
    }
    Ok(acc)
}

pub fn ideal_equal(i: &IdealWithBasis, j: &IdealWithBasis) -> Result<bool> {
    Ok(i.contains_ideal(j)? && j.contains_ideal(i)?)
}

/// `⟨forms⟩^k`, generated by degree-`k` products of a basis of the span.
///
/// Affine forms are spanned together with their constants.
pub fn power_of_linear_ideal(vars: &Vars, forms: &[Polynomial], k: u32) -> IdealWithBasis {
    let r = vars.len();
    let mut span = Span::new(r + 1);
    for f in forms {
        let (mut c, constant) = f.linear_parts().expect("linear form");
        c.push(constant);
        span.insert(&c);
    }
    let basis: Vec<Polynomial> = span
        .rows()
        .iter()
        .map(|(_, row)| Polynomial::linear(vars, &row[..r], row[r].clone()))
        .collect();
    if k == 0 {
        return IdealWithBasis::new(vars, vec![Polynomial::one(vars)]);
    }
    let mut gens = Vec::new();
    for m in crate::poly::monomials_of_degree(basis.len(), k) {
        let mut p = Polynomial::constant(vars, Rational::one());
        for (b, &e) in basis.iter().zip(m.exponents()) {
            if e > 0 {
                p = &p * &b.pow(e);
            }
        }
        gens.push(p);
    }
    IdealWithBasis::new(vars, gens)
}
