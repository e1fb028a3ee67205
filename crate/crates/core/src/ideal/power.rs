//! Membership in powers of linear ideals by a change of coordinates.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::matroid::{Arrangement, FlatSet, Mode, Span};
use crate::poly::{Monomial, Polynomial, Rational};

/// Largest `k` with `f ∈ (I_S)^k`, capped at `cap` when given.
///
/// The span of the forms in `S` is put in reduced echelon form; its pivot
/// variables become the new coordinates `u_i = ℓ'_i(x)` and the order is the
/// smallest total `u`-degree among the terms of the rewritten `f`. Affine
/// flats are first moved to pass through the origin.
pub fn order_on_flat(f: &Polynomial, a: &Arrangement, s: &FlatSet, cap: Option<u32>) -> Result<u32> {
    let r = a.vars().len();
    if f.is_zero() {
        return Ok(cap.unwrap_or(u32::MAX));
    }
    let shifted;
    let f = match a.mode() {
        Mode::Projective => f,
        Mode::Affine => {
            let point = point_on_flat(a, s)?;
            let images: Vec<Polynomial> = (0..r)
                .map(|i| Polynomial::linear(a.vars(), &unit(r, i), point[i].clone()))
                .collect();
            shifted = f.substitute(&images)?;
            &shifted
        }
    };
    let mut span = Span::new(r);
    for &i in s.indices() {
        span.insert(&a.vector(i)[..r]);
    }
    if span.rank() == 0 {
        return Ok(0);
    }
    let pivots: Vec<usize> = span.rows().iter().map(|(p, _)| *p).collect();
    // x_p ↦ u_p − Σ_{j ∉ pivots} row[j] x_j, with slot p now holding u_p
    let images: Vec<Polynomial> = (0..r)
        .map(|i| match span.rows().iter().find(|(p, _)| *p == i) {
            None => Polynomial::variable(a.vars(), i),
            Some((_, row)) => {
                let mut c: Vec<Rational> = row.iter().map(|x| -x).collect();
                for &p in &pivots {
                    c[p] = Rational::zero();
                }
                c[i] = num_traits::One::one();
                Polynomial::linear(a.vars(), &c, Rational::zero())
            }
        })
        .collect();
    let g = truncated_substitute(f, &images, &pivots, cap)?;
    let order = g
        .terms()
        .iter()
        .map(|(m, _)| pivots.iter().map(|&p| m.exponent(p)).sum::<u32>())
        .min()
        .unwrap_or(u32::MAX);
    Ok(match cap {
        Some(c) => order.min(c),
        None => order,
    })
}

fn unit(r: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); r];
    v[i] = num_traits::One::one();
    v
}

/// Substitution that discards terms whose pivot degree reaches `cap`.
///
/// Every image has terms of pivot degree 0 or 1, so multiplying never lowers
/// the pivot degree and truncating partial products is exact below the cap.
fn truncated_substitute(
    f: &Polynomial,
    images: &[Polynomial],
    pivots: &[usize],
    cap: Option<u32>,
) -> Result<Polynomial> {
    let Some(cap) = cap else { return f.substitute(images) };
    let vars = f.vars();
    let weight = |m: &Monomial| pivots.iter().map(|&i| m.exponent(i)).sum::<u32>();
    let truncate = |p: Polynomial| -> Polynomial {
        if p.terms().iter().all(|(m, _)| weight(m) < cap) {
            return p;
        }
        Polynomial::from_terms(vars, p.into_terms().into_iter().filter(|(m, _)| weight(m) < cap))
    };
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for (m, c) in f.terms() {
        let mut rest = m.clone();
        for &p in pivots {
            rest.set_exponent(p, 0);
        }
        let mut t = Polynomial::monomial(vars, rest, c.clone());
        for &p in pivots {
            for _ in 0..m.exponent(p) {
                t = truncate(&t * &images[p]);
            }
        }
        terms.extend(t.into_terms());
    }
    Ok(Polynomial::from_terms(vars, terms))
}

/// A point on an affine flat, free coordinates set to zero.
pub fn point_on_flat(a: &Arrangement, s: &FlatSet) -> Result<Vec<Rational>> {
    let r = a.vars().len();
    let rows: Vec<Vec<Rational>> = s.indices().iter().map(|&i| a.vector(i)[..r].to_vec()).collect();
    let rhs: Vec<Rational> = s.indices().iter().map(|&i| -a.vector(i)[r].clone()).collect();
    if rows.is_empty() {
        return Ok(vec![Rational::zero(); r]);
    }
    RationalMatrix::from_rows(rows)
        .solve(&rhs)
        .ok_or_else(|| Error::Precondition(format!("flat {} has no affine point", s.display_one_based())))
}

/// Whether `f ∈ (I_S)^k`.
pub fn power_linear_membership(f: &Polynomial, a: &Arrangement, s: &FlatSet, k: u32) -> Result<bool> {
    Ok(order_on_flat(f, a, s, Some(k))? >= k)
}
