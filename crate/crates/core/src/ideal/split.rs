//! Recursive extraction of coefficients, one form at a time.
//!
//! For the last nonzero form `ℓ_k` pick a variable `v` it involves and let
//! `σ` be the substitution killing `ℓ_k`. A representation of `σ(f)` over
//! the restricted forms lifts to `f` up to a multiple `ℓ_k · h`, and `h` is
//! decomposed over the remaining forms at degree `d − 1`. Every step is
//! linear in `f`, so the whole map is linear.

use num_traits::Zero;

use super::{expand_terms, Representation};
use crate::error::Result;
use crate::matroid::{Arrangement, Mode};
use crate::poly::{Degree, Polynomial, Vars};

/// Coefficients of degree `deg f − d` with `f = Σ c_T ℓ_T`, or `None`.
///
/// Affine inputs are homogenized first, so the result is a representation
/// with `deg c_T ≤ deg f − d` whenever one exists.
pub fn express_recursive(f: &Polynomial, a: &Arrangement, d: usize) -> Result<Option<Representation>> {
    match a.mode() {
        Mode::Projective => {
            let forms: Vec<(usize, Polynomial)> = a.forms().iter().cloned().enumerate().collect();
            Ok(split_components(f, &forms, d).map(Representation::new))
        }
        Mode::Affine => {
            let z = fresh_var_name(a.vars(), "z");
            let h = a.homogenized(&z)?;
            let fh = f.homogenize_into(h.vars());
            let forms: Vec<(usize, Polynomial)> = h.forms().iter().cloned().enumerate().collect();
            let Some(terms) = split_components(&fh, &forms, d) else { return Ok(None) };
            let zi = h.vars().len() - 1;
            let terms = terms.into_iter().map(|(t, c)| (t, c.dehomogenize_into(zi, a.vars()))).collect();
            Ok(Some(Representation::new(terms)))
        }
    }
}

pub fn fresh_var_name(vars: &Vars, base: &str) -> String {
    let mut name = format!("_{base}");
    let mut k = 0;
    while vars.contains(&name) {
        k += 1;
        name = format!("_{base}{k}");
    }
    name
}

type Terms = Vec<(Vec<usize>, Polynomial)>;

fn split_components(f: &Polynomial, forms: &[(usize, Polynomial)], d: usize) -> Option<Terms> {
    let mut out = Vec::new();
    for (_, comp) in f.homogeneous_components() {
        out.extend(split(&comp, forms, d)?);
    }
    Some(out)
}

fn split(f: &Polynomial, forms: &[(usize, Polynomial)], d: usize) -> Option<Terms> {
    if f.is_zero() {
        return Some(Vec::new());
    }
    if d == 0 {
        return Some(vec![(Vec::new(), f.clone())]);
    }
    let forms: Vec<(usize, Polynomial)> = forms.iter().filter(|(_, l)| !l.is_zero()).cloned().collect();
    if forms.len() < d || f.total_degree() < Degree::Finite(d as u32) {
        return None;
    }
    let (k, lk) = forms.last().cloned().expect("nonempty");
    let rest = &forms[..forms.len() - 1];
    let (coeffs, _) = lk.linear_parts().expect("linear form");
    let v = coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form");
    let av = coeffs[v].clone();

    // σ(x_v) = x_v − ℓ_k / a_v
    let vars = f.vars().clone();
    let images: Vec<Polynomial> = (0..vars.len())
        .map(|i| {
            let xi = Polynomial::variable(&vars, i);
            if i == v {
                &xi - &lk.scale(&av.recip())
            } else {
                xi
            }
        })
        .collect();
    let fbar = f.substitute(&images).expect("same ring");
    let restricted: Vec<(usize, Polynomial)> = rest
        .iter()
        .map(|(j, l)| {
            let c = l.coefficient(&crate::poly::Monomial::var(vars.len(), v));
            (*j, if c.is_zero() { l.clone() } else { l - &lk.scale(&(c / &av)) })
        })
        .collect();
    let quotient = split(&fbar, &restricted, d)?;

    let mut sorted = quotient.clone();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let lookup = |i: usize| &forms[forms.binary_search_by_key(&i, |(j, _)| *j).expect("known index")].1;
    let lifted = expand_terms(&vars, &lookup, &sorted, 0);
    let r = f - &lifted;
    let h = r.exact_div(&lk).expect("remainder vanishes on the hyperplane");
    let colon = split(&h, rest, d - 1)?;

    let mut out = quotient;
    for (mut u, b) in colon {
        let pos = u.partition_point(|&i| i < k);
        u.insert(pos, k);
        out.push((u, b));
    }
    Some(out)
}
