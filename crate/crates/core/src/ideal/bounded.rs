//! Bounded-degree representations by exact linear algebra.
//!
//! Unknowns are the coefficients of `m · g_T` for every generator `g_T` and
//! every coefficient monomial `m` of admissible degree. Among all solutions
//! the one of least Euclidean norm is returned: it is unique, linear in `f`
//! and does not depend on how the forms are labelled.

use std::collections::HashMap;

use super::{dfold_generators, GeneratorSpec, Representation};
use crate::error::{Error, Result};
use crate::linalg::{project_out, solve_modular, ModularSolve, SparseEchelon, SparseVec};
use crate::matroid::Arrangement;
use crate::poly::{monomials_of_degree, monomials_up_to_degree, Degree, Monomial, Polynomial};

#[derive(Clone, Debug)]
pub struct BoundedOptions {
    /// Return the least-norm solution instead of an arbitrary particular one.
    pub min_norm: bool,
    /// Skip the least-norm projection above this many independent relations.
    pub max_relations: usize,
    /// Resource guard on the number of unknowns.
    pub max_unknowns: usize,
    /// Above this many unknowns the system is solved modulo primes and
    /// lifted, giving the solution supported on the first independent columns.
    pub exact_max_unknowns: usize,
}

impl Default for BoundedOptions {
    fn default() -> Self {
        BoundedOptions { min_norm: true, max_relations: 600, max_unknowns: 60_000, exact_max_unknowns: 256 }
    }
}

/// Coefficients `c_T` with `deg c_T ≤ bound` and `f = Σ c_T g_T`, or `None`.
pub fn express_bounded_degree(
    f: &Polynomial,
    a: &Arrangement,
    spec: &GeneratorSpec,
    bound: i64,
    opts: &BoundedOptions,
) -> Result<Option<Representation>> {
    if f.is_zero() {
        return Ok(Some(Representation::new(Vec::new())));
    }
    if bound < 0 {
        return Ok(None);
    }
    let gens = dfold_generators(a, spec)?;
    if gens.is_empty() {
        return Ok(None);
    }
    let homogeneous = f.is_homogeneous() && gens.iter().all(|(_, g)| g.is_homogeneous());
    let monos: Vec<Monomial> = if homogeneous {
        let Degree::Finite(df) = f.total_degree() else { unreachable!() };
        let target = df as i64 - spec.d as i64;
        if target < 0 || target > bound {
            return Ok(None);
        }
        // higher-degree parts of a solution solve the zero system; the
        // least-norm solution has none
        monomials_of_degree(a.vars().len(), target as u32)
    } else {
        monomials_up_to_degree(a.vars().len(), bound as u32)
    };
    let unknowns = gens.len() * monos.len();
    if unknowns > opts.max_unknowns {
        return Err(Error::ResourceGuard(format!(
            "{unknowns} unknowns exceed the cap of {}; restrict the generator set or lower the degree bound",
            opts.max_unknowns
        )));
    }

    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for (m, _) in f.terms() {
        let k = index.len();
        index.entry(m.clone()).or_insert(k);
    }
    let mut columns: Vec<SparseVec> = Vec::with_capacity(unknowns);
    for (_, g) in &gens {
        for m in &monos {
            let mut col: SparseVec = g
                .terms()
                .iter()
                .map(|(t, c)| {
                    let mm = t.mul(m);
                    let k = index.len();
                    (*index.entry(mm).or_insert(k), c.clone())
                })
                .collect();
            col.sort_by_key(|(k, _)| *k);
            columns.push(col);
        }
    }
    let mut b: SparseVec = f.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
    b.sort_by_key(|(k, _)| *k);
    let x = if unknowns > opts.exact_max_unknowns {
        match solve_modular(&columns, index.len(), &b) {
            ModularSolve::Solved(x) => x,
            ModularSolve::Inconsistent => return Ok(None),
            ModularSolve::Failed => match exact_solve(columns, &b, false, opts.max_relations) {
                Some(x) => x,
                None => return Ok(None),
            },
        }
    } else {
        match exact_solve(columns, &b, opts.min_norm, opts.max_relations) {
            Some(x) => x,
            None => return Ok(None),
        }
    };
    let nm = monos.len();
    let mut coeffs: Vec<Vec<(Monomial, crate::poly::Rational)>> = vec![Vec::new(); gens.len()];
    for (j, c) in x {
        coeffs[j / nm].push((monos[j % nm].clone(), c));
    }
    let terms = gens
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_empty())
        .map(|((t, _), c)| (t, Polynomial::from_terms(a.vars(), c)))
        .collect();
    Ok(Some(Representation::new(terms)))
}

fn exact_solve(columns: Vec<SparseVec>, b: &SparseVec, min_norm: bool, max_relations: usize) -> Option<SparseVec> {
    let mut echelon = SparseEchelon::new();
    for col in columns {
        echelon.push_column(col);
    }
    let x = echelon.solve(b)?;
    if min_norm && echelon.relations().len() <= max_relations {
        return Some(project_out(&x, echelon.relations()));
    }
    Some(x)
}
