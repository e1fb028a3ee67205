//! Primary decompositions of `I_{L,d}` indexed by flats, and the
//! vanishing-order criterion for membership.
//!
//! For a projective arrangement of `n` forms,
//! `I_{L,d} = ⋂ (I_S)^{d−n+|S|}` over the flats `S` with `|S| ≥ n−d+1`.
//! For an affine arrangement the same intersection is taken over the flats
//! of the homogenized arrangement whose span avoids the hyperplane at
//! infinity.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{
    dfold_generators, ideal_equal, intersect_all, order_on_flat, power_of_linear_ideal, GeneratorSpec,
    IdealWithBasis,
};
use crate::matroid::{Arrangement, FlatSet, Mode};
use crate::poly::{Degree, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimaryComponent {
    pub flat: FlatSet,
    pub exponent: u32,
    pub mode: Mode,
}

fn check_degree(a: &Arrangement, d: usize) -> Result<()> {
    if d == 0 || d > a.len() {
        return Err(Error::Invalid(format!("d = {d} must lie in 1..={}", a.len())));
    }
    Ok(())
}

fn sort_components(c: &mut [PrimaryComponent]) {
    c.sort_by(|a, b| b.flat.len().cmp(&a.flat.len()).then_with(|| a.flat.cmp(&b.flat)));
}

/// Whether the span of the forms in `s` contains the hyperplane at infinity.
pub fn at_infinity(a: &Arrangement, s: &FlatSet) -> bool {
    if a.mode() == Mode::Projective {
        return false;
    }
    let dim = a.ambient_dim();
    let mut e = vec![Rational::from_integer(0.into()); dim];
    e[dim - 1] = Rational::from_integer(1.into());
    a.span_of(s.indices()).contains(&e)
}

/// One component per flat of size at least `n − d + 1`, treating the
/// coefficient vectors as projective (homogenized vectors in affine mode).
fn flat_components(a: &Arrangement, d: usize, mode: Mode) -> Vec<PrimaryComponent> {
    let n = a.len();
    let mut out: Vec<PrimaryComponent> = a
        .flats_min_size(n + 1 - d)
        .into_iter()
        .map(|flat| {
            let exponent = (d + flat.len() - n) as u32;
            PrimaryComponent { flat, exponent, mode }
        })
        .collect();
    sort_components(&mut out);
    out
}

pub fn primary_decomposition_projective(a: &Arrangement, d: usize) -> Result<Vec<PrimaryComponent>> {
    if a.mode() != Mode::Projective {
        return Err(Error::Invalid("expected a projective arrangement".into()));
    }
    check_degree(a, d)?;
    Ok(flat_components(a, d, Mode::Projective))
}

pub fn primary_decomposition_affine(a: &Arrangement, d: usize) -> Result<Vec<PrimaryComponent>> {
    if a.mode() != Mode::Affine {
        return Err(Error::Invalid("expected an affine arrangement".into()));
    }
    check_degree(a, d)?;
    let mut out = flat_components(a, d, Mode::Affine);
    out.retain(|c| !at_infinity(a, &c.flat));
    Ok(out)
}

/// Components of the homogenized arrangement, including those at infinity.
pub fn homogenized_decomposition(a: &Arrangement, d: usize) -> Result<Vec<PrimaryComponent>> {
    check_degree(a, d)?;
    Ok(flat_components(a, d, Mode::Projective))
}

pub fn primary_decomposition(a: &Arrangement, d: usize) -> Result<Vec<PrimaryComponent>> {
    match a.mode() {
        Mode::Projective => primary_decomposition_projective(a, d),
        Mode::Affine => primary_decomposition_affine(a, d),
    }
}

/// `(I_S)^e` in the ring of the arrangement.
pub fn component_ideal(a: &Arrangement, c: &PrimaryComponent) -> IdealWithBasis {
    let forms: Vec<Polynomial> = c.flat.indices().iter().map(|&i| a.form(i).clone()).collect();
    power_of_linear_ideal(a.vars(), &forms, c.exponent)
}

/// Largest `k` with `f ∈ (I_S)^k`.
pub fn vanishing_order(f: &Polynomial, a: &Arrangement, s: &FlatSet) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::Precondition("vanishing order of the zero polynomial".into()));
    }
    order_on_flat(f, a, s, None)
}

/// A flat where the criterion fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub flat: FlatSet,
    pub required: u32,
    pub actual: u32,
}

impl Violation {
    pub fn deficit(&self) -> u32 {
        self.required - self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatCheck {
    pub holds: bool,
    pub witness: Option<Violation>,
}

/// Checks `vanishing_order(f, S) ≥ exponent` on every component; the
/// witness is the first failing component in decomposition order.
fn check_components(f: &Polynomial, a: &Arrangement, comps: &[PrimaryComponent]) -> Result<FlatCheck> {
    let orders: Vec<Result<u32>> =
        comps.par_iter().map(|c| order_on_flat(f, a, &c.flat, Some(c.exponent))).collect();
    for (c, o) in comps.iter().zip(orders) {
        let o = o?;
        if o < c.exponent {
            return Ok(FlatCheck {
                holds: false,
                witness: Some(Violation { flat: c.flat.clone(), required: c.exponent, actual: o }),
            });
        }
    }
    Ok(FlatCheck { holds: true, witness: None })
}

/// Membership `f ∈ I_{L,d}` decided on flats.
pub fn exists_pfd_via_flats(f: &Polynomial, a: &Arrangement, d: usize) -> Result<FlatCheck> {
    if f.is_zero() {
        return Ok(FlatCheck { holds: true, witness: None });
    }
    let comps = primary_decomposition(a, d)?;
    check_components(f, a, &comps)
}

/// Existence of a representation with `deg c_T ≤ deg f − d`.
///
/// Identical to [`exists_pfd_via_flats`] for projective arrangements. For
/// affine ones the criterion is applied to the homogenized numerator on all
/// flats of the homogenized arrangement, at infinity included.
pub fn bounded_pfd_via_flats(f: &Polynomial, a: &Arrangement, d: usize) -> Result<FlatCheck> {
    match a.mode() {
        Mode::Projective => exists_pfd_via_flats(f, a, d),
        Mode::Affine => {
            let z = crate::ideal::fresh_var_name(a.vars(), "z");
            let h = a.homogenized(&z)?;
            exists_pfd_via_flats(&f.homogenize_into(h.vars()), &h, d)
        }
    }
}

/// Vanishing orders on all relevant flats, computed once and reused for
/// every `d`.
#[derive(Clone, Debug)]
pub struct FlatOrders {
    n: usize,
    /// Flats with their capped vanishing orders.
    entries: Vec<(FlatSet, u32)>,
}

impl FlatOrders {
    /// Uses the bounded criterion (homogenized) in affine mode when `bounded` is set.
    pub fn new(f: &Polynomial, a: &Arrangement, bounded: bool) -> Result<Self> {
        let homog;
        let (f, a): (std::borrow::Cow<Polynomial>, &Arrangement) = if a.mode() == Mode::Affine && bounded {
            let z = crate::ideal::fresh_var_name(a.vars(), "z");
            homog = a.homogenized(&z)?;
            (std::borrow::Cow::Owned(f.homogenize_into(homog.vars())), &homog)
        } else {
            (std::borrow::Cow::Borrowed(f), a)
        };
        let n = a.len();
        let dmax = match f.total_degree() {
            Degree::NegInfinity => n,
            Degree::Finite(k) => n.min(k as usize),
        };
        let mut flats = if dmax == 0 { Vec::new() } else { a.flats_min_size(n + 1 - dmax) };
        if a.mode() == Mode::Affine {
            flats.retain(|s| !at_infinity(a, s));
        }
        let entries = flats
            .into_par_iter()
            .map(|s| {
                let cap = (dmax + s.len() - n) as u32;
                let o = order_on_flat(&f, a, &s, Some(cap))?;
                Ok((s, o))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FlatOrders { n, entries })
    }

    /// First violated flat for degree `d`, in decomposition order.
    pub fn violation(&self, d: usize) -> Option<Violation> {
        let mut bad: Vec<Violation> = self
            .entries
            .iter()
            .filter(|(s, _)| s.len() + d > self.n)
            .filter_map(|(s, o)| {
                let required = (d + s.len() - self.n) as u32;
                (*o < required).then(|| Violation { flat: s.clone(), required, actual: *o })
            })
            .collect();
        bad.sort_by(|a, b| b.flat.len().cmp(&a.flat.len()).then_with(|| a.flat.cmp(&b.flat)));
        bad.into_iter().next()
    }

    pub fn holds(&self, d: usize) -> bool {
        self.violation(d).is_none()
    }
}

/// Default cap on the number of components intersected by [`verify_decomposition`].
pub const DEFAULT_COMPONENT_CAP: usize = 64;

/// Whether the components intersect to `I_{L,d}`.
pub fn verify_decomposition(a: &Arrangement, d: usize, comps: &[PrimaryComponent], cap: usize) -> Result<bool> {
    if comps.len() > cap {
        return Err(Error::ResourceGuard(format!("{} components exceed the cap of {cap}", comps.len())));
    }
    let target = IdealWithBasis::dfold(a, &GeneratorSpec::all(d))?;
    let ideals: Vec<IdealWithBasis> = comps.iter().map(|c| component_ideal(a, c)).collect();
    let meet = if ideals.is_empty() {
        IdealWithBasis::new(a.vars(), vec![Polynomial::one(a.vars())])
    } else {
        intersect_all(&ideals)?
    };
    ideal_equal(&meet, &target)
}

/// Whether the given ideals intersect to `I_{L,d}`.
pub fn verify_ideals(a: &Arrangement, d: usize, ideals: &[IdealWithBasis]) -> Result<bool> {
    let target = IdealWithBasis::dfold(a, &GeneratorSpec::all(d))?;
    ideal_equal(&intersect_all(ideals)?, &target)
}

/// Greedily drops components whose removal keeps the intersection equal to
/// `I_{L,d}`, trying them in decomposition order.
pub fn minimal_decomposition(a: &Arrangement, d: usize, comps: &[PrimaryComponent]) -> Result<Vec<PrimaryComponent>> {
    let target = IdealWithBasis::dfold(a, &GeneratorSpec::all(d))?;
    let mut kept: Vec<PrimaryComponent> = comps.to_vec();
    let mut i = 0;
    while i < kept.len() {
        if kept.len() == 1 {
            break;
        }
        let trial: Vec<IdealWithBasis> =
            kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| component_ideal(a, c)).collect();
        // removal can only enlarge the intersection; equality needs the reverse inclusion
        if target.contains_ideal(&intersect_all(&trial)?)? {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// One line per component: flat, generating forms, exponent.
pub fn render_report(a: &Arrangement, comps: &[PrimaryComponent]) -> String {
    let mut s = String::new();
    for c in comps {
        let forms: Vec<String> = c.flat.indices().iter().map(|&i| a.form(i).to_string()).collect();
        let _ = writeln!(s, "{} <{}>^{}", c.flat.display_one_based(), forms.join(", "), c.exponent);
    }
    s
}

/// Counts of components by exponent, highest first.
pub fn exponent_census(comps: &[PrimaryComponent]) -> Vec<(u32, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for c in comps {
        *m.entry(c.exponent).or_insert(0usize) += 1;
    }
    m.into_iter().rev().collect()
}

/// The products generating `I_{L,d}` restricted to the forms, for reports.
pub fn generator_count(a: &Arrangement, d: usize) -> Result<usize> {
    Ok(dfold_generators(a, &GeneratorSpec::all(d))?.len())
}
