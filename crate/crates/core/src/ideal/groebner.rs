//! Buchberger's algorithm with optional cofactor tracking.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Vars};

/// Terms sorted descending under a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Ordered(pub Vec<(Monomial, Rational)>);

impl Ordered {
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut t = p.terms().to_vec();
        if !matches!(order.kind, crate::poly::OrderKind::GrevLex) || order.precedence.is_some() {
            t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        }
        Ordered(t)
    }

    pub fn to_poly(&self, vars: &Vars) -> Polynomial {
        Polynomial::from_terms(vars, self.0.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.0[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.0[0].1
    }

    /// `self - c*m*other`.
    pub fn sub_shifted(&self, c: &Rational, m: &Monomial, other: &Ordered, order: &MonomialOrder) -> Ordered {
        let a = &self.0;
        let b = &other.0;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Monomial> = b.first().map(|t| t.0.mul(m));
        while i < a.len() || j < b.len() {
            let ord = match (i < a.len(), &bj) {
                (true, Some(bm)) => order.cmp(&a[i].0, bm),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bj.take().unwrap(), -(c * &b[j].1)));
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
                Ordering::Equal => {
                    let v = &a[i].1 - c * &b[j].1;
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| t.0.mul(m));
                }
            }
        }
        Ordered(out)
    }

    pub fn scale(&self, c: &Rational) -> Ordered {
        Ordered(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Element {
    pub poly: Ordered,
    /// One entry per original generator.
    pub cofactors: Option<Vec<Polynomial>>,
}

/// Output of [`buchberger`]: reduced, monic, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub(crate) struct GbOutput {
    pub basis: Vec<Ordered>,
    pub cofactors: Option<Vec<Vec<Polynomial>>>,
}

pub(crate) struct Reducer<'a> {
    pub basis: &'a [Element],
    pub order: &'a MonomialOrder,
}

impl Reducer<'_> {
    fn find_divisor(&self, m: &Monomial, skip: Option<usize>) -> Option<(usize, Monomial)> {
        self.basis.iter().enumerate().find_map(|(k, g)| {
            if Some(k) == skip || g.poly.is_zero() {
                return None;
            }
            g.poly.lm().quotient_of(m).map(|q| (k, q))
        })
    }

    /// Full reduction. `quotients`, when given, receives `q_k` with
    /// `p = Σ q_k g_k + remainder`.
    pub fn reduce(
        &self,
        p: &Ordered,
        skip: Option<usize>,
        vars: &Vars,
        mut quotients: Option<&mut Vec<Polynomial>>,
    ) -> Ordered {
        let mut rest = p.clone();
        let mut pos = 0;
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        while pos < rest.0.len() {
            let (m, c) = &rest.0[pos];
            match self.find_divisor(m, skip) {
                Some((k, q)) => {
                    let g = &self.basis[k].poly;
                    let coef = c / g.lc();
                    if pos > 0 {
                        rest.0.drain(..pos);
                        pos = 0;
                    }
                    rest = rest.sub_shifted(&coef, &q, g, self.order);
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs[k] = &qs[k] + &Polynomial::monomial(vars, q, coef);
                    }
                }
                None => {
                    rem.push((m.clone(), c.clone()));
                    pos += 1;
                }
            }
        }
        Ordered(rem)
    }
}

fn combine_cofactors(
    acc: &mut [Polynomial],
    quotients: &[Polynomial],
    basis: &[Element],
) {
    for (k, q) in quotients.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let cof = basis[k].cofactors.as_ref().expect("tracking");
        for (a, c) in acc.iter_mut().zip(cof) {
            if !c.is_zero() {
                *a = &*a - &(q * c);
            }
        }
    }
}

/// Reduces `p` against `basis`, tracking cofactors of the result when `cof` is given.
fn reduce_tracked(
    p: &Ordered,
    cof: Option<Vec<Polynomial>>,
    basis: &[Element],
    skip: Option<usize>,
    order: &MonomialOrder,
    vars: &Vars,
) -> (Ordered, Option<Vec<Polynomial>>) {
    let reducer = Reducer { basis, order };
    match cof {
        None => (reducer.reduce(p, skip, vars, None), None),
        Some(mut cof) => {
            let mut qs = vec![Polynomial::zero(vars); basis.len()];
            let r = reducer.reduce(p, skip, vars, Some(&mut qs));
            combine_cofactors(&mut cof, &qs, basis);
            (r, Some(cof))
        }
    }
}

fn make_monic(e: &mut Element) {
    if e.poly.is_zero() {
        return;
    }
    let inv = e.poly.lc().recip();
    if inv.is_one() {
        return;
    }
    e.poly = e.poly.scale(&inv);
    if let Some(c) = e.cofactors.as_mut() {
        for x in c.iter_mut() {
            *x = x.scale(&inv);
        }
    }
}

/// Guard against runaway computations.
#[derive(Clone, Copy, Debug)]
pub struct GbLimits {
    pub max_pairs: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { max_pairs: 200_000 }
    }
}

pub(crate) fn buchberger(
    gens: &[Polynomial],
    vars: &Vars,
    order: &MonomialOrder,
    track: bool,
    limits: GbLimits,
) -> Result<GbOutput, usize> {
    let m = gens.len();
    let mut basis: Vec<Element> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut processed = 0usize;

    let add = |basis: &mut Vec<Element>, pairs: &mut Vec<(usize, usize)>, mut e: Element| {
        make_monic(&mut e);
        let k = basis.len();
        for i in 0..k {
            if !basis[i].poly.is_zero() {
                pairs.push((i, k));
            }
        }
        basis.push(e);
    };

    // initial interreduction: each generator is reduced by the ones before it
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let p = Ordered::from_poly(g, order);
        let cof = track.then(|| {
            let mut v = vec![Polynomial::zero(vars); m];
            v[i] = Polynomial::one(vars);
            v
        });
        let (r, cof) = reduce_tracked(&p, cof, &basis, None, order, vars);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, Element { poly: r, cofactors: cof });
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm, ties by pair index
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = basis[a.0].poly.lm().lcm(basis[a.1].poly.lm());
                let lb = basis[b.0].poly.lm().lcm(basis[b.1].poly.lm());
                order.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .expect("nonempty");
        let (i, j) = pairs.remove(idx);
        processed += 1;
        if processed > limits.max_pairs {
            return Err(processed);
        }
        let (gi, gj) = (&basis[i], &basis[j]);
        if gi.poly.is_zero() || gj.poly.is_zero() {
            continue;
        }
        let (li, lj) = (gi.poly.lm().clone(), gj.poly.lm().clone());
        if li.coprime(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && !basis[k].poly.is_zero()
                && basis[k].poly.lm().divides(&lcm)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let qi = li.quotient_of(&lcm).unwrap();
        let qj = lj.quotient_of(&lcm).unwrap();
        let shifted_i = Ordered(gi.poly.0.iter().map(|(t, c)| (t.mul(&qi), c.clone())).collect());
        let s = shifted_i.sub_shifted(&Rational::one(), &qj, &gj.poly, order);
        let cof = if track {
            let ci = gi.cofactors.as_ref().unwrap();
            let cj = gj.cofactors.as_ref().unwrap();
            let mi = Polynomial::monomial(vars, qi.clone(), Rational::one());
            let mj = Polynomial::monomial(vars, qj.clone(), Rational::one());
            Some(ci.iter().zip(cj).map(|(a, b)| &(&mi * a) - &(&mj * b)).collect())
        } else {
            None
        };
        let (r, cof) = reduce_tracked(&s, cof, &basis, None, order, vars);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, Element { poly: r, cofactors: cof });
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by an earlier kept one
    let mut keep: Vec<usize> = Vec::new();
    let mut idx: Vec<usize> = (0..basis.len()).filter(|&k| !basis[k].poly.is_zero()).collect();
    idx.sort_by(|&a, &b| order.cmp(basis[a].poly.lm(), basis[b].poly.lm()).then(a.cmp(&b)));
    for &k in &idx {
        if !keep.iter().any(|&h| basis[h].poly.lm().divides(basis[k].poly.lm())) {
            keep.push(k);
        }
    }
    let mut minimal: Vec<Element> = keep.into_iter().map(|k| basis[k].clone()).collect();
    // tail-reduce each element by the others
    for k in 0..minimal.len() {
        let e = minimal[k].clone();
        let (r, cof) = reduce_tracked(&e.poly, e.cofactors, &minimal, Some(k), order, vars);
        let mut e = Element { poly: r, cofactors: cof };
        make_monic(&mut e);
        minimal[k] = e;
    }
    let cofactors = track.then(|| minimal.iter().map(|e| e.cofactors.clone().unwrap()).collect());
    Ok(GbOutput { basis: minimal.into_iter().map(|e| e.poly).collect(), cofactors })
}
