//! Linear matroids of hyperplane arrangements.
//!
//! The ground set is the ordered list of forms. Affine forms contribute
//! their homogenized coefficient vector (linear part followed by the
//! constant), so every matroid query on an affine arrangement is a query on
//! its homogenization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{vars_from, Degree, Polynomial, Rational, Vars};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Affine,
    Projective,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Affine => "affine",
            Mode::Projective => "projective",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    vars: Vars,
    forms: Vec<Polynomial>,
    mode: Mode,
    vectors: Vec<Vec<Rational>>,
}

impl Arrangement {
    /// Validates and builds an arrangement. Zero forms need `allow_zero`.
    pub fn new(vars: &Vars, forms: Vec<Polynomial>, mode: Mode, allow_zero: bool) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::Invalid("arrangement needs at least one form".into()));
        }
        let mut vectors = Vec::with_capacity(forms.len());
        for (i, f) in forms.iter().enumerate() {
            if !crate::poly::same_vars(f.vars(), vars) {
                return Err(Error::AmbientMismatch);
            }
            if f.is_zero() {
                if !allow_zero {
                    return Err(Error::Invalid(format!("form {} is zero", i + 1)));
                }
            } else if f.total_degree() != Degree::Finite(1) {
                return Err(Error::DenominatorDegree { index: i + 1, degree: f.total_degree().to_string() });
            }
            let (mut coeffs, constant) = f.linear_parts().expect("degree checked");
            match mode {
                Mode::Projective => {
                    if !constant.is_zero() {
                        return Err(Error::Invalid(format!("form {} has a constant term in projective mode", i + 1)));
                    }
                }
                Mode::Affine => coeffs.push(constant),
            }
            vectors.push(coeffs);
        }
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::Invalid("all forms are zero".into()));
        }
        Ok(Arrangement { vars: vars.clone(), forms, mode, vectors })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &Polynomial {
        &self.forms[i]
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Coefficient vector of form `i` (homogenized in affine mode).
    pub fn vector(&self, i: usize) -> &[Rational] {
        &self.vectors[i]
    }

    /// Length of the coefficient vectors.
    pub fn ambient_dim(&self) -> usize {
        self.vectors[0].len()
    }

    /// Projective arrangement of the homogenized forms, with `z` appended.
    pub fn homogenized(&self, z: &str) -> Result<Arrangement> {
        if self.vars.iter().any(|v| v == z) {
            return Err(Error::NameCollision(z.to_string()));
        }
        let mut names = self.vars.to_vec();
        names.push(z.to_string());
        let hv: Vars = names.into();
        let forms = self.forms.iter().map(|f| f.homogenize_into(&hv)).collect();
        Arrangement::new(&hv, forms, Mode::Projective, true)
    }

    /// Same forms treated as an arrangement in a different mode.
    pub fn with_mode(&self, mode: Mode) -> Result<Arrangement> {
        Arrangement::new(&self.vars, self.forms.clone(), mode, true)
    }

    fn check(&self, s: &[usize]) -> Result<()> {
        match s.iter().find(|&&i| i >= self.len()) {
            Some(&i) => Err(Error::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    pub fn span_of(&self, s: &[usize]) -> Span {
        let mut span = Span::new(self.ambient_dim());
        for &i in s {
            span.insert(&self.vectors[i]);
        }
        span
    }

    pub fn rank_of_subset(&self, s: &[usize]) -> Result<usize> {
        self.check(s)?;
        Ok(self.span_of(s).rank())
    }

    pub fn rank(&self) -> usize {
        self.span_of(&(0..self.len()).collect::<Vec<_>>()).rank()
    }

    pub fn closure(&self, s: &[usize]) -> Result<Vec<usize>> {
        self.check(s)?;
        Ok(self.closure_unchecked(s))
    }

    fn closure_unchecked(&self, s: &[usize]) -> Vec<usize> {
        let span = self.span_of(s);
        (0..self.len()).filter(|&i| span.contains(&self.vectors[i])).collect()
    }

    pub fn is_flat(&self, s: &[usize]) -> bool {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == s.len() && self.closure(s).map(|c| c == sorted).unwrap_or(false)
    }

    /// All flats with at least `t` elements, sorted lexicographically.
    pub fn flats_min_size(&self, t: usize) -> Vec<FlatSet> {
        let all = if self.len() <= 20 { self.flats_by_subsets() } else { self.flats_by_lattice() };
        all.into_iter().filter(|f| f.len() >= t).map(FlatSet).collect()
    }

    /// Closures of all independent subsets.
    pub(crate) fn flats_by_subsets(&self) -> BTreeSet<Vec<usize>> {
        let n = self.len();
        let mut independent: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier: Vec<(Vec<usize>, Span)> = vec![(Vec::new(), Span::new(self.ambient_dim()))];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (set, span) in &frontier {
                let start = set.last().map_or(0, |&i| i + 1);
                for i in start..n {
                    let mut s2 = span.clone();
                    if s2.insert(&self.vectors[i]) {
                        let mut set2 = set.clone();
                        set2.push(i);
                        independent.push(set2.clone());
                        next.push((set2, s2));
                    }
                }
            }
            frontier = next;
        }
        independent.par_iter().map(|s| self.closure_unchecked(s)).collect::<Vec<_>>().into_iter().collect()
    }

    /// Rank-by-rank lattice construction from the closure of the empty set.
    pub(crate) fn flats_by_lattice(&self) -> BTreeSet<Vec<usize>> {
        let n = self.len();
        let bottom = self.closure_unchecked(&[]);
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert(bottom.clone());
        let mut layer = vec![bottom];
        while !layer.is_empty() {
            let next: BTreeSet<Vec<usize>> = layer
                .par_iter()
                .flat_map_iter(|f| {
                    // extend only by the smallest element of each new flat to limit repeats
                    let mut out = Vec::new();
                    let mut covered = vec![false; n];
                    for &i in f {
                        covered[i] = true;
                    }
                    for i in 0..n {
                        if covered[i] {
                            continue;
                        }
                        let mut s = f.clone();
                        s.push(i);
                        let g = self.closure_unchecked(&s);
                        for &j in &g {
                            covered[j] = true;
                        }
                        out.push(g);
                    }
                    out
                })
                .collect();
            layer = next.into_iter().filter(|g| all.insert(g.clone())).collect();
        }
        all
    }
}

/// Row-reduced basis of a subspace of `K^dim`.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis rows with pivot columns; each row is monic at its pivot and
    /// zero at the other pivots.
    pub fn rows(&self) -> &[(usize, Vec<Rational>)] {
        &self.rows
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let c = w[*p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&w) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        self.rows.push((p, w));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }
}

/// Sorted index set closed under matroid closure (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatSet(pub Vec<usize>);

impl FlatSet {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// 1-based rendering such as `{1,2,5}`.
    pub fn display_one_based(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Size histogram of a list of flats.
pub fn census(flats: &[FlatSet]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for f in flats {
        *out.entry(f.len()).or_insert(0) += 1;
    }
    out
}

/// The forms `x_i - x_j` for `i < j` over variables `x1..xr`.
pub fn braid_arrangement(r: usize) -> Result<Arrangement> {
    if r < 2 {
        return Err(Error::Invalid(format!("braid arrangement needs r >= 2, got {r}")));
    }
    let names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    let vars = vars_from(&names);
    let mut forms = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut c = vec![Rational::zero(); r];
            c[i] = Rational::one();
            c[j] = -Rational::one();
            forms.push(Polynomial::linear(&vars, &c, Rational::zero()));
        }
    }
    Arrangement::new(&vars, forms, Mode::Projective, false)
}

/// Index pairs `(i, j)` of the braid forms, in form order.
pub fn braid_pairs(r: usize) -> Vec<(usize, usize)> {
    (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All partitions of `r` in reverse lexicographic order.
    pub fn all(r: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(r, r, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Number of braid hyperplanes in a flat of type `λ`.
pub fn partition_flat_size(lambda: &Partition) -> u64 {
    lambda.0.iter().map(|&p| (p as u64) * (p as u64).saturating_sub(1) / 2).sum()
}

/// Whether `λ` dominates `μ`.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.total() != lambda.total() {
        return Err(Error::Invalid(format!("partitions of {} and {}", mu.total(), lambda.total())));
    }
    let len = mu.0.len().max(lambda.0.len());
    let (mut a, mut b) = (0u32, 0u32);
    for i in 0..len {
        a += lambda.0.get(i).copied().unwrap_or(0);
        b += mu.0.get(i).copied().unwrap_or(0);
        if a < b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Block-size type of a braid flat: connected components of the graph on
/// `[r]` whose edges are the flat's pairs.
pub fn braid_flat_type(r: usize, flat: &FlatSet) -> Partition {
    let pairs = braid_pairs(r);
    let mut parent: Vec<usize> = (0..r).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &k in flat.indices() {
        let (i, j) = pairs[k];
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
        }
    }
    let mut sizes: BTreeMap<usize, u32> = BTreeMap::new();
    for x in 0..r {
        let root = find(&mut parent, x);
        *sizes.entry(root).or_insert(0) += 1;
    }
    Partition::new(sizes.into_values().collect()).expect("nonempty")
}
