//! Exact solutions of sparse rational systems through word-size primes.
//!
//! The column rank profile is found modulo a prime `p`. The square
//! nonsingular subsystem on the pivot rows and columns is solved by p-adic
//! lifting, the solution is recovered by rational reconstruction and finally
//! checked against every row of the original system over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SparseVec;
use crate::poly::Rational;

/// Outcome of [`solve_modular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModularSolve {
    /// A solution supported on the first independent columns.
    Solved(SparseVec),
    /// The right-hand side is outside the column span modulo two primes.
    Inconsistent,
    /// Every prime tried was unlucky; use exact elimination instead.
    Failed,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^31`, largest first, so products of residues fit in a `u64`.
fn primes() -> impl Iterator<Item = u64> {
    (1u64..(1 << 30)).map(|k| (1u64 << 31) - 2 * k + 1).filter(|&n| is_prime(n))
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

/// The system with every row scaled to integer entries.
struct IntegerSystem {
    rows: Vec<Vec<(usize, BigInt)>>,
    rhs: Vec<BigInt>,
    ncols: usize,
}

impl IntegerSystem {
    fn new(columns: &[SparseVec], nrows: usize, b: &SparseVec) -> Self {
        let mut raw: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); nrows];
        for (j, col) in columns.iter().enumerate() {
            for (i, q) in col {
                raw[*i].push((j, q));
            }
        }
        let mut rhs_raw: Vec<Option<&Rational>> = vec![None; nrows];
        for (i, q) in b {
            rhs_raw[*i] = Some(q);
        }
        let mut rows = Vec::with_capacity(nrows);
        let mut rhs = Vec::with_capacity(nrows);
        for (row, r) in raw.into_iter().zip(rhs_raw) {
            let mut l = BigInt::one();
            for (_, q) in &row {
                l = l.lcm(q.denom());
            }
            if let Some(q) = r {
                l = l.lcm(q.denom());
            }
            rows.push(row.into_iter().map(|(j, q)| (j, q.numer() * (&l / q.denom()))).collect());
            rhs.push(r.map_or_else(BigInt::zero, |q| q.numer() * (&l / q.denom())));
        }
        IntegerSystem { rows, rhs, ncols: columns.len() }
    }

    fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Exact check of `A x = b` for `x = num / den`.
    fn satisfied(&self, num: &[(usize, BigInt)], den: &BigInt) -> bool {
        let mut x: Vec<Option<&BigInt>> = vec![None; self.ncols];
        for (j, v) in num {
            x[*j] = Some(v);
        }
        self.rows.iter().zip(&self.rhs).all(|(row, c)| {
            let mut s = BigInt::zero();
            for (j, a) in row {
                if let Some(v) = x[*j] {
                    s += a * v;
                }
            }
            s == c * den
        })
    }
}

/// Column echelon modulo `p`: pivot rows, pivot columns, and whether `b`
/// lies in the span.
struct Profile {
    rows: Vec<usize>,
    cols: Vec<usize>,
    consistent: bool,
}

fn reduce_mod(c: &mut [u64], pivots: &[(usize, Vec<(u32, u64)>)], p: u64) {
    for (r, v) in pivots {
        let t = c[*r];
        if t == 0 {
            continue;
        }
        let f = p - t;
        for &(i, a) in v {
            let i = i as usize;
            c[i] = (c[i] + f * a) % p;
        }
    }
}

fn rank_profile(sys: &IntegerSystem, p: u64) -> Profile {
    let m = sys.nrows();
    let mut cols_mod: Vec<Vec<(usize, u64)>> = vec![Vec::new(); sys.ncols];
    for (i, row) in sys.rows.iter().enumerate() {
        for (j, a) in row {
            let v = residue(a, p);
            if v != 0 {
                cols_mod[*j].push((i, v));
            }
        }
    }
    let mut pivots: Vec<(usize, Vec<(u32, u64)>)> = Vec::new();
    let mut cols = Vec::new();
    let mut c = vec![0u64; m];
    for (j, col) in cols_mod.iter().enumerate() {
        if pivots.len() == m {
            break;
        }
        c.iter_mut().for_each(|x| *x = 0);
        for &(i, v) in col {
            c[i] = v;
        }
        reduce_mod(&mut c, &pivots, p);
        if let Some(r) = c.iter().position(|&x| x != 0) {
            let s = inv(c[r], p);
            let v: Vec<(u32, u64)> =
                c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x * s % p)).collect();
            pivots.push((r, v));
            cols.push(j);
        }
    }
    c.iter_mut().for_each(|x| *x = 0);
    for (i, b) in sys.rhs.iter().enumerate() {
        c[i] = residue(b, p);
    }
    reduce_mod(&mut c, &pivots, p);
    let consistent = c.iter().all(|&x| x == 0);
    Profile { rows: pivots.iter().map(|(r, _)| *r).collect(), cols, consistent }
}

/// Dense LU with row pivoting modulo `p`.
struct LuMod {
    n: usize,
    p: u64,
    lu: Vec<u64>,
    perm: Vec<usize>,
    diag_inv: Vec<u64>,
}

impl LuMod {
    fn new(mut a: Vec<u64>, n: usize, p: u64) -> Option<Self> {
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let piv = (k..n).find(|&i| a[i * n + k] != 0)?;
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
            }
            let d = inv(a[k * n + k], p);
            for i in k + 1..n {
                let t = a[i * n + k];
                if t == 0 {
                    continue;
                }
                let f = t * d % p;
                a[i * n + k] = f;
                let nf = p - f;
                let (top, bottom) = a.split_at_mut(i * n);
                let rk = &top[k * n..k * n + n];
                let ri = &mut bottom[..n];
                for j in k + 1..n {
                    if rk[j] != 0 {
                        ri[j] = (ri[j] + nf * rk[j]) % p;
                    }
                }
            }
        }
        let diag_inv = (0..n).map(|k| inv(a[k * n + k], p)).collect();
        Some(LuMod { n, p, lu: a, perm, diag_inv })
    }

    fn solve(&self, b: &[u64]) -> Vec<u64> {
        let (n, p) = (self.n, self.p);
        let mut y: Vec<u64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let mut s = y[i];
            for j in 0..i {
                s = (s + (p - self.lu[i * n + j]) * y[j]) % p;
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..n {
                s = (s + (p - self.lu[i * n + j]) * y[j]) % p;
            }
            y[i] = s * self.diag_inv[i] % p;
        }
        y
    }
}

/// `(a, b)` with `a/b ≡ u (mod n)` and `|a|, b ≤ bound`.
fn reconstruct(u: &BigInt, n: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (n.clone(), u.mod_floor(n));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Solves the square system on the profile by p-adic lifting. Returns the
/// solution as numerators over a common denominator.
fn lift(sys: &IntegerSystem, prof: &Profile, p: u64) -> Option<(Vec<(usize, BigInt)>, BigInt)> {
    let r = prof.cols.len();
    let mut pos = vec![usize::MAX; sys.ncols];
    for (k, &j) in prof.cols.iter().enumerate() {
        pos[j] = k;
    }
    let mat: Vec<Vec<(usize, BigInt)>> = prof
        .rows
        .iter()
        .map(|&i| sys.rows[i].iter().filter(|(j, _)| pos[*j] != usize::MAX).map(|(j, a)| (pos[*j], a.clone())).collect())
        .collect();
    let rhs: Vec<BigInt> = prof.rows.iter().map(|&i| sys.rhs[i].clone()).collect();
    let mut dense = vec![0u64; r * r];
    for (k, row) in mat.iter().enumerate() {
        for (t, a) in row {
            dense[k * r + t] = residue(a, p);
        }
    }
    let lu = LuMod::new(dense, r, p)?;

    // Hadamard bound on the Cramer numerators and the determinant
    let mut bits = 0f64;
    for (row, c) in mat.iter().zip(&rhs) {
        let max = row.iter().map(|(_, a)| a.bits()).chain(std::iter::once(c.bits())).max().unwrap_or(0);
        bits += max as f64 + 0.5 * ((row.len() + 1) as f64).log2();
    }
    let pbits = (p as f64).log2();
    let max_steps = ((2.0 * bits + 2.0) / pbits).ceil() as usize + 1;

    let pb = BigInt::from(p);
    let mut res = rhs.clone();
    let mut acc = vec![BigInt::zero(); r];
    let mut pk = BigInt::one();
    let mut next_check = 4;
    for step in 1..=max_steps {
        let rm: Vec<u64> = res.iter().map(|x| residue(x, p)).collect();
        let y = lu.solve(&rm);
        for (a, &v) in acc.iter_mut().zip(&y) {
            if v != 0 {
                *a += &pk * v;
            }
        }
        for (k, row) in mat.iter().enumerate() {
            let mut s = BigInt::zero();
            for (t, a) in row {
                if y[*t] != 0 {
                    s += a * y[*t];
                }
            }
            res[k] = (&res[k] - s) / &pb;
        }
        pk *= &pb;
        if res.iter().all(Zero::is_zero) {
            // the integer solution is already exact
            let num = prof.cols.iter().zip(&acc).filter(|(_, v)| !v.is_zero()).map(|(&j, v)| (j, v.clone())).collect();
            return Some((num, BigInt::one()));
        }
        if step == next_check || step == max_steps {
            next_check *= 2;
            let bound = (&pk / 2u32).sqrt();
            let mut parts = Vec::with_capacity(r);
            let mut den = BigInt::one();
            let mut ok = true;
            for u in &acc {
                // reuse the running denominator; most entries then come out integral
                let w = (u * &den).mod_floor(&pk);
                match reconstruct(&w, &pk, &bound) {
                    Some((a, b)) => {
                        den *= &b;
                        parts.push((a, b));
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            // entry k is a_k / (b_k · b_0⋯b_{k−1}); bring all over the final denominator
            let mut num = Vec::with_capacity(r);
            let mut tail = BigInt::one();
            for (k, (a, b)) in parts.iter().enumerate().rev() {
                let v = a * &tail;
                if !v.is_zero() {
                    num.push((prof.cols[k], v));
                }
                tail *= b;
            }
            num.reverse();
            let g = num.iter().fold(den.clone(), |g, (_, v)| g.gcd(v));
            let num: Vec<(usize, BigInt)> = num.into_iter().map(|(j, v)| (j, v / &g)).collect();
            let den = den / &g;
            let square_ok = mat.iter().zip(&rhs).all(|(row, c)| {
                let mut s = BigInt::zero();
                for (t, a) in row {
                    if let Ok(idx) = num.binary_search_by_key(&prof.cols[*t], |(j, _)| *j) {
                        s += a * &num[idx].1;
                    }
                }
                s == c * &den
            });
            if square_ok {
                return Some((num, den));
            }
        }
    }
    None
}

/// Solves `Σ_j x_j columns[j] = b` over the rationals.
///
/// The solution is zero outside the first independent columns, which makes
/// it agree with exact elimination in column order. A result is always
/// verified exactly; inconsistency is concluded from two primes.
pub fn solve_modular(columns: &[SparseVec], nrows: usize, b: &SparseVec) -> ModularSolve {
    if b.is_empty() {
        return ModularSolve::Solved(Vec::new());
    }
    let sys = IntegerSystem::new(columns, nrows, b);
    let mut inconsistent = 0;
    for p in primes().take(4) {
        let prof = rank_profile(&sys, p);
        if !prof.consistent {
            inconsistent += 1;
            if inconsistent == 2 {
                return ModularSolve::Inconsistent;
            }
            continue;
        }
        let Some((num, den)) = lift(&sys, &prof, p) else { continue };
        if sys.satisfied(&num, &den) {
            return ModularSolve::Solved(
                num.into_iter().map(|(j, v)| (j, Rational::new(v, den.clone()))).collect(),
            );
        }
    }
    ModularSolve::Failed
}
