//! Monomial orders.

use std::cmp::Ordering;

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    GrevLex,
    Lex,
    /// Eliminates the first `k` variables (in precedence order): grevlex on
    /// that block first, ties broken by grevlex on the remaining variables.
    BlockElimination(usize),
}

/// A monomial order together with a variable precedence.
///
/// `precedence[0]` is the most significant variable. When absent the
/// declared variable order is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, precedence: None }
    }

    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, precedence: None }
    }

    pub fn block_elimination(k: usize) -> Self {
        MonomialOrder { kind: OrderKind::BlockElimination(k), precedence: None }
    }

    pub fn with_precedence(mut self, precedence: Vec<usize>) -> Self {
        self.precedence = Some(precedence);
        self
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.kind, OrderKind::GrevLex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.precedence {
            None => {
                let ea = a.exponents();
                let eb = b.exponents();
                match self.kind {
                    OrderKind::GrevLex => grevlex_slices(ea, eb),
                    OrderKind::Lex => ea.cmp(eb),
                    OrderKind::BlockElimination(k) => {
                        let k = k.min(ea.len());
                        grevlex_slices(&ea[..k], &eb[..k])
                            .then_with(|| grevlex_slices(&ea[k..], &eb[k..]))
                    }
                }
            }
            Some(p) => {
                let ea: Vec<u32> = p.iter().map(|&i| a.exponent(i)).collect();
                let eb: Vec<u32> = p.iter().map(|&i| b.exponent(i)).collect();
                let plain = MonomialOrder { kind: self.kind, precedence: None };
                plain.cmp(&Monomial::from_exponents(&ea), &Monomial::from_exponents(&eb))
            }
        }
    }
}

/// Graded reverse lexicographic comparison in declared variable order.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    grevlex_slices(a.exponents(), b.exponents())
}

fn grevlex_slices(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
