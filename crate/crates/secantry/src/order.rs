//! Monomial orders: grevlex, lex, block elimination, weighted.
//!
//! Every order here is a multiplicative total order.  Elimination orders
//! compare the eliminated variables' degree first, so any monomial touching
//! an eliminated variable beats every monomial free of them.

use crate::monomial::Monomial;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    GrevLex,
    /// Pure lexicographic.
    Lex,
    /// Eliminate the given (sorted) variable indices: compare total degree in
    /// them, then grevlex among them, then grevlex on the rest.
    Elim { vars: Vec<usize> },
    /// Compare a weighted degree first, grevlex as tiebreak.
    Weighted { weights: Vec<u32> },
}

impl MonomialOrder {
    pub fn elim(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        MonomialOrder::Elim { vars }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(a.exponents(), b.exponents()),
            MonomialOrder::Lex => lex(a.exponents(), b.exponents()),
            MonomialOrder::Elim { vars } => {
                let da = a.degree_in(vars);
                let db = b.degree_in(vars);
                da.cmp(&db)
                    .then_with(|| grevlex_restricted(a, b, vars))
                    .then_with(|| grevlex(a.exponents(), b.exponents()))
            }
            MonomialOrder::Weighted { weights } => {
                let da: u64 =
                    a.exponents().iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
                let db: u64 =
                    b.exponents().iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum();
                da.cmp(&db).then_with(|| grevlex(a.exponents(), b.exponents()))
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal degree: the monomial with the smaller exponent in the last
    // variable where they differ is the larger one.
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn grevlex_restricted(a: &Monomial, b: &Monomial, vars: &[usize]) -> Ordering {
    // Degrees in `vars` are already known equal when this runs.
    for &i in vars.iter().rev() {
        if a.exp(i) != b.exp(i) {
            return b.exp(i).cmp(&a.exp(i));
        }
    }
    Ordering::Equal
}

fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for i in 0..a.len() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_chain_three_vars() {
        // x0^2 > x0 x1 > x1^2 > x0 x2
        let o = MonomialOrder::GrevLex;
        let x0x0 = m(&[2, 0, 0]);
        let x0x1 = m(&[1, 1, 0]);
        let x1x1 = m(&[0, 2, 0]);
        let x0x2 = m(&[1, 0, 1]);
        assert_eq!(o.cmp(&x0x0, &x0x1), Ordering::Greater);
        assert_eq!(o.cmp(&x0x1, &x1x1), Ordering::Greater);
        assert_eq!(o.cmp(&x1x1, &x0x2), Ordering::Greater);
    }

    #[test]
    fn lex_beats_any_power() {
        let o = MonomialOrder::Lex;
        let x0 = m(&[1, 0]);
        for k in 1..10u16 {
            assert_eq!(o.cmp(&x0, &m(&[0, k])), Ordering::Greater);
        }
    }

    #[test]
    fn elim_order_separates_blocks() {
        // Eliminating {x0}: any monomial containing x0 exceeds every pure-rest monomial.
        let o = MonomialOrder::elim(vec![0]);
        let with_x = m(&[1, 0, 0]);
        let pure = m(&[0, 5, 7]);
        assert_eq!(o.cmp(&with_x, &pure), Ordering::Greater);
    }
}
