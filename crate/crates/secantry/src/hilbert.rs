//! Hilbert series of graded quotients via initial-ideal combinatorics.
//!
//! The numerator N(t) with HS(S/I) = N(t)/(1-t)^n is computed from the lead
//! terms of a grevlex basis by the standard pivot recursion
//! N(J) = N(J + x^e) + t^e N(J : x^e).  Krull dimension, degree and Hilbert
//! function values all derive from N.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::formspace::monomials_of_degree;
use crate::groebner::{Budget, Ideal};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct HilbertData {
    pub nvars: usize,
    /// Coefficients of N(t), index = degree.
    pub numerator: Vec<i64>,
    /// Krull dimension of S/I (the affine cone); -1 for the zero ring.
    pub krull_dim: i64,
    /// Leading coefficient of the Hilbert polynomial data: N~(1) after all
    /// (1-t) factors are removed.  This is the degree of the projective
    /// scheme when krull_dim >= 1, and the length when krull_dim = 0.
    pub degree: u64,
    /// h(0), h(1), ..., h(bound).
    pub hfunc: Vec<u64>,
}

impl HilbertData {
    pub fn codim(&self) -> i64 {
        self.nvars as i64 - self.krull_dim
    }

    /// Projective (geometric) dimension of the scheme: Krull dim minus one.
    pub fn projective_dim(&self) -> i64 {
        self.krull_dim - 1
    }
}

/// Divide out (1-t) factors; returns (reduced polynomial, multiplicity).
fn strip_one_minus_t(mut n: Vec<i64>) -> (Vec<i64>, usize) {
    let mut count = 0;
    loop {
        while n.last() == Some(&0) {
            n.pop();
        }
        if n.is_empty() {
            return (n, count);
        }
        let at_one: i64 = n.iter().sum();
        if at_one != 0 {
            return (n, count);
        }
        // Synthetic division by (1 - t): q_k = sum_{j<=k} n_j.
        let mut q = Vec::with_capacity(n.len().saturating_sub(1));
        let mut acc = 0i64;
        for k in 0..n.len() - 1 {
            acc += n[k];
            q.push(acc);
        }
        n = q;
        count += 1;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul_shift(a: &[i64], shift: usize) -> Vec<i64> {
    let mut out = vec![0; a.len() + shift];
    for (i, &c) in a.iter().enumerate() {
        out[i + shift] = c;
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Numerator of the Hilbert series of S/J for a monomial ideal J.
fn numerator_rec(gens: &[Monomial]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![];
    }
    // Pure variable powers: N = prod (1 - t^deg).
    if gens.iter().all(|g| g.support_mask().count_ones() == 1) {
        let mut acc = vec![1i64];
        for g in gens {
            let d = g.total_degree() as usize;
            let mut factor = vec![0i64; d + 1];
            factor[0] = 1;
            factor[d] = -1;
            acc = poly_mul(&acc, &factor);
        }
        return acc;
    }
    // Pivot: among variables occurring in some mixed-support generator
    // (so the pivot is never itself a generator and both branches shrink),
    // the one hitting the most generators, with its minimum positive
    // exponent.
    let n = gens[0].nvars();
    let mut best_var = usize::MAX;
    let mut best_count = 0;
    for v in 0..n {
        let in_mixed = gens
            .iter()
            .any(|g| g.exp(v) > 0 && g.support_mask().count_ones() >= 2);
        if !in_mixed {
            continue;
        }
        let count = gens.iter().filter(|g| g.exp(v) > 0).count();
        if count > best_count {
            best_count = count;
            best_var = v;
        }
    }
    let e = gens
        .iter()
        .filter(|g| g.exp(best_var) > 0)
        .map(|g| g.exp(best_var))
        .min()
        .unwrap();
    let mut pivot = Monomial::one(n);
    pivot.set_exp(best_var, e);

    // J + <pivot>
    let mut plus = gens.to_vec();
    plus.push(pivot.clone());
    let plus = minimalize(plus);
    // J : pivot
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| g.try_div(&g.gcd(&pivot)).unwrap())
        .collect();
    let colon = minimalize(colon);

    let n_plus = numerator_rec(&plus);
    let n_colon = numerator_rec(&colon);
    poly_add(&n_plus, &poly_mul_shift(&n_colon, e as usize))
}

/// Hilbert data of S/I up to the given degree bound, computed from the
/// grevlex initial ideal.  Requires I homogeneous for the standard grading.
pub fn hilbert_data(ideal: &Ideal, bound: u32, budget: &Budget) -> Result<HilbertData> {
    for g in ideal.generators() {
        let degs: Vec<u32> = g.terms().iter().map(|(m, _)| m.total_degree()).collect();
        if degs.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::NonHomogeneous(crate::parse::poly_to_string(g)));
        }
    }
    let gb = ideal.gb(&crate::order::MonomialOrder::GrevLex, budget)?;
    let leads: Vec<Monomial> = gb.lead_terms().into_iter().cloned().collect();
    hilbert_from_leads(ideal.ring(), leads, bound)
}

pub fn hilbert_from_leads(
    ring: &RingRef,
    leads: Vec<Monomial>,
    bound: u32,
) -> Result<HilbertData> {
    let n = ring.nvars();
    let leads = minimalize(leads);
    let numerator = numerator_rec(&leads);
    let (reduced, stripped) = strip_one_minus_t(numerator.clone());
    let (krull_dim, degree) = if reduced.is_empty() {
        (-1, 0)
    } else {
        let at_one: i64 = reduced.iter().sum();
        (n as i64 - stripped as i64, at_one.unsigned_abs())
    };
    // h(d) via series expansion of N/(1-t)^n.
    let mut hfunc = Vec::with_capacity(bound as usize + 1);
    for d in 0..=bound as usize {
        let mut acc: i64 = 0;
        for (k, &c) in numerator.iter().enumerate() {
            if k > d {
                break;
            }
            acc += c * binomial((n - 1 + d - k) as u64, (n - 1) as u64) as i64;
        }
        if acc < 0 {
            return Err(Error::Other("negative Hilbert function value".into()));
        }
        hfunc.push(acc as u64);
    }
    Ok(HilbertData { nvars: n, numerator, krull_dim, degree, hfunc })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Direct count of degree-d standard monomials; independent check for the
/// series-based Hilbert function.
pub fn count_standard_monomials(ring: &RingRef, leads: &[Monomial], d: u32) -> u64 {
    monomials_of_degree(ring, d)
        .into_iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .count() as u64
}

/// Exact graded Cohen-Macaulay test by Artinian reduction: cut by a generic
/// linear system of parameters and compare the reduction's length with the
/// degree.  Equality holds iff S/I is Cohen-Macaulay.
pub fn cohen_macaulay_by_reduction(
    ideal: &Ideal,
    seed: u64,
    budget: &Budget,
) -> Result<bool> {
    let ring = ideal.ring();
    let base = hilbert_data(ideal, 0, budget)?;
    if base.krull_dim <= 0 {
        return Ok(true);
    }
    let dim = base.krull_dim as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b9).wrapping_add(7));
    'attempt: for _ in 0..24 {
        let mut gens = ideal.generators().to_vec();
        for _ in 0..dim {
            let terms: Vec<(Monomial, Fp)> = (0..ring.nvars())
                .map(|j| {
                    (Monomial::var(j, ring.nvars()), Fp(rng.gen_range(0..ring.field().prime())))
                })
                .filter(|(_, c)| c.0 != 0)
                .collect();
            if terms.is_empty() {
                continue 'attempt;
            }
            gens.push(Polynomial::from_terms(ring, terms));
        }
        let cut = Ideal::new(ring, gens);
        // Bound high enough to watch the Hilbert function vanish.
        let gb = cut.gb(&crate::order::MonomialOrder::GrevLex, budget)?;
        let leads: Vec<Monomial> = gb.lead_terms().into_iter().cloned().collect();
        let hd = hilbert_from_leads(ring, leads.clone(), 0)?;
        if hd.krull_dim != 0 {
            continue 'attempt;
        }
        // Artinian: sum h(d) until it hits zero.
        let mut length: u64 = 0;
        let mut d = 0u32;
        loop {
            let h = count_standard_monomials(ring, &leads, d);
            if h == 0 {
                break;
            }
            length += h;
            d += 1;
            if d > 1000 {
                return Err(Error::Other("Artinian reduction failed to terminate".into()));
            }
        }
        return Ok(length == base.degree);
    }
    Err(Error::DegenerateSeed {
        seed,
        detail: "could not find a linear system of parameters".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;
    use crate::ring::RingSpec;

    fn proj(n: usize) -> RingRef {
        RingSpec::projective(PrimeField::default_field(), n - 1).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    #[test]
    fn twisted_cubic_hilbert() {
        let r = proj(4);
        let i = ideal(&r, &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]);
        let hd = hilbert_data(&i, 5, &Budget::default()).unwrap();
        // h(d) = 3d + 1
        assert_eq!(hd.hfunc, vec![1, 4, 7, 10, 13, 16]);
        assert_eq!(hd.krull_dim, 2);
        assert_eq!(hd.degree, 3);
        assert_eq!(hd.projective_dim(), 1);
        // Cross-check against a direct standard-monomial count.
        let gb = i.gb_default().unwrap();
        let leads: Vec<Monomial> = gb.lead_terms().into_iter().cloned().collect();
        for d in 0..=5u32 {
            assert_eq!(count_standard_monomials(&r, &leads, d), hd.hfunc[d as usize]);
        }
    }

    #[test]
    fn hyperplane_in_two_vars() {
        let r = proj(2);
        let i = ideal(&r, &["x_0"]);
        let hd = hilbert_data(&i, 6, &Budget::default()).unwrap();
        assert!(hd.hfunc.iter().all(|&h| h == 1));
        assert_eq!(hd.krull_dim, 1);
        assert_eq!(hd.degree, 1);
    }

    #[test]
    fn zero_ideal_is_the_full_ring() {
        let r = proj(3);
        let hd = hilbert_data(&Ideal::zero(&r), 3, &Budget::default()).unwrap();
        assert_eq!(hd.krull_dim, 3);
        assert_eq!(hd.degree, 1);
        assert_eq!(hd.hfunc, vec![1, 3, 6, 10]);
    }

    #[test]
    fn complete_intersection_is_cm() {
        let r = proj(4);
        let i = ideal(&r, &["x_0*x_1-x_2^2", "x_2*x_3"]);
        assert!(cohen_macaulay_by_reduction(&i, 5, &Budget::default()).unwrap());
    }

    #[test]
    fn non_cm_point_pair_union_line() {
        // A line union an off-line point in P^3 is not arithmetically CM.
        let r = proj(4);
        let line = ideal(&r, &["x_2", "x_3"]);
        let point = ideal(&r, &["x_0", "x_1", "x_2-x_3"]);
        let u = crate::ideal_ops::intersect_ideals(&[line, point], None, &Budget::default())
            .unwrap();
        assert!(!cohen_macaulay_by_reduction(&u, 5, &Budget::default()).unwrap());
    }
}
