//! Property suites runnable standalone: each function draws its own seeded
//! randomness, checks one family of invariants, and reports a one-line
//! summary.  The unit tests, the acceptance suite and the CLI `selftest`
//! command all run these.

use crate::betti::{betti_table, euler_consistent, BettiOptions};
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::formspace::{monomials_of_degree, FormSpace};
use crate::groebner::{Budget, Ideal};
use crate::ideal_ops::{eliminate, random_linear_change, truncate_ideal};
use crate::matrix::DenseMatrix;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{Block, RingRef, RingSpec};
use crate::secant::prolong;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &RingRef, degree: u32, density: f64) -> Polynomial {
    let p = ring.field().prime();
    let mut terms: Vec<(Monomial, Fp)> = Vec::new();
    for m in monomials_of_degree(ring, degree) {
        if rng.gen_bool(density) {
            terms.push((m, Fp(rng.gen_range(1..p))));
        }
    }
    Polynomial::from_terms(ring, terms)
}

pub fn field_axioms(seed: u64, cases: usize) -> Result<SuiteOutcome> {
    let field = PrimeField::default_field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.prime();
    for _ in 0..cases {
        let a = Fp(rng.gen_range(0..p));
        let b = Fp(rng.gen_range(0..p));
        let c = Fp(rng.gen_range(0..p));
        let assoc_add = field.add(field.add(a, b), c) == field.add(a, field.add(b, c));
        let assoc_mul = field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c));
        let distrib =
            field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c));
        if !(assoc_add && assoc_mul && distrib) {
            return Err(Error::Other("field axiom failed".into()));
        }
        if a.0 != 0 {
            let inv = field.inv(a)?;
            if field.mul(a, inv) != field.one() {
                return Err(Error::Other("inverse failed".into()));
            }
        }
    }
    Ok(SuiteOutcome { name: "field axioms", cases })
}

pub fn derivative_of_integral(seed: u64, cases: usize) -> Result<SuiteOutcome> {
    let ring = RingSpec::projective(PrimeField::default_field(), 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let d = rng.gen_range(0..5);
        let f = random_poly(&mut rng, &ring, d, 0.4);
        for i in 0..ring.nvars() {
            if f.integrate(i)?.differentiate(i) != f {
                return Err(Error::Other("derivative of integral is not the identity".into()));
            }
        }
    }
    Ok(SuiteOutcome { name: "derivative-of-integral identity", cases })
}

pub fn order_laws(seed: u64, cases: usize) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders = [
        MonomialOrder::GrevLex,
        MonomialOrder::Lex,
        MonomialOrder::elim(vec![0, 2]),
        MonomialOrder::Weighted { weights: vec![3, 1, 2, 1] },
    ];
    for _ in 0..cases {
        fn rand_mono(rng: &mut ChaCha8Rng) -> Monomial {
            Monomial::from_exponents(&[
                rng.gen_range(0..4u16),
                rng.gen_range(0..4u16),
                rng.gen_range(0..4u16),
                rng.gen_range(0..4u16),
            ])
        }
        let a = rand_mono(&mut rng);
        let b = rand_mono(&mut rng);
        let c = rand_mono(&mut rng);
        for ord in &orders {
            // Antisymmetry.
            if ord.cmp(&a, &b) != ord.cmp(&b, &a).reverse() {
                return Err(Error::Other("order not antisymmetric".into()));
            }
            // Transitivity.
            if ord.cmp(&a, &b) != Ordering::Greater
                && ord.cmp(&b, &c) != Ordering::Greater
                && ord.cmp(&a, &c) == Ordering::Greater
            {
                return Err(Error::Other("order not transitive".into()));
            }
            // Multiplicativity.
            if ord.cmp(&a, &b) != ord.cmp(&a.mul(&c), &b.mul(&c)) {
                return Err(Error::Other("order not multiplicative".into()));
            }
        }
    }
    Ok(SuiteOutcome { name: "monomial order laws", cases })
}

pub fn gb_idempotence_and_membership(seed: u64, cases: usize) -> Result<SuiteOutcome> {
    let ring = RingSpec::projective(PrimeField::default_field(), 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = Budget::default();
    for _ in 0..cases {
        let ngens = rng.gen_range(1..=3);
        let mut gens: Vec<Polynomial> = Vec::new();
        for _ in 0..ngens {
            let d = rng.gen_range(1..=2);
            let f = random_poly(&mut rng, &ring, d, 0.5);
            if !f.is_zero() {
                gens.push(f);
            }
        }
        let ideal = Ideal::new(&ring, gens);
        let gb = ideal.gb(&MonomialOrder::GrevLex, &budget)?;
        // Membership soundness: every generator reduces to zero.
        for g in ideal.generators() {
            if !gb.reduces_to_zero(g) {
                return Err(Error::Other("generator does not reduce to zero".into()));
            }
        }
        // Idempotence: recomputing on the basis reproduces it.
        let again = Ideal::new(&ring, gb.polys.clone()).gb(&MonomialOrder::GrevLex, &budget)?;
        if again.polys != gb.polys {
            return Err(Error::Other("reduced basis not idempotent".into()));
        }
    }
    Ok(SuiteOutcome { name: "groebner idempotence and membership", cases })
}

/// Elimination against a straight linear-algebra computation of
/// (I intersect k[kept])_d for d <= 4, on random small ideals.
pub fn elimination_brute_force(seed: u64, cases: usize) -> Result<SuiteOutcome> {
    let field = PrimeField::default_field();
    let ring = RingSpec::new(
        field,
        vec![
            Block { name: "a".into(), vars: vec!["a_0".into(), "a_1".into()] },
            Block { name: "b".into(), vars: vec!["b_0".into(), "b_1".into()] },
        ],
        vec![],
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = Budget::default();
    let elim_vars = vec![0usize, 1];
    for _ in 0..cases {
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..ngens)
            .map(|_| random_poly(&mut rng, &ring, 2, 0.5))
            .filter(|f| !f.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&ring, gens);
        let eliminated = eliminate(&ideal, &elim_vars, &budget)?;
        let (sub, map) = ring.subring_without(&elim_vars)?;
        for d in 1..=4u32 {
            // Big-ring side: I_d intersected with the pure-kept span.
            let full = truncate_ideal(d, &ideal)?;
            let pure: Vec<Polynomial> = monomials_of_degree(&ring, d)
                .into_iter()
                .filter(|m| elim_vars.iter().all(|&v| m.exp(v) == 0))
                .map(|m| Polynomial::monomial(&ring, m, field.one()))
                .collect();
            let pure_span = FormSpace::from_polys(&ring, d, &pure)?;
            let want = full.intersect(&pure_span);
            let want_sub = FormSpace::from_polys(
                &sub,
                d,
                &want
                    .basis_polys()
                    .iter()
                    .map(|f| f.project(&map, &sub))
                    .collect::<Vec<_>>(),
            )?;
            // Subring side: degree piece of the eliminated ideal.
            let have = truncate_ideal(d, &eliminated)?;
            if have != want_sub {
                return Err(Error::Other(format!(
                    "elimination disagrees with brute force at degree {d}"
                )));
            }
        }
    }
    Ok(SuiteOutcome { name: "elimination vs brute force", cases })
}

/// Brute-force prolongation: solve the full linear system "every partial
/// lies in V" over the degree-(d+1) monomial basis and compare.
pub fn prolongation_brute_force(seed: u64, cases: usize) -> Result<SuiteOutcome> {
    let field = PrimeField::default_field();
    let ring = RingSpec::projective(field, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let d = rng.gen_range(2..=3u32);
        let nforms = rng.gen_range(1..=4);
        let forms: Vec<Polynomial> = (0..nforms)
            .map(|_| random_poly(&mut rng, &ring, d, 0.5))
            .filter(|f| !f.is_zero())
            .collect();
        if forms.is_empty() {
            continue;
        }
        let v = FormSpace::from_polys(&ring, d, &forms)?;
        let fast = prolong(&v)?;
        let slow = prolong_brute(&v)?;
        if fast != slow {
            return Err(Error::Other("prolongation disagrees with brute force".into()));
        }
        // Soundness: partials of the basis land in V.
        for f in fast.basis_polys() {
            for i in 0..ring.nvars() {
                if !v.contains(&f.differentiate(i)) {
                    return Err(Error::Other("prolongation basis has a partial outside V".into()));
                }
            }
        }
    }
    Ok(SuiteOutcome { name: "prolongation vs brute force", cases })
}

fn prolong_brute(v: &FormSpace) -> Result<FormSpace> {
    let ring = v.ring().clone();
    let field = *ring.field();
    let d = v.degree();
    let big = monomials_of_degree(&ring, d + 1);
    let small = monomials_of_degree(&ring, d);
    let small_index: std::collections::HashMap<&Monomial, usize> =
        small.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // Rows of constraints: for each variable, the projection of the partial
    // away from V must vanish.  Projection = reduce by V's RREF pivots and
    // read off the rest.
    let vmat = v.matrix();
    let pivots: Vec<usize> = (0..vmat.nrows)
        .map(|r| (0..vmat.ncols).find(|&c| vmat.get(r, c) != 0).unwrap())
        .collect();
    let mut constraints: Vec<Vec<u32>> = Vec::new();
    for i in 0..ring.nvars() {
        // partial_i as a matrix big -> small
        let mut cols: Vec<Vec<Fp>> = Vec::with_capacity(big.len());
        for m in &big {
            let mono = Polynomial::monomial(&ring, m.clone(), field.one());
            let dm = mono.differentiate(i);
            let mut col = vec![Fp(0); small.len()];
            for (mm, c) in dm.terms() {
                col[small_index[mm]] = *c;
            }
            // Reduce modulo V.
            for (r, &pc) in pivots.iter().enumerate() {
                let f = col[pc];
                if f.0 != 0 {
                    for c in 0..vmat.ncols {
                        let vv = vmat.get(r, c);
                        if vv != 0 {
                            col[c] = field.sub(col[c], field.mul(f, Fp(vv)));
                        }
                    }
                }
            }
            cols.push(col);
        }
        for row_idx in 0..small.len() {
            if pivots.contains(&row_idx) {
                continue;
            }
            let row: Vec<u32> = cols.iter().map(|c| c[row_idx].0).collect();
            if row.iter().any(|&x| x != 0) {
                constraints.push(row);
            }
        }
    }
    let mut mat = DenseMatrix::from_rows(field, constraints);
    mat.ncols = big.len();
    let kernel = mat.kernel_basis();
    let polys: Vec<Polynomial> = (0..kernel.nrows)
        .map(|r| {
            let terms: Vec<(Monomial, Fp)> = big
                .iter()
                .enumerate()
                .filter_map(|(c, m)| {
                    let val = kernel.get(r, c);
                    (val != 0).then(|| (m.clone(), Fp(val)))
                })
                .collect();
            Polynomial::from_terms(&ring, terms)
        })
        .collect();
    FormSpace::from_polys(&ring, d + 1, &polys)
}

/// Betti tables are isomorphism invariants: random coordinate changes must
/// not move a single entry.  Also rechecks the Euler identity per table.
pub fn betti_invariance(seed: u64, seeds_to_try: usize) -> Result<SuiteOutcome> {
    let ring = RingSpec::projective(PrimeField::default_field(), 3)?;
    let gens: Vec<Polynomial> = ["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]
        .iter()
        .map(|s| crate::parse::parse_poly(&ring, s).unwrap())
        .collect();
    let ideal = Ideal::new(&ring, gens);
    let budget = Budget::default();
    let (base, hd) = betti_table(&ideal, &BettiOptions::default(), &budget)?;
    if !euler_consistent(&base, &hd) {
        return Err(Error::Other("Euler identity failed on base table".into()));
    }
    for s in 0..seeds_to_try as u64 {
        let change = random_linear_change(&ring, seed + s);
        let moved = change.apply_ideal(&ideal);
        let (t, hd2) = betti_table(&moved, &BettiOptions::default(), &budget)?;
        if t.entries != base.entries {
            return Err(Error::Other(format!("Betti table moved under seed {}", seed + s)));
        }
        if !euler_consistent(&t, &hd2) {
            return Err(Error::Other("Euler identity failed after coordinate change".into()));
        }
    }
    Ok(SuiteOutcome { name: "betti invariance under coordinate change", cases: seeds_to_try })
}

/// Run everything; returns the one-line summaries.
pub fn run_all(seed: u64, effort: usize) -> Result<Vec<SuiteOutcome>> {
    Ok(vec![
        field_axioms(seed, effort * 20)?,
        derivative_of_integral(seed + 1, effort.max(2))?,
        order_laws(seed + 2, effort * 10)?,
        gb_idempotence_and_membership(seed + 3, effort.max(3))?,
        elimination_brute_force(seed + 4, effort.max(3))?,
        prolongation_brute_force(seed + 5, effort.max(3))?,
        betti_invariance(seed + 6, 3)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_quickly() {
        let outcomes = run_all(99, 3).unwrap();
        assert_eq!(outcomes.len(), 7);
    }
}
