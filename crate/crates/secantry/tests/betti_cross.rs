//! Koszul-rank Betti tables against the iterated-syzygy resolution, plus
//! regularity facts for the rational normal curves and their secants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secantry::betti::{betti_table, euler_consistent, regularity_report, BettiOptions};
use secantry::conjectures::check_secant_conjectures;
use secantry::field::{Fp, PrimeField};
use secantry::formspace::monomials_of_degree;
use secantry::geometry::{curve_ideal, CurveRecipe};
use secantry::groebner::{Budget, Ideal};
use secantry::monomial::Monomial;
use secantry::poly::Polynomial;
use secantry::resolution::betti_by_syzygies;
use secantry::ring::RingSpec;

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn koszul_table_matches_syzygy_resolution_on_random_ideals() {
    let field = PrimeField::default_field();
    let ring = RingSpec::projective(field, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for trial in 0..8 {
        let ngens = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        for _ in 0..ngens {
            let d = rng.gen_range(1..=3u32);
            let mut terms: Vec<(Monomial, Fp)> = Vec::new();
            for m in monomials_of_degree(&ring, d) {
                if rng.gen_bool(0.4) {
                    terms.push((m, Fp(rng.gen_range(1..field.prime()))));
                }
            }
            let f = Polynomial::from_terms(&ring, terms);
            if !f.is_zero() {
                gens.push(f);
            }
        }
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&ring, gens);
        let (table, hd) = betti_table(&ideal, &BettiOptions::default(), &budget()).unwrap();
        assert!(table.complete, "trial {trial}");
        assert!(euler_consistent(&table, &hd), "trial {trial}");
        let oracle = betti_by_syzygies(&ideal, &budget()).unwrap();
        assert_eq!(table.entries, oracle, "trial {trial}");
    }
}

#[test]
fn koszul_matches_syzygies_on_named_examples() {
    let field = PrimeField::default_field();
    for recipe in [CurveRecipe::RationalNormal(3), CurveRecipe::RationalNormal(4)] {
        let c = curve_ideal(&recipe, field, &budget()).unwrap();
        let (table, _) = betti_table(&c.ideal, &BettiOptions::default(), &budget()).unwrap();
        let oracle = betti_by_syzygies(&c.ideal, &budget()).unwrap();
        assert_eq!(table.entries, oracle, "{}", c.name);
    }
}

#[test]
fn rnc_curve_ideals_are_two_regular() {
    let field = PrimeField::default_field();
    for n in 3..=6usize {
        let c = curve_ideal(&CurveRecipe::RationalNormal(n), field, &budget()).unwrap();
        let (table, _) = betti_table(&c.ideal, &BettiOptions::default(), &budget()).unwrap();
        let rep = regularity_report(&table, &c.ideal, false, &budget()).unwrap();
        assert_eq!(rep.reg_ideal, Some(2), "rnc{n}");
        assert!(rep.acm, "rnc{n}");
    }
}

#[test]
fn first_secants_of_rncs_are_three_regular_and_acm() {
    let field = PrimeField::default_field();
    for n in 4..=6usize {
        let c = curve_ideal(&CurveRecipe::RationalNormal(n), field, &budget()).unwrap();
        let rep = check_secant_conjectures(&c.ideal, 0, n as u64, 1, true, &budget()).unwrap();
        assert_eq!(rep.reg_ideal, 3, "rnc{n}");
        assert!(rep.reg_matches, "rnc{n}");
        assert!(rep.acm, "rnc{n}");
        assert!(rep.generated_in_degree_k2, "rnc{n}");
    }
}

#[test]
fn betti_invariant_under_coordinate_change() {
    secantry::selfcheck::betti_invariance(12, 3).unwrap();
}

#[test]
fn euler_identity_on_every_curve_table() {
    let field = PrimeField::default_field();
    for recipe in
        [CurveRecipe::RationalNormal(4), CurveRecipe::RationalNormal(5), CurveRecipe::FivePoints]
    {
        let c = curve_ideal(&recipe, field, &budget()).unwrap();
        let (table, hd) = betti_table(&c.ideal, &BettiOptions::default(), &budget()).unwrap();
        assert!(table.complete);
        assert!(euler_consistent(&table, &hd), "{}", c.name);
    }
}
