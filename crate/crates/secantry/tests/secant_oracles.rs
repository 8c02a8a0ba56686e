//! Prolongation vs elimination: the two routes to a secant ideal must agree
//! degree by degree, and elimination output must vanish on random sums of
//! curve points.

use secantry::field::{Fp, PrimeField};
use secantry::formspace::FormSpace;
use secantry::geometry::{curve_ideal, rnc_point, CurveRecipe};
use secantry::groebner::{Budget, Ideal};
use secantry::ideal_ops::truncate_ideal;
use secantry::secant::{
    secant_degree_piece, secant_ideal_elimination, secant_ideal_elimination_via, JoinVariant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget() -> Budget {
    Budget::default()
}

/// The elimination oracle for a graded piece: run the join elimination
/// truncated at the target degree and take that degree's piece.
fn elimination_piece(curve: &Ideal, k: u32, degree: u32) -> FormSpace {
    let s = secant_ideal_elimination_via(curve, k, JoinVariant::RuledJoin, Some(degree), &budget())
        .unwrap();
    truncate_ideal(degree, &s).unwrap()
}

#[test]
fn prolongation_equals_elimination_for_rational_normal_curves() {
    let field = PrimeField::default_field();
    for n in 3..=6usize {
        for k in 1..=2u32 {
            if n < (2 * k + 1) as usize {
                continue;
            }
            let curve = curve_ideal(&CurveRecipe::RationalNormal(n), field, &budget()).unwrap();
            let by_prolongation = secant_degree_piece(&curve.ideal, k, &budget()).unwrap();
            let by_elimination = elimination_piece(&curve.ideal, k, k + 2);
            assert_eq!(
                by_prolongation, by_elimination,
                "degree-{} piece mismatch for rnc{} at k={}",
                k + 2,
                n,
                k
            );
        }
    }
}

#[test]
fn rnc_secant_piece_dimensions_from_the_oracle() {
    // Frozen values computed by the elimination oracle above: the secant
    // cubic piece of rnc4 is one Hankel determinant; rnc5's has dimension 4;
    // rnc6 at k=2 is the single catalecticant quartic; rnc5 at k=2 fills.
    let field = PrimeField::default_field();
    let dims = [((4usize, 1u32), 1usize), ((5, 1), 4), ((6, 2), 1), ((5, 2), 0)];
    for ((n, k), expect) in dims {
        let curve = curve_ideal(&CurveRecipe::RationalNormal(n), field, &budget()).unwrap();
        let piece = secant_degree_piece(&curve.ideal, k, &budget()).unwrap();
        assert_eq!(piece.dim(), expect, "rnc{n} k={k}");
        let oracle = elimination_piece(&curve.ideal, k, k + 2);
        assert_eq!(oracle.dim(), expect, "oracle rnc{n} k={k}");
    }
}

#[test]
fn five_points_prolongation_matches_elimination() {
    let field = PrimeField::default_field();
    let pts = curve_ideal(&CurveRecipe::FivePoints, field, &budget()).unwrap();
    // The quadric piece generates enough for the degree-3 comparison.
    let quadrics = truncate_ideal(2, &pts.ideal).unwrap();
    assert_eq!(quadrics.dim(), 5);
    let by_quadrics = Ideal::new(pts.ideal.ring(), quadrics.basis_polys());
    let p = secant_degree_piece(&by_quadrics, 1, &budget()).unwrap();
    // Oracle: degree-3 piece of the full secant ideal of the 5 points.
    let s = secant_ideal_elimination(&pts.ideal, 1, &budget()).unwrap();
    let oracle = truncate_ideal(3, &s).unwrap();
    assert_eq!(p, oracle);
}

#[test]
fn join_variants_agree_on_small_ideals() {
    let field = PrimeField::default_field();
    for recipe in [CurveRecipe::PointPair, CurveRecipe::RationalNormal(3), CurveRecipe::RationalNormal(4)] {
        let c = curve_ideal(&recipe, field, &budget()).unwrap();
        let a = secant_ideal_elimination_via(&c.ideal, 1, JoinVariant::RuledJoin, None, &budget())
            .unwrap();
        let b = secant_ideal_elimination_via(&c.ideal, 1, JoinVariant::WithXBlock, None, &budget())
            .unwrap();
        assert!(a.equals(&b).unwrap(), "variants disagree for {}", c.name);
    }
}

#[test]
fn elimination_secant_vanishes_on_random_point_sums() {
    let field = PrimeField::default_field();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [4usize, 5] {
        let c = curve_ideal(&CurveRecipe::RationalNormal(n), field, &budget()).unwrap();
        let s = secant_ideal_elimination(&c.ideal, 1, &budget()).unwrap();
        for _ in 0..100 {
            let p1 = rnc_point(&field, n, Fp(1), Fp(rng.gen_range(0..field.prime())));
            let p2 = rnc_point(&field, n, Fp(rng.gen_range(0..2)), Fp(rng.gen_range(1..field.prime())));
            let l1 = Fp(rng.gen_range(1..field.prime()));
            let l2 = Fp(rng.gen_range(1..field.prime()));
            let sum: Vec<Fp> = p1
                .iter()
                .zip(&p2)
                .map(|(a, b)| field.add(field.mul(*a, l1), field.mul(*b, l2)))
                .collect();
            for g in s.generators() {
                assert_eq!(g.evaluate(&sum).0, 0, "secant generator fails on a chord of rnc{n}");
            }
        }
    }
}

#[test]
fn two_point_secant_both_variants_give_the_line() {
    let field = PrimeField::default_field();
    let c = curve_ideal(&CurveRecipe::PointPair, field, &budget()).unwrap();
    for variant in [JoinVariant::RuledJoin, JoinVariant::WithXBlock] {
        let s = secant_ideal_elimination_via(&c.ideal, 1, variant, None, &budget()).unwrap();
        let gb = s.gb_default().unwrap();
        let strs: Vec<String> =
            gb.polys.iter().map(|p| secantry::parse::poly_to_string(p)).collect();
        assert_eq!(strs, vec!["x_2"], "{variant:?}");
    }
}

#[test]
fn twisted_cubic_secant_fills_space() {
    let field = PrimeField::default_field();
    let c = curve_ideal(&CurveRecipe::RationalNormal(3), field, &budget()).unwrap();
    let s = secant_ideal_elimination(&c.ideal, 1, &budget()).unwrap();
    assert!(s.is_zero_ideal() || s.gb_default().unwrap().is_empty());
}

#[test]
fn rnc4_secant_is_the_hankel_determinant() {
    let field = PrimeField::default_field();
    let c = curve_ideal(&CurveRecipe::RationalNormal(4), field, &budget()).unwrap();
    let s = secant_ideal_elimination(&c.ideal, 1, &budget()).unwrap();
    let gb = s.gb_default().unwrap();
    assert_eq!(gb.polys.len(), 1);
    // 3x3 catalecticant determinant, monic.
    let det = secantry::parse::parse_poly(
        s.ring(),
        "x_2^3-2*x_1*x_2*x_3+x_0*x_3^2+x_1^2*x_4-x_0*x_2*x_4",
    )
    .unwrap();
    let monic = det.make_monic(&secantry::MonomialOrder::GrevLex).unwrap();
    assert_eq!(gb.polys[0], monic);
}
