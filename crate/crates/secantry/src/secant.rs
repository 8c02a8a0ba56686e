//! Secant ideals two ways: join-and-eliminate, and iterated prolongation,
//! plus the heuristic certificate that a prolongation output generates the
//! whole secant ideal.

use crate::error::{Error, Result};
use crate::formspace::{monomials_of_degree, FormSpace};
use crate::groebner::{Budget, Ideal};
use crate::hilbert::{cohen_macaulay_by_reduction, hilbert_data};
use crate::ideal_ops::{eliminate, eliminate_up_to_degree, truncate_ideal};
use crate::poly::Polynomial;
use crate::ring::{Block, RingSpec};
use serde::Serialize;

/// Which join construction drives the elimination: the ruled join after the
/// coordinate change concentrating the sum in the last block, or the
/// variant that keeps the ambient variables as an extra block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JoinVariant {
    RuledJoin,
    WithXBlock,
}

/// The space of forms of degree d+1 whose first partials all lie in V:
/// intersect, over each variable, the integrals of V plus everything free
/// of that variable.  Pure linear algebra on echelon forms.
pub fn prolong(v: &FormSpace) -> Result<FormSpace> {
    let ring = v.ring().clone();
    let d = v.degree();
    if v.is_zero() {
        return Ok(FormSpace::empty(&ring, d + 1));
    }
    let basis = v.basis_polys();
    let mut acc: Option<FormSpace> = None;
    for i in 0..ring.nvars() {
        let mut gens: Vec<Polynomial> = Vec::with_capacity(basis.len() + 64);
        for f in &basis {
            gens.push(f.integrate(i)?);
        }
        for m in monomials_of_degree(&ring, d + 1) {
            if m.exp(i) == 0 {
                gens.push(Polynomial::monomial(&ring, m, ring.field().one()));
            }
        }
        let vi = FormSpace::from_polys(&ring, d + 1, &gens)?;
        acc = Some(match acc {
            None => vi,
            Some(a) => a.intersect(&vi),
        });
        if let Some(a) = &acc {
            if a.is_zero() {
                break;
            }
        }
    }
    Ok(acc.unwrap())
}

/// Iterate prolongation k times from the quadric piece: the output is the
/// degree-(k+2) graded piece of the k-th secant ideal.  The input must be
/// generated by quadrics.
pub fn secant_degree_piece(ideal: &Ideal, k: u32, _budget: &Budget) -> Result<FormSpace> {
    for g in ideal.generators() {
        let d = g.total_degree().unwrap_or(0);
        if d != 2 {
            return Err(Error::NotGeneratedInDegree { expected: 2, found: d });
        }
    }
    let mut v = truncate_ideal(2, ideal)?;
    for _ in 0..k {
        v = prolong(&v)?;
    }
    Ok(v)
}

pub struct JoinData {
    pub ideal: Ideal,
    /// Variables to eliminate from the join ring.
    pub elim_vars: Vec<usize>,
    /// Variables that survive, in the order of the original ring's.
    pub keep_vars: Vec<usize>,
}

/// The ideal whose elimination yields the k-th secant ideal.
pub fn join_ideal(ideal: &Ideal, k: u32, variant: JoinVariant) -> Result<JoinData> {
    if k < 1 {
        return Err(Error::InvalidSecantLevel(k));
    }
    ideal.ensure_homogeneous()?;
    let ring = ideal.ring();
    let n = ring.nvars();
    let field = *ring.field();
    let copies = (k + 1) as usize;

    let copy_block = |c: usize| -> Block {
        Block {
            name: format!("y{}", c + 1),
            vars: (0..n).map(|j| format!("y{}_{}", c + 1, j)).collect(),
        }
    };

    match variant {
        JoinVariant::RuledJoin => {
            let blocks: Vec<Block> = (0..copies).map(copy_block).collect();
            let big = RingSpec::new(field, blocks, vec![])?;
            let mut gens: Vec<Polynomial> = Vec::new();
            // Copies 1..k embed by renaming.
            for c in 0..copies - 1 {
                let map: Vec<usize> = (0..n).map(|j| c * n + j).collect();
                for g in ideal.generators() {
                    gens.push(g.inject(&map, &big));
                }
            }
            // The last copy carries the coordinate change
            // x_j -> y_{k+1,j} - y_{1,j} - ... - y_{k,j}.
            let images: Vec<Polynomial> = (0..n)
                .map(|j| {
                    let mut f = Polynomial::var(&big, (copies - 1) * n + j);
                    for c in 0..copies - 1 {
                        f = f.sub(&Polynomial::var(&big, c * n + j));
                    }
                    f
                })
                .collect();
            for g in ideal.generators() {
                gens.push(g.substitute_all(&images));
            }
            let elim_vars: Vec<usize> = (0..(copies - 1) * n).collect();
            let keep_vars: Vec<usize> = ((copies - 1) * n..copies * n).collect();
            Ok(JoinData { ideal: Ideal::new(&big, gens), elim_vars, keep_vars })
        }
        JoinVariant::WithXBlock => {
            let mut blocks: Vec<Block> = (0..copies).map(copy_block).collect();
            blocks.push(Block {
                name: "x".into(),
                vars: (0..n).map(|j| ring.var_name(j).to_string()).collect(),
            });
            let big = RingSpec::new(field, blocks, vec![])?;
            let mut gens: Vec<Polynomial> = Vec::new();
            for c in 0..copies {
                let map: Vec<usize> = (0..n).map(|j| c * n + j).collect();
                for g in ideal.generators() {
                    gens.push(g.inject(&map, &big));
                }
            }
            // y_{1,j} + ... + y_{k+1,j} - x_j
            for j in 0..n {
                let mut f = Polynomial::var(&big, copies * n + j).neg();
                for c in 0..copies {
                    f = f.add(&Polynomial::var(&big, c * n + j));
                }
                gens.push(f);
            }
            let elim_vars: Vec<usize> = (0..copies * n).collect();
            let keep_vars: Vec<usize> = (copies * n..(copies + 1) * n).collect();
            Ok(JoinData { ideal: Ideal::new(&big, gens), elim_vars, keep_vars })
        }
    }
}

/// Secant ideal by elimination through one variant; the result lives in the
/// original ring.
pub fn secant_ideal_elimination_via(
    ideal: &Ideal,
    k: u32,
    variant: JoinVariant,
    degree_limit: Option<u32>,
    budget: &Budget,
) -> Result<Ideal> {
    let join = join_ideal(ideal, k, variant)?;
    let out = match degree_limit {
        None => eliminate(&join.ideal, &join.elim_vars, budget)?,
        Some(l) => eliminate_up_to_degree(&join.ideal, &join.elim_vars, l, budget)?,
    };
    let ring = ideal.ring();
    let gens: Vec<Polynomial> =
        out.generators().iter().map(|g| g.with_ring(ring)).collect();
    Ok(Ideal::new(ring, gens))
}

/// Secant ideal by elimination, cross-checked: both join variants must give
/// the same reduced basis.
pub fn secant_ideal_elimination(ideal: &Ideal, k: u32, budget: &Budget) -> Result<Ideal> {
    let a = secant_ideal_elimination_via(ideal, k, JoinVariant::RuledJoin, None, budget)?;
    let b = secant_ideal_elimination_via(ideal, k, JoinVariant::WithXBlock, None, budget)?;
    if !a.equals(&b)? {
        return Err(Error::Other(
            "join variants disagree on the secant ideal; this indicates an engine bug".into(),
        ));
    }
    Ok(a)
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    /// Projective dimension of the scheme cut out by the forms.
    pub dim: i64,
    pub degree: u64,
    pub codim: i64,
    /// Length of a minimal free resolution; equals codim exactly when ACM.
    pub pd: Option<i64>,
    pub acm: bool,
    pub expected_dim: i64,
    pub expected_degree: Option<u64>,
    pub dim_matches: bool,
    pub degree_matches: bool,
    pub certified: bool,
}

/// The generation heuristic: compute dimension, degree and the
/// Cohen-Macaulay property of S/<P>.  When the quotient is ACM and the
/// dimension/degree match the expectations, the forms generate the full
/// ideal of the variety they cut out, and the report says CERTIFIED.
pub fn certify_generation(
    p: &FormSpace,
    expected_dim: i64,
    expected_degree: Option<u64>,
    seed: u64,
    budget: &Budget,
) -> Result<CertificationReport> {
    if p.is_zero() {
        return Err(Error::EmptyInput("certify_generation needs a nonzero space"));
    }
    let ideal = Ideal::new(p.ring(), p.basis_polys());
    let hd = hilbert_data(&ideal, 0, budget)?;
    let acm = cohen_macaulay_by_reduction(&ideal, seed, budget)?;
    let dim = hd.projective_dim();
    let dim_matches = dim == expected_dim;
    let degree_matches = expected_degree.map_or(true, |e| e == hd.degree);
    Ok(CertificationReport {
        dim,
        degree: hd.degree,
        codim: hd.codim(),
        pd: acm.then_some(hd.codim()),
        acm,
        expected_dim,
        expected_degree,
        dim_matches,
        degree_matches,
        certified: acm && dim_matches && degree_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::{parse_poly, poly_to_string};
    use crate::ring::RingRef;

    fn proj(n: usize) -> RingRef {
        RingSpec::projective(PrimeField::default_field(), n - 1).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    fn two_points() -> (RingRef, Ideal) {
        let r = proj(3);
        let i = ideal(&r, &["x_0*x_1", "x_2"]);
        (r, i)
    }

    #[test]
    fn two_point_secant_is_the_joining_line() {
        let (_, i) = two_points();
        let s = secant_ideal_elimination(&i, 1, &Budget::default()).unwrap();
        let gb = s.gb_default().unwrap();
        let strs: Vec<String> = gb.polys.iter().map(|p| poly_to_string(p)).collect();
        assert_eq!(strs, vec!["x_2"]);
    }

    #[test]
    fn join_generator_counts() {
        let (_, i) = two_points();
        let ruled = join_ideal(&i, 1, JoinVariant::RuledJoin).unwrap();
        assert_eq!(ruled.ideal.generators().len(), 2 * i.generators().len());
        let withx = join_ideal(&i, 1, JoinVariant::WithXBlock).unwrap();
        // two renamed copies plus the three linear forms
        assert_eq!(withx.ideal.generators().len(), 2 * i.generators().len() + 3);
    }

    #[test]
    fn with_x_block_join_matches_displayed_generators() {
        let (_, i) = two_points();
        let withx = join_ideal(&i, 1, JoinVariant::WithXBlock).unwrap();
        let big = withx.ideal.ring().clone();
        let expect = [
            "y1_0*y1_1",
            "y1_2",
            "y2_0*y2_1",
            "y2_2",
            "y1_0+y2_0-x_0",
            "y1_1+y2_1-x_1",
            "y1_2+y2_2-x_2",
        ];
        let got: Vec<String> =
            withx.ideal.generators().iter().map(poly_to_string).collect();
        let want: Vec<String> = expect
            .iter()
            .map(|s| poly_to_string(&parse_poly(&big, s).unwrap()))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn a_line_is_its_own_secant() {
        let r = proj(3);
        let i = ideal(&r, &["x_2"]);
        let s = secant_ideal_elimination(&i, 1, &Budget::default()).unwrap();
        let gb = s.gb_default().unwrap();
        let strs: Vec<String> = gb.polys.iter().map(|p| poly_to_string(p)).collect();
        assert_eq!(strs, vec!["x_2"]);
    }

    #[test]
    fn prolongation_of_all_quadrics_in_two_vars() {
        let f = PrimeField::default_field();
        let r = RingSpec::projective(f, 1).unwrap();
        let v = FormSpace::full_space(&r, 2);
        assert_eq!(v.dim(), 3);
        let p = prolong(&v).unwrap();
        assert_eq!(p.dim(), 4); // every cubic
    }

    #[test]
    fn twisted_cubic_prolongation_vanishes() {
        let r = proj(4);
        let i = ideal(&r, &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]);
        let p = secant_degree_piece(&i, 1, &Budget::default()).unwrap();
        assert_eq!(p.dim(), 0);
    }

    #[test]
    fn prolongation_soundness_partials_stay_inside() {
        let r = proj(4);
        let i = ideal(&r, &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2", "x_0*x_1"]);
        let v = truncate_ideal(2, &i).unwrap();
        let p = prolong(&v).unwrap();
        for f in p.basis_polys() {
            for j in 0..4 {
                assert!(v.contains(&f.differentiate(j)));
            }
        }
    }

    #[test]
    fn degree_piece_requires_quadric_generation() {
        let r = proj(3);
        let i = ideal(&r, &["x_0^3"]);
        match secant_degree_piece(&i, 1, &Budget::default()) {
            Err(Error::NotGeneratedInDegree { expected: 2, found: 3 }) => {}
            other => panic!("expected degree error, got {other:?}"),
        }
    }

    #[test]
    fn certify_a_hyperplane() {
        let r = proj(3);
        let p = FormSpace::from_polys(&r, 1, &[parse_poly(&r, "x_2").unwrap()]).unwrap();
        let rep = certify_generation(&p, 1, Some(1), 3, &Budget::default()).unwrap();
        assert!(rep.acm);
        assert_eq!(rep.pd, Some(1));
        assert_eq!(rep.codim, 1);
        assert!(rep.certified);
    }
}
