//! Derived ideal operations: elimination, intersection, ring-map kernels,
//! graded truncation, random coordinate changes, minimal generators.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::formspace::{monomials_of_degree, monomials_of_multidegree, FormSpace};
use crate::groebner::{Budget, Ideal};
use crate::matrix::DenseMatrix;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{Block, Multidegree, RingRef, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Repeatedly substitute away eliminated variables that occur linearly with
/// a scalar coefficient in some generator (`c*v + rest` with `v` absent from
/// `rest`).  This preserves the intersection with the kept subring and cuts
/// the Groebner work dramatically for graph-style ideals.
pub fn presolve_linear(gens: &[Polynomial], elim: &[bool]) -> Vec<Polynomial> {
    let mut gens: Vec<Polynomial> = gens.to_vec();
    loop {
        let mut found: Option<(usize, usize, Polynomial)> = None;
        'search: for (gi, g) in gens.iter().enumerate() {
            for (m, c) in g.terms() {
                if m.total_degree() != 1 {
                    continue;
                }
                let v = (0..m.nvars()).find(|&i| m.exp(i) == 1).unwrap();
                if !elim[v] {
                    continue;
                }
                let appears_elsewhere =
                    g.terms().iter().any(|(mm, _)| mm != m && mm.exp(v) > 0);
                if appears_elsewhere {
                    continue;
                }
                // v = -(g - c v)/c
                let ring = g.ring().clone();
                let lin = Polynomial::monomial(&ring, m.clone(), *c);
                let rest = g.sub(&lin);
                let inv = ring.field().inv(*c).expect("nonzero coefficient");
                let value = rest.scale(ring.field().neg(inv));
                found = Some((gi, v, value));
                break 'search;
            }
        }
        match found {
            None => break,
            Some((gi, v, value)) => {
                gens.remove(gi);
                gens = gens
                    .iter()
                    .map(|g| g.substitute(v, &value))
                    .filter(|g| !g.is_zero())
                    .collect();
            }
        }
    }
    gens
}

fn project_pure_polys(
    gb_polys: &[Polynomial],
    vars: &[usize],
    sub: &RingRef,
    map: &[Option<usize>],
) -> Vec<Polynomial> {
    gb_polys
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0)))
        .map(|p| p.project(map, sub))
        .collect()
}

/// Intersection of an ideal with the subring omitting `vars`, returned in
/// that subring.
pub fn eliminate(ideal: &Ideal, vars: &[usize], budget: &Budget) -> Result<Ideal> {
    eliminate_inner(ideal, vars, None, budget)
}

/// Degree-truncated variant: the output generates the elimination ideal
/// correctly in all degrees <= `limit` (input must be homogeneous with
/// positive weights).
pub fn eliminate_up_to_degree(
    ideal: &Ideal,
    vars: &[usize],
    limit: u32,
    budget: &Budget,
) -> Result<Ideal> {
    eliminate_inner(ideal, vars, Some(limit), budget)
}

fn eliminate_inner(
    ideal: &Ideal,
    vars: &[usize],
    limit: Option<u32>,
    budget: &Budget,
) -> Result<Ideal> {
    let ring = ideal.ring();
    let mut elim = vec![false; ring.nvars()];
    for &v in vars {
        elim[v] = true;
    }
    let gens = presolve_linear(ideal.generators(), &elim);
    let (sub, map) = ring.subring_without(vars)?;
    let touched = gens
        .iter()
        .any(|g| g.terms().iter().any(|(m, _)| vars.iter().any(|&v| m.exp(v) > 0)));
    let pure = if touched {
        let work = Ideal::new(ring, gens);
        let order = MonomialOrder::elim(vars.to_vec());
        let gb = match limit {
            None => work.gb(&order, budget)?,
            Some(l) => work.gb_truncated(&order, l, budget)?,
        };
        project_pure_polys(&gb.polys, vars, &sub, &map)
    } else {
        gens.iter().map(|g| g.project(&map, &sub)).collect()
    };
    Ok(Ideal::new(&sub, pure))
}

/// Eliminate every variable of a named block.
pub fn eliminate_block(ideal: &Ideal, block: &str, budget: &Budget) -> Result<Ideal> {
    let bi = ideal
        .ring()
        .block_index(block)
        .ok_or_else(|| Error::InvalidRing(format!("no block named {block}")))?;
    let vars = ideal.ring().block_vars(bi);
    eliminate(ideal, &vars, budget)
}

/// Extend a ring with one auxiliary variable in its own block.  The new
/// variable gets weight zero in existing grading components and an extra
/// indicator component of its own.
fn ring_with_aux(ring: &RingRef, aux_name: &str) -> Result<(RingRef, usize, Vec<usize>)> {
    let mut blocks: Vec<Block> = ring.blocks().to_vec();
    blocks.push(Block { name: aux_name.into(), vars: vec![aux_name.into()] });
    let n = ring.nvars();
    let mut gradings: Vec<Vec<u32>> = ring
        .gradings()
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.push(0);
            g
        })
        .collect();
    let mut indicator = vec![0; n + 1];
    indicator[n] = 1;
    gradings.push(indicator);
    let big = RingSpec::new(*ring.field(), blocks, gradings)?;
    let map: Vec<usize> = (0..n).collect();
    Ok((big, n, map))
}

/// Intersection of finitely many ideals in one ring.
///
/// With no degree limit this is the single-auxiliary-variable construction
/// (t*A + (1-t)*B, eliminate t), folded pairwise.  With a degree limit the
/// intersection is assembled per degree by straight linear algebra, correct
/// in all degrees <= limit.
pub fn intersect_ideals(
    ideals: &[Ideal],
    degree_limit: Option<u32>,
    budget: &Budget,
) -> Result<Ideal> {
    if ideals.is_empty() {
        return Err(Error::EmptyInput("intersect_ideals"));
    }
    let ring = ideals[0].ring().clone();
    for i in ideals {
        if !RingSpec::same_ring(i.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
    }
    if ideals.len() == 1 {
        return Ok(ideals[0].clone());
    }
    match degree_limit {
        Some(limit) => intersect_by_degree(ideals, limit),
        None => {
            let mut acc = ideals[0].clone();
            for other in &ideals[1..] {
                acc = intersect_pair(&acc, other, budget)?;
            }
            Ok(acc)
        }
    }
}

fn intersect_pair(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    let ring = a.ring();
    let (big, t_idx, map) = ring_with_aux(ring, "t@aux")?;
    let t = Polynomial::var(&big, t_idx);
    let one = Polynomial::one(&big);
    let one_minus_t = one.sub(&t);
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(g.inject(&map, &big).mul(&t));
    }
    for g in b.generators() {
        gens.push(g.inject(&map, &big).mul(&one_minus_t));
    }
    let work = Ideal::new(&big, gens);
    let result = eliminate(&work, &[t_idx], budget)?;
    // The subring dropping t is structurally the original ring.
    let back: Vec<Polynomial> = result
        .generators()
        .iter()
        .map(|g| g.with_ring(ring))
        .collect();
    Ok(Ideal::new(ring, back))
}

fn intersect_by_degree(ideals: &[Ideal], limit: u32) -> Result<Ideal> {
    let ring = ideals[0].ring().clone();
    for i in ideals {
        i.ensure_homogeneous()?;
    }
    let min_deg = ideals
        .iter()
        .flat_map(|i| i.generators().iter().filter_map(|g| g.total_degree()))
        .min()
        .unwrap_or(0);
    let mut out: Vec<Polynomial> = Vec::new();
    for d in min_deg..=limit {
        let mut piece: Option<FormSpace> = None;
        for i in ideals {
            let fs = truncate_ideal(d, i)?;
            piece = Some(match piece {
                None => fs,
                Some(p) => p.intersect(&fs),
            });
        }
        let piece = piece.unwrap();
        if piece.is_zero() {
            continue;
        }
        // Quotient by what lower-degree output already generates.
        let one = ring.field().one();
        let mut lower: Vec<Polynomial> = Vec::new();
        for f in &out {
            let fd = f.total_degree().unwrap();
            for m in monomials_of_degree(&ring, d - fd) {
                lower.push(f.mul_term(&m, one));
            }
        }
        let mut have = FormSpace::from_polys(&ring, d, &lower)?;
        for f in piece.basis_polys() {
            if !have.contains(&f) {
                have = have.sum(&FormSpace::from_polys(&ring, d, &[f.clone()])?);
                out.push(f);
            }
        }
    }
    Ok(Ideal::new(&ring, out))
}

/// Ideal quotient by one polynomial: J : f = (J intersect <f>) / f.
pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::DivisionByZero { p: ideal.ring().field().prime() });
    }
    let principal = Ideal::new(ideal.ring(), vec![f.clone()]);
    let inter = intersect_ideals(&[ideal.clone(), principal], None, budget)?;
    let gens: Vec<Polynomial> = inter
        .generators()
        .iter()
        .map(|g| {
            g.exact_div(f)
                .ok_or_else(|| Error::Other("quotient division left a remainder".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Ideal::new(ideal.ring(), gens))
}

/// Saturation by one polynomial: iterate J : f until stable.
pub fn saturate_by(ideal: &Ideal, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
    let mut current = ideal.clone();
    for _ in 0..64 {
        let next = ideal_quotient(&current, f, budget)?;
        if next.equals(&current)? {
            return Ok(current);
        }
        current = next;
    }
    Err(Error::ResourceExceeded { phase: "saturation", detail: "did not stabilize".into() })
}

/// Kernel of the ring map `target_ring -> source_ring` sending the i-th
/// target variable to `targets[i]`, computed from the graph ideal by
/// eliminating the source variables.  Targets must be homogeneous; mixed
/// target degrees are supported when the caller includes a homogenizing
/// parameter among the source variables (multiply the appropriate targets
/// by it), which keeps the kernel multigraded.
pub fn kernel_of_ring_map(
    source_ring: &RingRef,
    targets: &[Polynomial],
    target_ring: &RingRef,
    budget: &Budget,
) -> Result<Ideal> {
    if targets.len() != target_ring.nvars() {
        return Err(Error::Other(format!(
            "expected {} targets, got {}",
            target_ring.nvars(),
            targets.len()
        )));
    }
    let mut multidegs = Vec::with_capacity(targets.len());
    for f in targets {
        if f.is_zero() {
            return Err(Error::EmptyInput("zero target in ring map"));
        }
        let d = f
            .multidegree()
            .ok_or_else(|| Error::NonHomogeneous(crate::parse::poly_to_string(f)))?;
        multidegs.push(d);
    }

    let ns = source_ring.nvars();
    let nt = target_ring.nvars();
    // Source variables are eliminated; prefix them so the combined ring
    // stays valid when source and target share names.
    let mut blocks: Vec<Block> = source_ring
        .blocks()
        .iter()
        .map(|b| Block {
            name: format!("in@{}", b.name),
            vars: b.vars.iter().map(|v| format!("in@{v}")).collect(),
        })
        .collect();
    blocks.extend(target_ring.blocks().to_vec());
    // Grading components follow the source grading; a target variable
    // weighs as much as its image.
    let gradings: Vec<Vec<u32>> = source_ring
        .gradings()
        .iter()
        .enumerate()
        .map(|(c, g)| {
            let mut w = g.clone();
            for d in &multidegs {
                w.push(d.get(c).copied().unwrap_or(0));
            }
            w
        })
        .collect();
    let big = RingSpec::new(*source_ring.field(), blocks, gradings)?;
    let src_map: Vec<usize> = (0..ns).collect();
    let tgt_map: Vec<usize> = (ns..ns + nt).collect();

    let gens: Vec<Polynomial> = targets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            Polynomial::var(&big, ns + i).sub(&f.inject(&src_map, &big))
        })
        .collect();
    let work = Ideal::new(&big, gens);
    let src_vars: Vec<usize> = (0..ns).collect();
    let result = eliminate(&work, &src_vars, budget)?;
    let back: Vec<Polynomial> = result
        .generators()
        .iter()
        .map(|g| g.with_ring(target_ring))
        .collect();
    let _ = tgt_map;
    Ok(Ideal::new(target_ring, back))
}

/// Basis of the degree-d graded piece of a homogeneous ideal.
pub fn truncate_ideal(d: u32, ideal: &Ideal) -> Result<FormSpace> {
    ideal.ensure_homogeneous()?;
    let ring = ideal.ring();
    let one = ring.field().one();
    let mut products = Vec::new();
    for g in ideal.generators() {
        let gd = g.total_degree().unwrap();
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(ring, d - gd) {
            products.push(g.mul_term(&m, one));
        }
    }
    FormSpace::from_polys(ring, d, &products)
}

/// The graded piece in a fixed multidegree, as a row-reduced basis.
pub fn truncate_multidegree(ideal: &Ideal, target: &Multidegree) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    let one = ring.field().one();
    let basis = monomials_of_multidegree(ring, target);
    let index: HashMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    let mut sources = Vec::new();
    for g in ideal.generators() {
        let gd = g
            .multidegree()
            .ok_or_else(|| Error::NonHomogeneous(crate::parse::poly_to_string(g)))?;
        if gd.len() != target.len() || gd.iter().zip(target.iter()).any(|(a, b)| a > b) {
            continue;
        }
        let diff: Multidegree = target.iter().zip(gd.iter()).map(|(a, b)| a - b).collect();
        for m in monomials_of_multidegree(ring, &diff) {
            let p = g.mul_term(&m, one);
            let mut row = vec![0u32; basis.len()];
            for (mm, c) in p.terms() {
                row[*index.get(mm).expect("enumerated")] = c.0;
            }
            rows.push(row);
            sources.push(p);
        }
    }
    let mut mat = DenseMatrix::from_rows(*ring.field(), rows);
    mat.ncols = basis.len();
    let pivots = mat.rref();
    let mut polys = Vec::new();
    for i in 0..pivots.len() {
        let terms: Vec<(Monomial, Fp)> = basis
            .iter()
            .enumerate()
            .filter_map(|(j, m)| {
                let v = mat.get(i, j);
                (v != 0).then(|| (m.clone(), Fp(v)))
            })
            .collect();
        polys.push(Polynomial::from_terms(ring, terms));
    }
    Ok(polys)
}

/// An invertible linear substitution x_i -> sum_j m[i][j] x_j.
#[derive(Debug, Clone)]
pub struct LinearChange {
    ring: RingRef,
    pub matrix: DenseMatrix,
    pub inverse: DenseMatrix,
    pub seed: u64,
}

impl LinearChange {
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|i| self.image_of_var(&self.matrix, i))
            .collect();
        f.substitute_all(&images)
    }

    pub fn apply_inverse(&self, f: &Polynomial) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|i| self.image_of_var(&self.inverse, i))
            .collect();
        f.substitute_all(&images)
    }

    pub fn apply_ideal(&self, ideal: &Ideal) -> Ideal {
        let gens = ideal.generators().iter().map(|g| self.apply(g)).collect();
        Ideal::new(&self.ring, gens)
    }

    fn image_of_var(&self, mat: &DenseMatrix, i: usize) -> Polynomial {
        let terms: Vec<(Monomial, Fp)> = (0..self.ring.nvars())
            .filter_map(|j| {
                let v = mat.get(i, j);
                (v != 0).then(|| (Monomial::var(j, self.ring.nvars()), Fp(v)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }
}

/// Deterministic from the seed; resamples until invertible.
pub fn random_linear_change(ring: &RingRef, seed: u64) -> LinearChange {
    let n = ring.nvars();
    let p = ring.field().prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut mat = DenseMatrix::zeros(*ring.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                mat.set(i, j, rng.gen_range(0..p));
            }
        }
        if let Some(inverse) = mat.inverse() {
            return LinearChange { ring: ring.clone(), matrix: mat, inverse, seed };
        }
    }
}

/// Minimal homogeneous generators of a multigraded ideal: in each occurring
/// multidegree, a basis of the piece modulo what variables times lower
/// pieces already span.
pub fn minimal_generators(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    let one = ring.field().one();
    let mut degrees: Vec<Multidegree> = Vec::new();
    for g in ideal.generators() {
        let d = g
            .multidegree()
            .ok_or_else(|| Error::NonHomogeneous(crate::parse::poly_to_string(g)))?;
        if !degrees.contains(&d) {
            degrees.push(d);
        }
    }
    degrees.sort_by_key(|d| (d.iter().sum::<u32>(), d.clone()));

    let mut out: Vec<Polynomial> = Vec::new();
    for delta in &degrees {
        let piece = truncate_multidegree(ideal, delta)?;
        if piece.is_empty() {
            continue;
        }
        let basis = monomials_of_multidegree(ring, delta);
        let index: HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_row = |p: &Polynomial| {
            let mut row = vec![0u32; basis.len()];
            for (m, c) in p.terms() {
                row[*index.get(m).expect("enumerated")] = c.0;
            }
            row
        };
        // Span of x_v * (piece in multidegree delta - deg x_v).
        let mut rows = Vec::new();
        for v in 0..ring.nvars() {
            let dv = ring.multidegree(&Monomial::var(v, ring.nvars()));
            if dv.len() != delta.len() || dv.iter().zip(delta.iter()).any(|(a, b)| a > b) {
                continue;
            }
            let lower: Multidegree =
                delta.iter().zip(dv.iter()).map(|(a, b)| a - b).collect();
            for f in truncate_multidegree(ideal, &lower)? {
                rows.push(to_row(&f.mul_term(&Monomial::var(v, ring.nvars()), one)));
            }
        }
        for f in &piece {
            rows.push(to_row(f));
        }
        // Count how many of `piece` extend the lower span, then harvest them.
        let nlower = rows.len() - piece.len();
        let mut mat = DenseMatrix::from_rows(*ring.field(), rows);
        mat.ncols = basis.len();
        let mut lower_mat = DenseMatrix {
            field: *ring.field(),
            nrows: nlower,
            ncols: basis.len(),
            data: mat.data[..nlower * basis.len()].to_vec(),
        };
        let lower_rank = lower_mat.rref().len();

        let field = *ring.field();
        let mut current = lower_mat;
        current.nrows = lower_rank;
        current.data.truncate(lower_rank * basis.len());
        for f in &piece {
            // Reduce f against current span; nonzero remainder = new mingen.
            let mut row: Vec<Fp> = to_row(f).into_iter().map(Fp).collect();
            for i in 0..current.nrows {
                let pivot = (0..current.ncols).find(|&j| current.get(i, j) != 0).unwrap();
                let c = row[pivot];
                if c.0 != 0 {
                    for j in 0..current.ncols {
                        let v = current.get(i, j);
                        if v != 0 {
                            row[j] = field.sub(row[j], field.mul(c, Fp(v)));
                        }
                    }
                }
            }
            if row.iter().any(|c| c.0 != 0) {
                out.push(f.clone());
                let mut rows2: Vec<Vec<u32>> = (0..current.nrows)
                    .map(|i| current.row(i).to_vec())
                    .collect();
                rows2.push(row.iter().map(|c| c.0).collect());
                let mut m2 = DenseMatrix::from_rows(field, rows2);
                m2.ncols = basis.len();
                let piv = m2.rref();
                m2.nrows = piv.len();
                m2.data.truncate(m2.nrows * basis.len());
                current = m2;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;

    fn proj(n: usize) -> RingRef {
        RingSpec::projective(PrimeField::default_field(), n - 1).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    #[test]
    fn eliminate_by_substitution() {
        // <x - y, x - z> with x eliminated -> <y - z>
        let f = PrimeField::default_field();
        let r = RingSpec::new(
            f,
            vec![
                Block { name: "x".into(), vars: vec!["x".into()] },
                Block { name: "rest".into(), vars: vec!["y".into(), "z".into()] },
            ],
            vec![],
        )
        .unwrap();
        let i = ideal(&r, &["x-y", "x-z"]);
        let e = eliminate(&i, &[0], &Budget::default()).unwrap();
        assert_eq!(e.generators().len(), 1);
        assert_eq!(crate::parse::poly_to_string(&e.generators()[0]), "y-z");
    }

    #[test]
    fn intersect_coprime_principal() {
        let r = proj(2);
        let a = ideal(&r, &["x_0"]);
        let b = ideal(&r, &["x_1"]);
        let c = intersect_ideals(&[a, b], None, &Budget::default()).unwrap();
        let gb = c.gb_default().unwrap();
        let strs: Vec<String> =
            gb.polys.iter().map(|p| crate::parse::poly_to_string(p)).collect();
        assert_eq!(strs, vec!["x_0*x_1"]);
    }

    #[test]
    fn intersect_idempotent() {
        let r = proj(3);
        let a = ideal(&r, &["x_0*x_1-x_2^2", "x_0^2"]);
        let c = intersect_ideals(&[a.clone(), a.clone()], None, &Budget::default()).unwrap();
        assert!(c.equals(&a).unwrap());
    }

    #[test]
    fn degree_limited_intersection_agrees() {
        let r = proj(3);
        let a = ideal(&r, &["x_0", "x_1^2"]);
        let b = ideal(&r, &["x_1", "x_2^2"]);
        let full = intersect_ideals(&[a.clone(), b.clone()], None, &Budget::default()).unwrap();
        let lim = intersect_ideals(&[a, b], Some(4), &Budget::default()).unwrap();
        for d in 1..=4 {
            let fd = truncate_ideal(d, &full).unwrap();
            let ld = truncate_ideal(d, &lim).unwrap();
            assert_eq!(fd, ld, "degree {d}");
        }
    }

    #[test]
    fn kernel_of_twisted_cubic_parametrization() {
        let f = PrimeField::default_field();
        let src = RingSpec::standard(f, "s", &["s", "u"]).unwrap();
        let tgt = RingSpec::projective(f, 3).unwrap();
        let targets: Vec<Polynomial> = ["s^3", "s^2*u", "s*u^2", "u^3"]
            .iter()
            .map(|t| parse_poly(&src, t).unwrap())
            .collect();
        let k = kernel_of_ring_map(&src, &targets, &tgt, &Budget::default()).unwrap();
        // The kernel is the twisted cubic ideal: check both inclusions.
        let expected = ideal(
            &tgt,
            &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"],
        );
        assert!(k.equals(&expected).unwrap());
        // Every kernel generator must vanish under substitution.
        for g in k.generators() {
            assert!(g.substitute_all(&targets).is_zero());
        }
    }

    #[test]
    fn kernel_of_identity_map_is_zero() {
        let f = PrimeField::default_field();
        let src = RingSpec::standard(f, "a", &["a_0", "a_1"]).unwrap();
        let tgt = RingSpec::standard(f, "b", &["b_0", "b_1"]).unwrap();
        let targets = vec![Polynomial::var(&src, 0), Polynomial::var(&src, 1)];
        let k = kernel_of_ring_map(&src, &targets, &tgt, &Budget::default()).unwrap();
        assert!(k.is_zero_ideal());
    }

    #[test]
    fn truncate_principal() {
        let r = proj(2);
        let i = ideal(&r, &["x_0"]);
        let t = truncate_ideal(2, &i).unwrap();
        assert_eq!(t.dim(), 2); // x_0^2, x_0 x_1
        assert!(t.contains(&parse_poly(&r, "x_0^2").unwrap()));
        assert!(t.contains(&parse_poly(&r, "x_0*x_1").unwrap()));
        assert!(!t.contains(&parse_poly(&r, "x_1^2").unwrap()));
        // Degree piece of the zero ideal is empty.
        let z = Ideal::zero(&r);
        assert_eq!(truncate_ideal(3, &z).unwrap().dim(), 0);
    }

    #[test]
    fn linear_change_is_deterministic_and_invertible() {
        let r = proj(4);
        let g1 = random_linear_change(&r, 42);
        let g2 = random_linear_change(&r, 42);
        assert_eq!(g1.matrix, g2.matrix);
        let f = parse_poly(&r, "x_0*x_2-x_1^2+5*x_3^2").unwrap();
        for seed in [1u64, 7, 99] {
            let g = random_linear_change(&r, seed);
            assert_eq!(g.apply_inverse(&g.apply(&f)), f);
        }
    }

    #[test]
    fn mingens_of_redundant_generators() {
        let r = proj(3);
        // x_0, and x_0*x_1 is redundant.
        let i = ideal(&r, &["x_0", "x_0*x_1", "x_1^2"]);
        let mg = minimal_generators(&i).unwrap();
        let strs: Vec<String> = mg.iter().map(crate::parse::poly_to_string).collect();
        assert_eq!(strs, vec!["x_0", "x_1^2"]);
    }
}
