//! Finite-dimensional spaces of homogeneous forms as row-reduced
//! coefficient matrices over a fixed monomial basis.
//!
//! The reduced row echelon form is the canonical representative: two
//! `FormSpace`s are equal iff their matrices are equal entry by entry.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::DenseMatrix;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{Multidegree, RingRef, RingSpec};

/// All monomials of total degree `d`, sorted descending grevlex.
pub fn monomials_of_degree(ring: &RingRef, d: u32) -> Vec<Monomial> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    gen_rec(&mut out, &mut exps, 0, d, n);
    let ord = MonomialOrder::GrevLex;
    out.sort_by(|a, b| ord.cmp(b, a));
    out
}

fn gen_rec(out: &mut Vec<Monomial>, exps: &mut Vec<u16>, var: usize, left: u32, n: usize) {
    if var == n - 1 {
        exps[var] = left as u16;
        out.push(Monomial::from_exponents(exps));
        exps[var] = 0;
        return;
    }
    for e in 0..=left {
        exps[var] = e as u16;
        gen_rec(out, exps, var + 1, left - e, n);
    }
    exps[var] = 0;
}

/// All monomials with the given multidegree under the ring's gradings.
pub fn monomials_of_multidegree(ring: &RingRef, target: &Multidegree) -> Vec<Monomial> {
    let n = ring.nvars();
    let ncomp = ring.gradings().len().min(target.len());
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    let mut remaining: Vec<i64> = target.iter().map(|&d| d as i64).collect();
    gen_multi_rec(ring, &mut out, &mut exps, &mut remaining, 0, n, ncomp);
    let ord = MonomialOrder::GrevLex;
    out.sort_by(|a, b| ord.cmp(b, a));
    out
}

fn gen_multi_rec(
    ring: &RingRef,
    out: &mut Vec<Monomial>,
    exps: &mut Vec<u16>,
    remaining: &mut Vec<i64>,
    var: usize,
    n: usize,
    ncomp: usize,
) {
    if var == n {
        if remaining.iter().all(|&r| r == 0) {
            out.push(Monomial::from_exponents(exps));
        }
        return;
    }
    // Max exponent compatible with what is left in every graded component.
    let mut emax = i64::MAX;
    for c in 0..ncomp {
        let w = ring.gradings()[c][var] as i64;
        if w > 0 {
            emax = emax.min(remaining[c] / w);
        }
    }
    if emax == i64::MAX {
        // Weightless in all tracked components; higher powers would repeat.
        emax = if remaining.iter().all(|&r| r >= 0) { 0 } else { -1 };
    }
    for e in 0..=emax.max(-1) {
        if e > u16::MAX as i64 {
            break;
        }
        exps[var] = e as u16;
        let ok = (0..ncomp).all(|c| {
            let w = ring.gradings()[c][var] as i64;
            remaining[c] - e * w >= 0
        });
        if ok {
            for c in 0..ncomp {
                remaining[c] -= e * ring.gradings()[c][var] as i64;
            }
            gen_multi_rec(ring, out, exps, remaining, var + 1, n, ncomp);
            for c in 0..ncomp {
                remaining[c] += e * ring.gradings()[c][var] as i64;
            }
        }
    }
    exps[var] = 0;
}

#[derive(Debug, Clone)]
pub struct FormSpace {
    ring: RingRef,
    degree: u32,
    monomials: Vec<Monomial>,
    /// RREF with zero rows trimmed; one row per basis form.
    mat: DenseMatrix,
}

impl PartialEq for FormSpace {
    fn eq(&self, other: &Self) -> bool {
        RingSpec::same_ring(&self.ring, &other.ring)
            && self.degree == other.degree
            && self.mat == other.mat
    }
}
impl Eq for FormSpace {}

impl FormSpace {
    pub fn empty(ring: &RingRef, degree: u32) -> Self {
        let monomials = monomials_of_degree(ring, degree);
        let mat = DenseMatrix::zeros(*ring.field(), 0, monomials.len());
        FormSpace { ring: ring.clone(), degree, monomials, mat }
    }

    /// Span of the given forms, all homogeneous of total degree `degree`.
    pub fn from_polys(ring: &RingRef, degree: u32, polys: &[Polynomial]) -> Result<Self> {
        let monomials = monomials_of_degree(ring, degree);
        let index: std::collections::HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for p in polys {
            if p.is_zero() {
                continue;
            }
            let mut row = vec![0u32; monomials.len()];
            for (m, c) in p.terms() {
                if m.total_degree() != degree {
                    return Err(Error::NonHomogeneous(crate::parse::poly_to_string(p)));
                }
                row[*index.get(m).expect("monomial enumerated")] = c.0;
            }
            rows.push(row);
        }
        let mut mat = DenseMatrix::from_rows(*ring.field(), rows);
        mat.ncols = monomials.len();
        let pivots = mat.rref();
        mat.nrows = pivots.len();
        mat.data.truncate(mat.nrows * mat.ncols);
        Ok(FormSpace { ring: ring.clone(), degree, monomials, mat })
    }

    pub fn full_space(ring: &RingRef, degree: u32) -> Self {
        let monomials = monomials_of_degree(ring, degree);
        let mat = DenseMatrix::identity(*ring.field(), monomials.len());
        FormSpace { ring: ring.clone(), degree, monomials, mat }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.nrows == 0
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.mat
    }

    pub fn basis_polys(&self) -> Vec<Polynomial> {
        (0..self.mat.nrows)
            .map(|i| {
                let terms: Vec<(Monomial, Fp)> = self
                    .monomials
                    .iter()
                    .enumerate()
                    .filter_map(|(j, m)| {
                        let v = self.mat.get(i, j);
                        (v != 0).then(|| (m.clone(), Fp(v)))
                    })
                    .collect();
                Polynomial::from_terms(&self.ring, terms)
            })
            .collect()
    }

    /// Reduce a form against the echelon basis; `None` when not contained.
    pub fn contains(&self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        let index: std::collections::HashMap<&Monomial, usize> =
            self.monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let field = *self.ring.field();
        let mut row = vec![Fp(0); self.monomials.len()];
        for (m, c) in p.terms() {
            match index.get(m) {
                Some(&j) => row[j] = *c,
                None => return false,
            }
        }
        // Pivot columns are the first nonzero entry of each RREF row.
        for i in 0..self.mat.nrows {
            let pivot = (0..self.mat.ncols).find(|&j| self.mat.get(i, j) != 0).unwrap();
            let c = row[pivot];
            if c.0 != 0 {
                for j in 0..self.mat.ncols {
                    let v = self.mat.get(i, j);
                    if v != 0 {
                        row[j] = field.sub(row[j], field.mul(c, Fp(v)));
                    }
                }
            }
        }
        row.iter().all(|c| c.0 == 0)
    }

    /// Row-space intersection via the Zassenhaus block trick.
    pub fn intersect(&self, other: &FormSpace) -> FormSpace {
        assert!(RingSpec::same_ring(&self.ring, &other.ring));
        assert_eq!(self.degree, other.degree);
        let n = self.monomials.len();
        let field = *self.ring.field();
        let ra = self.mat.nrows;
        let rb = other.mat.nrows;
        let mut big = DenseMatrix::zeros(field, ra + rb, 2 * n);
        for i in 0..ra {
            for j in 0..n {
                let v = self.mat.get(i, j);
                big.set(i, j, v);
                big.set(i, n + j, v);
            }
        }
        for i in 0..rb {
            for j in 0..n {
                big.set(ra + i, j, other.mat.get(i, j));
            }
        }
        big.rref();
        let mut rows = Vec::new();
        for i in 0..big.nrows {
            let left_zero = (0..n).all(|j| big.get(i, j) == 0);
            let right = (0..n).map(|j| big.get(i, n + j)).collect::<Vec<_>>();
            if left_zero && right.iter().any(|&v| v != 0) {
                rows.push(right);
            }
        }
        let mut mat = DenseMatrix::from_rows(field, rows);
        mat.ncols = n;
        let pivots = mat.rref();
        mat.nrows = pivots.len();
        mat.data.truncate(mat.nrows * n);
        FormSpace {
            ring: self.ring.clone(),
            degree: self.degree,
            monomials: self.monomials.clone(),
            mat,
        }
    }

    pub fn sum(&self, other: &FormSpace) -> FormSpace {
        assert!(RingSpec::same_ring(&self.ring, &other.ring));
        assert_eq!(self.degree, other.degree);
        let field = *self.ring.field();
        let n = self.monomials.len();
        let mut rows = Vec::new();
        for i in 0..self.mat.nrows {
            rows.push(self.mat.row(i).to_vec());
        }
        for i in 0..other.mat.nrows {
            rows.push(other.mat.row(i).to_vec());
        }
        let mut mat = DenseMatrix::from_rows(field, rows);
        mat.ncols = n;
        let pivots = mat.rref();
        mat.nrows = pivots.len();
        mat.data.truncate(mat.nrows * n);
        FormSpace {
            ring: self.ring.clone(),
            degree: self.degree,
            monomials: self.monomials.clone(),
            mat,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;

    fn ring() -> RingRef {
        RingSpec::projective(PrimeField::default_field(), 2).unwrap()
    }

    #[test]
    fn monomial_count_matches_binomial() {
        let r = ring();
        assert_eq!(monomials_of_degree(&r, 5).len(), 21); // C(7,2)
    }

    #[test]
    fn intersect_and_contains() {
        let r = ring();
        let a = FormSpace::from_polys(
            &r,
            2,
            &[parse_poly(&r, "x_0^2").unwrap(), parse_poly(&r, "x_0*x_1+x_2^2").unwrap()],
        )
        .unwrap();
        let b = FormSpace::from_polys(
            &r,
            2,
            &[parse_poly(&r, "x_0^2+x_0*x_1+x_2^2").unwrap(), parse_poly(&r, "x_1^2").unwrap()],
        )
        .unwrap();
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&parse_poly(&r, "x_0^2+x_0*x_1+x_2^2").unwrap()));
        assert!(!c.contains(&parse_poly(&r, "x_0^2").unwrap()));
    }

    #[test]
    fn canonical_equality() {
        let r = ring();
        let a = FormSpace::from_polys(
            &r,
            1,
            &[parse_poly(&r, "x_0").unwrap(), parse_poly(&r, "x_0+x_1").unwrap()],
        )
        .unwrap();
        let b = FormSpace::from_polys(
            &r,
            1,
            &[parse_poly(&r, "x_1").unwrap(), parse_poly(&r, "3*x_0").unwrap()],
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
