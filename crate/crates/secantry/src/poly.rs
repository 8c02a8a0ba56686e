//! Exact multivariate polynomials over GF(p).
//!
//! Terms are kept sorted descending in grevlex (a fixed structural order,
//! independent of whatever order a Groebner computation is using) with no
//! zero coefficients, so equality and addition are cheap merges.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::{Multidegree, RingRef, RingSpec};
use std::cmp::Ordering;

const CANONICAL: MonomialOrder = MonomialOrder::GrevLex;

#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Fp)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        RingSpec::same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &RingRef, c: Fp) -> Self {
        if c.0 == 0 {
            Polynomial::zero(ring)
        } else {
            Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
        }
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(i, ring.nvars()), ring.field().one())],
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Fp) -> Self {
        if c.0 == 0 {
            Polynomial::zero(ring)
        } else {
            Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
        }
    }

    /// Build from unsorted terms, combining duplicates and dropping zeros.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, Fp)>) -> Self {
        let field = *ring.field();
        terms.sort_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Fp)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = field.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|&(_, c)| c.0 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, Fp)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// The leading term under an arbitrary order (linear scan).
    pub fn lead_term(&self, order: &MonomialOrder) -> Option<(&Monomial, Fp)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, *c))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        debug_assert!(RingSpec::same_ring(&self.ring, &other.ring));
        let field = *self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            let cb = if negate { field.neg(*cb) } else { *cb };
            match CANONICAL.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(*ca, cb);
                    if c.0 != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other.terms[j..] {
            let c = if negate { field.neg(*c) } else { *c };
            out.push((m.clone(), c));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        let field = *self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: Fp) -> Polynomial {
        if c.0 == 0 {
            return Polynomial::zero(&self.ring);
        }
        let field = *self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect(),
        }
    }

    /// Multiply by c * m.  Preserves sortedness (multiplication by a fixed
    /// monomial is order-preserving for multiplicative orders).
    pub fn mul_term(&self, m: &Monomial, c: Fp) -> Polynomial {
        if c.0 == 0 {
            return Polynomial::zero(&self.ring);
        }
        let field = *self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(mm, a)| (mm.mul(m), field.mul(*a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(RingSpec::same_ring(&self.ring, &other.ring));
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = *self.ring.field();
        let (small, big) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add(&big.mul_term(m, *c));
        }
        let _ = field;
        acc
    }

    pub fn make_monic(&self, order: &MonomialOrder) -> Result<Polynomial> {
        match self.lead_term(order) {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = self.ring.field().inv(c)?;
                Ok(self.scale(inv))
            }
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn differentiate(&self, i: usize) -> Polynomial {
        let field = *self.ring.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let coeff = field.mul(*c, field.from_i64(e as i64));
            if coeff.0 == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.set_exp(i, e - 1);
            terms.push((mm, coeff));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Formal antiderivative with respect to variable `i`: c*m maps to
    /// c/(e_i + 1) * m * x_i.  Fails when some e_i + 1 vanishes mod p.
    pub fn integrate(&self, i: usize) -> Result<Polynomial> {
        let field = *self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(i) as u32;
            let denom = field.from_i64((e + 1) as i64);
            if denom.0 == 0 {
                return Err(Error::CharacteristicObstruction {
                    var: self.ring.var_name(i).to_string(),
                    exponent: e,
                    p: field.prime(),
                });
            }
            let coeff = field.mul(*c, field.inv(denom)?);
            let mut mm = m.clone();
            mm.set_exp(i, m.exp(i) + 1);
            terms.push((mm, coeff));
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Exact division by a single polynomial: `Some(q)` with `self = q * f`
    /// when the division leaves no remainder.
    pub fn exact_div(&self, f: &Polynomial) -> Option<Polynomial> {
        if f.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero(&self.ring));
        }
        let order = MonomialOrder::GrevLex;
        let field = *self.ring.field();
        let (flm, flc) = f.lead_term(&order).map(|(m, c)| (m.clone(), c)).unwrap();
        let flc_inv = field.inv(flc).ok()?;
        let mut rem = self.clone();
        let mut quo = Polynomial::zero(&self.ring);
        while let Some((lm, lc)) = rem.lead_term(&order).map(|(m, c)| (m.clone(), c)) {
            let q = lm.try_div(&flm)?;
            let c = field.mul(lc, flc_inv);
            let qt = Polynomial::monomial(&self.ring, q, c);
            quo = quo.add(&qt);
            rem = rem.sub(&f.mul(&qt));
        }
        Some(quo)
    }

    /// Substitute variable `i` by a polynomial.
    pub fn substitute(&self, i: usize, value: &Polynomial) -> Polynomial {
        debug_assert!(RingSpec::same_ring(&self.ring, &value.ring));
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            let mut base = m.clone();
            base.set_exp(i, 0);
            let mut term = Polynomial::monomial(&self.ring, base, *c);
            for _ in 0..e {
                term = term.mul(value);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute every variable simultaneously: x_i maps to images[i].
    pub fn substitute_all(&self, images: &[Polynomial]) -> Polynomial {
        debug_assert_eq!(images.len(), self.ring.nvars());
        let target = images.first().map(|f| f.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, *c);
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn evaluate(&self, point: &[Fp]) -> Fp {
        let field = *self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v = field.mul(v, field.pow(point[i], e as u64));
                }
            }
            acc = field.add(acc, v);
        }
        acc
    }

    /// Multidegree if homogeneous with respect to every grading component.
    pub fn multidegree(&self) -> Option<Multidegree> {
        let first = self.terms.first()?;
        let d = self.ring.multidegree(&first.0);
        for (m, _) in &self.terms[1..] {
            if self.ring.multidegree(m) != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_some()
    }

    /// Move the polynomial into a structurally compatible ring (same
    /// variable count), e.g. the same ring rebuilt with different blocks.
    pub fn with_ring(&self, ring: &RingRef) -> Polynomial {
        debug_assert_eq!(self.ring.nvars(), ring.nvars());
        Polynomial { ring: ring.clone(), terms: self.terms.clone() }
    }

    /// Re-index into a subring; every term must avoid the dropped variables.
    pub fn project(&self, map: &[Option<usize>], target: &RingRef) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.project(map, target.nvars()), *c))
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Inject into a bigger ring: variable i becomes variable map[i].
    pub fn inject(&self, map: &[usize], target: &RingRef) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mm = Monomial::one(target.nvars());
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        mm.set_exp(map[i], e);
                    }
                }
                (mm, *c)
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring3() -> RingRef {
        RingSpec::projective(PrimeField::default_field(), 2).unwrap()
    }

    fn var(r: &RingRef, i: usize) -> Polynomial {
        Polynomial::var(r, i)
    }

    #[test]
    fn derivative_power_rule() {
        let r = ring3();
        let x0 = var(&r, 0);
        let x1 = var(&r, 1);
        let x2 = var(&r, 2);
        // d/dx0 (x0 x2 - x1^2) = x2
        let f = x0.mul(&x2).sub(&x1.mul(&x1));
        assert_eq!(f.differentiate(0), x2);
        // d/dx1 (x0 x2 - x1^2) = -2 x1
        let d1 = f.differentiate(1);
        assert_eq!(d1, x1.scale(r.field().from_i64(-2)));
    }

    #[test]
    fn derivative_vanishes_without_variable() {
        let f4 = RingSpec::projective(PrimeField::default_field(), 3).unwrap();
        let x1 = Polynomial::var(&f4, 1);
        let x2 = Polynomial::var(&f4, 2);
        let x3 = Polynomial::var(&f4, 3);
        let f = x1.mul(&x3).sub(&x2.mul(&x2));
        assert!(f.differentiate(0).is_zero());
    }

    #[test]
    fn integrate_examples() {
        let r = ring3();
        let field = *r.field();
        let one = Polynomial::one(&r);
        let x0 = var(&r, 0);
        // integrate(1, x0) = x0
        assert_eq!(one.integrate(0).unwrap(), x0);
        // integrate(x0, x0) = 16002 x0^2  (1/2 mod 32003)
        let half = field.inv(Fp(2)).unwrap();
        assert_eq!(x0.integrate(0).unwrap(), x0.mul(&x0).scale(half));
        // integrate(x0 x2 - x1^2, x0) = 16002 x0^2 x2 - x0 x1^2
        let x1 = var(&r, 1);
        let x2 = var(&r, 2);
        let f = x0.mul(&x2).sub(&x1.mul(&x1));
        let expected = x0.mul(&x0).mul(&x2).scale(half).sub(&x0.mul(&x1).mul(&x1));
        assert_eq!(f.integrate(0).unwrap(), expected);
    }

    #[test]
    fn integrate_obstruction_near_characteristic() {
        let f = PrimeField::new(5).unwrap();
        let r = RingSpec::projective(f, 1).unwrap();
        let x0 = Polynomial::var(&r, 0);
        let mut p = x0.clone();
        for _ in 0..3 {
            p = p.mul(&x0);
        }
        // x0^4: exponent + 1 = 5 = 0 mod 5
        assert!(p.integrate(0).is_err());
    }

    #[test]
    fn derivative_of_integral_is_identity() {
        let r = ring3();
        let x0 = var(&r, 0);
        let x1 = var(&r, 1);
        let f = x0.mul(&x0).mul(&x1).add(&x1.mul(&x1)).sub(&x0.scale(Fp(7)));
        for i in 0..3 {
            assert_eq!(f.integrate(i).unwrap().differentiate(i), f);
        }
    }

    #[test]
    fn multidegree_additivity() {
        let r = ring3();
        let x0 = var(&r, 0);
        let x1 = var(&r, 1);
        let f = x0.mul(&x1).add(&x1.mul(&x1));
        let g = x0.add(&x1);
        let df = f.multidegree().unwrap();
        let dg = g.multidegree().unwrap();
        let dfg = f.mul(&g).multidegree().unwrap();
        assert_eq!(dfg[0], df[0] + dg[0]);
    }
}
