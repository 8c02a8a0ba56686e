//! Buchberger's algorithm with Gebauer-Moeller pair elimination and the
//! normal selection strategy, plus the `Ideal` wrapper with its per-order
//! cache of reduced bases.
//!
//! For ideals homogeneous in the ring's first grading component the engine
//! can run degree-truncated: processing every S-pair of degree <= d yields a
//! d-Groebner basis, exact for all graded pieces up to degree d.  Truncation
//! demands strictly positive weights so graded pieces stay finite.
//!
//! Internally a polynomial is a `Vec<(Monomial, Fp)>` sorted *ascending*
//! under the active order, so the lead term sits at the end and moving it to
//! the remainder is O(1).

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{RingRef, RingSpec};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Hard resource ceilings.  Exceeding one raises an explicit error rather
/// than silently truncating.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_basis: usize,
    pub max_pairs: usize,
    /// Upper bound on the degree of any S-pair actually processed; `None`
    /// means unbounded.  This is a safety ceiling, not a truncation.
    pub max_degree: Option<u32>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_basis: 100_000, max_pairs: 10_000_000, max_degree: None }
    }
}

type Terms = Vec<(Monomial, Fp)>;

#[derive(Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    /// Monic, fully interreduced, sorted ascending by lead term.
    pub polys: Vec<Polynomial>,
    /// Terms of each element sorted ascending under `order` (lead last).
    ord_polys: Vec<Terms>,
    lead_masks: Vec<u64>,
    pub truncated_at: Option<u32>,
    ring: RingRef,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn lead_terms(&self) -> Vec<&Monomial> {
        self.ord_polys.iter().map(|t| &t.last().unwrap().0).collect()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Full normal form (remainder of division by the basis).
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let work = to_ordered(f, &self.order);
        let field = *self.ring.field();
        let rem = reduce_vs(&field, &self.order, work, |lm, mask| {
            for (k, cand) in self.ord_polys.iter().enumerate() {
                if self.lead_masks[k] & !mask != 0 {
                    continue;
                }
                if let Some(q) = lm.try_div(&cand.last().unwrap().0) {
                    return Some((cand, q));
                }
            }
            None
        });
        Polynomial::from_terms(&self.ring, rem)
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// An ideal: generators plus a cache of reduced Groebner bases keyed by
/// monomial order (and truncation degree).
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    #[allow(clippy::type_complexity)]
    cache: Arc<Mutex<HashMap<(MonomialOrder, Option<u32>), Arc<GroebnerBasis>>>>,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal::new(ring, vec![])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn ensure_homogeneous(&self) -> Result<()> {
        for g in &self.gens {
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneous(crate::parse::poly_to_string(g)));
            }
        }
        Ok(())
    }

    pub fn gb(&self, order: &MonomialOrder, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        self.gb_inner(order, None, budget)
    }

    pub fn gb_default(&self) -> Result<Arc<GroebnerBasis>> {
        self.gb(&MonomialOrder::GrevLex, &Budget::default())
    }

    /// Degree-truncated basis: exact in all degrees <= `limit`.  Requires
    /// generators homogeneous in the first grading component with strictly
    /// positive weights.
    pub fn gb_truncated(
        &self,
        order: &MonomialOrder,
        limit: u32,
        budget: &Budget,
    ) -> Result<Arc<GroebnerBasis>> {
        if self.ring.gradings()[0].iter().any(|&w| w == 0) {
            return Err(Error::Other(
                "degree truncation requires strictly positive weights".into(),
            ));
        }
        self.ensure_homogeneous()?;
        self.gb_inner(order, Some(limit), budget)
    }

    fn gb_inner(
        &self,
        order: &MonomialOrder,
        limit: Option<u32>,
        budget: &Budget,
    ) -> Result<Arc<GroebnerBasis>> {
        let key = (order.clone(), limit);
        if let Some(g) = self.cache.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let gb = Arc::new(buchberger(&self.ring, &self.gens, order, limit, budget)?);
        self.cache.lock().unwrap().insert(key, gb.clone());
        Ok(gb)
    }

    pub fn normal_form(
        &self,
        f: &Polynomial,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<Polynomial> {
        Ok(self.gb(order, budget)?.normal_form(f))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.gb_default()?.reduces_to_zero(f))
    }

    /// Ideal equality via reduced bases under grevlex.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        let a = self.gb_default()?;
        let b = other.gb_default()?;
        Ok(a.polys == b.polys)
    }
}

// ---------------------------------------------------------------------------
// Core algorithm
// ---------------------------------------------------------------------------

/// Sort terms ascending so the lead sits at the end.
fn to_ordered(f: &Polynomial, order: &MonomialOrder) -> Terms {
    let mut terms: Terms = f.terms().to_vec();
    terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
    terms
}

/// work - c * q * g for ascending term lists; the cancelled lead disappears
/// in the Equal branch.  O(|work| + |g|).
fn sub_scaled(
    field: &PrimeField,
    order: &MonomialOrder,
    work: &[(Monomial, Fp)],
    g: &[(Monomial, Fp)],
    q: &Monomial,
    c: Fp,
) -> Terms {
    let mut out = Vec::with_capacity(work.len() + g.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut gm: Option<Monomial> = g.first().map(|(m, _)| m.mul(q));
    while i < work.len() && j < g.len() {
        let gmono = gm.as_ref().unwrap();
        match order.cmp(&work[i].0, gmono) {
            Ordering::Less => {
                out.push(work[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm.take().unwrap(), field.neg(field.mul(g[j].1, c))));
                j += 1;
                gm = g.get(j).map(|(m, _)| m.mul(q));
            }
            Ordering::Equal => {
                let v = field.sub(work[i].1, field.mul(g[j].1, c));
                if v.0 != 0 {
                    out.push((gm.take().unwrap(), v));
                } else {
                    gm = None;
                }
                i += 1;
                j += 1;
                if gm.is_none() {
                    gm = g.get(j).map(|(m, _)| m.mul(q));
                }
            }
        }
    }
    out.extend_from_slice(&work[i..]);
    while j < g.len() {
        out.push((gm.take().unwrap(), field.neg(field.mul(g[j].1, c))));
        j += 1;
        gm = g.get(j).map(|(m, _)| m.mul(q));
    }
    out
}

/// Generic full reduction: repeatedly divide the lead by whatever reducer
/// `find` offers; undivisible leads move to the remainder.
fn reduce_vs<'a, F>(
    field: &PrimeField,
    order: &MonomialOrder,
    mut work: Terms,
    find: F,
) -> Terms
where
    F: Fn(&Monomial, u64) -> Option<(&'a Terms, Monomial)>,
{
    let mut rem: Terms = Vec::new();
    while let Some((lm, lc)) = work.last().cloned() {
        match find(&lm, lm.support_mask()) {
            Some((g, q)) => {
                work = sub_scaled(field, order, &work, g, &q, lc);
            }
            None => {
                rem.push((lm, lc));
                work.pop();
            }
        }
    }
    rem.reverse();
    rem
}

struct Engine<'a> {
    ring: RingRef,
    order: MonomialOrder,
    budget: &'a Budget,
    limit: Option<u32>,
    field: PrimeField,
    /// Basis elements: terms ascending, monic.
    basis: Vec<Terms>,
    masks: Vec<u64>,
    /// Marked when a later element's lead divides this one's.
    redundant: Vec<bool>,
    pairs: Vec<Pair>,
    pairs_done: usize,
    truncated: bool,
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

impl<'a> Engine<'a> {
    fn lead(&self, k: usize) -> &Monomial {
        &self.basis[k].last().unwrap().0
    }

    fn reduce_full(&self, work: Terms) -> Terms {
        reduce_vs(&self.field, &self.order, work, |lm, mask| {
            for k in 0..self.basis.len() {
                if self.redundant[k] || self.masks[k] & !mask != 0 {
                    continue;
                }
                if let Some(q) = lm.try_div(self.lead(k)) {
                    return Some((&self.basis[k], q));
                }
            }
            None
        })
    }

    /// Gebauer-Moeller update with the new element (reduced, monic, ascending).
    fn add_element(&mut self, poly: Terms) -> Result<()> {
        let h = self.basis.len();
        let lt_h = poly.last().unwrap().0.clone();

        struct Cand {
            g: usize,
            lcm: Monomial,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = Vec::new();
        for g in 0..h {
            if self.redundant[g] {
                continue;
            }
            let ltg = self.lead(g);
            cands.push(Cand { g, lcm: lt_h.lcm(ltg), coprime: lt_h.coprime(ltg) });
        }

        // M: drop a candidate whose lcm is a proper multiple of another's.
        let keep_m: Vec<bool> = cands
            .iter()
            .map(|c| !cands.iter().any(|d| d.lcm != c.lcm && d.lcm.divides(&c.lcm)))
            .collect();

        // F: one representative per lcm class; B: a coprime member kills the class.
        let mut kept: Vec<usize> = Vec::new();
        let mut class_coprime: Vec<bool> = Vec::new();
        for (idx, c) in cands.iter().enumerate() {
            if !keep_m[idx] {
                continue;
            }
            match kept.iter().position(|&k| cands[k].lcm == c.lcm) {
                Some(cl) => class_coprime[cl] |= c.coprime,
                None => {
                    kept.push(idx);
                    class_coprime.push(c.coprime);
                }
            }
        }
        let new_pairs: Vec<Pair> = kept
            .iter()
            .zip(&class_coprime)
            .filter(|(_, &cop)| !cop)
            .map(|(&idx, _)| {
                let c = &cands[idx];
                Pair {
                    i: c.g,
                    j: h,
                    degree: self.ring.weighted_degree(&c.lcm),
                    lcm: c.lcm.clone(),
                }
            })
            .collect();

        // Prune old pairs strictly dominated by the new lead.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !lt_h.divides(&p.lcm) {
                return true;
            }
            let l_ih = basis[p.i].last().unwrap().0.lcm(&lt_h);
            let l_jh = basis[p.j].last().unwrap().0.lcm(&lt_h);
            l_ih == p.lcm || l_jh == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..h {
            if !self.redundant[g] && lt_h.divides(self.lead(g)) {
                self.redundant[g] = true;
            }
        }

        self.masks.push(lt_h.support_mask());
        self.redundant.push(false);
        self.basis.push(poly);
        if self.basis.len() > self.budget.max_basis {
            return Err(Error::ResourceExceeded {
                phase: "groebner",
                detail: format!("basis size exceeded {}", self.budget.max_basis),
            });
        }
        Ok(())
    }

    fn spoly(&self, p: &Pair) -> Terms {
        let f = &self.basis[p.i];
        let g = &self.basis[p.j];
        let qf = p.lcm.try_div(&f.last().unwrap().0).unwrap();
        let qg = p.lcm.try_div(&g.last().unwrap().0).unwrap();
        let lifted_f: Terms = f.iter().map(|(m, c)| (m.mul(&qf), *c)).collect();
        sub_scaled(&self.field, &self.order, &lifted_f, g, &qg, self.field.one())
    }

    fn run(&mut self) -> Result<()> {
        while !self.pairs.is_empty() {
            // Normal strategy: minimal lcm degree first.
            let dmin = self.pairs.iter().map(|p| p.degree).min().unwrap();
            if let Some(l) = self.limit {
                if dmin > l {
                    self.truncated = true;
                    break;
                }
            }
            if let Some(maxd) = self.budget.max_degree {
                if dmin > maxd {
                    return Err(Error::ResourceExceeded {
                        phase: "groebner",
                        detail: format!("S-pair degree {dmin} exceeded budget {maxd}"),
                    });
                }
            }
            let mut batch: Vec<Pair> = Vec::new();
            let mut rest: Vec<Pair> = Vec::new();
            for p in self.pairs.drain(..) {
                if p.degree == dmin {
                    batch.push(p);
                } else {
                    rest.push(p);
                }
            }
            self.pairs = rest;
            batch.sort_by(|a, b| {
                self.order.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j))
            });
            for p in batch {
                self.pairs_done += 1;
                if self.pairs_done > self.budget.max_pairs {
                    return Err(Error::ResourceExceeded {
                        phase: "groebner",
                        detail: format!("pair count exceeded {}", self.budget.max_pairs),
                    });
                }
                let s = self.spoly(&p);
                let red = self.reduce_full(s);
                if red.is_empty() {
                    continue;
                }
                let monic = make_monic_terms(&self.field, red)?;
                self.add_element(monic)?;
            }
        }
        Ok(())
    }
}

fn make_monic_terms(field: &PrimeField, mut terms: Terms) -> Result<Terms> {
    let lc = terms.last().unwrap().1;
    let inv = field.inv(lc)?;
    if inv.0 != 1 {
        for t in terms.iter_mut() {
            t.1 = field.mul(t.1, inv);
        }
    }
    Ok(terms)
}

pub fn buchberger(
    ring: &RingRef,
    gens: &[Polynomial],
    order: &MonomialOrder,
    limit: Option<u32>,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    for g in gens {
        if !RingSpec::same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let t0 = std::time::Instant::now();
    let field = *ring.field();
    let mut engine = Engine {
        ring: ring.clone(),
        order: order.clone(),
        budget,
        limit,
        field,
        basis: Vec::new(),
        masks: Vec::new(),
        redundant: Vec::new(),
        pairs: Vec::new(),
        pairs_done: 0,
        truncated: false,
    };

    let mut inputs: Vec<Terms> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| to_ordered(g, order)).collect();
    inputs.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    for input in inputs {
        let red = engine.reduce_full(input);
        if red.is_empty() {
            continue;
        }
        engine.add_element(make_monic_terms(&field, red)?)?;
    }
    engine.run()?;

    // Reduced basis.  Alive elements have pairwise non-divisible leads (a new
    // element is fully reduced, and old leads it divides get marked), so only
    // tails need interreduction.
    let alive: Vec<usize> =
        (0..engine.basis.len()).filter(|&k| !engine.redundant[k]).collect();
    let mut reduced: Vec<Terms> = Vec::with_capacity(alive.len());
    for &k in &alive {
        let rem = reduce_vs(&field, order, engine.basis[k].clone(), |lm, mask| {
            for &l in &alive {
                if l == k || engine.masks[l] & !mask != 0 {
                    continue;
                }
                if let Some(q) = lm.try_div(engine.lead(l)) {
                    return Some((&engine.basis[l], q));
                }
            }
            None
        });
        reduced.push(rem);
    }
    reduced.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));

    log::debug!(
        "groebner: {} gens -> {} reduced elements, {} pairs, {:.3}s",
        gens.len(),
        reduced.len(),
        engine.pairs_done,
        t0.elapsed().as_secs_f64()
    );

    let lead_masks = reduced.iter().map(|t| t.last().unwrap().0.support_mask()).collect();
    let polys =
        reduced.iter().map(|t| Polynomial::from_terms(ring, t.clone())).collect();
    Ok(GroebnerBasis {
        order: order.clone(),
        polys,
        ord_polys: reduced,
        lead_masks,
        truncated_at: if engine.truncated || limit.is_some() { limit } else { None },
        ring: ring.clone(),
    })
}

/// Independent certificate used by tests: every S-polynomial of the claimed
/// basis must reduce to zero against it.
pub fn all_spairs_reduce_to_zero(gb: &GroebnerBasis) -> bool {
    let n = gb.polys.len();
    let one = gb.ring.field().one();
    for i in 0..n {
        for j in i + 1..n {
            let fi = &gb.ord_polys[i];
            let fj = &gb.ord_polys[j];
            let lcm = fi.last().unwrap().0.lcm(&fj.last().unwrap().0);
            let qi = lcm.try_div(&fi.last().unwrap().0).unwrap();
            let qj = lcm.try_div(&fj.last().unwrap().0).unwrap();
            let pi = gb.polys[i].mul_term(&qi, one);
            let pj = gb.polys[j].mul_term(&qj, one);
            if !gb.reduces_to_zero(&pi.sub(&pj)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;

    fn ring(n: usize) -> RingRef {
        RingSpec::projective(PrimeField::default_field(), n - 1).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    #[test]
    fn linear_reduction() {
        let r = ring(2);
        let i = ideal(&r, &["x_0", "x_0+x_1"]);
        let gb = i.gb_default().unwrap();
        let strs: Vec<String> =
            gb.polys.iter().map(|p| crate::parse::poly_to_string(p)).collect();
        assert_eq!(strs, vec!["x_1", "x_0"]);
    }

    #[test]
    fn monomial_plus_variable_is_its_own_basis() {
        let r = ring(3);
        let i = ideal(&r, &["x_0*x_1", "x_2"]);
        let gb = i.gb_default().unwrap();
        let strs: Vec<String> =
            gb.polys.iter().map(|p| crate::parse::poly_to_string(p)).collect();
        assert_eq!(strs, vec!["x_2", "x_0*x_1"]);
    }

    #[test]
    fn twisted_cubic_quadrics_are_a_basis() {
        let r = ring(4);
        let i = ideal(&r, &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]);
        let gb = i.gb_default().unwrap();
        assert_eq!(gb.len(), 3);
        assert!(all_spairs_reduce_to_zero(&gb));
        for g in i.generators() {
            assert!(gb.reduces_to_zero(g));
        }
    }

    #[test]
    fn normal_form_of_member_and_unit() {
        let r = ring(3);
        let g = parse_poly(&r, "x_0^2*x_1-x_2^3").unwrap();
        let i = Ideal::new(&r, vec![g.clone()]);
        assert!(i.contains(&g).unwrap());
        let one = Polynomial::one(&r);
        let nf = i.normal_form(&one, &MonomialOrder::GrevLex, &Budget::default()).unwrap();
        assert_eq!(nf, one);
    }

    #[test]
    fn gb_recomputation_is_idempotent() {
        let r = ring(4);
        let i = ideal(&r, &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2", "x_0^2"]);
        let gb1 = i.gb_default().unwrap();
        let j = Ideal::new(&r, gb1.polys.clone());
        let gb2 = j.gb_default().unwrap();
        assert_eq!(gb1.polys, gb2.polys);
    }

    #[test]
    fn budget_error_is_explicit() {
        let r = ring(4);
        let i = ideal(&r, &["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]);
        let tight = Budget { max_basis: 1, ..Budget::default() };
        match i.gb(&MonomialOrder::Lex, &tight) {
            Err(Error::ResourceExceeded { .. }) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn lex_elimination_by_hand() {
        // <x - y, x - z> eliminating x leaves <y - z>.
        let f = PrimeField::default_field();
        let r = crate::ring::RingSpec::new(
            f,
            vec![
                crate::ring::Block { name: "x".into(), vars: vec!["x".into()] },
                crate::ring::Block { name: "y".into(), vars: vec!["y".into(), "z".into()] },
            ],
            vec![],
        )
        .unwrap();
        let i = ideal(&r, &["x-y", "x-z"]);
        let gb = i.gb(&MonomialOrder::elim(vec![0]), &Budget::default()).unwrap();
        let pure: Vec<String> = gb
            .polys
            .iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exp(0) == 0))
            .map(|p| crate::parse::poly_to_string(p))
            .collect();
        assert_eq!(pure, vec!["y-z"]);
    }
}
