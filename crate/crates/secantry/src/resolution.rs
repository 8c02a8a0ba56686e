//! Free resolutions by iterated syzygy computation over free modules.
//!
//! This is the slow, independent cross-check for the Koszul-rank tables:
//! build any graded free resolution with module Groebner bases (syzygies via
//! the elimination-block trick), then read Betti numbers off the scalar
//! parts of the differentials, which computes Tor without needing the
//! resolution to be minimal.

use crate::error::Result;
use crate::field::{Fp, PrimeField};
use crate::groebner::{Budget, Ideal};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::RingRef;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// One term of a free-module element: (component, monomial, coefficient).
type MTerm = (u32, Monomial, Fp);

/// Terms sorted ascending under the module order, lead last.
#[derive(Debug, Clone)]
struct ModPoly {
    terms: Vec<MTerm>,
}

/// Position-over-term: lower component index wins, grevlex breaks ties.
/// With original-module components first, their block is what a Groebner
/// basis eliminates.
fn mcmp(a: &(u32, Monomial), b: &(u32, Monomial)) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => MonomialOrder::GrevLex.cmp(&a.1, &b.1),
    }
}

impl ModPoly {
    fn lead(&self) -> &MTerm {
        self.terms.last().unwrap()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(mut terms: Vec<MTerm>, field: &PrimeField) -> ModPoly {
        terms.sort_by(|x, y| mcmp(&(x.0, x.1.clone()), &(y.0, y.1.clone())));
        let mut out: Vec<MTerm> = Vec::with_capacity(terms.len());
        for (c, m, v) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == c && last.1 == m {
                    last.2 = field.add(last.2, v);
                    continue;
                }
            }
            out.push((c, m, v));
        }
        out.retain(|t| t.2 .0 != 0);
        ModPoly { terms: out }
    }

    /// self - coeff * mono * other (sorted merge).
    fn sub_scaled(&self, other: &ModPoly, mono: &Monomial, coeff: Fp, field: &PrimeField) -> ModPoly {
        let mut out: Vec<MTerm> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.terms.len() && j < other.terms.len() {
            let (oc, om, ov) = &other.terms[j];
            let shifted = om.mul(mono);
            match mcmp(&(self.terms[i].0, self.terms[i].1.clone()), &(*oc, shifted.clone())) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*oc, shifted, field.neg(field.mul(*ov, coeff))));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.sub(self.terms[i].2, field.mul(*ov, coeff));
                    if v.0 != 0 {
                        out.push((*oc, shifted, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while j < other.terms.len() {
            let (oc, om, ov) = &other.terms[j];
            out.push((*oc, om.mul(mono), field.neg(field.mul(*ov, coeff))));
            j += 1;
        }
        ModPoly { terms: out }
    }
}

struct ModEngine {
    field: PrimeField,
    basis: Vec<ModPoly>,
}

impl ModEngine {
    fn reduce(&self, mut work: ModPoly) -> ModPoly {
        let mut rem: Vec<MTerm> = Vec::new();
        'outer: while let Some((c, m, v)) = work.terms.last().cloned() {
            for g in &self.basis {
                let (gc, gm, gv) = g.lead();
                if *gc == c {
                    if let Some(q) = m.try_div(gm) {
                        let factor = self.field.div(v, *gv).unwrap();
                        work = work.sub_scaled(g, &q, factor, &self.field);
                        continue 'outer;
                    }
                }
            }
            rem.push((c, m, v));
            work.terms.pop();
        }
        rem.reverse();
        ModPoly { terms: rem }
    }

    /// Straight Buchberger for submodules of a free module; pairs exist only
    /// between elements with equal lead component.
    fn run(&mut self, degree_of: &dyn Fn(&MTerm) -> u32) {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..self.basis.len() {
            for j in 0..i {
                if self.basis[i].lead().0 == self.basis[j].lead().0 {
                    pairs.push((j, i));
                }
            }
        }
        while !pairs.is_empty() {
            // Lowest S-pair degree first keeps things graded.
            let deg = |p: &(usize, usize)| {
                let (a, b) = (&self.basis[p.0], &self.basis[p.1]);
                let (c, ma, _) = a.lead();
                let (_, mb, _) = b.lead();
                let lcm = ma.lcm(mb);
                degree_of(&(*c, lcm, Fp(1)))
            };
            let min_deg = pairs.iter().map(|p| deg(p)).min().unwrap();
            let mut batch = Vec::new();
            let mut rest = Vec::new();
            for p in pairs.drain(..) {
                if deg(&p) == min_deg {
                    batch.push(p);
                } else {
                    rest.push(p);
                }
            }
            pairs = rest;
            batch.sort();
            for (i, j) in batch {
                let (fi, fj) = (&self.basis[i], &self.basis[j]);
                let (_, mi, vi) = fi.lead();
                let (_, mj, vj) = fj.lead();
                let lcm = mi.lcm(mj);
                let qi = lcm.try_div(mi).unwrap();
                let qj = lcm.try_div(mj).unwrap();
                let lifted: Vec<MTerm> = fi
                    .terms
                    .iter()
                    .map(|(c, m, v)| (*c, m.mul(&qi), self.field.div(*v, *vi).unwrap()))
                    .collect();
                let lifted = ModPoly { terms: lifted };
                let spoly = lifted.sub_scaled(fj, &qj, self.field.inv(*vj).unwrap(), &self.field);
                let red = self.reduce(spoly);
                if red.is_zero() {
                    continue;
                }
                let new_idx = self.basis.len();
                for k in 0..new_idx {
                    if self.basis[k].lead().0 == red.lead().0 {
                        pairs.push((k, new_idx));
                    }
                }
                self.basis.push(red);
            }
        }
    }
}

/// One stage of a graded free resolution: the target shifts and the matrix
/// columns expressed over them.
#[derive(Debug, Clone)]
pub struct ResolutionStage {
    /// Degree shift of each generator of F_i.
    pub shifts: Vec<u32>,
    /// Columns of d_i: for each generator of F_i, its image as
    /// (row index in F_{i-1}, polynomial coefficient).
    pub columns: Vec<Vec<(usize, Polynomial)>>,
}

/// A graded free resolution of S/I out to homological degree `imax`
/// (not necessarily minimal).
pub struct FreeResolution {
    pub ring: RingRef,
    /// stages[0] describes d_1: F_1 -> F_0 = S.
    pub stages: Vec<ResolutionStage>,
    /// True when the syzygy chain ran out by itself; otherwise the last
    /// stage was cut by `imax` and its homology is not rigorous.
    pub terminated: bool,
}

pub fn free_resolution(ideal: &Ideal, imax: usize, budget: &Budget) -> Result<FreeResolution> {
    let ring = ideal.ring().clone();
    let field = *ring.field();
    // Start from a Groebner basis so lead-term structure is decent.
    let gb = ideal.gb(&MonomialOrder::GrevLex, budget)?;
    let mut stages: Vec<ResolutionStage> = Vec::new();

    // Current presentation: elements of F_{i-1} = S^{r} with shifts.
    let mut current: Vec<Vec<(usize, Polynomial)>> = gb
        .polys
        .iter()
        .map(|p| vec![(0usize, p.clone())])
        .collect();
    let mut current_shifts: Vec<u32> =
        gb.polys.iter().map(|p| p.total_degree().unwrap()).collect();
    let mut ambient_shifts: Vec<u32> = vec![0];

    let mut terminated = false;
    for _ in 0..imax {
        if current.is_empty() {
            terminated = true;
            break;
        }
        stages.push(ResolutionStage {
            shifts: current_shifts.clone(),
            columns: current.clone(),
        });
        // Syzygies of `current` as elements of S^{r + s}.
        let r = ambient_shifts.len() as u32;
        let mut engine = ModEngine { field, basis: Vec::new() };
        let mut seeds: Vec<ModPoly> = Vec::new();
        for (l, w) in current.iter().enumerate() {
            let mut terms: Vec<MTerm> = Vec::new();
            for (row, poly) in w {
                for (m, c) in poly.terms() {
                    terms.push((*row as u32, m.clone(), *c));
                }
            }
            terms.push((r + l as u32, Monomial::one(ring.nvars()), field.one()));
            seeds.push(ModPoly::normalize(terms, &field));
        }
        // Seed the engine with mutual reductions for stability.
        for s in seeds {
            let red = engine.reduce(s);
            if !red.is_zero() {
                engine.basis.push(red);
            }
        }
        let shifts_all: Vec<u32> = ambient_shifts
            .iter()
            .cloned()
            .chain(current_shifts.iter().cloned())
            .collect();
        let degree_of = move |t: &MTerm| t.1.total_degree() + shifts_all[t.0 as usize];
        engine.run(&degree_of);

        // Harvest: elements supported purely on the tag block.
        let mut syz_cols: Vec<Vec<(usize, Polynomial)>> = Vec::new();
        let mut syz_shifts: Vec<u32> = Vec::new();
        for g in &engine.basis {
            if g.terms.iter().any(|(c, _, _)| *c < r) {
                continue;
            }
            let mut per_comp: BTreeMap<usize, Vec<(Monomial, Fp)>> = BTreeMap::new();
            for (c, m, v) in &g.terms {
                per_comp.entry((*c - r) as usize).or_default().push((m.clone(), *v));
            }
            let col: Vec<(usize, Polynomial)> = per_comp
                .into_iter()
                .map(|(row, terms)| (row, Polynomial::from_terms(&ring, terms)))
                .collect();
            let shift = col
                .iter()
                .map(|(row, p)| p.total_degree().unwrap() + current_shifts[*row])
                .max()
                .unwrap();
            syz_cols.push(col);
            syz_shifts.push(shift);
        }
        ambient_shifts = current_shifts;
        current = syz_cols;
        current_shifts = syz_shifts;
    }
    terminated |= current.is_empty();
    Ok(FreeResolution { ring, stages, terminated })
}

/// Betti numbers from the resolution: homology of the complex after
/// killing every positive-degree entry (Tor against the residue field).
pub fn betti_from_resolution(res: &FreeResolution) -> BTreeMap<(u32, u32), u64> {
    let field = *res.ring.field();
    // Scalar part of d_i as a dense map keyed by internal degree j.
    // (F_i tensor k)_j has basis the generators with shift exactly j.
    let mut out: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    out.insert((0, 0), 1);

    let shifts_of = |i: usize| -> Vec<u32> {
        if i == 0 {
            vec![0]
        } else {
            res.stages[i - 1].shifts.clone()
        }
    };
    let scalar_entries = |i: usize| -> Vec<(usize, usize, Fp)> {
        // d_i columns live in stage i-1.
        let stage = &res.stages[i - 1];
        let row_shifts = shifts_of(i - 1);
        let mut entries = Vec::new();
        for (col, image) in stage.columns.iter().enumerate() {
            for (row, poly) in image {
                if stage.shifts[col] == row_shifts[*row] {
                    // Degree-zero entry: a scalar.
                    if let Some((m, c)) = poly.terms().first() {
                        if m.is_one() {
                            entries.push((*row, col, *c));
                        }
                    }
                }
            }
        }
        entries
    };

    let nstages = res.stages.len();
    let rigorous_max = if res.terminated { nstages } else { nstages.saturating_sub(1) };
    for i in 1..=rigorous_max {
        let shifts_i = shifts_of(i);
        let shifts_prev = shifts_of(i - 1);
        let entries_i = scalar_entries(i);
        let entries_next = if i < nstages { scalar_entries(i + 1) } else { Vec::new() };
        let shifts_next = if i < nstages { shifts_of(i + 1) } else { Vec::new() };
        let degrees: std::collections::BTreeSet<u32> = shifts_i.iter().cloned().collect();
        for &j in &degrees {
            let dom: Vec<usize> =
                (0..shifts_i.len()).filter(|&c| shifts_i[c] == j).collect();
            if dom.is_empty() {
                continue;
            }
            // rank of d_i restricted to degree j
            let rank_i = scalar_rank(&field, &entries_i, &shifts_prev, &shifts_i, j, &dom);
            // rank of d_{i+1} into degree j
            let dom_next: Vec<usize> =
                (0..shifts_next.len()).filter(|&c| shifts_next[c] == j).collect();
            let rank_next = if dom_next.is_empty() {
                0
            } else {
                scalar_rank(&field, &entries_next, &shifts_i, &shifts_next, j, &dom_next)
            };
            let beta = dom.len() as i64 - rank_i as i64 - rank_next as i64;
            debug_assert!(beta >= 0);
            if beta > 0 {
                out.insert((i as u32, j), beta as u64);
            }
        }
    }
    out
}

fn scalar_rank(
    field: &PrimeField,
    entries: &[(usize, usize, Fp)],
    row_shifts: &[u32],
    col_shifts: &[u32],
    j: u32,
    dom: &[usize],
) -> usize {
    let rows: Vec<usize> =
        (0..row_shifts.len()).filter(|&r| row_shifts[r] == j).collect();
    if rows.is_empty() || dom.is_empty() {
        return 0;
    }
    let rindex: std::collections::HashMap<usize, usize> =
        rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let cindex: std::collections::HashMap<usize, usize> =
        dom.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut mat = crate::matrix::DenseMatrix::zeros(*field, rows.len(), dom.len());
    for &(r, c, v) in entries {
        if col_shifts[c] == j {
            if let (Some(&ri), Some(&ci)) = (rindex.get(&r), cindex.get(&c)) {
                mat.set(ri, ci, v.0);
            }
        }
    }
    mat.rank()
}

/// Convenience: Betti table of S/I by iterated syzygies.
pub fn betti_by_syzygies(ideal: &Ideal, budget: &Budget) -> Result<BTreeMap<(u32, u32), u64>> {
    let imax = ideal.ring().nvars() + 2;
    let res = free_resolution(ideal, imax, budget)?;
    Ok(betti_from_resolution(&res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;
    use crate::ring::RingSpec;

    #[test]
    fn koszul_two_variables_by_syzygies() {
        let r = RingSpec::projective(PrimeField::default_field(), 1).unwrap();
        let i = Ideal::new(
            &r,
            vec![parse_poly(&r, "x_0").unwrap(), parse_poly(&r, "x_1").unwrap()],
        );
        let table = betti_by_syzygies(&i, &Budget::default()).unwrap();
        let expect: BTreeMap<(u32, u32), u64> =
            [((0, 0), 1), ((1, 1), 2), ((2, 2), 1)].into_iter().collect();
        assert_eq!(table, expect);
    }

    #[test]
    fn twisted_cubic_by_syzygies() {
        let r = RingSpec::projective(PrimeField::default_field(), 3).unwrap();
        let gens = ["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        let i = Ideal::new(&r, gens);
        let table = betti_by_syzygies(&i, &Budget::default()).unwrap();
        let expect: BTreeMap<(u32, u32), u64> =
            [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)].into_iter().collect();
        assert_eq!(table, expect);
    }
}
