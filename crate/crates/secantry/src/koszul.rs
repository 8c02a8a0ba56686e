//! Graded Betti numbers via Koszul homology: beta_{i,j}(S/I) is the
//! homology dimension of the strand
//!     Wedge^{i+1} V (x) M_{j-i-1} -> Wedge^i V (x) M_{j-i} -> Wedge^{i-1} V (x) M_{j-i+1}
//! with M = S/I, so each entry costs two sparse ranks over GF(p).

use crate::error::Result;
use crate::field::Fp;
use crate::formspace::monomials_of_degree;
use crate::groebner::{Budget, GroebnerBasis, Ideal};
use crate::hilbert::binomial;
use crate::monomial::Monomial;
use crate::sparse::SparseMat;
use crate::ring::RingRef;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Standard-monomial data of one graded piece of S/I.
pub struct StdBasis {
    pub mons: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

/// Multiplication by each variable from degree d to d+1, expressed in the
/// standard monomial bases: columns of sparse vectors.
pub struct MultMap {
    /// per variable, per source monomial: sorted (target index, coeff).
    pub cols: Vec<Vec<Vec<(u32, u32)>>>,
}

pub struct QuotientRing {
    pub ring: RingRef,
    pub gb: Arc<GroebnerBasis>,
    leads: Vec<Monomial>,
    bases: Vec<Arc<StdBasis>>,
    mults: Vec<Arc<MultMap>>,
}

impl QuotientRing {
    pub fn new(ideal: &Ideal, budget: &Budget) -> Result<Self> {
        let gb = ideal.gb(&crate::order::MonomialOrder::GrevLex, budget)?;
        let leads: Vec<Monomial> = gb.lead_terms().into_iter().cloned().collect();
        Ok(QuotientRing { ring: ideal.ring().clone(), gb, leads, bases: Vec::new(), mults: Vec::new() })
    }

    /// Build standard bases and multiplication maps for degrees 0..=dmax.
    pub fn prepare(&mut self, dmax: u32) {
        let t0 = std::time::Instant::now();
        while self.bases.len() <= dmax as usize {
            let d = self.bases.len() as u32;
            let mons: Vec<Monomial> = monomials_of_degree(&self.ring, d)
                .into_iter()
                .filter(|m| !self.leads.iter().any(|l| l.divides(m)))
                .collect();
            let index = mons.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            self.bases.push(Arc::new(StdBasis { mons, index }));
        }
        while self.mults.len() < dmax as usize {
            let d = self.mults.len();
            let src = self.bases[d].clone();
            let dst = self.bases[d + 1].clone();
            let n = self.ring.nvars();
            let gb = &self.gb;
            let cols: Vec<Vec<Vec<(u32, u32)>>> = (0..n)
                .map(|v| {
                    src.mons
                        .par_iter()
                        .map(|m| {
                            let prod = m.mul(&Monomial::var(v, n));
                            if let Some(&ix) = dst.index.get(&prod) {
                                return vec![(ix as u32, 1u32)];
                            }
                            let poly = crate::poly::Polynomial::monomial(
                                &self.ring,
                                prod,
                                self.ring.field().one(),
                            );
                            let nf = gb.normal_form(&poly);
                            let mut out: Vec<(u32, u32)> = nf
                                .terms()
                                .iter()
                                .map(|(mm, c)| (dst.index[mm] as u32, c.0))
                                .collect();
                            out.sort_unstable_by_key(|&(i, _)| i);
                            out
                        })
                        .collect()
                })
                .collect();
            self.mults.push(Arc::new(MultMap { cols }));
        }
        log::debug!("quotient bases ready to degree {dmax} in {:.3}s", t0.elapsed().as_secs_f64());
    }

    pub fn std_dim(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.bases.get(d as usize).map_or(0, |b| b.mons.len())
        }
    }

    pub fn hilbert_value(&self, d: i64) -> u64 {
        self.std_dim(d) as u64
    }
}

/// Lexicographically ordered size-k subsets of 0..n, with a rank lookup.
pub struct WedgeBasis {
    pub sets: Vec<Vec<u8>>,
    pub rank: HashMap<Vec<u8>, u32>,
}

pub fn wedge_basis(n: usize, k: usize) -> WedgeBasis {
    let mut sets = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    gen_subsets(n as u8, k, 0, &mut cur, &mut sets);
    let rank = sets.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
    WedgeBasis { sets, rank }
}

fn gen_subsets(n: u8, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let needed = k - cur.len();
    for v in start..=(n - needed as u8) {
        cur.push(v);
        gen_subsets(n, k, v + 1, cur, out);
        cur.pop();
    }
}

/// The Koszul differential Wedge^a (x) M_{b-a} -> Wedge^{a-1} (x) M_{b-a+1}
/// at internal degree b, as a sparse matrix (one row per domain basis
/// element; rank is orientation-free).
pub fn strand_matrix(q: &QuotientRing, a: u32, b: u32) -> Option<SparseMat> {
    let n = q.ring.nvars();
    if a == 0 || a as usize > n {
        return None;
    }
    let src_deg = b as i64 - a as i64;
    if src_deg < 0 || q.std_dim(src_deg) == 0 {
        return None;
    }
    let m_src = q.std_dim(src_deg);
    let m_dst = q.std_dim(src_deg + 1);
    let w_hi = wedge_basis(n, a as usize);
    let w_lo = wedge_basis(n, a as usize - 1);
    let mult = &q.mults[src_deg as usize];

    let rows: Vec<Vec<(u32, u32)>> = w_hi
        .sets
        .par_iter()
        .flat_map_iter(|set| {
            let mut lo_ranks: Vec<(u32, usize)> = Vec::with_capacity(set.len());
            for (pos, &v) in set.iter().enumerate() {
                let mut sub = set.clone();
                sub.remove(pos);
                lo_ranks.push((w_lo.rank[&sub], v as usize));
            }
            (0..m_src).map(move |mi| {
                let mut row: Vec<(u32, u32)> = Vec::new();
                for (pos, &(lo_rank, v)) in lo_ranks.iter().enumerate() {
                    let sign_neg = pos % 2 == 1;
                    let base = lo_rank as usize * m_dst;
                    for &(ti, c) in &mult.cols[v][mi] {
                        let val = if sign_neg {
                            q.ring.field().neg(Fp(c)).0
                        } else {
                            c
                        };
                        row.push(((base + ti as usize) as u32, val));
                    }
                }
                row.sort_unstable_by_key(|&(c, _)| c);
                row
            })
        })
        .collect();
    let ncols = w_lo.sets.len() * m_dst;
    Some(SparseMat::new(*q.ring.field(), ncols.max(1), rows))
}

/// Rank of the strand differential (d_a at internal degree b).
pub fn strand_rank(q: &QuotientRing, a: u32, b: u32) -> usize {
    match strand_matrix(q, a, b) {
        None => 0,
        Some(m) => m.rank(),
    }
}

/// Compute beta_{i,j} for i in 0..=col_bound and j-i in 0..=row_bound.
/// Ranks are shared between neighboring entries through a cache and
/// computed in parallel.
pub fn betti_window(
    q: &mut QuotientRing,
    row_bound: u32,
    col_bound: u32,
) -> BTreeMap<(u32, u32), u64> {
    let n = q.ring.nvars() as u32;
    let col_bound = col_bound.min(n);
    q.prepare(row_bound + 1);

    // Distinct rank keys needed: (a, b) with a in i..=i+1 windows.
    let mut keys: Vec<(u32, u32)> = Vec::new();
    for i in 0..=col_bound {
        for r in 0..=row_bound {
            let j = i + r;
            for (a, b) in [(i, j), (i + 1, j)] {
                if a == 0 || a > n {
                    continue;
                }
                let src = b as i64 - a as i64;
                if src < 0 || q.std_dim(src) == 0 {
                    continue;
                }
                if !keys.contains(&(a, b)) {
                    keys.push((a, b));
                }
            }
        }
    }
    // Build matrices serially (cheap), rank them in parallel (expensive).
    let jobs: Vec<((u32, u32), Option<SparseMat>)> =
        keys.into_iter().map(|(a, b)| ((a, b), strand_matrix(q, a, b))).collect();
    let ranks: BTreeMap<(u32, u32), usize> = jobs
        .into_par_iter()
        .map(|((a, b), m)| ((a, b), m.map_or(0, |m| m.rank())))
        .collect();

    let rank_of = |a: u32, b: u32| -> i64 {
        if a == 0 || a > n {
            return 0;
        }
        *ranks.get(&(a, b)).unwrap_or(&0) as i64
    };
    let mut out = BTreeMap::new();
    for i in 0..=col_bound {
        for r in 0..=row_bound {
            let j = i + r;
            let dom = binomial(n as u64, i as u64) as i64 * q.std_dim(j as i64 - i as i64) as i64;
            let beta = dom - rank_of(i, j) - rank_of(i + 1, j);
            debug_assert!(beta >= 0);
            if beta > 0 {
                out.insert((i, j), beta as u64);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;
    use crate::ring::RingSpec;

    #[test]
    fn koszul_complex_of_two_variables() {
        let r = RingSpec::projective(PrimeField::default_field(), 1).unwrap();
        let i = Ideal::new(
            &r,
            vec![parse_poly(&r, "x_0").unwrap(), parse_poly(&r, "x_1").unwrap()],
        );
        let mut q = QuotientRing::new(&i, &Budget::default()).unwrap();
        let table = betti_window(&mut q, 1, 2);
        let expect: BTreeMap<(u32, u32), u64> =
            [((0, 0), 1), ((1, 1), 2), ((2, 2), 1)].into_iter().collect();
        assert_eq!(table, expect);
    }

    #[test]
    fn twisted_cubic_betti() {
        let r = RingSpec::projective(PrimeField::default_field(), 3).unwrap();
        let gens = ["x_0*x_2-x_1^2", "x_0*x_3-x_1*x_2", "x_1*x_3-x_2^2"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        let i = Ideal::new(&r, gens);
        let mut q = QuotientRing::new(&i, &Budget::default()).unwrap();
        let table = betti_window(&mut q, 2, 4);
        let expect: BTreeMap<(u32, u32), u64> =
            [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)].into_iter().collect();
        assert_eq!(table, expect);
    }
}
