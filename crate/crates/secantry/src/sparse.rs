//! Sparse rank over GF(p): singleton pivots first (they cause no fill),
//! then Markowitz-flavored elimination, finishing dense once the active
//! block is small or has filled in.

use crate::field::{Fp, PrimeField};
use crate::matrix::DenseMatrix;

pub struct SparseMat {
    pub field: PrimeField,
    pub ncols: usize,
    /// Rows as sorted (col, value) lists; empty rows are allowed.
    pub rows: Vec<Vec<(u32, u32)>>,
}

/// Active-size threshold below which we hand the rest to dense elimination.
const DENSE_CUTOFF: usize = 1800;
/// Fill ratio (nnz / active cells) above which dense is faster anyway.
const DENSE_FILL: f64 = 0.06;

impl SparseMat {
    pub fn new(field: PrimeField, ncols: usize, rows: Vec<Vec<(u32, u32)>>) -> Self {
        for r in &rows {
            debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(r.iter().all(|&(c, v)| (c as usize) < ncols && v != 0));
        }
        SparseMat { field, ncols, rows }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn rank(self) -> usize {
        rank_impl(self)
    }
}

struct Eliminator {
    field: PrimeField,
    rows: Vec<Vec<(u32, u32)>>,
    alive_row: Vec<bool>,
    col_count: Vec<u32>,
    /// Which rows touch a column; lazily maintained (may hold stale ids).
    col_rows: Vec<Vec<u32>>,
    active_rows: usize,
    rank: usize,
}

impl Eliminator {
    fn new(m: SparseMat) -> Self {
        let mut col_count = vec![0u32; m.ncols];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.ncols];
        for (ri, row) in m.rows.iter().enumerate() {
            for &(c, _) in row {
                col_count[c as usize] += 1;
                col_rows[c as usize].push(ri as u32);
            }
        }
        let alive_row: Vec<bool> = m.rows.iter().map(|r| !r.is_empty()).collect();
        let active_rows = alive_row.iter().filter(|&&a| a).count();
        Eliminator {
            field: m.field,
            rows: m.rows,
            alive_row,
            col_count,
            col_rows,
            active_rows,
            rank: 0,
        }
    }

    fn row_has(&self, ri: usize, c: u32) -> Option<usize> {
        self.rows[ri].binary_search_by_key(&c, |&(cc, _)| cc).ok()
    }

    fn retire_row(&mut self, ri: usize) {
        if !self.alive_row[ri] {
            return;
        }
        self.alive_row[ri] = false;
        self.active_rows -= 1;
        for &(c, _) in &self.rows[ri] {
            self.col_count[c as usize] -= 1;
        }
        self.rows[ri] = Vec::new();
    }

    /// rows[dst] += lambda * rows[src]; maintains col counts and col_rows.
    fn add_multiple(&mut self, dst: usize, src: usize, lambda: Fp) {
        let field = self.field;
        let src_row = std::mem::take(&mut self.rows[src]);
        let dst_row = std::mem::take(&mut self.rows[dst]);
        let mut out = Vec::with_capacity(dst_row.len() + src_row.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < dst_row.len() && j < src_row.len() {
            match dst_row[i].0.cmp(&src_row[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(dst_row[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = src_row[j].0;
                    let v = field.mul(Fp(src_row[j].1), lambda);
                    if v.0 != 0 {
                        out.push((c, v.0));
                        self.col_count[c as usize] += 1;
                        self.col_rows[c as usize].push(dst as u32);
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = field.add(Fp(dst_row[i].1), field.mul(Fp(src_row[j].1), lambda));
                    if v.0 != 0 {
                        out.push((dst_row[i].0, v.0));
                    } else {
                        self.col_count[dst_row[i].0 as usize] -= 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&dst_row[i..]);
        for &(c, v) in &src_row[j..] {
            let v = field.mul(Fp(v), lambda);
            if v.0 != 0 {
                out.push((c, v.0));
                self.col_count[c as usize] += 1;
                self.col_rows[c as usize].push(dst as u32);
            }
        }
        self.rows[src] = src_row;
        self.rows[dst] = out;
        if self.rows[dst].is_empty() && self.alive_row[dst] {
            self.alive_row[dst] = false;
            self.active_rows -= 1;
        }
    }

    /// Eliminate with pivot (ri, c): clear column c from every other row.
    fn pivot(&mut self, ri: usize, c: u32) {
        let pv = self.rows[ri][self.row_has(ri, c).unwrap()].1;
        let pinv = self.field.inv(Fp(pv)).unwrap();
        let holders = std::mem::take(&mut self.col_rows[c as usize]);
        for &other in &holders {
            let other = other as usize;
            if other == ri || !self.alive_row[other] {
                continue;
            }
            let Some(pos) = self.row_has(other, c) else { continue };
            let coeff = self.rows[other][pos].1;
            let lambda = self.field.neg(self.field.mul(Fp(coeff), pinv));
            self.add_multiple(other, ri, lambda);
        }
        self.rank += 1;
        self.retire_row(ri);
        self.col_count[c as usize] = 0;
    }

    /// Repeatedly take pivots that cannot create fill: rows with a single
    /// entry, and columns with a single holder.
    fn singleton_pass(&mut self) {
        loop {
            let mut acted = false;
            for ri in 0..self.rows.len() {
                if self.alive_row[ri] && self.rows[ri].len() == 1 {
                    let c = self.rows[ri][0].0;
                    self.pivot(ri, c);
                    acted = true;
                }
            }
            for c in 0..self.col_count.len() {
                if self.col_count[c] != 1 {
                    continue;
                }
                let holders = std::mem::take(&mut self.col_rows[c]);
                let mut owner: Option<usize> = None;
                for &r in &holders {
                    let r = r as usize;
                    if self.alive_row[r] && self.row_has(r, c as u32).is_some() {
                        owner = Some(r);
                        break;
                    }
                }
                self.col_rows[c] = holders;
                if let Some(r) = owner {
                    // Sole holder: pivoting here fills nothing.
                    self.rank += 1;
                    self.retire_row(r);
                    self.col_count[c] = 0;
                    acted = true;
                }
            }
            if !acted {
                return;
            }
        }
    }

    fn active_cols(&self) -> usize {
        self.col_count.iter().filter(|&&c| c > 0).count()
    }

    fn to_dense(&self) -> DenseMatrix {
        let cols: Vec<usize> =
            (0..self.col_count.len()).filter(|&c| self.col_count[c] > 0).collect();
        let col_index: std::collections::HashMap<usize, usize> =
            cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(ri, _)| self.alive_row[*ri])
            .map(|(_, row)| {
                let mut dense = vec![0u32; cols.len()];
                for &(c, v) in row {
                    dense[col_index[&(c as usize)]] = v;
                }
                dense
            })
            .collect();
        let mut m = DenseMatrix::from_rows(self.field, rows);
        m.ncols = cols.len();
        m
    }
}

fn rank_impl(m: SparseMat) -> usize {
    let t0 = std::time::Instant::now();
    let (nrows0, ncols0, nnz0) = (m.rows.len(), m.ncols, m.nnz());
    let mut e = Eliminator::new(m);
    loop {
        e.singleton_pass();
        if e.active_rows == 0 {
            break;
        }
        let acols = e.active_cols();
        let nnz: usize = e
            .rows
            .iter()
            .enumerate()
            .filter(|(ri, _)| e.alive_row[*ri])
            .map(|(_, r)| r.len())
            .sum();
        let fill = nnz as f64 / (e.active_rows as f64 * acols as f64).max(1.0);
        if e.active_rows.min(acols) <= DENSE_CUTOFF || fill > DENSE_FILL {
            let dense = e.to_dense();
            let r = e.rank + dense.rank();
            log::debug!(
                "sparse rank {}x{} nnz {} -> rank {} ({} sparse + dense tail), {:.3}s",
                nrows0,
                ncols0,
                nnz0,
                r,
                e.rank,
                t0.elapsed().as_secs_f64()
            );
            return r;
        }
        // Markowitz-ish: among a few lightest rows, the entry whose column
        // is lightest.
        let mut candidates: Vec<usize> = (0..e.rows.len()).filter(|&r| e.alive_row[r]).collect();
        candidates.sort_by_key(|&r| e.rows[r].len());
        candidates.truncate(12);
        let mut best: Option<(u64, usize, u32)> = None;
        for &r in &candidates {
            let rl = e.rows[r].len() as u64;
            for &(c, _) in &e.rows[r] {
                let score = (rl - 1) * (e.col_count[c as usize] as u64 - 1);
                if best.map_or(true, |(s, _, _)| score < s) {
                    best = Some((score, r, c));
                }
            }
        }
        let (_, r, c) = best.expect("active row exists");
        e.pivot(r, c);
    }
    log::debug!(
        "sparse rank {}x{} nnz {} -> rank {} (fully sparse), {:.3}s",
        nrows0,
        ncols0,
        nnz0,
        e.rank,
        t0.elapsed().as_secs_f64()
    );
    e.rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn sparse_rank_matches_dense_on_random_matrices() {
        let field = PrimeField::default_field();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..20 {
            let nrows = rng.gen_range(1..40);
            let ncols = rng.gen_range(1..40);
            let mut rows = Vec::new();
            let mut dense_rows = Vec::new();
            for _ in 0..nrows {
                let mut dense = vec![0u32; ncols];
                let mut row = Vec::new();
                for c in 0..ncols {
                    if rng.gen_bool(0.2) {
                        let v = rng.gen_range(1..field.prime());
                        dense[c] = v;
                        row.push((c as u32, v));
                    }
                }
                rows.push(row);
                dense_rows.push(dense);
            }
            let sparse = SparseMat::new(field, ncols, rows);
            let dense = DenseMatrix::from_rows(field, dense_rows);
            let mut dense = dense;
            dense.ncols = ncols;
            assert_eq!(sparse.rank(), dense.rank(), "trial {trial}");
        }
    }

    #[test]
    fn rank_of_zero_and_identityish() {
        let field = PrimeField::default_field();
        let m = SparseMat::new(field, 5, vec![vec![], vec![(2, 7)], vec![(2, 14)]]);
        assert_eq!(m.rank(), 1);
    }
}
