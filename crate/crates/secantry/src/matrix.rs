//! Dense linear algebra over GF(p): reduced row echelon form, rank,
//! kernels, inverses.  Entries are `u32` residues; the inner elimination
//! loop works in u64 and reduces once per entry.

use crate::field::{Fp, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    pub field: PrimeField,
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, nrows: usize, ncols: usize) -> Self {
        DenseMatrix { field, nrows, ncols, data: vec![0; nrows * ncols] }
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u32>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            debug_assert_eq!(r.len(), ncols);
            data.extend(r);
        }
        DenseMatrix { field, nrows, ncols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = DenseMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// In-place reduced row echelon form.  Returns the pivot columns; the
    /// rank is their count.  Zero rows sink to the bottom; the result is the
    /// canonical representative of the row space.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.field.prime() as u64;
        let ncols = self.ncols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == self.nrows {
                break;
            }
            let Some(pr) = (r..self.nrows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.data.swap_ranges_rows(pr, r, ncols);
            // Normalize pivot row.
            let inv = self.field.inv(Fp(self.get(r, c))).unwrap().0 as u64;
            if inv != 1 {
                let row = &mut self.data[r * ncols..(r + 1) * ncols];
                for v in row.iter_mut() {
                    if *v != 0 {
                        *v = ((*v as u64 * inv) % p) as u32;
                    }
                }
            }
            // Eliminate everywhere else.
            for i in 0..self.nrows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c) as u64;
                if factor == 0 {
                    continue;
                }
                let (dst, src) = row_pair(&mut self.data, i, r, ncols);
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if *s != 0 {
                        let sub = (factor * *s as u64) % p;
                        let cur = *d as u64;
                        *d = ((cur + p - sub) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by plain forward elimination (does not canonicalize).
    pub fn rank(mut self) -> usize {
        let p = self.field.prime() as u64;
        let ncols = self.ncols;
        let mut rank = 0;
        for c in 0..ncols {
            if rank == self.nrows {
                break;
            }
            let Some(pr) = (rank..self.nrows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.data.swap_ranges_rows(pr, rank, ncols);
            let inv = self.field.inv(Fp(self.get(rank, c))).unwrap().0 as u64;
            for i in rank + 1..self.nrows {
                let lead = self.get(i, c) as u64;
                if lead == 0 {
                    continue;
                }
                let factor = (lead * inv) % p;
                let (dst, src) = row_pair(&mut self.data, i, rank, ncols);
                for (d, s) in dst[c..].iter_mut().zip(src[c..].iter()) {
                    if *s != 0 {
                        let sub = (factor * *s as u64) % p;
                        let cur = *d as u64;
                        *d = ((cur + p - sub) % p) as u32;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// A basis of the right kernel, one row per basis vector.
    pub fn kernel_basis(&self) -> DenseMatrix {
        let mut work = self.clone();
        let pivots = work.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        let mut out = DenseMatrix::zeros(self.field, free.len(), self.ncols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (ri, &pc) in pivots.iter().enumerate().take(rank) {
                let v = work.get(ri, fc);
                if v != 0 {
                    out.set(k, pc, self.field.neg(Fp(v)).0);
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<DenseMatrix> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut aug = DenseMatrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = DenseMatrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.ncols, other.nrows);
        let p = self.field.prime() as u64;
        let mut out = DenseMatrix::zeros(self.field, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j) as u64;
                    if b != 0 {
                        let cur = out.get(i, j) as u64;
                        out.set(i, j, ((cur + a * b % p) % p) as u32);
                    }
                }
            }
        }
        out
    }
}

/// Borrow two distinct rows mutably/immutably.
fn row_pair(data: &mut [u32], dst: usize, src: usize, ncols: usize) -> (&mut [u32], &[u32]) {
    debug_assert_ne!(dst, src);
    if dst < src {
        let (a, b) = data.split_at_mut(src * ncols);
        (&mut a[dst * ncols..(dst + 1) * ncols], &b[..ncols])
    } else {
        let (a, b) = data.split_at_mut(dst * ncols);
        (&mut b[..ncols], &a[src * ncols..(src + 1) * ncols])
    }
}

trait SwapRows {
    fn swap_ranges_rows(&mut self, a: usize, b: usize, ncols: usize);
}

impl SwapRows for Vec<u32> {
    fn swap_ranges_rows(&mut self, a: usize, b: usize, ncols: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (first, second) = self.split_at_mut(hi * ncols);
        first[lo * ncols..(lo + 1) * ncols].swap_with_slice(&mut second[..ncols]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_rank_kernel() {
        let f = PrimeField::default_field();
        let m = DenseMatrix::from_rows(
            f,
            vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]],
        );
        assert_eq!(m.clone().rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.nrows, 1);
        // Check A * v = 0 for the kernel vector.
        let p = f.prime() as u64;
        for i in 0..m.nrows {
            let mut acc = 0u64;
            for j in 0..m.ncols {
                acc = (acc + m.get(i, j) as u64 * k.get(0, j) as u64) % p;
            }
            assert_eq!(acc, 0);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::default_field();
        let m = DenseMatrix::from_rows(f, vec![vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        let prod = m.matmul(&inv);
        assert_eq!(prod, DenseMatrix::identity(f, 2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let f = PrimeField::default_field();
        let m = DenseMatrix::from_rows(f, vec![vec![1, 2], vec![2, 4]]);
        assert!(m.inverse().is_none());
    }
}
