//! Monomials as exponent vectors.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector indexed by ring variables.  Exponents are bounded by
/// u16, far beyond any desk-scale degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    exps: SmallVec<[u16; 24]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: smallvec::smallvec![0; nvars] }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.exps[i] = e;
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i] as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Bitmask of the support, for fast divisibility prefilters.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a + b).collect(),
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial {
                exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a - b).collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Re-index exponents into a smaller ring; `map[i] = None` entries must
    /// have exponent zero (caller guarantees the monomial avoids them).
    pub fn project(&self, map: &[Option<usize>], new_nvars: usize) -> Monomial {
        let mut m = Monomial::one(new_nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m.exps[map[i].expect("projected variable has nonzero exponent")] = e;
            }
        }
        m
    }
}
