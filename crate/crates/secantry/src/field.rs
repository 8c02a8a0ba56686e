//! Arithmetic in the prime field GF(p) for an odd word-sized prime p.
//!
//! Elements are residues stored as `u32`; products go through `u64` so no
//! intermediate overflows occur for p < 2^31.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default modulus used throughout the examples.
pub const DEFAULT_PRIME: u32 = 32003;

/// A residue in [0, p).  The field itself carries the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fp(pub u32);

/// The field GF(p).  Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || !is_prime_u32(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn default_field() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn zero(&self) -> Fp {
        Fp(0)
    }

    #[inline]
    pub fn one(&self) -> Fp {
        Fp(1)
    }

    #[inline]
    pub fn from_i64(&self, n: i64) -> Fp {
        let p = self.p as i64;
        Fp(n.rem_euclid(p) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// Reduce a u64 accumulator into the field.
    #[inline]
    pub fn reduce_u64(&self, acc: u64) -> Fp {
        Fp((acc % self.p as u64) as u32)
    }

    pub fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: Fp) -> Result<Fp> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero { p: self.p });
        }
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i64(s0))
    }

    #[inline]
    pub fn div(&self, a: Fp, b: Fp) -> Result<Fp> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Signed representative of smallest magnitude, used for printing.
    #[inline]
    pub fn balanced(&self, a: Fp) -> i64 {
        let v = a.0 as i64;
        if v * 2 > self.p as i64 {
            v - self.p as i64
        } else {
            v
        }
    }
}

/// Deterministic Miller-Rabin; the base set {2, 3, 5, 7} is exact below
/// 3,215,031,751 which covers all of u32.
fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u32, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let n64 = n as u64;
    let mut d = n64 - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n64);
        if x == 1 || x == n64 - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (x as u128 * x as u128 % n64 as u128) as u64;
            if x == n64 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_accepted() {
        assert_eq!(PrimeField::new(32003).unwrap().prime(), 32003);
    }

    #[test]
    fn composite_is_rejected() {
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn inv_of_one_is_one() {
        let f = PrimeField::default_field();
        assert_eq!(f.inv(Fp(1)).unwrap(), Fp(1));
    }

    #[test]
    fn inv_of_two_mod_32003() {
        let f = PrimeField::default_field();
        assert_eq!(f.inv(Fp(2)).unwrap(), Fp(16002));
    }

    #[test]
    fn inv_of_zero_errors() {
        let f = PrimeField::default_field();
        assert!(f.inv(Fp(0)).is_err());
    }

    #[test]
    fn inv_agrees_with_fermat_power() {
        // Independent oracle: a^(p-2) is the inverse by Fermat's little theorem.
        let f = PrimeField::default_field();
        let mut x = 1234u32;
        for _ in 0..100 {
            x = (x.wrapping_mul(48271)) % 32002 + 1;
            let a = Fp(x);
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), Fp(1));
            assert_eq!(inv, f.pow(a, (f.prime() - 2) as u64));
        }
    }

    #[test]
    fn balanced_representative() {
        let f = PrimeField::default_field();
        assert_eq!(f.balanced(Fp(32001)), -2);
        assert_eq!(f.balanced(Fp(2)), 2);
    }
}
