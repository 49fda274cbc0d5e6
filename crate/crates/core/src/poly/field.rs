use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The characteristic `p` of the coefficient field `F_p`.
///
/// Elements are least non-negative residues stored in a `u64`; since
/// `p < 2^31` every product of two residues fits without overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeChar(u64);

pub const MAX_CHAR: u64 = (1 << 31) - 1;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeChar {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_CHAR || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeChar(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer to its least non-negative residue.
    #[inline]
    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero");
        self.pow(a, self.0 - 2)
    }

    /// `p^e`, or `None` when it does not fit in a `u32` exponent.
    pub fn checked_power(self, e: u32) -> Option<u32> {
        let mut q: u32 = 1;
        for _ in 0..e {
            q = q.checked_mul(u32::try_from(self.0).ok()?)?;
        }
        Some(q)
    }
}
