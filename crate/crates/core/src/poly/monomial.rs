use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a power product, with its total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u32; 6]>,
}

/// Monomial order tag.
///
/// `Block(k)` compares the first `k` variables by graded reverse
/// lexicographic order and breaks ties with grevlex on the remaining
/// variables; it is an elimination order for the first block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Block(usize),
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        let mut deg: u32 = 0;
        for &e in exps {
            deg = deg.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial {
            deg,
            exps: SmallVec::from_slice(exps),
        })
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial {
            deg: self
                .deg
                .checked_add(other.deg)
                .ok_or(Error::ExponentOverflow)?,
            exps,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for a in &self.exps {
            exps.push(a.checked_mul(k).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial {
            deg: self.deg.checked_mul(k).ok_or(Error::ExponentOverflow)?,
            exps,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: other.deg - self.deg,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 6]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        // every entry is bounded by an existing exponent, the sum is bounded by deg(self)+deg(other)
        let deg = exps.iter().fold(0u32, |s, e| s.saturating_add(*e));
        Monomial { deg, exps }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables that occur with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// Splits every exponent as `q * quot + rem` with `rem < q`.
    pub fn split_by(&self, q: u32) -> (Monomial, Monomial) {
        let quot: SmallVec<[u32; 6]> = self.exps.iter().map(|e| e / q).collect();
        let rem: SmallVec<[u32; 6]> = self.exps.iter().map(|e| e % q).collect();
        let qd = quot.iter().sum();
        let rd = rem.iter().sum();
        (
            Monomial {
                deg: qd,
                exps: quot,
            },
            Monomial { deg: rd, exps: rem },
        )
    }

    pub(crate) fn from_parts(exps: SmallVec<[u32; 6]>) -> Result<Monomial> {
        let mut deg: u32 = 0;
        for &e in &exps {
            deg = deg.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { deg, exps })
    }
}

fn grevlex(a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(&a.exps, a.deg, &b.exps, b.deg),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                let da1: u32 = a1.iter().sum();
                let db1: u32 = b1.iter().sum();
                match grevlex(a1, da1, b1, db1) {
                    Ordering::Equal => grevlex(a2, a.deg - da1, b2, b.deg - db1),
                    o => o,
                }
            }
        }
    }

    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}
