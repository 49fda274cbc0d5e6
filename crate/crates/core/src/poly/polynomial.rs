use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

pub type Term = (Monomial, u64);

/// A polynomial in canonical form: nonzero coefficients, terms sorted
/// strictly descending under the ring's monomial order.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

#[inline]
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Poly {
        let c = ring.char().reduce(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Poly {
        assert!(i < ring.nvars(), "variable index out of range");
        Poly {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), 1)],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: u64) -> Poly {
        assert_eq!(m.nvars(), ring.nvars());
        let c = c % ring.p();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary terms (any order,
    /// repeated monomials, unreduced coefficients).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Poly {
        let f = ring.char();
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % f.get());
        }
        Poly::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: HashMap<Monomial, u64>) -> Poly {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let order = ring.order();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Poly {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0 && *c < ring.p()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_coeff(&self) -> u64 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub(crate) fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = self.ring.char();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, b[j].1);
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.char();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(*c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.ring.char();
        let c = c % f.get();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(*a, c)))
                .collect(),
        }
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, lc)) => self.scale(self.ring.char().inv(*lc)),
        }
    }

    /// `c * m * self`; monomial orders are multiplicative, so order is kept.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Result<Poly> {
        let f = self.ring.char();
        let c = c % f.get();
        if c == 0 {
            return Ok(Poly::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, b) in &self.terms {
            terms.push((a.mul(m)?, f.mul(*b, c)));
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, *c);
        }
        let f = self.ring.char();
        let mut acc: HashMap<Monomial, u64> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let e = acc.entry(ma.mul(mb)?).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Poly::from_map(&self.ring, acc))
    }

    pub fn pow(&self, mut k: u64) -> Result<Poly> {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^(p^e)`. Over `F_p` this is term-wise: coefficients are fixed by
    /// Frobenius and every monomial is raised to the `p^e`-th power.
    pub fn frobenius(&self, e: u32) -> Result<Poly> {
        let q = self
            .ring
            .char()
            .checked_power(e)
            .ok_or(Error::ExponentOverflow)?;
        self.raise_monomials(q)
    }

    /// Substitutes `x_i -> x_i^q` for every variable.
    pub fn raise_monomials(&self, q: u32) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.pow(q)?, *c));
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Re-embeds into `target`, sending variable `i` to `target` variable
    /// `map[i]`. Unmapped target variables get exponent zero.
    pub fn change_ring(&self, target: &Arc<PolyRing>, map: &[usize]) -> Result<Poly> {
        assert_eq!(map.len(), self.ring.nvars());
        if target.p() != self.ring.p() {
            return Err(Error::RingMismatch);
        }
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = smallvec::SmallVec::from_elem(0u32, n);
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] = x;
                }
                Monomial::from_parts(e).map(|m| (m, *c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_terms(target, terms))
    }

    /// True iff no variable outside `allowed` occurs.
    pub fn only_uses(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.terms.iter().all(|(m, _)| m.support().all(&allowed))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Result<Option<Poly>> {
        self.check_ring(d)?;
        let Some((lm, lc)) = d.leading_term() else {
            return Err(Error::ZeroElement("division by zero".into()));
        };
        let f = self.ring.char();
        let inv = f.inv(*lc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let t = lm.quotient_of(&m);
            let k = f.mul(c, inv);
            rem = rem.add_unchecked(&d.mul_term(&t, f.neg(k))?);
            quot.push((t, k));
        }
        Ok(Some(Poly::from_sorted_terms(&self.ring, quot)))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(out, " + ")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
