use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{reduce, reduced_groebner_basis};
use crate::error::{Error, Result};
use crate::poly::{same_ring, Poly, PolyRing};

struct Inner {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: OnceLock<Result<Vec<Poly>>>,
}

/// A finitely generated ideal of `F_p[x_1..x_n]` with a lazily computed,
/// cached reduced Gröbner basis. Cloning shares the cache.
#[derive(Clone)]
pub struct IdealHandle(Arc<Inner>);

impl IdealHandle {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Result<IdealHandle> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealHandle(Arc::new(Inner {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })))
    }

    pub fn zero(ring: &Arc<PolyRing>) -> IdealHandle {
        IdealHandle::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> IdealHandle {
        IdealHandle::new(ring, vec![Poly::one(ring)]).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.0.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.0.gens
    }

    /// The unique reduced Gröbner basis; computed at most once per handle.
    pub fn groebner_basis(&self) -> Result<&[Poly]> {
        self.0
            .gb
            .get_or_init(|| reduced_groebner_basis(&self.0.ring, &self.0.gens))
            .as_deref()
            .map_err(Clone::clone)
    }

    fn check(&self, f: &Poly) -> Result<()> {
        if same_ring(f.ring(), self.ring()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Remainder of `f` on division by the reduced Gröbner basis.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        let gb = self.groebner_basis()?;
        let basis: Vec<&Poly> = gb.iter().collect();
        reduce(f, &basis)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::RingMismatch);
        }
        for g in other.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, decided by comparing reduced Gröbner bases.
    pub fn same_ideal(&self, other: &IdealHandle) -> Result<bool> {
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    /// The same ideal presented by its reduced Gröbner basis.
    pub fn reduced(&self) -> Result<IdealHandle> {
        let gb = self.groebner_basis()?.to_vec();
        let cache = OnceLock::new();
        let _ = cache.set(Ok(gb.clone()));
        Ok(IdealHandle(Arc::new(Inner {
            ring: self.0.ring.clone(),
            gens: gb,
            gb: cache,
        })))
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.groebner_basis()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gens().is_empty()
    }

    /// True when the reduced Gröbner basis consists of homogeneous
    /// polynomials (equivalently, the ideal is homogeneous; the order here
    /// is always degree-compatible on the relevant rings).
    pub fn is_homogeneous(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().all(Poly::is_homogeneous))
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens().to_vec();
        gens.extend(other.gens().iter().cloned());
        IdealHandle::new(self.ring(), gens)
    }

    pub fn with_extra(&self, extra: &[Poly]) -> Result<IdealHandle> {
        let mut gens = self.gens().to_vec();
        gens.extend(extra.iter().cloned());
        IdealHandle::new(self.ring(), gens)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens().len() * other.gens().len());
        for a in self.gens() {
            for b in other.gens() {
                gens.push(a.mul(b)?);
            }
        }
        IdealHandle::new(self.ring(), gens)
    }

    /// The ideal generated by `c * g` for every generator `g`.
    pub fn scaled_by(&self, c: &Poly) -> Result<IdealHandle> {
        let gens = self
            .gens()
            .iter()
            .map(|g| g.mul(c))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(self.ring(), gens)
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}
