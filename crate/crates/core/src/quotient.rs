//! The working ring `R = S/J`, localized (implicitly) at the graded maximal
//! ideal `m = (x_1..x_n)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::poly::{same_ring, Poly, PolyRing};

/// Properties of `R` that the tool records but cannot verify.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFlags {
    pub domain: bool,
    pub cohen_macaulay: bool,
    pub equidim_excellent: bool,
}

pub struct QuotientCtx {
    ring: Arc<PolyRing>,
    defining: IdealHandle,
    dim: usize,
    flags: RingFlags,
}

impl fmt::Debug for QuotientCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuotientCtx({:?} / {}, dim {})",
            self.ring.var_names(),
            self.defining,
            self.dim
        )
    }
}

fn in_max_ideal(f: &Poly) -> bool {
    f.constant_coeff() == 0
}

impl QuotientCtx {
    /// Builds `S/J`. `J` must be proper and contained in `(x_1..x_n)`.
    pub fn new(
        ring: &Arc<PolyRing>,
        defining: IdealHandle,
        flags: RingFlags,
    ) -> Result<Arc<QuotientCtx>> {
        if !same_ring(ring, defining.ring()) {
            return Err(Error::RingMismatch);
        }
        if defining.is_unit()? {
            return Err(Error::UnitIdeal);
        }
        if !defining.gens().iter().all(in_max_ideal) {
            return Err(Error::InvalidArgument(
                "defining ideal must lie in the graded maximal ideal".into(),
            ));
        }
        let dim = defining.dimension()?;
        Ok(Arc::new(QuotientCtx {
            ring: ring.clone(),
            defining,
            dim,
            flags,
        }))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn defining_ideal(&self) -> &IdealHandle {
        &self.defining
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flags(&self) -> RingFlags {
        self.flags
    }

    pub fn is_cm(&self) -> bool {
        self.flags.cohen_macaulay
    }

    /// `I + J` in the ambient ring.
    pub fn lift(&self, ideal: &IdealHandle) -> Result<IdealHandle> {
        ideal.sum(&self.defining)
    }

    pub fn lift_gens(&self, gens: &[Poly]) -> Result<IdealHandle> {
        self.defining.with_extra(gens)
    }

    /// `f ∈ I + J`.
    pub fn member_mod(&self, f: &Poly, ideal: &IdealHandle) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        self.lift(ideal)?.contains(f)
    }

    pub fn is_zero_element(&self, f: &Poly) -> Result<bool> {
        self.defining.contains(f)
    }

    /// Whether `c` is a nonzerodivisor on `S/J`, i.e. `(J : c) = J`.
    pub fn is_nonzerodivisor(&self, c: &Poly) -> Result<bool> {
        if self.defining.contains(c)? {
            return Err(Error::ZeroElement(format!("{c} is zero in the quotient")));
        }
        self.defining.colon(c)?.same_ideal(&self.defining)
    }

    /// Checks that `gens` is part of a system of parameters: each lies in
    /// `m` and the dimension drops by exactly `gens.len()`.
    pub fn validate_parameter_ideal(
        self: &Arc<Self>,
        gens: Vec<Poly>,
    ) -> Result<Arc<ParameterSystem>> {
        if self.dim == 0 {
            return Err(Error::Unsupported("parameter ideals need dim R > 0".into()));
        }
        if gens.iter().any(|g| !same_ring(g.ring(), &self.ring)) {
            return Err(Error::RingMismatch);
        }
        if let Some(g) = gens.iter().find(|g| g.is_zero() || !in_max_ideal(g)) {
            return Err(Error::InvalidArgument(format!(
                "parameter {g} must be a nonzero element of the graded maximal ideal"
            )));
        }
        let lifted = self.lift_gens(&gens)?;
        let achieved = if lifted.is_unit()? {
            self.dim + 1
        } else {
            self.dim - lifted.dimension()?
        };
        if achieved != gens.len() {
            return Err(Error::HeightDeficiency {
                expected: gens.len(),
                achieved,
            });
        }
        let full = gens.len() == self.dim;
        Ok(Arc::new(ParameterSystem {
            ctx: self.clone(),
            full,
            elems: gens,
            powers: Mutex::new(HashMap::new()),
        }))
    }
}

/// Part of a system of parameters of `R`, with a cache of the ideals
/// `(a_1^t, .., a_h^t) + J`.
pub struct ParameterSystem {
    ctx: Arc<QuotientCtx>,
    elems: Vec<Poly>,
    full: bool,
    powers: Mutex<HashMap<u32, IdealHandle>>,
}

impl fmt::Debug for ParameterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.elems.iter().map(|g| g.to_string()).collect();
        write!(
            f,
            "ParameterSystem({}{})",
            e.join(", "),
            if self.full { ", full" } else { "" }
        )
    }
}

impl ParameterSystem {
    pub fn ctx(&self) -> &Arc<QuotientCtx> {
        &self.ctx
    }

    pub fn elems(&self) -> &[Poly] {
        &self.elems
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The parameter ideal `(a_1, .., a_h)` in the ambient ring (without `J`).
    pub fn ideal(&self) -> IdealHandle {
        IdealHandle::new(self.ctx.ring(), self.elems.clone()).expect("same ring")
    }

    /// `a_1 ⋯ a_h`.
    pub fn product(&self) -> Result<Poly> {
        let mut acc = Poly::one(self.ctx.ring());
        for a in &self.elems {
            acc = acc.mul(a)?;
        }
        Ok(acc)
    }

    /// `(a_1^t, .., a_h^t) + J`; level 0 gives the unit ideal.
    pub fn power_ideal(&self, t: u32) -> Result<IdealHandle> {
        if let Some(i) = self.powers.lock().unwrap().get(&t) {
            return Ok(i.clone());
        }
        let gens = self
            .elems
            .iter()
            .map(|a| a.pow(u64::from(t)))
            .collect::<Result<Vec<_>>>()?;
        let ideal = self.ctx.lift_gens(&gens)?;
        self.powers.lock().unwrap().insert(t, ideal.clone());
        Ok(ideal)
    }
}
