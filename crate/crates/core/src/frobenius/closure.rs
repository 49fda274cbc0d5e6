use serde::Serialize;

use super::{frobenius_normal_form, frobenius_power, frobenius_preimage, FrobeniusExponent};
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::poly::{same_ring, Poly};

/// Outcome of the ascending Frobenius-closure chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosureStatus {
    /// The chain satisfied `C_e = C_{e+1}` first at `at`.
    Stabilized { at: u32 },
    /// No two consecutive levels agreed up to `e_max`.
    Truncated,
    /// `I + J` is already the unit ideal.
    Unit,
}

#[derive(Debug, Clone)]
pub struct FrobeniusClosure {
    /// Union of the computed levels `C_e = {r : r^(p^e) ∈ I^[p^e] + J}`.
    pub ideal: IdealHandle,
    pub status: ClosureStatus,
    /// Number of levels evaluated, including `C_0 = I + J`.
    pub levels: u32,
    /// Reduced-basis elements of the closure outside `I + J`, each with the
    /// least `e` that certifies it.
    pub certificates: Vec<(Poly, FrobeniusExponent)>,
}

/// Frobenius closure of `I` in `S/J` (pass the zero ideal for `J` to work in
/// the polynomial ring itself), evaluated for `e = 1..=e_max` with early exit
/// once two consecutive levels agree. The chain is returned in terms of
/// ideals of `S` containing `J`.
pub fn frobenius_closure(
    ideal: &IdealHandle,
    modulus: &IdealHandle,
    e_max: u32,
) -> Result<FrobeniusClosure> {
    if e_max < 1 {
        return Err(Error::InvalidArgument("e_max must be at least 1".into()));
    }
    if !same_ring(ideal.ring(), modulus.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = ideal.ring();
    let base = ideal.sum(modulus)?;
    if base.is_unit()? {
        return Ok(FrobeniusClosure {
            ideal: IdealHandle::unit(ring),
            status: ClosureStatus::Unit,
            levels: 1,
            certificates: Vec::new(),
        });
    }
    let one = Poly::one(ring);
    let mut union = base.clone();
    let mut status = ClosureStatus::Truncated;
    let mut levels = 1;
    for e in 1..=e_max {
        let target = frobenius_power(ideal, e)?.sum(modulus)?;
        let level = frobenius_preimage(&target, &one, e)?;
        let next = union.sum(&level)?;
        levels += 1;
        if next.same_ideal(&union)? {
            status = ClosureStatus::Stabilized { at: e - 1 };
            break;
        }
        union = next.reduced()?;
    }

    let mut certificates = Vec::new();
    for g in union.groebner_basis()? {
        if base.contains(g)? {
            continue;
        }
        if let Some(e) = frobenius_membership(g, ideal, modulus, e_max)? {
            certificates.push((g.clone(), e));
        }
    }
    Ok(FrobeniusClosure {
        ideal: union,
        status,
        levels,
        certificates,
    })
}

/// The least `e ≤ e_max` with `r^(p^e) ∈ I^[p^e] + J`.
pub fn frobenius_membership(
    r: &Poly,
    ideal: &IdealHandle,
    modulus: &IdealHandle,
    e_max: u32,
) -> Result<Option<FrobeniusExponent>> {
    if !same_ring(r.ring(), ideal.ring()) || !same_ring(r.ring(), modulus.ring()) {
        return Err(Error::RingMismatch);
    }
    let ch = r.ring().char();
    for e in 0..=e_max {
        let target = frobenius_power(ideal, e)?.sum(modulus)?;
        if frobenius_normal_form(r, &target, e)?.is_zero() {
            return Ok(Some(FrobeniusExponent::new(ch, e)?));
        }
    }
    Ok(None)
}
