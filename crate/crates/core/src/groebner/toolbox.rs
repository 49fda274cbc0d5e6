//! Elimination-based ideal operations. A single block-order engine serves
//! intersection, colon and the Rabinowitsch trick.

use std::sync::Arc;

use super::engine::reduced_groebner_basis;
use super::ideal::IdealHandle;
use crate::error::{Error, Result};
use crate::poly::{same_ring, Poly, PolyRing};

/// Embedding of the base variables after `k` prepended tags.
fn shift_map(n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|i| i + k).collect()
}

/// Computes a Gröbner basis in `tagged` (whose first `k` variables are
/// eliminated by its block order) and returns the elements free of the
/// tags, mapped back into `base`.
pub(crate) fn eliminate(
    base: &Arc<PolyRing>,
    tagged: &Arc<PolyRing>,
    k: usize,
    gens: &[Poly],
) -> Result<IdealHandle> {
    let gb = reduced_groebner_basis(tagged, gens)?;
    let kept = gb
        .iter()
        .filter(|g| g.only_uses(|i| i >= k))
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    crate::poly::Monomial::from_exponents(&m.exponents()[k..]).map(|m| (m, *c))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::from_terms(base, terms))
        })
        .collect::<Result<Vec<_>>>()?;
    IdealHandle::new(base, kept)
}

impl IdealHandle {
    /// `I ∩ K`, as the tag-free part of `t·I + (1 − t)·K`.
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle> {
        let base = self.ring();
        if !same_ring(base, other.ring()) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(IdealHandle::zero(base));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let tagged = base.with_tags(1);
        let map = shift_map(base.nvars(), 1);
        let t = Poly::var(&tagged, 0);
        let one_minus_t = Poly::one(&tagged).sub(&t)?;
        let mut gens = Vec::new();
        for g in self.gens() {
            gens.push(g.change_ring(&tagged, &map)?.mul(&t)?);
        }
        for g in other.gens() {
            gens.push(g.change_ring(&tagged, &map)?.mul(&one_minus_t)?);
        }
        eliminate(base, &tagged, 1, &gens)
    }

    /// `(I : f) = {g : g·f ∈ I}`, via `I ∩ (f)` and exact division by `f`.
    pub fn colon(&self, f: &Poly) -> Result<IdealHandle> {
        let base = self.ring();
        if !same_ring(base, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroElement("colon by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(IdealHandle::zero(base));
        }
        if self.is_unit()? || self.contains(f)? {
            return Ok(IdealHandle::unit(base));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = IdealHandle::new(base, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(meet.gens().len());
        for g in meet.gens() {
            match g.exact_div(f)? {
                Some(q) => gens.push(q),
                None => {
                    return Err(Error::Invariant(format!(
                        "generator {g} of I ∩ (f) is not divisible by {f}"
                    )))
                }
            }
        }
        IdealHandle::new(base, gens)
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 − t·f)`.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        let base = self.ring();
        if !same_ring(base, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() || self.contains(f)? {
            return Ok(true);
        }
        let tagged = base.with_tags(1);
        let map = shift_map(base.nvars(), 1);
        let t = Poly::var(&tagged, 0);
        let mut gens = self
            .gens()
            .iter()
            .map(|g| g.change_ring(&tagged, &map))
            .collect::<Result<Vec<_>>>()?;
        let tf = t.mul(&f.change_ring(&tagged, &map)?)?;
        gens.push(Poly::one(&tagged).sub(&tf)?);
        let gb = reduced_groebner_basis(&tagged, &gens)?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// Krull dimension of `ring / I`: the largest set of variables `U` such
    /// that no leading monomial of the Gröbner basis is supported inside `U`.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_unit()? {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring().nvars();
        if n > 30 {
            return Err(Error::Unsupported(
                "dimension needs at most 30 variables".into(),
            ));
        }
        let supports: Vec<u32> = self
            .groebner_basis()?
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .unwrap()
                    .support()
                    .fold(0u32, |acc, i| acc | (1 << i))
            })
            .collect();
        let mut best = 0;
        for set in 0u32..(1u32 << n) {
            let size = set.count_ones() as usize;
            if size > best && supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        Ok(best)
    }
}
