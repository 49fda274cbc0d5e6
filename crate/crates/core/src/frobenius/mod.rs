//! Frobenius powers `I^[q]`, the root ideal `I_e`, the Frobenius preimage
//! `{r : r^q ∈ K}`, and Frobenius closure relative to a defining ideal.

mod closure;
mod preimage;

use serde::Serialize;

pub use closure::{frobenius_closure, frobenius_membership, ClosureStatus, FrobeniusClosure};
pub use preimage::{
    frobenius_preimage, frobenius_preimage_by_elimination, frobenius_preimage_graded,
};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::poly::{Monomial, Poly, PrimeChar};

/// A Frobenius exponent `e` together with `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrobeniusExponent {
    pub e: u32,
    pub q: u32,
}

impl FrobeniusExponent {
    pub fn new(char: PrimeChar, e: u32) -> Result<Self> {
        let q = char.checked_power(e).ok_or(Error::ExponentOverflow)?;
        Ok(FrobeniusExponent { e, q })
    }
}

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators.
pub fn frobenius_power(ideal: &IdealHandle, e: u32) -> Result<IdealHandle> {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.frobenius(e))
        .collect::<Result<Vec<_>>>()?;
    IdealHandle::new(ideal.ring(), gens)
}

/// The root ideal `I_e(I)`: the smallest ideal `K` with `I ⊆ K^[p^e]`.
///
/// Every element of the reduced Gröbner basis is written as
/// `Σ_μ g_μ^q μ` over the basis monomials `μ` with all exponents below
/// `q`; the `g_μ` generate the root.
pub fn frobenius_root(ideal: &IdealHandle, e: u32) -> Result<IdealHandle> {
    let ring = ideal.ring();
    let q = FrobeniusExponent::new(ring.char(), e)?.q;
    let mut gens = Vec::new();
    for g in ideal.groebner_basis()? {
        let mut parts: HashMap<Monomial, Vec<(Monomial, u64)>> = HashMap::new();
        for (m, c) in g.terms() {
            let (quot, rem) = m.split_by(q);
            // c^q = c in F_p, so c is its own q-th root
            parts.entry(rem).or_default().push((quot, *c));
        }
        let mut comps: Vec<(Monomial, Vec<(Monomial, u64)>)> = parts.into_iter().collect();
        comps.sort_by(|a, b| ring.order().cmp(&b.0, &a.0));
        gens.extend(comps.into_iter().map(|(_, t)| Poly::from_terms(ring, t)));
    }
    IdealHandle::new(ring, gens)
}

/// The normal form of `r^(p^e)` modulo `K`, computed by alternating
/// `p`-th powers with reduction. Uses `K^[p] ⊆ K`.
pub fn frobenius_normal_form(r: &Poly, k: &IdealHandle, e: u32) -> Result<Poly> {
    let mut acc = k.normal_form(r)?;
    for _ in 0..e {
        if acc.is_zero() {
            break;
        }
        acc = k.normal_form(&acc.frobenius(1)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;
