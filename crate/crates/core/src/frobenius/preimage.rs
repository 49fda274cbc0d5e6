use std::collections::HashMap;

use super::{frobenius_normal_form, FrobeniusExponent};
use crate::error::{Error, Result};
use crate::groebner::{eliminate, IdealHandle};
use crate::poly::{same_ring, Monomial, Poly};

/// `{r : mult · r^(p^e) ∈ K}`, the right adjoint of the Frobenius power
/// (with an optional multiplier): `J^[q] ⊆ (K : mult)` iff `J` lies in it.
///
/// Homogeneous `m`-primary inputs are handled degree by degree with linear
/// algebra over `F_p`; everything else goes through elimination.
pub fn frobenius_preimage(k: &IdealHandle, mult: &Poly, e: u32) -> Result<IdealHandle> {
    if !same_ring(k.ring(), mult.ring()) {
        return Err(Error::RingMismatch);
    }
    if mult.is_zero() || k.is_unit()? {
        return Ok(IdealHandle::unit(k.ring()));
    }
    if graded_route_applies(k, mult)? {
        return frobenius_preimage_graded(k, mult, e);
    }
    frobenius_preimage_by_elimination(k, mult, e)
}

fn graded_route_applies(k: &IdealHandle, mult: &Poly) -> Result<bool> {
    Ok(mult.is_homogeneous() && k.is_homogeneous()? && k.dimension()? == 0)
}

/// Monomials of total degree `d` in `n` variables, in a fixed order.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix).unwrap());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Graded route; requires `K` homogeneous with `dim(ring/K) = 0` and a
/// homogeneous multiplier.
pub fn frobenius_preimage_graded(k: &IdealHandle, mult: &Poly, e: u32) -> Result<IdealHandle> {
    let ring = k.ring();
    if !graded_route_applies(k, mult)? {
        return Err(Error::Unsupported(
            "graded preimage needs a homogeneous m-primary ideal and multiplier".into(),
        ));
    }
    let q = FrobeniusExponent::new(ring.char(), e)?.q;
    let fp = ring.char();
    let n = ring.nvars();

    // m^top ⊆ LT(K): every variable has a pure power among the leading monomials.
    let mut pure = vec![u32::MAX; n];
    for g in k.groebner_basis()? {
        let lm = g.leading_monomial().unwrap();
        let supp: Vec<usize> = lm.support().collect();
        if supp.len() == 1 {
            let i = supp[0];
            pure[i] = pure[i].min(lm.exponents()[i]);
        }
    }
    let top: u64 = pure.iter().map(|a| u64::from(*a) - 1).sum::<u64>() + 1;
    let cap = top.div_ceil(u64::from(q)) as u32;

    let mut gens = Vec::new();
    for d in 0..=cap {
        let monos = monomials_of_degree(n, d);
        let mut pivots: HashMap<Monomial, (Poly, Vec<u64>)> = HashMap::new();
        let mut kernel = Vec::new();
        for (j, mu) in monos.iter().enumerate() {
            let root = Poly::monomial(ring, mu.clone(), 1);
            let image = k.normal_form(&mult.mul(&frobenius_normal_form(&root, k, e)?)?)?;
            let mut v = image;
            let mut combo = vec![0u64; monos.len()];
            combo[j] = 1;
            while let Some((lm, lc)) = v.leading_term().cloned() {
                let Some((pv, pc)) = pivots.get(&lm) else {
                    break;
                };
                let s = fp.neg(lc);
                v = v.add_unchecked(&pv.scale(s));
                for (a, b) in combo.iter_mut().zip(pc) {
                    *a = fp.add(*a, fp.mul(s, *b));
                }
            }
            match v.leading_term().cloned() {
                None => kernel.push(combo),
                Some((lm, lc)) => {
                    let inv = fp.inv(lc);
                    let combo = combo.iter().map(|c| fp.mul(*c, inv)).collect();
                    pivots.insert(lm, (v.scale(inv), combo));
                }
            }
        }
        if kernel.len() == monos.len() {
            gens.extend(monos.into_iter().map(|m| Poly::monomial(ring, m, 1)));
            return IdealHandle::new(ring, gens)?.reduced();
        }
        for combo in kernel {
            let terms = monos
                .iter()
                .zip(&combo)
                .filter(|(_, c)| **c != 0)
                .map(|(m, c)| (m.clone(), *c))
                .collect();
            gens.push(Poly::from_terms(ring, terms));
        }
    }
    Err(Error::Invariant(format!(
        "graded preimage did not fill degree {cap} although m^{top} lies in the ideal"
    )))
}

/// Elimination route: `(K : mult)` pulled back along `x_i ↦ x_i^q`, which
/// over `F_p` is exactly `r ↦ r^q`.
pub fn frobenius_preimage_by_elimination(
    k: &IdealHandle,
    mult: &Poly,
    e: u32,
) -> Result<IdealHandle> {
    let base = k.ring();
    let q = FrobeniusExponent::new(base.char(), e)?.q;
    if mult.is_zero() {
        return Ok(IdealHandle::unit(base));
    }
    let target = if mult.is_constant() {
        k.clone()
    } else {
        k.colon(mult)?
    };
    if target.is_zero() {
        return Ok(target);
    }
    if target.is_unit()? {
        return Ok(IdealHandle::unit(base));
    }
    if q == 1 {
        return Ok(target);
    }
    let n = base.nvars();
    let tagged = base.with_tags(n);
    let as_tags: Vec<usize> = (0..n).collect();
    let mut gens = target
        .gens()
        .iter()
        .map(|g| g.change_ring(&tagged, &as_tags))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..n {
        let y = Poly::var(&tagged, n + i);
        let xq = Poly::var(&tagged, i).raise_monomials(q)?;
        gens.push(y.sub(&xq)?);
    }
    eliminate(base, &tagged, n, &gens)
}
