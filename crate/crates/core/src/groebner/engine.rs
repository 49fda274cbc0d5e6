//! Buchberger's algorithm with the Gebauer–Möller pair update (both of
//! Buchberger's criteria) and the normal selection strategy.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::Result;
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing, Term};

type Key = SmallVec<[u32; 8]>;

/// Encodes a monomial so that lexicographic comparison of keys agrees with
/// the monomial order.
fn order_key(order: MonomialOrder, m: &Monomial) -> Key {
    let e = m.exponents();
    let mut k = Key::with_capacity(e.len() + 2);
    let grevlex_block = |k: &mut Key, block: &[u32]| {
        k.push(block.iter().sum());
        k.extend(block.iter().rev().map(|x| u32::MAX - x));
    };
    match order {
        MonomialOrder::Grevlex => grevlex_block(&mut k, e),
        MonomialOrder::Lex => k.extend_from_slice(e),
        MonomialOrder::Block(b) => {
            grevlex_block(&mut k, &e[..b]);
            grevlex_block(&mut k, &e[b..]);
        }
    }
    k
}

/// Accumulates terms keyed by the monomial order, so that the largest
/// pending monomial is always at the back.
struct Accumulator {
    order: MonomialOrder,
    p: crate::poly::PrimeChar,
    terms: BTreeMap<Key, Term>,
}

impl Accumulator {
    fn new(ring: &PolyRing, init: &[Term]) -> Self {
        let order = ring.order();
        let terms = init
            .iter()
            .map(|t| (order_key(order, &t.0), t.clone()))
            .collect();
        Accumulator {
            order,
            p: ring.char(),
            terms,
        }
    }

    fn add(&mut self, m: Monomial, c: u64) {
        let key = order_key(self.order, &m);
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert((m, c));
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.p.add(o.get().1, c);
                if s == 0 {
                    o.remove();
                } else {
                    o.get_mut().1 = s;
                }
            }
        }
    }

    fn pop_max(&mut self) -> Option<Term> {
        self.terms.pop_last().map(|(_, t)| t)
    }
}

/// Fully reduces `f` modulo `basis`, whose members must be monic.
/// The remainder has no term divisible by any leading monomial of `basis`.
pub(crate) fn reduce(f: &Poly, basis: &[&Poly]) -> Result<Poly> {
    if f.is_zero() || basis.is_empty() {
        return Ok(f.clone());
    }
    let ring = f.ring();
    let fp = ring.char();
    let mut acc = Accumulator::new(ring, f.terms());
    let mut rem: Vec<Term> = Vec::new();
    while let Some((m, c)) = acc.pop_max() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                debug_assert_eq!(g.leading_coeff(), 1);
                let t = g.leading_monomial().unwrap().quotient_of(&m);
                let k = fp.neg(c);
                for (gm, gc) in &g.terms()[1..] {
                    acc.add(gm.mul(&t)?, fp.mul(k, *gc));
                }
            }
            None => rem.push((m, c)),
        }
    }
    Ok(Poly::from_sorted_terms(ring, rem))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn spoly(a: &Poly, b: &Poly, lcm: &Monomial) -> Result<Poly> {
    let ta = a.leading_monomial().unwrap().quotient_of(lcm);
    let tb = b.leading_monomial().unwrap().quotient_of(lcm);
    let fa = a.mul_term(&ta, 1)?;
    let fb = b.mul_term(&tb, a.ring().p() - 1)?;
    Ok(fa.add_unchecked(&fb))
}

/// Gebauer–Möller update: inserts `h` (index `hi`) into the active basis and
/// prunes the pair list.
fn update(polys: &[Poly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, hi: usize) {
    let lt = |i: usize| polys[i].leading_monomial().unwrap();
    let lh = lt(hi);

    let mut cands: Vec<(usize, Monomial)> = active.iter().map(|&g| (g, lh.lcm(lt(g)))).collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g1, l1)) = cands.pop() {
        let keep = lh.coprime(lt(g1))
            || (!cands.iter().any(|(_, l2)| l2.divides(&l1))
                && !kept.iter().any(|(_, l2)| l2.divides(&l1)));
        if keep {
            kept.push((g1, l1));
        }
    }
    kept.retain(|(g, _)| !lh.coprime(lt(*g)));

    pairs.retain(|pr| {
        !(lh.divides(&pr.lcm) && lh.lcm(lt(pr.i)) != pr.lcm && lh.lcm(lt(pr.j)) != pr.lcm)
    });
    pairs.extend(kept.into_iter().map(|(g, lcm)| Pair { i: g, j: hi, lcm }));

    active.retain(|&g| !lh.divides(lt(g)));
    active.push(hi);
}

fn select(pairs: &[Pair], order: MonomialOrder) -> usize {
    let mut best = 0;
    for (k, pr) in pairs.iter().enumerate().skip(1) {
        let b = &pairs[best].lcm;
        let better = match pr.lcm.degree().cmp(&b.degree()) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => order.cmp(&pr.lcm, b) == Ordering::Less,
        };
        if better {
            best = k;
        }
    }
    best
}

/// The reduced Gröbner basis of the ideal generated by `gens`: monic,
/// inter-reduced, sorted by ascending leading monomial. The zero ideal gives
/// an empty basis and the unit ideal gives `[1]`.
pub fn reduced_groebner_basis(ring: &Arc<PolyRing>, gens: &[Poly]) -> Result<Vec<Poly>> {
    let order = ring.order();
    let mut input: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(Poly::monic)
        .collect();
    if input.iter().any(Poly::is_constant) {
        return Ok(vec![Poly::one(ring)]);
    }
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut polys: Vec<Poly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in input {
        let basis: Vec<&Poly> = active.iter().map(|&i| &polys[i]).collect();
        let h = reduce(&g, &basis)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Poly::one(ring)]);
        }
        polys.push(h.monic());
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        let k = select(&pairs, order);
        let pr = pairs.swap_remove(k);
        let s = spoly(&polys[pr.i], &polys[pr.j], &pr.lcm)?;
        let basis: Vec<&Poly> = active.iter().map(|&i| &polys[i]).collect();
        let h = reduce(&s, &basis)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Poly::one(ring)]);
        }
        polys.push(h.monic());
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    // `active` is a minimal basis; inter-reduce the tails.
    let mut out = Vec::with_capacity(active.len());
    for (k, &i) in active.iter().enumerate() {
        let others: Vec<&Poly> = active
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, &j)| &polys[j])
            .collect();
        let g = &polys[i];
        let (lm, _) = g.leading_term().unwrap().clone();
        let tail = Poly::from_sorted_terms(ring, g.terms()[1..].to_vec());
        let tail = reduce(&tail, &others)?;
        let mut terms = vec![(lm, 1)];
        terms.extend(tail.into_terms());
        out.push(Poly::from_sorted_terms(ring, terms));
    }
    out.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(out)
}
