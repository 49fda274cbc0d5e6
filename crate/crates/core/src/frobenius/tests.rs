use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::{parse_poly, parse_poly_list, PolyRing};
use crate::sample::{random_homogeneous, random_nonzero};

fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::grevlex(p, vars).unwrap()
}

fn pp(s: &str, r: &Arc<PolyRing>) -> Poly {
    parse_poly(s, r).unwrap()
}

fn ideal(s: &str, r: &Arc<PolyRing>) -> IdealHandle {
    IdealHandle::new(r, parse_poly_list(s, r).unwrap()).unwrap()
}

fn same(a: &IdealHandle, b: &IdealHandle) -> bool {
    a.same_ideal(b).unwrap()
}

#[test]
fn exponent_checks_overflow() {
    let ch = PrimeChar::new(7).unwrap();
    assert_eq!(FrobeniusExponent::new(ch, 3).unwrap().q, 343);
    assert_eq!(FrobeniusExponent::new(ch, 20), Err(Error::ExponentOverflow));
}

#[test]
fn power_examples() {
    let r2 = ring(2, &["x", "y"]);
    let p = frobenius_power(&ideal("x, y", &r2), 2).unwrap();
    assert!(same(&p, &ideal("x^4, y^4", &r2)));
    let i = ideal("x^2 + y, x*y", &r2);
    assert!(same(&frobenius_power(&i, 0).unwrap(), &i));
    let r3 = ring(3, &["x", "y"]);
    assert!(same(
        &frobenius_power(&ideal("x+y", &r3), 1).unwrap(),
        &ideal("x^3+y^3", &r3)
    ));
}

#[test]
fn root_examples() {
    let r2 = ring(2, &["x", "y"]);
    let root = frobenius_root(&ideal("x^2*y^3", &r2), 1).unwrap();
    assert!(same(&root, &ideal("x*y", &r2)));
    assert!(same(
        &frobenius_root(&ideal("x^4, y^4", &r2), 2).unwrap(),
        &ideal("x, y", &r2)
    ));
    // a root that mixes components: x^2 + x*y^2 = (x)^2·1 + (y)^2·x
    assert!(same(
        &frobenius_root(&ideal("x^2 + x*y^2", &r2), 1).unwrap(),
        &ideal("x, y", &r2)
    ));
}

#[test]
fn root_of_power_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2u64, 3] {
        let r = ring(p, &["x", "y"]);
        for _ in 0..25 {
            let gens = (0..rng.gen_range(1..=2))
                .map(|_| random_nonzero(&r, &mut rng, 3, 3))
                .collect();
            let i = IdealHandle::new(&r, gens).unwrap();
            let e = rng.gen_range(1..=2);
            let back = frobenius_root(&frobenius_power(&i, e).unwrap(), e).unwrap();
            assert!(same(&back, &i), "root of power changed {i}");
            let pre =
                frobenius_preimage(&frobenius_power(&i, e).unwrap(), &Poly::one(&r), e).unwrap();
            assert!(same(&pre, &i), "preimage of power changed {i}");
        }
    }
}

#[test]
fn preimage_examples() {
    let r2 = ring(2, &["x", "y"]);
    let one = Poly::one(&r2);
    let pre = frobenius_preimage(&ideal("x^2*y^3", &r2), &one, 1).unwrap();
    assert!(same(&pre, &ideal("x*y^2", &r2)));
    assert!(frobenius_preimage(&ideal("x", &r2), &pp("x", &r2), 1)
        .unwrap()
        .is_unit()
        .unwrap());
    assert!(frobenius_preimage(&ideal("", &r2), &one, 2)
        .unwrap()
        .is_zero());
    // (x^3, y^3) with multiplier x: r^2 x ∈ (x^3, y^3) iff r ∈ (x, y^2)
    let pre = frobenius_preimage(&ideal("x^3, y^3", &r2), &pp("x", &r2), 1).unwrap();
    assert!(same(&pre, &ideal("x, y^2", &r2)));
}

#[test]
fn preimage_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in [2u64, 3] {
        let r = ring(p, &["x", "y", "z"]);
        for _ in 0..12 {
            let mut gens: Vec<Poly> = ["x", "y", "z"]
                .iter()
                .map(|v| pp(&format!("{v}^{}", rng.gen_range(2..=5)), &r))
                .collect();
            for _ in 0..rng.gen_range(0..=2) {
                let d = rng.gen_range(2..=4);
                gens.push(random_homogeneous(&r, &mut rng, d, 3));
            }
            let k = IdealHandle::new(&r, gens).unwrap();
            let mult = if rng.gen_bool(0.5) {
                Poly::one(&r)
            } else {
                random_homogeneous(&r, &mut rng, 1, 2)
            };
            if mult.is_zero() {
                continue;
            }
            let e = rng.gen_range(1..=2);
            let a = frobenius_preimage_graded(&k, &mult, e).unwrap();
            let b = frobenius_preimage_by_elimination(&k, &mult, e).unwrap();
            assert!(same(&a, &b), "routes disagree on {k} with {mult}, e={e}");
        }
    }
}

fn fermat(p: u64) -> (Arc<PolyRing>, IdealHandle) {
    let r = ring(p, &["x", "y", "z"]);
    let j = ideal("x^3+y^3+z^3", &r);
    (r, j)
}

#[test]
fn closure_examples() {
    let r = ring(5, &["x", "y"]);
    let zero = IdealHandle::zero(&r);
    let c = frobenius_closure(&ideal("x, y", &r), &zero, 5).unwrap();
    assert!(same(&c.ideal, &ideal("x, y", &r)));
    assert_eq!(c.status, ClosureStatus::Stabilized { at: 0 });
    assert!(c.certificates.is_empty());

    let c = frobenius_closure(&ideal("1", &r), &zero, 5).unwrap();
    assert_eq!(c.status, ClosureStatus::Unit);
    assert!(c.ideal.is_unit().unwrap());

    let (r2, j) = fermat(2);
    let c = frobenius_closure(&ideal("x, y", &r2), &j, 5).unwrap();
    assert!(c.ideal.contains(&pp("z^2", &r2)).unwrap());
    assert!(!c.ideal.contains(&pp("z", &r2)).unwrap());
    assert_eq!(c.status, ClosureStatus::Stabilized { at: 1 });
    let cert: Vec<(String, u32)> = c
        .certificates
        .iter()
        .map(|(g, e)| (g.to_string(), e.e))
        .collect();
    assert_eq!(cert, [("z^2".to_string(), 1)]);

    assert!(matches!(
        frobenius_closure(&ideal("x", &r), &zero, 0),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn closure_chain_is_monotone() {
    let (r2, j) = fermat(2);
    let i = ideal("x, y", &r2);
    let one = Poly::one(&r2);
    let mut prev = i.sum(&j).unwrap();
    for e in 1..=3 {
        let level =
            frobenius_preimage(&frobenius_power(&i, e).unwrap().sum(&j).unwrap(), &one, e).unwrap();
        assert!(level.contains_ideal(&prev).unwrap());
        prev = level;
    }
}

#[test]
fn membership_examples() {
    let (r2, j) = fermat(2);
    let i = ideal("x, y", &r2);
    assert_eq!(
        frobenius_membership(&pp("x*z", &r2), &i, &j, 3)
            .unwrap()
            .map(|e| e.e),
        Some(0)
    );
    assert_eq!(
        frobenius_membership(&pp("z^2", &r2), &i, &j, 3)
            .unwrap()
            .map(|e| e.e),
        Some(1)
    );
    assert_eq!(
        frobenius_membership(&pp("z", &r2), &i, &j, 3).unwrap(),
        None
    );
    let r3 = ring(3, &["x", "y"]);
    let zero = IdealHandle::zero(&r3);
    assert_eq!(
        frobenius_membership(&pp("y", &r3), &ideal("x", &r3), &zero, 4).unwrap(),
        None
    );
}

#[test]
fn fermat_cubic_p7_is_frobenius_closed_at_level_one() {
    let (r7, j) = fermat(7);
    let c = frobenius_closure(&ideal("x, y", &r7), &j, 5).unwrap();
    assert_eq!(c.status, ClosureStatus::Stabilized { at: 0 });
    assert!(!c.ideal.contains(&pp("z^2", &r7)).unwrap());
}
