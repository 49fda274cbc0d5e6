use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::poly::{parse_poly, parse_poly_list, Poly, PolyRing};

fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::grevlex(p, vars).unwrap()
}

fn pp(s: &str, r: &Arc<PolyRing>) -> Poly {
    parse_poly(s, r).unwrap()
}

fn ideal(s: &str, r: &Arc<PolyRing>) -> IdealHandle {
    IdealHandle::new(r, parse_poly_list(s, r).unwrap()).unwrap()
}

fn gb_strings(i: &IdealHandle) -> Vec<String> {
    i.groebner_basis()
        .unwrap()
        .iter()
        .map(|g| g.to_string())
        .collect()
}

#[test]
fn gb_examples() {
    let r2 = ring(2, &["x", "y"]);
    assert_eq!(gb_strings(&ideal("x", &r2)), ["x"]);
    let r3 = ring(3, &["x", "y"]);
    let i = ideal("x^2+y^2, x*y", &r3);
    assert!(i.groebner_basis().unwrap().contains(&pp("y^3", &r3)));
    assert_eq!(gb_strings(&i), ["x*y", "x^2 + y^2", "y^3"]);
    assert_eq!(gb_strings(&ideal("x+1, y^2, 1", &r3)), ["1"]);
    assert!(ideal("", &r3).groebner_basis().unwrap().is_empty());
}

#[test]
fn gb_is_cached_and_idempotent() {
    let r = ring(5, &["x", "y", "z"]);
    let i = ideal("x^2 - y*z, y^2 - x*z, z^2 - x*y", &r);
    let a = i.groebner_basis().unwrap().as_ptr();
    let b = i.groebner_basis().unwrap().as_ptr();
    assert_eq!(a, b);
    let again = IdealHandle::new(&r, i.groebner_basis().unwrap().to_vec()).unwrap();
    assert_eq!(again.groebner_basis().unwrap(), i.groebner_basis().unwrap());
}

#[test]
fn gb_unique_under_permutation_and_duplicates() {
    let r = ring(7, &["x", "y", "z"]);
    let a = ideal("x^3+y^3+z^3, x*y - z^2, x + y + z", &r);
    let b = ideal("x + y + z, x*y - z^2, x*y - z^2, 3*x^3+3*y^3+3*z^3", &r);
    assert_eq!(a.groebner_basis().unwrap(), b.groebner_basis().unwrap());
}

#[test]
fn lex_and_block_orders() {
    use crate::poly::{MonomialOrder, PrimeChar};
    let r = PolyRing::new(PrimeChar::new(7).unwrap(), &["x", "y"], MonomialOrder::Lex).unwrap();
    let i = ideal("x^2 + y, x*y - 1", &r);
    // x = -y^2 from the first after eliminating: y^3 = -1
    let gb = gb_strings(&i);
    assert_eq!(gb.last().unwrap(), "x + y^2");
    assert!(i.contains(&pp("y^3 + 1", &r)).unwrap());
}

#[test]
fn normal_form_examples() {
    let r = ring(2, &["x", "y"]);
    assert!(ideal("x, y^2+x", &r)
        .normal_form(&pp("y^2", &r))
        .unwrap()
        .is_zero());
    let r7 = ring(7, &["x", "y", "z"]);
    assert_eq!(
        ideal("x, y", &r7).normal_form(&pp("z", &r7)).unwrap(),
        pp("z", &r7)
    );
    let r3 = ring(3, &["x", "y"]);
    assert_eq!(
        ideal("x^2+y^2", &r3)
            .normal_form(&pp("x^2*y", &r3))
            .unwrap(),
        pp("2*y^3", &r3)
    );
    let other = ring(3, &["a", "b"]);
    assert_eq!(
        ideal("x", &r3).normal_form(&pp("a", &other)),
        Err(Error::RingMismatch)
    );
}

#[test]
fn membership_examples() {
    let r = ring(5, &["x", "y"]);
    assert!(ideal("x, y", &r).contains(&pp("x+y", &r)).unwrap());
    assert!(ideal("x-1, x", &r).contains(&Poly::one(&r)).unwrap());
    let r2 = ring(2, &["x", "y", "z"]);
    assert!(!ideal("x, y, x^3+y^3+z^3", &r2)
        .contains(&pp("z^2", &r2))
        .unwrap());
    assert!(ideal("x, y, x^3+y^3+z^3", &r2)
        .contains(&pp("z^3", &r2))
        .unwrap());
}

#[test]
fn colon_examples() {
    let r = ring(3, &["x", "y"]);
    let x = pp("x", &r);
    assert!(ideal("x^2", &r)
        .colon(&x)
        .unwrap()
        .same_ideal(&ideal("x", &r))
        .unwrap());
    assert!(ideal("x*y", &r)
        .colon(&x)
        .unwrap()
        .same_ideal(&ideal("y", &r))
        .unwrap());
    assert!(ideal("x^2, x*y", &r)
        .colon(&x)
        .unwrap()
        .same_ideal(&ideal("x, y", &r))
        .unwrap());
    assert!(ideal("x", &r).colon(&x).unwrap().is_unit().unwrap());
    assert!(ideal("", &r).colon(&x).unwrap().is_zero());
    assert!(matches!(
        ideal("x", &r).colon(&Poly::zero(&r)),
        Err(Error::ZeroElement(_))
    ));
    // non-monomial: ((x^2 + y^3) : (x + y)) over F_3
    let i = ideal("x^3 + y^3", &r);
    let q = i.colon(&pp("x + y", &r)).unwrap();
    // x^3 + y^3 = (x + y)^3 in char 3
    assert!(q.same_ideal(&ideal("x^2 + 2*x*y + y^2", &r)).unwrap());
}

#[test]
fn intersect_examples() {
    let r = ring(5, &["x", "y"]);
    assert!(ideal("x", &r)
        .intersect(&ideal("y", &r))
        .unwrap()
        .same_ideal(&ideal("x*y", &r))
        .unwrap());
    assert!(ideal("x", &r)
        .intersect(&ideal("x", &r))
        .unwrap()
        .same_ideal(&ideal("x", &r))
        .unwrap());
    assert!(ideal("x^2, y", &r)
        .intersect(&ideal("x", &r))
        .unwrap()
        .same_ideal(&ideal("x^2, x*y", &r))
        .unwrap());
    assert!(ideal("", &r).intersect(&ideal("x", &r)).unwrap().is_zero());
    assert!(ideal("1", &r)
        .intersect(&ideal("x", &r))
        .unwrap()
        .same_ideal(&ideal("x", &r))
        .unwrap());
}

#[test]
fn radical_examples() {
    let r = ring(3, &["x", "y"]);
    assert!(ideal("x^2", &r).radical_contains(&pp("x", &r)).unwrap());
    assert!(!ideal("x^2", &r).radical_contains(&pp("y", &r)).unwrap());
    assert!(ideal("(x+y)^3, x^5", &r)
        .radical_contains(&pp("x+y", &r))
        .unwrap());
    assert!(ideal("(x+y)^3, x^5", &r)
        .radical_contains(&pp("y", &r))
        .unwrap());
    assert!(!ideal("x*y", &r).radical_contains(&pp("x+y", &r)).unwrap());
}

#[test]
fn dimension_examples() {
    let r = ring(7, &["x", "y"]);
    assert_eq!(ideal("x", &r).dimension().unwrap(), 1);
    assert_eq!(ideal("x, y", &r).dimension().unwrap(), 0);
    assert_eq!(ideal("", &r).dimension().unwrap(), 2);
    assert_eq!(ideal("x*y", &r).dimension().unwrap(), 1);
    assert_eq!(ideal("x - 1, x", &r).dimension(), Err(Error::UnitIdeal));
    let r3 = ring(7, &["x", "y", "z"]);
    assert_eq!(ideal("x^3+y^3+z^3", &r3).dimension().unwrap(), 2);
    assert_eq!(ideal("x^3+y^3+z^3, x, y", &r3).dimension().unwrap(), 0);
}
