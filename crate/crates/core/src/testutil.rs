use std::sync::Arc;

use crate::groebner::IdealHandle;
use crate::poly::{parse_poly, parse_poly_list, Poly, PolyRing};
use crate::quotient::{ParameterSystem, QuotientCtx, RingFlags};

pub(crate) fn ctx(p: u64, vars: &[&str], j: &str, cm: bool) -> Arc<QuotientCtx> {
    let r = PolyRing::grevlex(p, vars).unwrap();
    let j = IdealHandle::new(&r, parse_poly_list(j, &r).unwrap()).unwrap();
    let flags = RingFlags {
        domain: cm,
        cohen_macaulay: cm,
        equidim_excellent: true,
    };
    QuotientCtx::new(&r, j, flags).unwrap()
}

/// Fermat cubic with the non-parameter variable first, so that its
/// leading term is `z^3` and the frame powers stay reduced.
pub(crate) fn fermat(p: u64) -> Arc<QuotientCtx> {
    ctx(p, &["z", "x", "y"], "x^3+y^3+z^3", true)
}

pub(crate) fn regular(p: u64) -> Arc<QuotientCtx> {
    ctx(p, &["x", "y"], "", true)
}

pub(crate) fn frame(c: &Arc<QuotientCtx>, s: &str) -> Arc<ParameterSystem> {
    c.validate_parameter_ideal(parse_poly_list(s, c.ring()).unwrap())
        .unwrap()
}

pub(crate) fn pp(s: &str, c: &QuotientCtx) -> Poly {
    parse_poly(s, c.ring()).unwrap()
}

pub(crate) fn ideal(s: &str, c: &QuotientCtx) -> IdealHandle {
    IdealHandle::new(c.ring(), parse_poly_list(s, c.ring()).unwrap()).unwrap()
}
