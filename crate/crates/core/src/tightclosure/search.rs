use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_normal_form, frobenius_power};
use crate::groebner::IdealHandle;
use crate::poly::{same_ring, Poly};
use crate::quotient::QuotientCtx;

/// A user-asserted `p^w0`-weak test element. Only the nonzerodivisor
/// condition is checked.
#[derive(Debug, Clone, Serialize)]
pub struct TestElementSpec {
    #[serde(serialize_with = "ser_poly")]
    pub c: Poly,
    pub w0: u32,
    pub provenance: String,
}

pub(crate) fn ser_poly<S: serde::Serializer>(
    p: &Poly,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl TestElementSpec {
    pub fn new(
        ctx: &QuotientCtx,
        c: Poly,
        w0: u32,
        provenance: impl Into<String>,
    ) -> Result<TestElementSpec> {
        if !same_ring(c.ring(), ctx.ring()) {
            return Err(Error::RingMismatch);
        }
        if !ctx.is_nonzerodivisor(&c)? {
            return Err(Error::InvalidArgument(format!("{c} is a zero divisor")));
        }
        Ok(TestElementSpec {
            c,
            w0,
            provenance: provenance.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TcOutcome {
    /// Every exponent in `from..=to` passed.
    AllPass { from: u32, to: u32 },
    /// Passed below `e`, failed from `e` to the end of the window.
    FailAt { e: u32 },
    /// Failures followed by passes.
    Mixed { passed: Vec<u32>, failed: Vec<u32> },
}

#[derive(Debug, Clone, Serialize)]
pub struct TcSearch {
    pub outcome: TcOutcome,
    /// False when the ideal did not validate as a parameter ideal.
    pub parameter_ideal: bool,
}

/// `c · r^(p^e) ∈ a^[p^e] + J`.
pub(crate) fn tc_check(
    ctx: &QuotientCtx,
    c: &Poly,
    r: &Poly,
    a: &IdealHandle,
    e: u32,
) -> Result<bool> {
    let target = frobenius_power(a, e)?.sum(ctx.defining_ideal())?;
    let image = frobenius_normal_form(r, &target, e)?;
    Ok(target.normal_form(&c.mul(&image)?)?.is_zero())
}

pub(crate) fn classify(from: u32, results: &[(u32, bool)]) -> TcOutcome {
    let passed: Vec<u32> = results
        .iter()
        .filter(|(_, ok)| *ok)
        .map(|(e, _)| *e)
        .collect();
    let failed: Vec<u32> = results
        .iter()
        .filter(|(_, ok)| !*ok)
        .map(|(e, _)| *e)
        .collect();
    match failed.first() {
        None => TcOutcome::AllPass {
            from,
            to: results.last().map_or(from, |(e, _)| *e),
        },
        Some(&first) if passed.iter().all(|e| *e < first) => TcOutcome::FailAt { e: first },
        Some(_) => TcOutcome::Mixed { passed, failed },
    }
}

/// Evaluates `c r^(p^e) ∈ a^[p^e] + J` for `e = w0..=e_max`.
pub fn tc_membership_search(
    r: &Poly,
    a: &IdealHandle,
    spec: &TestElementSpec,
    ctx: &Arc<QuotientCtx>,
    e_max: u32,
) -> Result<TcSearch> {
    if !same_ring(r.ring(), ctx.ring()) || !same_ring(a.ring(), ctx.ring()) {
        return Err(Error::RingMismatch);
    }
    let parameter_ideal = ctx.validate_parameter_ideal(a.gens().to_vec()).is_ok();
    let mut results = Vec::new();
    for e in spec.w0..=e_max.max(spec.w0) {
        results.push((e, tc_check(ctx, &spec.c, r, a, e)?));
    }
    Ok(TcSearch {
        outcome: classify(spec.w0, &results),
        parameter_ideal,
    })
}
