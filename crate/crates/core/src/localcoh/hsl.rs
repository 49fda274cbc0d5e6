use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{
    frobenius_closure, frobenius_normal_form, ClosureStatus, FrobeniusExponent,
};
use crate::groebner::IdealHandle;
use crate::poly::Poly;
use crate::quotient::ParameterSystem;

/// The numerator ideal `{r : [r/a^t] is x-torsion}` at one level.
#[derive(Debug, Clone)]
pub struct GammaLevel {
    pub t: u32,
    pub ideal: IdealHandle,
    pub status: ClosureStatus,
    /// Elements beyond `(a^t) + J` with the exponent that kills them.
    pub certificates: Vec<(Poly, FrobeniusExponent)>,
}

impl GammaLevel {
    /// Whether the closure chain was cut off by the `e` budget.
    pub fn truncated(&self) -> bool {
        self.status == ClosureStatus::Truncated
    }
}

#[derive(Debug, Clone)]
pub struct LevelHsl {
    pub gamma: GammaLevel,
    /// Least `e` with `Γ_t^[p^e] ⊆ (a^{t p^e}) + J`, if found within budget.
    pub kill_exponent: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HslEstimate {
    pub m0_lower: u32,
    pub t_max: u32,
    pub e_max: u32,
    /// The running maximum did not move over the last two levels, and no
    /// level hit a budget.
    pub stabilized: bool,
    #[serde(skip)]
    pub levels: Vec<LevelHsl>,
}

fn require_cm(frame: &ParameterSystem) -> Result<()> {
    if !frame.is_full() {
        return Err(Error::InvalidArgument(
            "a full system of parameters is required".into(),
        ));
    }
    if !frame.ctx().is_cm() {
        return Err(Error::Unsupported(
            "x-torsion levels are only computed for rings asserted Cohen-Macaulay".into(),
        ));
    }
    Ok(())
}

/// `Γ_x(H)` at level `t`, as the Frobenius closure of `(a_1^t, .., a_d^t) + J`.
pub fn gamma_x_level(t: u32, frame: &Arc<ParameterSystem>, e_max: u32) -> Result<GammaLevel> {
    require_cm(frame)?;
    let ctx = frame.ctx();
    let ring = ctx.ring();
    if t == 0 {
        return Ok(GammaLevel {
            t,
            ideal: IdealHandle::unit(ring),
            status: ClosureStatus::Unit,
            certificates: Vec::new(),
        });
    }
    let gens = frame
        .elems()
        .iter()
        .map(|a| a.pow(u64::from(t)))
        .collect::<Result<Vec<_>>>()?;
    let base = IdealHandle::new(ring, gens)?;
    let closure = frobenius_closure(&base, ctx.defining_ideal(), e_max)?;
    Ok(GammaLevel {
        t,
        ideal: closure.ideal,
        status: closure.status,
        certificates: closure.certificates,
    })
}

fn kill_exponent(gamma: &GammaLevel, frame: &ParameterSystem, e_max: u32) -> Result<Option<u32>> {
    let gens = gamma.ideal.groebner_basis()?;
    let ch = frame.ctx().ring().char();
    'e: for e in 0..=e_max {
        let q = FrobeniusExponent::new(ch, e)?.q;
        let level = gamma.t.checked_mul(q).ok_or(Error::ExponentOverflow)?;
        let target = frame.power_ideal(level)?;
        for g in gens {
            if !frobenius_normal_form(g, &target, e)?.is_zero() {
                continue 'e;
            }
        }
        return Ok(Some(e));
    }
    Ok(None)
}

/// Empirical lower bound for the HSL number over levels `1..=t_max`.
pub fn hsl_estimate(frame: &Arc<ParameterSystem>, t_max: u32, e_max: u32) -> Result<HslEstimate> {
    require_cm(frame)?;
    if t_max < 1 || e_max < 1 {
        return Err(Error::InvalidArgument(
            "t_max and e_max must be positive".into(),
        ));
    }
    let mut levels = Vec::with_capacity(t_max as usize);
    let mut running = Vec::with_capacity(t_max as usize);
    let mut complete = true;
    let mut m0 = 0;
    for t in 1..=t_max {
        let gamma = gamma_x_level(t, frame, e_max)?;
        let kill = kill_exponent(&gamma, frame, e_max)?;
        complete &= !gamma.truncated() && kill.is_some();
        m0 = m0.max(kill.unwrap_or(0));
        running.push(m0);
        levels.push(LevelHsl {
            gamma,
            kill_exponent: kill,
        });
    }
    let settled = running.len() >= 3 && running[running.len() - 3..].iter().all(|v| *v == m0);
    Ok(HslEstimate {
        m0_lower: m0,
        t_max,
        e_max,
        stabilized: complete && settled,
        levels,
    })
}
