use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_preimage, FrobeniusExponent};
use crate::groebner::IdealHandle;
use crate::poly::{same_ring, Poly};
use crate::quotient::ParameterSystem;

/// The chain `N_0(t) ⊇ N_1(t) ⊇ ..` of numerator ideals at one level.
#[derive(Debug, Clone)]
pub struct LevelChain {
    pub t: u32,
    pub ideals: Vec<IdealHandle>,
    /// Least `i` with `N_i = N_{i+1} = N_{i+2}` among the computed terms.
    pub settled_at: Option<u32>,
}

impl LevelChain {
    fn settle(&mut self) -> Result<()> {
        self.settled_at = None;
        for i in 0..self.ideals.len().saturating_sub(2) {
            let eq1 = self.ideals[i].same_ideal(&self.ideals[i + 1])?;
            if eq1 && self.ideals[i + 1].same_ideal(&self.ideals[i + 2])? {
                self.settled_at = Some(i as u32);
                return Ok(());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainOutcome {
    Stationary,
    /// Level `t` did not settle within `i_max`.
    NotStationary {
        t: u32,
    },
}

#[derive(Debug, Clone)]
pub struct StabilityChain {
    pub c: Poly,
    pub frame: Arc<ParameterSystem>,
    pub m0_used: u32,
    pub t_max: u32,
    pub i_max: u32,
    /// Levels `1..=t_max`.
    pub per_level: Vec<LevelChain>,
    /// Level `t_max + 1`, computed to test whether the index moves.
    pub probe: Option<LevelChain>,
    pub v0_empirical: Option<u32>,
    pub stabilized: bool,
    pub outcome: ChainOutcome,
}

impl StabilityChain {
    pub fn level(&self, t: u32) -> Option<&LevelChain> {
        self.per_level
            .iter()
            .chain(self.probe.as_ref())
            .find(|l| l.t == t)
    }
}

fn chain_term(
    c_pow: &Poly,
    t: u32,
    frame: &ParameterSystem,
    m0: u32,
    i: u32,
) -> Result<IdealHandle> {
    let e = m0.checked_add(i).ok_or(Error::ExponentOverflow)?;
    let q = FrobeniusExponent::new(frame.ctx().ring().char(), e)?.q;
    let level = t.checked_mul(q).ok_or(Error::ExponentOverflow)?;
    frobenius_preimage(&frame.power_ideal(level)?, c_pow, e)
}

fn check_inputs(c: &Poly, frame: &ParameterSystem) -> Result<()> {
    if !frame.is_full() {
        return Err(Error::InvalidArgument(
            "a full system of parameters is required".into(),
        ));
    }
    let ctx = frame.ctx();
    if !ctx.is_cm() {
        return Err(Error::Unsupported(
            "stability chains are only computed for rings asserted Cohen-Macaulay".into(),
        ));
    }
    if !same_ring(c.ring(), ctx.ring()) {
        return Err(Error::RingMismatch);
    }
    if !ctx.is_nonzerodivisor(c)? {
        return Err(Error::InvalidArgument(format!("{c} is a zero divisor")));
    }
    Ok(())
}

fn frobenius_multiplier(c: &Poly, m0: u32) -> Result<Poly> {
    c.frobenius(m0)
}

/// `N_i(t) = {r : c^(p^m0) r^(p^(m0+i)) ∈ (a^{t p^(m0+i)}) + J}` for
/// `i = 0..=i_max`, as ideals of the ambient ring containing `J`.
pub fn n_chain_level(
    c: &Poly,
    t: u32,
    frame: &Arc<ParameterSystem>,
    m0: u32,
    i_max: u32,
) -> Result<Vec<IdealHandle>> {
    check_inputs(c, frame)?;
    let c_pow = frobenius_multiplier(c, m0)?;
    (0..=i_max)
        .map(|i| chain_term(&c_pow, t, frame, m0, i))
        .collect()
}

struct Builder<'a> {
    c_pow: Poly,
    frame: &'a ParameterSystem,
    m0: u32,
    i_max: u32,
}

impl Builder<'_> {
    fn extend_to(&self, chain: &mut LevelChain, last: u32) -> Result<()> {
        let last = last.min(self.i_max);
        while chain.ideals.len() <= last as usize {
            let i = chain.ideals.len() as u32;
            chain
                .ideals
                .push(chain_term(&self.c_pow, chain.t, self.frame, self.m0, i)?);
        }
        chain.settle()
    }

    /// Computes terms until three consecutive ones agree or `i_max` is reached.
    fn until_settled(&self, t: u32) -> Result<LevelChain> {
        let mut chain = LevelChain {
            t,
            ideals: Vec::new(),
            settled_at: None,
        };
        for i in 0..=self.i_max {
            chain
                .ideals
                .push(chain_term(&self.c_pow, t, self.frame, self.m0, i)?);
            let n = chain.ideals.len();
            if n >= 3
                && chain.ideals[n - 3].same_ideal(&chain.ideals[n - 2])?
                && chain.ideals[n - 2].same_ideal(&chain.ideals[n - 1])?
            {
                break;
            }
        }
        chain.settle()?;
        Ok(chain)
    }
}

/// Runs the chain at every level `1..=t_max` until it settles, then extends
/// all levels to `v0 + 2` and probes level `t_max + 1`.
pub fn stability_index(
    c: &Poly,
    frame: &Arc<ParameterSystem>,
    m0: u32,
    t_max: u32,
    i_max: u32,
) -> Result<StabilityChain> {
    check_inputs(c, frame)?;
    if t_max < 1 || i_max < 2 {
        return Err(Error::InvalidArgument(
            "need t_max ≥ 1 and i_max ≥ 2".into(),
        ));
    }
    let b = Builder {
        c_pow: frobenius_multiplier(c, m0)?,
        frame,
        m0,
        i_max,
    };
    let mut per_level = Vec::with_capacity(t_max as usize);
    let mut outcome = ChainOutcome::Stationary;
    for t in 1..=t_max {
        let chain = b.until_settled(t)?;
        if chain.settled_at.is_none() && outcome == ChainOutcome::Stationary {
            outcome = ChainOutcome::NotStationary { t };
        }
        per_level.push(chain);
    }
    let mut v0 = None;
    let mut probe = None;
    let mut stabilized = false;
    if outcome == ChainOutcome::Stationary {
        let v = per_level
            .iter()
            .filter_map(|l| l.settled_at)
            .max()
            .unwrap_or(0);
        for chain in &mut per_level {
            b.extend_to(chain, v + 2)?;
        }
        let extra = b.until_settled(t_max + 1)?;
        stabilized = extra.settled_at.is_some_and(|s| s <= v);
        probe = Some(extra);
        v0 = Some(v);
    }
    Ok(StabilityChain {
        c: c.clone(),
        frame: frame.clone(),
        m0_used: m0,
        t_max,
        i_max,
        per_level,
        probe,
        v0_empirical: v0,
        stabilized,
        outcome,
    })
}
