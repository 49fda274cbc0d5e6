use std::sync::Arc;

use serde::Serialize;

use super::search::{classify, tc_check, TcOutcome, TestElementSpec};
use crate::error::{Error, Result};
use crate::frobenius::{frobenius_normal_form, frobenius_power};
use crate::localcoh::{hsl_estimate, HslEstimate};
use crate::poly::{same_ring, Poly};
use crate::quotient::ParameterSystem;
use crate::stability::{stability_index, StabilityChain};

#[derive(Debug, Clone)]
pub struct TestExponentReport {
    pub spec: TestElementSpec,
    pub hsl: HslEstimate,
    pub chain: StabilityChain,
    /// `m0 + v0`, absent when the chain did not settle.
    pub e0: Option<u32>,
    pub trials: Vec<Trial>,
}

impl TestExponentReport {
    pub fn m0(&self) -> u32 {
        self.hsl.m0_lower
    }

    pub fn v0(&self) -> Option<u32> {
        self.chain.v0_empirical
    }

    /// Both components settled within their budgets.
    pub fn stabilized(&self) -> bool {
        self.hsl.stabilized && self.chain.stabilized
    }

    pub fn record(&mut self, trial: Trial) {
        self.trials.push(trial);
    }

    pub fn counterexamples(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| matches!(t.verdict, TrialVerdict::Counterexample { .. }))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrialVerdict {
    Pass {
        n1: u32,
    },
    Vacuous,
    /// The single check held at `n1` but membership failed at `failed`.
    Counterexample {
        n1: u32,
        failed: Vec<u32>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Trial {
    #[serde(serialize_with = "super::search::ser_poly")]
    pub r: Poly,
    pub ideal: Vec<String>,
    pub verdict: TrialVerdict,
    /// `(e, holds)` for the conclusion window.
    pub trace: Vec<(u32, bool)>,
}

/// Runs the HSL estimate and the stability chain of `c` on the frame.
pub fn test_exponent_estimate(
    spec: &TestElementSpec,
    frame: &Arc<ParameterSystem>,
    t_max: u32,
    e_max: u32,
    i_max: u32,
) -> Result<TestExponentReport> {
    let ctx = frame.ctx();
    if !ctx.flags().equidim_excellent {
        return Err(Error::Unsupported(
            "test exponents need a ring asserted equidimensional and excellent".into(),
        ));
    }
    let hsl = hsl_estimate(frame, t_max, e_max)?;
    let chain = stability_index(&spec.c, frame, hsl.m0_lower, t_max, i_max)?;
    let e0 = chain.v0_empirical.map(|v| v + hsl.m0_lower);
    Ok(TestExponentReport {
        spec: spec.clone(),
        hsl,
        chain,
        e0,
        trials: Vec::new(),
    })
}

fn require_e0(report: &TestExponentReport, e_max: u32) -> Result<u32> {
    let e0 = report
        .e0
        .ok_or_else(|| Error::InvalidArgument("the report has no test exponent".into()))?;
    if e_max <= e0 {
        return Err(Error::InvalidArgument(format!(
            "e_max must exceed e0 = {e0}"
        )));
    }
    Ok(e0)
}

fn conclude(
    spec: &TestElementSpec,
    a: &ParameterSystem,
    r: &Poly,
    n1: u32,
    e_max: u32,
) -> Result<(TrialVerdict, Vec<(u32, bool)>)> {
    let ctx = a.ctx();
    let ideal = a.ideal();
    let mut trace = Vec::new();
    for e in spec.w0..=e_max {
        trace.push((e, tc_check(ctx, &spec.c, r, &ideal, e)?));
    }
    let failed: Vec<u32> = trace
        .iter()
        .filter(|(_, ok)| !*ok)
        .map(|(e, _)| *e)
        .collect();
    let verdict = if failed.is_empty() {
        TrialVerdict::Pass { n1 }
    } else {
        TrialVerdict::Counterexample { n1, failed }
    };
    Ok((verdict, trace))
}

fn trial(r: &Poly, a: &ParameterSystem, verdict: TrialVerdict, trace: Vec<(u32, bool)>) -> Trial {
    Trial {
        r: r.clone(),
        ideal: a.elems().iter().map(|g| g.to_string()).collect(),
        verdict,
        trace,
    }
}

/// If `c r^(p^n1) ∈ a^[p^n1] + J` for some `e0 ≤ n1 ≤ e_max`, checks
/// `c r^(p^e) ∈ a^[p^e] + J` for every `w0 ≤ e ≤ e_max`.
pub fn verify_tc4(
    spec: &TestElementSpec,
    a: &ParameterSystem,
    r: &Poly,
    report: &TestExponentReport,
    e_max: u32,
) -> Result<Trial> {
    let e0 = require_e0(report, e_max)?;
    if !same_ring(r.ring(), a.ctx().ring()) {
        return Err(Error::RingMismatch);
    }
    let ideal = a.ideal();
    for n1 in e0..=e_max {
        if tc_check(a.ctx(), &spec.c, r, &ideal, n1)? {
            let (verdict, trace) = conclude(spec, a, r, n1, e_max)?;
            return Ok(trial(r, a, verdict, trace));
        }
    }
    Ok(trial(r, a, TrialVerdict::Vacuous, Vec::new()))
}

/// As [`verify_tc4`], with the single check relaxed to tight-closure
/// evidence: `c r^(p^n1)` passes the membership search in `a^[p^n1]` over
/// `w0 ≤ e ≤ e_max − n1`, for some `e0 + 1 ≤ n1 < e_max`.
pub fn verify_tc8_ii(
    spec: &TestElementSpec,
    a: &ParameterSystem,
    r: &Poly,
    report: &TestExponentReport,
    e_max: u32,
) -> Result<Trial> {
    let e0 = require_e0(report, e_max)?;
    if !same_ring(r.ring(), a.ctx().ring()) {
        return Err(Error::RingMismatch);
    }
    let ctx = a.ctx();
    let ideal = a.ideal();
    for n1 in (e0 + 1)..e_max {
        let inner_max = e_max - n1;
        if inner_max < spec.w0 {
            break;
        }
        let bracket = frobenius_power(&ideal, n1)?;
        // c r^(p^n1) only matters modulo a^[p^n1] + J
        let outer = bracket.sum(ctx.defining_ideal())?;
        let s = outer.normal_form(&spec.c.mul(&frobenius_normal_form(r, &outer, n1)?)?)?;
        let mut results = Vec::new();
        for e in spec.w0..=inner_max {
            results.push((e, tc_check(ctx, &spec.c, &s, &bracket, e)?));
        }
        if matches!(classify(spec.w0, &results), TcOutcome::AllPass { .. }) {
            let (verdict, trace) = conclude(spec, a, r, n1, e_max)?;
            return Ok(trial(r, a, verdict, trace));
        }
    }
    Ok(trial(r, a, TrialVerdict::Vacuous, Vec::new()))
}

/// `{r : c r^(p^e) ∈ a^[p^e] + J}`; elements of it fire the single check of
/// [`verify_tc4`] at `n1 = e`, which makes them the boundary cases.
pub fn boundary_ideal(
    spec: &TestElementSpec,
    a: &ParameterSystem,
    e: u32,
) -> Result<crate::groebner::IdealHandle> {
    let target = frobenius_power(&a.ideal(), e)?.sum(a.ctx().defining_ideal())?;
    crate::frobenius::frobenius_preimage(&target, &spec.c, e)
}
