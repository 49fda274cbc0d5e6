use serde::Serialize;

use super::chain::StabilityChain;
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::localcoh::CechClass;
use crate::poly::Poly;

/// Verdict of a bounded implication check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypothesis never held on the window.
    Vacuous,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Hs5Report {
    pub containments_checked: usize,
    pub stationarity_checked: usize,
    pub closure_checked: usize,
    pub violations: Vec<String>,
}

impl Hs5Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks descending containment, stationarity after the first equality,
/// and that `N_v0(t)` is carried into `N_v0(tp)` by `r ↦ r^p`.
pub fn verify_hs5_properties(chain: &StabilityChain) -> Result<Hs5Report> {
    let mut rep = Hs5Report::default();
    let levels: Vec<_> = chain.per_level.iter().chain(chain.probe.as_ref()).collect();
    for l in &levels {
        for (i, w) in l.ideals.windows(2).enumerate() {
            rep.containments_checked += 1;
            if !w[0].contains_ideal(&w[1])? {
                rep.violations.push(format!(
                    "level {}: N_{} does not contain N_{}",
                    l.t,
                    i,
                    i + 1
                ));
            }
        }
        let mut equal_seen = None;
        for (i, w) in l.ideals.windows(2).enumerate() {
            let eq = w[0].same_ideal(&w[1])?;
            if let Some(first) = equal_seen {
                rep.stationarity_checked += 1;
                if !eq {
                    rep.violations.push(format!(
                        "level {}: N_{first} = N_{} but N_{i} != N_{}",
                        l.t,
                        first + 1,
                        i + 1
                    ));
                }
            } else if eq {
                equal_seen = Some(i);
            }
        }
    }
    let Some(v0) = chain.v0_empirical else {
        return Ok(rep);
    };
    let p = chain.c.ring().p();
    for l in &levels {
        let Some(top) = u64::from(l.t).checked_mul(p) else {
            continue;
        };
        let Some(target) = levels.iter().find(|m| u64::from(m.t) == top) else {
            continue;
        };
        let (Some(src), Some(dst)) = (l.ideals.get(v0 as usize), target.ideals.get(v0 as usize))
        else {
            continue;
        };
        for r in src.groebner_basis()? {
            rep.closure_checked += 1;
            if !dst.contains(&r.frobenius(1)?)? {
                rep.violations.push(format!(
                    "level {}: ({r})^p is not in N_{v0} at level {top}",
                    l.t
                ));
            }
        }
    }
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct ImplicationReport {
    pub verdict: Verdict,
    /// `(n, holds)` for every exponent evaluated.
    pub trace: Vec<(u32, bool)>,
}

fn all_killed(
    c: &Poly,
    h: &CechClass,
    ns: impl Iterator<Item = u32>,
    k_max: u32,
) -> Result<Vec<(u32, bool)>> {
    ns.map(|n| Ok((n, h.killed_by(c, n, k_max)?))).collect()
}

/// If `c^(p^m0) x^n1 h = 0` then `c^(p^m0) x^n h = 0` for `m0 ≤ n ≤ e_max`.
pub fn verify_cor_hs7(
    c: &Poly,
    h: &CechClass,
    m0: u32,
    v0: u32,
    n1: u32,
    e_max: u32,
    k_max: u32,
) -> Result<ImplicationReport> {
    if n1 < m0 + v0 {
        return Err(Error::InvalidArgument("n1 must be at least m0 + v0".into()));
    }
    let c_pow = c.frobenius(m0)?;
    let hyp = h.killed_by(&c_pow, n1, k_max)?;
    let mut trace = vec![(n1, hyp)];
    if !hyp {
        return Ok(ImplicationReport {
            verdict: Verdict::Vacuous,
            trace,
        });
    }
    trace.extend(all_killed(
        &c_pow,
        h,
        (m0..=e_max).filter(|n| *n != n1),
        k_max,
    )?);
    let verdict = if trace.iter().all(|(_, ok)| *ok) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ImplicationReport { verdict, trace })
}

/// Whether `c · x^n` kills the image of `h` in `G = H/Γ_x(H)`, using
/// `c x^n h ∈ Γ_x(H) ⟺ c^(p^m0) x^(m0+n) h = 0`.
fn killed_in_quotient(c: &Poly, h: &CechClass, m0: u32, n: u32, k_max: u32) -> Result<bool> {
    h.killed_by(&c.frobenius(m0)?, m0 + n, k_max)
}

/// If every generator of `c` kills `x^n g` for `w0 ≤ n ≤ e_max` and
/// `a ∈ √c`, checks `a x^n g = 0` for `n ≤ e_max − max(w0, s)`, where `p^s`
/// bounds the nilpotency exponent of `a` modulo `c`.
pub fn verify_tc3(
    cs: &[Poly],
    a: &Poly,
    h: &CechClass,
    m0: u32,
    w0: u32,
    e_max: u32,
    k_max: u32,
) -> Result<ImplicationReport> {
    let ctx = h.ctx();
    let c_ideal = ctx.lift_gens(cs)?;
    let p = ctx.ring().p();
    let mut s = None;
    for j in 0..=e_max {
        if c_ideal.contains(&a.pow(p.pow(j))?)? {
            s = Some(j);
            break;
        }
    }
    let mut trace = Vec::new();
    for n in w0..=e_max {
        for c in cs {
            let ok = killed_in_quotient(c, h, m0, n, k_max)?;
            trace.push((n, ok));
            if !ok {
                return Ok(ImplicationReport {
                    verdict: Verdict::Vacuous,
                    trace,
                });
            }
        }
    }
    let Some(s) = s else {
        return Ok(ImplicationReport {
            verdict: Verdict::Vacuous,
            trace,
        });
    };
    let reach = e_max.saturating_sub(w0.max(s));
    let mut verdict = Verdict::Pass;
    for n in 0..=reach {
        let ok = killed_in_quotient(a, h, m0, n, k_max)?;
        trace.push((n, ok));
        if !ok {
            verdict = Verdict::Fail;
        }
    }
    Ok(ImplicationReport { verdict, trace })
}

#[derive(Debug, Clone, Serialize)]
pub struct Hs3Report {
    /// Annihilation by `c^(p^m0) x^n` for `m0 + t0 ≤ n ≤ e_max`.
    pub frobenius_twisted: bool,
    /// `c x^n h ∈ Γ_x(H)` for `t0 ≤ n ≤ e_max − m0`, decided by torsion order.
    pub quotient: bool,
    /// Annihilation by `rad^(p^m0) x^n` for `m0 ≤ n ≤ e_max`.
    pub radical: bool,
}

impl Hs3Report {
    pub fn agree(&self) -> bool {
        self.frobenius_twisted == self.quotient && self.quotient == self.radical
    }
}

/// The three descriptions of the annihilator of `⊕ c x^n` in `G`, evaluated
/// on one class. `radical` lists generators of `√c`; that they generate
/// exactly the radical is the caller's assertion, only `rad ⊆ √c` and
/// `c ⊆ rad` are checked.
#[allow(clippy::too_many_arguments)]
pub fn compare_hs3(
    cs: &[Poly],
    radical: &[Poly],
    h: &CechClass,
    m0: u32,
    t0: u32,
    e_max: u32,
    k_max: u32,
) -> Result<Hs3Report> {
    let ctx = h.ctx();
    let c_ideal = ctx.lift_gens(cs)?;
    let rad_ideal: IdealHandle = ctx.lift_gens(radical)?;
    for r in radical {
        if !c_ideal.radical_contains(r)? {
            return Err(Error::InvalidArgument(format!("{r} is not in the radical")));
        }
    }
    if !rad_ideal.contains_ideal(&c_ideal)? {
        return Err(Error::InvalidArgument("the radical must contain c".into()));
    }
    let mut twisted = true;
    for c in cs {
        let c_pow = c.frobenius(m0)?;
        for n in (m0 + t0)..=e_max {
            twisted &= h.killed_by(&c_pow, n, k_max)?;
        }
    }
    let mut quotient = true;
    for c in cs {
        for n in t0..=e_max.saturating_sub(m0) {
            let image = h.x_power(n)?.scalar_mul(c)?;
            quotient &= image.torsion_order(m0.max(1) + e_max, k_max)?.is_some();
        }
    }
    let mut rad = true;
    for a in radical {
        let a_pow = a.frobenius(m0)?;
        for n in m0..=e_max {
            rad &= h.killed_by(&a_pow, n, k_max)?;
        }
    }
    Ok(Hs3Report {
        frobenius_twisted: twisted,
        quotient,
        radical: rad,
    })
}
