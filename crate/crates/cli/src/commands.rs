use std::fmt::Write as _;
use std::sync::Arc;

use charp_core::frobenius::{
    frobenius_closure, frobenius_power, frobenius_preimage, frobenius_root, ClosureStatus,
    FrobeniusExponent,
};
use charp_core::localcoh::{hsl_estimate, CechClass, HslEstimate, ZeroTest};
use charp_core::quotient::ParameterSystem;
use charp_core::sample::random_poly;
use charp_core::stability::{
    stability_index, verify_cor_hs7, verify_hs5_properties, ChainOutcome, StabilityChain, Verdict,
};
use charp_core::tightclosure::{
    boundary_ideal, tc_membership_search, test_exponent_estimate, verify_tc4, verify_tc8_ii,
    TcOutcome, TestElementSpec, TestExponentReport, Trial, TrialVerdict,
};
use charp_core::{parse_poly, parse_poly_list, Error, IdealHandle, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{Command, ElementArgs, Theorem};
use crate::spec::{Budgets, Built, ExperimentSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

pub struct Env {
    pub spec: ExperimentSpec,
    pub built: Built,
    pub budgets: Budgets,
    pub seed: Option<u64>,
}

pub struct Outcome {
    pub code: i32,
    pub result: Value,
    pub text: String,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Invariant(_) => EXIT_INVARIANT,
            Error::ExponentOverflow => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn strs(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

impl Env {
    fn poly(&self, s: &str) -> Res<Poly> {
        Ok(parse_poly(s, &self.built.ring)?)
    }

    fn ideal(&self, s: &str) -> Res<IdealHandle> {
        Ok(IdealHandle::new(
            &self.built.ring,
            parse_poly_list(s, &self.built.ring)?,
        )?)
    }

    fn j(&self) -> &IdealHandle {
        self.built.ctx.defining_ideal()
    }

    fn frame(&self, over: Option<&str>) -> Res<Arc<ParameterSystem>> {
        let gens: Vec<String> = match (over, &self.spec.frame) {
            (Some(s), _) => vec![s.to_string()],
            (None, Some(f)) => f.clone(),
            (None, None) => {
                return Err(Failure::usage(
                    "no frame: set `frame` in the ring file or pass --frame",
                ))
            }
        };
        Ok(self.built.frame(&gens)?)
    }

    fn full_frame(&self, over: Option<&str>) -> Res<Arc<ParameterSystem>> {
        let f = self.frame(over)?;
        if !f.is_full() {
            return Err(Failure::usage(
                "the frame must be a full system of parameters",
            ));
        }
        Ok(f)
    }

    fn element(&self, args: &ElementArgs) -> Res<TestElementSpec> {
        let (c, provenance) = match (&args.c, &self.spec.c) {
            (Some(c), _) => (c.clone(), "command line".to_string()),
            (None, Some(c)) => (
                c.clone(),
                self.spec
                    .provenance
                    .clone()
                    .unwrap_or_else(|| "ring file".into()),
            ),
            (None, None) => ("1".to_string(), "default unit".to_string()),
        };
        let w0 = args.w0.or(self.spec.w0).unwrap_or(0);
        Ok(TestElementSpec::new(
            &self.built.ctx,
            self.poly(&c)?,
            w0,
            provenance,
        )?)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.unwrap_or(0))
    }
}

pub fn execute(cmd: &Command, env: &Env) -> Res<Outcome> {
    match cmd {
        Command::Gb { ideal } => gb(env, ideal),
        Command::Member { poly, ideal } => member(env, poly, ideal),
        Command::Fpow { ideal, e } => fpow(env, ideal, *e),
        Command::Froot { ideal, e, preimage } => froot(env, ideal, *e, *preimage),
        Command::Fclosure { ideal } => fclosure(env, ideal),
        Command::CechZero {
            numerator,
            level,
            frame,
        } => cech_zero(env, numerator, *level, frame.as_deref()),
        Command::Hsl { frame } => hsl(env, frame.as_deref()),
        Command::Stability { element } => stability(env, element),
        Command::TcMember { r, ideal, element } => tc_member(env, r, ideal, element),
        Command::TestExponent { element } => test_exponent(env, element),
        Command::VerifyTheorem {
            theorem,
            element,
            r,
            ideal,
            level,
            n1,
            random,
        } => {
            let opts = VerifyOpts {
                r: r.as_deref(),
                ideal: ideal.as_deref(),
                level: *level,
                n1: *n1,
                random: *random,
            };
            match theorem {
                Theorem::Tc4 | Theorem::Tc8ii => verify_tc(env, *theorem, element, &opts),
                Theorem::Hs7 => verify_hs7(env, element, &opts),
                Theorem::Hs5 => verify_hs5(env, element),
            }
        }
        Command::Run | Command::Replay { .. } => {
            Err(Failure::usage("nested run/replay is not supported"))
        }
    }
}

fn gb(env: &Env, ideal: &str) -> Res<Outcome> {
    let i = env.ideal(ideal)?.sum(env.j())?;
    let basis = i.groebner_basis()?;
    let text = format!("({})\n", strs(basis).join(", "));
    Ok(Outcome {
        code: EXIT_OK,
        result: json!({ "gb": strs(basis), "gb_size": basis.len() }),
        text,
    })
}

fn member(env: &Env, poly: &str, ideal: &str) -> Res<Outcome> {
    let f = env.poly(poly)?;
    let i = env.ideal(ideal)?.sum(env.j())?;
    let nf = i.normal_form(&f)?;
    let yes = nf.is_zero();
    Ok(Outcome {
        code: if yes { EXIT_OK } else { EXIT_NEGATIVE },
        result: json!({
            "member": yes,
            "normal_form": nf.to_string(),
            "gb_size": i.groebner_basis()?.len(),
        }),
        text: if yes {
            format!("{f} is in the ideal\n")
        } else {
            format!("{f} is not in the ideal (normal form {nf})\n")
        },
    })
}

fn fpow(env: &Env, ideal: &str, e: u32) -> Res<Outcome> {
    let i = env.ideal(ideal)?;
    let fe = FrobeniusExponent::new(env.built.ring.char(), e)?;
    let pow = frobenius_power(&i, e)?;
    let with_j = pow.sum(env.j())?;
    let basis = with_j.groebner_basis()?;
    Ok(Outcome {
        code: EXIT_OK,
        result: json!({
            "e": fe.e,
            "q": fe.q,
            "generators": strs(pow.gens()),
            "gb": strs(basis),
            "gb_size": basis.len(),
        }),
        text: format!("({})\n", strs(pow.gens()).join(", ")),
    })
}

fn froot(env: &Env, ideal: &str, e: u32, preimage: bool) -> Res<Outcome> {
    let i = env.ideal(ideal)?;
    let (kind, out) = if preimage {
        let one = Poly::one(&env.built.ring);
        ("preimage", frobenius_preimage(&i.sum(env.j())?, &one, e)?)
    } else {
        ("root", frobenius_root(&i, e)?)
    };
    let basis = out.groebner_basis()?;
    Ok(Outcome {
        code: EXIT_OK,
        result: json!({ "kind": kind, "e": e, "gb": strs(basis), "gb_size": basis.len() }),
        text: format!("({})\n", strs(basis).join(", ")),
    })
}

fn fclosure(env: &Env, ideal: &str) -> Res<Outcome> {
    let i = env.ideal(ideal)?;
    let cl = frobenius_closure(&i, env.j(), env.budgets.e_max)?;
    let basis = cl.ideal.groebner_basis()?;
    let certs: Vec<Value> = cl
        .certificates
        .iter()
        .map(|(g, fe)| json!({ "element": g.to_string(), "e": fe.e, "q": fe.q }))
        .collect();
    let code = match cl.status {
        ClosureStatus::Truncated => EXIT_BUDGET,
        _ => EXIT_OK,
    };
    let mut text = format!(
        "closure: ({})\nstatus: {}\n",
        strs(basis).join(", "),
        status_text(cl.status)
    );
    for (g, fe) in &cl.certificates {
        let _ = writeln!(text, "  {g}: certificate e = {}", fe.e);
    }
    Ok(Outcome {
        code,
        result: json!({
            "closure": strs(basis),
            "gb_size": basis.len(),
            "status": cl.status,
            "levels": cl.levels,
            "certificates": certs,
        }),
        text,
    })
}

fn status_text(s: ClosureStatus) -> String {
    match s {
        ClosureStatus::Stabilized { at } => format!("stabilized at e = {at}"),
        ClosureStatus::Truncated => "truncated (e budget exhausted)".into(),
        ClosureStatus::Unit => "unit ideal".into(),
    }
}

fn cech_zero(env: &Env, numerator: &str, level: u32, frame: Option<&str>) -> Res<Outcome> {
    let f = env.full_frame(frame)?;
    let h = CechClass::new(env.poly(numerator)?, level, &f)?;
    let z = h.is_zero(env.budgets.k_max)?;
    let (code, text) = match z {
        ZeroTest::Zero { k } => (EXIT_OK, format!("{h} = 0 (witness k = {k})\n")),
        ZeroTest::NonzeroCertified => (EXIT_NEGATIVE, format!("{h} != 0 (certified, CM)\n")),
        ZeroTest::NonzeroUpToBound => (
            EXIT_BUDGET,
            format!("{h}: no witness up to k = {}\n", env.budgets.k_max),
        ),
    };
    Ok(Outcome {
        code,
        result: json!({ "class": h.to_string(), "outcome": z }),
        text,
    })
}

fn hsl_json(est: &HslEstimate) -> Res<Value> {
    let mut levels = Vec::new();
    for l in &est.levels {
        let certs: Vec<Value> = l
            .gamma
            .certificates
            .iter()
            .map(|(g, fe)| json!({ "element": g.to_string(), "e": fe.e }))
            .collect();
        levels.push(json!({
            "t": l.gamma.t,
            "gamma": strs(l.gamma.ideal.groebner_basis()?),
            "closure_status": l.gamma.status,
            "kill_exponent": l.kill_exponent,
            "certificates": certs,
        }));
    }
    Ok(json!({
        "m0_lower": est.m0_lower,
        "stabilized": est.stabilized,
        "t_max": est.t_max,
        "e_max": est.e_max,
        "label": "empirical lower bound",
        "levels": levels,
    }))
}

fn hsl(env: &Env, frame: Option<&str>) -> Res<Outcome> {
    let f = env.full_frame(frame)?;
    let est = hsl_estimate(&f, env.budgets.t_max, env.budgets.e_max)?;
    let mut text = format!(
        "m0_lower = {}{}\n",
        est.m0_lower,
        if est.stabilized {
            " (stabilized)"
        } else {
            " (not stabilized)"
        }
    );
    for l in &est.levels {
        let kill = l
            .kill_exponent
            .map_or("none within budget".to_string(), |e| e.to_string());
        let _ = writeln!(text, "  t = {}: kill exponent {kill}", l.gamma.t);
    }
    Ok(Outcome {
        code: if est.stabilized { EXIT_OK } else { EXIT_BUDGET },
        result: hsl_json(&est)?,
        text,
    })
}

fn chain_json(chain: &StabilityChain) -> Res<Value> {
    let level = |l: &charp_core::stability::LevelChain| -> Res<Value> {
        let mut ideals = Vec::new();
        for n in &l.ideals {
            ideals.push(json!(strs(n.groebner_basis()?)));
        }
        Ok(json!({ "t": l.t, "settled_at": l.settled_at, "chain": ideals }))
    };
    let per_level = chain.per_level.iter().map(level).collect::<Res<Vec<_>>>()?;
    let probe = chain.probe.as_ref().map(level).transpose()?;
    Ok(json!({
        "c": chain.c.to_string(),
        "m0_used": chain.m0_used,
        "v0_empirical": chain.v0_empirical,
        "stabilized": chain.stabilized,
        "outcome": chain.outcome,
        "per_level": per_level,
        "probe": probe,
    }))
}

fn run_chain(
    env: &Env,
    element: &ElementArgs,
) -> Res<(TestElementSpec, HslEstimate, StabilityChain)> {
    let spec = env.element(element)?;
    let f = env.full_frame(element.frame.as_deref())?;
    let est = hsl_estimate(&f, env.budgets.t_max, env.budgets.e_max)?;
    let chain = stability_index(
        &spec.c,
        &f,
        est.m0_lower,
        env.budgets.t_max,
        env.budgets.i_max,
    )?;
    Ok((spec, est, chain))
}

fn stability(env: &Env, element: &ElementArgs) -> Res<Outcome> {
    let (_, est, chain) = run_chain(env, element)?;
    let hs5 = verify_hs5_properties(&chain)?;
    let code = if !hs5.passed() {
        EXIT_INVARIANT
    } else if chain.outcome == ChainOutcome::Stationary && chain.stabilized {
        EXIT_OK
    } else {
        EXIT_BUDGET
    };
    let mut text = match chain.v0_empirical {
        Some(v) => format!(
            "v0_empirical = {v} (m0 = {}){}\n",
            chain.m0_used,
            if chain.stabilized {
                ", stabilized"
            } else {
                ", not stabilized"
            }
        ),
        None => format!(
            "chain not stationary within i_max = {}\n",
            env.budgets.i_max
        ),
    };
    for l in &chain.per_level {
        let _ = writeln!(
            text,
            "  t = {}: {} terms, settled at {:?}",
            l.t,
            l.ideals.len(),
            l.settled_at
        );
    }
    for v in &hs5.violations {
        let _ = writeln!(text, "  VIOLATION: {v}");
    }
    let mut result = chain_json(&chain)?;
    result["hsl"] = json!({ "m0_lower": est.m0_lower, "stabilized": est.stabilized });
    result["hs5"] = serde_json::to_value(&hs5).expect("serializable");
    Ok(Outcome { code, result, text })
}

fn tc_member(env: &Env, r: &str, ideal: &str, element: &ElementArgs) -> Res<Outcome> {
    let spec = env.element(element)?;
    let s = tc_membership_search(
        &env.poly(r)?,
        &env.ideal(ideal)?,
        &spec,
        &env.built.ctx,
        env.budgets.e_max,
    )?;
    let (code, mut text) = match &s.outcome {
        TcOutcome::AllPass { from, to } => (
            EXIT_OK,
            format!("AllPass for e = {from}..{to} (evidence, not proof)\n"),
        ),
        TcOutcome::FailAt { e } => (EXIT_NEGATIVE, format!("FailAt e = {e}\n")),
        TcOutcome::Mixed { passed, failed } => (
            EXIT_NEGATIVE,
            format!("Mixed: passed {passed:?}, failed {failed:?}\n"),
        ),
    };
    if !s.parameter_ideal {
        text.push_str("warning: the ideal is not a parameter ideal\n");
    }
    Ok(Outcome {
        code,
        result: json!({
            "test_element": spec,
            "outcome": s.outcome,
            "parameter_ideal": s.parameter_ideal,
        }),
        text,
    })
}

fn exponent_json(rep: &TestExponentReport) -> Value {
    json!({
        "e0": rep.e0,
        "m0_used": rep.m0(),
        "v0_used": rep.v0(),
        "hsl_stabilized": rep.hsl.stabilized,
        "chain_stabilized": rep.chain.stabilized,
        "label": if rep.stabilized() { "empirical" } else { "empirical, unstabilized" },
        "test_element": rep.spec,
    })
}

fn exponent_report(env: &Env, element: &ElementArgs) -> Res<TestExponentReport> {
    let spec = env.element(element)?;
    let f = env.full_frame(element.frame.as_deref())?;
    Ok(test_exponent_estimate(
        &spec,
        &f,
        env.budgets.t_max,
        env.budgets.e_max,
        env.budgets.i_max,
    )?)
}

fn test_exponent(env: &Env, element: &ElementArgs) -> Res<Outcome> {
    let rep = exponent_report(env, element)?;
    let text = match rep.e0 {
        Some(e0) => format!(
            "e0 = {e0} (m0 = {}, v0 = {}), {}\n",
            rep.m0(),
            rep.v0().unwrap_or(0),
            if rep.stabilized() {
                "empirical"
            } else {
                "empirical, unstabilized"
            }
        ),
        None => "no test exponent: the stability chain did not settle\n".to_string(),
    };
    let code = if rep.e0.is_some() && rep.stabilized() {
        EXIT_OK
    } else {
        EXIT_BUDGET
    };
    Ok(Outcome {
        code,
        result: exponent_json(&rep),
        text,
    })
}

struct VerifyOpts<'a> {
    r: Option<&'a str>,
    ideal: Option<&'a str>,
    level: u32,
    n1: Option<u32>,
    random: Option<usize>,
}

fn sample_elements(
    env: &Env,
    n: usize,
    boundary: Option<&IdealHandle>,
    modulus: &IdealHandle,
) -> Res<Vec<Poly>> {
    let mut rng = env.rng();
    let ring = &env.built.ring;
    let mut out = Vec::with_capacity(n);
    let from_boundary = if boundary.is_some() { n / 4 } else { 0 };
    for _ in 0..n - from_boundary {
        out.push(random_poly(ring, &mut rng, 3, 3));
    }
    if let Some(b) = boundary {
        let gb = b.groebner_basis()?.to_vec();
        for _ in 0..from_boundary {
            let mut r = Poly::zero(ring);
            for g in &gb {
                r = r.add(&random_poly(ring, &mut rng, 1, 2).mul(g)?)?;
            }
            out.push(modulus.normal_form(&r)?);
        }
    }
    Ok(out)
}

fn verify_tc(env: &Env, which: Theorem, element: &ElementArgs, o: &VerifyOpts) -> Res<Outcome> {
    let mut rep = exponent_report(env, element)?;
    let Some(e0) = rep.e0 else {
        return Ok(Outcome {
            code: EXIT_BUDGET,
            result: json!({ "verdict": "inconclusive", "reason": "stability chain did not settle", "report": exponent_json(&rep) }),
            text: "inconclusive: the stability chain did not settle\n".into(),
        });
    };
    let e_max = env.budgets.e_max;
    if e_max <= e0 {
        return Ok(Outcome {
            code: EXIT_BUDGET,
            result: json!({ "verdict": "inconclusive", "reason": format!("e_max must exceed e0 = {e0}"), "report": exponent_json(&rep) }),
            text: format!("inconclusive: e_max = {e_max} does not exceed e0 = {e0}\n"),
        });
    }
    let a = match o.ideal {
        Some(s) => env
            .built
            .ctx
            .validate_parameter_ideal(parse_poly_list(s, &env.built.ring)?)?,
        None => env.frame(element.frame.as_deref())?,
    };
    let rs = match (o.r, o.random) {
        (Some(r), _) => vec![env.poly(r)?],
        (None, Some(n)) => {
            let b = boundary_ideal(&rep.spec, &a, e0)?;
            sample_elements(env, n, Some(&b), &a.ideal().sum(env.j())?)?
        }
        (None, None) => return Err(Failure::usage("pass --r or --random N")),
    };
    let spec = rep.spec.clone();
    for r in &rs {
        let t = match which {
            Theorem::Tc4 => verify_tc4(&spec, &a, r, &rep, e_max)?,
            _ => verify_tc8_ii(&spec, &a, r, &rep, e_max)?,
        };
        rep.record(t);
    }
    trials_outcome(&rep, which)
}

fn trials_outcome(rep: &TestExponentReport, which: Theorem) -> Res<Outcome> {
    let count = |f: fn(&Trial) -> bool| rep.trials.iter().filter(|t| f(t)).count();
    let pass = count(|t| matches!(t.verdict, TrialVerdict::Pass { .. }));
    let vacuous = count(|t| t.verdict == TrialVerdict::Vacuous);
    let bad = rep.counterexamples();
    let name = if which == Theorem::Tc4 {
        "tc4"
    } else {
        "tc8ii"
    };
    let verdict = if bad > 0 {
        "counterexample"
    } else if pass > 0 {
        "pass"
    } else {
        "vacuous"
    };
    let code = match verdict {
        "counterexample" => EXIT_NEGATIVE,
        "pass" => EXIT_OK,
        _ => EXIT_BUDGET,
    };
    let mut text = format!(
        "{name}: {verdict} (e0 = {}; {pass} pass, {vacuous} vacuous, {bad} counterexample)\n",
        rep.e0.unwrap_or(0)
    );
    for t in rep
        .trials
        .iter()
        .filter(|t| matches!(t.verdict, TrialVerdict::Counterexample { .. }))
    {
        let _ = writeln!(text, "  COUNTEREXAMPLE r = {}: {:?}", t.r, t.verdict);
    }
    if bad > 0 {
        text.push_str("  (reflects either an engine bug or a false test-element assertion)\n");
    }
    Ok(Outcome {
        code,
        result: json!({
            "theorem": name,
            "verdict": verdict,
            "pass": pass,
            "vacuous": vacuous,
            "counterexamples": bad,
            "report": exponent_json(rep),
            "trials": rep.trials,
        }),
        text,
    })
}

fn verify_hs7(env: &Env, element: &ElementArgs, o: &VerifyOpts) -> Res<Outcome> {
    let (spec, est, chain) = run_chain(env, element)?;
    let Some(v0) = chain.v0_empirical else {
        return Ok(Outcome {
            code: EXIT_BUDGET,
            result: json!({ "verdict": "inconclusive", "reason": "stability chain did not settle" }),
            text: "inconclusive: the stability chain did not settle\n".into(),
        });
    };
    let m0 = est.m0_lower;
    let n1 = o.n1.unwrap_or(m0 + v0);
    let f = env.full_frame(element.frame.as_deref())?;
    let nums = match (o.r, o.random) {
        (Some(r), _) => vec![env.poly(r)?],
        (None, Some(n)) => sample_elements(env, n, None, env.j())?,
        (None, None) => return Err(Failure::usage("pass --r or --random N")),
    };
    let mut checks = Vec::new();
    let (mut pass, mut fail, mut vacuous) = (0, 0, 0);
    for r in nums {
        let h = CechClass::new(r, o.level, &f)?;
        let rep = verify_cor_hs7(
            &spec.c,
            &h,
            m0,
            v0,
            n1,
            env.budgets.e_max,
            env.budgets.k_max,
        )?;
        match rep.verdict {
            Verdict::Pass => pass += 1,
            Verdict::Fail => fail += 1,
            Verdict::Vacuous => vacuous += 1,
        }
        checks.push(json!({ "class": h.to_string(), "verdict": rep.verdict, "trace": rep.trace }));
    }
    let code = if fail > 0 {
        EXIT_NEGATIVE
    } else if pass > 0 {
        EXIT_OK
    } else {
        EXIT_BUDGET
    };
    Ok(Outcome {
        code,
        result: json!({
            "theorem": "hs7",
            "m0": m0,
            "v0": v0,
            "n1": n1,
            "pass": pass,
            "fail": fail,
            "vacuous": vacuous,
            "checks": checks,
        }),
        text: format!(
            "hs7 (m0 = {m0}, v0 = {v0}, n1 = {n1}): {pass} pass, {fail} fail, {vacuous} vacuous\n"
        ),
    })
}

fn verify_hs5(env: &Env, element: &ElementArgs) -> Res<Outcome> {
    let (_, _, chain) = run_chain(env, element)?;
    let rep = verify_hs5_properties(&chain)?;
    let code = if rep.passed() {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    };
    let mut text = format!(
        "hs5: {} ({} containments, {} stationarity, {} closure checks)\n",
        if rep.passed() { "pass" } else { "VIOLATED" },
        rep.containments_checked,
        rep.stationarity_checked,
        rep.closure_checked
    );
    for v in &rep.violations {
        let _ = writeln!(text, "  {v}");
    }
    Ok(Outcome {
        code,
        result: json!({ "theorem": "hs5", "report": rep, "chain": chain_json(&chain)? }),
        text,
    })
}
