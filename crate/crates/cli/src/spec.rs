//! The experiment file: a ring block, an optional frame and test element,
//! budgets, and a task list.
//!
//! ```text
//! # comment
//! p = 7
//! vars = z, x, y
//! order = grevlex
//! quotient = x^3 + y^3 + z^3
//! flags = domain, cm, equidim_excellent
//! frame = x, y
//! c = x
//! w0 = 0
//! provenance = Jacobian element
//! t_max = 4
//! task = hsl
//! task = member "z^2" "x, y"
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use charp_core::quotient::{ParameterSystem, QuotientCtx, RingFlags};
use charp_core::{parse_poly_list, Error, IdealHandle, MonomialOrder, PolyRing, PrimeChar};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub t_max: u32,
    pub e_max: u32,
    pub i_max: u32,
    pub k_max: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            t_max: 4,
            e_max: 5,
            i_max: 8,
            k_max: 10,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BudgetOverrides {
    pub t_max: Option<u32>,
    pub e_max: Option<u32>,
    pub i_max: Option<u32>,
    pub k_max: Option<u32>,
}

impl BudgetOverrides {
    pub fn over(&self, base: &BudgetOverrides) -> BudgetOverrides {
        BudgetOverrides {
            t_max: self.t_max.or(base.t_max),
            e_max: self.e_max.or(base.e_max),
            i_max: self.i_max.or(base.i_max),
            k_max: self.k_max.or(base.k_max),
        }
    }

    pub fn resolve(&self) -> Result<Budgets, String> {
        let d = Budgets::default();
        let b = Budgets {
            t_max: self.t_max.unwrap_or(d.t_max),
            e_max: self.e_max.unwrap_or(d.e_max),
            i_max: self.i_max.unwrap_or(d.i_max),
            k_max: self.k_max.unwrap_or(d.k_max),
        };
        if b.t_max == 0 || b.e_max == 0 {
            return Err("t_max and e_max must be positive".into());
        }
        if b.i_max < 2 {
            return Err("i_max must be at least 2".into());
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentSpec {
    pub p: u64,
    pub vars: Vec<String>,
    pub order: String,
    pub quotient: Vec<String>,
    pub flags: RingFlags,
    pub frame: Option<Vec<String>>,
    pub c: Option<String>,
    pub w0: Option<u32>,
    pub provenance: Option<String>,
    pub budgets: BudgetOverrides,
    pub tasks: Vec<String>,
}

fn split_list(v: &str) -> Vec<String> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn parse_u32(key: &str, v: &str) -> Result<u32, String> {
    v.parse()
        .map_err(|_| format!("{key}: expected a non-negative integer, got {v:?}"))
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<ExperimentSpec, String> {
        let mut p = None;
        let mut vars = None;
        let mut order = None;
        let mut quotient = None;
        let mut flags = None;
        let mut frame = None;
        let mut c = None;
        let mut w0 = None;
        let mut provenance = None;
        let mut budgets = BudgetOverrides::default();
        let mut tasks = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {}: expected `key = value`", no + 1));
            };
            let key = key.trim();
            let value = value.trim();
            let dup = |seen: bool| {
                if seen {
                    Err(format!("line {}: duplicate key `{key}`", no + 1))
                } else {
                    Ok(())
                }
            };
            match key {
                "p" => {
                    dup(p.is_some())?;
                    p = Some(
                        value
                            .parse::<u64>()
                            .map_err(|_| format!("p: not an integer: {value:?}"))?,
                    );
                }
                "vars" => {
                    dup(vars.is_some())?;
                    vars = Some(split_list(value));
                }
                "order" => {
                    dup(order.is_some())?;
                    if value != "grevlex" && value != "lex" {
                        return Err(format!("order: expected grevlex or lex, got {value:?}"));
                    }
                    order = Some(value.to_string());
                }
                "quotient" => {
                    dup(quotient.is_some())?;
                    quotient = Some(split_list(value));
                }
                "flags" => {
                    dup(flags.is_some())?;
                    let mut f = RingFlags::default();
                    for flag in split_list(value) {
                        match flag.as_str() {
                            "domain" => f.domain = true,
                            "cm" => f.cohen_macaulay = true,
                            "equidim_excellent" => f.equidim_excellent = true,
                            other => return Err(format!("flags: unknown flag {other:?}")),
                        }
                    }
                    flags = Some(f);
                }
                "frame" => {
                    dup(frame.is_some())?;
                    frame = Some(split_list(value));
                }
                "c" => {
                    dup(c.is_some())?;
                    c = Some(value.to_string());
                }
                "w0" => {
                    dup(w0.is_some())?;
                    w0 = Some(parse_u32(key, value)?);
                }
                "provenance" => {
                    dup(provenance.is_some())?;
                    provenance = Some(value.to_string());
                }
                "t_max" => budgets.t_max = Some(parse_u32(key, value)?),
                "e_max" => budgets.e_max = Some(parse_u32(key, value)?),
                "i_max" => budgets.i_max = Some(parse_u32(key, value)?),
                "k_max" => budgets.k_max = Some(parse_u32(key, value)?),
                "task" => tasks.push(value.to_string()),
                other => return Err(format!("line {}: unknown key `{other}`", no + 1)),
            }
        }
        Ok(ExperimentSpec {
            p: p.ok_or("missing `p`")?,
            vars: vars.ok_or("missing `vars`")?,
            order: order.unwrap_or_else(|| "grevlex".into()),
            quotient: quotient.unwrap_or_default(),
            flags: flags.unwrap_or_default(),
            frame,
            c,
            w0,
            provenance,
            budgets,
            tasks,
        })
    }

    /// Canonical text form; parsing it gives back an equal spec.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p = {}", self.p);
        let _ = writeln!(s, "vars = {}", self.vars.join(", "));
        let _ = writeln!(s, "order = {}", self.order);
        if !self.quotient.is_empty() {
            let _ = writeln!(s, "quotient = {}", self.quotient.join(", "));
        }
        let mut flags = Vec::new();
        if self.flags.domain {
            flags.push("domain");
        }
        if self.flags.cohen_macaulay {
            flags.push("cm");
        }
        if self.flags.equidim_excellent {
            flags.push("equidim_excellent");
        }
        if !flags.is_empty() {
            let _ = writeln!(s, "flags = {}", flags.join(", "));
        }
        if let Some(f) = &self.frame {
            let _ = writeln!(s, "frame = {}", f.join(", "));
        }
        if let Some(c) = &self.c {
            let _ = writeln!(s, "c = {c}");
        }
        if let Some(w) = self.w0 {
            let _ = writeln!(s, "w0 = {w}");
        }
        if let Some(p) = &self.provenance {
            let _ = writeln!(s, "provenance = {p}");
        }
        let b = &self.budgets;
        for (k, v) in [
            ("t_max", b.t_max),
            ("e_max", b.e_max),
            ("i_max", b.i_max),
            ("k_max", b.k_max),
        ] {
            if let Some(v) = v {
                let _ = writeln!(s, "{k} = {v}");
            }
        }
        for t in &self.tasks {
            let _ = writeln!(s, "task = {t}");
        }
        s
    }

    pub fn build(&self) -> Result<Built, Error> {
        let order = if self.order == "lex" {
            MonomialOrder::Lex
        } else {
            MonomialOrder::Grevlex
        };
        let ring = PolyRing::new(PrimeChar::new(self.p)?, &self.vars, order)?;
        let gens = parse_poly_list(&self.quotient.join(", "), &ring)?;
        let ctx = QuotientCtx::new(&ring, IdealHandle::new(&ring, gens)?, self.flags)?;
        Ok(Built { ring, ctx })
    }
}

pub struct Built {
    pub ring: Arc<PolyRing>,
    pub ctx: Arc<QuotientCtx>,
}

impl Built {
    pub fn frame(&self, gens: &[String]) -> Result<Arc<ParameterSystem>, Error> {
        let gens = parse_poly_list(&gens.join(", "), &self.ring)?;
        self.ctx.validate_parameter_ideal(gens)
    }
}
