use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::frobenius_normal_form;
use crate::poly::{same_ring, Poly};
use crate::quotient::{ParameterSystem, QuotientCtx};

/// A class `[r / (a_1⋯a_d)^t]` in `H^d_m(R)`, presented through the Čech
/// complex on a full system of parameters. Classes are not normalized;
/// equality is decided by [`CechClass::equals`].
#[derive(Clone)]
pub struct CechClass {
    num: Poly,
    level: u32,
    frame: Arc<ParameterSystem>,
}

/// Result of the bounded zero test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZeroTest {
    /// `(a_1⋯a_d)^k r ∈ (a_1^{t+k}, .., a_d^{t+k}) + J` with this least `k`.
    Zero { k: u32 },
    /// Nonzero: the parameters form a regular sequence, so `k = 0` decides.
    NonzeroCertified,
    /// No witness up to `k_max`, and the ring is not asserted CM.
    NonzeroUpToBound,
}

impl ZeroTest {
    pub fn is_zero(self) -> bool {
        matches!(self, ZeroTest::Zero { .. })
    }
}

impl CechClass {
    pub fn new(num: Poly, level: u32, frame: &Arc<ParameterSystem>) -> Result<CechClass> {
        if !frame.is_full() {
            return Err(Error::InvalidArgument(
                "Čech classes need a full system of parameters".into(),
            ));
        }
        if !same_ring(num.ring(), frame.ctx().ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(CechClass {
            num,
            level,
            frame: frame.clone(),
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn frame(&self) -> &Arc<ParameterSystem> {
        &self.frame
    }

    pub fn ctx(&self) -> &Arc<QuotientCtx> {
        self.frame.ctx()
    }

    fn with(&self, num: Poly, level: u32) -> CechClass {
        CechClass {
            num,
            level,
            frame: self.frame.clone(),
        }
    }

    fn check(&self, other: &CechClass) -> Result<()> {
        if Arc::ptr_eq(&self.frame, &other.frame) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(
                "classes use different parameter systems".into(),
            ))
        }
    }

    /// The same class written at level `level + s`: `[r·a^s / a^{t+s}]`.
    pub fn raise_level(&self, s: u32) -> Result<CechClass> {
        let a = self.frame.product()?.pow(u64::from(s))?;
        let level = self.level.checked_add(s).ok_or(Error::ExponentOverflow)?;
        Ok(self.with(self.num.mul(&a)?, level))
    }

    pub fn add(&self, other: &CechClass) -> Result<CechClass> {
        self.check(other)?;
        let t = self.level.max(other.level);
        let a = self.raise_level(t - self.level)?;
        let b = other.raise_level(t - other.level)?;
        Ok(self.with(a.num.add(&b.num)?, t))
    }

    pub fn sub(&self, other: &CechClass) -> Result<CechClass> {
        self.add(&other.with(other.num.neg(), other.level))
    }

    /// `r·[r' / a^t] = [r·r' / a^t]`.
    pub fn scalar_mul(&self, r: &Poly) -> Result<CechClass> {
        if !same_ring(r.ring(), self.num.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.with(r.mul(&self.num)?, self.level))
    }

    /// The Frobenius action `x[r / a^t] = [r^p / a^{tp}]`.
    pub fn x_action(&self) -> Result<CechClass> {
        self.x_power(1)
    }

    /// `x^j` applied to the class.
    pub fn x_power(&self, j: u32) -> Result<CechClass> {
        let q = self
            .ctx()
            .ring()
            .char()
            .checked_power(j)
            .ok_or(Error::ExponentOverflow)?;
        let level = self.level.checked_mul(q).ok_or(Error::ExponentOverflow)?;
        Ok(self.with(self.num.frobenius(j)?, level))
    }

    /// Decides `[r/a^t] = 0` by searching `k = 0..=k_max`.
    pub fn is_zero(&self, k_max: u32) -> Result<ZeroTest> {
        if self.num.is_zero() {
            return Ok(ZeroTest::Zero { k: 0 });
        }
        let a = self.frame.product()?;
        let mut num = self.num.clone();
        for k in 0..=k_max {
            let level = self.level.checked_add(k).ok_or(Error::ExponentOverflow)?;
            if self.frame.power_ideal(level)?.contains(&num)? {
                return Ok(ZeroTest::Zero { k });
            }
            if self.ctx().is_cm() {
                return Ok(ZeroTest::NonzeroCertified);
            }
            num = num.mul(&a)?;
        }
        Ok(ZeroTest::NonzeroUpToBound)
    }

    /// Equality as classes, via the zero test on the difference.
    pub fn equals(&self, other: &CechClass, k_max: u32) -> Result<ZeroTest> {
        self.sub(other)?.is_zero(k_max)
    }

    /// The least `j ≤ e_max` with `x^j h = 0`.
    pub fn torsion_order(&self, e_max: u32, k_max: u32) -> Result<Option<u32>> {
        for j in 0..=e_max {
            if self.x_power_vanishes(j, k_max)? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

impl CechClass {
    /// `x^j h = 0`, reducing Frobenius powers step by step when `k = 0`
    /// decides.
    pub fn x_power_vanishes(&self, j: u32, k_max: u32) -> Result<bool> {
        if !self.ctx().is_cm() {
            return Ok(self.x_power(j)?.is_zero(k_max)?.is_zero());
        }
        let q = self
            .ctx()
            .ring()
            .char()
            .checked_power(j)
            .ok_or(Error::ExponentOverflow)?;
        let level = self.level.checked_mul(q).ok_or(Error::ExponentOverflow)?;
        let target = self.frame.power_ideal(level)?;
        Ok(frobenius_normal_form(&self.num, &target, j)?.is_zero())
    }

    /// `c · x^n h = 0`. In CM contexts this reduces `r^(p^n)` step by step;
    /// otherwise the class is formed and searched up to `k_max`.
    pub fn killed_by(&self, c: &Poly, n: u32, k_max: u32) -> Result<bool> {
        if !same_ring(c.ring(), self.num.ring()) {
            return Err(Error::RingMismatch);
        }
        if !self.ctx().is_cm() {
            return Ok(self.x_power(n)?.scalar_mul(c)?.is_zero(k_max)?.is_zero());
        }
        let q = self
            .ctx()
            .ring()
            .char()
            .checked_power(n)
            .ok_or(Error::ExponentOverflow)?;
        let level = self.level.checked_mul(q).ok_or(Error::ExponentOverflow)?;
        let target = self.frame.power_ideal(level)?;
        let image = frobenius_normal_form(&self.num, &target, n)?;
        Ok(target.normal_form(&c.mul(&image)?)?.is_zero())
    }
}

impl fmt::Display for CechClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self
            .frame
            .elems()
            .iter()
            .map(|g| format!("({g})"))
            .collect();
        write!(f, "[({}) / ({})^{}]", self.num, a.join("*"), self.level)
    }
}

impl fmt::Debug for CechClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CechClass{self}")
    }
}
