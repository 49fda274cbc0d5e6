use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::PrimeChar;
use super::monomial::MonomialOrder;
use crate::error::{Error, Result};

/// The ambient ring `F_p[x_1..x_n]` together with its monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub(crate) char: PrimeChar,
    pub(crate) vars: Vec<String>,
    pub(crate) order: MonomialOrder,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        char: PrimeChar,
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidRing(format!(
                    "block size {k} exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing { char, vars, order }))
    }

    /// Convenience constructor with grevlex order.
    pub fn grevlex<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Arc<PolyRing>> {
        PolyRing::new(PrimeChar::new(p)?, vars, MonomialOrder::Grevlex)
    }

    #[inline]
    pub fn char(&self) -> PrimeChar {
        self.char
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.char.get()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with `k` fresh tag variables prepended, ordered by a block
    /// order that eliminates the tags.
    pub fn with_tags(&self, k: usize) -> Arc<PolyRing> {
        let mut vars: Vec<String> = (0..k).map(|i| format!("_t{i}")).collect();
        vars.extend(self.vars.iter().cloned());
        Arc::new(PolyRing {
            char: self.char,
            vars,
            order: MonomialOrder::Block(k),
        })
    }

    /// Same variables and characteristic, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            char: self.char,
            vars: self.vars.clone(),
            order,
        })
    }
}
