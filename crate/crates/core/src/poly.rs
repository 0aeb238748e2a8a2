//! Polynomials over the two-element field in the formal variables
//! `v_1, ..., v_m`.
//!
//! A polynomial is a set of monomials (coefficients live in F_2, so adding a
//! monomial twice cancels it); a monomial is its exponent vector.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector of a single monomial; entry `t` is the exponent of
/// `v_{t+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<i64>,
}

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Result<Self> {
        if exps.iter().any(|&e| e < 0) {
            return Err(Error::InvalidInput(format!(
                "monomial exponents must be nonnegative, got {exps:?}"
            )));
        }
        Ok(Monomial { exps })
    }

    /// The constant monomial `1` in `vars` variables.
    pub fn one(vars: usize) -> Self {
        Monomial {
            exps: vec![0; vars],
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (t, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "v{}", t + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// An F_2 polynomial: the set of monomials with coefficient one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    monos: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one(vars: usize) -> Self {
        Polynomial::from(Monomial::one(vars))
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monos.len() == 1 && self.monos.iter().next().unwrap().degree() == 0
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monos.iter()
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    /// Adds a single monomial (toggling it, since coefficients are mod 2).
    pub fn toggle(&mut self, mono: Monomial) {
        if !self.monos.remove(&mono) {
            self.monos.insert(mono);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for m in &other.monos {
            out.toggle(m.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for a in &self.monos {
            for b in &other.monos {
                out.toggle(a.mul(b));
            }
        }
        out
    }
}

impl From<Monomial> for Polynomial {
    fn from(mono: Monomial) -> Self {
        let mut monos = BTreeSet::new();
        monos.insert(mono);
        Polynomial { monos }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monos.is_empty() {
            return write!(f, "0");
        }
        for (t, m) in self.monos.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
