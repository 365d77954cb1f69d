//! Packed monomials in at most [`MAX_VARS`] variables, ordered graded-lex.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// Exponent vector. The derived order compares total degree first, then
/// exponents lexicographically with `x_0` most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(i: usize) -> Monomial {
        assert!(i < MAX_VARS, "variable index {} out of range", i);
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidParameter(format!(
                "at most {} variables are supported",
                MAX_VARS
            )));
        }
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e)
                .map_err(|_| Error::Degree(format!("exponent {} too large", e)))?;
            m.deg += e;
        }
        Ok(m)
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    /// Highest variable index with a positive exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps
            .iter()
            .rposition(|&e| e > 0)
            .map_or(0, |i| i + 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = u16::try_from(self.exps[i] as u32 * k).expect("monomial exponent overflow");
        }
        m.deg = self.deg * k;
        m
    }

    pub fn display_with(&self, nvars: usize, names: &[String]) -> String {
        let parts: Vec<String> = (0..nvars)
            .filter(|&i| self.exps[i] > 0)
            .map(|i| match self.exps[i] {
                1 => names[i].clone(),
                e => format!("{}^{}", names[i], e),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Variable names `prefix0, prefix1, …`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{}{}", prefix, i)).collect()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(MAX_VARS, &var_names("x", MAX_VARS)))
    }
}
