//! The prime field `F_p` and sparse polynomials over it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cyclotomic::inv_mod;
use crate::monomial::{var_names, Monomial};
use crate::ring::CoeffRing;

/// An element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
    v: u32,
}

impl Fp {
    pub fn new(p: u32, v: i64) -> Fp {
        Fp {
            p,
            v: v.rem_euclid(p as i64) as u32,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> u32 {
        self.v
    }

    pub fn inv(&self) -> Option<Fp> {
        (self.v != 0).then(|| Fp {
            p: self.p,
            v: inv_mod(self.v as u64, self.p as u64) as u32,
        })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl CoeffRing for Fp {
    fn zero_like(&self) -> Self {
        Fp::new(self.p, 0)
    }
    fn one_like(&self) -> Self {
        Fp::new(self.p, 1)
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(self.p)).to_i64().unwrap();
        Fp::new(self.p, r)
    }
    fn add_ref(&self, o: &Self) -> Self {
        Fp::new(self.p, self.v as i64 + o.v as i64)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Fp::new(self.p, self.v as i64 - o.v as i64)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Fp::new(self.p, (self.v as u64 * o.v as u64 % self.p as u64) as i64)
    }
    fn neg_ref(&self) -> Self {
        Fp::new(self.p, -(self.v as i64))
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn compatible(&self, o: &Self) -> bool {
        self.p == o.p
    }
    fn ring_name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// A sparse polynomial over `F_p` (no truncation).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u32,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl FpPoly {
    /// Keeps terms of total degree `≤ degree`.
    pub fn truncated(&self, degree: u32) -> FpPoly {
        let mut g = FpPoly::zero(self.p(), self.nvars());
        for (m, c) in self.terms() {
            if m.degree() <= degree {
                g.add_term(*m, *c as i64);
            }
        }
        g
    }

    pub fn zero(p: u32, nvars: usize) -> FpPoly {
        FpPoly {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u32, nvars: usize, c: i64) -> FpPoly {
        let mut f = FpPoly::zero(p, nvars);
        f.add_term(Monomial::one(), c);
        f
    }

    pub fn var(p: u32, nvars: usize, i: usize) -> FpPoly {
        assert!(i < nvars);
        let mut f = FpPoly::zero(p, nvars);
        f.add_term(Monomial::var(i), 1);
        f
    }

    /// Univariate-style helper: `Σ c_k y_i^k`.
    pub fn from_terms(p: u32, nvars: usize, terms: &[(Monomial, i64)]) -> FpPoly {
        let mut f = FpPoly::zero(p, nvars);
        for (m, c) in terms {
            f.add_term(*m, *c);
        }
        f
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        let c = c.rem_euclid(self.p as i64) as u32;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u32)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Whether some term involves a variable with index `≥ i`.
    pub fn involves_vars_from(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.support_len() > i)
    }

    pub fn scale(&self, c: i64) -> FpPoly {
        let mut f = FpPoly::zero(self.p, self.nvars);
        for (m, v) in &self.terms {
            f.add_term(*m, *v as i64 * c);
        }
        f
    }

    /// The `p`-th power, computed termwise (Frobenius is additive in characteristic `p`).
    pub fn frobenius(&self) -> FpPoly {
        let mut f = FpPoly::zero(self.p, self.nvars);
        for (m, v) in &self.terms {
            f.add_term(m.pow(self.p), *v as i64);
        }
        f
    }

    /// `b - b^p`.
    pub fn wp(&self) -> FpPoly {
        self.sub_ref(&self.frobenius())
    }

    pub fn display_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = var_names(prefix, self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono = m.display_with(self.nvars, &names);
                match (*c, mono.as_str()) {
                    (c, "1") => c.to_string(),
                    (1, _) => mono,
                    (c, _) => format!("{}*{}", c, mono),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("y"))
    }
}

impl CoeffRing for FpPoly {
    fn zero_like(&self) -> Self {
        FpPoly::zero(self.p, self.nvars)
    }
    fn one_like(&self) -> Self {
        FpPoly::constant(self.p, self.nvars, 1)
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(self.p)).to_i64().unwrap();
        FpPoly::constant(self.p, self.nvars, r)
    }
    fn add_ref(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(*m, *c as i64);
        }
        f
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(*m, -(*c as i64));
        }
        f
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut f = FpPoly::zero(self.p, self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                f.add_term(a.mul(b), (*ca as i64 * *cb as i64) % self.p as i64);
            }
        }
        f
    }
    fn neg_ref(&self) -> Self {
        self.scale(-1)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn compatible(&self, o: &Self) -> bool {
        self.p == o.p && self.nvars == o.nvars
    }
    fn ring_name(&self) -> String {
        format!("F_{}[y0..y{}]", self.p, self.nvars.saturating_sub(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_matches_power() {
        let y0 = FpPoly::var(3, 2, 0);
        let y1 = FpPoly::var(3, 2, 1);
        let f = y0.add_ref(&y1.mul_ref(&y1)).add_ref(&FpPoly::constant(3, 2, 2));
        assert_eq!(f.frobenius(), f.pow_u(3));
    }

    #[test]
    fn field_inverse() {
        for v in 1..7 {
            let a = Fp::new(7, v);
            assert_eq!(a.mul_ref(&a.inv().unwrap()), Fp::new(7, 1));
        }
        assert!(Fp::new(7, 0).inv().is_none());
    }
}
