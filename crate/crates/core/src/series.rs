//! Sparse multivariate power series over `Q(ζ_{p^s})`, truncated at total degree `D`.
//!
//! Terms of total degree above `D` are discarded by every operation. Terms are
//! kept in graded-lex order, which is also the serialization order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::{CycField, CycNum, Val};
use crate::error::{Error, Result};
use crate::fp::FpPoly;
use crate::monomial::{var_names, Monomial, MAX_VARS};
use crate::ring::{CoeffRing, CycAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSeries {
    field: CycField,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, CycNum>,
}

fn accumulate(map: &mut BTreeMap<Monomial, CycNum>, m: Monomial, c: CycNum) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get() + &c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

type Part = Vec<(Monomial, CycNum)>;

fn mul_parts(a: &Part, b: &Part, out: &mut BTreeMap<Monomial, CycNum>, scale: Option<&BigInt>) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut c = ca * cb;
            if let Some(k) = scale {
                c = c.scale_int(k);
            }
            accumulate(out, ma.mul(mb), c);
        }
    }
}

impl MSeries {
    pub fn zero(field: CycField, nvars: usize, degree: u32) -> Result<MSeries> {
        if nvars > MAX_VARS {
            return Err(Error::InvalidParameter(format!(
                "{} variables requested, at most {} supported",
                nvars, MAX_VARS
            )));
        }
        if degree > u16::MAX as u32 {
            return Err(Error::Degree(format!("truncation degree {} too large", degree)));
        }
        Ok(MSeries {
            field,
            nvars,
            degree,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(field: CycField, nvars: usize, degree: u32, c: CycNum) -> Result<MSeries> {
        let mut f = MSeries::zero(field, nvars, degree)?;
        f.insert(Monomial::one(), c);
        Ok(f)
    }

    pub fn one(field: CycField, nvars: usize, degree: u32) -> Result<MSeries> {
        MSeries::constant(field, nvars, degree, field.one())
    }

    pub fn var(field: CycField, nvars: usize, degree: u32, i: usize) -> Result<MSeries> {
        if i >= nvars {
            return Err(Error::InvalidParameter(format!(
                "variable {} out of range for {} variables",
                i, nvars
            )));
        }
        let mut f = MSeries::zero(field, nvars, degree)?;
        f.insert(Monomial::var(i), field.one());
        Ok(f)
    }

    /// Builds a series from explicit terms, adding coefficients of repeated monomials.
    pub fn from_terms(
        field: CycField,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, CycNum)>,
    ) -> Result<MSeries> {
        let mut f = MSeries::zero(field, nvars, degree)?;
        for (m, c) in terms {
            if m.support_len() > nvars {
                return Err(Error::InvalidParameter(format!(
                    "monomial {} uses more than {} variables",
                    m, nvars
                )));
            }
            f.insert(m, c);
        }
        Ok(f)
    }

    /// Adds `c·m` (dropped above the truncation degree).
    pub fn insert(&mut self, m: Monomial, c: CycNum) {
        assert_eq!(c.field(), self.field);
        if m.degree() <= self.degree {
            accumulate(&mut self.terms, m, c);
        }
    }

    pub fn field(&self) -> CycField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> CycNum {
        self.coefficient(&Monomial::one())
    }

    /// Highest total degree present.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Lowest total degree present.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    fn like(&self) -> MSeries {
        MSeries {
            field: self.field,
            nvars: self.nvars,
            degree: self.degree,
            terms: BTreeMap::new(),
        }
    }

    fn check(&self, other: &MSeries) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::Mismatch(format!(
                "series over {} in {} variables vs {} in {} variables",
                self.field, self.nvars, other.field, other.nvars
            )));
        }
        if self.degree != other.degree {
            return Err(Error::Mismatch(format!(
                "truncation degrees {} and {} differ",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// Same terms, truncated at a new degree. Raising the cap is only meaningful
    /// for exact polynomials.
    pub fn with_degree(&self, degree: u32) -> MSeries {
        MSeries {
            field: self.field,
            nvars: self.nvars,
            degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Same terms in a ring with `nvars ≥ self.nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<MSeries> {
        if nvars < self.nvars || nvars > MAX_VARS {
            return Err(Error::InvalidParameter(format!(
                "cannot move {} variables into {}",
                self.nvars, nvars
            )));
        }
        let mut f = self.clone();
        f.nvars = nvars;
        Ok(f)
    }

    pub fn add(&self, other: &MSeries) -> Result<MSeries> {
        self.check(other)?;
        let mut f = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut f.terms, *m, c.clone());
        }
        Ok(f)
    }

    pub fn sub(&self, other: &MSeries) -> Result<MSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MSeries {
        self.map_coeffs(|c| -c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&CycNum) -> CycNum) -> MSeries {
        let mut g = self.like();
        for (m, c) in &self.terms {
            accumulate(&mut g.terms, *m, f(c));
        }
        g
    }

    pub fn scale(&self, c: &CycNum) -> MSeries {
        self.map_coeffs(|x| x * c)
    }

    pub fn scale_rational(&self, q: &BigRational) -> MSeries {
        self.map_coeffs(|x| x.scale_rational(q))
    }

    pub fn add_constant(&self, c: &CycNum) -> MSeries {
        let mut f = self.clone();
        accumulate(&mut f.terms, Monomial::one(), c.clone());
        f
    }

    pub fn mul(&self, other: &MSeries) -> Result<MSeries> {
        self.check(other)?;
        let mut out = BTreeMap::new();
        let rhs: Part = other.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        for (ma, ca) in &self.terms {
            let room = self.degree - ma.degree();
            for (mb, cb) in &rhs {
                if mb.degree() > room {
                    break;
                }
                accumulate(&mut out, ma.mul(mb), ca * cb);
            }
        }
        let mut f = self.like();
        f.terms = out;
        Ok(f)
    }

    pub fn pow(&self, mut n: u64) -> MSeries {
        let mut base = self.clone();
        let mut acc = MSeries::one(self.field, self.nvars, self.degree).unwrap();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// Homogeneous components, indexed by total degree `0..=D`.
    fn parts(&self) -> Vec<Part> {
        let mut parts = vec![Vec::new(); self.degree as usize + 1];
        for (m, c) in &self.terms {
            parts[m.degree() as usize].push((*m, c.clone()));
        }
        parts
    }

    fn from_parts(&self, parts: Vec<Part>) -> MSeries {
        let mut f = self.like();
        for part in parts {
            for (m, c) in part {
                accumulate(&mut f.terms, m, c);
            }
        }
        f
    }

    fn require_zero_constant(&self, op: &str) -> Result<()> {
        let c = self.constant_term();
        if !c.is_zero() {
            return Err(Error::ConstantTerm(format!(
                "{} needs a series with zero constant term, found {}",
                op, c
            )));
        }
        Ok(())
    }

    /// `exp(f)` for `f` with zero constant term, through the Euler-operator
    /// recurrence `d·g_d = Σ_k k·f_k·g_{d-k}` on homogeneous parts.
    pub fn exp(&self) -> Result<MSeries> {
        self.require_zero_constant("exp")?;
        let f = self.parts();
        let dmax = self.degree as usize;
        let mut g: Vec<Part> = vec![Vec::new(); dmax + 1];
        g[0] = vec![(Monomial::one(), self.field.one())];
        for d in 1..=dmax {
            let mut acc = BTreeMap::new();
            for k in 1..=d {
                if f[k].is_empty() || g[d - k].is_empty() {
                    continue;
                }
                mul_parts(&f[k], &g[d - k], &mut acc, Some(&BigInt::from(k)));
            }
            let inv_d = BigRational::new(BigInt::one(), BigInt::from(d));
            g[d] = acc
                .into_iter()
                .map(|(m, c)| (m, c.scale_rational(&inv_d)))
                .collect();
        }
        Ok(self.from_parts(g))
    }

    /// `ln(1 + u)` for `u` with zero constant term:
    /// `L_d = u_d - (1/d) Σ_{k=1}^{d-1} (d-k)·u_k·L_{d-k}`.
    pub fn ln1p(&self) -> Result<MSeries> {
        self.require_zero_constant("ln1p")?;
        let u = self.parts();
        let dmax = self.degree as usize;
        let mut l: Vec<Part> = vec![Vec::new(); dmax + 1];
        for d in 1..=dmax {
            let mut acc = BTreeMap::new();
            for k in 1..d {
                if u[k].is_empty() || l[d - k].is_empty() {
                    continue;
                }
                mul_parts(&u[k], &l[d - k], &mut acc, Some(&BigInt::from(d - k)));
            }
            let minus_inv_d = BigRational::new(BigInt::from(-1), BigInt::from(d));
            let mut part = BTreeMap::new();
            for (m, c) in acc {
                accumulate(&mut part, m, c.scale_rational(&minus_inv_d));
            }
            for (m, c) in &u[d] {
                accumulate(&mut part, *m, c.clone());
            }
            l[d] = part.into_iter().collect();
        }
        Ok(self.from_parts(l))
    }

    /// `ln(f)` for `f` with constant term `1`.
    pub fn ln(&self) -> Result<MSeries> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(Error::ConstantTerm(format!(
                "ln needs constant term 1, found {}",
                c
            )));
        }
        self.add_constant(&-self.field.one()).ln1p()
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<MSeries> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ConstantTerm("inverse of a series with zero constant term".into()));
        }
        let c0_inv = c0.inv()?;
        let f = self.parts();
        let dmax = self.degree as usize;
        let mut g: Vec<Part> = vec![Vec::new(); dmax + 1];
        g[0] = vec![(Monomial::one(), c0_inv.clone())];
        let minus = -&c0_inv;
        for d in 1..=dmax {
            let mut acc = BTreeMap::new();
            for k in 1..=d {
                if f[k].is_empty() || g[d - k].is_empty() {
                    continue;
                }
                mul_parts(&f[k], &g[d - k], &mut acc, None);
            }
            g[d] = acc.into_iter().map(|(m, c)| (m, &c * &minus)).collect();
        }
        Ok(self.from_parts(g))
    }

    pub fn div(&self, other: &MSeries) -> Result<MSeries> {
        self.mul(&other.inv()?)
    }

    /// Substitutes `x_i ↦ g_i`. Every `g_i` must have zero constant term; the
    /// result lives in the ring of the `g_i`.
    pub fn substitute(&self, assignments: &[MSeries]) -> Result<MSeries> {
        for g in assignments {
            g.require_zero_constant("substitute")?;
        }
        self.substitute_inner(assignments, true)
    }

    /// Substitution treating `self` as an exact polynomial, so assignments
    /// may have nonzero constant terms.
    pub fn substitute_polynomial(&self, assignments: &[MSeries]) -> Result<MSeries> {
        self.substitute_inner(assignments, false)
    }

    fn substitute_inner(&self, assignments: &[MSeries], zero_constants: bool) -> Result<MSeries> {
        if assignments.len() != self.nvars {
            return Err(Error::Mismatch(format!(
                "{} assignments for {} variables",
                assignments.len(),
                self.nvars
            )));
        }
        let target = match assignments.first() {
            Some(g) => g.like(),
            None => {
                return MSeries::constant(self.field, 0, self.degree, self.constant_term());
            }
        };
        for g in assignments {
            target.check(g)?;
            if g.field != self.field {
                return Err(Error::Mismatch("substitution across fields".into()));
            }
        }
        // per-variable power caches, filled lazily
        let mut cache: Vec<Vec<MSeries>> = assignments
            .iter()
            .map(|_| vec![MSeries::one(target.field, target.nvars, target.degree).unwrap()])
            .collect();
        let mut out = target.clone();
        for (m, c) in &self.terms {
            if zero_constants && m.degree() > target.degree {
                continue;
            }
            let mut term: Option<MSeries> = None;
            for (i, g) in assignments.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(g)?;
                    cache[i].push(next);
                }
                term = Some(match term {
                    None => cache[i][e].clone(),
                    Some(t) => t.mul(&cache[i][e])?,
                });
            }
            match term {
                None => accumulate(&mut out.terms, Monomial::one(), c.clone()),
                Some(t) => {
                    for (tm, tc) in t.terms {
                        accumulate(&mut out.terms, tm, &tc * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Evaluates the kept terms at a point (exact polynomial evaluation).
    pub fn eval(&self, point: &[CycNum]) -> Result<CycNum> {
        if point.len() != self.nvars {
            return Err(Error::Mismatch(format!(
                "{} values for {} variables",
                point.len(),
                self.nvars
            )));
        }
        eval_terms(self.terms.iter(), point, self.field.zero())
    }

    /// Splits into `(kept, remainder)` by coefficient valuation. With `strict`
    /// the kept terms are those with `ν < threshold`, otherwise `ν ≤ threshold`.
    pub fn val_split(&self, threshold: &Val, strict: bool) -> (MSeries, MSeries) {
        let mut kept = self.like();
        let mut rem = self.like();
        for (m, c) in &self.terms {
            let v = c.valuation();
            let keep = if strict { &v < threshold } else { &v <= threshold };
            if keep {
                kept.terms.insert(*m, c.clone());
            } else {
                rem.terms.insert(*m, c.clone());
            }
        }
        (kept, rem)
    }

    /// Minimum coefficient valuation in each total degree `0..=D` (`∞` where empty).
    pub fn min_val_by_degree(&self) -> Vec<Val> {
        let mut out = vec![Val::Infinite; self.degree as usize + 1];
        for (m, c) in &self.terms {
            let d = m.degree() as usize;
            let v = c.valuation();
            if v < out[d] {
                out[d] = v;
            }
        }
        out
    }

    /// Minimum valuation over all coefficients.
    pub fn min_val(&self) -> Val {
        self.terms
            .values()
            .map(|c| c.valuation())
            .min()
            .unwrap_or(Val::Infinite)
    }

    /// The term attaining [`MSeries::min_val`], for witnesses.
    pub fn min_val_term(&self) -> Option<(Monomial, CycNum, Val)> {
        self.terms
            .iter()
            .map(|(m, c)| (*m, c.clone(), c.valuation()))
            .min_by(|a, b| a.2.cmp(&b.2))
    }

    pub fn is_integral(&self) -> bool {
        self.min_val() >= Val::int(0)
    }

    /// Coefficientwise reduction modulo `π` into `F_p[y_0, …]`.
    pub fn reduce_mod_pi(&self) -> Result<FpPoly> {
        let mut f = FpPoly::zero(self.field.p(), self.nvars);
        for (m, c) in &self.terms {
            f.add_term(*m, c.reduce_mod_pi()? as i64);
        }
        Ok(f)
    }

    /// Whether every coefficient lies in the subfield `Q(ζ_{p^k})`.
    pub fn coefficients_in_subfield(&self, k: u32) -> bool {
        let step = (self.field.p() as usize).pow(self.field.s() - k);
        self.terms.values().all(|c| {
            c.numerators()
                .iter()
                .enumerate()
                .all(|(i, n)| n.is_zero() || i % step == 0)
        })
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
                if mono == "1" {
                    format!("({})", c)
                } else {
                    format!("({})*{}", c, mono)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Suffix minima of a valuation profile: entry `d` is the least valuation met
/// in degrees `≥ d`. This nondecreasing staircase is the finite-precision
/// stand-in for the Tate condition.
pub fn tate_staircase(profile: &[Val]) -> Vec<Val> {
    let mut out = profile.to_vec();
    for d in (0..out.len().saturating_sub(1)).rev() {
        if out[d + 1] < out[d] {
            out[d] = out[d + 1].clone();
        }
    }
    out
}

/// `Σ c·x^m` over a point in any `K`-algebra, with per-variable power caches.
pub fn eval_terms<'a, R: CycAlgebra>(
    terms: impl Iterator<Item = (&'a Monomial, &'a CycNum)>,
    point: &[R],
    zero: R,
) -> Result<R> {
    let mut cache: Vec<Vec<R>> = point.iter().map(|x| vec![x.one_like()]).collect();
    let mut acc = zero;
    for (m, c) in terms {
        let mut term: Option<R> = None;
        for (i, x) in point.iter().enumerate() {
            let e = m.exp(i) as usize;
            if e == 0 {
                continue;
            }
            while cache[i].len() <= e {
                let next = cache[i].last().unwrap().mul_ref(x);
                cache[i].push(next);
            }
            term = Some(match term {
                None => cache[i][e].clone(),
                Some(t) => t.mul_ref(&cache[i][e]),
            });
        }
        let cst = acc.from_cyc(c);
        acc = acc.add_ref(&match term {
            None => cst,
            Some(t) => t.mul_ref(&cst),
        });
    }
    Ok(acc)
}

impl CycAlgebra for MSeries {
    fn from_cyc(&self, c: &CycNum) -> Self {
        MSeries::constant(self.field, self.nvars, self.degree, c.clone()).unwrap()
    }
}

impl fmt::Display for MSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("X"))
    }
}

impl CoeffRing for MSeries {
    fn zero_like(&self) -> Self {
        self.like()
    }
    fn one_like(&self) -> Self {
        MSeries::one(self.field, self.nvars, self.degree).unwrap()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        MSeries::constant(self.field, self.nvars, self.degree, self.field.from_bigint(n)).unwrap()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o).expect("compatible series")
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o).expect("compatible series")
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o).expect("compatible series")
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn compatible(&self, o: &Self) -> bool {
        self.check(o).is_ok()
    }
    fn ring_name(&self) -> String {
        format!(
            "{}[[{} vars]] / deg > {}",
            self.field, self.nvars, self.degree
        )
    }
    fn pow_u(&self, n: u64) -> Self {
        self.pow(n)
    }
}
