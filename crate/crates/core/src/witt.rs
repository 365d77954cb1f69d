//! Length-`s` `p`-typical Witt vectors over an arbitrary coefficient ring.
//!
//! Addition and negation use the universal polynomials, built over `Z` by the
//! ghost-component recursion. Each division by `p^n` in that recursion is checked
//! to be exact, which certifies integrality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::cyclotomic::is_prime;
use crate::error::{Error, Result};
use crate::fp::{Fp, FpPoly};
use crate::monomial::{var_names, Monomial, MAX_VARS};
use crate::ring::CoeffRing;

/// A polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> IntPoly {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> IntPoly {
        let mut f = IntPoly::zero(nvars);
        f.add_term(Monomial::var(i), BigInt::one());
        f
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(*m, c.clone());
        }
        f
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        let mut f = IntPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            f.add_term(*m, c * k);
        }
        f
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        let mut f = IntPoly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                f.add_term(a.mul(b), ca * cb);
            }
        }
        f
    }

    pub fn pow(&self, mut n: u64) -> IntPoly {
        let mut acc = IntPoly::zero(self.nvars);
        acc.add_term(Monomial::one(), BigInt::one());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides every coefficient by `d`, failing if some division is inexact.
    pub fn exact_div(&self, d: &BigInt) -> Result<IntPoly> {
        let mut f = IntPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NotIntegral(format!(
                    "coefficient {} of {} is not divisible by {}",
                    c, m, d
                )));
            }
            f.add_term(*m, q);
        }
        Ok(f)
    }

    /// Evaluates at a point of any coefficient ring.
    pub fn eval<R: CoeffRing>(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars, "point has the wrong arity");
        let template = &point[0];
        let mut cache: Vec<Vec<R>> = point.iter().map(|x| vec![x.one_like()]).collect();
        let mut acc = template.zero_like();
        for (m, c) in &self.terms {
            let mut term = template.from_int_like(c);
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul_ref(x);
                    cache[i].push(next);
                }
                term = term.mul_ref(&cache[i][e]);
            }
            acc = acc.add_ref(&term);
        }
        acc
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono = m.display_with(self.nvars, names);
                match (mono.as_str(), c) {
                    ("1", c) => c.to_string(),
                    (_, c) if c.is_one() => mono,
                    (_, c) if *c == BigInt::from(-1) => format!("-{}", mono),
                    (_, c) => format!("{}*{}", c, mono),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Universal Witt polynomials for length `s`: `add[j]` in variables
/// `x_0..x_{s-1}, y_0..y_{s-1}` (indices `0..s`, `s..2s`) and `neg[j]` in `x` only
/// (stored over the same `2s` variables).
#[derive(Clone, Debug)]
pub struct UnivPolys {
    pub p: u32,
    pub s: usize,
    pub add: Vec<IntPoly>,
    pub neg: Vec<IntPoly>,
}

impl UnivPolys {
    pub fn variable_names(&self) -> Vec<String> {
        let mut names = var_names("x", self.s);
        names.extend(var_names("y", self.s));
        names
    }
}

impl fmt::Display for UnivPolys {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.variable_names();
        for (j, a) in self.add.iter().enumerate() {
            writeln!(f, "S_{} = {}", j, a.display_with(&names))?;
        }
        for (j, n) in self.neg.iter().enumerate() {
            writeln!(f, "N_{} = {}", j, n.display_with(&names))?;
        }
        Ok(())
    }
}

/// Ghost component `w_n(v) = Σ_{i≤n} p^i v_i^{p^{n-i}}` of a vector of polynomials.
fn ghost_poly(p: u32, v: &[IntPoly], n: usize) -> IntPoly {
    let mut acc = IntPoly::zero(v[0].nvars());
    for (i, vi) in v.iter().enumerate().take(n + 1) {
        let k = BigInt::from(p).pow(i as u32);
        acc = acc.add(&vi.pow((p as u64).pow((n - i) as u32)).scale(&k));
    }
    acc
}

fn build_univ(p: u32, s: usize) -> Result<UnivPolys> {
    let nv = 2 * s;
    let x: Vec<IntPoly> = (0..s).map(|i| IntPoly::var(nv, i)).collect();
    let y: Vec<IntPoly> = (0..s).map(|i| IntPoly::var(nv, s + i)).collect();
    let mut add: Vec<IntPoly> = Vec::with_capacity(s);
    let mut neg: Vec<IntPoly> = Vec::with_capacity(s);
    for n in 0..s {
        let pn = BigInt::from(p).pow(n as u32);
        let target = ghost_poly(p, &x, n).add(&ghost_poly(p, &y, n));
        let mut prior = IntPoly::zero(nv);
        let mut prior_neg = IntPoly::zero(nv);
        for i in 0..n {
            let e = (p as u64).pow((n - i) as u32);
            let k = BigInt::from(p).pow(i as u32);
            prior = prior.add(&add[i].pow(e).scale(&k));
            prior_neg = prior_neg.add(&neg[i].pow(e).scale(&k));
        }
        add.push(target.sub(&prior).exact_div(&pn)?);
        let neg_target = ghost_poly(p, &x, n).scale(&BigInt::from(-1));
        neg.push(neg_target.sub(&prior_neg).exact_div(&pn)?);
    }
    Ok(UnivPolys { p, s, add, neg })
}

fn univ_cache() -> &'static Mutex<HashMap<(u32, usize), Arc<UnivPolys>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<UnivPolys>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The universal addition and negation polynomials of length `s` (cached).
pub fn universal_polys(p: u32, s: usize) -> Result<Arc<UnivPolys>> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {} is not prime", p)));
    }
    if s == 0 || 2 * s > MAX_VARS {
        return Err(Error::InvalidParameter(format!(
            "Witt length {} outside 1..={}",
            s,
            MAX_VARS / 2
        )));
    }
    if let Some(u) = univ_cache().lock().unwrap().get(&(p, s)) {
        return Ok(u.clone());
    }
    let u = Arc::new(build_univ(p, s)?);
    univ_cache().lock().unwrap().insert((p, s), u.clone());
    Ok(u)
}

fn check_ring<R: CoeffRing>(vs: &[&[R]]) -> Result<()> {
    let first = vs
        .iter()
        .flat_map(|v| v.iter())
        .next()
        .ok_or_else(|| Error::InvalidParameter("empty Witt vector".into()))?;
    for v in vs {
        for c in v.iter() {
            if !c.compatible(first) {
                return Err(Error::Mismatch(format!(
                    "Witt coordinates in {} and {}",
                    first.ring_name(),
                    c.ring_name()
                )));
            }
        }
    }
    Ok(())
}

/// Ghost components `w_0..w_{s-1}`.
pub fn ghost<R: CoeffRing>(p: u32, a: &[R]) -> Vec<R> {
    (0..a.len())
        .map(|n| {
            let mut acc = a[0].zero_like();
            for (i, ai) in a.iter().enumerate().take(n + 1) {
                let k = a[0].from_int_like(&BigInt::from(p).pow(i as u32));
                acc = acc.add_ref(&ai.pow_u((p as u64).pow((n - i) as u32)).mul_ref(&k));
            }
            acc
        })
        .collect()
}

pub fn witt_add<R: CoeffRing>(p: u32, a: &[R], b: &[R]) -> Result<Vec<R>> {
    if a.len() != b.len() {
        return Err(Error::Mismatch(format!(
            "Witt lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    check_ring(&[a, b])?;
    let u = universal_polys(p, a.len())?;
    let point: Vec<R> = a.iter().chain(b.iter()).cloned().collect();
    Ok(u.add.iter().map(|f| f.eval(&point)).collect())
}

pub fn witt_neg<R: CoeffRing>(p: u32, a: &[R]) -> Result<Vec<R>> {
    check_ring(&[a])?;
    let u = universal_polys(p, a.len())?;
    let mut point: Vec<R> = a.to_vec();
    point.extend((0..a.len()).map(|_| a[0].zero_like()));
    Ok(u.neg.iter().map(|f| f.eval(&point)).collect())
}

pub fn witt_sub<R: CoeffRing>(p: u32, a: &[R], b: &[R]) -> Result<Vec<R>> {
    witt_add(p, a, &witt_neg(p, b)?)
}

/// `n·a` as an `n`-fold Witt sum (double-and-add).
pub fn witt_scalar<R: CoeffRing>(p: u32, n: u64, a: &[R]) -> Result<Vec<R>> {
    check_ring(&[a])?;
    let mut acc: Vec<R> = a.iter().map(|c| c.zero_like()).collect();
    let mut base = a.to_vec();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = witt_add(p, &acc, &base)?;
        }
        n >>= 1;
        if n > 0 {
            base = witt_add(p, &base, &base)?;
        }
    }
    Ok(acc)
}

/// The Teichmüller representative `(a, 0, …, 0)`.
pub fn teichmuller<R: CoeffRing>(a: &R, s: usize) -> Vec<R> {
    let mut v = vec![a.zero_like(); s];
    v[0] = a.clone();
    v
}

/// Rings of characteristic `p` with an explicit Frobenius.
pub trait FrobeniusRing: CoeffRing {
    fn frobenius(&self) -> Self;
    fn characteristic(&self) -> u32;
}

impl FrobeniusRing for Fp {
    fn frobenius(&self) -> Self {
        *self
    }
    fn characteristic(&self) -> u32 {
        self.p()
    }
}

impl FrobeniusRing for FpPoly {
    fn frobenius(&self) -> Self {
        FpPoly::frobenius(self)
    }
    fn characteristic(&self) -> u32 {
        self.p()
    }
}

/// Coordinatewise `p`-th power.
pub fn frobenius<R: FrobeniusRing>(w: &[R]) -> Vec<R> {
    w.iter().map(|c| c.frobenius()).collect()
}

/// The Artin-Schreier-Witt map `℘(w) = w - F(w)`.
pub fn asw_map<R: FrobeniusRing>(w: &[R]) -> Result<Vec<R>> {
    check_ring(&[w])?;
    let p = w[0].characteristic();
    witt_sub(p, w, &frobenius(w))
}

/// `f_j ∈ F_p[y_0..y_{j-2}]` with `℘(y)_{j-1} = y_{j-1} - y_{j-1}^p + f_j`, in `nvars` variables.
pub fn asw_defect(p: u32, j: usize, nvars: usize) -> Result<FpPoly> {
    if j == 0 || j > nvars {
        return Err(Error::InvalidParameter(format!(
            "level {} outside 1..={}",
            j, nvars
        )));
    }
    let mut y: Vec<FpPoly> = (0..j - 1).map(|i| FpPoly::var(p, nvars, i)).collect();
    y.push(FpPoly::zero(p, nvars));
    Ok(asw_map(&y)?[j - 1].clone())
}
