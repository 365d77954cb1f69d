//! Exact arithmetic in the cyclotomic field `K = Q(ζ)`, ζ a primitive `p^s`-th root of unity.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{e-1}` with
//! `e = p^{s-1}(p-1)`, as an integer vector over one positive common denominator.
//! The valuation is normalized so that `ν(p) = 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A valuation: a rational number or `+∞` (the valuation of zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(BigRational),
    Infinite,
}

impl Val {
    pub fn int(n: i64) -> Val {
        Val::Finite(BigRational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Val {
        Val::Finite(BigRational::new(n.into(), d.into()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Val::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    pub fn min(self, other: Val) -> Val {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// `self * k` for a nonnegative integer `k` (with `∞ * 0 = 0`).
    pub fn times(&self, k: u64) -> Val {
        match self {
            _ if k == 0 => Val::int(0),
            Val::Finite(v) => Val::Finite(v * BigRational::from_integer(k.into())),
            Val::Infinite => Val::Infinite,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Infinite, Val::Infinite) => Ordering::Equal,
            (Val::Infinite, _) => Ordering::Greater,
            (_, Val::Infinite) => Ordering::Less,
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

impl Sub for Val {
    type Output = Val;
    /// Only meaningful when `rhs` is finite; `∞ - x = ∞`.
    fn sub(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a - b),
            (Val::Infinite, _) => Val::Infinite,
            (Val::Finite(_), Val::Infinite) => panic!("finite minus infinite valuation"),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Infinite => write!(f, "inf"),
            Val::Finite(v) => write!(f, "{}", v),
        }
    }
}

/// `ν_p(n)` for nonzero `n`.
pub fn vp_int(n: &BigInt, p: u32) -> u64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `ν_p` of a rational, `None` for zero.
pub fn vp_rat(q: &BigRational, p: u32) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(vp_int(q.numer(), p) as i64 - vp_int(q.denom(), p) as i64)
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// The field `Q(ζ_{p^s})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycField {
    p: u32,
    s: u32,
}

impl CycField {
    pub fn new(p: u32, s: u32) -> Result<CycField> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {} is not prime", p)));
        }
        if s == 0 {
            return Err(Error::InvalidParameter("s must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(s).unwrap_or(u64::MAX);
        if order > 1 << 16 {
            return Err(Error::InvalidParameter(format!(
                "p^s = {}^{} is too large",
                p, s
            )));
        }
        Ok(CycField { p, s })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `p^{s-1}`.
    pub fn m(&self) -> usize {
        (self.p as usize).pow(self.s - 1)
    }

    /// `p^s`.
    pub fn order(&self) -> usize {
        self.m() * self.p as usize
    }

    /// Degree `e = p^{s-1}(p-1)` over `Q`.
    pub fn degree(&self) -> usize {
        self.m() * (self.p as usize - 1)
    }

    pub fn zero(&self) -> CycNum {
        CycNum {
            field: *self,
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> CycNum {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> CycNum {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> CycNum {
        let mut z = self.zero();
        z.num[0] = n.clone();
        z
    }

    pub fn from_rational(&self, q: &BigRational) -> CycNum {
        let mut z = self.zero();
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        z.normalize();
        z
    }

    /// Builds an element from power-basis rationals (fewer than `e` entries are padded with zeros).
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> Result<CycNum> {
        if coeffs.len() > self.degree() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients given, field degree is {}",
                coeffs.len(),
                self.degree()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut z = self.zero();
        for (i, c) in coeffs.iter().enumerate() {
            z.num[i] = c.numer() * (&den / c.denom());
        }
        z.den = den;
        z.normalize();
        Ok(z)
    }

    /// `ζ^j` for any integer `j`.
    pub fn zeta_power(&self, j: i64) -> CycNum {
        let n = self.order() as i64;
        let mut poly = vec![BigInt::zero(); self.order()];
        poly[j.rem_euclid(n) as usize] = BigInt::one();
        self.from_poly(poly, BigInt::one())
    }

    /// `ζ_{p^k} = ζ^{p^{s-k}}`, for `0 ≤ k ≤ s` (`ζ_{p^0} = 1`).
    pub fn zeta(&self, k: u32) -> Result<CycNum> {
        if k > self.s {
            return Err(Error::InvalidParameter(format!(
                "ζ_(p^{}) does not lie in Q(ζ_(p^{}))",
                k, self.s
            )));
        }
        Ok(self.zeta_power((self.p as i64).pow(self.s - k)))
    }

    /// `ζ_{p^k} - 1`.
    pub fn zeta_minus_one(&self, k: u32) -> Result<CycNum> {
        Ok(self.zeta(k)? - self.one())
    }

    /// `λ = ζ_p - 1`.
    pub fn lambda(&self) -> CycNum {
        self.zeta_minus_one(1).expect("s >= 1")
    }

    /// The uniformizer `π = ζ - 1`.
    pub fn pi(&self) -> CycNum {
        self.zeta_minus_one(self.s).expect("k = s")
    }

    /// `ν(ζ_{p^k} - 1) = 1/(p^{k-1}(p-1))` for `k ≥ 1`, and `∞` for `k = 0`.
    pub fn val_zeta_minus_one(&self, k: u32) -> Val {
        if k == 0 {
            return Val::Infinite;
        }
        Val::frac(1, (self.p as i64).pow(k - 1) * (self.p as i64 - 1))
    }

    /// Reduces a polynomial in ζ (any length) modulo `Φ_{p^s}` and wraps it.
    fn from_poly(&self, mut poly: Vec<BigInt>, den: BigInt) -> CycNum {
        let n = self.order();
        if poly.len() > n {
            for i in n..poly.len() {
                let c = std::mem::take(&mut poly[i]);
                if !c.is_zero() {
                    poly[i % n] += c;
                }
            }
            poly.truncate(n);
        }
        let e = self.degree();
        let m = self.m();
        let p = self.p as usize;
        // ζ^{e+r} = -Σ_{j<p-1} ζ^{jm+r}
        for d in e..poly.len() {
            let c = std::mem::take(&mut poly[d]);
            if c.is_zero() {
                continue;
            }
            let r = d - e;
            for j in 0..p - 1 {
                poly[j * m + r] -= &c;
            }
        }
        poly.resize(e, BigInt::zero());
        let mut z = CycNum {
            field: *self,
            num: poly,
            den,
        };
        z.normalize();
        z
    }

    /// `Φ_{p^s}(x) = Σ_{j<p} x^{j p^{s-1}}`, coefficients in ascending degree.
    pub fn cyclotomic_poly(&self) -> Vec<BigInt> {
        let mut f = vec![BigInt::zero(); self.degree() + 1];
        for j in 0..self.p as usize {
            f[j * self.m()] = BigInt::one();
        }
        f
    }

    /// Units of `Z/p^s`, used as the Galois group.
    fn galois_exponents(&self) -> impl Iterator<Item = usize> + '_ {
        let p = self.p as usize;
        (1..self.order()).filter(move |k| k % p != 0)
    }
}

impl fmt::Display for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{}^{})", self.p, self.s)
    }
}

/// An element of `Q(ζ_{p^s})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    field: CycField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn field(&self) -> CycField {
        self.field
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    fn check_field(&self, other: &CycNum) {
        assert_eq!(
            self.field, other.field,
            "mixing elements of different cyclotomic fields"
        );
    }

    /// Power-basis coefficients as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer numerators over [`CycNum::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Whether the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn scale_int(&self, k: &BigInt) -> CycNum {
        let mut z = CycNum {
            field: self.field,
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
        };
        z.normalize();
        z
    }

    pub fn scale_rational(&self, q: &BigRational) -> CycNum {
        let mut z = CycNum {
            field: self.field,
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        z.normalize();
        z
    }

    pub fn pow(&self, mut n: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The Galois conjugate `σ_k: ζ ↦ ζ^k`.
    pub fn conjugate(&self, k: usize) -> CycNum {
        let n = self.field.order();
        let mut poly = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                poly[(i * k) % n] += c;
            }
        }
        self.field.from_poly(poly, self.den.clone())
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(&q.recip()));
        }
        let mut others = self.field.one();
        for k in self.field.galois_exponents().filter(|&k| k != 1) {
            others = &others * &self.conjugate(k);
        }
        let norm = (self * &others)
            .as_rational()
            .expect("the norm is rational");
        Ok(others.scale_rational(&norm.recip()))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        self.check_field(other);
        if let Some(q) = other.as_rational() {
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(self.scale_rational(&q.recip()));
        }
        Ok(self * &other.inv()?)
    }

    /// The field norm `N_{K/Q}`, computed as the resultant of `Φ_{p^s}` and the
    /// numerator polynomial.
    pub fn norm(&self) -> BigRational {
        let e = self.field.degree();
        let mut a: Vec<BigInt> = self.num.clone();
        while a.len() > 1 && a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        if a.iter().all(|c| c.is_zero()) {
            return BigRational::zero();
        }
        let res = resultant(&self.field.cyclotomic_poly(), &a);
        BigRational::new(res, self.den.pow(e as u32))
    }

    /// Coordinates in the basis `1, π, …, π^{e-1}` (numerators over [`CycNum::denominator`]).
    pub fn pi_basis_numerators(&self) -> Vec<BigInt> {
        // Taylor shift x -> 1 + y
        let mut a = self.num.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = a[j + 1].clone();
                a[j] += t;
            }
        }
        a
    }

    /// The normalized valuation `ν` with `ν(p) = 1`.
    ///
    /// `ν(Σ c_k π^k) = min_k (ν_p(c_k) + k/e)`; the terms have distinct valuations.
    pub fn valuation(&self) -> Val {
        if self.is_zero() {
            return Val::Infinite;
        }
        let p = self.field.p;
        let e = self.field.degree() as i64;
        let best = self
            .pi_basis_numerators()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| vp_int(c, p) as i64 * e + k as i64)
            .min()
            .expect("nonzero element");
        let den_v = vp_int(&self.den, p) as i64;
        Val::Finite(BigRational::new((best - den_v * e).into(), e.into()))
    }

    pub fn is_integral(&self) -> bool {
        self.valuation() >= Val::int(0)
    }

    /// The image in `R/πR = F_p` of an integral element.
    pub fn reduce_mod_pi(&self) -> Result<u64> {
        if !self.is_integral() {
            return Err(Error::NotIntegral(format!(
                "{} has valuation {}",
                self,
                self.valuation()
            )));
        }
        // a ≡ c_0 (mod π), c_0 = a(ζ = 1)
        let sum: BigInt = self.num.iter().sum();
        let c0 = BigRational::new(sum, self.den.clone());
        Ok(rational_mod_p(&c0, self.field.p).expect("p-integral"))
    }

    /// Replaces each power-basis coefficient by its residue modulo `p^k`.
    /// The change has valuation at least `k`. Requires `p`-free denominators.
    pub fn truncate_mod_p_power(&self, k: u32) -> Option<CycNum> {
        let modulus = BigInt::from(self.field.p).pow(k);
        let dinv = self.den.extended_gcd(&modulus);
        if !dinv.gcd.is_one() {
            return None;
        }
        let inv = dinv.x.mod_floor(&modulus);
        let num = self
            .num
            .iter()
            .map(|c| (c * &inv).mod_floor(&modulus))
            .collect();
        let mut z = CycNum {
            field: self.field,
            num,
            den: BigInt::one(),
        };
        z.normalize();
        Some(z)
    }

    /// Serializes as power-basis `"n/d"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs()
            .iter()
            .map(|q| format!("{}/{}", q.numer(), q.denom()))
            .collect()
    }

    pub fn from_strings(field: CycField, items: &[String]) -> Result<CycNum> {
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        field.from_coeffs(&coeffs)
    }
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {:?}", s));
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Residue of a `p`-integral rational in `F_p`.
pub fn rational_mod_p(q: &BigRational, p: u32) -> Option<u64> {
    let pb = BigInt::from(p);
    if q.denom().is_multiple_of(&pb) {
        return None;
    }
    let n = q.numer().mod_floor(&pb).to_u64().unwrap();
    let d = q.denom().mod_floor(&pb).to_u64().unwrap();
    Some(n * inv_mod(d, p as u64) % p as u64)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `Res(f, g)` for integer polynomials (ascending coefficients), as the
/// determinant of the Sylvester matrix by fraction-free elimination.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows 0..n hold shifted f, rows n..n+m hold shifted g; descending degree
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.check_field(rhs);
        if self.den == rhs.den {
            let mut z = CycNum {
                field: self.field,
                num: self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect(),
                den: self.den.clone(),
            };
            z.normalize();
            return z;
        }
        let g = self.den.gcd(&rhs.den);
        let fa = &rhs.den / &g;
        let fb = &self.den / &g;
        let mut z = CycNum {
            field: self.field,
            num: self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| a * &fa + b * &fb)
                .collect(),
            den: &self.den * &fa,
        };
        z.normalize();
        z
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.check_field(rhs);
        if let Some(q) = rhs.as_rational() {
            return self.scale_rational(&q);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale_rational(&q);
        }
        let e = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * e - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.from_poly(prod, &self.den * &rhs.den)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: &CycNum) -> CycNum {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", i)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn lambda_squared_for_p3() {
        let k = CycField::new(3, 1).unwrap();
        let l = k.lambda();
        let rhs = l.scale_int(&BigInt::from(-3)) - k.from_int(3);
        assert_eq!(&l * &l, rhs);
    }

    #[test]
    fn valuation_of_4zeta4_minus_6() {
        let k = CycField::new(2, 2).unwrap();
        let a = k.zeta(2).unwrap().scale_int(&4.into()) - k.from_int(6);
        assert_eq!(a.valuation(), Val::int(1));
        assert_eq!(a.norm(), q(52, 1));
    }

    #[test]
    fn lambda_power_over_p_reduces_to_minus_one() {
        for (p, s) in [(2, 1), (3, 1), (3, 2), (5, 1), (2, 3)] {
            let k = CycField::new(p, s).unwrap();
            let a = k
                .lambda()
                .pow(p as u64 - 1)
                .scale_rational(&q(1, p as i64));
            assert_eq!(a.valuation(), Val::int(0));
            assert_eq!(a.reduce_mod_pi().unwrap(), p as u64 - 1);
        }
    }

    #[test]
    fn uniformizer_valuations() {
        let k = CycField::new(3, 2).unwrap();
        for j in 1..=2 {
            assert_eq!(
                k.zeta_minus_one(j).unwrap().valuation(),
                k.val_zeta_minus_one(j)
            );
        }
        assert_eq!(k.pi().valuation(), Val::frac(1, 6));
        assert_eq!(k.from_int(9).valuation(), Val::int(2));
    }

    #[test]
    fn zeta_has_exact_order() {
        let k = CycField::new(2, 3).unwrap();
        let z = k.zeta(3).unwrap();
        assert!(z.pow(8).is_one());
        assert!(!z.pow(4).is_one());
        assert_eq!(k.zeta(0).unwrap(), k.one());
        assert!(k.zeta(4).is_err());
    }

    #[test]
    fn division_by_zero_is_reported() {
        let k = CycField::new(3, 1).unwrap();
        assert!(matches!(k.zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn serialization_roundtrip() {
        let k = CycField::new(3, 2).unwrap();
        let a = k.zeta(2).unwrap().scale_rational(&q(-7, 4)) + k.from_int(2);
        let back = CycNum::from_strings(k, &a.to_strings()).unwrap();
        assert_eq!(a, back);
        assert_eq!(a.to_strings()[0], "2/1");
    }

    #[test]
    fn resultant_of_small_polys() {
        // Res(x^2 + 1, x - 2) = 5
        let f: Vec<BigInt> = vec![1.into(), 0.into(), 1.into()];
        let g: Vec<BigInt> = vec![(-2).into(), 1.into()];
        assert_eq!(resultant(&f, &g), BigInt::from(5));
    }

    #[test]
    fn truncation_changes_little() {
        let k = CycField::new(2, 2).unwrap();
        let a = k.zeta(2).unwrap().scale_rational(&q(5, 3)) + k.from_int(1000);
        let t = a.truncate_mod_p_power(6).unwrap();
        assert!((a - t).valuation() >= Val::int(6));
    }
}
