//! The Artin-Hasse exponential and its deformations `E_{s,p}`, `G_{s,p}`, `Ψ_s`.
//!
//! Multivariate arguments are Witt vectors of series with zero constant term.
//! `p·a` in `G_{s,p}` is read as Witt-scalar multiplication by default. That is
//! the reading under which the closed exponential form and the homomorphism
//! identities hold. The coordinatewise reading is available as a diagnostic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::cyclotomic::{CycField, Val};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::MSeries;
use serde::{Deserialize, Serialize};
use crate::witt::{teichmuller, witt_add, witt_neg, witt_scalar};

/// How `p·a` acts on a Witt-vector argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    /// Multiplication by `p` in the Witt ring.
    #[default]
    Witt,
    /// `(p a_0, …, p a_{s-1})`.
    Coordinatewise,
}

/// Coefficients of `E_p(t) = exp(Σ_i t^{p^i}/p^i)` up to `t^degree`.
pub fn ah_exp(p: u32, degree: usize) -> Vec<BigRational> {
    let mut f = vec![BigRational::zero(); degree + 1];
    let mut q = 1usize;
    while q <= degree {
        f[q] = BigRational::new(BigInt::one(), BigInt::from(q));
        q *= p as usize;
    }
    exp_univariate(&f)
}

/// `exp` of a univariate rational series with zero constant term, via `n g_n = Σ k f_k g_{n-k}`.
fn exp_univariate(f: &[BigRational]) -> Vec<BigRational> {
    let n = f.len();
    let mut g = vec![BigRational::zero(); n];
    g[0] = BigRational::one();
    for d in 1..n {
        let mut acc = BigRational::zero();
        for k in 1..=d {
            if !f[k].is_zero() {
                acc += &f[k] * &g[d - k] * BigRational::from_integer(k.into());
            }
        }
        g[d] = acc / BigRational::from_integer(d.into());
    }
    g
}

fn check_level(field: CycField, s: u32) -> Result<()> {
    if s > field.s() {
        return Err(Error::InvalidParameter(format!(
            "E_({},p) needs zeta_(p^{}) but the field is {}",
            s, s, field
        )));
    }
    Ok(())
}

fn check_args(field: CycField, s: u32, args: &[MSeries]) -> Result<()> {
    check_level(field, s)?;
    if args.len() != s as usize {
        return Err(Error::Mismatch(format!(
            "{} arguments for a length-{} Witt vector",
            args.len(),
            s
        )));
    }
    for a in args {
        if a.field() != field {
            return Err(Error::Mismatch("argument over a different field".into()));
        }
        if !a.constant_term().is_zero() {
            return Err(Error::ConstantTerm(format!(
                "Witt argument has constant term {}",
                a.constant_term()
            )));
        }
    }
    Ok(())
}

/// `E_p(t)` as a univariate series over `field`.
pub fn ah_exp_series(field: CycField, degree: u32) -> Result<MSeries> {
    let coeffs = ah_exp(field.p(), degree as usize);
    MSeries::from_terms(
        field,
        1,
        degree,
        coeffs.iter().enumerate().map(|(d, c)| {
            (
                Monomial::from_exps(&[d as u32]).unwrap(),
                field.from_rational(c),
            )
        }),
    )
}

/// `E_{s,p}(t) = exp(Σ_{i<s} (ζ_{p^{s-i}} - 1) t^{p^i}/p^i)`, univariate.
pub fn e_sp(field: CycField, s: u32, degree: u32) -> Result<MSeries> {
    check_level(field, s)?;
    let t = MSeries::var(field, 1, degree, 0)?;
    e_sp_exponent(field, s, &[t]).and_then(|x| x.exp())
}

/// `E_{s,p}(t) = E_p(ζ_{p^s} t) / E_p(t)`, the defining ratio.
pub fn e_sp_ratio(field: CycField, s: u32, degree: u32) -> Result<MSeries> {
    check_level(field, s)?;
    let base = ah_exp_series(field, degree)?;
    let zeta = field.zeta(s)?;
    let twisted = MSeries::from_terms(
        field,
        1,
        degree,
        base.terms()
            .map(|(m, c)| (*m, c * &zeta.pow(m.degree() as u64))),
    )?;
    twisted.div(&base)
}

/// `Σ_{i<s} Σ_k (ζ_{p^{s-i-k}} - 1) a_i^{p^k}/p^k`, the logarithm of `E_{s,p}(a)`.
fn e_sp_exponent(field: CycField, s: u32, args: &[MSeries]) -> Result<MSeries> {
    let p = field.p();
    let mut acc = args[0].zero_clone();
    for (i, a) in args.iter().enumerate() {
        let level = s - i as u32;
        let mut power = a.clone();
        for k in 0..level {
            if k > 0 {
                power = power.pow(p as u64);
            }
            if power.is_empty() {
                break;
            }
            let c = field
                .zeta_minus_one(level - k)?
                .scale_rational(&BigRational::new(BigInt::one(), BigInt::from(p).pow(k)));
            acc = acc.add(&power.scale(&c))?;
        }
    }
    Ok(acc)
}

/// `E_{s,p}(a) = Π_i E_{s-i,p}(a_i)` for a Witt vector of series with zero constant terms.
pub fn e_sp_multi(field: CycField, s: u32, args: &[MSeries]) -> Result<MSeries> {
    check_args(field, s, args)?;
    e_sp_exponent(field, s, args)?.exp()
}

/// Same product, assembled by substituting each `a_i` into the univariate
/// ratio series `E_p(ζ_{p^{s-i}} t)/E_p(t)`.
pub fn e_sp_multi_product(field: CycField, s: u32, args: &[MSeries]) -> Result<MSeries> {
    check_args(field, s, args)?;
    let degree = args[0].degree();
    let mut acc = args[0].one_clone();
    for (i, a) in args.iter().enumerate() {
        let uni = e_sp_ratio(field, s - i as u32, degree)?;
        acc = acc.mul(&uni.substitute(std::slice::from_ref(a))?)?;
    }
    Ok(acc)
}

/// `p·a` under the given reading.
pub fn scalar_p(field: CycField, args: &[MSeries], mode: ScalarMode) -> Result<Vec<MSeries>> {
    let p = field.p();
    match mode {
        ScalarMode::Witt => witt_scalar(p, p as u64, args),
        ScalarMode::Coordinatewise => Ok(args
            .iter()
            .map(|a| a.scale(&field.from_int(p as i64)))
            .collect()),
    }
}

/// `G_{s,p}(a)`. In Witt mode this is the closed exponential form
/// `Π_j exp(Σ_i (p(ζ_{p^{s-j-i}} - 1) - (ζ_{p^{s-j-i-1}} - 1)) a_j^{p^i}/p^i)`;
/// in coordinatewise mode it is the defining ratio with coordinatewise scaling.
pub fn g_sp(field: CycField, s: u32, args: &[MSeries], mode: ScalarMode) -> Result<MSeries> {
    match mode {
        ScalarMode::Witt => g_sp_expanded(field, s, args),
        ScalarMode::Coordinatewise => g_sp_ratio(field, s, args, mode),
    }
}

/// `G_{s,p}(a) = E_{s,p}(p·a) / E_{s-1,p}((a_0, …, a_{s-2}))`.
pub fn g_sp_ratio(field: CycField, s: u32, args: &[MSeries], mode: ScalarMode) -> Result<MSeries> {
    check_args(field, s, args)?;
    let pa = scalar_p(field, args, mode)?;
    let num = e_sp_multi(field, s, &pa)?;
    if s == 1 {
        return Ok(num);
    }
    let den = e_sp_multi(field, s - 1, &args[..s as usize - 1])?;
    num.div(&den)
}

/// The closed exponential form of `G_{s,p}`.
pub fn g_sp_expanded(field: CycField, s: u32, args: &[MSeries]) -> Result<MSeries> {
    check_args(field, s, args)?;
    let p = field.p();
    let mut acc = args[0].zero_clone();
    for (j, a) in args.iter().enumerate() {
        let mut power = a.clone();
        for i in 0..s - j as u32 {
            if i > 0 {
                power = power.pow(p as u64);
            }
            if power.is_empty() {
                break;
            }
            let level = s - j as u32 - i;
            let c = (field.zeta_minus_one(level)?.scale_int(&BigInt::from(p))
                - field.zeta_minus_one(level - 1)?)
            .scale_rational(&BigRational::new(BigInt::one(), BigInt::from(p).pow(i)));
            acc = acc.add(&power.scale(&c))?;
        }
    }
    acc.exp()
}

/// The Teichmüller form `Π_j E_{s-j,p}((p - 1 - Σ_{k=1}^{p-1} [ζ_{p^{s-j}}^k]) [a_j])`,
/// with the coefficient Witt vector built by Witt arithmetic in `W_{s-j}`.
pub fn g_sp_teichmuller(field: CycField, s: u32, args: &[MSeries]) -> Result<MSeries> {
    check_args(field, s, args)?;
    let p = field.p();
    let mut acc = args[0].one_clone();
    for (j, a) in args.iter().enumerate() {
        let len = (s - j as u32) as usize;
        let zeta = field.zeta(len as u32)?;
        let lift = teichmuller(a, len);
        let mut v = witt_scalar(p, p as u64 - 1, &lift)?;
        for k in 1..p {
            let twisted = teichmuller(&a.scale(&zeta.pow(k as u64)), len);
            v = witt_add(p, &v, &witt_neg(p, &twisted)?)?;
        }
        acc = acc.mul(&e_sp_multi(field, len as u32, &v)?)?;
    }
    Ok(acc)
}

/// `Ψ_s(a) = E_{s,p}(p^s·a)`, with `p^s·a` the Witt-scalar multiple.
pub fn psi_matsuda(field: CycField, s: u32, args: &[MSeries]) -> Result<MSeries> {
    check_args(field, s, args)?;
    let scaled = witt_scalar(field.p(), (field.p() as u64).pow(s), args)?;
    e_sp_multi(field, s, &scaled)
}

/// Variables `X_offset, …, X_{offset+len-1}` of a ring with `nvars` variables.
pub fn symbolic_args(
    field: CycField,
    nvars: usize,
    offset: usize,
    len: usize,
    degree: u32,
) -> Result<Vec<MSeries>> {
    (offset..offset + len)
        .map(|i| MSeries::var(field, nvars, degree, i))
        .collect()
}

impl MSeries {
    pub(crate) fn zero_clone(&self) -> MSeries {
        MSeries::zero(self.field(), self.nvars(), self.degree()).unwrap()
    }

    pub(crate) fn one_clone(&self) -> MSeries {
        MSeries::one(self.field(), self.nvars(), self.degree()).unwrap()
    }
}

/// The claimed coefficient bound for `G_{s,p}`: `Σ_j n_j ν(ζ_{p^{s-j}} - 1)` for
/// the monomial `a^n`, i.e. membership in `R[[(ζ_{p^s} - 1)a_0, …, λa_{s-1}]]`.
/// It holds for `p = 3` in the computed range but fails for `p = 2` from degree 8
/// (the `a_0^8` coefficient of `G_{2,2}` is `1528/315` up to units, `ν = 3 < 4`).
pub fn g_monomial_bound(field: CycField, s: u32, m: &Monomial) -> Val {
    let mut acc = Val::int(0);
    for j in 0..s as usize {
        let e = m.exp(j) as u64;
        if e > 0 {
            acc = acc + field.val_zeta_minus_one(s - j as u32).times(e);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn artin_hasse_low_coefficients() {
        let c = ah_exp(2, 4);
        assert_eq!(c[0], q(1, 1));
        assert_eq!(c[1], q(1, 1));
        assert_eq!(c[2], q(1, 1));
    }

    #[test]
    fn e22_closed_form() {
        let k = CycField::new(2, 2).unwrap();
        let t = MSeries::var(k, 1, 6, 0).unwrap();
        let expo = t
            .scale(&k.zeta_minus_one(2).unwrap())
            .sub(&t.pow(2))
            .unwrap();
        assert_eq!(e_sp(k, 2, 6).unwrap(), expo.exp().unwrap());
        assert_eq!(e_sp_ratio(k, 2, 6).unwrap(), expo.exp().unwrap());
    }

    #[test]
    fn g_at_zero_is_one() {
        let k = CycField::new(3, 2).unwrap();
        let zero = vec![MSeries::zero(k, 2, 5).unwrap(); 2];
        for mode in [ScalarMode::Witt, ScalarMode::Coordinatewise] {
            assert_eq!(
                g_sp(k, 2, &zero, mode).unwrap(),
                MSeries::one(k, 2, 5).unwrap()
            );
        }
    }

    #[test]
    fn g_first_argument_both_readings() {
        let k = CycField::new(2, 2).unwrap();
        let a = MSeries::var(k, 1, 6, 0).unwrap();
        let args = vec![a.clone(), MSeries::zero(k, 1, 6).unwrap()];
        let two_i = k.zeta(2).unwrap().scale_int(&BigInt::from(2));
        let witt = a.scale(&two_i).sub(&a.pow(2).scale_rational(&q(2, 1))).unwrap();
        let coord = a.scale(&two_i).sub(&a.pow(2).scale_rational(&q(4, 1))).unwrap();
        assert_eq!(
            g_sp(k, 2, &args, ScalarMode::Witt).unwrap(),
            witt.exp().unwrap()
        );
        assert_eq!(
            g_sp(k, 2, &args, ScalarMode::Coordinatewise).unwrap(),
            coord.exp().unwrap()
        );
    }

    #[test]
    fn psi_for_s1() {
        let k = CycField::new(3, 1).unwrap();
        let a = MSeries::var(k, 1, 6, 0).unwrap();
        let expected = a
            .scale(&k.lambda().scale_int(&BigInt::from(3)))
            .exp()
            .unwrap();
        assert_eq!(psi_matsuda(k, 1, &[a]).unwrap(), expected);
    }

    #[test]
    fn constant_term_rejected() {
        let k = CycField::new(2, 1).unwrap();
        let one = MSeries::one(k, 1, 4).unwrap();
        assert!(matches!(
            e_sp_multi(k, 1, &[one]),
            Err(Error::ConstantTerm(_))
        ));
        assert!(e_sp(k, 2, 4).is_err());
    }

    #[test]
    fn e_shift_reduces_length() {
        // E_{s,p}((0, a_0)) = E_{s-1,p}((a_0))
        let k = CycField::new(2, 2).unwrap();
        let a = MSeries::var(k, 1, 8, 0).unwrap();
        let zero = MSeries::zero(k, 1, 8).unwrap();
        let lhs = e_sp_multi(k, 2, &[zero, a.clone()]).unwrap();
        assert_eq!(lhs, e_sp_multi(k, 1, &[a]).unwrap());
        assert!(lhs.min_val() >= Val::int(0));
    }

    #[test]
    fn g22_eighth_coefficient_breaks_claimed_bound() {
        // exp(2ia - 2a^2) at a^8: Σ_k (2i)^{8-2k} (-2)^k / ((8-2k)! k!) = 1528/315
        let k = CycField::new(2, 2).unwrap();
        let a = MSeries::var(k, 1, 8, 0).unwrap();
        let zero = MSeries::zero(k, 1, 8).unwrap();
        let g = g_sp(k, 2, &[a, zero], ScalarMode::Witt).unwrap();
        let m = Monomial::from_exps(&[8]).unwrap();
        assert_eq!(g.coefficient(&m), k.from_rational(&q(1528, 315)));
        assert!(g.coefficient(&m).valuation() < g_monomial_bound(k, 2, &m));
    }
}
