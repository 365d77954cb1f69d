//! The polynomials `G_i`, `E_i`, `H_i` and the coordinate changes `X'`, `Y'`.
//!
//! All series live in `Q(ζ_{p^s})[[X_0..X_{s-1}]]` truncated at degree `D`; the
//! `Y` side reuses the same variable slots. Level `i` in the vectors below means
//! index `i` holds `G_{i+1}`, `E_{i+1}`, `X'_i`, `Y'_i`, `H_{i+1}`.

mod special;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::artin_hasse::{e_sp_multi, g_sp, ScalarMode};
use crate::cyclotomic::{CycField, CycNum, Val};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::MSeries;

pub use special::{solve_wp, special_fiber, special_fiber_stable, AswReport, LevelReport};

/// Default truncation degree.
pub const DEFAULT_DEGREE: u32 = 8;
/// Default cap for the stabilization loop.
pub const DEFAULT_CAP: u32 = 24;

#[derive(Clone, Debug)]
pub struct LiftConfig {
    pub p: u32,
    pub s: u32,
    pub degree: u32,
    pub mode: ScalarMode,
    /// Replaces the computed `G_{i+1}` (by index `i`) with a given polynomial.
    pub g_override: Vec<(usize, MSeries)>,
}

impl LiftConfig {
    pub fn new(p: u32, s: u32, degree: u32) -> LiftConfig {
        LiftConfig {
            p,
            s,
            degree,
            mode: ScalarMode::Witt,
            g_override: Vec::new(),
        }
    }

    pub fn field(&self) -> Result<CycField> {
        let field = CycField::new(self.p, self.s)?;
        if self.s as usize > crate::monomial::MAX_VARS {
            return Err(Error::InvalidParameter(format!("s = {} too large", self.s)));
        }
        Ok(field)
    }

    pub fn with_degree(&self, degree: u32) -> LiftConfig {
        LiftConfig {
            degree,
            ..self.clone()
        }
    }
}

/// The `G` side: `G_{i+1}`, the series `G_{i+1,p}((X'_0, …, X'_{i-1}, 0))`
/// it truncates, the remainder `G'_{i+1}`, and `X'_i`.
#[derive(Clone, Debug)]
pub struct GSide {
    pub g: Vec<MSeries>,
    pub g_series: Vec<MSeries>,
    pub g_rem: Vec<MSeries>,
    pub xp: Vec<MSeries>,
}

/// The `E` side, built the same way from `Y`.
#[derive(Clone, Debug)]
pub struct ESide {
    pub e: Vec<MSeries>,
    pub e_series: Vec<MSeries>,
    pub e_rem: Vec<MSeries>,
    pub yp: Vec<MSeries>,
}

/// Everything computed for one `(p, s, D)`.
#[derive(Clone, Debug)]
pub struct LiftTables {
    pub p: u32,
    pub s: u32,
    pub degree: u32,
    pub mode: ScalarMode,
    pub field: CycField,
    pub g: Vec<MSeries>,
    pub g_series: Vec<MSeries>,
    pub g_rem: Vec<MSeries>,
    pub xp: Vec<MSeries>,
    pub e: Vec<MSeries>,
    pub e_series: Vec<MSeries>,
    pub e_rem: Vec<MSeries>,
    pub yp: Vec<MSeries>,
    /// `S_j(Y)`: `X_j` expressed in the `Y` coordinates.
    pub x_of_y: Vec<MSeries>,
    /// `H_1..H_s`.
    pub h: Vec<MSeries>,
    /// `H` recomputed through `(Z_{j-1}^p - Z_{j-2} G_j(S)) / (pλ)`.
    pub h_alt: Vec<MSeries>,
}

pub(crate) struct Consts {
    pub pl: CycNum,
    pub inv_pl: CycNum,
    pub lambda: CycNum,
    pub inv_lambda: CycNum,
    /// `λ^{p-1}/p`
    pub kappa: CycNum,
}

impl Consts {
    pub fn new(field: CycField) -> Result<Consts> {
        let p = field.p();
        let lambda = field.lambda();
        let pl = lambda.scale_int(&BigInt::from(p));
        Ok(Consts {
            inv_pl: pl.inv()?,
            inv_lambda: lambda.inv()?,
            kappa: lambda
                .pow(p as u64 - 1)
                .scale_rational(&BigRational::new(BigInt::one(), BigInt::from(p))),
            pl,
            lambda,
        })
    }
}

/// `ν(pλ) = p/(p-1)`, the `G` truncation threshold.
pub fn g_threshold(p: u32) -> Val {
    Val::frac(p as i64, p as i64 - 1)
}

/// `ν(λ) = 1/(p-1)`, the `E` truncation threshold.
pub fn e_threshold(p: u32) -> Val {
    Val::frac(1, p as i64 - 1)
}

fn vars(field: CycField, s: u32, degree: u32) -> Result<Vec<MSeries>> {
    (0..s as usize)
        .map(|i| MSeries::var(field, s as usize, degree, i))
        .collect()
}

/// `(a_0, …, a_{i-1}, 0)`.
fn padded(prefix: &[MSeries]) -> Vec<MSeries> {
    let mut v = prefix.to_vec();
    v.push(prefix[0].zero_like_series());
    v
}

impl MSeries {
    fn zero_like_series(&self) -> MSeries {
        MSeries::zero(self.field(), self.nvars(), self.degree()).unwrap()
    }
}

/// `X'_i = (1/pλ) ln(u_i / G_{i+1,p}((X'_0, …, X'_{i-1}, 0)))` with
/// `u_i = G_{i+1}(X) + pλ X_i`.
pub fn compute_xprime(
    field: CycField,
    i: usize,
    g_poly: &MSeries,
    g_series: &MSeries,
    degree: u32,
) -> Result<MSeries> {
    let c = Consts::new(field)?;
    let x = MSeries::var(field, field.s() as usize, degree, i)?;
    let u = g_poly.add(&x.scale(&c.pl))?;
    Ok(u.div(g_series)?.ln()?.scale(&c.inv_pl))
}

/// Builds `G_1..G_s` and `X'_0..X'_{s-1}`. `G_{i+1}` keeps the terms of
/// `G_{i+1,p}((X'_0, …, X'_{i-1}, 0))` with `ν ≤ p/(p-1)`.
pub fn compute_g(cfg: &LiftConfig) -> Result<GSide> {
    let field = cfg.field()?;
    let (s, d) = (cfg.s, cfg.degree);
    let one = MSeries::one(field, s as usize, d)?;
    let threshold = g_threshold(cfg.p);
    let mut side = GSide {
        g: Vec::new(),
        g_series: Vec::new(),
        g_rem: Vec::new(),
        xp: Vec::new(),
    };
    for i in 0..s as usize {
        let series = if i == 0 {
            one.clone()
        } else {
            g_sp(field, i as u32 + 1, &padded(&side.xp), cfg.mode)?
        };
        let (mut kept, _) = series.val_split(&threshold, false);
        if let Some((_, poly)) = cfg.g_override.iter().find(|(k, _)| *k == i) {
            kept = poly.with_degree(d);
        }
        let rem = series.sub(&kept)?;
        side.xp.push(compute_xprime(field, i, &kept, &series, d)?);
        side.g.push(kept);
        side.g_series.push(series);
        side.g_rem.push(rem);
    }
    Ok(side)
}

/// Builds `E_1..E_s` and `Y'_0..Y'_{s-1}`. `E_{i+1}` keeps the terms of
/// `E_{i+1,p}((Y'_0, …, Y'_{i-1}, 0))` with `ν < 1/(p-1)`, and
/// `Y'_i = (1/λ) ln(Z_i / E_{i+1,p}((Y'_0, …, Y'_{i-1}, 0)))`, `Z_i = E_{i+1} + λY_i`.
pub fn compute_yprime_e(cfg: &LiftConfig) -> Result<ESide> {
    let field = cfg.field()?;
    let (s, d) = (cfg.s, cfg.degree);
    let c = Consts::new(field)?;
    let y = vars(field, s, d)?;
    let one = MSeries::one(field, s as usize, d)?;
    let threshold = e_threshold(cfg.p);
    let mut side = ESide {
        e: Vec::new(),
        e_series: Vec::new(),
        e_rem: Vec::new(),
        yp: Vec::new(),
    };
    for i in 0..s as usize {
        let series = if i == 0 {
            one.clone()
        } else {
            e_sp_multi(field, i as u32 + 1, &padded(&side.yp))?
        };
        let (kept, rem) = series.val_split(&threshold, true);
        let z = kept.add(&y[i].scale(&c.lambda))?;
        side.yp.push(z.div(&series)?.ln()?.scale(&c.inv_lambda));
        side.e.push(kept);
        side.e_series.push(series);
        side.e_rem.push(rem);
    }
    Ok(side)
}

/// `Z_i = E_{i+1}(Y) + λ Y_i`.
pub fn z_series(field: CycField, e: &[MSeries], i: usize) -> Result<MSeries> {
    let lambda = field.lambda();
    let y = MSeries::var(field, e[i].nvars(), e[i].degree(), i)?;
    e[i].add(&y.scale(&lambda))
}

/// `S_j(Y) = (1/pλ)(exp(pλ Y'_j) G_{j+1,p}((Y'_0, …, Y'_{j-1}, 0)) - G_{j+1}(S_0, …, S_{j-1}))`
/// and `H_j` by both routes.
pub fn minimal_poly(
    cfg: &LiftConfig,
    gside: &GSide,
    eside: &ESide,
) -> Result<(Vec<MSeries>, Vec<MSeries>, Vec<MSeries>)> {
    let field = cfg.field()?;
    let (s, d) = (cfg.s as usize, cfg.degree);
    let c = Consts::new(field)?;
    let y = vars(field, cfg.s, d)?;
    let one = MSeries::one(field, s, d)?;
    let zero = MSeries::zero(field, s, d)?;
    let mut x_of_y: Vec<MSeries> = Vec::new();
    for j in 0..s {
        let gp = if j == 0 {
            one.clone()
        } else {
            g_sp(field, j as u32 + 1, &padded(&eside.yp[..j]), cfg.mode)?
        };
        let lead = eside.yp[j].scale(&c.pl).exp()?.mul(&gp)?;
        let g_at_s = substitute_prefix(&gside.g[j], &x_of_y, &zero)?;
        x_of_y.push(lead.sub(&g_at_s)?.scale(&c.inv_pl));
    }
    let z: Vec<MSeries> = (0..s)
        .map(|i| z_series(field, &eside.e, i))
        .collect::<Result<_>>()?;
    let mut h = Vec::new();
    let mut h_alt = Vec::new();
    for j in 1..=s {
        let yj = &y[j - 1];
        let tail = yj.pow(field.p() as u64).scale(&c.kappa).add(yj)?;
        let z_prev = if j >= 2 { z[j - 2].clone() } else { one.clone() };
        h.push(z_prev.mul(&x_of_y[j - 1])?.sub(&tail)?);
        let g_at_s = substitute_prefix(&gside.g[j - 1], &x_of_y[..j - 1], &zero)?;
        let alt = z[j - 1]
            .pow(field.p() as u64)
            .sub(&z_prev.mul(&g_at_s)?)?
            .scale(&c.inv_pl)
            .sub(&tail)?;
        h_alt.push(alt);
    }
    Ok((x_of_y, h, h_alt))
}

/// Substitutes `X_k ↦ prefix[k]` for `k < prefix.len()` and `X_k ↦ 0` otherwise.
fn substitute_prefix(poly: &MSeries, prefix: &[MSeries], zero: &MSeries) -> Result<MSeries> {
    let mut args = prefix.to_vec();
    args.resize(poly.nvars(), zero.clone());
    poly.substitute_polynomial(&args)
}

/// Runs the whole construction.
pub fn build_tables(cfg: &LiftConfig) -> Result<LiftTables> {
    let field = cfg.field()?;
    if cfg.degree < 1 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let gside = compute_g(cfg)?;
    let eside = compute_yprime_e(cfg)?;
    let (x_of_y, h, h_alt) = minimal_poly(cfg, &gside, &eside)?;
    Ok(LiftTables {
        p: cfg.p,
        s: cfg.s,
        degree: cfg.degree,
        mode: cfg.mode,
        field,
        g: gside.g,
        g_series: gside.g_series,
        g_rem: gside.g_rem,
        xp: gside.xp,
        e: eside.e,
        e_series: eside.e_series,
        e_rem: eside.e_rem,
        yp: eside.yp,
        x_of_y,
        h,
        h_alt,
    })
}

/// Whether two series have identical terms (truncation degrees may differ).
pub fn same_terms(a: &MSeries, b: &MSeries) -> bool {
    a.len() == b.len() && a.terms().zip(b.terms()).all(|(x, y)| x == y)
}

/// Outcome of comparing the kept polynomials at two truncation degrees.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub degree: u32,
    pub degree2: u32,
    pub stable: bool,
    pub difference: Option<String>,
}

fn first_difference(name: &str, a: &[MSeries], b: &[MSeries]) -> Option<String> {
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        if same_terms(x, y) {
            continue;
        }
        let witness = y
            .terms()
            .find(|(m, c)| x.coefficient(m) != **c)
            .or_else(|| x.terms().find(|(m, c)| y.coefficient(m) != **c))
            .map(|(m, c)| format!("{} coefficient {}", m.display_with(y.nvars(), &crate::monomial::var_names("X", y.nvars())), c))
            .unwrap_or_default();
        return Some(format!("{}_{} differs at {}", name, i + 1, witness));
    }
    None
}

/// Recomputes at `degree2` and compares the kept `G_i` and `E_i`.
pub fn stabilize(cfg: &LiftConfig, degree2: u32) -> Result<StabilityReport> {
    let a = build_tables(cfg)?;
    let b = build_tables(&cfg.with_degree(degree2))?;
    Ok(compare_tables(&a, &b))
}

pub fn compare_tables(a: &LiftTables, b: &LiftTables) -> StabilityReport {
    let difference =
        first_difference("G", &a.g, &b.g).or_else(|| first_difference("E", &a.e, &b.e));
    StabilityReport {
        degree: a.degree,
        degree2: b.degree,
        stable: difference.is_none(),
        difference,
    }
}

/// `F_{i+1} = Y'_i - Y_i - (-1)^{p-1} (λ^{p-1}/p) Y_i^p`.
pub fn yprime_defect(t: &LiftTables, i: usize) -> Result<MSeries> {
    let c = Consts::new(t.field)?;
    let y = MSeries::var(t.field, t.s as usize, t.degree, i)?;
    let sign = if t.p % 2 == 1 { 1 } else { -1 };
    let kappa = c.kappa.scale_int(&BigInt::from(sign));
    t.yp[i].sub(&y)?.sub(&y.pow(t.p as u64).scale(&kappa))
}

/// `1 + (ζ_4 - 1)`-style constructor for a univariate-in-`X_i` polynomial in `s` variables.
pub fn poly_in_var(
    field: CycField,
    s: u32,
    degree: u32,
    var: usize,
    coeffs: &[(u32, CycNum)],
) -> Result<MSeries> {
    MSeries::from_terms(
        field,
        s as usize,
        degree,
        coeffs.iter().map(|(k, c)| {
            let mut exps = vec![0; s as usize];
            exps[var] = *k;
            (Monomial::from_exps(&exps).unwrap(), c.clone())
        }),
    )
}

/// The `p = 2` example polynomial `1 + 2ζ_4 X_0 - 52 X_0^4` as `G_2` for `s ≥ 2`.
pub fn example_g2(s: u32, degree: u32) -> Result<MSeries> {
    let field = CycField::new(2, s)?;
    let two_i = field.zeta(2)?.scale_int(&BigInt::from(2));
    poly_in_var(
        field,
        s,
        degree,
        0,
        &[(0, field.one()), (1, two_i), (4, field.from_int(-52))],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_for_p2_matches_example() {
        let t = build_tables(&LiftConfig::new(2, 2, 8)).unwrap();
        assert!(!t.g[0].is_empty() && t.g[0].len() == 1);
        assert_eq!(t.g[1], example_g2(2, 8).unwrap());
        assert_eq!(t.g_rem[1].min_val(), Val::frac(5, 2));
        let e2 = &t.e[1];
        assert_eq!(e2.len(), 2);
        assert_eq!(e2.coefficient(&Monomial::var(0)), t.field.zeta_minus_one(2).unwrap());
    }

    #[test]
    fn s1_closed_form() {
        for p in [2u32, 3, 5] {
            let t = build_tables(&LiftConfig::new(p, 1, 8)).unwrap();
            let f = t.field;
            let lambda = f.lambda();
            let mut expected = Vec::new();
            for i in 1..=p {
                let binom: u64 = (1..=i as u64).fold(1, |acc, k| acc * (p as u64 - k + 1) / k);
                let c = lambda
                    .pow(i as u64 - 1)
                    .scale_rational(&BigRational::new(binom.into(), BigInt::from(p)));
                expected.push((i, c));
            }
            let s0 = poly_in_var(f, 1, 8, 0, &expected).unwrap();
            assert_eq!(t.x_of_y[0], s0, "p = {}", p);
        }
    }

    #[test]
    fn minimal_poly_routes_agree() {
        let t = build_tables(&LiftConfig::new(2, 2, 8)).unwrap();
        assert_eq!(t.h, t.h_alt);
        assert!(t.h[1].is_integral());
        assert!(t.h[1].constant_term().is_zero());
    }
}
