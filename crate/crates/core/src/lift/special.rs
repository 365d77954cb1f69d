//! Reduction modulo `π` and the Artin-Schreier-Witt shift.
//!
//! For each level `j` the reduced `H̄_j` must equal `f_j(y_0, y_1 + b_1, …) + ℘(b_{j-1})`
//! for polynomials `b_i` over `F_p`. The shifts are found level by level by
//! solving the `F_p`-linear system `b - b^p = target`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fp::FpPoly;
use crate::monomial::Monomial;
use crate::ring::CoeffRing;
use crate::witt::asw_map;

use super::{build_tables, LiftConfig, LiftTables};

/// One level of the special-fiber analysis.
#[derive(Clone, Debug)]
pub struct LevelReport {
    /// The level `j` (`1..=s`).
    pub level: usize,
    pub h_bar: FpPoly,
    /// `S̄_{j-1} = y_{j-1} - y_{j-1}^p + H̄_j` holds to the truncation degree.
    pub relation_holds: bool,
    /// `H̄_j` only involves `y_0..y_{j-2}`.
    pub variables_ok: bool,
    /// `f_j(y_0, y_1 + b_1, …, y_{j-2} + b_{j-2})`.
    pub f_shifted: FpPoly,
    /// `b_{j-1}` with `H̄_j - f_shifted = ℘(b_{j-1})`, if found.
    pub shift: Option<FpPoly>,
    pub note: Option<String>,
}

impl LevelReport {
    pub fn ok(&self) -> bool {
        self.relation_holds && self.variables_ok && self.shift.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct AswReport {
    pub p: u32,
    pub s: u32,
    pub degree: u32,
    pub shift_bound: u32,
    pub levels: Vec<LevelReport>,
}

impl AswReport {
    pub fn ok(&self) -> bool {
        self.levels.iter().all(|l| l.ok())
    }

    pub fn h_bars(&self) -> Vec<FpPoly> {
        self.levels.iter().map(|l| l.h_bar.clone()).collect()
    }
}

/// All monomials in variables `0..nv` of total degree `1..=bound`.
fn monomials_up_to(nv: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nv];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == exps.len() {
            if exps.iter().sum::<u32>() > 0 {
                out.push(Monomial::from_exps(exps).unwrap());
            }
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, bound, &mut exps, &mut out);
    out.sort();
    out
}

/// Solves `b - b^p = target` over `F_p` with `b` supported on monomials in
/// `y_0..y_{nv-1}` of degree `1..=bound`. Returns `None` when no such `b` exists.
pub fn solve_wp(target: &FpPoly, nv: usize, bound: u32) -> Option<FpPoly> {
    let p = target.p() as u64;
    let unknowns = monomials_up_to(nv, bound);
    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    let row_of = |m: Monomial, rows: &mut HashMap<Monomial, usize>| {
        let n = rows.len();
        *rows.entry(m).or_insert(n)
    };
    let mut columns: Vec<Vec<(usize, u64)>> = Vec::new();
    for u in &unknowns {
        let r1 = row_of(*u, &mut rows);
        let r2 = row_of(u.pow(p as u32), &mut rows);
        columns.push(vec![(r1, 1), (r2, p - 1)]);
    }
    let mut rhs_entries = Vec::new();
    for (m, c) in target.terms() {
        let r = row_of(*m, &mut rows);
        rhs_entries.push((r, *c as u64));
    }
    let nrows = rows.len();
    let ncols = unknowns.len();
    // dense augmented matrix, rows x (ncols + 1)
    let mut a = vec![vec![0u64; ncols + 1]; nrows];
    for (j, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            a[r][j] = (a[r][j] + v) % p;
        }
    }
    for (r, v) in rhs_entries {
        a[r][ncols] = (a[r][ncols] + v) % p;
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(piv) = (row..nrows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, piv);
        let inv = crate::cyclotomic::inv_mod(a[row][col], p);
        for v in a[row].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..nrows {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..=ncols {
                    a[r][c] = (a[r][c] + p * p - f * a[row][c]) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    if a[row..].iter().any(|r| r[ncols] != 0) {
        return None;
    }
    let mut b = FpPoly::zero(target.p(), target.nvars());
    for (i, &col) in pivots.iter().enumerate() {
        b.add_term(unknowns[col], a[i][ncols] as i64);
    }
    debug_assert_eq!(b.wp(), *target);
    Some(b)
}

/// Analyses the reduction of the tables modulo `π`. `shift_bound` is the degree
/// bound for the shifts (`4p^s` by default).
pub fn special_fiber(t: &LiftTables, shift_bound: Option<u32>) -> Result<AswReport> {
    let p = t.p;
    let s = t.s as usize;
    let bound = shift_bound.unwrap_or(4 * p.pow(t.s));
    let mut levels = Vec::new();
    let mut shifts: Vec<FpPoly> = Vec::new();
    for j in 1..=s {
        let h_bar = t.h[j - 1].reduce_mod_pi()?;
        let s_bar = t.x_of_y[j - 1].reduce_mod_pi()?;
        let y = FpPoly::var(p, s, j - 1);
        let expected = y.sub_ref(&y.frobenius()).add_ref(&h_bar).truncated(t.degree);
        let relation_holds = s_bar == expected;
        let variables_ok = !h_bar.involves_vars_from(j - 1);
        // (y_0, y_1 + b_1, …, y_{j-2} + b_{j-2}, 0)
        let mut w: Vec<FpPoly> = (0..j - 1)
            .map(|i| {
                let yi = FpPoly::var(p, s, i);
                match shifts.get(i) {
                    Some(b) if i > 0 => yi.add_ref(b),
                    _ => yi,
                }
            })
            .collect();
        w.push(FpPoly::zero(p, s));
        let f_shifted = asw_map(&w)?[j - 1].clone();
        let target = h_bar.sub_ref(&f_shifted);
        let (shift, note) = match solve_wp(&target, j - 1, bound) {
            Some(b) => (Some(b), None),
            None => (
                None,
                Some(format!(
                    "H̄_{} - f_{} = {} is not b - b^p for deg b <= {}",
                    j, j, target, bound
                )),
            ),
        };
        shifts.push(shift.clone().unwrap_or_else(|| FpPoly::zero(p, s)));
        levels.push(LevelReport {
            level: j,
            h_bar,
            relation_holds,
            variables_ok,
            f_shifted,
            shift,
            note,
        });
    }
    Ok(AswReport {
        p,
        s: t.s,
        degree: t.degree,
        shift_bound: bound,
        levels,
    })
}

/// Doubles the truncation degree (up to `cap`) until `H̄_1..H̄_s` agree between
/// two consecutive runs, then analyses the last run.
pub fn special_fiber_stable(cfg: &LiftConfig, cap: u32, shift_bound: Option<u32>) -> Result<AswReport> {
    let mut degree = cfg.degree;
    let mut prev = special_fiber(&build_tables(cfg)?, shift_bound)?;
    loop {
        if degree >= cap {
            return Err(Error::Unstable(format!(
                "H̄ still changing at degree {} (cap {})",
                degree, cap
            )));
        }
        degree = (2 * degree).min(cap);
        let next = special_fiber(&build_tables(&cfg.with_degree(degree))?, shift_bound)?;
        if next.h_bars() == prev.h_bars() {
            return Ok(next);
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wp_solver_finds_known_shift() {
        let y = FpPoly::var(2, 1, 0);
        let b = y.pow_u(2).add_ref(&y.pow_u(4));
        assert_eq!(solve_wp(&b.wp(), 1, 8), Some(b));
    }

    #[test]
    fn wp_solver_rejects_odd_cube_in_char_2() {
        let y = FpPoly::var(2, 1, 0);
        let t = y.pow_u(3).add_ref(&y.pow_u(8));
        assert_eq!(solve_wp(&t, 1, 16), None);
    }
}
