//! Points of the two group schemes and their group laws.
//!
//! A point of the `V` side has coordinates `X_0..X_{s-1}` in `R = Z_(p)[ζ]` with
//! every `u_j = G_{j+1}(X) + pλX_j` a unit. On the `W` side the coordinates are
//! `Y_j` and the units are `Z_j = E_{j+1}(Y) + λY_j`. Both laws are pulled back
//! from coordinatewise multiplication of the units, so the results are exact.

mod padic;

use num_bigint::BigInt;

use crate::cyclotomic::{CycField, CycNum, Val};
use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::lift::LiftTables;
use crate::series::MSeries;
use crate::witt::witt_add;

pub use padic::{
    diagram_check, from_witt_v, from_witt_w, gamma, padic_exp, padic_ln1p, round_trip_ok, tau,
    tau_is_additive, DiagramReport,
    PadicApprox, PadicEvaluator,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    V,
    W,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::V => write!(f, "V"),
            Side::W => write!(f, "W"),
        }
    }
}

/// The data the group laws need: the kept polynomials `G_i` and `E_i`.
#[derive(Clone, Debug)]
pub struct GroupTables {
    pub p: u32,
    pub s: u32,
    pub field: CycField,
    pub g: Vec<MSeries>,
    pub e: Vec<MSeries>,
}

impl From<&LiftTables> for GroupTables {
    fn from(t: &LiftTables) -> GroupTables {
        GroupTables {
            p: t.p,
            s: t.s,
            field: t.field,
            g: t.g.clone(),
            e: t.e.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub side: Side,
    pub coords: Vec<CycNum>,
}

impl Point {
    pub fn new(side: Side, coords: Vec<CycNum>) -> Point {
        Point { side, coords }
    }

    pub fn from_ints(field: CycField, side: Side, coords: &[i64]) -> Point {
        Point::new(side, coords.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}({})", self.side, parts.join(", "))
    }
}

impl GroupTables {
    fn polys(&self, side: Side) -> &[MSeries] {
        match side {
            Side::V => &self.g,
            Side::W => &self.e,
        }
    }

    /// `pλ` on the `V` side, `λ` on the `W` side.
    fn scale(&self, side: Side) -> CycNum {
        let lambda = self.field.lambda();
        match side {
            Side::V => lambda.scale_int(&BigInt::from(self.p)),
            Side::W => lambda,
        }
    }

    pub fn origin(&self, side: Side) -> Point {
        Point::new(side, vec![self.field.zero(); self.s as usize])
    }

    fn check_shape(&self, pt: &Point) -> Result<()> {
        if pt.coords.len() != self.s as usize {
            return Err(Error::InvalidPoint(format!(
                "{} coordinates, expected {}",
                pt.coords.len(),
                self.s
            )));
        }
        if pt.coords.iter().any(|c| c.field() != self.field) {
            return Err(Error::InvalidPoint(format!("coordinates outside {}", self.field)));
        }
        Ok(())
    }

    /// `G_{j+1}` or `E_{j+1}` at the first `j` coordinates (the rest set to zero).
    fn poly_at(&self, side: Side, j: usize, coords: &[CycNum]) -> Result<CycNum> {
        let mut pt: Vec<CycNum> = coords[..j].to_vec();
        pt.resize(self.s as usize, self.field.zero());
        self.polys(side)[j].eval(&pt)
    }

    /// The units `u_j` (side `V`) or `Z_j` (side `W`).
    pub fn units(&self, pt: &Point) -> Result<Vec<CycNum>> {
        self.check_shape(pt)?;
        let c = self.scale(pt.side);
        (0..self.s as usize)
            .map(|j| Ok(self.poly_at(pt.side, j, &pt.coords)? + &pt.coords[j] * &c))
            .collect()
    }

    /// Checks integrality of the coordinates and that every unit has valuation zero.
    pub fn validate(&self, pt: &Point) -> Result<()> {
        self.check_shape(pt)?;
        for (j, c) in pt.coords.iter().enumerate() {
            if !c.is_integral() {
                return Err(Error::InvalidPoint(format!(
                    "coordinate {} = {} is not in R (valuation {})",
                    j,
                    c,
                    c.valuation()
                )));
            }
        }
        for (j, u) in self.units(pt)?.iter().enumerate() {
            if u.valuation() != Val::int(0) {
                return Err(Error::InvalidPoint(format!(
                    "unit {} = {} has valuation {}",
                    j,
                    u,
                    u.valuation()
                )));
            }
        }
        Ok(())
    }

    /// The point whose units are the given ones, solved coordinate by coordinate.
    pub fn from_units(&self, side: Side, units: &[CycNum]) -> Result<Point> {
        let inv = self.scale(side).inv()?;
        let mut coords: Vec<CycNum> = Vec::with_capacity(units.len());
        for (j, u) in units.iter().enumerate() {
            let base = self.poly_at(side, j, &coords)?;
            coords.push(&(u - &base) * &inv);
        }
        let pt = Point::new(side, coords);
        self.validate(&pt)?;
        Ok(pt)
    }

    pub fn add(&self, a: &Point, b: &Point) -> Result<Point> {
        if a.side != b.side {
            return Err(Error::Mismatch("points on different sides".into()));
        }
        self.validate(a)?;
        self.validate(b)?;
        let ua = self.units(a)?;
        let ub = self.units(b)?;
        let prod: Vec<CycNum> = ua.iter().zip(&ub).map(|(x, y)| x * y).collect();
        self.from_units(a.side, &prod)
    }

    pub fn neg(&self, a: &Point) -> Result<Point> {
        self.validate(a)?;
        let inv: Vec<CycNum> = self
            .units(a)?
            .iter()
            .map(|u| u.inv())
            .collect::<Result<_>>()?;
        self.from_units(a.side, &inv)
    }

    pub fn sub(&self, a: &Point, b: &Point) -> Result<Point> {
        self.add(a, &self.neg(b)?)
    }

    /// `n·P` by double-and-add.
    pub fn mul(&self, n: u64, a: &Point) -> Result<Point> {
        let mut acc = self.origin(a.side);
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// The least `n ≤ max` with `n·P = 0`.
    pub fn order(&self, a: &Point, max: u64) -> Result<Option<u64>> {
        let mut acc = a.clone();
        for n in 1..=max {
            if acc.is_origin() {
                return Ok(Some(n));
            }
            acc = self.add(&acc, a)?;
        }
        Ok(None)
    }

    /// `ψ_s`: the `V`-point with `u_i = Z_i^p / Z_{i-1}` (`Z_{-1} = 1`).
    pub fn isogeny(&self, w: &Point) -> Result<Point> {
        if w.side != Side::W {
            return Err(Error::Mismatch("the isogeny takes a W-point".into()));
        }
        self.validate(w)?;
        let z = self.units(w)?;
        let u = phi_s(self.p, &z)?;
        self.from_units(Side::V, &u)
    }

    /// The `W`-point with `Z_i = ζ_{p^{i+1}}`, which generates the kernel of `ψ_s`.
    pub fn kernel_generator(&self) -> Result<Point> {
        let z = kernel_tuple(self.field, self.s)?;
        self.from_units(Side::W, &z)
    }

    /// Coordinates modulo `π`.
    pub fn reduce(&self, pt: &Point) -> Result<Vec<Fp>> {
        pt.coords
            .iter()
            .map(|c| Ok(Fp::new(self.p, c.reduce_mod_pi()? as i64)))
            .collect()
    }

    /// Compares the reduction of `P ⊕ Q` with the Witt sum of the reductions.
    pub fn reduction_matches_witt(&self, a: &Point, b: &Point) -> Result<bool> {
        let sum = self.add(a, b)?;
        let expected = witt_add(self.p, &self.reduce(a)?, &self.reduce(b)?)?;
        Ok(self.reduce(&sum)? == expected)
    }
}

/// `(ζ_p, ζ_{p^2}, …, ζ_{p^s})`.
pub fn kernel_tuple(field: CycField, s: u32) -> Result<Vec<CycNum>> {
    (1..=s).map(|k| field.zeta(k)).collect()
}

/// `φ_s(Z)_i = Z_i^p / Z_{i-1}` with `Z_{-1} = 1`.
pub fn phi_s(p: u32, z: &[CycNum]) -> Result<Vec<CycNum>> {
    let mut out = Vec::with_capacity(z.len());
    for (i, zi) in z.iter().enumerate() {
        let num = zi.pow(p as u64);
        out.push(if i == 0 { num } else { num.div(&z[i - 1])? });
    }
    Ok(out)
}

/// `Π_i u_i^{p^i}`, the map from `(G_m)^s` to `G_m` in the bottom row.
pub fn telescope(p: u32, u: &[CycNum]) -> CycNum {
    let field = u[0].field();
    u.iter().enumerate().fold(field.one(), |acc, (i, ui)| {
        &acc * &ui.pow((p as u64).pow(i as u32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::{build_tables, LiftConfig};

    fn tables(p: u32, s: u32) -> GroupTables {
        GroupTables::from(&build_tables(&LiftConfig::new(p, s, 8)).unwrap())
    }

    #[test]
    fn s1_law_is_multiplicative_formula() {
        let t = tables(3, 1);
        let f = t.field;
        let a = Point::from_ints(f, Side::V, &[2]);
        let b = Point::from_ints(f, Side::V, &[-5]);
        let pl = f.lambda().scale_int(&BigInt::from(3));
        let expected = f.from_int(-3) + &(&f.from_int(-10) * &pl);
        assert_eq!(t.add(&a, &b).unwrap().coords[0], expected);
    }

    #[test]
    fn identity_and_doubling_reduction() {
        let t = tables(2, 2);
        let f = t.field;
        let a = Point::from_ints(f, Side::V, &[1, 0]);
        assert_eq!(t.add(&a, &t.origin(Side::V)).unwrap(), a);
        assert!(t.reduction_matches_witt(&a, &a).unwrap());
        let two = t.add(&a, &a).unwrap();
        assert_eq!(t.reduce(&two).unwrap(), vec![Fp::new(2, 0), Fp::new(2, 1)]);
    }

    #[test]
    fn s1_isogeny_and_kernel() {
        let t = tables(2, 1);
        let f = t.field;
        let y = Point::from_ints(f, Side::W, &[1]);
        assert!(t.isogeny(&y).unwrap().is_origin());
        assert_eq!(t.kernel_generator().unwrap(), y);
    }

    #[test]
    fn nonunit_point_rejected() {
        let t = tables(2, 1);
        let f = t.field;
        // 1 + 2λ X_0 with X_0 = 1/(2λ)·(-1) gives u = 0
        let bad = Point::new(Side::V, vec![f.lambda().scale_int(&BigInt::from(2)).inv().unwrap()]);
        assert!(t.validate(&bad).is_err());
    }
}
