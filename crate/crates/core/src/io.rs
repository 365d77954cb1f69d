//! JSON files: lift tables and points.
//!
//! A table is `{"p", "s", "D", "mode", "G", "E", "H"}` where each polynomial is a
//! list of `[exponents, coefficient]` pairs in graded-lex order and a coefficient
//! is its power-basis list of `"n/d"` strings. A point file is a JSON array of
//! points, each an array of coordinates in the same coefficient format.

use serde::{Deserialize, Serialize};

use crate::artin_hasse::ScalarMode;
use crate::cyclotomic::{CycField, CycNum};
use crate::error::{Error, Result};
use crate::group::{GroupTables, Point, Side};
use crate::lift::LiftTables;
use crate::monomial::Monomial;
use crate::series::MSeries;

pub type SeriesJson = Vec<(Vec<u32>, Vec<String>)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableFile {
    pub p: u32,
    pub s: u32,
    #[serde(rename = "D")]
    pub degree: u32,
    #[serde(default)]
    pub mode: ScalarMode,
    #[serde(rename = "G")]
    pub g: Vec<SeriesJson>,
    #[serde(rename = "E")]
    pub e: Vec<SeriesJson>,
    #[serde(rename = "H")]
    pub h: Vec<SeriesJson>,
}

pub fn series_to_json(f: &MSeries) -> SeriesJson {
    f.terms()
        .map(|(m, c)| (m.exps(f.nvars()), c.to_strings()))
        .collect()
}

pub fn series_from_json(field: CycField, nvars: usize, degree: u32, data: &SeriesJson) -> Result<MSeries> {
    let mut terms = Vec::with_capacity(data.len());
    for (exps, coeff) in data {
        if exps.len() != nvars {
            return Err(Error::Parse(format!(
                "exponent vector {:?} has {} entries, expected {}",
                exps,
                exps.len(),
                nvars
            )));
        }
        let m = Monomial::from_exps(exps)?;
        if m.degree() > degree {
            return Err(Error::Parse(format!("term {:?} exceeds degree {}", exps, degree)));
        }
        terms.push((m, CycNum::from_strings(field, coeff)?));
    }
    MSeries::from_terms(field, nvars, degree, terms)
}

impl TableFile {
    pub fn from_tables(t: &LiftTables) -> TableFile {
        TableFile {
            p: t.p,
            s: t.s,
            degree: t.degree,
            mode: t.mode,
            g: t.g.iter().map(series_to_json).collect(),
            e: t.e.iter().map(series_to_json).collect(),
            h: t.h.iter().map(series_to_json).collect(),
        }
    }

    pub fn field(&self) -> Result<CycField> {
        CycField::new(self.p, self.s)
    }

    fn series(&self, list: &[SeriesJson], name: &str) -> Result<Vec<MSeries>> {
        if list.len() != self.s as usize {
            return Err(Error::Parse(format!(
                "{} has {} entries, expected s = {}",
                name,
                list.len(),
                self.s
            )));
        }
        let field = self.field()?;
        list.iter()
            .map(|d| series_from_json(field, self.s as usize, self.degree, d))
            .collect()
    }

    pub fn g_series(&self) -> Result<Vec<MSeries>> {
        self.series(&self.g, "G")
    }

    pub fn e_series(&self) -> Result<Vec<MSeries>> {
        self.series(&self.e, "E")
    }

    pub fn h_series(&self) -> Result<Vec<MSeries>> {
        self.series(&self.h, "H")
    }

    pub fn group_tables(&self) -> Result<GroupTables> {
        Ok(GroupTables {
            p: self.p,
            s: self.s,
            field: self.field()?,
            g: self.g_series()?,
            e: self.e_series()?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn from_json(text: &str) -> Result<TableFile> {
        let t: TableFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        // parse everything once so malformed files fail here
        t.g_series()?;
        t.e_series()?;
        t.h_series()?;
        Ok(t)
    }

    /// Human-readable listing.
    pub fn pretty(&self) -> Result<String> {
        let mut out = format!(
            "p = {}, s = {}, D = {}, z = ζ_{}\n",
            self.p,
            self.s,
            self.degree,
            self.field()?.order()
        );
        for (i, g) in self.g_series()?.iter().enumerate() {
            out += &format!("G_{} = {}\n", i + 1, g.display_with("X"));
        }
        for (i, e) in self.e_series()?.iter().enumerate() {
            out += &format!("E_{} = {}\n", i + 1, e.display_with("Y"));
        }
        for (i, h) in self.h_series()?.iter().enumerate() {
            out += &format!("H_{} = {}\n", i + 1, h.display_with("Y"));
        }
        Ok(out)
    }
}

pub fn points_to_json(points: &[Point]) -> String {
    let data: Vec<Vec<Vec<String>>> = points
        .iter()
        .map(|p| p.coords.iter().map(|c| c.to_strings()).collect())
        .collect();
    serde_json::to_string(&data).expect("points serialize")
}

pub fn points_from_json(field: CycField, side: Side, text: &str) -> Result<Vec<Point>> {
    let data: Vec<Vec<Vec<String>>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    data.iter()
        .map(|coords| {
            let c = coords
                .iter()
                .map(|x| CycNum::from_strings(field, x))
                .collect::<Result<Vec<_>>>()?;
            Ok(Point::new(side, c))
        })
        .collect()
}
