//! `kasw`: generate lift tables, run the property suites, and compute with points.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use kasw_core::artin_hasse::{ah_exp_series, e_sp_multi, g_sp, symbolic_args, ScalarMode};
use kasw_core::cyclotomic::CycField;
use kasw_core::error::{Error, Result};
use kasw_core::group::{GroupTables, Point, Side};
use kasw_core::io::{points_from_json, points_to_json, TableFile};
use kasw_core::lift::{build_tables, special_fiber_stable, AswReport, LiftConfig, DEFAULT_CAP, DEFAULT_DEGREE};
use kasw_core::verify::{self, Suite, VerifyConfig};
use kasw_core::witt::universal_polys;

#[derive(Parser)]
#[command(name = "kasw", version, about = "Lifting data for the Artin-Schreier-Witt isogeny")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    V,
    W,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::V => Side::V,
            SideArg::W => Side::W,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Witt,
    Coordinatewise,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    /// `E_p(t)`
    ArtinHasse,
    /// `E_{s,p}((X_0, …, X_{s-1}))`
    E,
    /// `G_{s,p}((X_0, …, X_{s-1}))`
    G,
    /// Universal Witt addition and negation polynomials of length `s`.
    Witt,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    s: u32,
    /// Truncation degree.
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    degree: u32,
    /// Largest degree the stabilization loop may reach.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u32,
    /// Precision of the p-adic checks, in units of ν(p) = 1.
    #[arg(long, default_value_t = 6)]
    precision: u32,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Scalar action used inside G_{s,p}.
    #[arg(long, value_enum, default_value_t = ModeArg::Witt)]
    mode: ModeArg,
    /// Allow p outside {2, 3, 5} or s > 3 (slow).
    #[arg(long)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute G_i, E_i and H_i.
    Generate {
        #[command(flatten)]
        c: Common,
    },
    /// Run the property suites; exits nonzero when a gated check fails.
    Verify {
        #[command(flatten)]
        c: Common,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Random samples per group check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Sum of the points in a point file.
    Add {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::V)]
        side: SideArg,
    },
    /// Image under ψ_s of each W-point in a point file.
    Isogeny {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        points: PathBuf,
    },
    /// The generator of the kernel of ψ_s.
    Kernel {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// The special fiber: y_j - y_j^p + H̄_{j+1} = x_j over F_p.
    Reduce {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Print one of the underlying series to the truncation degree.
    Print {
        #[command(flatten)]
        c: Common,
        #[arg(value_enum)]
        series: SeriesName,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

impl Common {
    fn check(&self) -> Result<()> {
        if !self.allow_large && (![2, 3, 5].contains(&self.p) || !(1..=3).contains(&self.s)) {
            return Err(Error::InvalidParameter(format!(
                "(p, s) = ({}, {}) outside p ∈ {{2, 3, 5}}, 1 ≤ s ≤ 3; pass --allow-large to run anyway",
                self.p, self.s
            )));
        }
        Ok(())
    }

    fn lift(&self) -> LiftConfig {
        let mut cfg = LiftConfig::new(self.p, self.s, self.degree);
        cfg.mode = self.scalar_mode();
        cfg
    }

    fn scalar_mode(&self) -> ScalarMode {
        match self.mode {
            ModeArg::Witt => ScalarMode::Witt,
            ModeArg::Coordinatewise => ScalarMode::Coordinatewise,
        }
    }

    fn field(&self) -> Result<CycField> {
        CycField::new(self.p, self.s)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Parse(format!("cannot write {}: {}", path.display(), e))),
            None => {
                print!("{}", text);
                Ok(())
            }
        }
    }

    /// Group tables from a table file if given (checked against `--p`/`--s`), else computed.
    fn group_tables(&self, table: &Option<PathBuf>) -> Result<GroupTables> {
        match table {
            Some(path) => {
                let t = read_table(path)?;
                if (t.p, t.s) != (self.p, self.s) {
                    return Err(Error::Mismatch(format!(
                        "table is for (p, s) = ({}, {}), config says ({}, {})",
                        t.p, t.s, self.p, self.s
                    )));
                }
                t.group_tables()
            }
            None => Ok(GroupTables::from(&build_tables(&self.lift())?)),
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {}", path.display(), e)))
}

fn read_table(path: &PathBuf) -> Result<TableFile> {
    TableFile::from_json(&read_file(path)?)
}

fn format_points(points: &[Point], format: Format) -> String {
    match format {
        Format::Json => points_to_json(points) + "\n",
        Format::Pretty => {
            let mut out = String::new();
            for pt in points {
                let name = if pt.side == Side::V { "X" } else { "Y" };
                let parts: Vec<String> = pt
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(j, c)| format!("{}_{} = {}", name, j, c))
                    .collect();
                out += &parts.join(", ");
                out += "\n";
            }
            out
        }
    }
}

fn reduce_json(rep: &AswReport) -> serde_json::Value {
    let levels: Vec<serde_json::Value> = rep
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "H_bar": l.h_bar.display_with("y"),
                "relation_holds": l.relation_holds,
                "variables_ok": l.variables_ok,
                "f_shifted": l.f_shifted.display_with("y"),
                "shift": l.shift.as_ref().map(|b| b.display_with("y")),
                "note": l.note,
                "ok": l.ok(),
            })
        })
        .collect();
    json!({
        "p": rep.p,
        "s": rep.s,
        "D": rep.degree,
        "shift_bound": rep.shift_bound,
        "ok": rep.ok(),
        "levels": levels,
    })
}

fn reduce_pretty(rep: &AswReport) -> String {
    let mut out = format!("p = {}, s = {}, stable at D = {}\n", rep.p, rep.s, rep.degree);
    for l in &rep.levels {
        let j = l.level - 1;
        out += &format!(
            "y_{j} - y_{j}^{p} + ({h}) = x_{j}\n",
            j = j,
            p = rep.p,
            h = l.h_bar.display_with("y")
        );
        match &l.shift {
            Some(b) => out += &format!("    H̄_{} - f_{} = ℘({})\n", l.level, l.level, b.display_with("y")),
            None => out += &format!("    no shift found within degree {}\n", rep.shift_bound),
        }
        if let Some(n) = &l.note {
            out += &format!("    {}\n", n);
        }
    }
    out
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Generate { c } => {
            c.check()?;
            let t = TableFile::from_tables(&build_tables(&c.lift())?);
            let text = match c.format.unwrap_or(Format::Json) {
                Format::Json => t.to_json() + "\n",
                Format::Pretty => t.pretty()?,
            };
            c.emit(&text)?;
            Ok(true)
        }
        Cmd::Verify { c, suite, samples } => {
            c.check()?;
            let seed = match std::env::var("KASW_SEED") {
                Ok(v) => v
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("KASW_SEED = {:?} is not an integer", v)))?,
                Err(_) => 0,
            };
            let cfg = VerifyConfig {
                p: c.p,
                s: c.s,
                degree: c.degree,
                cap: c.cap,
                precision: c.precision,
                samples,
                seed,
            };
            let rep = verify::run(&cfg, suite.parse::<Suite>()?)?;
            let text = match c.format.unwrap_or(Format::Pretty) {
                Format::Json => rep.to_json() + "\n",
                Format::Pretty => rep.pretty(),
            };
            c.emit(&text)?;
            Ok(rep.ok())
        }
        Cmd::Add { c, table, points, side } => {
            c.check()?;
            let t = c.group_tables(&table)?;
            let side = Side::from(side);
            let pts = points_from_json(c.field()?, side, &read_file(&points)?)?;
            let mut acc = t.origin(side);
            for pt in &pts {
                acc = t.add(&acc, pt)?;
            }
            c.emit(&format_points(&[acc], c.format.unwrap_or(Format::Pretty)))?;
            Ok(true)
        }
        Cmd::Isogeny { c, table, points } => {
            c.check()?;
            let t = c.group_tables(&table)?;
            let pts = points_from_json(c.field()?, Side::W, &read_file(&points)?)?;
            let images = pts.iter().map(|pt| t.isogeny(pt)).collect::<Result<Vec<_>>>()?;
            c.emit(&format_points(&images, c.format.unwrap_or(Format::Pretty)))?;
            Ok(true)
        }
        Cmd::Kernel { c, table } => {
            c.check()?;
            let t = c.group_tables(&table)?;
            let k = t.kernel_generator()?;
            c.emit(&format_points(&[k], c.format.unwrap_or(Format::Pretty)))?;
            Ok(true)
        }
        Cmd::Reduce { c, table } => {
            c.check()?;
            let rep = special_fiber_stable(&c.lift(), c.cap, None)?;
            if let Some(path) = &table {
                let t = read_table(path)?;
                if (t.p, t.s) != (c.p, c.s) {
                    return Err(Error::Mismatch(format!(
                        "table is for (p, s) = ({}, {}), config says ({}, {})",
                        t.p, t.s, c.p, c.s
                    )));
                }
                let h = t.h_series()?;
                let bars = rep.h_bars();
                for (i, hi) in h.iter().enumerate() {
                    // the file's H_i must reduce to the stable H̄_i within its own degree
                    let d = t.degree.min(rep.degree);
                    let from_file = hi.reduce_mod_pi()?.truncated(d);
                    if from_file != bars[i].truncated(d) {
                        return Err(Error::Mismatch(format!(
                            "table H_{} reduces to {}, stable value {}",
                            i + 1,
                            from_file.display_with("y"),
                            bars[i].display_with("y")
                        )));
                    }
                }
            }
            let text = match c.format.unwrap_or(Format::Pretty) {
                Format::Json => serde_json::to_string_pretty(&reduce_json(&rep)).expect("json") + "\n",
                Format::Pretty => reduce_pretty(&rep),
            };
            c.emit(&text)?;
            Ok(rep.ok())
        }
        Cmd::Print { c, series } => {
            c.check()?;
            let field = c.field()?;
            let n = c.s as usize;
            let (text, value) = match series {
                SeriesName::ArtinHasse => {
                    let f = ah_exp_series(field, c.degree)?;
                    (format!("E_{}(t) = {}\n", c.p, f.display_with("t")), kasw_core::io::series_to_json(&f))
                }
                SeriesName::E => {
                    let f = e_sp_multi(field, c.s, &symbolic_args(field, n, 0, n, c.degree)?)?;
                    (format!("E_{{{},{}}} = {}\n", c.s, c.p, f.display_with("X")), kasw_core::io::series_to_json(&f))
                }
                SeriesName::G => {
                    let f = g_sp(field, c.s, &symbolic_args(field, n, 0, n, c.degree)?, c.scalar_mode())?;
                    (format!("G_{{{},{}}} = {}\n", c.s, c.p, f.display_with("X")), kasw_core::io::series_to_json(&f))
                }
                SeriesName::Witt => {
                    let u = universal_polys(c.p, n)?;
                    let names = u.variable_names();
                    let add: Vec<String> = u.add.iter().map(|q| q.display_with(&names)).collect();
                    let neg: Vec<String> = u.neg.iter().map(|q| q.display_with(&names)).collect();
                    let text = u.to_string();
                    let v = json!({"p": c.p, "s": n, "add": add, "neg": neg});
                    let out = match c.format.unwrap_or(Format::Pretty) {
                        Format::Json => serde_json::to_string_pretty(&v).expect("json") + "\n",
                        Format::Pretty => text,
                    };
                    c.emit(&out)?;
                    return Ok(true);
                }
            };
            let out = match c.format.unwrap_or(Format::Pretty) {
                Format::Json => serde_json::to_string_pretty(&value).expect("json") + "\n",
                Format::Pretty => text,
            };
            c.emit(&out)?;
            Ok(true)
        }
    }
}
