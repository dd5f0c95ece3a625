//! The `gon` command line: one subcommand per library operation plus
//! reproducible experiment suites.
//!
//! Exit status: 0 on success, 2 for unparsable input or a refused operation,
//! 3 when a budget ran out (for tables: when any row did).

pub mod gen;
pub mod input;
pub mod output;
pub mod suite;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::body::{brunn_minkowski_check_2d, ConvexBody, LatticePolygon, Polygon, QuadraticForm};
use crate::budget::Budget;
use crate::counting;
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, parse_int_loose, parse_rat, parse_rat_list, serde_rat, Rat, Real};
use crate::figurate;
use crate::lattice::{self, Lattice};
use crate::packing::{self, GammaTable};
use crate::theorems::{self, Mode, Region};

pub use output::{Format, Report, Table};
pub use suite::{run_suite, ExperimentConfig, SuiteReport, SUITES};

fn u64_arg(s: &str) -> std::result::Result<u64, String> {
    parse_int_loose(s).map_err(|e| e.to_string()).and_then(|i| {
        u64::try_from(i).map_err(|_| format!("{s:?} is not a non-negative 64-bit integer"))
    })
}

fn budget_arg(s: &str) -> std::result::Result<u64, String> {
    match u64_arg(s)? {
        0 => Err("budget must be positive".into()),
        v => Ok(v),
    }
}

fn i64_arg(s: &str) -> std::result::Result<i64, String> {
    parse_int_loose(s)
        .map_err(|e| e.to_string())
        .and_then(|i| i64::try_from(i).map_err(|_| format!("{s:?} exceeds 64 bits")))
}

fn rat_arg(s: &str) -> std::result::Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "gon", version, about = "Exact geometry-of-numbers experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomised suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget for enumerations.
    #[arg(long, global = true, value_parser = budget_arg, default_value = "10000000")]
    pub budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl Global {
    fn budget(&self) -> Budget {
        Budget::with_nodes(self.budget)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Triangular and polygonal numbers.
    #[command(subcommand)]
    Figurate(FigurateCmd),
    /// Lattice point counting.
    #[command(subcommand)]
    Count(CountCmd),
    /// Constructive theorems with certificates.
    #[command(subcommand)]
    Thm(ThmCmd),
    /// Packing invariants and Hermite constants.
    #[command(subcommand)]
    Pack(PackCmd),
    /// Lattices: presets, reduction, enumeration, minima.
    #[command(subcommand)]
    Lat(LatCmd),
    /// Convex bodies.
    #[command(subcommand)]
    Body(BodyCmd),
    /// Run an experiment suite.
    RunSuite(RunSuiteArgs),
}

#[derive(Debug, Subcommand)]
pub enum FigurateCmd {
    /// n(n+1)/2
    Triangular { n: String },
    /// k-gonal number of index n.
    Value { k: String, n: String },
    /// m as at most three triangular numbers.
    Eureka {
        #[arg(value_parser = u64_arg)]
        m: u64,
    },
    /// m as at most k k-gonal numbers.
    Polygonal {
        #[arg(value_parser = u64_arg)]
        k: u64,
        #[arg(value_parser = u64_arg)]
        m: u64,
    },
    /// 1 + 3 + … + (2m−1) against m².
    OddSum {
        #[arg(value_parser = u64_arg)]
        m: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Grid {
    #[arg(long, value_parser = u64_arg)]
    pub xmax: u64,
    #[arg(long, value_parser = u64_arg, default_value = "1")]
    pub step: u64,
    #[arg(long, value_parser = u64_arg, default_value = "1")]
    pub from: u64,
}

impl Grid {
    fn points(&self) -> Result<Vec<u64>> {
        if self.step == 0 || self.from == 0 || self.from > self.xmax {
            return Err(Error::Parse("need 1 ≤ from ≤ xmax and step ≥ 1".into()));
        }
        Ok((self.from..=self.xmax)
            .step_by(self.step as usize)
            .collect())
    }
}

#[derive(Debug, Subcommand)]
pub enum CountCmd {
    /// r_k(n): representations as a sum of k squares.
    R {
        #[arg(value_parser = u64_arg)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// R(x) against πx, with the Gauss bound verdict per row.
    Circle {
        #[command(flatten)]
        grid: Grid,
    },
    /// D(x) against x log x + (2γ−1)x.
    Divisor {
        #[command(flatten)]
        grid: Grid,
    },
    /// Lattice points in the d-ball of squared radius x.
    Ball {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[command(flatten)]
        grid: Grid,
    },
    /// Interior and boundary counts of a lattice polygon.
    Pick {
        #[arg(long)]
        poly: PathBuf,
    },
    /// |area − enclosed| < perimeter.
    Jarnik {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Whether (a, b) is visible from the origin.
    Visible {
        #[arg(allow_hyphen_values = true, value_parser = i64_arg)]
        a: i64,
        #[arg(allow_hyphen_values = true, value_parser = i64_arg)]
        b: i64,
    },
    /// Share of visible points in the square [−n, n]².
    Density {
        #[arg(value_parser = u64_arg)]
        n: u64,
    },
    /// Can an observer at the origin see out of the orchard?
    Orchard {
        #[arg(long = "R", value_parser = rat_arg)]
        big_r: Rat,
        #[arg(long = "r", value_parser = rat_arg)]
        r: Rat,
    },
}

#[derive(Debug, Clone, Args)]
pub struct LatticeBody {
    #[arg(long)]
    pub lattice: PathBuf,
    #[arg(long)]
    pub body: PathBuf,
}

impl LatticeBody {
    fn load(&self) -> Result<(Lattice, ConvexBody)> {
        Ok((
            input::read_json(&self.lattice)?,
            input::read_json(&self.body)?,
        ))
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct FormSource {
    /// JSON {"gram": [[..]]}
    #[arg(long)]
    pub gram: Option<PathBuf>,
    /// hexagonal, fcc, d4, zn(n), even-sum-2d
    #[arg(long)]
    pub preset: Option<String>,
    /// JSON {"basis": [[..]]}
    #[arg(long)]
    pub lattice: Option<PathBuf>,
}

impl FormSource {
    fn form(&self) -> Result<QuadraticForm> {
        if let Some(p) = &self.gram {
            return input::read_json(p);
        }
        if let Some(p) = &self.lattice {
            return Ok(input::read_json::<Lattice>(p)?.form());
        }
        input::preset(self.preset.as_deref().unwrap_or_default()).map(|p| p.form())
    }

    fn label(&self) -> String {
        if let Some(p) = &self.preset {
            return p.clone();
        }
        self.gram
            .as_ref()
            .or(self.lattice.as_ref())
            .map(|p| p.display().to_string())
            .unwrap_or_default()
    }
}

#[derive(Debug, Subcommand)]
pub enum ThmCmd {
    /// p = a² + b² for a prime p ≡ 1 (mod 4).
    Twosquare {
        #[arg(value_parser = u64_arg)]
        p: u64,
    },
    /// m = a² + b² + c² + d².
    Foursquare {
        #[arg(value_parser = u64_arg)]
        m: u64,
    },
    /// Nonzero lattice point in a body with vol > 2ⁿ det.
    Minkowski {
        #[command(flatten)]
        io: LatticeBody,
        /// Accept vol = 2ⁿ det and boundary points.
        #[arg(long)]
        closed: bool,
    },
    /// The same point by pigeonhole on a refining grid.
    Mordell {
        #[command(flatten)]
        io: LatticeBody,
    },
    /// m+1 points of a region congruent modulo the lattice.
    Blichfeldt {
        #[arg(long)]
        lattice: PathBuf,
        /// JSON [{"lo": [..], "hi": [..]}, ..]
        #[arg(long, conflicts_with = "body", required_unless_present = "body")]
        boxes: Option<PathBuf>,
        #[arg(long)]
        body: Option<PathBuf>,
        #[arg(long, value_parser = u64_arg, default_value = "1")]
        m: u64,
    },
    /// Dirichlet (one number) or simultaneous approximation.
    Approx {
        /// Comma list: rationals, pi, gamma, sqrt2, sqrt(3/2), cbrt(2), ln(2), root(5,3).
        #[arg(long)]
        alpha: String,
        #[arg(long, value_parser = i64_arg)]
        qmax: i64,
        /// Use the simultaneous bound even for one number.
        #[arg(long)]
        simultaneous: bool,
    },
    /// x ≠ 0 with |Yⱼ(x)| ≤ λⱼ.
    Linforms {
        /// JSON [[..]] or {"matrix": [[..]]}
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        lambda: String,
    },
    /// Linear forms with conjugate complex pairs.
    Complex {
        /// JSON {"pair_re": [[..]], "pair_im": [[..]], "reals": [[..]]}
        #[arg(long)]
        forms: PathBuf,
    },
    /// Successive minima product against 2ⁿ/n! and 2ⁿ.
    Second {
        #[command(flatten)]
        io: LatticeBody,
    },
    /// First λ at which the translates λC + z overlap.
    Overlap {
        #[command(flatten)]
        io: LatticeBody,
        #[arg(long, value_parser = rat_arg, default_value = "1/1000000")]
        width: Rat,
    },
    /// Exact first minimum of a form with Minkowski's and Hermite's bounds.
    FirstMin {
        #[command(flatten)]
        src: FormSource,
    },
    /// (4/π)^r₂ n!/nⁿ √|Δ| for a number field.
    Field {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r2: u32,
        #[arg(long)]
        disc: String,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum TableArg {
    Cited,
    Fcc,
}

impl From<TableArg> for GammaTable {
    fn from(t: TableArg) -> Self {
        match t {
            TableArg::Cited => GammaTable::Cited,
            TableArg::Fcc => GammaTable::Fcc,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum PackCmd {
    /// Density, kissing number and Hermite invariant of a lattice.
    Report {
        #[command(flatten)]
        src: FormSource,
    },
    /// Hermite, Minkowski and Blichfeldt bounds on γₙ.
    Bounds {
        /// n or a range a..b
        #[arg(long, default_value = "2..8")]
        n: String,
    },
    /// Mordell's inequality between consecutive known γₙ.
    Mordell {
        #[arg(long, default_value = "3..8")]
        n: String,
        #[arg(long, value_enum, default_value = "cited")]
        table: TableArg,
    },
    /// Voronoi cell of a planar lattice.
    Voronoi {
        #[command(flatten)]
        src: FormSource,
    },
    /// min ≤ Blichfeldt ≤ Minkowski for one form.
    Chain {
        #[command(flatten)]
        src: FormSource,
    },
    /// Critical determinant of a planar body, optionally against a lattice.
    Critical {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        lattice: Option<PathBuf>,
    },
    /// Admissible witness lattice against vol/ζ(n) or 2ζ(n).
    Hlawka {
        #[arg(long)]
        body: Option<PathBuf>,
        #[arg(long, requires = "body")]
        lattice: Option<PathBuf>,
        /// Gram matrix of the witness; the body is then Q(x) < level.
        #[arg(long, conflicts_with_all = ["body", "lattice"])]
        gram: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["body", "lattice", "gram"])]
        preset: Option<String>,
        #[arg(long, value_parser = rat_arg, default_value = "1")]
        level: Rat,
    },
}

#[derive(Debug, Subcommand)]
pub enum LatCmd {
    /// Built-in lattice or Gram data.
    Preset { name: String },
    /// Lagrange–Gauss reduction of a planar lattice or form.
    Reduce {
        #[command(flatten)]
        src: FormSource,
    },
    /// Lattice points of norm² ≤ r2.
    Enumerate {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, value_parser = rat_arg)]
        r2: Rat,
    },
    /// Shortest nonzero vectors.
    Minimal {
        #[command(flatten)]
        src: FormSource,
    },
    /// Successive minima of a body.
    Minima {
        #[command(flatten)]
        io: LatticeBody,
    },
}

#[derive(Debug, Subcommand)]
pub enum BodyCmd {
    /// Inside, boundary or outside.
    Classify {
        #[arg(long)]
        body: PathBuf,
        /// Comma list of rational coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    Volume {
        #[arg(long)]
        body: PathBuf,
    },
    /// Planar Brunn–Minkowski check for (1−λ)P + λQ.
    Brunn {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long, value_parser = rat_arg, default_value = "1/2")]
        lambda: Rat,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RunSuiteArgs {
    /// Suite name; `--list` shows them.
    #[arg(required_unless_present_any = ["config", "list"])]
    pub name: Option<String>,
    /// key=value, repeatable.
    #[arg(long = "param", short = 'p')]
    pub params: Vec<String>,
    /// JSON ExperimentConfig; command-line values override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub list: bool,
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            let msg = json!({"error": e.kind(), "message": e.to_string()});
            eprintln!("{msg}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(std::env::args_os())
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) | Error::Cancelled => 3,
        _ => 2,
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    if let Command::RunSuite(a) = &cli.command {
        return run_suite_cmd(g, a);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Parse(e.to_string()))?;
    let report = pool.install(|| dispatch(g, &cli.command))?;
    emit(&output::render(&report, g.format)?, g.out.as_ref())?;
    Ok(if report.budget_rows() > 0 { 3 } else { 0 })
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("cannot write output: {e}"));
    match out {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).map_err(io)?;
            so.flush().map_err(io)
        }
    }
}

fn run_suite_cmd(g: &Global, a: &RunSuiteArgs) -> Result<i32> {
    if a.list {
        let v: Vec<_> = SUITES
            .iter()
            .map(|(n, p)| json!({"suite": n, "params": p}))
            .collect();
        emit(
            &output::render(&Report::Json(v.into()), g.format)?,
            g.out.as_ref(),
        )?;
        return Ok(0);
    }
    let mut config = match &a.config {
        Some(p) => input::read_json::<ExperimentConfig>(p)?,
        None => {
            let mut c = ExperimentConfig::new(a.name.as_deref().unwrap_or_default());
            c.seed = g.seed;
            c.budget = g.budget;
            c.format = g.format;
            c.out = g.out.clone();
            c.threads = g.threads;
            c
        }
    };
    if let Some(n) = &a.name {
        config.suite = n.clone();
    }
    for kv in &a.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("parameter {kv:?} is not key=value")))?;
        config.params.insert(k.trim().into(), v.trim().into());
    }
    let report = run_suite(&config)?;
    emit(&report.render()?, config.out.as_ref())?;
    Ok(report.exit_code())
}

fn dispatch(g: &Global, cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Figurate(c) => figurate_cmd(c),
        Command::Count(c) => count_cmd(g, c),
        Command::Thm(c) => thm_cmd(g, c),
        Command::Pack(c) => pack_cmd(c),
        Command::Lat(c) => lat_cmd(g, c),
        Command::Body(c) => body_cmd(c),
        Command::RunSuite(_) => unreachable!("handled in execute"),
    }
}

fn figurate_cmd(c: &FigurateCmd) -> Result<Report> {
    match c {
        FigurateCmd::Triangular { n } => {
            let n = parse_int_loose(n)?;
            let v = figurate::triangular(&n)?;
            Report::json(&json!({"n": n.to_string(), "value": v.to_string()}))
        }
        FigurateCmd::Value { k, n } => {
            let (k, n) = (parse_int_loose(k)?, parse_int_loose(n)?);
            let v = figurate::polygonal(&k, &n)?;
            Report::json(&json!({"k": k.to_string(), "n": n.to_string(), "value": v.to_string()}))
        }
        FigurateCmd::Eureka { m } => witness(figurate::eureka_decompose(*m)?),
        FigurateCmd::Polygonal { k, m } => witness(figurate::polygonal_decompose(*k, *m)?),
        FigurateCmd::OddSum { m } => {
            let s = figurate::odd_sum(*m);
            let sq = u128::from(*m) * u128::from(*m);
            Report::json(
                &json!({"m": m, "sum": s.to_string(), "square": sq.to_string(), "holds": s == sq}),
            )
        }
    }
}

fn witness(w: figurate::FigurateWitness) -> Result<Report> {
    let verified = w.verify();
    let mut v = serde_json::to_value(&w).map_err(|e| Error::Parse(e.to_string()))?;
    v["verified"] = verified.into();
    Ok(Report::Json(v))
}

fn count_cmd(g: &Global, c: &CountCmd) -> Result<Report> {
    match c {
        CountCmd::R { n, k } => {
            let r = counting::r_table(*k, *n, &g.budget())?[*n as usize];
            Report::json(&json!({"n": n, "k": k, "r": r.to_string()}))
        }
        CountCmd::Circle { grid } => Ok(Report::Table(suite::circle_table(&grid.points()?, 3))),
        CountCmd::Divisor { grid } => Ok(Report::Table(suite::divisor_table(&grid.points()?, 2))),
        CountCmd::Ball { d, grid } => {
            let scan = counting::ball_volume_limit_scan(*d, &grid.points()?, &g.budget())?;
            let mut t = Table::new(&[
                "x",
                "exact",
                "main_lo",
                "main_hi",
                "error",
                "normalized",
                "ratio",
            ]);
            for r in &scan.rows {
                let m = r.main.coarsen(output::CELL_DIGITS);
                t.rows.push(vec![
                    r.x.to_string(),
                    r.exact.to_string(),
                    output::cell_rat(&m.lo),
                    output::cell_rat(&m.hi),
                    output::cell_pair(&r.error),
                    output::cell_pair(&r.normalized),
                    r.ratio.as_ref().map(output::cell_pair).unwrap_or_default(),
                ]);
            }
            Ok(Report::Table(t))
        }
        CountCmd::Pick { poly } => {
            let p: LatticePolygon = input::read_json(poly)?;
            Report::json(&counting::pick_count(&p)?)
        }
        CountCmd::Jarnik { poly } => {
            let p: LatticePolygon = input::read_json(poly)?;
            Report::json(&counting::jarnik_check(&p)?)
        }
        CountCmd::Visible { a, b } => {
            Report::json(&json!({"point": [a, b], "visible": counting::visible([*a, *b])?}))
        }
        CountCmd::Density { n } => {
            let d = counting::visible_density(*n)?;
            let limit = (Real::int(6) / Real::pi().powi(2))
                .enclose(&crate::exact::rat(1, 1_000_000_000_000))?;
            Report::json(&json!({"n": n, "density": fmt_rat(&d), "limit": limit}))
        }
        CountCmd::Orchard { big_r, r } => {
            Report::json(&counting::orchard_visibility(big_r, r, &g.budget())?)
        }
    }
}

#[derive(serde::Deserialize)]
struct ComplexSpec {
    #[serde(with = "serde_rat::matrix", default)]
    pair_re: Vec<Vec<Rat>>,
    #[serde(with = "serde_rat::matrix", default)]
    pair_im: Vec<Vec<Rat>>,
    #[serde(with = "serde_rat::matrix", default)]
    reals: Vec<Vec<Rat>>,
}

fn thm_cmd(g: &Global, c: &ThmCmd) -> Result<Report> {
    let budget = g.budget();
    match c {
        ThmCmd::Twosquare { p } => Report::json(&theorems::two_square(*p)?),
        ThmCmd::Foursquare { m } => {
            let s = theorems::four_square(*m)?;
            let holds = s.iter().map(|v| u128::from(*v).pow(2)).sum::<u128>() == u128::from(*m);
            Report::json(&json!({"m": m, "squares": s, "verified": holds}))
        }
        ThmCmd::Minkowski { io, closed } => {
            let (l, body) = io.load()?;
            let mode = if *closed { Mode::Closed } else { Mode::Strict };
            let (p, cert) = theorems::minkowski_point_with(&l, &body, mode, &budget)?;
            Report::json(&json!({"point": p, "valid": cert.is_valid(), "certificate": cert}))
        }
        ThmCmd::Mordell { io } => {
            let (l, body) = io.load()?;
            Report::json(&theorems::mordell_grid_search_with(&l, &body, &budget)?)
        }
        ThmCmd::Blichfeldt {
            lattice,
            boxes,
            body,
            m,
        } => {
            let l: Lattice = input::read_json(lattice)?;
            let omega = match (boxes, body) {
                (Some(b), _) => input::read_boxes(b)?,
                (None, Some(b)) => Region::Body(input::read_json(b)?),
                (None, None) => return Err(Error::Parse("need --boxes or --body".into())),
            };
            Report::json(&theorems::blichfeldt_points_with(&l, &omega, *m, &budget)?)
        }
        ThmCmd::Approx {
            alpha,
            qmax,
            simultaneous,
        } => {
            let a = input::parse_real_list(alpha)?;
            if a.len() == 1 && !simultaneous {
                Report::json(&theorems::dirichlet_1d(&a[0], *qmax)?)
            } else {
                Report::json(&theorems::simultaneous_approx(&a, *qmax)?)
            }
        }
        ThmCmd::Linforms { matrix, lambda } => {
            let a = input::read_matrix(matrix)?;
            let (x, cert) = theorems::linear_forms_solve(&a, &parse_rat_list(lambda)?)?;
            Report::json(&json!({"x": x, "valid": cert.is_valid(), "certificate": cert}))
        }
        ThmCmd::Complex { forms } => {
            let s: ComplexSpec = input::read_json(forms)?;
            let f = theorems::ComplexForms {
                pair_re: s.pair_re,
                pair_im: s.pair_im,
                reals: s.reals,
            };
            Report::json(&theorems::complex_linear_forms_solve(&f)?)
        }
        ThmCmd::Second { io } => {
            let (l, body) = io.load()?;
            let s = theorems::second_theorem_check(&l, &body)?;
            let mut v = serde_json::to_value(&s).map_err(|e| Error::Parse(e.to_string()))?;
            v["holds"] = s.holds().into();
            Ok(Report::Json(v))
        }
        ThmCmd::Overlap { io, width } => {
            let (l, body) = io.load()?;
            Report::json(&json!({"lambda0": theorems::first_overlap_dilation(&l, &body, width)?}))
        }
        ThmCmd::FirstMin { src } => Report::json(&theorems::form_first_minimum(&src.form()?)?),
        ThmCmd::Field { n, r2, disc } => {
            let d = parse_int_loose(disc)?;
            let d = num_traits::Signed::abs(&d);
            let (v, e) = theorems::minkowski_field_bound(*n, *r2, &d)?;
            Report::json(&json!({
                "n": n, "r2": r2, "disc_abs": d.to_string(),
                "bound": e, "below_one": theorems::field_bound_below_one(&v),
            }))
        }
    }
}

fn each_n(range: &str) -> Result<Vec<u32>> {
    let (a, b) = input::parse_range(range)?;
    Ok((a..=b).map(|n| n as u32).collect())
}

fn pack_cmd(c: &PackCmd) -> Result<Report> {
    match c {
        PackCmd::Report { src } => {
            Report::json(&packing::packing_report(&src.label(), &src.form()?)?)
        }
        PackCmd::Bounds { n } => {
            let v = each_n(n)?
                .into_iter()
                .map(packing::hermite_bounds)
                .collect::<Result<Vec<_>>>()?;
            Report::json(&v)
        }
        PackCmd::Mordell { n, table } => {
            let v = each_n(n)?
                .into_iter()
                .map(|k| packing::mordell_gamma_check(k, (*table).into()))
                .collect::<Result<Vec<_>>>()?;
            Report::json(&v)
        }
        PackCmd::Voronoi { src } => {
            let q = src.form()?;
            match &src.lattice {
                Some(p) => Report::json(&packing::voronoi_cell_2d(&input::read_json(p)?)?),
                None => Report::json(&packing::voronoi_cell_form_2d(&q)?),
            }
        }
        PackCmd::Chain { src } => {
            let checks = packing::hermite_chain(&src.form()?)?;
            let holds = checks.iter().all(|k| k.holds);
            Report::json(&json!({"checks": checks, "holds": holds}))
        }
        PackCmd::Critical { body, lattice } => {
            let b: ConvexBody = input::read_json(body)?;
            match lattice {
                Some(l) => {
                    Report::json(&packing::critical_det_check_2d(&b, &input::read_json(l)?)?)
                }
                None => {
                    let d = packing::critical_determinant_2d(&b)?;
                    let e = d.enclose(&crate::exact::rat(1, 1_000_000_000_000))?;
                    Report::json(&json!({"critical_determinant": e}))
                }
            }
        }
        PackCmd::Hlawka {
            body,
            lattice,
            gram,
            preset,
            level,
        } => match (body, lattice) {
            (Some(b), Some(l)) => Report::json(&packing::hlawka_witness_check(
                &input::read_json(b)?,
                &input::read_json(l)?,
            )?),
            (Some(_), None) => Err(Error::Parse("--body needs --lattice".into())),
            _ => {
                let src = FormSource {
                    gram: gram.clone(),
                    preset: preset
                        .clone()
                        .or_else(|| gram.is_none().then(|| "hexagonal".into())),
                    lattice: None,
                };
                Report::json(&packing::hlawka_witness_check_form(&src.form()?, level)?)
            }
        },
    }
}

fn lat_cmd(g: &Global, c: &LatCmd) -> Result<Report> {
    match c {
        LatCmd::Preset { name } => Report::json(&input::preset(name)?),
        LatCmd::Reduce { src } => match &src.lattice {
            Some(p) => Report::json(&lattice::reduce_2d(&input::read_json(p)?)?),
            None => {
                let q = src.form()?;
                if q.dim() != 2 {
                    return Err(Error::Dimension(q.dim()));
                }
                let (gram, change) = lattice::reduce_gram_2d(q.gram());
                let rows: Vec<Vec<String>> = gram
                    .iter()
                    .map(|r| r.iter().map(fmt_rat).collect())
                    .collect();
                Report::json(&json!({"gram": rows, "change": change}))
            }
        },
        LatCmd::Enumerate { lattice, r2 } => {
            let l: Lattice = input::read_json(lattice)?;
            let pts = lattice::enumerate_in_ball_with(&l, r2, &g.budget())?;
            Report::json(&json!({"count": pts.len(), "points": pts}))
        }
        LatCmd::Minimal { src } => {
            let (m, v) = lattice::form_minimal_vectors(&src.form()?, &g.budget())?;
            Report::json(&json!({"min": fmt_rat(&m), "count": v.len(), "vectors": v}))
        }
        LatCmd::Minima { io } => {
            let (l, b) = io.load()?;
            Report::json(&lattice::successive_minima_with(&l, &b, &g.budget())?)
        }
    }
}

#[derive(serde::Deserialize)]
struct PolygonSpec {
    #[serde(with = "serde_rat::matrix")]
    vertices: Vec<Vec<Rat>>,
}

fn read_polygon(p: &std::path::Path) -> Result<Polygon> {
    let s: PolygonSpec = input::read_json(p)?;
    let v = s
        .vertices
        .into_iter()
        .map(|v| match <[Rat; 2]>::try_from(v) {
            Ok(a) => Ok(a),
            Err(_) => Err(Error::Parse("polygon vertices need two coordinates".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Polygon::new(v)
}

fn body_cmd(c: &BodyCmd) -> Result<Report> {
    match c {
        BodyCmd::Classify { body, point } => {
            let b: ConvexBody = input::read_json(body)?;
            let x = parse_rat_list(point)?;
            if x.len() != b.dim() {
                return Err(Error::Dimension(x.len()));
            }
            Report::json(
                &json!({"membership": b.membership(&x), "gauge_sq": fmt_rat(&b.gauge_sq(&x))}),
            )
        }
        BodyCmd::Volume { body } => {
            let b: ConvexBody = input::read_json(body)?;
            let v = b.volume()?;
            let e = v.enclose(&crate::exact::rat(1, 1_000_000_000_000))?;
            Report::json(&json!({"volume": e, "exact": v.exact().map(|r| fmt_rat(&r))}))
        }
        BodyCmd::Brunn { p, q, lambda } => Report::json(&brunn_minkowski_check_2d(
            &read_polygon(p)?,
            &read_polygon(q)?,
            lambda,
        )?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> (i32, String) {
        let dir = std::env::temp_dir().join(format!("gon-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!(
            "{}.out",
            args.join("_").replace(['/', ' ', '.'], "-")
        ));
        let mut full = vec!["gon"];
        full.extend_from_slice(args);
        let p = path.to_str().unwrap().to_string();
        full.extend_from_slice(&["--out", &p]);
        let code = run(full);
        (code, std::fs::read_to_string(&path).unwrap_or_default())
    }

    #[test]
    fn twosquare_json() {
        let (code, s) = out(&["thm", "twosquare", "30449"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!((v["a"].as_u64(), v["b"].as_u64()), (Some(100), Some(143)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["gon", "thm", "twosquare", "7"]), 2);
        assert_eq!(run(["gon", "lat", "preset", "e9"]), 2);
        assert_eq!(run(["gon", "figurate", "bogus"]), 2);
        assert_eq!(run(["gon", "--budget", "0", "count", "r", "5"]), 2);
        assert_eq!(run(["gon", "thm", "foursquare", "2e9"]), 3);
        assert_eq!(run(["gon", "--budget", "3", "count", "r", "100"]), 3);
    }

    #[test]
    fn circle_csv() {
        let (code, s) = out(&["count", "circle", "--xmax", "100", "--format", "csv"]);
        assert_eq!(code, 0);
        let mut lines = s.lines();
        assert_eq!(
            lines.next().unwrap(),
            "x,exact,main_lo,main_hi,error,normalized,gauss,within"
        );
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 100);
        assert!(rows.iter().all(|r| r.split(',').nth(6) == Some("ok")));
        assert!(!s.contains('\r'));
    }

    #[test]
    fn presets_and_reports() {
        let (_, s) = out(&["lat", "preset", "even-sum-2d"]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["basis"], json!([["2/1", "0/1"], ["1/1", "1/1"]]));
        let (code, s) = out(&["pack", "report", "--preset", "hexagonal"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["kissing"], 6);
        let lo = parse_rat(v["density"]["lo"].as_str().unwrap()).unwrap();
        let hi = parse_rat(v["density"]["hi"].as_str().unwrap()).unwrap();
        assert!(lo < parse_rat("0.9069").unwrap() && hi > parse_rat("0.9068").unwrap());
    }

    #[test]
    fn figurate_commands() {
        let (_, s) = out(&["figurate", "polygonal", "4", "7"]);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let vals: Vec<u64> = v["parts"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["value"].as_u64().unwrap())
            .collect();
        assert_eq!(vals, vec![4, 1, 1, 1]);
        assert_eq!(v["verified"], true);
    }
}
