//! Reproducible experiment suites.
//!
//! Rows run on a rayon pool and are assembled by input index. Randomised rows
//! draw from [`gen::row_rng`]`(seed, index)`, so output is byte-identical for a
//! given configuration whatever the worker count.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_traits::{One, Signed};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gen;
use super::input::d4;
use super::output::{cell_ok, cell_pair, cell_rat, error_row, render, Format, Report, Table};
use crate::body::{ConvexBody, QuadraticForm};
use crate::budget::Budget;
use crate::counting::{
    ball_volume_limit_scan, circle_count, circle_error_scan, divisor, divisor_error_scan,
    divisor_summatory, gauss_circle_bounds_check, jarnik_check, pick_count, r_table,
};
use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat};
use crate::figurate::{eureka_decompose, odd_sum, polygonal_decompose, triangular};
use crate::lattice::Lattice;
use crate::packing::{self, hermite_chain, packing_report};
use crate::theorems::{
    complex_linear_forms_solve, form_first_minimum, is_prime, linear_forms_solve,
    minkowski_point_with, mordell_grid_search_with, second_theorem_check, two_square, Mode,
};

pub const DEFAULT_BUDGET: u64 = crate::budget::DEFAULT_NODE_CAP;

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

/// One suite run: name, parameters, seed, budget and output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub seed: u64,
    /// Node budget for each row's enumerations.
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Worker threads; `None` uses every core.
    #[serde(default)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(suite: &str) -> Self {
        ExperimentConfig {
            suite: suite.into(),
            params: BTreeMap::new(),
            seed: 0,
            budget: DEFAULT_BUDGET,
            format: Format::Json,
            out: None,
            threads: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    fn get(&self, key: &str, default: u64) -> Result<u64> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => crate::exact::parse_int_loose(v)
                .ok()
                .and_then(|i| u64::try_from(i).ok())
                .ok_or_else(|| Error::Parse(format!("parameter {key}={v:?} is not a count"))),
        }
    }

    fn row_budget(&self) -> Budget {
        Budget::with_nodes(self.budget)
    }
}

/// Suite names with the parameters each reads (defaults in brackets).
pub const SUITES: &[(&str, &str)] = [
    ("twosquare", "max [100000]"),
    ("circle", "from [1], max [10000], step [1], c [3]"),
    ("divisor", "samples [1000], max [1e8], c [2]"),
    ("divisor-exact", "max [10000]"),
    ("ball", "d [3], samples [10], max [100000]"),
    ("rcount", "max [10000]"),
    ("minkowski", "count [200], first [0]"),
    ("subthreshold", "count [50], first [0]"),
    ("second", "count [100], first [0]"),
    ("linforms", "count [100], first [0]"),
    ("complex", "count [50], first [0]"),
    ("pick", "count [500], first [0], radius [12]"),
    ("hermite", "count [100], first [0]"),
    (
        "figurate",
        "eureka [100000], polygonal [10000], identities [10000], block [1000]",
    ),
    ("packing", ""),
]
.as_slice();

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub config: ExperimentConfig,
    pub table: Table,
}

impl SuiteReport {
    /// 3 when some row ran out of budget, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.table.budget_rows() > 0 {
            3
        } else {
            0
        }
    }

    pub fn render(&self) -> Result<String> {
        render(&Report::Table(self.table.clone()), self.config.format)
    }
}

pub fn run_suite(config: &ExperimentConfig) -> Result<SuiteReport> {
    if config.budget == 0 {
        return Err(Error::Parse("budget must be positive".into()));
    }
    if !SUITES.iter().any(|(n, _)| *n == config.suite) {
        return Err(Error::Parse(format!("unknown suite {:?}", config.suite)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Parse(e.to_string()))?;
    let table = pool.install(|| dispatch(config))?;
    Ok(SuiteReport {
        config: config.clone(),
        table,
    })
}

fn dispatch(c: &ExperimentConfig) -> Result<Table> {
    match c.suite.as_str() {
        "twosquare" => twosquare(c),
        "circle" => circle(c),
        "divisor" => divisor_suite(c),
        "divisor-exact" => divisor_exact(c),
        "ball" => ball(c),
        "rcount" => rcount(c),
        "minkowski" => minkowski(c),
        "subthreshold" => subthreshold(c),
        "second" => second(c),
        "linforms" => linforms(c),
        "complex" => complex(c),
        "pick" => pick(c),
        "hermite" => hermite(c),
        "figurate" => figurate(c),
        "packing" => packing_suite(),
        _ => unreachable!("checked in run_suite"),
    }
}

/// One row per key, computed in parallel and kept in key order.
fn rows<K, F>(keys: &[K], width: usize, f: F) -> Vec<Vec<String>>
where
    K: Sync + ToString,
    F: Fn(&K) -> Result<Vec<String>> + Sync,
{
    keys.par_iter()
        .map(|k| f(k).unwrap_or_else(|e| error_row(k.to_string(), width, &e)))
        .collect()
}

fn table(header: &[&str], keys: &[u64], f: impl Fn(&u64) -> Result<Vec<String>> + Sync) -> Table {
    let mut t = Table::new(header);
    t.rows = rows(keys, header.len(), f);
    t
}

/// ceil(max·i/samples) for i = 1..samples.
fn sample_grid(max: u64, samples: u64) -> Vec<u64> {
    let mut g: Vec<u64> = (1..=samples)
        .map(|i| ((u128::from(max) * u128::from(i)).div_ceil(u128::from(samples))) as u64)
        .collect();
    g.dedup();
    g
}

fn within(e: &crate::exact::RealEnclosure, c: u64) -> String {
    let c = rat_int(c as i64);
    cell_ok(e.hi <= c && e.lo >= -c)
}

fn twosquare(c: &ExperimentConfig) -> Result<Table> {
    let max = c.get("max", 100_000)?;
    let primes: Vec<u64> = (5..max).step_by(4).filter(|&p| is_prime(p)).collect();
    Ok(table(&["p", "a", "b", "q", "verified"], &primes, |&p| {
        let t = two_square(p)?;
        let ok = t.certificate.is_valid() && t.a * t.a + t.b * t.b == p;
        Ok(vec![
            p.to_string(),
            t.a.to_string(),
            t.b.to_string(),
            t.q.to_string(),
            cell_ok(ok),
        ])
    }))
}

fn circle(c: &ExperimentConfig) -> Result<Table> {
    let (from, max, step) = (c.get("from", 1)?, c.get("max", 10_000)?, c.get("step", 1)?);
    let bound = c.get("c", 3)?;
    if from == 0 || step == 0 {
        return Err(Error::Parse("from and step must be positive".into()));
    }
    let grid: Vec<u64> = (from..=max).step_by(step as usize).collect();
    Ok(circle_table(&grid, bound))
}

/// Shared with `count circle`.
pub(crate) fn circle_table(grid: &[u64], bound: u64) -> Table {
    let header = [
        "x",
        "exact",
        "main_lo",
        "main_hi",
        "error",
        "normalized",
        "gauss",
        "within",
    ];
    table(&header, grid, |&x| {
        let row = circle_error_scan(&[x])?.rows.remove(0);
        let gauss = gauss_circle_bounds_check(&rat_int(x as i64))?;
        Ok(vec![
            x.to_string(),
            row.exact.to_string(),
            cell_rat(&row.main.coarsen(12).lo),
            cell_rat(&row.main.coarsen(12).hi),
            cell_pair(&row.error),
            cell_pair(&row.normalized),
            cell_ok(gauss.holds()),
            within(&row.normalized, bound),
        ])
    })
}

fn divisor_suite(c: &ExperimentConfig) -> Result<Table> {
    let grid = sample_grid(c.get("max", 100_000_000)?, c.get("samples", 1000)?);
    Ok(divisor_table(&grid, c.get("c", 2)?))
}

pub(crate) fn divisor_table(grid: &[u64], bound: u64) -> Table {
    let header = [
        "x",
        "exact",
        "main_lo",
        "main_hi",
        "error",
        "normalized",
        "within",
    ];
    table(&header, grid, |&x| {
        let row = divisor_error_scan(&[x])?.rows.remove(0);
        Ok(vec![
            x.to_string(),
            row.exact.to_string(),
            cell_rat(&row.main.coarsen(12).lo),
            cell_rat(&row.main.coarsen(12).hi),
            cell_pair(&row.error),
            cell_pair(&row.normalized),
            within(&row.normalized, bound),
        ])
    })
}

fn divisor_exact(c: &ExperimentConfig) -> Result<Table> {
    let max = c.get("max", 10_000)?;
    let mut naive = vec![0u128; max as usize + 1];
    for n in 1..=max {
        naive[n as usize] = naive[n as usize - 1] + u128::from(divisor(n)?);
    }
    let grid: Vec<u64> = (1..=max).collect();
    Ok(table(&["x", "hyperbola", "naive", "equal"], &grid, |&x| {
        let h = divisor_summatory(x)?;
        let n = naive[x as usize];
        Ok(vec![
            x.to_string(),
            h.to_string(),
            n.to_string(),
            cell_ok(h == n),
        ])
    }))
}

fn ball(c: &ExperimentConfig) -> Result<Table> {
    let d = c.get("d", 3)? as u32;
    let grid = sample_grid(c.get("max", 100_000)?, c.get("samples", 10)?);
    let budget = c.row_budget();
    let header = ["x", "exact", "main_lo", "main_hi", "ratio", "limit", "gap"];
    Ok(table(&header, &grid, |&x| {
        let scan = ball_volume_limit_scan(d, &[x], &budget)?;
        let limit = scan.limit.clone().expect("ball scans carry a limit");
        let row = &scan.rows[0];
        let ratio = row.ratio.clone().expect("ball scans carry a ratio");
        let gap = (&ratio.lo - &limit.hi)
            .abs()
            .max((&ratio.hi - &limit.lo).abs());
        Ok(vec![
            x.to_string(),
            row.exact.to_string(),
            cell_rat(&row.main.coarsen(12).lo),
            cell_rat(&row.main.coarsen(12).hi),
            cell_pair(&ratio),
            cell_pair(&limit),
            cell_rat(&crate::exact::RealEnclosure::exact(gap).coarsen(12).hi),
        ])
    }))
}

fn rcount(c: &ExperimentConfig) -> Result<Table> {
    let max = c.get("max", 10_000)?;
    let r2 = r_table(2, max, &c.row_budget())?;
    let mut prefix = Vec::with_capacity(r2.len());
    let mut acc = 0u128;
    for v in &r2 {
        acc += v;
        prefix.push(acc);
    }
    let grid: Vec<u64> = (1..=max).collect();
    let header = ["x", "r2", "prefix", "circle", "equal", "prime"];
    Ok(table(&header, &grid, |&x| {
        let circ = circle_count(&rat_int(x as i64))?;
        let r = r2[x as usize];
        let prime = if is_prime(x) && x > 2 {
            let expect = if x % 4 == 1 { 8 } else { 0 };
            cell_ok(r == expect)
        } else {
            "-".into()
        };
        Ok(vec![
            x.to_string(),
            r.to_string(),
            prefix[x as usize].to_string(),
            circ.to_string(),
            cell_ok(circ == prefix[x as usize]),
            prime,
        ])
    }))
}

fn body_kind(c: &ConvexBody) -> &'static str {
    match c {
        ConvexBody::AxisBox { .. } => "axisbox",
        ConvexBody::FormsBox { .. } => "formsbox",
        ConvexBody::Ellipsoid { .. } => "ellipsoid",
        ConvexBody::SymPolytope { .. } => "polytope",
    }
}

fn coeffs(v: &[i64]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Row indices `first .. first + count`.
fn indices(c: &ExperimentConfig, default: u64) -> Result<Vec<u64>> {
    let first = c.get("first", 0)?;
    Ok((first..first + c.get("count", default)?).collect())
}

fn minkowski(c: &ExperimentConfig) -> Result<Table> {
    let keys = indices(c, 200)?;
    let header = ["index", "dim", "body", "minkowski", "mordell", "verified"];
    Ok(table(&header, &keys, |&i| {
        let mut rng = gen::row_rng(c.seed, i);
        let n = rng.gen_range(2..=3);
        let l = gen::random_lattice(&mut rng, n);
        let body = gen::scale_past_minkowski(&l, &gen::random_body(&mut rng, n))?;
        let budget = c.row_budget();
        let (p, cert) = minkowski_point_with(&l, &body, Mode::Strict, &budget)?;
        let m = mordell_grid_search_with(&l, &body, &budget)?;
        let inside = |pt: &crate::lattice::LatticePoint| {
            pt.coeffs.iter().any(|&v| v != 0)
                && l.contains(&pt.ambient)
                && body.gauge_sq(&pt.ambient) < Rat::one()
        };
        let ok = cert.is_valid() && m.certificate.is_valid() && inside(&p) && inside(&m.point);
        Ok(vec![
            i.to_string(),
            n.to_string(),
            body_kind(&body).into(),
            coeffs(&p.coeffs),
            coeffs(&m.point.coeffs),
            cell_ok(ok),
        ])
    }))
}

fn subthreshold(c: &ExperimentConfig) -> Result<Table> {
    let keys = indices(c, 50)?;
    let header = [
        "index",
        "dim",
        "halfwidths",
        "minkowski",
        "nonzero_points",
        "verified",
    ];
    Ok(table(&header, &keys, |&i| {
        let mut rng = gen::row_rng(c.seed, i);
        let n = rng.gen_range(2..=3);
        let body = gen::sub_threshold_box(&mut rng, n);
        let l = Lattice::integer(n)?;
        let outcome = match minkowski_point_with(&l, &body, Mode::Strict, &c.row_budget()) {
            Ok(_) => "found".to_string(),
            Err(e) => e.kind().to_string(),
        };
        // the box lies inside the open cube of side 2, which meets Zⁿ only at 0
        let pts = crate::lattice::enumerate_in_ball_with(&l, &rat_int(n as i64), &c.row_budget())?
            .into_iter()
            .filter(|p| p.coeffs.iter().any(|&v| v != 0))
            .filter(|p| body.membership(&p.ambient).in_closure())
            .count();
        let half = match &body {
            ConvexBody::AxisBox { half } => half.iter().map(cell_rat).collect::<Vec<_>>().join(" "),
            _ => unreachable!(),
        };
        Ok(vec![
            i.to_string(),
            n.to_string(),
            half,
            outcome.clone(),
            pts.to_string(),
            cell_ok(outcome == "hypothesis" && pts == 0),
        ])
    }))
}

fn second(c: &ExperimentConfig) -> Result<Table> {
    let keys = indices(c, 100)?;
    let header = [
        "index",
        "dim",
        "body",
        "lambda_sq",
        "product",
        "lower",
        "upper",
    ];
    Ok(table(&header, &keys, |&i| {
        let mut rng = gen::row_rng(c.seed, i);
        let n = rng.gen_range(2..=4);
        let l = gen::random_lattice(&mut rng, n);
        let body = gen::random_body(&mut rng, n);
        let s = second_theorem_check(&l, &body)?;
        Ok(vec![
            i.to_string(),
            n.to_string(),
            body_kind(&body).into(),
            s.minima
                .lambda_sq
                .iter()
                .map(cell_rat)
                .collect::<Vec<_>>()
                .join(" "),
            cell_pair(&s.product),
            cell_ok(s.lower.holds),
            cell_ok(s.upper.holds),
        ])
    }))
}

fn linforms(c: &ExperimentConfig) -> Result<Table> {
    let keys = indices(c, 100)?;
    let header = ["index", "n", "lambda", "x", "verified"];
    Ok(table(&header, &keys, |&i| {
        let mut rng = gen::row_rng(c.seed, i);
        let n = rng.gen_range(2..=4);
        let (a, lambda) = gen::random_linear_forms(&mut rng, n);
        let (x, cert) = linear_forms_solve(&a, &lambda)?;
        // exact recheck of |Yⱼ(x)| ≤ λⱼ
        let y = crate::linalg::mul_int_vec(&a, &x);
        let fits = y.iter().zip(&lambda).all(|(y, l)| &y.abs() <= l);
        let ok = cert.is_valid() && fits && x.iter().any(|&v| v != 0);
        Ok(vec![
            i.to_string(),
            n.to_string(),
            lambda.iter().map(cell_rat).collect::<Vec<_>>().join(" "),
            coeffs(&x),
            cell_ok(ok),
        ])
    }))
}

fn complex(c: &ExperimentConfig) -> Result<Table> {
    let keys = indices(c, 50)?;
    let header = ["index", "n", "s", "bound", "x", "verified"];
    Ok(table(&header, &keys, |&i| {
        let mut rng = gen::row_rng(c.seed, i);
        let n = rng.gen_range(2..=4);
        let f = gen::random_complex_forms(&mut rng, n);
        let sol = complex_linear_forms_solve(&f)?;
        Ok(vec![
            i.to_string(),
            n.to_string(),
            f.s().to_string(),
            cell_pair(&sol.bound),
            coeffs(&sol.x),
            cell_ok(sol.certificate.is_valid()),
        ])
    }))
}

fn pick(c: &ExperimentConfig) -> Result<Table> {
    let keys = indices(c, 500)?;
    let radius = c.get("radius", 12)? as i64;
    let header = [
        "index", "vertices", "interior", "boundary", "area", "pick", "scanned", "jarnik",
    ];
    Ok(table(&header, &keys, |&i| {
        let mut rng = gen::row_rng(c.seed, i);
        let p = gen::random_convex_polygon(&mut rng, radius);
        let r = pick_count(&p)?;
        let j = jarnik_check(&p)?;
        Ok(vec![
            i.to_string(),
            p.vertices().len().to_string(),
            r.interior.to_string(),
            r.boundary.to_string(),
            cell_rat(&r.area),
            cell_ok(r.identity_holds),
            cell_ok(r.scanned),
            cell_ok(j.holds),
        ])
    }))
}

fn hermite(c: &ExperimentConfig) -> Result<Table> {
    let keys = indices(c, 100)?;
    let header = [
        "index",
        "n",
        "det",
        "min",
        "blichfeldt",
        "minkowski",
        "chain",
    ];
    Ok(table(&header, &keys, |&i| {
        let mut rng = gen::row_rng(c.seed, i);
        let n = rng.gen_range(2..=5);
        let q = gen::random_pd_form(&mut rng, n);
        let fm = form_first_minimum(&q)?;
        let chain = hermite_chain(&q)?;
        Ok(vec![
            i.to_string(),
            n.to_string(),
            cell_rat(&q.det()),
            cell_rat(&fm.min),
            cell_pair(&chain[0].rhs),
            cell_pair(&chain[1].rhs),
            cell_ok(chain.iter().all(|k| k.holds)),
        ])
    }))
}

/// (kind, k, from, to)
type Block = (&'static str, u64, u64, u64);

fn figurate(c: &ExperimentConfig) -> Result<Table> {
    let block = c.get("block", 1000)?.max(1);
    let mut blocks: Vec<Block> = vec![];
    let mut push = |kind: &'static str, k: u64, lo: u64, max: u64| {
        let mut a = lo;
        while a <= max {
            let b = (a + block - 1).min(max);
            blocks.push((kind, k, a, b));
            a = b + 1;
        }
    };
    push("eureka", 3, 0, c.get("eureka", 100_000)?);
    for k in 4..=8 {
        push("polygonal", k, 0, c.get("polygonal", 10_000)?);
    }
    let ident = c.get("identities", 10_000)?;
    push("theon", 2, 1, ident);
    push("odd-sum", 2, 1, ident);
    let header = ["kind", "k", "from", "to", "max_parts", "verified"];
    let mut t = Table::new(&header);
    t.rows = blocks
        .par_iter()
        .map(|b| {
            figurate_block(b).unwrap_or_else(|e| {
                let mut r = error_row(b.0.to_string(), header.len(), &e);
                r[1] = b.1.to_string();
                r
            })
        })
        .collect();
    Ok(t)
}

fn figurate_block(&(kind, k, from, to): &Block) -> Result<Vec<String>> {
    let mut max_parts = 0usize;
    let mut ok = true;
    for m in from..=to {
        match kind {
            "eureka" | "polygonal" => {
                let w = if kind == "eureka" {
                    eureka_decompose(m)?
                } else {
                    polygonal_decompose(k, m)?
                };
                max_parts = max_parts.max(w.parts.len());
                ok &= w.verify() && w.parts.len() as u64 <= k;
            }
            "theon" => {
                let n = crate::exact::Int::from(m);
                let s = triangular(&(&n - 1u32))? + triangular(&n)?;
                ok &= s == &n * &n;
            }
            _ => ok &= odd_sum(m) == u128::from(m) * u128::from(m),
        }
    }
    let parts = if matches!(kind, "eureka" | "polygonal") {
        max_parts.to_string()
    } else {
        "-".into()
    };
    Ok(vec![
        kind.into(),
        k.to_string(),
        from.to_string(),
        to.to_string(),
        parts,
        cell_ok(ok),
    ])
}

fn packing_suite() -> Result<Table> {
    let forms: Vec<(&str, QuadraticForm)> = vec![
        ("z2", QuadraticForm::identity(2)),
        ("hexagonal", packing::hexagonal()),
        ("z3", QuadraticForm::identity(3)),
        ("fcc", packing::fcc()),
        ("d4", d4()),
    ];
    let header = [
        "id",
        "dim",
        "det",
        "min",
        "kissing",
        "density",
        "hermite",
        "hermite_power",
        "consistent",
    ];
    let mut t = Table::new(&header);
    t.rows = forms
        .par_iter()
        .map(|(id, q)| {
            packing_report(id, q)
                .map(|r| {
                    vec![
                        r.id,
                        r.dim.to_string(),
                        cell_rat(&r.det),
                        cell_rat(&r.min_norm2),
                        r.kissing.to_string(),
                        cell_pair(&r.density),
                        cell_pair(&r.hermite_invariant),
                        cell_rat(&r.hermite_power),
                        cell_ok(r.consistent),
                    ]
                })
                .unwrap_or_else(|e| error_row(id.to_string(), header.len(), &e))
        })
        .collect();
    Ok(t)
}
