//! Counting lattice points: sums of squares, the circle and divisor problems,
//! and the planar counts in [`plane`].

mod plane;

pub use plane::{
    jarnik_check, orchard_visibility, pick_count, visible, visible_density, JarnikReport, Orchard,
    OrchardReport, PickReport, DENSITY_CAP, SCAN_LIMIT,
};

use num_traits::Signed;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{floor, isqrt_u64, rat, rat_int, to_i64, Rat, Real, RealEnclosure};
use crate::theorems::{Check, Relation, TheoremCertificate};

/// Inputs above this are refused by the integer kernels.
pub const COUNT_CAP: u64 = 1_000_000_000_000;

fn check_cap(x: u64) -> Result<()> {
    if x > COUNT_CAP {
        return Err(Error::budget(format!("{x} above counting cap {COUNT_CAP}")));
    }
    Ok(())
}

/// r_k(n) for all n ≤ n_max, by convolving the square indicator k times.
pub fn r_table(k: u32, n_max: u64, budget: &Budget) -> Result<Vec<u128>> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let len = usize::try_from(n_max)
        .ok()
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::budget("table too long"))?;
    let mut meter = budget.meter();
    // r_1: 1 at 0, 2 at every positive square
    let mut r1 = vec![0u128; len];
    r1[0] = 1;
    let mut a = 1u64;
    while a * a <= n_max {
        r1[(a * a) as usize] = 2;
        a += 1;
    }
    let mut cur = r1.clone();
    for _ in 1..k {
        let mut next = vec![0u128; len];
        for (n, slot) in next.iter_mut().enumerate() {
            meter.tick("r_k convolution")?;
            let mut acc = 0u128;
            let mut b = 0usize;
            while b * b <= n {
                let w = if b == 0 { 1 } else { 2 };
                acc = acc
                    .checked_add(w * cur[n - b * b])
                    .ok_or_else(|| Error::budget("r_k overflow"))?;
                b += 1;
            }
            *slot = acc;
        }
        cur = next;
    }
    Ok(cur)
}

/// Number of representations of n as an ordered, signed sum of k squares.
pub fn r_k(n: u64, k: u32) -> Result<u128> {
    Ok(r_table(k, n, &Budget::default())?[n as usize])
}

/// R(x) = #{(a,b) : a² + b² ≤ x}.
pub fn circle_count(x: &Rat) -> Result<u128> {
    if x < &Rat::from_integer(0.into()) {
        return Err(Error::domain("x must be non-negative"));
    }
    let xi = to_i64(&floor(x))?;
    check_cap(xi as u64)?;
    Ok(circle_count_u64(xi as u64))
}

fn circle_count_u64(x: u64) -> u128 {
    let s = isqrt_u64(x);
    let mut total = 2 * isqrt_u64(x) as u128 + 1;
    for a in 1..=s {
        total += 2 * (2 * isqrt_u64(x - a * a) as u128 + 1);
    }
    total
}

/// #{v ∈ ℤᵈ : |v|² ≤ x}, the summatory function of r_d.
pub fn ball_count(d: u32, x: u64, budget: &Budget) -> Result<u128> {
    check_cap(x)?;
    let mut meter = budget.meter();
    ball_count_metered(d, x, &mut meter)
}

fn ball_count_metered(d: u32, x: u64, meter: &mut crate::budget::Meter<'_>) -> Result<u128> {
    match d {
        0 => Ok(1),
        1 => Ok(2 * isqrt_u64(x) as u128 + 1),
        2 => {
            meter.tick("ball count")?;
            Ok(circle_count_u64(x))
        }
        _ => {
            let s = isqrt_u64(x);
            let mut total = ball_count_metered(d - 1, x, meter)?;
            for a in 1..=s {
                total += 2 * ball_count_metered(d - 1, x - a * a, meter)?;
            }
            Ok(total)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussCircleCheck {
    pub count: u128,
    pub certificate: TheoremCertificate,
}

impl GaussCircleCheck {
    pub fn holds(&self) -> bool {
        self.certificate.is_valid()
    }
}

/// Certifies π(√x − √2/2)² < R(x) < π(√x + √2/2)².
pub fn gauss_circle_bounds_check(x: &Rat) -> Result<GaussCircleCheck> {
    if x <= &rat(1, 2) {
        return Err(Error::domain("x must exceed 1/2"));
    }
    let count = circle_count(x)?;
    let rx = Real::rat(x.clone()).sqrt();
    let half_diag = Real::int(2).sqrt() / Real::int(2);
    let lower = Real::pi() * (&rx - &half_diag).powi(2);
    let upper = Real::pi() * (&rx + &half_diag).powi(2);
    let r = Real::rat(Rat::from_integer(count.into()));
    let mut certificate = TheoremCertificate::new("gauss-circle-bounds");
    certificate.verification.push(Check::new(
        "pi(sqrt x - sqrt2/2)^2 vs R(x)",
        &lower,
        Relation::Lt,
        &r,
    ));
    certificate.verification.push(Check::new(
        "R(x) vs pi(sqrt x + sqrt2/2)^2",
        &r,
        Relation::Lt,
        &upper,
    ));
    if certificate
        .verification
        .iter()
        .any(|c| !c.verdict.is_decided())
    {
        return Err(Error::Precision(format!(
            "Gauss bounds undecided at x = {x}"
        )));
    }
    Ok(GaussCircleCheck { count, certificate })
}

/// d(n), the number of divisors.
pub fn divisor(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let mut m = n;
    let mut count = 1;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        count *= e + 1;
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        count *= 2;
    }
    Ok(count)
}

/// D(x) = Σ_{n≤x} d(n) = 2 Σ_{a≤√x} ⌊x/a⌋ − ⌊√x⌋².
pub fn divisor_summatory(x: u64) -> Result<u128> {
    if x == 0 {
        return Err(Error::domain("x must be positive"));
    }
    check_cap(x)?;
    let s = isqrt_u64(x);
    let sum: u128 = (1..=s).map(|a| (x / a) as u128).sum();
    Ok(2 * sum - (s as u128) * (s as u128))
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorRow {
    pub x: u64,
    pub exact: u128,
    pub main: RealEnclosure,
    /// exact − main
    pub error: RealEnclosure,
    /// error / x^θ
    pub normalized: RealEnclosure,
    /// exact / x^θ, reported by the ball-volume scan.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<RealEnclosure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorScanReport {
    pub label: String,
    #[serde(with = "crate::exact::serde_rat")]
    pub theta: Rat,
    pub rows: Vec<ErrorRow>,
    /// max |error| over the grid (upper end of the enclosures).
    pub max_abs_error: RealEnclosure,
    /// Limit the ratio column should approach, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<RealEnclosure>,
}

impl ErrorScanReport {
    /// max |normalized| over the grid, as an upper bound.
    pub fn max_abs_normalized(&self) -> Rat {
        self.rows
            .iter()
            .map(|r| {
                r.normalized
                    .lo
                    .clone()
                    .abs()
                    .max(r.normalized.hi.clone().abs())
            })
            .max()
            .unwrap_or_default()
    }
}

fn row_width() -> Rat {
    rat(1, 1_000_000_000)
}

fn make_row(x: u64, exact: u128, main: &Real, theta: &Rat, with_ratio: bool) -> Result<ErrorRow> {
    let w = row_width();
    let ex = Real::rat(Rat::from_integer(exact.into()));
    let scale = Real::int(x as i64).pow(theta);
    let error = &ex - main;
    Ok(ErrorRow {
        x,
        exact,
        main: main.enclose(&w)?,
        normalized: (&error / &scale).enclose(&w)?,
        error: error.enclose(&w)?,
        ratio: if with_ratio {
            Some((&ex / &scale).enclose(&w)?)
        } else {
            None
        },
    })
}

fn finish(
    label: &str,
    theta: Rat,
    rows: Vec<ErrorRow>,
    limit: Option<RealEnclosure>,
) -> ErrorScanReport {
    let max = rows
        .iter()
        .map(|r| r.error.lo.clone().abs().max(r.error.hi.clone().abs()))
        .max()
        .unwrap_or_default();
    ErrorScanReport {
        label: label.into(),
        theta,
        rows,
        max_abs_error: RealEnclosure::exact(max),
        limit,
    }
}

fn check_grid(grid: &[u64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain("empty grid"));
    }
    grid.iter().try_for_each(|&x| check_cap(x))
}

/// R(x) − πx, normalised by √x.
pub fn circle_error_scan(grid: &[u64]) -> Result<ErrorScanReport> {
    check_grid(grid)?;
    let theta = rat(1, 2);
    let rows = grid
        .iter()
        .map(|&x| {
            let main = Real::pi() * Real::int(x as i64);
            make_row(x, circle_count_u64(x), &main, &theta, false)
        })
        .collect::<Result<_>>()?;
    Ok(finish("circle", theta, rows, None))
}

/// Σ_{n≤x} r_d(n) against vol(B_d)·x^(d/2); the ratio column tends to vol(B_d).
pub fn ball_volume_limit_scan(d: u32, grid: &[u64], budget: &Budget) -> Result<ErrorScanReport> {
    if !(2..=5).contains(&d) {
        return Err(Error::domain("d must be in 2..5"));
    }
    check_grid(grid)?;
    let theta = rat(d as i64, 2);
    let vol = Real::unit_ball_volume(d);
    let mut meter = budget.meter();
    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let n = ball_count_metered(d, x, &mut meter)?;
        let main = &vol * Real::int(x as i64).pow(&theta);
        rows.push(make_row(x, n, &main, &theta, true)?);
    }
    let limit = vol.enclose(&row_width())?;
    Ok(finish(&format!("ball-{d}"), theta, rows, Some(limit)))
}

/// D(x) − x log x − (2γ − 1)x, normalised by √x.
pub fn divisor_error_scan(grid: &[u64]) -> Result<ErrorScanReport> {
    check_grid(grid)?;
    if grid.contains(&0) {
        return Err(Error::domain("x must be positive"));
    }
    let theta = rat(1, 2);
    let c = Real::int(2) * Real::euler_gamma() - Real::int(1);
    let rows = grid
        .iter()
        .map(|&x| {
            let xr = Real::int(x as i64);
            let main = &xr * Real::ln(rat_int(x as i64)) + &c * &xr;
            make_row(x, divisor_summatory(x)?, &main, &theta, false)
        })
        .collect::<Result<_>>()?;
    Ok(finish("divisor", theta, rows, None))
}
