//! Constructive versions of the lattice-point theorems: every success comes with
//! a [`TheoremCertificate`] recording each checked inequality and its verdict.

mod approx;
mod forms;
mod squares;

pub use approx::{dirichlet_1d, simultaneous_approx, Dirichlet, SimultaneousApprox};
pub use forms::{
    complex_linear_forms_solve, field_bound_below_one, form_first_minimum, hermite_bound_expr,
    linear_forms_solve, minkowski_bound_expr, minkowski_field_bound, ComplexForms, ComplexSolution,
    FirstMinimum,
};
pub use squares::{four_square, is_prime, sqrt_minus_one, two_square, TwoSquare, FOUR_SQUARE_CAP};

use std::collections::HashMap;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::body::ConvexBody;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{
    certified_compare, factorial, rat, rat_from_int, rat_int, serde_rat, Int, Rat, Real,
    RealEnclosure, Verdict,
};
use crate::lattice::{points_in_body, successive_minima_with, Lattice, LatticePoint};
use crate::linalg::{self, Matrix};

/// Relation a claim asserts between its two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn accepts(self, v: Verdict) -> bool {
        match self {
            Relation::Lt => v == Verdict::Less,
            Relation::Le => v.le(),
            Relation::Gt => v == Verdict::Greater,
            Relation::Ge => v.ge(),
        }
    }
}

/// One certified inequality.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub relation: Relation,
    pub lhs: RealEnclosure,
    pub rhs: RealEnclosure,
    pub verdict: Verdict,
    pub holds: bool,
}

impl Check {
    pub fn new(claim: impl Into<String>, lhs: &Real, relation: Relation, rhs: &Real) -> Check {
        let verdict = certified_compare(lhs, rhs);
        let show = |x: &Real| {
            x.enclose(&rat(1, 1_000_000_000_000))
                .or_else(|_| x.quick())
                .unwrap_or_else(|_| RealEnclosure::exact(Rat::zero()))
        };
        Check {
            claim: claim.into(),
            relation,
            lhs: show(lhs),
            rhs: show(rhs),
            verdict,
            holds: relation.accepts(verdict),
        }
    }

    pub fn rational(claim: impl Into<String>, lhs: &Rat, relation: Relation, rhs: &Rat) -> Check {
        Self::new(
            claim,
            &Real::rat(lhs.clone()),
            relation,
            &Real::rat(rhs.clone()),
        )
    }
}

/// Audit trail of a constructive theorem application.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremCertificate {
    pub statement: &'static str,
    pub hypotheses: Vec<Check>,
    /// Witness points in ambient coordinates.
    #[serde(serialize_with = "ser_points")]
    pub witnesses: Vec<Vec<Rat>>,
    pub verification: Vec<Check>,
}

fn ser_points<S: serde::Serializer>(
    pts: &[Vec<Rat>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    serde_rat::matrix::serialize(pts, s)
}

impl TheoremCertificate {
    pub(crate) fn new(statement: &'static str) -> Self {
        TheoremCertificate {
            statement,
            hypotheses: vec![],
            witnesses: vec![],
            verification: vec![],
        }
    }

    /// Every hypothesis and every verification step holds with a decided verdict.
    pub fn is_valid(&self) -> bool {
        self.hypotheses
            .iter()
            .chain(&self.verification)
            .all(|c| c.holds && c.verdict.is_decided())
    }

    pub(crate) fn require_hypotheses(&self) -> Result<()> {
        match self.hypotheses.iter().find(|c| !c.holds) {
            None => Ok(()),
            Some(c) => Err(Error::Hypothesis(format!(
                "{} not certified (verdict {:?})",
                c.claim, c.verdict
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// vol(C) > 2ⁿ det Λ, witness in the interior.
    Strict,
    /// vol(C) ≥ 2ⁿ det Λ, witness in the closed body.
    Closed,
}

fn two_pow(n: usize) -> Rat {
    rat_from_int(&Int::from(2).pow(n as u32))
}

fn volume_hypothesis(l: &Lattice, c: &ConvexBody, factor: Rat, mode: Mode) -> Result<Check> {
    let vol = c.volume()?;
    let rhs = Real::rat(factor * l.det_abs());
    let rel = match mode {
        Mode::Strict => Relation::Gt,
        Mode::Closed => Relation::Ge,
    };
    Ok(Check::new("vol(C) vs 2^n det(L)", &vol, rel, &rhs))
}

fn membership_check(c: &ConvexBody, x: &[Rat], mode: Mode) -> Check {
    let g = c.gauge_sq(x);
    let rel = match mode {
        Mode::Strict => Relation::Lt,
        Mode::Closed => Relation::Le,
    };
    Check::rational("gauge(x)^2 vs 1", &g, rel, &Rat::one())
}

/// Nonzero lattice point in a symmetric convex body of large volume, found by
/// exact enumeration. The lexicographically least coefficient vector wins.
pub fn minkowski_point(
    l: &Lattice,
    c: &ConvexBody,
    mode: Mode,
) -> Result<(LatticePoint, TheoremCertificate)> {
    minkowski_point_with(l, c, mode, &Budget::default())
}

pub fn minkowski_point_with(
    l: &Lattice,
    c: &ConvexBody,
    mode: Mode,
    budget: &Budget,
) -> Result<(LatticePoint, TheoremCertificate)> {
    if c.dim() != l.dim() {
        return Err(Error::Dimension(c.dim()));
    }
    let mut cert = TheoremCertificate::new("minkowski-lattice-point");
    cert.hypotheses
        .push(volume_hypothesis(l, c, two_pow(l.dim()), mode)?);
    cert.require_hypotheses()?;
    let body = c.linear_preimage(l.basis())?;
    let mut meter = budget.meter();
    let found = points_in_body(&body, &Rat::one(), &mut meter)?
        .into_iter()
        .filter(|(g, _)| mode == Mode::Closed || g < &Rat::one())
        .map(|(_, p)| p)
        .min()
        .ok_or_else(|| {
            Error::NotFound("no lattice point despite the volume bound (defect)".into())
        })?;
    let pt = l.point(found);
    cert.verification
        .push(membership_check(c, &pt.ambient, mode));
    cert.witnesses.push(pt.ambient.clone());
    Ok((pt, cert))
}

#[derive(Clone, Debug, Serialize)]
pub struct GridStep {
    pub t: u64,
    /// Grid points (2/t)·z strictly inside the body.
    pub count: u64,
    pub t_pow_n: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MordellResult {
    pub point: LatticePoint,
    pub trace: Vec<GridStep>,
    pub certificate: TheoremCertificate,
}

pub const MORDELL_T_CAP: u64 = 1 << 14;

/// Pigeonhole search on the grid (2/t)ℤⁿ: once more than tⁿ grid points lie in the
/// interior, two are congruent mod t and half their difference is a lattice point.
pub fn mordell_grid_search(l: &Lattice, c: &ConvexBody) -> Result<MordellResult> {
    mordell_grid_search_with(l, c, &Budget::default())
}

pub fn mordell_grid_search_with(
    l: &Lattice,
    c: &ConvexBody,
    budget: &Budget,
) -> Result<MordellResult> {
    if c.dim() != l.dim() {
        return Err(Error::Dimension(c.dim()));
    }
    let n = l.dim();
    let mut cert = TheoremCertificate::new("mordell-grid");
    cert.hypotheses
        .push(volume_hypothesis(l, c, two_pow(n), Mode::Strict)?);
    cert.require_hypotheses()?;
    let body = c.linear_preimage(l.basis())?;
    let mut meter = budget.meter();
    let mut trace = Vec::new();
    for t in 1..=MORDELL_T_CAP {
        // (2/t)z strictly inside  ⇔  gauge²(z) < t²/4
        let lim = rat_int(t as i64 * t as i64) / rat_int(4);
        let mut grid: Vec<Vec<i64>> = points_in_body(&body, &lim, &mut meter)?
            .into_iter()
            .filter(|(g, _)| g < &lim)
            .map(|(_, p)| p)
            .collect();
        grid.push(vec![0; n]);
        grid.sort();
        let count = grid.len() as u64;
        let tn = Int::from(t).pow(n as u32);
        trace.push(GridStep {
            t,
            count,
            t_pow_n: tn.to_string(),
        });
        if Int::from(count) <= tn {
            continue;
        }
        let ti = t as i64;
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        for z in grid {
            let key: Vec<i64> = z.iter().map(|v| v.rem_euclid(ti)).collect();
            if let Some(prev) = seen.get(&key) {
                // ½((2/t)z − (2/t)z') = (z − z')/t
                let m: Vec<i64> = z.iter().zip(prev).map(|(a, b)| (a - b) / ti).collect();
                let pt = l.point(m);
                cert.verification
                    .push(membership_check(c, &pt.ambient, Mode::Strict));
                cert.witnesses.push(pt.ambient.clone());
                return Ok(MordellResult {
                    point: pt,
                    trace,
                    certificate: cert,
                });
            }
            seen.insert(key, z);
        }
        return Err(Error::NotFound("pigeonhole failed (defect)".into()));
    }
    Err(Error::budget(format!(
        "grid parameter t exceeded {MORDELL_T_CAP}"
    )))
}

/// Half-open axis-parallel box [lo, hi).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenBox {
    pub lo: Vec<Rat>,
    pub hi: Vec<Rat>,
}

impl HalfOpenBox {
    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() || lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::domain("box needs lo < hi in every coordinate"));
        }
        Ok(HalfOpenBox { lo, hi })
    }

    fn contains(&self, x: &[Rat]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (a, b))| a <= v && v < b)
    }
}

/// Measurable set for Blichfeldt's theorem.
#[derive(Clone, Debug)]
pub enum Region {
    Boxes(Vec<HalfOpenBox>),
    Body(ConvexBody),
}

impl Region {
    fn dim(&self) -> usize {
        match self {
            Region::Boxes(b) => b.first().map_or(0, |b| b.lo.len()),
            Region::Body(c) => c.dim(),
        }
    }

    fn contains(&self, x: &[Rat]) -> bool {
        match self {
            Region::Boxes(bs) => bs.iter().any(|b| b.contains(x)),
            Region::Body(c) => c.membership(x).in_closure(),
        }
    }

    /// Exact volume of a union of boxes by coordinate compression.
    pub fn volume(&self) -> Result<Real> {
        match self {
            Region::Body(c) => c.volume(),
            Region::Boxes(bs) => {
                let n = self.dim();
                let cuts: Vec<Vec<Rat>> = (0..n)
                    .map(|k| {
                        let mut v: Vec<Rat> = bs
                            .iter()
                            .flat_map(|b| [b.lo[k].clone(), b.hi[k].clone()])
                            .collect();
                        v.sort();
                        v.dedup();
                        v
                    })
                    .collect();
                let mut total = Rat::zero();
                let mut idx = vec![0usize; n];
                'cells: loop {
                    let lo: Vec<Rat> = (0..n).map(|k| cuts[k][idx[k]].clone()).collect();
                    if bs.iter().any(|b| b.contains(&lo)) {
                        total += (0..n).fold(Rat::one(), |acc, k| {
                            acc * (&cuts[k][idx[k] + 1] - &cuts[k][idx[k]])
                        });
                    }
                    for k in (0..n).rev() {
                        if idx[k] + 2 < cuts[k].len() {
                            idx[k] += 1;
                            continue 'cells;
                        }
                        idx[k] = 0;
                    }
                    break;
                }
                Ok(Real::rat(total))
            }
        }
    }

    /// Rational bounds of the region in ambient coordinates.
    fn ambient_bounds(&self) -> Result<(Vec<Rat>, Vec<Rat>)> {
        match self {
            Region::Body(c) => {
                let h = c.bounding_box()?;
                Ok((h.iter().map(|v| -v).collect(), h))
            }
            Region::Boxes(bs) => {
                let n = self.dim();
                let lo = (0..n)
                    .map(|k| bs.iter().map(|b| b.lo[k].clone()).min().expect("boxes"))
                    .collect();
                let hi = (0..n)
                    .map(|k| bs.iter().map(|b| b.hi[k].clone()).max().expect("boxes"))
                    .collect();
                Ok((lo, hi))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlichfeldtResult {
    /// m+1 distinct points of Ω with pairwise differences in Λ.
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<Vec<Rat>>,
    /// Grid resolution 1/k at which the overlap cell was found.
    pub k: u64,
    pub certificate: TheoremCertificate,
}

/// m+1 points of Ω congruent modulo Λ, for vol(Ω) > m·det Λ.
///
/// Cells of the fundamental domain are sampled at their centres on a grid of
/// side 1/k (k = 2, 4, 8, …); the first centre y with m+1 translates y+u landing
/// in Ω yields the points.
pub fn blichfeldt_points(l: &Lattice, omega: &Region, m: u64) -> Result<BlichfeldtResult> {
    blichfeldt_points_with(l, omega, m, &Budget::default())
}

pub fn blichfeldt_points_with(
    l: &Lattice,
    omega: &Region,
    m: u64,
    budget: &Budget,
) -> Result<BlichfeldtResult> {
    let n = l.dim();
    if omega.dim() != n {
        return Err(Error::Dimension(omega.dim()));
    }
    if m == 0 {
        return Err(Error::domain("m must be at least 1"));
    }
    let mut cert = TheoremCertificate::new("blichfeldt");
    let vol = omega.volume()?;
    cert.hypotheses.push(Check::new(
        "vol(Omega) vs m det(L)",
        &vol,
        Relation::Gt,
        &Real::rat(rat_int(m as i64) * l.det_abs()),
    ));
    cert.require_hypotheses()?;
    // coefficient range of translates that can meet Ω
    let inv = linalg::inverse(l.basis()).ok_or(Error::DegenerateBasis)?;
    let (alo, ahi) = omega.ambient_bounds()?;
    let (clo, chi) = coefficient_range(&inv, &alo, &ahi)?;
    let mut meter = budget.meter();
    let mut k: i64 = 2;
    loop {
        let mut cell = vec![0i64; n];
        loop {
            let y: Vec<Rat> = cell.iter().map(|&i| rat(2 * i + 1, 2 * k)).collect();
            let mut hits: Vec<Vec<Rat>> = Vec::new();
            let mut u = clo.clone();
            'translates: loop {
                meter.tick("blichfeldt search")?;
                let c: Vec<Rat> = y.iter().zip(&u).map(|(a, &b)| a + rat_int(b)).collect();
                let x = linalg::mul_vec(l.basis(), &c);
                if omega.contains(&x) {
                    hits.push(x);
                    if hits.len() as u64 == m + 1 {
                        break 'translates;
                    }
                }
                for j in (0..n).rev() {
                    if u[j] < chi[j] {
                        u[j] += 1;
                        continue 'translates;
                    }
                    u[j] = clo[j];
                }
                break;
            }
            if hits.len() as u64 == m + 1 {
                for i in 0..hits.len() {
                    for j in i + 1..hits.len() {
                        let d: Vec<Rat> =
                            hits[i].iter().zip(&hits[j]).map(|(a, b)| a - b).collect();
                        let ok = l.contains(&d) && d.iter().any(|v| !v.is_zero());
                        cert.verification.push(Check::rational(
                            format!("x{i} - x{j} is a nonzero lattice vector"),
                            &rat_int(ok as i64),
                            Relation::Ge,
                            &Rat::one(),
                        ));
                    }
                }
                cert.witnesses = hits.clone();
                return Ok(BlichfeldtResult {
                    points: hits,
                    k: k as u64,
                    certificate: cert,
                });
            }
            if !odometer(&mut cell, 0, k - 1) {
                break;
            }
        }
        k *= 2;
    }
}

/// Advances x through the box [lo, hi]ⁿ; false after the last point.
fn odometer(x: &mut [i64], lo: i64, hi: i64) -> bool {
    for j in (0..x.len()).rev() {
        if x[j] < hi {
            x[j] += 1;
            return true;
        }
        x[j] = lo;
    }
    false
}

/// Integer box containing B⁻¹x − y for all x in [alo, ahi] and y ∈ [0,1)ⁿ.
fn coefficient_range(inv: &Matrix, alo: &[Rat], ahi: &[Rat]) -> Result<(Vec<i64>, Vec<i64>)> {
    let n = alo.len();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for row in inv {
        let (mut a, mut b) = (Rat::zero(), Rat::zero());
        for k in 0..n {
            let (p, q) = (&row[k] * &alo[k], &row[k] * &ahi[k]);
            a += p.clone().min(q.clone());
            b += p.max(q);
        }
        let to = |x: Int| {
            x.to_i64()
                .ok_or_else(|| Error::budget("coefficient range too large"))
        };
        lo.push(to(crate::exact::floor(&a))? - 1);
        hi.push(to(crate::exact::ceil(&b))?);
    }
    Ok((lo, hi))
}

/// First dilation λ₀ at which the translates λC + z (z ∈ Λ) stop being disjoint,
/// found by bisection to the given width. Translates of λC by z overlap exactly
/// when z ∈ 2λC.
pub fn first_overlap_dilation(l: &Lattice, c: &ConvexBody, width: &Rat) -> Result<RealEnclosure> {
    let body = c.linear_preimage(l.basis())?;
    let budget = Budget::default();
    let mut meter = budget.meter();
    // overlap(λ) ⇔ some nonzero z with gauge(z) ≤ 2λ
    let mut overlap = |lam: &Rat| -> Result<bool> {
        let b = rat_int(4) * lam * lam;
        Ok(!points_in_body(&body, &b, &mut meter)?.is_empty())
    };
    let (mut lo, mut hi) = (Rat::zero(), Rat::one());
    while !overlap(&hi)? {
        lo = hi.clone();
        hi *= rat_int(2);
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / rat_int(2);
        if overlap(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(RealEnclosure::new(lo, hi))
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondTheorem {
    pub minima: crate::lattice::SuccessiveMinima,
    /// ∏λⱼ · vol(C) / det Λ
    pub product: RealEnclosure,
    pub lower: Check,
    pub upper: Check,
}

/// 2ⁿ/n! ≤ λ₁⋯λₙ·vol(C)/det Λ ≤ 2ⁿ.
pub fn second_theorem_check(l: &Lattice, c: &ConvexBody) -> Result<SecondTheorem> {
    let n = l.dim();
    let minima = successive_minima_with(l, c, &Budget::default())?;
    let prod = minima.product() * c.volume()? / Real::rat(l.det_abs().clone());
    let lower_bound = two_pow(n) / rat_from_int(&factorial(n as u64));
    let lower = Check::new(
        "2^n/n! vs prod",
        &Real::rat(lower_bound),
        Relation::Le,
        &prod,
    );
    let upper = Check::new("prod vs 2^n", &prod, Relation::Le, &Real::rat(two_pow(n)));
    let product = prod
        .enclose(&rat(1, 1_000_000_000_000))
        .or_else(|_| prod.quick())?;
    Ok(SecondTheorem {
        minima,
        product,
        lower,
        upper,
    })
}

impl SecondTheorem {
    pub fn holds(&self) -> bool {
        self.lower.holds && self.upper.holds
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::Membership;

    fn r(v: i64) -> Rat {
        rat_int(v)
    }

    #[test]
    fn minkowski_examples() {
        let z2 = Lattice::integer(2).unwrap();
        let bx = ConvexBody::cube(2, rat(11, 10)).unwrap();
        let (p, cert) = minkowski_point(&z2, &bx, Mode::Strict).unwrap();
        assert!(cert.is_valid());
        // lexicographically least coefficient vector inside the body
        assert_eq!(p.coeffs, vec![-1, -1]);
        let small = ConvexBody::cube(2, rat(9, 10)).unwrap();
        assert_eq!(
            minkowski_point(&z2, &small, Mode::Strict)
                .unwrap_err()
                .kind(),
            "hypothesis"
        );
        // the unit square has volume exactly 4: closed mode only
        let unit = ConvexBody::cube(2, r(1)).unwrap();
        assert_eq!(
            minkowski_point(&z2, &unit, Mode::Strict)
                .unwrap_err()
                .kind(),
            "hypothesis"
        );
        let (p, cert) = minkowski_point(&z2, &unit, Mode::Closed).unwrap();
        assert!(cert.is_valid());
        assert_eq!(unit.membership(&p.ambient), Membership::Boundary);
    }

    #[test]
    fn mordell_examples() {
        let z2 = Lattice::integer(2).unwrap();
        let bx = ConvexBody::cube(2, rat(11, 10)).unwrap();
        let res = mordell_grid_search(&z2, &bx).unwrap();
        assert!(res.certificate.is_valid());
        assert_eq!(bx.membership(&res.point.ambient), Membership::Inside);
        // disc of area 4.5: r² = 4.5/π ≈ 1.43
        let disc = ConvexBody::ball(2, rat(143, 100)).unwrap();
        let res = mordell_grid_search(&z2, &disc).unwrap();
        let n1: Rat = res.point.ambient.iter().map(|x| x * x).sum();
        assert_eq!(n1, r(1));
        let tiny = ConvexBody::ball(2, r(1)).unwrap();
        assert_eq!(
            mordell_grid_search(&z2, &tiny).unwrap_err().kind(),
            "hypothesis"
        );
    }

    #[test]
    fn blichfeldt_examples() {
        let z2 = Lattice::integer(2).unwrap();
        let sq = |h: Rat| {
            Region::Boxes(vec![
                HalfOpenBox::new(vec![r(0), r(0)], vec![h.clone(), h]).unwrap()
            ])
        };
        let res = blichfeldt_points(&z2, &sq(rat(3, 2)), 2).unwrap();
        assert_eq!(res.points.len(), 3);
        assert!(res.certificate.is_valid());
        let res = blichfeldt_points(&z2, &sq(rat(3, 2)), 1).unwrap();
        assert_eq!(res.points.len(), 2);
        assert_eq!(
            blichfeldt_points(&z2, &sq(r(1)), 1).unwrap_err().kind(),
            "hypothesis"
        );
    }

    #[test]
    fn union_volume_counts_overlap_once() {
        let a = HalfOpenBox::new(vec![r(0), r(0)], vec![r(2), r(2)]).unwrap();
        let b = HalfOpenBox::new(vec![r(1), r(1)], vec![r(3), r(3)]).unwrap();
        assert_eq!(
            Region::Boxes(vec![a, b]).volume().unwrap().exact(),
            Some(r(7))
        );
    }

    #[test]
    fn overlap_dilation_is_half_first_minimum() {
        let l = Lattice::from_int_vectors(&[&[2, 0], &[1, 1]]).unwrap();
        let disc = ConvexBody::ball(2, r(1)).unwrap();
        let e = first_overlap_dilation(&l, &disc, &rat(1, 1 << 20)).unwrap();
        // λ₁ = √2, λ₀ = √2/2
        let half = Real::int(2).sqrt() / Real::int(2);
        let h = half.enclose(&rat(1, 1 << 30)).unwrap();
        assert!(e.overlaps(&h));
    }

    #[test]
    fn second_theorem_equality_cases() {
        let z3 = Lattice::integer(3).unwrap();
        let cube = ConvexBody::cube(3, r(1)).unwrap();
        let s = second_theorem_check(&z3, &cube).unwrap();
        assert_eq!(s.upper.verdict, Verdict::Equal);
        let diamond = ConvexBody::sym_polygon(vec![[r(1), r(0)], [r(0), r(1)]]).unwrap();
        let s = second_theorem_check(&Lattice::integer(2).unwrap(), &diamond).unwrap();
        assert_eq!(s.lower.verdict, Verdict::Equal);
        assert!(s.holds());
    }
}
