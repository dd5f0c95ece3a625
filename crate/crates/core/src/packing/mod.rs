//! Lattice packings of balls: density, kissing number, Hermite invariants and bounds,
//! plus planar Voronoi cells and critical-determinant checks in [`cells`].

mod cells;

pub use cells::{
    critical_det_check_2d, critical_determinant_2d, hlawka_witness_check,
    hlawka_witness_check_form, voronoi_cell_2d, voronoi_cell_form_2d, CriticalCheck, HlawkaReport,
    VoronoiCell,
};

use std::cmp::Ordering;

use num_traits::One;
use serde::Serialize;

use crate::body::QuadraticForm;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{
    rat, rat_int, rat_powi, serde_rat, PowerProduct, Rat, Real, RealEnclosure, Verdict,
};
use crate::lattice::form_minimal_vectors;
use crate::theorems::{minkowski_bound_expr, Check, Relation};

/// γ₂₄ = 4, carried as a cited value only.
pub const CITED_GAMMA_24: i64 = 4;

fn width() -> Rat {
    rat(1, 1_000_000_000_000)
}

/// Hexagonal Gram matrix [[1, 1/2], [1/2, 1]].
pub fn hexagonal() -> QuadraticForm {
    QuadraticForm::new(vec![vec![rat(1, 1), rat(1, 2)], vec![rat(1, 2), rat(1, 1)]])
        .expect("positive definite")
}

/// Gram matrix of X² + Y² + Z² + XY + YZ + XZ (the fcc lattice).
pub fn fcc() -> QuadraticForm {
    let h = rat(1, 2);
    let o = rat(1, 1);
    QuadraticForm::new(vec![
        vec![o.clone(), h.clone(), h.clone()],
        vec![h.clone(), o.clone(), h.clone()],
        vec![h.clone(), h, o],
    ])
    .expect("positive definite")
}

/// vol(ball of radius √min / 2) / √det, as a symbolic real.
pub fn packing_density_real(q: &QuadraticForm, min_norm2: &Rat) -> Real {
    let n = q.dim() as u32;
    Real::rat(min_norm2 / rat_int(4)).pow(&rat(i64::from(n), 2)) * Real::unit_ball_volume(n)
        / Real::rat(q.det()).sqrt()
}

pub fn packing_density(q: &QuadraticForm) -> Result<RealEnclosure> {
    let (m, _) = form_minimal_vectors(q, &Budget::default())?;
    packing_density_real(q, &m).enclose(&width())
}

/// Number of minimal vectors.
pub fn kissing_number(q: &QuadraticForm) -> Result<u64> {
    Ok(form_minimal_vectors(q, &Budget::default())?.1.len() as u64)
}

/// γ(L)ⁿ = minⁿ / det, exactly.
pub fn hermite_invariant_power(q: &QuadraticForm, min_norm2: &Rat) -> Rat {
    rat_powi(min_norm2, q.dim() as i64) / q.det()
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingReport {
    pub id: String,
    pub dim: usize,
    #[serde(with = "serde_rat")]
    pub det: Rat,
    #[serde(with = "serde_rat")]
    pub min_norm2: Rat,
    pub kissing: u64,
    pub density: RealEnclosure,
    /// γ(L) = min / det^(1/n)
    pub hermite_invariant: RealEnclosure,
    /// γ(L)ⁿ, exact
    #[serde(with = "serde_rat")]
    pub hermite_power: Rat,
    /// Density recomputed from γ(L) through [`gauss_delta_gamma`].
    pub delta_from_gamma: RealEnclosure,
    /// The two density enclosures overlap.
    pub consistent: bool,
}

pub fn packing_report(id: &str, q: &QuadraticForm) -> Result<PackingReport> {
    let n = q.dim();
    let (m, vecs) = form_minimal_vectors(q, &Budget::default())?;
    let density = packing_density_real(q, &m).enclose(&width())?;
    let gamma = Real::rat(m.clone()) / Real::rat(q.det()).pow(&rat(1, n as i64));
    let delta = gauss_delta_gamma_real(n as u32, &gamma).enclose(&width())?;
    Ok(PackingReport {
        id: id.into(),
        dim: n,
        det: q.det(),
        kissing: vecs.len() as u64,
        hermite_invariant: gamma.enclose(&width())?,
        hermite_power: hermite_invariant_power(q, &m),
        consistent: density.overlaps(&delta),
        delta_from_gamma: delta,
        density,
        min_norm2: m,
    })
}

/// δ = (πγ/4)^(n/2) / Γ(1 + n/2).
pub fn gauss_delta_gamma_real(n: u32, gamma: &Real) -> Real {
    (Real::pi() * gamma / Real::int(4)).pow(&rat(i64::from(n), 2)) / Real::gamma_half(n + 2)
}

/// Enclosure of δ for every γ in the given enclosure (δ is increasing in γ).
pub fn gauss_delta_gamma(n: u32, gamma: &RealEnclosure) -> Result<RealEnclosure> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if gamma.lo <= Rat::from_integer(0.into()) {
        return Err(Error::domain("gamma must be positive"));
    }
    let lo = gauss_delta_gamma_real(n, &Real::rat(gamma.lo.clone())).enclose(&width())?;
    let hi = gauss_delta_gamma_real(n, &Real::rat(gamma.hi.clone())).enclose(&width())?;
    Ok(RealEnclosure::new(lo.lo, hi.hi))
}

/// Which list of Hermite constants to use for n = 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaTable {
    /// γ₃ = 2^(1/8), as cited.
    Cited,
    /// γ₃ = 2^(1/3), the invariant of the fcc form.
    Fcc,
}

/// Known γₙ for n = 2..5 as exact power products.
pub fn known_gamma(n: u32, table: GammaTable) -> Option<PowerProduct> {
    let p = |b: i64, num: i64, den: i64| PowerProduct::power(rat_int(b), rat(num, den));
    match n {
        2 => Some(PowerProduct::power(rat(4, 3), rat(1, 2))),
        3 => Some(match table {
            GammaTable::Cited => p(2, 1, 8),
            GammaTable::Fcc => p(2, 1, 3),
        }),
        4 => Some(p(2, 1, 2)),
        5 => Some(p(8, 1, 5)),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KnownGamma {
    pub value: String,
    pub enclosure: RealEnclosure,
}

#[derive(Clone, Debug, Serialize)]
pub struct HermiteBounds {
    pub n: u32,
    /// (4/3)^((n−1)/2)
    pub hermite: RealEnclosure,
    /// 4 / V_n^(2/n), from Minkowski's first-minimum bound
    pub minkowski: RealEnclosure,
    /// (2/π) Γ(2 + n/2)^(2/n)
    pub blichfeldt: RealEnclosure,
    pub known: Option<KnownGamma>,
    /// Blichfeldt ≤ Minkowski, decided exactly from their ratio (1 + n/2)^(2/n) / 2.
    pub blichfeldt_vs_minkowski: Verdict,
    /// known value against each bound
    pub checks: Vec<Check>,
    pub note: Option<String>,
}

pub fn hermite_bound_real(n: u32) -> Real {
    Real::frac(4, 3).pow(&rat(i64::from(n) - 1, 2))
}

pub fn minkowski_gamma_bound(n: u32) -> Real {
    minkowski_bound_expr(n as usize, &Rat::one())
}

pub fn blichfeldt_bound(n: u32) -> Real {
    Real::int(2) / Real::pi() * Real::gamma_half(n + 4).pow(&rat(2, i64::from(n)))
}

/// Exact comparison of Blichfeldt's and Minkowski's bounds: (n+2)² vs 2^(n+2).
pub fn blichfeldt_vs_minkowski(n: u32) -> Verdict {
    let lhs = (n as u128 + 2).pow(2);
    let rhs = 1u128 << (n + 2);
    match lhs.cmp(&rhs) {
        Ordering::Less => Verdict::Less,
        Ordering::Equal => Verdict::Equal,
        Ordering::Greater => Verdict::Greater,
    }
}

fn check_pp(claim: &str, lhs: &PowerProduct, rel: Relation, rhs: &PowerProduct) -> Check {
    let mut c = Check::new(claim, &lhs.to_real(), rel, &rhs.to_real());
    c.verdict = match lhs.cmp_exact(rhs) {
        Ordering::Less => Verdict::Less,
        Ordering::Equal => Verdict::Equal,
        Ordering::Greater => Verdict::Greater,
    };
    c.holds = match rel {
        Relation::Lt => c.verdict == Verdict::Less,
        Relation::Le => c.verdict != Verdict::Greater,
        Relation::Gt => c.verdict == Verdict::Greater,
        Relation::Ge => c.verdict != Verdict::Less,
    };
    c
}

pub fn hermite_bounds(n: u32) -> Result<HermiteBounds> {
    if !(2..=8).contains(&n) {
        return Err(Error::Dimension(n as usize));
    }
    let herm_pp = PowerProduct::power(rat(4, 3), rat(i64::from(n) - 1, 2));
    let mink = minkowski_gamma_bound(n);
    let blich = blichfeldt_bound(n);
    let mut checks = Vec::new();
    let mut known = None;
    let mut note = None;
    if let Some(k) = known_gamma(n, GammaTable::Cited) {
        let kr = k.to_real();
        checks.push(check_pp(
            "known vs Hermite bound",
            &k,
            Relation::Le,
            &herm_pp,
        ));
        checks.push(Check::new(
            "known vs Minkowski bound",
            &kr,
            Relation::Le,
            &mink,
        ));
        checks.push(Check::new(
            "known vs Blichfeldt bound",
            &kr,
            Relation::Le,
            &blich,
        ));
        if n == 3 {
            let fcc = known_gamma(3, GammaTable::Fcc).expect("n = 3");
            let c = check_pp("cited gamma_3 vs fcc invariant", &k, Relation::Ge, &fcc);
            note =
                Some(format!(
                "cited gamma_3 = {k} is {} the fcc invariant {fcc}; a Hermite constant cannot be \
                 smaller than the invariant of any form, so the cited value is suspect",
                if c.verdict == Verdict::Less { "below" } else { "not below" }
            ));
            checks.push(c);
        }
        known = Some(KnownGamma {
            value: k.to_string(),
            enclosure: kr.enclose(&width())?,
        });
    }
    Ok(HermiteBounds {
        n,
        hermite: herm_pp.to_real().enclose(&width())?,
        minkowski: mink.enclose(&width())?,
        blichfeldt: blich.enclose(&width())?,
        known,
        blichfeldt_vs_minkowski: blichfeldt_vs_minkowski(n),
        checks,
        note,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MordellCheck {
    pub n: u32,
    pub table: GammaTable,
    pub gamma_n: String,
    pub gamma_prev: String,
    /// γₙ ≤ γₙ₋₁^((n−1)/(n−2))
    pub corrected: Check,
    /// γₙ ≤ γₙ₋₁^((n−1)(n−2)), the exponent as displayed
    pub literal: Check,
}

/// Mordell's inequality between consecutive Hermite constants, decided exactly
/// with both exponents.
pub fn mordell_gamma_check(n: u32, table: GammaTable) -> Result<MordellCheck> {
    if n < 3 {
        return Err(Error::domain("n must be at least 3"));
    }
    let (Some(g), Some(p)) = (known_gamma(n, table), known_gamma(n - 1, table)) else {
        return Err(Error::Unsupported(format!(
            "no known values for n = {n} and n − 1"
        )));
    };
    let (a, b) = (i64::from(n) - 1, i64::from(n) - 2);
    let corrected = check_pp(
        "gamma_n vs gamma_(n-1)^((n-1)/(n-2))",
        &g,
        Relation::Le,
        &p.pow(&rat(a, b)),
    );
    let literal = check_pp(
        "gamma_n vs gamma_(n-1)^((n-1)(n-2))",
        &g,
        Relation::Le,
        &p.pow(&rat(a * b, 1)),
    );
    Ok(MordellCheck {
        n,
        table,
        gamma_n: g.to_string(),
        gamma_prev: p.to_string(),
        corrected,
        literal,
    })
}

/// Certified chain min/det^(1/n) ≤ Blichfeldt ≤ Minkowski for one form.
pub fn hermite_chain(q: &QuadraticForm) -> Result<Vec<Check>> {
    let n = q.dim() as u32;
    let (m, _) = form_minimal_vectors(q, &Budget::default())?;
    let scale = Real::rat(q.det()).pow(&rat(1, i64::from(n)));
    let blich = blichfeldt_bound(n) * &scale;
    let mink = minkowski_gamma_bound(n) * &scale;
    let mut second = Check::new("Blichfeldt vs Minkowski", &blich, Relation::Le, &mink);
    second.verdict = blichfeldt_vs_minkowski(n);
    second.holds = second.verdict.le();
    Ok(vec![
        Check::new(
            "min vs Blichfeldt bound",
            &Real::rat(m),
            Relation::Le,
            &blich,
        ),
        second,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rat;

    #[test]
    fn densities() {
        let z2 = QuadraticForm::identity(2);
        let d = packing_density(&z2).unwrap();
        assert!(
            d.lo > parse_rat("0.78539816339").unwrap()
                && d.hi < parse_rat("0.78539816340").unwrap()
        );
        let h = packing_density(&hexagonal()).unwrap();
        assert!(h.lo > parse_rat("0.90689").unwrap() && h.hi < parse_rat("0.90690").unwrap());
        let f = packing_density(&fcc()).unwrap();
        assert!(f.lo > parse_rat("0.74048").unwrap() && f.hi < parse_rat("0.74049").unwrap());
    }

    #[test]
    fn kissing() {
        assert_eq!(kissing_number(&hexagonal()).unwrap(), 6);
        assert_eq!(kissing_number(&fcc()).unwrap(), 12);
        assert_eq!(kissing_number(&QuadraticForm::identity(4)).unwrap(), 8);
        assert_eq!(kissing_number(&QuadraticForm::identity(2)).unwrap(), 4);
    }

    #[test]
    fn reports_are_consistent() {
        for (id, q) in [
            ("hex", hexagonal()),
            ("fcc", fcc()),
            ("z3", QuadraticForm::identity(3)),
        ] {
            let r = packing_report(id, &q).unwrap();
            assert!(r.consistent, "{id}");
            assert!(r.density.hi <= rat(1, 1));
        }
        assert_eq!(
            packing_report("h", &hexagonal()).unwrap().hermite_power,
            rat(4, 3)
        );
        assert_eq!(
            packing_report("f", &fcc()).unwrap().hermite_power,
            rat(2, 1)
        );
    }

    #[test]
    fn delta_gamma() {
        let one = RealEnclosure::exact(rat(1, 1));
        let d = gauss_delta_gamma(1, &one).unwrap();
        assert!(d.contains(&rat(1, 1)));
        let g2 = known_gamma(2, GammaTable::Cited).unwrap().to_real();
        let d2 = gauss_delta_gamma_real(2, &g2).enclose(&width()).unwrap();
        let target = (Real::pi() / (Real::int(2) * Real::int(3).sqrt()))
            .enclose(&width())
            .unwrap();
        assert!(d2.overlaps(&target));
        let g3 = known_gamma(3, GammaTable::Fcc).unwrap().to_real();
        let d3 = gauss_delta_gamma_real(3, &g3).enclose(&width()).unwrap();
        let target = (Real::pi() / (Real::int(3) * Real::int(2).sqrt()))
            .enclose(&width())
            .unwrap();
        assert!(d3.overlaps(&target));
        assert_eq!(
            gauss_delta_gamma(2, &RealEnclosure::exact(rat(0, 1)))
                .unwrap_err()
                .kind(),
            "domain"
        );
    }

    #[test]
    fn bounds() {
        let b2 = hermite_bounds(2).unwrap();
        assert_eq!(b2.blichfeldt_vs_minkowski, Verdict::Equal);
        assert!(b2.checks.iter().all(|c| c.holds));
        // Hermite's bound is attained at n = 2
        assert_eq!(b2.checks[0].verdict, Verdict::Equal);
        for n in [4, 5] {
            assert!(hermite_bounds(n)
                .unwrap()
                .checks
                .iter()
                .all(|c| c.holds && c.verdict.is_decided()));
        }
        let b3 = hermite_bounds(3).unwrap();
        assert!(b3.note.unwrap().contains("below"));
        for n in 3..=8 {
            assert_eq!(
                hermite_bounds(n).unwrap().blichfeldt_vs_minkowski,
                Verdict::Less
            );
        }
        assert_eq!(hermite_bounds(9).unwrap_err().kind(), "dimension");
    }

    #[test]
    fn mordell() {
        let m4 = mordell_gamma_check(4, GammaTable::Fcc).unwrap();
        assert_eq!(m4.corrected.verdict, Verdict::Equal);
        assert!(m4.literal.holds);
        let m3 = mordell_gamma_check(3, GammaTable::Fcc).unwrap();
        assert!(m3.corrected.holds && m3.literal.holds);
        let m5 = mordell_gamma_check(5, GammaTable::Fcc).unwrap();
        assert!(m5.corrected.holds);
        // with the cited γ₃ the corrected inequality fails at n = 4
        let c4 = mordell_gamma_check(4, GammaTable::Cited).unwrap();
        assert!(!c4.corrected.holds);
        assert_eq!(
            mordell_gamma_check(6, GammaTable::Fcc).unwrap_err().kind(),
            "unsupported"
        );
    }

    #[test]
    fn chain() {
        for q in [hexagonal(), fcc(), QuadraticForm::identity(5)] {
            assert!(hermite_chain(&q)
                .unwrap()
                .iter()
                .all(|c| c.holds && c.verdict.is_decided()));
        }
    }
}
