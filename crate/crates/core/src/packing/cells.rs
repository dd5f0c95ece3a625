use num_traits::Signed;
use serde::Serialize;

use crate::body::{ConvexBody, Polygon, QuadraticForm};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{exact_sqrt, rat, rat_int, serde_rat, Rat, Real, RealEnclosure};
use crate::lattice::{
    form_minimal_vectors, points_in_body, reduce_gram_2d, successive_minima, Lattice,
};
use crate::linalg::{self, Matrix};
use crate::theorems::{Check, Relation, TheoremCertificate};

fn width() -> Rat {
    rat(1, 1_000_000_000_000)
}

#[derive(Clone, Debug, Serialize)]
pub struct VoronoiCell {
    /// Vertices in coefficient coordinates of the input basis, counter-clockwise.
    #[serde(serialize_with = "ser_pts")]
    pub coeff_vertices: Vec<[Rat; 2]>,
    /// Vertices in ambient coordinates, when the lattice has a rational basis.
    #[serde(
        serialize_with = "ser_opt_pts",
        skip_serializing_if = "Option::is_none"
    )]
    pub vertices: Option<Vec<[Rat; 2]>>,
    /// Lattice vectors whose bisectors bound the cell (coefficients).
    pub relevant: Vec<[i64; 2]>,
    /// Area in coefficient coordinates; 1 for a fundamental domain.
    #[serde(with = "serde_rat")]
    pub coeff_area: Rat,
    /// Area in the metric of the lattice, √det(Gram) · coeff_area.
    pub area: RealEnclosure,
    /// area = det(Λ), exactly.
    pub area_is_det: bool,
}

fn ser_pts<S: serde::Serializer>(p: &[[Rat; 2]], s: S) -> std::result::Result<S::Ok, S::Error> {
    let m: Vec<Vec<Rat>> = p.iter().map(|v| v.to_vec()).collect();
    serde_rat::matrix::serialize(&m, s)
}

fn ser_opt_pts<S: serde::Serializer>(
    p: &Option<Vec<[Rat; 2]>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => ser_pts(p, s),
        None => s.serialize_none(),
    }
}

/// Keeps the part of a convex polygon with n·x ≤ c.
fn clip(poly: &[[Rat; 2]], n: [Rat; 2], c: &Rat) -> Vec<[Rat; 2]> {
    let side = |p: &[Rat; 2]| &n[0] * &p[0] + &n[1] * &p[1] - c;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let (sp, sq) = (side(p), side(q));
        if !sp.is_positive() {
            out.push(p.clone());
        }
        if (sp.is_positive() && sq.is_negative()) || (sp.is_negative() && sq.is_positive()) {
            let t = &sp / (&sp - &sq);
            out.push([&p[0] + &t * (&q[0] - &p[0]), &p[1] + &t * (&q[1] - &p[1])]);
        }
    }
    out
}

/// Cell of the origin for the metric xᵀGx on ℤ², in coefficient coordinates.
fn cell_of_gram(g: &Matrix) -> Result<(Vec<[Rat; 2]>, Vec<[i64; 2]>)> {
    if g.len() != 2 {
        return Err(Error::Dimension(g.len()));
    }
    let (gr, u) = reduce_gram_2d(g);
    // in reduced coordinates the cell sits well inside [−2, 2]²
    let b = rat_int(2);
    let mut poly = vec![
        [-&b, -&b],
        [b.clone(), -&b],
        [b.clone(), b.clone()],
        [-&b, b.clone()],
    ];
    let mut relevant = Vec::new();
    for w in [
        [1i64, 0],
        [0, 1],
        [1, 1],
        [1, -1],
        [-1, 0],
        [0, -1],
        [-1, -1],
        [-1, 1],
    ] {
        let wr = [rat_int(w[0]), rat_int(w[1])];
        // 2 xᵀG w ≤ wᵀG w
        let gw = [
            &gr[0][0] * &wr[0] + &gr[0][1] * &wr[1],
            &gr[1][0] * &wr[0] + &gr[1][1] * &wr[1],
        ];
        let c = &gw[0] * &wr[0] + &gw[1] * &wr[1];
        let before = poly.clone();
        poly = clip(&poly, [rat_int(2) * &gw[0], rat_int(2) * &gw[1]], &c);
        if poly != before {
            relevant.push(w);
        }
    }
    let pg = Polygon::new(poly)?.without_collinear();
    let to_input = |x: &[Rat; 2]| -> [Rat; 2] {
        [
            rat_int(u[0][0]) * &x[0] + rat_int(u[0][1]) * &x[1],
            rat_int(u[1][0]) * &x[0] + rat_int(u[1][1]) * &x[1],
        ]
    };
    let verts: Vec<[Rat; 2]> = pg.vertices.iter().map(to_input).collect();
    let relevant = relevant
        .into_iter()
        .map(|w| {
            [
                u[0][0] * w[0] + u[0][1] * w[1],
                u[1][0] * w[0] + u[1][1] * w[1],
            ]
        })
        .collect();
    // U is unimodular, so orientation may flip; Polygon::new restores CCW
    let verts = Polygon::new(verts)?.vertices;
    Ok((verts, relevant))
}

/// Voronoi cell of the origin for a planar lattice with a rational basis.
pub fn voronoi_cell_2d(l: &Lattice) -> Result<VoronoiCell> {
    if l.dim() != 2 {
        return Err(Error::Dimension(l.dim()));
    }
    let (cv, relevant) = cell_of_gram(l.gram())?;
    let amb: Vec<[Rat; 2]> = cv
        .iter()
        .map(|v| {
            let y = linalg::mul_vec(l.basis(), v.as_ref());
            [y[0].clone(), y[1].clone()]
        })
        .collect();
    let amb = Polygon::new(amb)?;
    let coeff_area = Polygon::new(cv.clone())?.area();
    let area = amb.area();
    Ok(VoronoiCell {
        coeff_vertices: cv,
        vertices: Some(amb.vertices),
        relevant,
        coeff_area,
        area_is_det: &area == l.det_abs(),
        area: RealEnclosure::exact(area),
    })
}

/// Voronoi cell for a planar lattice given only by its Gram matrix.
pub fn voronoi_cell_form_2d(q: &QuadraticForm) -> Result<VoronoiCell> {
    let (cv, relevant) = cell_of_gram(q.gram())?;
    let coeff_area = Polygon::new(cv.clone())?.area();
    let area = Real::rat(coeff_area.clone()) * Real::rat(q.det()).sqrt();
    Ok(VoronoiCell {
        coeff_vertices: cv,
        vertices: None,
        relevant,
        area_is_det: coeff_area == rat(1, 1),
        coeff_area,
        area: area.enclose(&width())?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalCheck {
    /// Δ(C), built in for the supported body classes.
    pub delta: RealEnclosure,
    pub lambda: Vec<RealEnclosure>,
    /// λ₁λ₂Δ(C) ≤ det Λ
    pub check: Check,
}

/// Critical determinant of a planar body: ellipses from the hexagonal lattice
/// (√3/2 for the unit disc), parallelograms from the square (h₁h₂, λ₁λ₂/|det A|).
pub fn critical_determinant_2d(c: &ConvexBody) -> Result<Real> {
    if c.dim() != 2 {
        return Err(Error::Dimension(c.dim()));
    }
    match c {
        ConvexBody::Ellipsoid { form, level } => Ok(Real::int(3).sqrt() / Real::int(2)
            * Real::rat(level.clone())
            / Real::rat(form.det()).sqrt()),
        ConvexBody::AxisBox { half } => Ok(Real::rat(&half[0] * &half[1])),
        ConvexBody::FormsBox { a, lambda } => {
            Ok(Real::rat(&lambda[0] * &lambda[1] / linalg::det(a).abs()))
        }
        ConvexBody::SymPolytope { .. } => Err(Error::Unsupported(
            "critical determinant of a general polygon".into(),
        )),
    }
}

/// Certifies λ₁λ₂·Δ(C) ≤ det Λ with exact successive minima.
pub fn critical_det_check_2d(c: &ConvexBody, l: &Lattice) -> Result<CriticalCheck> {
    if l.dim() != 2 {
        return Err(Error::Dimension(l.dim()));
    }
    let delta = critical_determinant_2d(c)?;
    let sm = successive_minima(l, c)?;
    let prod_sq = &sm.lambda_sq[0] * &sm.lambda_sq[1];
    let prod = match exact_sqrt(&prod_sq) {
        Some(p) => Real::rat(p),
        None => Real::rat(prod_sq).sqrt(),
    };
    let lhs = &prod * &delta;
    let check = Check::new(
        "lambda_1 lambda_2 Delta(C) vs det",
        &lhs,
        Relation::Le,
        &Real::rat(l.det_abs().clone()),
    );
    Ok(CriticalCheck {
        delta: delta.enclose(&width())?,
        lambda: sm.lambda,
        check,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HlawkaReport {
    pub det: RealEnclosure,
    /// vol(S) / (2ζ(n))
    pub bound: RealEnclosure,
    /// bound − det
    pub gap: RealEnclosure,
    /// det ≤ bound, certified
    pub holds: bool,
    pub certificate: TheoremCertificate,
}

fn hlawka_report(det: Real, vol: Real, n: u32) -> Result<HlawkaReport> {
    let bound = vol / (Real::int(2) * Real::zeta(n));
    let mut certificate = TheoremCertificate::new("hlawka-minkowski-witness");
    let check = Check::new(
        "det(witness) vs vol/(2 zeta(n))",
        &det,
        Relation::Le,
        &bound,
    );
    let holds = check.holds;
    certificate.verification.push(check);
    let gap = (&bound - &det).quick()?;
    Ok(HlawkaReport {
        det: det.enclose(&width())?,
        bound: bound.quick()?,
        gap,
        holds,
        certificate,
    })
}

/// Compares an admissible witness lattice for S with the bound vol(S)/(2ζ(n)).
pub fn hlawka_witness_check(s: &ConvexBody, l: &Lattice) -> Result<HlawkaReport> {
    if s.dim() != l.dim() {
        return Err(Error::Dimension(s.dim()));
    }
    // a lattice point of the open body has gauge < 1; work in coefficient space
    let pulled = s.linear_preimage(l.basis())?;
    let budget = Budget::default();
    let mut meter = budget.meter();
    let inside = points_in_body(&pulled, &rat(1, 1), &mut meter)?;
    if let Some((_, p)) = inside.iter().find(|(g, _)| g < &rat(1, 1)) {
        return Err(Error::Inadmissible(format!(
            "lattice point {p:?} lies inside the body"
        )));
    }
    let mut r = hlawka_report(Real::rat(l.det_abs().clone()), s.volume()?, l.dim() as u32)?;
    r.certificate.witnesses = l.vectors();
    Ok(r)
}

/// Same check for the ball xᵀx ≤ level and a lattice known by its Gram matrix.
pub fn hlawka_witness_check_form(q: &QuadraticForm, level: &Rat) -> Result<HlawkaReport> {
    if !level.is_positive() {
        return Err(Error::domain("level must be positive"));
    }
    let (m, _) = form_minimal_vectors(q, &Budget::default())?;
    if &m < level {
        return Err(Error::Inadmissible(format!(
            "a lattice vector has norm {m} below {level}"
        )));
    }
    let n = q.dim() as u32;
    let vol = Real::unit_ball_volume(n) * Real::rat(level.clone()).pow(&rat(i64::from(n), 2));
    hlawka_report(Real::rat(q.det()).sqrt(), vol, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Verdict;
    use crate::packing::hexagonal;
    use num_traits::Zero;

    #[test]
    fn voronoi_square_and_even_sum() {
        let z2 = Lattice::integer(2).unwrap();
        let c = voronoi_cell_2d(&z2).unwrap();
        assert_eq!(c.vertices.as_ref().unwrap().len(), 4);
        assert!(c.area_is_det);
        assert!(c
            .vertices
            .unwrap()
            .iter()
            .all(|v| v[0].abs() == rat(1, 2) && v[1].abs() == rat(1, 2)));
        let l = Lattice::from_int_vectors(&[&[2, 0], &[1, 1]]).unwrap();
        let c = voronoi_cell_2d(&l).unwrap();
        assert_eq!(c.area, RealEnclosure::exact(rat(2, 1)));
        assert!(c.area_is_det);
        let skew = Lattice::from_int_vectors(&[&[2, 0], &[1, 2]]).unwrap();
        let c = voronoi_cell_2d(&skew).unwrap();
        assert!(c.area_is_det && c.vertices.unwrap().len() == 6);
    }

    #[test]
    fn voronoi_hexagonal() {
        let c = voronoi_cell_form_2d(&hexagonal()).unwrap();
        assert_eq!(c.coeff_vertices.len(), 6);
        assert_eq!(c.relevant.len(), 6);
        assert!(c.area_is_det);
        let target = (Real::int(3).sqrt() / Real::int(2))
            .enclose(&width())
            .unwrap();
        assert!(c.area.overlaps(&target));
    }

    #[test]
    fn critical() {
        let z2 = Lattice::integer(2).unwrap();
        let disc = ConvexBody::ball(2, rat(1, 1)).unwrap();
        let r = critical_det_check_2d(&disc, &z2).unwrap();
        assert!(r.check.holds && r.check.verdict == Verdict::Less);
        let sq = ConvexBody::cube(2, rat(1, 1)).unwrap();
        let r = critical_det_check_2d(&sq, &z2).unwrap();
        assert_eq!(r.check.verdict, Verdict::Equal);
        let poly =
            ConvexBody::sym_polygon(vec![[rat(1, 1), rat(0, 1)], [rat(0, 1), rat(1, 1)]]).unwrap();
        assert_eq!(
            critical_det_check_2d(&poly, &z2).unwrap_err().kind(),
            "unsupported"
        );
    }

    /// Oracle for the built-in critical values: over reduced planar Gram matrices on a
    /// rational grid, the least determinant with minimum ≥ 1 is 3/4 (disc), and over
    /// small rational bases admissible for the open square the least |det| is 1.
    #[test]
    fn critical_values_oracle() {
        let mut best = rat(100, 1);
        for an in 12..=24 {
            for cn in an..=24 {
                for bn in 0..=an / 2 {
                    let (a, b, c) = (rat(an, 12), rat(bn, 12), rat(cn, 12));
                    // reduced: a ≤ c, 0 ≤ 2b ≤ a, so the minimum is a
                    let det = &a * &c - &b * &b;
                    if a >= rat(1, 1) && det < best {
                        best = det;
                    }
                }
            }
        }
        assert_eq!(best, rat(3, 4));
        let mut best = rat(100, 1);
        let vals: Vec<Rat> = (-4..=4).map(|k| rat(k, 2)).collect();
        for x1 in &vals {
            for y1 in &vals {
                for x2 in &vals {
                    for y2 in &vals {
                        let d = (x1 * y2 - x2 * y1).abs();
                        if d.is_zero() || d >= best {
                            continue;
                        }
                        let l = Lattice::from_vectors(vec![
                            vec![x1.clone(), y1.clone()],
                            vec![x2.clone(), y2.clone()],
                        ])
                        .unwrap();
                        let sq = ConvexBody::cube(2, rat(1, 1))
                            .unwrap()
                            .linear_preimage(l.basis())
                            .unwrap();
                        let b = Budget::default();
                        let pts = points_in_body(&sq, &rat(1, 1), &mut b.meter()).unwrap();
                        if pts.iter().all(|(g, _)| g >= &rat(1, 1)) {
                            best = d;
                        }
                    }
                }
            }
        }
        assert_eq!(best, rat(1, 1));
    }

    #[test]
    fn hlawka() {
        let r = hlawka_witness_check_form(&hexagonal(), &rat(1, 1)).unwrap();
        assert!(r.holds);
        assert!(
            r.det.lo > rat(866, 1000) && r.bound.hi < rat(955, 1000) && r.bound.lo > rat(954, 1000)
        );
        let sq = ConvexBody::cube(2, rat(1, 1)).unwrap();
        let l = Lattice::from_int_vectors(&[&[1, 1], &[1, -1]]).unwrap();
        let r = hlawka_witness_check(&sq, &l).unwrap();
        assert!(!r.holds);
        let disc = ConvexBody::ball(2, rat(9, 4)).unwrap();
        let z2 = Lattice::integer(2).unwrap();
        assert_eq!(
            hlawka_witness_check(&disc, &z2).unwrap_err().kind(),
            "inadmissible"
        );
    }
}
