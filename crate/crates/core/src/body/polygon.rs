use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Membership;
use crate::error::{Error, Result};
use crate::exact::{rat, serde_rat, Rat, Real, RealEnclosure};

fn cross(o: &[Rat; 2], a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Signed shoelace area.
pub(crate) fn shoelace(v: &[[Rat; 2]]) -> Rat {
    let k = v.len();
    let twice = (0..k).fold(Rat::zero(), |acc, i| {
        let (p, q) = (&v[i], &v[(i + 1) % k]);
        acc + &p[0] * &q[1] - &q[0] * &p[1]
    });
    twice / Rat::from_integer(2.into())
}

/// Polar-angle order on direction vectors, starting at angle 0.
fn angle_cmp(a: &[Rat; 2], b: &[Rat; 2]) -> Ordering {
    let upper = |d: &[Rat; 2]| d[1].is_positive() || (d[1].is_zero() && d[0].is_positive());
    match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let c = &a[0] * &b[1] - &a[1] * &b[0];
            // c > 0: b is counter-clockwise of a
            Rat::zero().cmp(&c)
        }
    }
}

/// Planar polygon with rational vertices, stored counter-clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<[Rat; 2]>,
}

impl Polygon {
    /// Reorients clockwise input; rejects zero area.
    pub fn new(mut vertices: Vec<[Rat; 2]>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Degenerate("polygon needs 3 vertices".into()));
        }
        let a = shoelace(&vertices);
        if a.is_zero() {
            return Err(Error::Degenerate("polygon has zero area".into()));
        }
        if a.is_negative() {
            vertices.reverse();
        }
        Ok(Polygon { vertices })
    }

    pub fn from_ints(v: &[[i64; 2]]) -> Result<Self> {
        Self::new(
            v.iter()
                .map(|&[x, y]| [Rat::from_integer(x.into()), Rat::from_integer(y.into())])
                .collect(),
        )
    }

    pub fn area(&self) -> Rat {
        shoelace(&self.vertices)
    }

    fn edges(&self) -> Vec<[Rat; 2]> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| {
                let (p, q) = (&self.vertices[i], &self.vertices[(i + 1) % k]);
                [&q[0] - &p[0], &q[1] - &p[1]]
            })
            .collect()
    }

    /// Convex and simple: no right turns and edge directions sweep one full turn.
    pub fn is_convex(&self) -> bool {
        let k = self.vertices.len();
        let no_right_turn = (0..k).all(|i| {
            !cross(
                &self.vertices[i],
                &self.vertices[(i + 1) % k],
                &self.vertices[(i + 2) % k],
            )
            .is_negative()
        });
        if !no_right_turn {
            return false;
        }
        let mut e = self.edges();
        e.rotate_left(lowest(&self.vertices));
        e.retain(|d| !(d[0].is_zero() && d[1].is_zero()));
        e.windows(2)
            .all(|w| angle_cmp(&w[0], &w[1]) != Ordering::Greater)
    }

    pub(crate) fn require_convex(&self) -> Result<()> {
        if self.is_convex() {
            Ok(())
        } else {
            Err(Error::NonConvex("polygon is not convex".into()))
        }
    }

    /// Drops vertices lying on the segment between their neighbours.
    pub fn without_collinear(&self) -> Polygon {
        let mut v = self.vertices.clone();
        let mut changed = true;
        while changed && v.len() > 3 {
            changed = false;
            let k = v.len();
            for i in 0..k {
                if cross(&v[(i + k - 1) % k], &v[i], &v[(i + 1) % k]).is_zero() {
                    v.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        Polygon { vertices: v }
    }

    pub fn scale(&self, l: &Rat) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|[x, y]| [x * l, y * l]).collect(),
        }
    }
}

/// Index of the vertex with least y, then least x.
fn lowest(v: &[[Rat; 2]]) -> usize {
    (0..v.len())
        .min_by(|&i, &j| v[i][1].cmp(&v[j][1]).then(v[i][0].cmp(&v[j][0])))
        .unwrap_or(0)
}

/// P + Q for convex polygons by merging edge sequences in angular order.
pub fn minkowski_sum_2d(p: &Polygon, q: &Polygon) -> Result<Polygon> {
    p.require_convex()?;
    q.require_convex()?;
    let p = p.without_collinear();
    let q = q.without_collinear();
    let rot = |poly: &Polygon| {
        let mut v = poly.vertices.clone();
        let start = lowest(&v);
        v.rotate_left(start);
        Polygon { vertices: v }
    };
    let (p, q) = (rot(&p), rot(&q));
    let (ep, eq) = (p.edges(), q.edges());
    let mut cur = [
        &p.vertices[0][0] + &q.vertices[0][0],
        &p.vertices[0][1] + &q.vertices[0][1],
    ];
    let mut out = Vec::with_capacity(ep.len() + eq.len());
    let (mut i, mut j) = (0, 0);
    while i < ep.len() || j < eq.len() {
        out.push(cur.clone());
        let take_p =
            j == eq.len() || (i < ep.len() && angle_cmp(&ep[i], &eq[j]) != Ordering::Greater);
        let d = if take_p {
            i += 1;
            &ep[i - 1]
        } else {
            j += 1;
            &eq[j - 1]
        };
        cur = [&cur[0] + &d[0], &cur[1] + &d[1]];
    }
    Ok(Polygon::new(out)?.without_collinear())
}

#[derive(Clone, Debug, Serialize)]
pub struct BrunnMinkowski {
    #[serde(with = "serde_rat")]
    pub lambda: Rat,
    #[serde(with = "serde_rat")]
    pub area_p: Rat,
    #[serde(with = "serde_rat")]
    pub area_q: Rat,
    #[serde(with = "serde_rat")]
    pub area_sum: Rat,
    /// √area(λP + (1−λ)Q)
    pub lhs: RealEnclosure,
    /// λ√area(P) + (1−λ)√area(Q)
    pub rhs: RealEnclosure,
    pub holds: bool,
    pub equality: bool,
}

/// Planar Brunn–Minkowski: √area(λP+(1−λ)Q) ≥ λ√area(P) + (1−λ)√area(Q).
pub fn brunn_minkowski_check_2d(p: &Polygon, q: &Polygon, lambda: &Rat) -> Result<BrunnMinkowski> {
    if lambda.is_negative() || lambda > &Rat::one() {
        return Err(Error::domain("lambda must lie in [0, 1]"));
    }
    p.require_convex()?;
    q.require_convex()?;
    let mu = Rat::one() - lambda;
    let sum = if lambda.is_zero() {
        q.clone()
    } else if mu.is_zero() {
        p.clone()
    } else {
        minkowski_sum_2d(&p.scale(lambda), &q.scale(&mu))?
    };
    let (a, b, s) = (p.area(), q.area(), sum.area());
    // lhs² − rhs² = L − 2λμ√(AB) with L = S − λ²A − μ²B
    let l = &s - lambda * lambda * &a - &mu * &mu * &b;
    let cross_sq = Rat::from_integer(4.into()) * lambda * lambda * &mu * &mu * &a * &b;
    let l_sq = &l * &l;
    let holds = !l.is_negative() && l_sq >= cross_sq;
    let equality = !l.is_negative() && l_sq == cross_sq;
    let w = rat(1, 1_000_000_000_000);
    let lhs = Real::rat(s.clone()).sqrt().enclose(&w)?;
    let rhs = (Real::rat(lambda.clone()) * Real::rat(a.clone()).sqrt()
        + Real::rat(mu) * Real::rat(b.clone()).sqrt())
    .enclose(&w)?;
    Ok(BrunnMinkowski {
        lambda: lambda.clone(),
        area_p: a,
        area_q: b,
        area_sum: s,
        lhs,
        rhs,
        holds,
        equality,
    })
}

/// Simple polygon with integer vertices, stored counter-clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticePolygonSpec", into = "LatticePolygonSpec")]
pub struct LatticePolygon {
    vertices: Vec<[i64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct LatticePolygonSpec {
    vertices: Vec<[i64; 2]>,
}

impl TryFrom<LatticePolygonSpec> for LatticePolygon {
    type Error = Error;
    fn try_from(s: LatticePolygonSpec) -> Result<Self> {
        LatticePolygon::new(s.vertices)
    }
}

impl From<LatticePolygon> for LatticePolygonSpec {
    fn from(p: LatticePolygon) -> Self {
        LatticePolygonSpec {
            vertices: p.vertices,
        }
    }
}

fn cross_i(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i128 {
    let (ax, ay) = (i128::from(a[0] - o[0]), i128::from(a[1] - o[1]));
    let (bx, by) = (i128::from(b[0] - o[0]), i128::from(b[1] - o[1]));
    ax * by - ay * bx
}

fn on_segment(p: [i64; 2], a: [i64; 2], b: [i64; 2]) -> bool {
    cross_i(a, b, p) == 0
        && p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

fn segments_intersect(a: [i64; 2], b: [i64; 2], c: [i64; 2], d: [i64; 2]) -> bool {
    let d1 = cross_i(c, d, a).signum();
    let d2 = cross_i(c, d, b).signum();
    let d3 = cross_i(a, b, c).signum();
    let d4 = cross_i(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

impl LatticePolygon {
    /// Validates simplicity and nonzero area; reorients to counter-clockwise.
    pub fn new(vertices: Vec<[i64; 2]>) -> Result<Self> {
        const LIMIT: i64 = 1 << 40;
        if vertices.len() < 3 {
            return Err(Error::Degenerate("polygon needs 3 vertices".into()));
        }
        if vertices.iter().flatten().any(|c| c.abs() > LIMIT) {
            return Err(Error::domain("vertex coordinates exceed 2^40"));
        }
        let k = vertices.len();
        for i in 0..k {
            for j in i + 1..k {
                let adjacent = j == i + 1 || (i == 0 && j == k - 1);
                let (a, b) = (vertices[i], vertices[(i + 1) % k]);
                let (c, d) = (vertices[j], vertices[(j + 1) % k]);
                if a == b {
                    return Err(Error::Degenerate("repeated vertex".into()));
                }
                if adjacent {
                    // neighbours share exactly one endpoint; reject folding back
                    let shared = if j == i + 1 { b } else { a };
                    let (other1, other2) = if j == i + 1 { (a, d) } else { (b, c) };
                    if cross_i(shared, other1, other2) == 0 && on_segment(other2, shared, other1)
                        || cross_i(shared, other1, other2) == 0
                            && on_segment(other1, shared, other2)
                    {
                        return Err(Error::Degenerate("polygon folds back on itself".into()));
                    }
                } else if segments_intersect(a, b, c, d) {
                    return Err(Error::Degenerate("polygon is not simple".into()));
                }
            }
        }
        let mut p = LatticePolygon { vertices };
        match p.twice_area_signed().cmp(&0) {
            Ordering::Equal => return Err(Error::Degenerate("polygon has zero area".into())),
            Ordering::Less => p.vertices.reverse(),
            Ordering::Greater => {}
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[[i64; 2]] {
        &self.vertices
    }

    fn twice_area_signed(&self) -> i128 {
        let k = self.vertices.len();
        (0..k)
            .map(|i| {
                let (p, q) = (self.vertices[i], self.vertices[(i + 1) % k]);
                i128::from(p[0]) * i128::from(q[1]) - i128::from(q[0]) * i128::from(p[1])
            })
            .sum()
    }

    pub fn twice_area(&self) -> i128 {
        self.twice_area_signed().abs()
    }

    pub fn area(&self) -> Rat {
        Rat::new(self.twice_area().into(), 2.into())
    }

    /// Lattice points on the boundary: Σ gcd(|Δx|, |Δy|) over edges.
    pub fn boundary_count(&self) -> u64 {
        let k = self.vertices.len();
        (0..k)
            .map(|i| {
                let (p, q) = (self.vertices[i], self.vertices[(i + 1) % k]);
                let (dx, dy) = ((q[0] - p[0]).unsigned_abs(), (q[1] - p[1]).unsigned_abs());
                dx.gcd(&dy)
            })
            .sum()
    }

    pub fn is_convex(&self) -> bool {
        let k = self.vertices.len();
        (0..k).all(|i| {
            cross_i(
                self.vertices[i],
                self.vertices[(i + 1) % k],
                self.vertices[(i + 2) % k],
            ) >= 0
        })
    }

    /// Exact point classification (crossing number with half-open edge rule).
    pub fn classify(&self, p: [i64; 2]) -> Membership {
        let k = self.vertices.len();
        let mut inside = false;
        for i in 0..k {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            if on_segment(p, a, b) {
                return Membership::Boundary;
            }
            if (a[1] > p[1]) != (b[1] > p[1]) {
                // x-coordinate of the crossing compared with p[0], sign-corrected
                let c = cross_i(a, b, p);
                let up = b[1] > a[1];
                if (c > 0) == up {
                    inside = !inside;
                }
            }
        }
        if inside {
            Membership::Inside
        } else {
            Membership::Outside
        }
    }

    /// Inclusive coordinate bounds (min, max).
    pub fn bounds(&self) -> ([i64; 2], [i64; 2]) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            for c in 0..2 {
                lo[c] = lo[c].min(v[c]);
                hi[c] = hi[c].max(v[c]);
            }
        }
        (lo, hi)
    }

    pub fn perimeter(&self) -> Real {
        let k = self.vertices.len();
        (0..k).fold(Real::int(0), |acc, i| {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % k]);
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            acc + Real::int(dx * dx + dy * dy).sqrt()
        })
    }

    pub fn to_polygon(&self) -> Polygon {
        Polygon::from_ints(&self.vertices).expect("validated lattice polygon")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn poly(v: &[[i64; 2]]) -> Polygon {
        Polygon::from_ints(v).unwrap()
    }

    #[test]
    fn squares_add() {
        let sq = poly(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
        let s = minkowski_sum_2d(&sq, &sq).unwrap();
        assert_eq!(s, poly(&[[0, 0], [2, 0], [2, 2], [0, 2]]));
    }

    #[test]
    fn triangle_doubles() {
        let t = poly(&[[0, 0], [1, 0], [0, 1]]);
        let s = minkowski_sum_2d(&t, &t).unwrap();
        assert_eq!(s.area(), rat_int(4) * t.area());
        assert_eq!(s.vertices.len(), 3);
    }

    #[test]
    fn degenerate_and_reflex_rejected() {
        assert_eq!(
            Polygon::from_ints(&[[0, 0], [1, 0], [2, 0]])
                .unwrap_err()
                .kind(),
            "degenerate"
        );
        let dart = poly(&[[0, 0], [2, 1], [0, 2], [1, 1]]);
        let sq = poly(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
        assert_eq!(
            minkowski_sum_2d(&dart, &sq).unwrap_err().kind(),
            "non-convex"
        );
    }

    #[test]
    fn pentagram_is_not_convex() {
        let star = poly(&[[0, 10], [6, -8], [-9, 3], [9, 3], [-6, -8]]);
        assert!(!star.is_convex());
    }

    #[test]
    fn brunn_minkowski_examples() {
        let sq = poly(&[[0, 0], [1, 0], [1, 1], [0, 1]]);
        let tri = poly(&[[0, 0], [2, 0], [0, 2]]);
        let bm = brunn_minkowski_check_2d(&sq, &sq, &rat(1, 3)).unwrap();
        assert!(bm.holds && bm.equality);
        let bm = brunn_minkowski_check_2d(&sq, &tri, &Rat::zero()).unwrap();
        assert!(bm.holds && bm.equality);
        let bm = brunn_minkowski_check_2d(&sq, &tri, &rat(1, 2)).unwrap();
        assert!(bm.holds && !bm.equality);
        assert!(bm.lhs.lo > bm.rhs.hi);
    }

    #[test]
    fn lattice_polygon_basics() {
        let sq = LatticePolygon::new(vec![[0, 0], [0, 1], [1, 1], [1, 0]]).unwrap();
        assert_eq!(sq.vertices()[1], [1, 1]);
        assert_eq!(sq.boundary_count(), 4);
        assert_eq!(sq.area(), rat_int(1));
        assert_eq!(sq.classify([0, 0]), Membership::Boundary);
        assert_eq!(sq.classify([2, 0]), Membership::Outside);
        let t = LatticePolygon::new(vec![[0, 0], [4, 0], [0, 4]]).unwrap();
        assert_eq!(t.classify([1, 1]), Membership::Inside);
        assert_eq!(t.classify([2, 2]), Membership::Boundary);
        assert_eq!(t.classify([3, 3]), Membership::Outside);
        let bow = LatticePolygon::new(vec![[0, 0], [2, 2], [2, 0], [0, 2]]);
        assert_eq!(bow.unwrap_err().kind(), "degenerate");
    }
}
