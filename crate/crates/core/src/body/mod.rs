//! Symmetric convex bodies, positive definite quadratic forms and planar polygons.

mod polygon;

pub use polygon::{
    brunn_minkowski_check_2d, minkowski_sum_2d, BrunnMinkowski, LatticePolygon, Polygon,
};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{isqrt_ceil, serde_rat, Int, Rat, Real};
use crate::linalg::{self, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl Membership {
    /// Inside or on the boundary.
    pub fn in_closure(self) -> bool {
        self != Membership::Outside
    }

    fn from_gauge_sq(g: &Rat) -> Membership {
        match g.cmp(&Rat::one()) {
            std::cmp::Ordering::Less => Membership::Inside,
            std::cmp::Ordering::Equal => Membership::Boundary,
            std::cmp::Ordering::Greater => Membership::Outside,
        }
    }
}

/// Positive definite form xᵀGx.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GramSpec", into = "GramSpec")]
pub struct QuadraticForm {
    gram: Matrix,
}

#[derive(Serialize, Deserialize)]
struct GramSpec {
    #[serde(with = "serde_rat::matrix")]
    gram: Matrix,
}

impl TryFrom<GramSpec> for QuadraticForm {
    type Error = Error;
    fn try_from(s: GramSpec) -> Result<Self> {
        QuadraticForm::new(s.gram)
    }
}

impl From<QuadraticForm> for GramSpec {
    fn from(q: QuadraticForm) -> Self {
        GramSpec { gram: q.gram }
    }
}

impl QuadraticForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if gram.is_empty() || !linalg::is_square(&gram) {
            return Err(Error::domain("gram matrix must be square and non-empty"));
        }
        if !linalg::is_symmetric(&gram) {
            return Err(Error::domain("gram matrix must be symmetric"));
        }
        if !linalg::is_positive_definite(&gram) {
            return Err(Error::domain("form is not positive definite"));
        }
        Ok(QuadraticForm { gram })
    }

    pub fn identity(n: usize) -> Self {
        QuadraticForm {
            gram: linalg::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// D = det(gram).
    pub fn det(&self) -> Rat {
        linalg::det(&self.gram)
    }

    pub fn eval_int(&self, x: &[i64]) -> Rat {
        linalg::quad_form_int(&self.gram, x)
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        linalg::quad_form(&self.gram, x)
    }
}

/// Symmetric convex body about the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexBody {
    /// |xᵢ| ≤ hᵢ
    AxisBox { half: Vec<Rat> },
    /// |Yⱼ(x)| ≤ λⱼ with Yⱼ(x) = Σₖ aⱼₖ xₖ
    FormsBox { a: Matrix, lambda: Vec<Rat> },
    /// Q(x) ≤ level
    Ellipsoid { form: QuadraticForm, level: Rat },
    /// Planar, vertices counter-clockwise and closed under negation.
    SymPolytope { vertices: Vec<[Rat; 2]> },
}

impl ConvexBody {
    pub fn axis_box(half: Vec<Rat>) -> Result<Self> {
        if half.is_empty() || half.iter().any(|h| !h.is_positive()) {
            return Err(Error::domain("box half-widths must be positive"));
        }
        Ok(ConvexBody::AxisBox { half })
    }

    pub fn cube(n: usize, h: Rat) -> Result<Self> {
        Self::axis_box(vec![h; n])
    }

    pub fn forms_box(a: Matrix, lambda: Vec<Rat>) -> Result<Self> {
        if a.is_empty() || !linalg::is_square(&a) || a.len() != lambda.len() {
            return Err(Error::domain("forms box needs an n×n matrix and n bounds"));
        }
        if lambda.iter().any(|l| !l.is_positive()) {
            return Err(Error::domain("forms box bounds must be positive"));
        }
        Ok(ConvexBody::FormsBox { a, lambda })
    }

    pub fn ellipsoid(form: QuadraticForm, level: Rat) -> Result<Self> {
        if !level.is_positive() {
            return Err(Error::domain("ellipsoid level must be positive"));
        }
        Ok(ConvexBody::Ellipsoid { form, level })
    }

    /// Euclidean ball of squared radius r2.
    pub fn ball(n: usize, r2: Rat) -> Result<Self> {
        Self::ellipsoid(QuadraticForm::identity(n), r2)
    }

    /// Accepts either the full symmetric vertex list or one half of it
    /// (the negatives are then appended).
    pub fn sym_polygon(vertices: Vec<[Rat; 2]>) -> Result<Self> {
        let neg = |v: &[Rat; 2]| [-v[0].clone(), -v[1].clone()];
        let closed = vertices.len().is_multiple_of(2) && {
            let h = vertices.len() / 2;
            (0..h).all(|i| vertices[i + h] == neg(&vertices[i]))
        };
        let full = if closed {
            vertices
        } else {
            let mut v = vertices.clone();
            v.extend(vertices.iter().map(neg));
            v
        };
        let poly = Polygon::new(full)?;
        poly.require_convex()?;
        if poly.vertices.len() < 4 {
            return Err(Error::Degenerate(
                "symmetric polygon needs 4 vertices".into(),
            ));
        }
        Ok(ConvexBody::SymPolytope {
            vertices: poly.vertices,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::AxisBox { half } => half.len(),
            ConvexBody::FormsBox { lambda, .. } => lambda.len(),
            ConvexBody::Ellipsoid { form, .. } => form.dim(),
            ConvexBody::SymPolytope { .. } => 2,
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            ConvexBody::FormsBox { a, .. } => !linalg::det(a).is_zero(),
            _ => true,
        }
    }

    /// Square of the gauge (Minkowski functional): the least μ² with x ∈ μC.
    /// Rational for every variant.
    pub fn gauge_sq(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.dim(), "dimension mismatch");
        let max_ratio = |it: &mut dyn Iterator<Item = Rat>| it.fold(Rat::zero(), |m, r| m.max(r));
        match self {
            ConvexBody::AxisBox { half } => {
                let g = max_ratio(&mut x.iter().zip(half).map(|(xi, h)| xi.abs() / h));
                &g * &g
            }
            ConvexBody::FormsBox { a, lambda } => {
                let y = linalg::mul_vec(a, x);
                let g = max_ratio(&mut y.iter().zip(lambda).map(|(yi, l)| yi.abs() / l));
                &g * &g
            }
            ConvexBody::Ellipsoid { form, level } => form.eval(x) / level,
            ConvexBody::SymPolytope { vertices } => {
                let g = max_ratio(
                    &mut edge_normals(vertices)
                        .into_iter()
                        .map(|(n, c)| (&n[0] * &x[0] + &n[1] * &x[1]) / c),
                );
                &g * &g
            }
        }
    }

    pub fn gauge_sq_int(&self, x: &[i64]) -> Rat {
        let v: Vec<Rat> = x.iter().map(|&t| Rat::from_integer(t.into())).collect();
        self.gauge_sq(&v)
    }

    pub fn membership(&self, x: &[Rat]) -> Membership {
        Membership::from_gauge_sq(&self.gauge_sq(x))
    }

    pub fn membership_int(&self, x: &[i64]) -> Membership {
        Membership::from_gauge_sq(&self.gauge_sq_int(x))
    }

    /// λC.
    pub fn scale(&self, lambda: &Rat) -> Result<ConvexBody> {
        if !lambda.is_positive() {
            return Err(Error::domain("scale factor must be positive"));
        }
        Ok(match self {
            ConvexBody::AxisBox { half } => ConvexBody::AxisBox {
                half: half.iter().map(|h| h * lambda).collect(),
            },
            ConvexBody::FormsBox { a, lambda: l } => ConvexBody::FormsBox {
                a: a.clone(),
                lambda: l.iter().map(|x| x * lambda).collect(),
            },
            ConvexBody::Ellipsoid { form, level } => ConvexBody::Ellipsoid {
                form: form.clone(),
                level: level * lambda * lambda,
            },
            ConvexBody::SymPolytope { vertices } => ConvexBody::SymPolytope {
                vertices: vertices
                    .iter()
                    .map(|[a, b]| [a * lambda, b * lambda])
                    .collect(),
            },
        })
    }

    /// vol(C); exact rational except for ellipsoids.
    pub fn volume(&self) -> Result<Real> {
        let n = self.dim();
        let two_n = Rat::from_integer(Int::from(2).pow(n as u32));
        match self {
            ConvexBody::AxisBox { half } => {
                Ok(Real::rat(half.iter().fold(two_n, |acc, h| acc * h)))
            }
            ConvexBody::FormsBox { a, lambda } => {
                let d = linalg::det(a).abs();
                if d.is_zero() {
                    return Err(Error::Unbounded);
                }
                Ok(Real::rat(lambda.iter().fold(two_n, |acc, l| acc * l) / d))
            }
            ConvexBody::Ellipsoid { form, level } => {
                let half_n = Rat::new(Int::from(n), Int::from(2));
                Ok(
                    Real::rat(level.clone()).pow(&half_n) * Real::unit_ball_volume(n as u32)
                        / Real::rat(form.det()).sqrt(),
                )
            }
            ConvexBody::SymPolytope { vertices } => Ok(Real::rat(polygon::shoelace(vertices))),
        }
    }

    /// {c : Bc ∈ C} for an invertible B, i.e. the body seen in the coordinates of a basis B.
    pub fn linear_preimage(&self, b: &Matrix) -> Result<ConvexBody> {
        if b.len() != self.dim() || !linalg::is_square(b) {
            return Err(Error::Dimension(b.len()));
        }
        Ok(match self {
            ConvexBody::AxisBox { half } => ConvexBody::FormsBox {
                a: b.clone(),
                lambda: half.clone(),
            },
            ConvexBody::FormsBox { a, lambda } => ConvexBody::FormsBox {
                a: linalg::mul(a, b),
                lambda: lambda.clone(),
            },
            ConvexBody::Ellipsoid { form, level } => {
                let g = linalg::mul(&linalg::mul(&linalg::transpose(b), form.gram()), b);
                ConvexBody::Ellipsoid {
                    form: QuadraticForm::new(g).map_err(|_| Error::DegenerateBasis)?,
                    level: level.clone(),
                }
            }
            ConvexBody::SymPolytope { vertices } => {
                let inv = linalg::inverse(b).ok_or(Error::DegenerateBasis)?;
                let mut vs: Vec<[Rat; 2]> = vertices
                    .iter()
                    .map(|v| {
                        let w = linalg::mul_vec(&inv, v);
                        [w[0].clone(), w[1].clone()]
                    })
                    .collect();
                if linalg::det(b).is_negative() {
                    vs.reverse();
                }
                ConvexBody::SymPolytope { vertices: vs }
            }
        })
    }

    /// Rational hᵢ with |xᵢ| ≤ hᵢ for every x ∈ C.
    pub fn bounding_box(&self) -> Result<Vec<Rat>> {
        match self {
            ConvexBody::AxisBox { half } => Ok(half.clone()),
            ConvexBody::FormsBox { a, lambda } => {
                let inv = linalg::inverse(a).ok_or(Error::Unbounded)?;
                Ok(inv
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(lambda)
                            .fold(Rat::zero(), |acc, (x, l)| acc + x.abs() * l)
                    })
                    .collect())
            }
            ConvexBody::Ellipsoid { form, level } => {
                let inv = linalg::inverse(form.gram()).ok_or(Error::Unbounded)?;
                Ok((0..form.dim())
                    .map(|i| sqrt_up(&(level * &inv[i][i])))
                    .collect())
            }
            ConvexBody::SymPolytope { vertices } => {
                let mut h = vec![Rat::zero(), Rat::zero()];
                for v in vertices {
                    for k in 0..2 {
                        h[k] = h[k].clone().max(v[k].abs());
                    }
                }
                Ok(h)
            }
        }
    }
}

/// Rational upper bound for √x (x ≥ 0).
pub(crate) fn sqrt_up(x: &Rat) -> Rat {
    // √(n/d) = √(n·d)/d
    let nd = x.numer() * x.denom();
    Rat::new(isqrt_ceil(&nd), x.denom().clone())
}

/// Outward normals n and offsets c > 0 with n·x ≤ c on each edge.
fn edge_normals(vertices: &[[Rat; 2]]) -> Vec<([Rat; 2], Rat)> {
    let k = vertices.len();
    (0..k)
        .map(|i| {
            let p = &vertices[i];
            let q = &vertices[(i + 1) % k];
            let n = [&q[1] - &p[1], &p[0] - &q[0]];
            let c = &n[0] * &p[0] + &n[1] * &p[1];
            (n, c)
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum BodySpec {
    Axisbox {
        #[serde(with = "serde_rat::vec")]
        halfwidths: Vec<Rat>,
    },
    Formsbox {
        #[serde(with = "serde_rat::matrix")]
        matrix: Matrix,
        #[serde(with = "serde_rat::vec")]
        lambda: Vec<Rat>,
    },
    Ellipsoid {
        #[serde(with = "serde_rat::matrix")]
        gram: Matrix,
        #[serde(with = "serde_rat")]
        level: Rat,
    },
    Polytope {
        #[serde(with = "serde_rat::matrix")]
        vertices: Matrix,
    },
}

impl Serialize for ConvexBody {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let spec = match self.clone() {
            ConvexBody::AxisBox { half } => BodySpec::Axisbox { halfwidths: half },
            ConvexBody::FormsBox { a, lambda } => BodySpec::Formsbox { matrix: a, lambda },
            ConvexBody::Ellipsoid { form, level } => BodySpec::Ellipsoid {
                gram: form.gram,
                level,
            },
            ConvexBody::SymPolytope { vertices } => BodySpec::Polytope {
                vertices: vertices.into_iter().map(|v| v.to_vec()).collect(),
            },
        };
        spec.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexBody {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let spec = BodySpec::deserialize(d)?;
        let body = match spec {
            BodySpec::Axisbox { halfwidths } => ConvexBody::axis_box(halfwidths),
            BodySpec::Formsbox { matrix, lambda } => ConvexBody::forms_box(matrix, lambda),
            BodySpec::Ellipsoid { gram, level } => {
                QuadraticForm::new(gram).and_then(|f| ConvexBody::ellipsoid(f, level))
            }
            BodySpec::Polytope { vertices } => {
                if vertices.iter().any(|v| v.len() != 2) {
                    return Err(D::Error::custom("polytope vertices must be planar"));
                }
                ConvexBody::sym_polygon(
                    vertices
                        .into_iter()
                        .map(|v| [v[0].clone(), v[1].clone()])
                        .collect(),
                )
            }
        };
        body.map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{certified_compare, rat, rat_int, Verdict};

    fn r(v: i64) -> Rat {
        rat_int(v)
    }

    #[test]
    fn membership_examples() {
        let b = ConvexBody::axis_box(vec![r(1), r(1)]).unwrap();
        assert_eq!(b.membership_int(&[0, 0]), Membership::Inside);
        let disc = ConvexBody::ball(2, r(1)).unwrap();
        assert_eq!(disc.membership_int(&[1, 0]), Membership::Boundary);
        let fb = ConvexBody::forms_box(vec![vec![r(1), r(1)], vec![r(0), r(1)]], vec![r(1), r(1)])
            .unwrap();
        assert_eq!(fb.membership_int(&[1, -1]), Membership::Boundary);
        assert_eq!(fb.membership_int(&[1, 1]), Membership::Outside);
    }

    #[test]
    fn volumes() {
        let disc = ConvexBody::ball(2, r(1)).unwrap().volume().unwrap();
        assert_eq!(certified_compare(&disc, &Real::pi()), Verdict::Undecided);
        let ball = ConvexBody::ball(3, r(1)).unwrap().volume().unwrap();
        let four_thirds_pi = Real::frac(4, 3) * Real::pi();
        let e = (ball - four_thirds_pi)
            .enclose(&rat(1, 1_000_000_000))
            .unwrap();
        assert!(e.contains(&Rat::zero()));
        let cube = ConvexBody::cube(4, r(1)).unwrap().volume().unwrap();
        assert_eq!(cube.exact(), Some(r(16)));
    }

    #[test]
    fn scaling() {
        let b = ConvexBody::axis_box(vec![r(1), r(1)]).unwrap();
        let s = b.scale(&r(3)).unwrap();
        assert_eq!(s, ConvexBody::axis_box(vec![r(3), r(3)]).unwrap());
        assert_eq!(s.volume().unwrap().exact(), Some(r(36)));
        let e = ConvexBody::ball(2, r(1)).unwrap();
        assert_eq!(e.scale(&r(1)).unwrap(), e);
        assert_eq!(e.scale(&r(2)).unwrap(), ConvexBody::ball(2, r(4)).unwrap());
        assert_eq!(b.scale(&r(0)).unwrap_err().kind(), "domain");
    }

    #[test]
    fn polygon_body_gauge() {
        // diamond |x| + |y| ≤ 1
        let d = ConvexBody::sym_polygon(vec![[r(1), r(0)], [r(0), r(1)]]).unwrap();
        assert_eq!(d.membership_int(&[1, 0]), Membership::Boundary);
        assert_eq!(d.membership(&[rat(1, 3), rat(1, 3)]), Membership::Inside);
        assert_eq!(d.gauge_sq_int(&[1, 1]), r(4));
        assert_eq!(d.volume().unwrap().exact(), Some(r(2)));
    }

    #[test]
    fn preimage_and_bounds() {
        // basis (2,0),(1,1) as columns
        let b = vec![vec![r(2), r(1)], vec![r(0), r(1)]];
        let disc = ConvexBody::ball(2, r(2)).unwrap();
        let pre = disc.linear_preimage(&b).unwrap();
        // coefficient (0,1) maps to (1,1), norm 2
        assert_eq!(pre.membership_int(&[0, 1]), Membership::Boundary);
        let bb = pre.bounding_box().unwrap();
        for c in [[0i64, 1], [1, -1], [-1, 1]] {
            let v: Vec<Rat> = c.iter().map(|&t| r(t)).collect();
            if pre.membership(&v).in_closure() {
                assert!(v.iter().zip(&bb).all(|(x, h)| x.abs() <= *h));
            }
        }
        let sq = ConvexBody::axis_box(vec![r(1), r(1)]).unwrap();
        let pb = sq.linear_preimage(&b).unwrap();
        assert_eq!(pb.volume().unwrap().exact(), Some(r(2)));
        let poly = ConvexBody::sym_polygon(vec![[r(1), r(0)], [r(0), r(1)]]).unwrap();
        let pp = poly.linear_preimage(&b).unwrap();
        assert_eq!(pp.volume().unwrap().exact(), Some(r(1)));
        assert_eq!(pp.membership_int(&[0, 1]), Membership::Outside);
    }

    #[test]
    fn json_round_trip() {
        let js = r#"{"type":"formsbox","matrix":[["1","1/2"],["0","1"]],"lambda":["1/2",2]}"#;
        let b: ConvexBody = serde_json::from_str(js).unwrap();
        let back: ConvexBody = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(b, back);
        let bad = r#"{"type":"ellipsoid","gram":[["1","2"],["2","1"]],"level":"1"}"#;
        assert!(serde_json::from_str::<ConvexBody>(bad).is_err());
    }
}
