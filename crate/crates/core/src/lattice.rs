//! Full-rank lattices with rational bases.
//!
//! Enumeration works on the Gram matrix alone, so forms with irrational
//! embeddings (the hexagonal and fcc forms) are handled through
//! [`QuadraticForm`] without ever choosing coordinates.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::body::{sqrt_up, ConvexBody, QuadraticForm};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::exact::{ceil, floor, rat_int, serde_rat, Rat, Real, RealEnclosure};
use crate::linalg::{self, Matrix};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    /// Columns are the basis vectors.
    basis: Matrix,
    gram: Matrix,
    det_abs: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub coeffs: Vec<i64>,
    #[serde(with = "serde_rat::vec")]
    pub ambient: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct LatticeSpec {
    /// One inner array per basis vector.
    #[serde(with = "serde_rat::matrix")]
    basis: Matrix,
}

impl Serialize for Lattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeSpec {
            basis: self.vectors(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let spec = LatticeSpec::deserialize(d)?;
        Lattice::from_vectors(spec.basis).map_err(D::Error::custom)
    }
}

impl Lattice {
    /// `basis` has the basis vectors as columns.
    pub fn new(basis: Matrix) -> Result<Self> {
        let n = basis.len();
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(Error::Dimension(n));
        }
        if !linalg::is_square(&basis) {
            return Err(Error::domain("basis matrix must be square"));
        }
        let det_abs = linalg::det(&basis).abs();
        if det_abs.is_zero() {
            return Err(Error::DegenerateBasis);
        }
        let gram = linalg::mul(&linalg::transpose(&basis), &basis);
        Ok(Lattice {
            basis,
            gram,
            det_abs,
        })
    }

    /// Basis given as a list of vectors z₁, …, zₙ.
    pub fn from_vectors(vectors: Vec<Vec<Rat>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != vectors.len()) {
            return Err(Error::domain("basis must consist of n vectors of length n"));
        }
        Self::new(linalg::transpose(&vectors))
    }

    pub fn from_int_vectors(vectors: &[&[i64]]) -> Result<Self> {
        Self::from_vectors(
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn integer(n: usize) -> Result<Self> {
        Self::new(linalg::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Basis vectors z₁, …, zₙ.
    pub fn vectors(&self) -> Vec<Vec<Rat>> {
        linalg::transpose(&self.basis)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn form(&self) -> QuadraticForm {
        QuadraticForm::new(self.gram.clone()).expect("gram of a basis is positive definite")
    }

    pub fn det_abs(&self) -> &Rat {
        &self.det_abs
    }

    pub fn point(&self, coeffs: Vec<i64>) -> LatticePoint {
        let ambient = linalg::mul_vec(&self.basis, &to_rats(&coeffs));
        LatticePoint { coeffs, ambient }
    }

    pub fn norm2(&self, coeffs: &[i64]) -> Rat {
        linalg::quad_form_int(&self.gram, coeffs)
    }

    /// Whether an ambient point lies in the lattice.
    pub fn contains(&self, x: &[Rat]) -> bool {
        let inv = linalg::inverse(&self.basis).expect("nonsingular basis");
        linalg::mul_vec(&inv, x).iter().all(|c| c.is_integer())
    }
}

pub(crate) fn to_rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat_int(x)).collect()
}

/// Lagrange–Gauss reduction of a 2×2 Gram matrix. Returns the reduced Gram
/// matrix and the unimodular U (columns = new basis in old coordinates).
pub fn reduce_gram_2d(g: &Matrix) -> (Matrix, [[i64; 2]; 2]) {
    let (mut a, mut b, mut c) = (g[0][0].clone(), g[0][1].clone(), g[1][1].clone());
    // columns u, v of U
    let (mut u, mut v) = ([1i64, 0], [0i64, 1]);
    if c < a {
        std::mem::swap(&mut a, &mut c);
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        // v ← v − m·u with m the nearest integer to b/a
        let m = floor(&(&b / &a + Rat::new(1.into(), 2.into())));
        let m = m.to_i64().expect("reduction multiplier fits i64");
        if m != 0 {
            let mr = rat_int(m);
            c = &c - rat_int(2) * &mr * &b + &mr * &mr * &a;
            b = &b - &mr * &a;
            v = [v[0] - m * u[0], v[1] - m * u[1]];
        }
        if c < a {
            std::mem::swap(&mut a, &mut c);
            std::mem::swap(&mut u, &mut v);
        } else {
            break;
        }
    }
    // sign convention: off-diagonal entry ≥ 0
    if b.is_negative() {
        b = -b;
        v = [-v[0], -v[1]];
    }
    (
        vec![vec![a, b.clone()], vec![b, c]],
        [[u[0], v[0]], [u[1], v[1]]],
    )
}

/// Reduced basis of a planar lattice: |b₁| ≤ |b₂|, |⟨b₁,b₂⟩| ≤ |b₁|²/2.
pub fn reduce_2d(l: &Lattice) -> Result<Lattice> {
    if l.dim() != 2 {
        return Err(Error::Dimension(l.dim()));
    }
    let (_, u) = reduce_gram_2d(l.gram());
    let um: Matrix = u.iter().map(|r| to_rats(r)).collect();
    Lattice::new(linalg::mul(l.basis(), &um))
}

/// Nonzero integer vectors x with xᵀGx ≤ r2, lexicographically ordered.
pub fn enumerate_form(q: &QuadraticForm, r2: &Rat, budget: &Budget) -> Result<Vec<Vec<i64>>> {
    enumerate_form_metered(q, r2, &mut budget.meter())
}

pub(crate) fn enumerate_form_metered(
    q: &QuadraticForm,
    r2: &Rat,
    meter: &mut Meter<'_>,
) -> Result<Vec<Vec<i64>>> {
    if !r2.is_positive() {
        return Err(Error::domain("radius must be positive"));
    }
    let g = q.gram();
    let n = g.len();
    // planar forms are reduced first; coordinates are mapped back afterwards
    let (work, back) = if n == 2 {
        let (gr, u) = reduce_gram_2d(g);
        (gr, Some(u))
    } else {
        (g.clone(), None)
    };
    let f = linalg::ldl(&work).ok_or_else(|| Error::domain("form is not positive definite"))?;
    let mut x = vec![0i64; n];
    let mut out = Vec::new();
    descend(&f, n, r2.clone(), &mut x, &mut out, meter)?;
    if let Some(u) = back {
        for p in &mut out {
            *p = vec![
                u[0][0] * p[0] + u[0][1] * p[1],
                u[1][0] * p[0] + u[1][1] * p[1],
            ];
        }
    }
    out.retain(|p| p.iter().any(|&c| c != 0));
    out.sort();
    Ok(out)
}

fn descend(
    f: &linalg::Ldl,
    level: usize,
    rem: Rat,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    meter: &mut Meter<'_>,
) -> Result<()> {
    if level == 0 {
        out.push(x.clone());
        return Ok(());
    }
    let i = level - 1;
    let n = x.len();
    let c = (i + 1..n).fold(Rat::zero(), |acc, j| {
        if x[j] == 0 {
            acc
        } else {
            acc + &f.u[i][j] * rat_int(x[j])
        }
    });
    let s = sqrt_up(&(&rem / &f.d[i]));
    let lo = ceil(&(-&c - &s));
    let hi = floor(&(-&c + &s));
    let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
        return Err(Error::budget(
            "enumeration range exceeds 64-bit coordinates",
        ));
    };
    for v in lo..=hi {
        meter.tick("lattice enumeration")?;
        let t = rat_int(v) + &c;
        let used = &f.d[i] * &t * &t;
        if used > rem {
            continue;
        }
        x[i] = v;
        descend(f, i, &rem - used, x, out, meter)?;
    }
    x[i] = 0;
    Ok(())
}

/// All nonzero lattice points of squared length ≤ r2, ordered by coefficients.
pub fn enumerate_in_ball(l: &Lattice, r2: &Rat) -> Result<Vec<LatticePoint>> {
    enumerate_in_ball_with(l, r2, &Budget::default())
}

pub fn enumerate_in_ball_with(l: &Lattice, r2: &Rat, budget: &Budget) -> Result<Vec<LatticePoint>> {
    Ok(enumerate_form(&l.form(), r2, budget)?
        .into_iter()
        .map(|c| l.point(c))
        .collect())
}

/// Least nonzero value of the form and every vector attaining it.
pub fn form_minimal_vectors(q: &QuadraticForm, budget: &Budget) -> Result<(Rat, Vec<Vec<i64>>)> {
    let g = q.gram();
    // unit vectors bound the minimum from above
    let bound = (0..g.len())
        .map(|i| g[i][i].clone())
        .min()
        .expect("nonempty");
    let pts = enumerate_form(q, &bound, budget)?;
    let min = pts
        .iter()
        .map(|p| q.eval_int(p))
        .min()
        .expect("unit vectors lie within the bound");
    let vecs = pts.into_iter().filter(|p| q.eval_int(p) == min).collect();
    Ok((min, vecs))
}

pub fn minimal_vectors(l: &Lattice) -> Result<(Rat, Vec<LatticePoint>)> {
    let (m, v) = form_minimal_vectors(&l.form(), &Budget::default())?;
    Ok((m, v.into_iter().map(|c| l.point(c)).collect()))
}

#[derive(Clone, Debug, Serialize)]
pub struct SuccessiveMinima {
    /// λⱼ² exactly (the gauge of a lattice point is the square root of a rational).
    #[serde(with = "serde_rat::vec")]
    pub lambda_sq: Vec<Rat>,
    pub lambda: Vec<RealEnclosure>,
    pub witnesses: Vec<LatticePoint>,
}

impl SuccessiveMinima {
    pub fn lambda_real(&self, j: usize) -> Real {
        Real::rat(self.lambda_sq[j].clone()).sqrt()
    }

    /// ∏ λⱼ as an expression.
    pub fn product(&self) -> Real {
        Real::rat(self.lambda_sq.iter().fold(Rat::one(), |a, b| a * b)).sqrt()
    }
}

/// Nonzero integer points c with gauge²(c) ≤ bound for a body in coefficient space.
pub(crate) fn points_in_body(
    body: &ConvexBody,
    bound_sq: &Rat,
    meter: &mut Meter<'_>,
) -> Result<Vec<(Rat, Vec<i64>)>> {
    if let ConvexBody::Ellipsoid { form, level } = body {
        let pts = enumerate_form_metered(form, &(level * bound_sq), meter)?;
        return Ok(pts
            .into_iter()
            .map(|p| (body.gauge_sq_int(&p), p))
            .collect());
    }
    if let ConvexBody::FormsBox { a, lambda } = body {
        // the box lies in the ellipsoid Σ (Yⱼ/λⱼ)² ≤ n·bound, whose enumeration prunes
        let n = a.len();
        let gram: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        a.iter()
                            .zip(lambda)
                            .fold(Rat::zero(), |s, (row, l)| s + &row[i] * &row[k] / (l * l))
                    })
                    .collect()
            })
            .collect();
        let form = QuadraticForm::new(gram).map_err(|_| Error::Unbounded)?;
        let level = rat_int(n as i64) * bound_sq;
        return Ok(enumerate_form_metered(&form, &level, meter)?
            .into_iter()
            .map(|p| (body.gauge_sq_int(&p), p))
            .filter(|(g, _)| g <= bound_sq)
            .collect());
    }
    let scale = sqrt_up(bound_sq);
    let h: Vec<i64> = body
        .bounding_box()?
        .iter()
        .map(|b| floor(&(b * &scale)).to_i64())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::budget("coefficient box exceeds 64-bit range"))?;
    let n = h.len();
    let mut out = Vec::new();
    let mut x: Vec<i64> = h.iter().map(|&v| -v).collect();
    loop {
        meter.tick("body enumeration")?;
        if x.iter().any(|&c| c != 0) {
            let g = body.gauge_sq_int(&x);
            if &g <= bound_sq {
                out.push((g, x.clone()));
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if x[k] < h[k] {
                x[k] += 1;
                break;
            }
            x[k] = -h[k];
        }
    }
}

/// Successive minima λ₁ ≤ … ≤ λₙ of a symmetric convex body with respect to a lattice.
///
/// All lattice points with gauge up to a doubling radius are enumerated and the
/// minima read off greedily, so each λⱼ² is exact.
pub fn successive_minima(l: &Lattice, c: &ConvexBody) -> Result<SuccessiveMinima> {
    successive_minima_with(l, c, &Budget::default())
}

pub fn successive_minima_with(
    l: &Lattice,
    c: &ConvexBody,
    budget: &Budget,
) -> Result<SuccessiveMinima> {
    if c.dim() != l.dim() {
        return Err(Error::Dimension(c.dim()));
    }
    if !c.is_bounded() {
        return Err(Error::Unbounded);
    }
    let body = c.linear_preimage(l.basis())?;
    let n = l.dim();
    let unit_gauges: Vec<Rat> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            body.gauge_sq_int(&e)
        })
        .collect();
    let max_sq = unit_gauges.iter().max().expect("n ≥ 2").clone();
    let mut bound_sq = unit_gauges.iter().min().expect("n ≥ 2").clone();
    // λ₁ⁿ vol ≤ 2ⁿ; any start is correct, a small one keeps skewed bodies cheap
    if let Some(est) = first_minimum_estimate(&body) {
        bound_sq = bound_sq.min(est);
    }
    let mut meter = budget.meter();
    loop {
        let mut pts = points_in_body(&body, &bound_sq, &mut meter)?;
        pts.sort();
        let mut chosen: Vec<(Rat, Vec<i64>)> = Vec::new();
        for (g, p) in pts {
            let mut rows: Vec<Vec<i64>> = chosen.iter().map(|(_, q)| q.clone()).collect();
            rows.push(p.clone());
            if linalg::rank_int(&rows) == rows.len() {
                chosen.push((g, p));
                if chosen.len() == n {
                    break;
                }
            }
        }
        if chosen.len() == n {
            let w = crate::exact::ten_pow_neg(12);
            let lambda = chosen
                .iter()
                .map(|(g, _)| Real::rat(g.clone()).sqrt().enclose(&w))
                .collect::<Result<_>>()?;
            return Ok(SuccessiveMinima {
                lambda_sq: chosen.iter().map(|(g, _)| g.clone()).collect(),
                lambda,
                witnesses: chosen.into_iter().map(|(_, p)| l.point(p)).collect(),
            });
        }
        // the unit vectors are independent, so the radius max_sq always suffices
        bound_sq = (bound_sq * rat_int(4)).min(max_sq.clone());
    }
}

fn first_minimum_estimate(body: &ConvexBody) -> Option<Rat> {
    let n = body.dim() as f64;
    let vol = body.volume().ok()?.quick().ok()?.approx();
    let est = (2f64.powf(n) / vol).powf(2.0 / n);
    if !est.is_finite() || est <= 0.0 {
        return None;
    }
    let num = (est * 1e6).ceil().min(1e15) as i64;
    Some(Rat::new(num.max(1).into(), 1_000_000.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn brute(g: &Matrix, r2: &Rat, box_r: i64) -> Vec<Vec<i64>> {
        let n = g.len();
        let mut out = Vec::new();
        let total = (2 * box_r + 1).pow(n as u32);
        for mut idx in 0..total {
            let mut x = vec![0i64; n];
            for c in x.iter_mut() {
                *c = idx % (2 * box_r + 1) - box_r;
                idx /= 2 * box_r + 1;
            }
            if x.iter().any(|&c| c != 0) && &linalg::quad_form_int(g, &x) <= r2 {
                out.push(x);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn construction() {
        assert_eq!(Lattice::integer(2).unwrap().det_abs(), &rat_int(1));
        let even = Lattice::from_int_vectors(&[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(even.det_abs(), &rat_int(2));
        assert_eq!(
            Lattice::from_int_vectors(&[&[1, 0], &[2, 0]]).unwrap_err(),
            Error::DegenerateBasis
        );
        assert_eq!(
            Lattice::new(vec![vec![rat_int(1)]]).unwrap_err().kind(),
            "dimension"
        );
    }

    #[test]
    fn reduction() {
        let l = Lattice::from_int_vectors(&[&[1, 0], &[100, 1]]).unwrap();
        let r = reduce_2d(&l).unwrap();
        assert_eq!(r.gram(), &linalg::identity(2));
        let hex = vec![vec![rat_int(1), rat(1, 2)], vec![rat(1, 2), rat_int(1)]];
        let skew = vec![vec![rat_int(1), rat(3, 2)], vec![rat(3, 2), rat_int(3)]];
        assert_eq!(reduce_gram_2d(&skew).0, hex);
        let even = Lattice::from_int_vectors(&[&[2, 0], &[1, 1]]).unwrap();
        assert_eq!(reduce_2d(&even).unwrap().gram()[0][0], rat_int(2));
    }

    #[test]
    fn enumeration_examples() {
        let z2 = Lattice::integer(2).unwrap();
        assert_eq!(enumerate_in_ball(&z2, &rat_int(1)).unwrap().len(), 4);
        assert_eq!(enumerate_in_ball(&z2, &rat_int(2)).unwrap().len(), 8);
        let even = Lattice::from_int_vectors(&[&[2, 0], &[1, 1]]).unwrap();
        let pts = enumerate_in_ball(&even, &rat_int(2)).unwrap();
        let mut amb: Vec<Vec<Rat>> = pts.iter().map(|p| p.ambient.clone()).collect();
        amb.sort();
        let expect: Vec<Vec<Rat>> = [[-1, -1], [-1, 1], [1, -1], [1, 1]]
            .iter()
            .map(|v| to_rats(v))
            .collect();
        assert_eq!(amb, expect);
        assert_eq!(
            pts.iter().map(|p| p.coeffs.clone()).collect::<Vec<_>>(),
            brute(even.gram(), &rat_int(2), 3)
        );
    }

    #[test]
    fn minimal_vector_counts() {
        let (m, v) = minimal_vectors(&Lattice::integer(3).unwrap()).unwrap();
        assert_eq!((m, v.len()), (rat_int(1), 6));
        let hex = QuadraticForm::new(vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat(1, 2), rat_int(1)],
        ])
        .unwrap();
        let (m, v) = form_minimal_vectors(&hex, &Budget::default()).unwrap();
        assert_eq!((m, v.len()), (rat_int(1), 6));
        let h = rat(1, 2);
        let fcc = QuadraticForm::new(vec![
            vec![rat_int(1), h.clone(), h.clone()],
            vec![h.clone(), rat_int(1), h.clone()],
            vec![h.clone(), h, rat_int(1)],
        ])
        .unwrap();
        let (m, v) = form_minimal_vectors(&fcc, &Budget::default()).unwrap();
        assert_eq!((m, v.len()), (rat_int(1), 12));
    }

    #[test]
    fn minima_examples() {
        let z2 = Lattice::integer(2).unwrap();
        let disc = ConvexBody::ball(2, rat_int(1)).unwrap();
        let s = successive_minima(&z2, &disc).unwrap();
        assert_eq!(s.lambda_sq, vec![rat_int(1), rat_int(1)]);
        let bx = ConvexBody::axis_box(vec![rat_int(2), rat(1, 2)]).unwrap();
        let s = successive_minima(&z2, &bx).unwrap();
        assert_eq!(s.lambda_sq, vec![rat(1, 4), rat_int(4)]);
        let even = Lattice::from_int_vectors(&[&[2, 0], &[1, 1]]).unwrap();
        let s = successive_minima(&even, &disc).unwrap();
        assert_eq!(s.lambda_sq[0], rat_int(2));
        assert_eq!(s.lambda_sq[1], rat_int(2));
    }

    #[test]
    fn budget_is_reported() {
        let z3 = Lattice::integer(3).unwrap();
        let err = enumerate_in_ball_with(&z3, &rat_int(100), &Budget::with_nodes(50)).unwrap_err();
        assert_eq!(err.kind(), "budget");
    }

    #[test]
    fn json_uses_vectors() {
        let l: Lattice = serde_json::from_str(r#"{"basis":[["2","0"],["1","1"]]}"#).unwrap();
        assert_eq!(l.det_abs(), &rat_int(2));
        assert_eq!(l.point(vec![0, 1]).ambient, to_rats(&[1, 1]));
    }
}
