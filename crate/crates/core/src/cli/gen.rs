//! Seeded random instances for the property sweeps.
//!
//! Every sweep row i draws from its own ChaCha stream `(seed, i)`, so a row's
//! instance does not depend on how many workers ran or in which order.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::body::{ConvexBody, LatticePolygon, QuadraticForm};
use crate::error::{Error, Result};
use crate::exact::{certified_compare, rat, rat_int, Int, Rat, Real, Verdict};
use crate::lattice::Lattice;
use crate::theorems::ComplexForms;

pub type Rng8 = ChaCha8Rng;

/// Generator for row `index` of a sweep seeded with `seed`.
pub fn row_rng(seed: u64, index: u64) -> Rng8 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

fn small_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn positive_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    rat(rng.gen_range(1..=num), rng.gen_range(1..=den))
}

fn det(m: &[Vec<Rat>]) -> Rat {
    crate::linalg::det(&m.to_vec())
}

/// n×n rational matrix with entries a/b, |a| ≤ 3, b ≤ 2, nonsingular.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Rat>> {
    loop {
        let m: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| small_rat(rng, 3, 2)).collect())
            .collect();
        if !det(&m).is_zero() {
            return m;
        }
    }
}

/// Lattice with a random rational basis.
pub fn random_lattice<R: Rng>(rng: &mut R, n: usize) -> Lattice {
    loop {
        let vs: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| small_rat(rng, 3, 2)).collect())
            .collect();
        if let Ok(l) = Lattice::from_vectors(vs) {
            return l;
        }
    }
}

/// Integral positive definite form AᵀA for a random nonsingular integer A.
pub fn random_pd_form<R: Rng>(rng: &mut R, n: usize) -> QuadraticForm {
    loop {
        let a: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| rat_int(rng.gen_range(-2..=2))).collect())
            .collect();
        if det(&a).is_zero() {
            continue;
        }
        let g: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rat::zero(), |s, k| s + &a[k][i] * &a[k][j]))
                    .collect()
            })
            .collect();
        if let Ok(q) = QuadraticForm::new(g) {
            return q;
        }
    }
}

/// Strictly convex counter-clockwise hull (Andrew's monotone chain).
pub fn convex_hull(mut pts: Vec<[i64; 2]>) -> Vec<[i64; 2]> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [i64; 2], a: [i64; 2], b: [i64; 2]| {
        i128::from(a[0] - o[0]) * i128::from(b[1] - o[1])
            - i128::from(a[1] - o[1]) * i128::from(b[0] - o[0])
    };
    let mut hull: Vec<[i64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[i64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Convex lattice polygon: hull of 3–12 random points in [−r, r]².
pub fn random_convex_polygon<R: Rng>(rng: &mut R, r: i64) -> LatticePolygon {
    loop {
        let k = rng.gen_range(3..=12);
        let pts = (0..k)
            .map(|_| [rng.gen_range(-r..=r), rng.gen_range(-r..=r)])
            .collect();
        let hull = convex_hull(pts);
        if hull.len() >= 3 {
            if let Ok(p) = LatticePolygon::new(hull) {
                return p;
            }
        }
    }
}

/// Centrally symmetric convex polygon with small integer vertices.
pub fn random_sym_polygon<R: Rng>(rng: &mut R) -> ConvexBody {
    loop {
        let k = rng.gen_range(2..=4);
        let mut pts: Vec<[i64; 2]> = (0..k)
            .map(|_| [rng.gen_range(-4..=4), rng.gen_range(-4..=4)])
            .collect();
        pts.extend(pts.clone().iter().map(|p| [-p[0], -p[1]]));
        let hull = convex_hull(pts);
        if hull.len() < 4 {
            continue;
        }
        let v = hull
            .iter()
            .map(|p| [rat_int(p[0]), rat_int(p[1])])
            .collect();
        if let Ok(c) = ConvexBody::sym_polygon(v) {
            return c;
        }
    }
}

/// Box, ellipsoid, forms box or (in the plane) symmetric polygon.
pub fn random_body<R: Rng>(rng: &mut R, n: usize) -> ConvexBody {
    let kinds = if n == 2 { 4 } else { 3 };
    let made = match rng.gen_range(0..kinds) {
        0 => ConvexBody::axis_box((0..n).map(|_| positive_rat(rng, 8, 4)).collect()),
        1 => ConvexBody::ellipsoid(random_pd_form(rng, n), positive_rat(rng, 8, 3)),
        2 => {
            let a = random_matrix(rng, n);
            ConvexBody::forms_box(a, (0..n).map(|_| positive_rat(rng, 6, 3)).collect())
        }
        _ => Ok(random_sym_polygon(rng)),
    };
    made.expect("generated parameters are valid")
}

/// Dilates `c` by a rational t ≥ 1/1000 so that vol(tC) > 2ⁿ det Λ is certified.
pub fn scale_past_minkowski(l: &Lattice, c: &ConvexBody) -> Result<ConvexBody> {
    let n = l.dim() as i64;
    let target = Real::rat(rat_int(1 << n) * l.det_abs());
    let vol = c.volume()?.quick()?.approx();
    let want = (target.quick()?.approx() / vol).powf(1.0 / n as f64) * 1.05;
    let mut t = Rat::new(
        Int::from((want * 1000.0).ceil().max(1.0) as i64),
        Int::from(1000),
    );
    for _ in 0..64 {
        let s = c.scale(&t)?;
        if certified_compare(&s.volume()?, &target) == Verdict::Greater {
            return Ok(s);
        }
        t *= rat(11, 10);
    }
    Err(Error::budget("could not certify the volume hypothesis"))
}

/// Axis box around the origin with every half-width below 1, so vol < 2ⁿ and Zⁿ
/// has no nonzero point inside.
pub fn sub_threshold_box<R: Rng>(rng: &mut R, n: usize) -> ConvexBody {
    let half = (0..n)
        .map(|_| {
            let d = rng.gen_range(2..=20);
            rat(rng.gen_range(1..d), d)
        })
        .collect();
    ConvexBody::axis_box(half).expect("positive half-widths")
}

/// Matrix A and bounds λ with ∏λⱼ ≥ |det A| (equality about one time in four).
pub fn random_linear_forms<R: Rng>(rng: &mut R, n: usize) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let a = random_matrix(rng, n);
    let d = num_traits::Signed::abs(&det(&a));
    let mut lambda: Vec<Rat> = (0..n - 1).map(|_| positive_rat(rng, 4, 3)).collect();
    let rest = lambda.iter().fold(Rat::one(), |p, l| p * l);
    let exact = &d / &rest;
    let last = if rng.gen_range(0..4) == 0 {
        exact
    } else {
        exact * (Rat::one() + positive_rat(rng, 1, 4))
    };
    lambda.push(last);
    (a, lambda)
}

/// s ≥ 1 conjugate pairs and r real forms with r + 2s = n, nonsingular.
pub fn random_complex_forms<R: Rng>(rng: &mut R, n: usize) -> ComplexForms {
    let s = rng.gen_range(1..=n / 2);
    loop {
        let mut row = || -> Vec<Rat> { (0..n).map(|_| rat_int(rng.gen_range(-3..=3))).collect() };
        let f = ComplexForms {
            pair_re: (0..s).map(|_| row()).collect(),
            pair_im: (0..s).map(|_| row()).collect(),
            reals: (0..n - 2 * s).map(|_| row()).collect(),
        };
        if !f.det_abs().is_zero() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_of_order() {
        let a: Vec<u64> = (0..4).map(|i| row_rng(7, i).gen()).collect();
        let b: Vec<u64> = (0..4).rev().map(|i| row_rng(7, i).gen()).collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn hull_drops_collinear_and_interior() {
        let h = convex_hull(vec![[0, 0], [2, 0], [1, 0], [2, 2], [0, 2], [1, 1]]);
        assert_eq!(h, vec![[0, 0], [2, 0], [2, 2], [0, 2]]);
    }

    #[test]
    fn scaled_bodies_meet_the_hypothesis() {
        let mut rng = row_rng(1, 0);
        for n in 2..=3 {
            let l = random_lattice(&mut rng, n);
            let c = random_body(&mut rng, n);
            let s = scale_past_minkowski(&l, &c).unwrap();
            let target = Real::rat(rat_int(1 << n) * l.det_abs());
            assert_eq!(
                certified_compare(&s.volume().unwrap(), &target),
                Verdict::Greater
            );
        }
    }

    #[test]
    fn linear_forms_product() {
        let mut rng = row_rng(3, 5);
        let (a, l) = random_linear_forms(&mut rng, 3);
        let p = l.iter().fold(Rat::one(), |p, x| p * x);
        assert!(p >= num_traits::Signed::abs(&det(&a)));
    }
}
