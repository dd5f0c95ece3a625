use gon::body::{
    brunn_minkowski_check_2d, minkowski_sum_2d, ConvexBody, LatticePolygon, Polygon, QuadraticForm,
};
use gon::budget::Budget;
use gon::cli::gen;
use gon::counting::{circle_count, pick_count, r_table};
use gon::exact::{rat, rat_int, Rat, Real};
use gon::figurate::{eureka_decompose, polygonal_decompose};
use gon::lattice::{enumerate_in_ball, minimal_vectors, reduce_2d, successive_minima, Lattice};
use gon::theorems::{is_prime, linear_forms_solve, minkowski_point, two_square, Mode};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(a, b)| rat(a, b))
}

fn pos_rat() -> impl Strategy<Value = Rat> {
    (1i64..=40, 1i64..=12).prop_map(|(a, b)| rat(a, b))
}

fn basis(n: usize) -> impl Strategy<Value = Lattice> {
    prop::collection::vec(-3i64..=3, n * n).prop_filter_map("singular", move |v| {
        let rows: Vec<&[i64]> = v.chunks(n).collect();
        Lattice::from_int_vectors(&rows).ok()
    })
}

fn int_basis(n: usize, seed: u64) -> Lattice {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v: Vec<i64> = (0..n * n)
            .map(|_| rand::Rng::gen_range(&mut rng, -3..=3))
            .collect();
        let rows: Vec<&[i64]> = v.chunks(n).collect();
        if let Ok(l) = Lattice::from_int_vectors(&rows) {
            return l;
        }
    }
}

/// Points with |v|² ≤ r2 of an integer lattice, by scanning the ambient cube.
fn brute_ball(l: &Lattice, r2: i64) -> Vec<Vec<Rat>> {
    let n = l.dim() as u32;
    let reach = (r2 as f64).sqrt() as i64;
    let side = 2 * reach + 1;
    let mut out = vec![];
    for mut i in 0..side.pow(n) {
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let c = i % side - reach;
                i /= side;
                c
            })
            .collect();
        let norm: i64 = v.iter().map(|c| c * c).sum();
        let v: Vec<Rat> = v.into_iter().map(rat_int).collect();
        if norm > 0 && norm <= r2 && l.contains(&v) {
            out.push(v);
        }
    }
    out.sort();
    out
}

fn polygon() -> impl Strategy<Value = Polygon> {
    any::<u64>().prop_map(|s| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s);
        let p = gen::random_convex_polygon(&mut rng, 6);
        Polygon::new(
            p.vertices()
                .iter()
                .map(|v| [rat_int(v[0]), rat_int(v[1])])
                .collect(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enclosures_contain_exact_values(a in small_rat(), b in pos_rat()) {
        let x = Real::rat(a.clone());
        let e = (&(&x * &x).sqrt() + &Real::rat(b.clone())).enclose(&rat(1, 1_000_000)).unwrap();
        let exact = a.abs() + &b;
        prop_assert!(e.contains(&exact));
        let fine = (&(&x * &x).sqrt() + &Real::rat(b)).enclose(&rat(1, 1_000_000_000_000)).unwrap();
        let refined = e.intersect(&fine).unwrap();
        prop_assert!(e.contains_enclosure(&refined) && refined.contains(&exact));
        prop_assert!(refined.lo <= refined.hi);
    }

    #[test]
    fn reduce_2d_keeps_the_lattice(l in basis(2), x in -5i64..=5, y in -5i64..=5) {
        let r = reduce_2d(&l).unwrap();
        prop_assert_eq!(r.det_abs(), l.det_abs());
        let g = r.gram();
        prop_assert!(g[0][0] <= g[1][1]);
        prop_assert!(rat_int(2) * g[0][1].abs() <= g[0][0]);
        // both bases generate each other's points
        let p = r.point(vec![x, y]);
        prop_assert!(l.contains(&p.ambient));
        let q = l.point(vec![x, y]);
        prop_assert!(r.contains(&q.ambient));
        let (min, _) = minimal_vectors(&l).unwrap();
        prop_assert_eq!(&min, &g[0][0]);
    }

    #[test]
    fn enumeration_matches_brute_force(n in 2usize..=3, seed in any::<u64>(), r2 in 1i64..=10) {
        let l = int_basis(n, seed);
        let mut got: Vec<Vec<Rat>> =
            enumerate_in_ball(&l, &rat_int(r2)).unwrap().into_iter().map(|p| p.ambient).collect();
        got.sort();
        prop_assert_eq!(got, brute_ball(&l, r2));
    }

    #[test]
    fn first_minimum_of_unit_ball(l in basis(2)) {
        let m = successive_minima(&l, &ConvexBody::ball(2, rat_int(1)).unwrap()).unwrap();
        let (min, _) = minimal_vectors(&l).unwrap();
        prop_assert_eq!(&m.lambda_sq[0], &min);
        prop_assert!(m.lambda_sq[0] <= m.lambda_sq[1]);
    }

    #[test]
    fn scaling_commutes_with_membership(
        h1 in pos_rat(), h2 in pos_rat(), lam in pos_rat(), x in small_rat(), y in small_rat()
    ) {
        let c = ConvexBody::axis_box(vec![h1, h2]).unwrap();
        let s = c.scale(&lam).unwrap();
        prop_assert_eq!(s.membership(&[&lam * &x, &lam * &y]), c.membership(&[x, y]));
        let v = c.volume().unwrap().exact().unwrap();
        prop_assert_eq!(s.volume().unwrap().exact().unwrap(), v * &lam * &lam);
    }

    #[test]
    fn ellipsoid_volume_scales(lam in pos_rat(), a in 1i64..=5, b in -2i64..=2) {
        let q = QuadraticForm::new(vec![vec![rat_int(a + 2), rat_int(b)], vec![rat_int(b), rat_int(3)]]).unwrap();
        let c = ConvexBody::ellipsoid(q, rat_int(2)).unwrap();
        let w = rat(1, 1_000_000_000);
        let v = c.volume().unwrap().enclose(&w).unwrap();
        let vs = c.scale(&lam).unwrap().volume().unwrap().enclose(&w).unwrap();
        let l2 = &lam * &lam;
        prop_assert!(vs.lo <= &v.hi * &l2 && &v.lo * &l2 <= vs.hi);
    }

    #[test]
    fn minkowski_sums(p in polygon(), q in polygon(), lam in 1i64..=9) {
        let pq = minkowski_sum_2d(&p, &q).unwrap();
        let qp = minkowski_sum_2d(&q, &p).unwrap();
        prop_assert_eq!(pq.area(), qp.area());
        prop_assert!(pq.area() >= p.area().max(q.area()));
        let b = brunn_minkowski_check_2d(&p, &q, &rat(lam, 10)).unwrap();
        prop_assert!(b.holds);
    }

    #[test]
    fn pick_identity(seed in any::<u64>(), r in 2i64..=15) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p: LatticePolygon = gen::random_convex_polygon(&mut rng, r);
        let c = pick_count(&p).unwrap();
        prop_assert!(c.identity_holds);
        let i = rat_int(c.interior as i64);
        let b = rat_int(c.boundary as i64);
        prop_assert_eq!(c.area, i + b / rat_int(2) - rat_int(1));
    }

    #[test]
    fn r2_prefix_is_circle_count(x in 0u64..=3000) {
        let r = r_table(2, x, &Budget::default()).unwrap();
        let s: u128 = r.iter().sum();
        prop_assert_eq!(s, circle_count(&rat_int(x as i64)).unwrap());
    }

    #[test]
    fn figurate_parts(m in 0u64..=1_000_000_000, k in 3u64..=8, small in 0u64..=10_000) {
        let w = eureka_decompose(m).unwrap();
        prop_assert!(w.verify() && w.parts.len() <= 3);
        let w = polygonal_decompose(k, small).unwrap();
        prop_assert!(w.verify() && w.parts.len() as u64 <= k);
    }

    #[test]
    fn two_squares_for_primes(p in (1u64..250_000).prop_map(|k| 4 * k + 1).prop_filter("prime", |&p| is_prime(p))) {
        let t = two_square(p).unwrap();
        prop_assert_eq!(t.a * t.a + t.b * t.b, p);
        prop_assert!(t.certificate.is_valid());
    }

    #[test]
    fn minkowski_witnesses_reverify(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let l = gen::random_lattice(&mut rng, n);
        let c = gen::scale_past_minkowski(&l, &gen::random_body(&mut rng, n)).unwrap();
        let (p, cert) = minkowski_point(&l, &c, Mode::Strict).unwrap();
        prop_assert!(cert.is_valid());
        prop_assert!(p.coeffs.iter().any(|&v| v != 0));
        prop_assert!(l.contains(&p.ambient));
        prop_assert!(c.gauge_sq(&p.ambient) < rat_int(1));
    }

    #[test]
    fn linear_forms_solutions_fit(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, lambda) = gen::random_linear_forms(&mut rng, n);
        let (x, cert) = linear_forms_solve(&a, &lambda).unwrap();
        prop_assert!(cert.is_valid());
        for (row, l) in a.iter().zip(&lambda) {
            let y: Rat = row.iter().zip(&x).map(|(c, &v)| c * rat_int(v)).sum();
            prop_assert!(&y.abs() <= l);
        }
        prop_assert!(!x.iter().all(|v| v.is_zero()));
    }
}
