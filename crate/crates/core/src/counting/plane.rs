use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::body::{LatticePolygon, Membership};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{certified_compare, rat, serde_rat, Int, Rat, Real, RealEnclosure, Verdict};

/// Polygons whose coordinates stay within this bound are also counted point by point.
pub const SCAN_LIMIT: i64 = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct PickReport {
    pub interior: u64,
    pub boundary: u64,
    #[serde(with = "serde_rat")]
    pub area: Rat,
    pub total: u64,
    pub convex: bool,
    /// Interior and boundary recounted by classifying every point of the bounding box.
    pub scanned: bool,
    /// total = area + boundary/2 + 1, and the scan (if run) agrees.
    pub identity_holds: bool,
}

/// Interior and boundary counts of a simple lattice polygon; interior comes from
/// I = A − B/2 + 1 and is cross-checked by a scan when the polygon is small.
pub fn pick_count(p: &LatticePolygon) -> Result<PickReport> {
    let b = p.boundary_count();
    let twice = p.twice_area();
    let twice_i = twice - i128::from(b) + 2;
    if twice_i < 0 || twice_i % 2 != 0 {
        return Err(Error::Degenerate(
            "polygon violates the lattice count identity".into(),
        ));
    }
    let interior = (twice_i / 2) as u64;
    let total = interior + b;
    let area = p.area();
    let mut identity_holds = Rat::from_integer(total.into())
        == &area + Rat::new(b.into(), 2.into()) + Rat::from_integer(1.into());
    let (lo, hi) = p.bounds();
    let scanned = lo.iter().chain(&hi).all(|c| c.abs() <= SCAN_LIMIT);
    if scanned {
        let (si, sb) = scan(p);
        identity_holds &= si == interior && sb == b;
    }
    Ok(PickReport {
        interior,
        boundary: b,
        area,
        total,
        convex: p.is_convex(),
        scanned,
        identity_holds,
    })
}

/// (interior, boundary) by classifying every point of the bounding box.
fn scan(p: &LatticePolygon) -> (u64, u64) {
    let (lo, hi) = p.bounds();
    let (mut i, mut b) = (0, 0);
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            match p.classify([x, y]) {
                Membership::Inside => i += 1,
                Membership::Boundary => b += 1,
                Membership::Outside => {}
            }
        }
    }
    (i, b)
}

#[derive(Clone, Debug, Serialize)]
pub struct JarnikReport {
    /// Lattice points strictly inside.
    pub enclosed: u64,
    /// Lattice points inside or on the boundary.
    pub enclosed_inclusive: u64,
    #[serde(with = "serde_rat")]
    pub area: Rat,
    pub length: RealEnclosure,
    /// |area − enclosed| < length, certified.
    pub holds: bool,
    pub holds_inclusive: bool,
}

/// Jarník's inequality |a − r| < ℓ for a lattice polygon, with r counted both ways.
pub fn jarnik_check(p: &LatticePolygon) -> Result<JarnikReport> {
    let pick = pick_count(p)?;
    let length = p.perimeter();
    let decide = |r: u64| -> Result<bool> {
        let gap = Real::rat((&pick.area - Rat::from_integer(r.into())).abs());
        match certified_compare(&gap, &length) {
            Verdict::Undecided => Err(Error::Precision("Jarník comparison undecided".into())),
            v => Ok(v == Verdict::Less),
        }
    };
    Ok(JarnikReport {
        enclosed: pick.interior,
        enclosed_inclusive: pick.total,
        holds: decide(pick.interior)?,
        holds_inclusive: decide(pick.total)?,
        area: pick.area,
        length: length.enclose(&rat(1, 1_000_000_000))?,
    })
}

/// Seen from the origin, p is visible iff gcd(|a|, |b|) = 1.
pub fn visible(p: [i64; 2]) -> Result<bool> {
    if p == [0, 0] {
        return Err(Error::domain("the origin is the observer"));
    }
    Ok(p[0].unsigned_abs().gcd(&p[1].unsigned_abs()) == 1)
}

/// Largest N accepted by [`visible_density`].
pub const DENSITY_CAP: u64 = 100_000_000;

/// Fraction of [1,N]² visible from the origin: (2 Σ_{k≤N} φ(k) − 1) / N².
pub fn visible_density(n: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::domain("N must be positive"));
    }
    if n > DENSITY_CAP {
        return Err(Error::budget(format!("N above {DENSITY_CAP}")));
    }
    let n_us = n as usize;
    let mut phi: Vec<u64> = (0..=n).collect();
    for k in 2..=n_us {
        if phi[k] == k as u64 {
            for m in (k..=n_us).step_by(k) {
                phi[m] -= phi[m] / k as u64;
            }
        }
    }
    let sum: u128 = phi[1..].iter().map(|&v| u128::from(v)).sum();
    let count = 2 * sum - 1;
    Ok(Rat::new(
        Int::from(count),
        Int::from(u128::from(n) * u128::from(n)),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Orchard {
    Blocked,
    /// A primitive direction whose ray misses every tree.
    Escape {
        direction: [i64; 2],
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct OrchardReport {
    #[serde(flatten)]
    pub verdict: Orchard,
    /// Visible lattice points within R, sorted by angle; only these can shade a ray.
    pub trees: Vec<[i64; 2]>,
    /// Blocked: for each tree i, a tree j whose shadow arc extends past the end of i's.
    pub cover: Vec<[usize; 2]>,
    /// Escape: least squared distance from the ray to a tree ahead of the observer.
    #[serde(with = "serde_rat::option", skip_serializing_if = "Option::is_none")]
    pub clearance_sq: Option<Rat>,
}

fn sgn(x: &Int) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// sign(a + b√s), s ≥ 0.
fn sign_surd(a: &Int, b: &Int, s: &Int) -> i32 {
    let sa = sgn(a);
    let sb = if s.is_zero() { 0 } else { sgn(b) };
    if sa == sb || sb == 0 {
        return sa;
    }
    if sa == 0 {
        return sb;
    }
    sa * sgn(&(a * a - b * b * s))
}

/// sign(a + b√s + c√t), s, t ≥ 0.
fn sign_surd2(a: &Int, b: &Int, s: &Int, c: &Int, t: &Int) -> i32 {
    let su = sign_surd(a, b, s);
    let sv = if t.is_zero() { 0 } else { sgn(c) };
    if su == sv || sv == 0 {
        return su;
    }
    if su == 0 {
        return sv;
    }
    // u² − v² = a² + b²s − c²t + 2ab√s
    let d = sign_surd(&(a * a + b * b * s - c * c * t), &(Int::from(2) * a * b), s);
    su * d
}

fn half(p: [i64; 2]) -> u8 {
    u8::from(!(p[1] > 0 || (p[1] == 0 && p[0] > 0)))
}

fn cross(p: [i64; 2], q: [i64; 2]) -> i128 {
    i128::from(p[0]) * i128::from(q[1]) - i128::from(p[1]) * i128::from(q[0])
}

fn dot(p: [i64; 2], q: [i64; 2]) -> i128 {
    i128::from(p[0]) * i128::from(q[0]) + i128::from(p[1]) * i128::from(q[1])
}

fn angle_cmp(p: [i64; 2], q: [i64; 2]) -> Ordering {
    half(p).cmp(&half(q)).then_with(|| 0.cmp(&cross(p, q)))
}

/// Tree radius r = rn/rd, scaled so every test is an integer surd sign.
struct Shade {
    rn: Int,
    rd2: Int,
    rn2: Int,
}

impl Shade {
    /// (|p|² − r²)·rd²
    fn reduced(&self, p: [i64; 2]) -> Int {
        Int::from(dot(p, p)) * &self.rd2 - &self.rn2
    }

    /// Arc of j starts at or before the end of the arc of i (dot > 0 assumed).
    fn starts_before_end(&self, i: [i64; 2], j: [i64; 2]) -> bool {
        if cross(i, j) <= 0 {
            return true;
        }
        // dot + r² ≥ √((P − r²)(Q − r²))
        let lhs = Int::from(dot(i, j)) * &self.rd2 + &self.rn2;
        let prod = self.reduced(i) * self.reduced(j);
        sign_surd(&lhs, &Int::from(-1), &prod) >= 0
    }

    /// Arc of j ends strictly after the end of the arc of i (dot > 0 assumed).
    fn ends_after(&self, i: [i64; 2], j: [i64; 2]) -> bool {
        // cross − r√(Q − r²) + r√(P − r²) > 0
        let a = Int::from(cross(i, j)) * &self.rd2;
        sign_surd2(
            &a,
            &self.rn,
            &self.reduced(i),
            &(-&self.rn),
            &self.reduced(j),
        ) > 0
    }

    /// The ray along u passes at distance > r from every tree in front of the observer.
    fn clearance(&self, u: [i64; 2], trees: &[[i64; 2]]) -> Option<Rat> {
        let uu = Int::from(dot(u, u));
        let mut best: Option<Rat> = None;
        for &p in trees {
            if dot(p, u) <= 0 {
                continue;
            }
            let c = Int::from(cross(p, u));
            let c2 = &c * &c;
            if &c2 * &self.rd2 <= &self.rn2 * &uu {
                return None;
            }
            let d = Rat::new(c2, uu.clone());
            if best.as_ref().is_none_or(|b| &d < b) {
                best = Some(d);
            }
        }
        Some(best.unwrap_or_default())
    }
}

/// Pólya's orchard: trees of radius r at the lattice points 0 < |p| ≤ R. Decides whether
/// every ray from the origin hits a tree, exactly, by checking that each shadow arc's end
/// is overlapped by another arc; otherwise finds a primitive escaping direction.
pub fn orchard_visibility(big_r: &Rat, r: &Rat, budget: &Budget) -> Result<OrchardReport> {
    if big_r <= &rat(1, 1) || !r.is_positive() {
        return Err(Error::domain("need R > 1 and r > 0"));
    }
    if r > &rat(1, 2) {
        return Err(Error::domain(
            "r > 1/2 would let neighbouring trees swallow the view",
        ));
    }
    let r2big = big_r * big_r;
    let reach = crate::exact::floor(big_r);
    let reach = crate::exact::to_i64(&reach)?;
    if reach > 2000 {
        return Err(Error::budget("R above 2000"));
    }
    let mut meter = budget.meter();
    let mut trees = Vec::new();
    for x in -reach..=reach {
        for y in -reach..=reach {
            if (x, y) == (0, 0) || x.unsigned_abs().gcd(&y.unsigned_abs()) != 1 {
                continue;
            }
            if Rat::from_integer(Int::from(x * x + y * y)) <= r2big {
                meter.tick("orchard trees")?;
                trees.push([x, y]);
            }
        }
    }
    trees.sort_by(|a, b| angle_cmp(*a, *b));
    let shade = Shade {
        rn: r.numer().clone(),
        rd2: r.denom() * r.denom(),
        rn2: r.numer() * r.numer(),
    };
    // arcs are at most π/6 wide, so only trees within π/3 can interact
    let near = |p: [i64; 2], q: [i64; 2]| {
        let d = dot(p, q);
        d > 0 && 4 * d * d >= dot(p, p) * dot(q, q)
    };
    let m = trees.len();
    let mut cover = Vec::with_capacity(m);
    let mut open_after = None;
    for i in 0..m {
        let mut found = None;
        for step in 1..m {
            let j = (i + step) % m;
            meter.tick("orchard cover")?;
            if !near(trees[i], trees[j]) {
                break;
            }
            if shade.starts_before_end(trees[i], trees[j]) && shade.ends_after(trees[i], trees[j]) {
                found = Some(j);
                break;
            }
        }
        if found.is_none() {
            // an arc reaching past i's end could also sit clockwise of i
            for step in 1..m {
                let j = (i + m - step) % m;
                meter.tick("orchard cover")?;
                if !near(trees[i], trees[j]) {
                    break;
                }
                if shade.ends_after(trees[i], trees[j]) {
                    found = Some(j);
                    break;
                }
            }
        }
        match found {
            Some(j) => cover.push([i, j]),
            None => {
                open_after = Some(i);
                break;
            }
        }
    }
    let Some(i) = open_after else {
        return Ok(OrchardReport {
            verdict: Orchard::Blocked,
            trees,
            cover,
            clearance_sq: None,
        });
    };
    // the gap right after arc i starts within π/6 of tree i: search mediants of the
    // angular sectors that begin within π/3 of it
    let mut sectors = Vec::new();
    for step in 0..m {
        let k = (i + step) % m;
        if step > 0 && !near(trees[i], trees[k]) {
            break;
        }
        sectors.push((trees[k], trees[(k + 1) % m]));
    }
    let mut level = sectors;
    loop {
        let mut next = Vec::with_capacity(level.len() * 2);
        for (a, b) in level {
            meter.tick("orchard escape search")?;
            let mid = [a[0] + b[0], a[1] + b[1]];
            let g = mid[0].unsigned_abs().gcd(&mid[1].unsigned_abs()) as i64;
            let u = [mid[0] / g, mid[1] / g];
            if let Some(c) = shade.clearance(u, &trees) {
                return Ok(OrchardReport {
                    verdict: Orchard::Escape { direction: u },
                    trees,
                    cover: vec![],
                    clearance_sq: Some(c),
                });
            }
            next.push((a, u));
            next.push((u, b));
        }
        level = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(v: &[[i64; 2]]) -> LatticePolygon {
        LatticePolygon::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pick_examples() {
        let r = pick_count(&lp(&[[0, 0], [1, 0], [1, 1], [0, 1]])).unwrap();
        assert_eq!((r.interior, r.boundary, r.total), (0, 4, 4));
        assert!(r.identity_holds && r.scanned);
        let r = pick_count(&lp(&[[0, 0], [4, 0], [0, 4]])).unwrap();
        assert_eq!((r.interior, r.boundary), (3, 12));
        assert_eq!(r.area, rat(8, 1));
        let r = pick_count(&lp(&[[0, 0], [2, 0], [2, 1]])).unwrap();
        assert_eq!((r.interior, r.boundary), (0, 4));
        // non-convex L shape
        let r = pick_count(&lp(&[[0, 0], [3, 0], [3, 1], [1, 1], [1, 3], [0, 3]])).unwrap();
        assert!(!r.convex && r.identity_holds);
    }

    #[test]
    fn jarnik_examples() {
        let j = jarnik_check(&lp(&[[0, 0], [1, 0], [1, 1], [0, 1]])).unwrap();
        assert!(j.holds && j.enclosed == 0);
        let j = jarnik_check(&lp(&[[0, 0], [10, 0], [10, 10], [0, 10]])).unwrap();
        assert_eq!((j.enclosed, j.enclosed_inclusive), (81, 121));
        assert!(j.holds && j.holds_inclusive);
        let j = jarnik_check(&lp(&[[0, 0], [100, 0], [100, 1]])).unwrap();
        assert!(j.holds);
    }

    #[test]
    fn visibility() {
        assert!(visible([2, 3]).unwrap());
        assert!(!visible([2, 4]).unwrap());
        assert!(visible([1, 0]).unwrap());
        assert!(!visible([0, 5]).unwrap());
        assert_eq!(visible([0, 0]).unwrap_err().kind(), "domain");
        let brute = |n: i64| {
            let c = (1..=n)
                .flat_map(|a| (1..=n).map(move |b| (a, b)))
                .filter(|&(a, b)| crate::exact::gcd_i64(a, b) == 1)
                .count();
            Rat::new(Int::from(c), Int::from(n * n))
        };
        for n in [1, 2, 10, 57] {
            assert_eq!(visible_density(n as u64).unwrap(), brute(n));
        }
        let d = visible_density(1000).unwrap();
        let six_over_pi2 = rat(6079, 10_000);
        assert!((d - six_over_pi2).abs() < rat(5, 1000));
    }

    #[test]
    fn surd_signs() {
        let i = |v: i64| Int::from(v);
        assert_eq!(sign_surd(&i(1), &i(-1), &i(2)), -1);
        assert_eq!(sign_surd(&i(3), &i(-2), &i(2)), 1);
        assert_eq!(sign_surd(&i(2), &i(-1), &i(4)), 0);
        // √2 + √3 − π-free check: 1 + √2 − √5 > 0 since 3 + 2√2 > 5
        assert_eq!(sign_surd2(&i(1), &i(1), &i(2), &i(-1), &i(5)), 1);
        assert_eq!(sign_surd2(&i(0), &i(1), &i(2), &i(-1), &i(2)), 0);
        assert_eq!(sign_surd2(&i(0), &i(1), &i(8), &i(-2), &i(2)), 0);
    }

    #[test]
    fn orchard() {
        let b = Budget::default();
        let o = orchard_visibility(&rat(20, 1), &rat(1, 2), &b).unwrap();
        assert_eq!(o.verdict, Orchard::Blocked);
        assert_eq!(o.cover.len(), o.trees.len());
        let o = orchard_visibility(&rat(2, 1), &rat(1, 100), &b).unwrap();
        let Orchard::Escape { direction } = o.verdict else {
            panic!("expected an escape")
        };
        assert!(o.clearance_sq.unwrap() > rat(1, 10_000));
        assert!(dot(direction, direction) > 4);
        assert_eq!(
            orchard_visibility(&rat(5, 1), &rat(3, 5), &b)
                .unwrap_err()
                .kind(),
            "domain"
        );
    }

    #[test]
    fn orchard_matches_arc_sampling() {
        // a dense set of rational directions must all be blocked when the verdict is Blocked
        let b = Budget::default();
        let r = rat(1, 3);
        let o = orchard_visibility(&rat(6, 1), &r, &b).unwrap();
        let shade = Shade {
            rn: r.numer().clone(),
            rd2: r.denom() * r.denom(),
            rn2: r.numer() * r.numer(),
        };
        let mut escapes = 0;
        for x in -60i64..=60 {
            for y in -60i64..=60 {
                if (x, y) != (0, 0) && shade.clearance([x, y], &o.trees).is_some() {
                    escapes += 1;
                }
            }
        }
        match o.verdict {
            Orchard::Blocked => assert_eq!(escapes, 0),
            Orchard::Escape { direction } => {
                assert!(escapes > 0);
                assert!(shade.clearance(direction, &o.trees).is_some());
            }
        }
    }
}
