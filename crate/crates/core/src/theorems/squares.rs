use serde::Serialize;

use super::{minkowski_point, Check, Mode, Relation, TheoremCertificate};
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::exact::{isqrt_u64, rat_int};
use crate::lattice::Lattice;

/// Largest input accepted by [`four_square`].
pub const FOUR_SQUARE_CAP: u64 = 1_000_000_000;

/// Below this bound q is computed as ((p−1)/2)! mod p.
const WILSON_LIMIT: u64 = 100_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Miller–Rabin with a base set that is deterministic on 64-bit integers,
/// preceded by trial division by small primes.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// q with q² ≡ −1 (mod p) for a prime p ≡ 1 (mod 4).
pub fn sqrt_minus_one(p: u64) -> u64 {
    let q = if p < WILSON_LIMIT {
        // Wilson: ((p−1)/2)!² ≡ −1
        (1..=(p - 1) / 2).fold(1u64, |acc, k| mul_mod(acc, k, p))
    } else {
        // a^((p−1)/4) for the least quadratic non-residue a
        let a = (2..p)
            .find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1)
            .expect("a non-residue exists");
        pow_mod(a, (p - 1) / 4, p)
    };
    debug_assert_eq!(mul_mod(q, q, p), p - 1);
    q
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoSquare {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    /// q² ≡ −1 (mod p), defining the lattice (q,1)ℤ + (p,0)ℤ.
    pub q: u64,
    pub certificate: TheoremCertificate,
}

/// p = a² + b² with a ≤ b, via a lattice point of (q,1)ℤ + (p,0)ℤ in the disc x² + y² < 2p.
pub fn two_square(p: u64) -> Result<TwoSquare> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p % 4 != 1 {
        return Err(Error::domain(format!(
            "{p} is not 1 mod 4, so it is not a sum of two squares (r(p) = 0)"
        )));
    }
    if p > (1 << 40) {
        return Err(Error::budget("p above 2^40"));
    }
    let q = sqrt_minus_one(p);
    let l = Lattice::from_int_vectors(&[&[q as i64, 1], &[p as i64, 0]])?;
    let disc = ConvexBody::ball(2, rat_int(2 * p as i64))?;
    let (pt, mut cert) = minkowski_point(&l, &disc, Mode::Strict)?;
    let coords: Vec<u64> = pt
        .ambient
        .iter()
        .map(|c| {
            c.to_integer()
                .magnitude()
                .try_into()
                .expect("coordinate below 2^21")
        })
        .collect();
    let (a, b) = (coords[0].min(coords[1]), coords[0].max(coords[1]));
    cert.statement = "two-square";
    cert.verification.push(Check::rational(
        "a^2 + b^2 vs p",
        &rat_int((a * a + b * b) as i64),
        Relation::Le,
        &rat_int(p as i64),
    ));
    cert.verification.push(Check::rational(
        "a^2 + b^2 vs p",
        &rat_int((a * a + b * b) as i64),
        Relation::Ge,
        &rat_int(p as i64),
    ));
    Ok(TwoSquare {
        p,
        a,
        b,
        q,
        certificate: cert,
    })
}

/// m = a² + b² + c² + d² with a ≥ b ≥ c ≥ d ≥ 0: greedy largest squares with backtracking.
pub fn four_square(m: u64) -> Result<[u64; 4]> {
    if m > FOUR_SQUARE_CAP {
        return Err(Error::budget(format!("{m} above cap {FOUR_SQUARE_CAP}")));
    }
    let mut out = [0u64; 4];
    if fill(m, 0, isqrt_u64(m), &mut out) {
        Ok(out)
    } else {
        Err(Error::NotFound(format!(
            "no four-square form of {m} (defect)"
        )))
    }
}

fn fill(rest: u64, depth: usize, cap: u64, out: &mut [u64; 4]) -> bool {
    if depth == 3 {
        let r = isqrt_u64(rest);
        if r * r == rest && r <= cap {
            out[3] = r;
            return true;
        }
        return false;
    }
    let slots = (4 - depth) as u64;
    let mut a = isqrt_u64(rest).min(cap);
    loop {
        // the remaining slots hold at most `slots` copies of a²
        if a * a * slots < rest {
            return false;
        }
        out[depth] = a;
        if fill(rest - a * a, depth + 1, a, out) {
            return true;
        }
        if a == 0 {
            return false;
        }
        a -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
        assert!(is_prime(30449));
        assert!(!is_prime(3215031751));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn two_square_examples() {
        let t = two_square(13).unwrap();
        assert_eq!((t.a, t.b), (2, 3));
        assert!(t.certificate.is_valid());
        let t = two_square(5).unwrap();
        assert_eq!((t.a, t.b), (1, 2));
        let t = two_square(30449).unwrap();
        assert_eq!((t.a, t.b), (100, 143));
        assert_eq!(two_square(7).unwrap_err().kind(), "domain");
        assert_eq!(two_square(21).unwrap_err().kind(), "domain");
    }

    #[test]
    fn non_residue_branch() {
        let p = 1_000_000_009;
        assert_eq!(p % 4, 1);
        let q = sqrt_minus_one(p);
        assert_eq!(mul_mod(q, q, p), p - 1);
        let t = two_square(p).unwrap();
        assert_eq!(t.a * t.a + t.b * t.b, p);
    }

    #[test]
    fn four_squares() {
        assert_eq!(four_square(0).unwrap(), [0, 0, 0, 0]);
        assert_eq!(four_square(7).unwrap(), [2, 1, 1, 1]);
        let w = four_square(2016).unwrap();
        assert_eq!(w.iter().map(|v| v * v).sum::<u64>(), 2016);
        assert_eq!(
            four_square(FOUR_SQUARE_CAP + 1).unwrap_err().kind(),
            "budget"
        );
    }
}
