use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use super::interval::{round_down, round_up};
use super::{exact_sqrt, parse_rat, rat_int, Int, Rat, RealEnclosure};
use crate::error::{Error, Result};

/// Working precision cap in bits; requests finer than 2^-MAX_BITS are refused.
pub(crate) const MAX_BITS: u32 = 1 << 15;

/// Euler–Mascheroni constant to 50 decimal places; the enclosure adds ±10^-50.
pub const EULER_GAMMA_DIGITS: &str = "0.57721566490153286060651209008240243104215933593992";

/// π via Machin's formula 16·atan(1/5) − 4·atan(1/239).
pub(crate) fn pi(p: u32) -> RealEnclosure {
    static CACHE: OnceLock<Mutex<Option<(u32, RealEnclosure)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    if let Some((cp, e)) = cache.lock().unwrap().as_ref() {
        if *cp >= p {
            return e.round_out(p);
        }
    }
    let g = p + 16;
    let a = atan_inv(5, g);
    let b = atan_inv(239, g);
    let v = RealEnclosure {
        lo: rat_int(16) * &a.lo - rat_int(4) * &b.hi,
        hi: rat_int(16) * &a.hi - rat_int(4) * &b.lo,
    };
    *cache.lock().unwrap() = Some((g, v.clone()));
    v.round_out(p)
}

/// atan(1/m) for integer m ≥ 2 via the alternating series with remainder bound.
fn atan_inv(m: u32, p: u32) -> RealEnclosure {
    let m = Int::from(m);
    let m2 = &m * &m;
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    let mut pow = m.clone(); // m^(2k+1)
    let eps = Rat::new(Int::one(), Int::one() << p as usize);
    let mut k: u64 = 0;
    loop {
        let term = Rat::new(Int::one(), &pow * Int::from(2 * k + 1));
        if term < eps {
            // Alternating with decreasing terms: the tail is bounded by this term.
            lo -= &term;
            hi += &term;
            break;
        }
        if k.is_multiple_of(2) {
            lo += round_down(&term, p);
            hi += round_up(&term, p);
        } else {
            lo -= round_up(&term, p);
            hi -= round_down(&term, p);
        }
        pow *= &m2;
        k += 1;
    }
    RealEnclosure { lo, hi }
}

/// Σ_{j≥0} z^(2j+1)/(2j+1) for rational 0 ≤ z ≤ 1/2.
fn atanh_series(z: &Rat, p: u32) -> RealEnclosure {
    if z.is_zero() {
        return RealEnclosure::exact(Rat::zero());
    }
    let z2 = z * z;
    let eps = Rat::new(Int::one(), Int::one() << p as usize);
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    let mut pw_lo = z.clone();
    let mut pw_hi = z.clone();
    let mut j: u64 = 0;
    loop {
        let d = rat_int((2 * j + 1) as i64);
        let t_exact = &pw_hi / &d;
        if t_exact < eps {
            // Positive tail dominated by a geometric series: ≤ term / (1 − z²).
            hi += round_up(&(&t_exact / (Rat::one() - &z2)), p);
            break;
        }
        lo += round_down(&(&pw_lo / &d), p);
        hi += round_up(&t_exact, p);
        pw_lo = round_down(&(&pw_lo * &z2), p + 8);
        pw_hi = round_up(&(&pw_hi * &z2), p + 8);
        j += 1;
    }
    RealEnclosure { lo, hi }
}

fn ln2(p: u32) -> RealEnclosure {
    static CACHE: OnceLock<Mutex<Option<(u32, RealEnclosure)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    if let Some((cp, e)) = cache.lock().unwrap().as_ref() {
        if *cp >= p {
            return e.round_out(p);
        }
    }
    let g = p + 8;
    let s = atanh_series(&Rat::new(Int::one(), Int::from(3)), g);
    let v = RealEnclosure {
        lo: &s.lo * rat_int(2),
        hi: &s.hi * rat_int(2),
    };
    *cache.lock().unwrap() = Some((g, v.clone()));
    v.round_out(p)
}

/// Natural logarithm of a positive rational.
pub(crate) fn ln(r: &Rat, p: u32) -> Result<RealEnclosure> {
    if !r.is_positive() {
        return Err(Error::domain("logarithm of a non-positive rational"));
    }
    if r.is_one() {
        return Ok(RealEnclosure::exact(Rat::zero()));
    }
    // r = 2^k · m with 1 ≤ m < 2
    let k = r.numer().bits() as i64 - r.denom().bits() as i64;
    let mut m = r * super::rat_powi(&rat_int(2), -k);
    let mut k = k;
    while m >= rat_int(2) {
        m /= rat_int(2);
        k += 1;
    }
    while m < Rat::one() {
        m *= rat_int(2);
        k -= 1;
    }
    let g = p + 16;
    let z = (&m - Rat::one()) / (&m + Rat::one());
    let s = atanh_series(&z, g);
    let l2 = ln2(g + 64);
    let kr = rat_int(k);
    let (klo, khi) = if k >= 0 {
        (&kr * &l2.lo, &kr * &l2.hi)
    } else {
        (&kr * &l2.hi, &kr * &l2.lo)
    };
    Ok(RealEnclosure {
        lo: klo + &s.lo * rat_int(2),
        hi: khi + &s.hi * rat_int(2),
    }
    .round_out(p))
}

/// ζ(n) for n ≥ 2: partial sum plus two-sided integral bounds on the tail.
pub(crate) fn zeta(n: u32, p: u32) -> Result<RealEnclosure> {
    if n < 2 {
        return Err(Error::domain("zeta(n) requires n >= 2"));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), RealEnclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&(n, p)) {
        return Ok(e.clone());
    }
    // Tail width is O(N^-(n+1)); beyond 2^14 terms the partial sum gets expensive,
    // so precision saturates there.
    let want = (p + 4).div_ceil(n + 1).min(14);
    let terms: u64 = 1u64 << want.max(4);
    let g = p + 20;
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    for k in 1..=terms {
        let t = Rat::new(Int::one(), num_traits::pow(Int::from(k), n as usize));
        lo += round_down(&t, g);
        hi += round_up(&t, g);
    }
    let nm1 = rat_int(n as i64 - 1);
    let big_n1 = rat_int(terms as i64 + 1);
    let half = Rat::new(Int::one(), Int::from(2));
    let tail_lo = super::rat_powi(&big_n1, 1 - n as i64) / &nm1
        + super::rat_powi(&big_n1, -(n as i64)) * &half;
    let tail_hi = super::rat_powi(&(rat_int(terms as i64) + &half), 1 - n as i64) / &nm1;
    let e = RealEnclosure {
        lo: lo + round_down(&tail_lo, g),
        hi: hi + round_up(&tail_hi, g),
    }
    .round_out(p);
    cache.lock().unwrap().insert((n, p), e.clone());
    Ok(e)
}

pub(crate) fn euler_gamma() -> RealEnclosure {
    static G: OnceLock<RealEnclosure> = OnceLock::new();
    G.get_or_init(|| {
        let mid = parse_rat(EULER_GAMMA_DIGITS).expect("constant parses");
        let eps = super::ten_pow_neg(50);
        RealEnclosure {
            lo: &mid - &eps,
            hi: &mid + &eps,
        }
    })
    .clone()
}

fn bits_for_width(max_width: &Rat) -> Result<u32> {
    if !max_width.is_positive() {
        return Err(Error::domain("max_width must be positive"));
    }
    // 2^-p ≤ max_width / 16
    let p = (max_width.denom().bits() as i64 - max_width.numer().bits() as i64 + 6).max(8);
    if p > MAX_BITS as i64 {
        return Err(Error::PrecisionExhausted);
    }
    Ok(p as u32)
}

/// Enclosure of π with width ≤ `max_width`.
pub fn enclose_pi(max_width: &Rat) -> Result<RealEnclosure> {
    let p = bits_for_width(max_width)?;
    let e = pi(p);
    debug_assert!(&e.width() <= max_width);
    Ok(e)
}

/// Enclosure of √r with width ≤ `max_width`; exact when r is a rational square.
pub fn enclose_sqrt(r: &Rat, max_width: &Rat) -> Result<RealEnclosure> {
    if r.is_negative() {
        return Err(Error::domain("square root of a negative rational"));
    }
    if let Some(s) = exact_sqrt(r) {
        return Ok(RealEnclosure::exact(s));
    }
    let p = bits_for_width(max_width)?;
    RealEnclosure::exact(r.clone()).sqrt(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ten_pow_neg};

    #[test]
    fn pi_nested_refinement() {
        let a = enclose_pi(&ten_pow_neg(6)).unwrap();
        let b = enclose_pi(&ten_pow_neg(30)).unwrap();
        assert!(a.contains_enclosure(&b));
        assert!(b.width() <= ten_pow_neg(30));
    }

    #[test]
    fn ln_values() {
        let l = ln(&rat_int(10), 80).unwrap();
        // ln 10 = 2.302585092994045684...
        assert!(l.lo > parse_rat("2.302585092994045684017").unwrap());
        assert!(l.hi < parse_rat("2.302585092994045684018").unwrap());
        let h = ln(&rat(1, 2), 80).unwrap();
        assert!(h.lo > parse_rat("-0.693147180559945309418").unwrap());
        assert!(h.hi < parse_rat("-0.693147180559945309417").unwrap());
    }

    #[test]
    fn zeta_three_digits() {
        // Apéry's constant 1.2020569031595942853997...
        let z = zeta(3, 60).unwrap();
        assert!(z.contains(&parse_rat("1.2020569031595942853997").unwrap()));
    }

    #[test]
    fn width_below_cap_is_refused() {
        let tiny = Rat::new(Int::one(), Int::one() << (MAX_BITS as usize + 10));
        assert_eq!(enclose_pi(&tiny), Err(Error::PrecisionExhausted));
    }
}
