use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ceil, floor, fmt_rat, Int, Rat};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints enclosing a real number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealEnclosure {
    #[serde(with = "super::serde_rat")]
    pub lo: Rat,
    #[serde(with = "super::serde_rat")]
    pub hi: Rat,
}

impl RealEnclosure {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "inverted enclosure");
        RealEnclosure { lo, hi }
    }

    pub fn exact(x: Rat) -> Self {
        RealEnclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_enclosure(&self, other: &RealEnclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &RealEnclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(Int::from(2))
    }

    /// Intersection of two enclosures of the same quantity.
    pub fn intersect(&self, other: &RealEnclosure) -> Option<RealEnclosure> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RealEnclosure { lo, hi })
    }

    /// Outward rounding of both endpoints onto the grid 10^-digits; the result
    /// still encloses everything the input did.
    pub fn coarsen(&self, digits: u32) -> RealEnclosure {
        let scale = Rat::from_integer(num_traits::pow(Int::from(10), digits as usize));
        let lo = Rat::new(floor(&(&self.lo * &scale)), scale.to_integer());
        let hi = Rat::new(ceil(&(&self.hi * &scale)), scale.to_integer());
        RealEnclosure { lo, hi }
    }

    /// "lo..hi" with canonical rationals; used in CSV cells.
    pub fn to_pair_string(&self) -> String {
        format!("{}..{}", fmt_rat(&self.lo), fmt_rat(&self.hi))
    }

    /// Lossy decimal preview, for human-facing messages only.
    pub fn approx(&self) -> f64 {
        super::rat_to_f64(&self.midpoint())
    }

    // Arithmetic at working precision `p` bits (absolute). Every result is rounded
    // outward to the dyadic grid 2^-p so endpoint sizes stay bounded.

    pub(crate) fn round_out(&self, p: u32) -> RealEnclosure {
        RealEnclosure {
            lo: round_down(&self.lo, p),
            hi: round_up(&self.hi, p),
        }
    }

    pub(crate) fn add(&self, o: &RealEnclosure) -> RealEnclosure {
        RealEnclosure {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub(crate) fn sub(&self, o: &RealEnclosure) -> RealEnclosure {
        RealEnclosure {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub(crate) fn neg(&self) -> RealEnclosure {
        RealEnclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub(crate) fn mul(&self, o: &RealEnclosure, p: u32) -> RealEnclosure {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RealEnclosure { lo, hi }.round_out(p)
    }

    pub(crate) fn recip(&self, p: u32) -> Result<RealEnclosure> {
        if self.lo.is_positive() || self.hi.is_negative() {
            Ok(RealEnclosure {
                lo: self.hi.recip(),
                hi: self.lo.recip(),
            }
            .round_out(p))
        } else {
            Err(Error::Precision(
                "division by an enclosure containing zero".into(),
            ))
        }
    }

    pub(crate) fn div(&self, o: &RealEnclosure, p: u32) -> Result<RealEnclosure> {
        if o.is_exact() && !o.lo.is_zero() {
            let r = o.lo.recip();
            let a = &self.lo * &r;
            let b = &self.hi * &r;
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            return Ok(RealEnclosure { lo, hi }.round_out(p));
        }
        Ok(self.mul(&o.recip(p + 8)?, p))
    }

    pub(crate) fn sqrt(&self, p: u32) -> Result<RealEnclosure> {
        if self.hi.is_negative() {
            return Err(Error::domain("square root of a negative quantity"));
        }
        let lo = if self.lo.is_positive() {
            root_down(&self.lo, 2, p)
        } else {
            Rat::zero()
        };
        let hi = root_up(&self.hi, 2, p);
        Ok(RealEnclosure { lo, hi })
    }

    pub(crate) fn powi(&self, e: u32, p: u32) -> RealEnclosure {
        if e == 0 {
            return RealEnclosure::exact(Rat::one());
        }
        let a = num_traits::pow(self.lo.clone(), e as usize);
        let b = num_traits::pow(self.hi.clone(), e as usize);
        let (mut lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if e.is_multiple_of(2) && !self.lo.is_positive() && !self.hi.is_negative() {
            lo = Rat::zero();
        }
        RealEnclosure { lo, hi }.round_out(p)
    }

    /// k-th root of a non-negative enclosure.
    pub(crate) fn root(&self, k: u32, p: u32) -> Result<RealEnclosure> {
        if self.hi.is_negative() {
            return Err(Error::domain("root of a negative quantity"));
        }
        let lo = if self.lo.is_positive() {
            root_down(&self.lo, k, p)
        } else {
            Rat::zero()
        };
        Ok(RealEnclosure {
            lo,
            hi: root_up(&self.hi, k, p),
        })
    }
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rat(&self.lo), fmt_rat(&self.hi))
    }
}

fn two_pow(p: u32) -> Int {
    Int::one() << p as usize
}

pub(crate) fn round_down(x: &Rat, p: u32) -> Rat {
    if x.denom().is_one() {
        return x.clone();
    }
    let s = two_pow(p);
    Rat::new(floor(&(x * Rat::from_integer(s.clone()))), s)
}

pub(crate) fn round_up(x: &Rat, p: u32) -> Rat {
    if x.denom().is_one() {
        return x.clone();
    }
    let s = two_pow(p);
    Rat::new(ceil(&(x * Rat::from_integer(s.clone()))), s)
}

/// Largest multiple of 2^-p that is ≤ x^(1/k), for x ≥ 0.
pub(crate) fn root_down(x: &Rat, k: u32, p: u32) -> Rat {
    let scale = two_pow(p * k);
    let n = floor(&(x * Rat::from_integer(scale)));
    Rat::new(n.nth_root(k), two_pow(p))
}

/// Smallest multiple of 2^-p that is ≥ x^(1/k), for x ≥ 0.
pub(crate) fn root_up(x: &Rat, k: u32, p: u32) -> Rat {
    let scale = two_pow(p * k);
    let n = ceil(&(x * Rat::from_integer(scale)));
    let mut r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) < n {
        r += 1;
    }
    Rat::new(r, two_pow(p))
}
