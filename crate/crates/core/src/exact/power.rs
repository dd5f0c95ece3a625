use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{fmt_rat_short, rat_powi, Int, Rat, Real};

/// A positive real of the form ∏ bᵢ^eᵢ with positive rational bases and rational
/// exponents, e.g. 2^(1/3) or (4/3)^(1/2). Products, quotients, rational powers
/// and comparisons are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerProduct {
    factors: Vec<(Rat, Rat)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct { factors: vec![] }
    }

    pub fn rat(x: Rat) -> Self {
        Self::power(x, Rat::one())
    }

    /// base^exp. Panics on a non-positive base.
    pub fn power(base: Rat, exp: Rat) -> Self {
        assert!(base.is_positive(), "power product bases must be positive");
        let mut p = PowerProduct {
            factors: vec![(base, exp)],
        };
        p.normalize();
        p
    }

    pub fn root(x: Rat, k: i64) -> Self {
        Self::power(x, Rat::new(Int::one(), Int::from(k)))
    }

    pub fn mul(&self, other: &PowerProduct) -> PowerProduct {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        let mut p = PowerProduct { factors: f };
        p.normalize();
        p
    }

    pub fn recip(&self) -> PowerProduct {
        PowerProduct {
            factors: self.factors.iter().map(|(b, e)| (b.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &PowerProduct) -> PowerProduct {
        self.mul(&other.recip())
    }

    pub fn pow(&self, e: &Rat) -> PowerProduct {
        let mut p = PowerProduct {
            factors: self
                .factors
                .iter()
                .map(|(b, x)| (b.clone(), x * e))
                .collect(),
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let mut out: Vec<(Rat, Rat)> = Vec::new();
        for (b, e) in self.factors.drain(..) {
            if b.is_one() || e == Rat::from_integer(Int::from(0)) {
                continue;
            }
            match out.iter_mut().find(|(ob, _)| *ob == b) {
                Some((_, oe)) => *oe += e,
                None => out.push((b, e)),
            }
        }
        out.retain(|(_, e)| *e != Rat::from_integer(Int::from(0)));
        out.sort_by(|a, b| a.0.cmp(&b.0));
        self.factors = out;
    }

    /// Least common denominator of all exponents.
    fn exponent_lcm(&self) -> Int {
        self.factors
            .iter()
            .fold(Int::one(), |acc, (_, e)| acc.lcm(e.denom()))
    }

    /// Exact value of self^k for k = lcm of exponent denominators (a rational),
    /// together with k.
    pub fn rational_power(&self) -> (Rat, u64) {
        let l = self.exponent_lcm();
        let lk = l.to_u64().expect("small exponent denominators");
        let mut v = Rat::one();
        for (b, e) in &self.factors {
            let k = (e * Rat::from_integer(l.clone())).to_integer();
            v *= rat_powi(b, k.to_i64().expect("small exponent"));
        }
        (v, lk)
    }

    /// Exact rational value if the product is rational.
    pub fn exact(&self) -> Option<Rat> {
        let (v, k) = self.rational_power();
        super::exact_root(&v, k as u32)
    }

    /// Exact ordering of two power products.
    pub fn cmp_exact(&self, other: &PowerProduct) -> Ordering {
        let (v, _) = self.div(other).rational_power();
        v.cmp(&Rat::one())
    }

    pub fn to_real(&self) -> Real {
        self.factors.iter().fold(Real::int(1), |acc, (b, e)| {
            acc * Real::rat(b.clone()).pow(e)
        })
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(b, e)| {
                if e.is_one() {
                    fmt_rat_short(b)
                } else {
                    format!("({})^({})", fmt_rat_short(b), fmt_rat_short(e))
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn gamma_values_order() {
        let g3 = PowerProduct::root(rat_int(2), 3);
        let printed = PowerProduct::root(rat_int(2), 8);
        assert_eq!(g3.cmp_exact(&printed), Ordering::Greater);
        let g4 = PowerProduct::root(rat_int(2), 2);
        // γ3^(3/2) = √2
        assert_eq!(g3.pow(&rat(3, 2)).cmp_exact(&g4), Ordering::Equal);
    }

    #[test]
    fn rational_power_of_hexagonal_gamma() {
        // 2/√3 squared is 4/3
        let g2 = PowerProduct::rat(rat_int(2)).div(&PowerProduct::root(rat_int(3), 2));
        assert_eq!(g2.rational_power(), (rat(4, 3), 2));
        assert_eq!(g2.exact(), None);
        assert_eq!(PowerProduct::root(rat_int(4), 2).exact(), Some(rat_int(2)));
    }
}
