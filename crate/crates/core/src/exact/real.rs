use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::constants::{self, MAX_BITS};
use super::RealEnclosure;
use super::{exact_root, factorial, fmt_rat_short, rat_from_int, rat_int, rat_powi, Int, Rat};
use crate::error::{Error, Result};

/// A real number described symbolically so that it can be enclosed to any
/// requested width: rational literals, π, γ, logarithms and ζ values of
/// integers, combined with field operations, square roots and rational powers.
#[derive(Clone, Debug)]
pub struct Real(Arc<Node>);

#[derive(Debug)]
enum Node {
    Lit(Rat),
    Pi,
    EulerGamma,
    Ln(Rat),
    Zeta(u32),
    /// A fixed, non-refinable enclosure supplied by a caller.
    Fixed(RealEnclosure),
    Add(Real, Real),
    Sub(Real, Real),
    Mul(Real, Real),
    Div(Real, Real),
    Neg(Real),
    Sqrt(Real),
    /// x^(num/den), den > 0; the base must be non-negative when den > 1.
    Pow(Real, i64, u32),
}

impl Real {
    fn node(n: Node) -> Real {
        Real(Arc::new(n))
    }

    pub fn rat(x: Rat) -> Real {
        Real::node(Node::Lit(x))
    }

    pub fn int(v: i64) -> Real {
        Real::rat(rat_int(v))
    }

    pub fn frac(n: i64, d: i64) -> Real {
        Real::rat(super::rat(n, d))
    }

    pub fn pi() -> Real {
        Real::node(Node::Pi)
    }

    pub fn euler_gamma() -> Real {
        Real::node(Node::EulerGamma)
    }

    /// ln(x) for a positive rational x.
    pub fn ln(x: Rat) -> Real {
        Real::node(Node::Ln(x))
    }

    pub fn zeta(n: u32) -> Real {
        Real::node(Node::Zeta(n))
    }

    pub fn fixed(e: RealEnclosure) -> Real {
        Real::node(Node::Fixed(e))
    }

    pub fn sqrt(&self) -> Real {
        Real::node(Node::Sqrt(self.clone()))
    }

    pub fn powi(&self, e: i64) -> Real {
        Real::node(Node::Pow(self.clone(), e, 1))
    }

    /// x^e for a rational exponent e.
    pub fn pow(&self, e: &Rat) -> Real {
        let num = e.numer().to_i64().expect("small exponent numerator");
        let den = e.denom().to_u32().expect("small exponent denominator");
        Real::node(Node::Pow(self.clone(), num, den))
    }

    pub fn abs(&self) -> Real {
        // |x| = sqrt(x^2); exact for rationals, tight enough elsewhere
        self.powi(2).sqrt()
    }

    /// Γ(k/2) for a positive integer k, expressed exactly as a rational multiple
    /// of 1 or of √π.
    pub fn gamma_half(k: u32) -> Real {
        assert!(k >= 1, "gamma_half needs k >= 1");
        if k.is_multiple_of(2) {
            Real::rat(rat_from_int(&factorial(u64::from(k / 2 - 1))))
        } else {
            // Γ(m + 1/2) = (2m)! / (4^m m!) · √π
            let m = u64::from((k - 1) / 2);
            let c = Rat::new(
                factorial(2 * m),
                num_traits::pow(Int::from(4), m as usize) * factorial(m),
            );
            Real::rat(c) * Real::pi().sqrt()
        }
    }

    /// Volume of the unit ball in dimension d: π^(d/2) / Γ(d/2 + 1).
    pub fn unit_ball_volume(d: u32) -> Real {
        Real::pi().pow(&Rat::new(Int::from(d), Int::from(2))) / Real::gamma_half(d + 2)
    }

    /// Exact rational value, when the expression is provably rational by
    /// construction (literals, field operations, perfect powers).
    pub fn exact(&self) -> Option<Rat> {
        match &*self.0 {
            Node::Lit(x) => Some(x.clone()),
            Node::Ln(x) if x.is_one() => Some(Rat::zero()),
            Node::Fixed(e) if e.is_exact() => Some(e.lo.clone()),
            Node::Pi | Node::EulerGamma | Node::Ln(_) | Node::Zeta(_) | Node::Fixed(_) => None,
            Node::Add(a, b) => Some(a.exact()? + b.exact()?),
            Node::Sub(a, b) => Some(a.exact()? - b.exact()?),
            Node::Mul(a, b) => {
                // 0 · anything is 0
                match (a.exact(), b.exact()) {
                    (Some(x), _) if x.is_zero() => Some(x),
                    (_, Some(y)) if y.is_zero() => Some(y),
                    (Some(x), Some(y)) => Some(x * y),
                    _ => None,
                }
            }
            Node::Div(a, b) => {
                let d = b.exact()?;
                if d.is_zero() {
                    return None;
                }
                Some(a.exact()? / d)
            }
            Node::Neg(a) => Some(-a.exact()?),
            Node::Sqrt(a) => super::exact_sqrt(&a.exact()?),
            Node::Pow(a, num, den) => {
                let x = a.exact()?;
                if x.is_zero() && *num < 0 {
                    return None;
                }
                let r = if *den == 1 { x } else { exact_root(&x, *den)? };
                if *den > 1 && r.is_negative() {
                    return None;
                }
                Some(rat_powi(&r, *num))
            }
        }
    }

    /// Evaluate at working precision `p` bits.
    pub(crate) fn eval(&self, p: u32) -> Result<RealEnclosure> {
        if let Some(x) = self.exact_leaf() {
            return Ok(RealEnclosure::exact(x));
        }
        let q = p + 8;
        Ok(match &*self.0 {
            Node::Lit(x) => RealEnclosure::exact(x.clone()),
            Node::Pi => constants::pi(q),
            Node::EulerGamma => constants::euler_gamma(),
            Node::Ln(x) => constants::ln(x, q)?,
            Node::Zeta(n) => constants::zeta(*n, q)?,
            Node::Fixed(e) => e.clone(),
            Node::Add(a, b) => a.eval(q)?.add(&b.eval(q)?).round_out(q),
            Node::Sub(a, b) => a.eval(q)?.sub(&b.eval(q)?).round_out(q),
            Node::Mul(a, b) => {
                let x = a.eval(q)?;
                let y = b.eval(q)?;
                x.mul(&y, q)
            }
            Node::Div(a, b) => a.eval(q)?.div(&b.eval(q)?, q)?,
            Node::Neg(a) => a.eval(p)?.neg(),
            Node::Sqrt(a) => {
                if let Some(x) = a.exact() {
                    if let Some(s) = super::exact_sqrt(&x) {
                        return Ok(RealEnclosure::exact(s));
                    }
                }
                a.eval(q)?.sqrt(q)?
            }
            Node::Pow(a, num, den) => {
                let x = a.eval(q + 16)?;
                let rooted = if *den == 1 { x } else { x.root(*den, q + 16)? };
                let k = num.unsigned_abs() as u32;
                let powed = rooted.powi(k, q + 16);
                if *num < 0 {
                    powed.recip(q)?
                } else {
                    powed.round_out(q)
                }
            }
        })
    }

    fn exact_leaf(&self) -> Option<Rat> {
        match &*self.0 {
            Node::Lit(x) => Some(x.clone()),
            Node::Pi | Node::EulerGamma | Node::Ln(_) | Node::Zeta(_) | Node::Fixed(_) => None,
            _ => self.exact(),
        }
    }

    /// Encloses the value within `max_width`, refining precision as needed.
    pub fn enclose(&self, max_width: &Rat) -> Result<RealEnclosure> {
        if !max_width.is_positive() {
            return Err(Error::domain("max_width must be positive"));
        }
        let mut p = 64;
        let mut prev: Option<Rat> = None;
        loop {
            let e = self.eval(p)?;
            let w = e.width();
            if &w <= max_width {
                return Ok(e);
            }
            // Fixed leaves and saturating series stop improving under refinement.
            let stalled = prev.is_some_and(|pw| &w * rat_int(2) > pw);
            if p >= MAX_BITS || stalled {
                return Err(Error::PrecisionExhausted);
            }
            prev = Some(w);
            p = (p * 2).min(MAX_BITS);
        }
    }

    /// A quick enclosure at 64 bits, for previews and coarse screening.
    pub fn quick(&self) -> Result<RealEnclosure> {
        self.eval(64)
    }

    /// Widest fixed (non-refinable) leaf, if any.
    pub(crate) fn fixed_width(&self) -> Option<Rat> {
        match &*self.0 {
            Node::Fixed(e) => Some(e.width()),
            Node::Lit(_) | Node::Pi | Node::EulerGamma | Node::Ln(_) | Node::Zeta(_) => None,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                match (a.fixed_width(), b.fixed_width()) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (x, y) => x.or(y),
                }
            }
            Node::Neg(a) | Node::Sqrt(a) | Node::Pow(a, _, _) => a.fixed_width(),
        }
    }
}

impl From<Rat> for Real {
    fn from(x: Rat) -> Self {
        Real::rat(x)
    }
}

impl From<&Rat> for Real {
    fn from(x: &Rat) -> Self {
        Real::rat(x.clone())
    }
}

impl From<i64> for Real {
    fn from(x: i64) -> Self {
        Real::int(x)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl $trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real::node(Node::$variant(self, rhs))
            }
        }
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real::node(Node::$variant(self.clone(), rhs.clone()))
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real::node(Node::$variant(self.clone(), rhs))
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real::node(Node::$variant(self, rhs.clone()))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::node(Node::Neg(self))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Lit(x) => write!(f, "{}", fmt_rat_short(x)),
            Node::Pi => write!(f, "pi"),
            Node::EulerGamma => write!(f, "gamma"),
            Node::Ln(x) => write!(f, "ln({})", fmt_rat_short(x)),
            Node::Zeta(n) => write!(f, "zeta({n})"),
            Node::Fixed(e) => write!(f, "{e}"),
            Node::Add(a, b) => write!(f, "({a} + {b})"),
            Node::Sub(a, b) => write!(f, "({a} - {b})"),
            Node::Mul(a, b) => write!(f, "{a}*{b}"),
            Node::Div(a, b) => write!(f, "{a}/({b})"),
            Node::Neg(a) => write!(f, "-{a}"),
            Node::Sqrt(a) => write!(f, "sqrt({a})"),
            Node::Pow(a, n, 1) => write!(f, "({a})^{n}"),
            Node::Pow(a, n, d) => write!(f, "({a})^({n}/{d})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rat, rat, ten_pow_neg};

    #[test]
    fn gamma_half_values() {
        assert_eq!(Real::gamma_half(2).exact(), Some(rat_int(1)));
        assert_eq!(Real::gamma_half(6).exact(), Some(rat_int(2)));
        // Γ(5/2) = (3/4)√π ≈ 1.32934038817913702
        let g = Real::gamma_half(5).enclose(&ten_pow_neg(15)).unwrap();
        assert!(g.lo > parse_rat("1.3293403881791").unwrap());
        assert!(g.hi < parse_rat("1.3293403881792").unwrap());
    }

    #[test]
    fn ball_volume_three() {
        let v = Real::unit_ball_volume(3).enclose(&ten_pow_neg(12)).unwrap();
        let four_thirds_pi = parse_rat("4.18879020478639").unwrap();
        assert!((&v.lo - &four_thirds_pi).abs() < ten_pow_neg(12));
    }

    #[test]
    fn exact_powers() {
        let x = Real::rat(rat(4, 9)).pow(&rat(3, 2));
        assert_eq!(x.exact(), Some(rat(8, 27)));
        assert_eq!(Real::int(2).sqrt().exact(), None);
        assert_eq!(
            (Real::int(2).sqrt() * Real::int(0)).exact(),
            Some(rat_int(0))
        );
    }

    #[test]
    fn fixed_leaf_saturates() {
        let e = RealEnclosure::new(rat(1, 3), rat(1, 2));
        let r = Real::fixed(e) + Real::int(1);
        assert_eq!(r.enclose(&ten_pow_neg(3)), Err(Error::PrecisionExhausted));
        assert_eq!(r.fixed_width(), Some(rat(1, 6)));
    }
}
