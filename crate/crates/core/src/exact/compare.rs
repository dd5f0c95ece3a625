use std::cmp::Ordering;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::constants::MAX_BITS;
use super::{ten_pow_neg, Rat, Real};

/// Outcome of a certified comparison. `Less`, `Equal` and `Greater` are proofs;
/// `Equal` is only ever reported when both sides are exactly rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Less,
    Equal,
    Greater,
    Undecided,
}

impl Verdict {
    pub fn is_decided(self) -> bool {
        self != Verdict::Undecided
    }

    /// Certified `a ≤ b`.
    pub fn le(self) -> bool {
        matches!(self, Verdict::Less | Verdict::Equal)
    }

    /// Certified `a ≥ b`.
    pub fn ge(self) -> bool {
        matches!(self, Verdict::Greater | Verdict::Equal)
    }

    pub fn reversed(self) -> Verdict {
        match self {
            Verdict::Less => Verdict::Greater,
            Verdict::Greater => Verdict::Less,
            v => v,
        }
    }
}

impl From<Ordering> for Verdict {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Verdict::Less,
            Ordering::Equal => Verdict::Equal,
            Ordering::Greater => Verdict::Greater,
        }
    }
}

/// Refinement schedule: start at `start_bits`, double each round, give up after
/// `max_rounds` or once the difference is enclosed tighter than `min_width`.
#[derive(Clone, Debug)]
pub struct CompareBudget {
    pub min_width: Rat,
    pub start_bits: u32,
    pub max_rounds: u32,
}

impl Default for CompareBudget {
    fn default() -> Self {
        CompareBudget {
            min_width: ten_pow_neg(60),
            start_bits: 64,
            max_rounds: 20,
        }
    }
}

/// Rigorous comparison of two real expressions with the default budget.
pub fn certified_compare(a: &Real, b: &Real) -> Verdict {
    certified_compare_with(a, b, &CompareBudget::default())
}

pub fn certified_compare_with(a: &Real, b: &Real, budget: &CompareBudget) -> Verdict {
    if let (Some(x), Some(y)) = (a.exact(), b.exact()) {
        return x.cmp(&y).into();
    }
    let diff = a - b;
    let mut p = budget.start_bits;
    for _ in 0..budget.max_rounds {
        let Ok(e) = diff.eval(p) else {
            return Verdict::Undecided;
        };
        if e.lo.is_positive() {
            return Verdict::Greater;
        }
        if e.hi.is_negative() {
            return Verdict::Less;
        }
        if e.width() < budget.min_width || p >= MAX_BITS {
            break;
        }
        p = (p * 2).min(MAX_BITS);
    }
    Verdict::Undecided
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rat, rat};

    #[test]
    fn two_pi_exceeds_four() {
        let v = certified_compare(&(Real::int(2) * Real::pi()), &Real::int(4));
        assert_eq!(v, Verdict::Greater);
    }

    #[test]
    fn hexagonal_density_against_printed_digits() {
        // π/(2√3) = 0.906899682..., so the four printed digits are a rounding
        let density = Real::pi() / (Real::int(2) * Real::int(3).sqrt());
        let printed = Real::rat(rat(9069, 10000));
        assert_eq!(certified_compare(&density, &printed), Verdict::Less);
        let below = Real::rat(rat(90689, 100000));
        assert_eq!(certified_compare(&density, &below), Verdict::Greater);
    }

    #[test]
    fn equal_irrationals_stay_undecided() {
        let budget = CompareBudget {
            max_rounds: 4,
            ..CompareBudget::default()
        };
        let s = Real::int(2).sqrt();
        assert_eq!(certified_compare_with(&s, &s, &budget), Verdict::Undecided);
        assert_eq!(certified_compare(&s, &s), Verdict::Undecided);
    }

    #[test]
    fn exact_equality_is_proved() {
        let a = Real::int(8).sqrt() / Real::int(2).sqrt();
        // not syntactically rational, so interval route; b exact
        assert_eq!(a.exact(), None);
        let c = Real::rat(rat(9, 4)).sqrt();
        assert_eq!(
            certified_compare(&c, &Real::rat(parse_rat("1.5").unwrap())),
            Verdict::Equal
        );
    }
}
