//! Figurate numbers: triangular and k-gonal numbers, Gauss's three-triangle
//! decomposition and Cauchy-style k-gonal decompositions found by search.

use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Int;

/// Largest target accepted by [`polygonal_decompose`].
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FigurateKind {
    Triangular,
    Polygonal { k: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FigurePart {
    pub index: u64,
    pub value: u64,
}

/// Parts listed with descending values; zero parts are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FigurateWitness {
    #[serde(flatten)]
    pub kind: FigurateKind,
    pub target: u64,
    pub parts: Vec<FigurePart>,
}

impl FigurateWitness {
    pub fn values(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.value).collect()
    }

    /// Re-checks that every part matches its formula and that the parts sum to the target.
    pub fn verify(&self) -> bool {
        let k = match self.kind {
            FigurateKind::Triangular => 3,
            FigurateKind::Polygonal { k } => k,
        };
        let formula_ok = self
            .parts
            .iter()
            .all(|p| polygonal_u64(k, p.index) == Some(p.value));
        let sum: u128 = self.parts.iter().map(|p| u128::from(p.value)).sum();
        formula_ok && sum == u128::from(self.target)
    }
}

/// n(n+1)/2.
pub fn triangular(n: &Int) -> Result<Int> {
    if n.is_negative() {
        return Err(Error::domain("triangular(n) needs n >= 0"));
    }
    Ok(n * (n + 1u32) / 2u32)
}

/// ((k−2)n² − (k−4)n)/2; k = 3 gives triangular numbers, k = 4 squares.
pub fn polygonal(k: &Int, n: &Int) -> Result<Int> {
    if k < &Int::from(3) {
        return Err(Error::domain("polygonal numbers need k >= 3"));
    }
    if n.is_negative() {
        return Err(Error::domain("polygonal(k, n) needs n >= 0"));
    }
    Ok(((k - 2u32) * n * n - (k - 4u32) * n) / 2u32)
}

fn polygonal_u64(k: u64, n: u64) -> Option<u64> {
    let v = polygonal(&Int::from(k), &Int::from(n)).ok()?;
    v.to_u64()
}

/// Index n with polygonal(k, n) = v, if v is k-gonal.
fn polygonal_index(k: u64, v: u64) -> Option<u64> {
    if v == 0 {
        return Some(0);
    }
    // (k−2)n² − (k−4)n − 2v = 0
    let a = i128::from(k) - 2;
    let b = i128::from(k) - 4;
    let disc = b * b + 8 * a * i128::from(v);
    let s = disc.sqrt();
    if s * s != disc {
        return None;
    }
    let num = b + s;
    if num % (2 * a) != 0 {
        return None;
    }
    let n = u64::try_from(num / (2 * a)).ok()?;
    (polygonal_u64(k, n) == Some(v)).then_some(n)
}

/// All k-gonal numbers ≤ m (including 0), ascending, with indices.
fn table(k: u64, m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut n = 0;
    while let Some(v) = polygonal_u64(k, n) {
        if v > m {
            break;
        }
        out.push((n, v));
        n += 1;
    }
    out
}

/// Writes m as a sum of at most three triangular numbers.
pub fn eureka_decompose(m: u64) -> Result<FigurateWitness> {
    let parts = decompose(3, m, 3).ok_or_else(|| {
        Error::NotFound(format!(
            "{m} is not a sum of three triangular numbers (defect)"
        ))
    })?;
    Ok(FigurateWitness {
        kind: FigurateKind::Triangular,
        target: m,
        parts,
    })
}

/// Writes m as a sum of at most k k-gonal numbers by bounded depth-first search.
pub fn polygonal_decompose(k: u64, m: u64) -> Result<FigurateWitness> {
    polygonal_decompose_capped(k, m, DEFAULT_SEARCH_CAP)
}

pub fn polygonal_decompose_capped(k: u64, m: u64, cap: u64) -> Result<FigurateWitness> {
    if k < 3 {
        return Err(Error::domain("polygonal numbers need k >= 3"));
    }
    if m > cap {
        return Err(Error::budget(format!("target {m} above search cap {cap}")));
    }
    if k == 3 {
        return eureka_decompose(m);
    }
    let parts = decompose(k, m, k as usize).ok_or_else(|| {
        Error::NotFound(format!(
            "{m} is not a sum of {k} {k}-gonal numbers (defect)"
        ))
    })?;
    Ok(FigurateWitness {
        kind: FigurateKind::Polygonal { k },
        target: m,
        parts,
    })
}

/// Fewest parts first; within a part count, parts are tried largest-first.
fn decompose(k: u64, m: u64, max_parts: usize) -> Option<Vec<FigurePart>> {
    let tab = table(k, m);
    let positive: Vec<(u64, u64)> = tab.into_iter().filter(|&(_, v)| v > 0).collect();
    (0..=max_parts).find_map(|d| {
        let mut acc = Vec::with_capacity(d);
        search(k, &positive, m, d, positive.len(), &mut acc).then(|| {
            acc.iter()
                .map(|&(index, value)| FigurePart { index, value })
                .collect()
        })
    })
}

/// Exactly `depth` positive parts, each taken from `parts[..upto]`, non-increasing.
fn search(
    k: u64,
    parts: &[(u64, u64)],
    rest: u64,
    depth: usize,
    upto: usize,
    acc: &mut Vec<(u64, u64)>,
) -> bool {
    if depth == 0 {
        return rest == 0;
    }
    if rest == 0 {
        return false;
    }
    if depth == 1 {
        return match polygonal_index(k, rest) {
            Some(n) if upto > 0 && rest <= parts[upto - 1].1 => {
                acc.push((n, rest));
                true
            }
            _ => false,
        };
    }
    let hi = parts[..upto].partition_point(|&(_, v)| v <= rest);
    for i in (0..hi).rev() {
        let (n, v) = parts[i];
        if v * (depth as u64) < rest {
            break;
        }
        acc.push((n, v));
        if search(k, parts, rest - v, depth - 1, i + 1, acc) {
            return true;
        }
        acc.pop();
    }
    false
}

/// Σ_{j=1..m} (2j − 1), summed term by term.
pub fn odd_sum(m: u64) -> u128 {
    (1..=u128::from(m)).map(|j| 2 * j - 1).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> Int {
        triangular(&Int::from(n)).unwrap()
    }

    #[test]
    fn triangular_values() {
        assert_eq!(t(3), Int::from(6));
        assert_eq!(t(0), Int::from(0));
        assert_eq!(t(63), Int::from(2016));
        assert_eq!(triangular(&Int::from(-1)).unwrap_err().kind(), "domain");
    }

    #[test]
    fn polygonal_values() {
        let p = |k: i64, n: i64| polygonal(&Int::from(k), &Int::from(n)).unwrap();
        assert_eq!(p(4, 5), Int::from(25));
        assert_eq!(p(3, 63), Int::from(2016));
        // pentagonal dots: 1, 1+4, 1+4+7
        assert_eq!(p(5, 3), Int::from(1 + 4 + 7));
        assert_eq!(
            polygonal(&Int::from(2), &Int::from(1)).unwrap_err().kind(),
            "domain"
        );
    }

    #[test]
    fn eureka_examples() {
        assert!(eureka_decompose(0).unwrap().parts.is_empty());
        let w = eureka_decompose(2016).unwrap();
        assert!(w.verify());
        assert_eq!(w.values(), vec![2016]);
        let w = eureka_decompose(20).unwrap();
        assert!(w.verify() && w.parts.len() <= 3);
    }

    #[test]
    fn squares_of_seven() {
        let w = polygonal_decompose(4, 7).unwrap();
        assert_eq!(w.values(), vec![4, 1, 1, 1]);
        assert!(polygonal_decompose(5, 0).unwrap().parts.is_empty());
    }

    #[test]
    fn index_inverse() {
        for k in 3..9 {
            for n in 0..200 {
                let v = polygonal_u64(k, n).unwrap();
                assert_eq!(polygonal_index(k, v), Some(n));
            }
        }
        assert_eq!(polygonal_index(4, 8), None);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            polygonal_decompose_capped(5, 101, 100).unwrap_err().kind(),
            "budget"
        );
    }
}
