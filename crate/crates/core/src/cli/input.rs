//! Input files, presets and number syntax for the command line.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::body::QuadraticForm;
use crate::error::{Error, Result};
use crate::exact::{parse_rat, rat_int, serde_rat, Rat, Real};
use crate::lattice::Lattice;
use crate::packing;
use crate::theorems::{HalfOpenBox, Region};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Built-in lattice or Gram data.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Preset {
    Lattice(Lattice),
    Gram(QuadraticForm),
}

impl Preset {
    pub fn form(&self) -> QuadraticForm {
        match self {
            Preset::Lattice(l) => l.form(),
            Preset::Gram(q) => q.clone(),
        }
    }
}

/// `hexagonal`, `fcc`, `d4`, `zn(n)` (also `zn3`, `z3`) or `even-sum-2d`.
pub fn preset(name: &str) -> Result<Preset> {
    let key = name.trim().to_ascii_lowercase();
    let zn = key
        .strip_prefix("zn(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| key.strip_prefix("zn"))
        .or_else(|| key.strip_prefix('z'));
    if let Some(n) = zn.and_then(|d| d.parse::<usize>().ok()) {
        if !(crate::lattice::MIN_DIM..=crate::lattice::MAX_DIM).contains(&n) {
            return Err(Error::Dimension(n));
        }
        return Ok(Preset::Gram(QuadraticForm::identity(n)));
    }
    match key.as_str() {
        "hexagonal" | "a2" => Ok(Preset::Gram(packing::hexagonal())),
        "fcc" | "a3" => Ok(Preset::Gram(packing::fcc())),
        "d4" => Ok(Preset::Gram(d4())),
        "even-sum-2d" => Ok(Preset::Lattice(Lattice::from_int_vectors(&[
            &[2, 0],
            &[1, 1],
        ])?)),
        _ => Err(Error::Parse(format!("unknown preset {name:?}"))),
    }
}

/// Gram matrix of the D₄ root lattice (minimum 2, determinant 4).
pub fn d4() -> QuadraticForm {
    let g = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]];
    QuadraticForm::new(
        g.iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect(),
    )
    .expect("D4 is positive definite")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Bare(#[serde(with = "serde_rat::matrix")] Vec<Vec<Rat>>),
    Wrapped {
        #[serde(with = "serde_rat::matrix", alias = "gram", alias = "rows")]
        matrix: Vec<Vec<Rat>>,
    },
}

/// `[[..],..]` or `{"matrix": [[..],..]}`.
pub fn read_matrix(path: &Path) -> Result<Vec<Vec<Rat>>> {
    Ok(match read_json::<MatrixFile>(path)? {
        MatrixFile::Bare(m) | MatrixFile::Wrapped { matrix: m } => m,
    })
}

#[derive(Deserialize)]
struct BoxSpec {
    #[serde(with = "serde_rat::vec")]
    lo: Vec<Rat>,
    #[serde(with = "serde_rat::vec")]
    hi: Vec<Rat>,
}

/// A list of half-open boxes `[{"lo": [..], "hi": [..]}, ..]`.
pub fn read_boxes(path: &Path) -> Result<Region> {
    let specs: Vec<BoxSpec> = read_json(path)?;
    if specs.is_empty() {
        return Err(Error::Parse("empty box list".into()));
    }
    let boxes = specs
        .into_iter()
        .map(|b| HalfOpenBox::new(b.lo, b.hi))
        .collect::<Result<_>>()?;
    Ok(Region::Boxes(boxes))
}

/// Rational, `pi`, `gamma`, `sqrt<r>`, `sqrt(r)`, `cbrt(r)`, `ln(r)` or `root(r,k)`.
pub fn parse_real(s: &str) -> Result<Real> {
    let t = s.trim().to_ascii_lowercase();
    let arg = |prefix: &str| -> Option<String> {
        let rest = t.strip_prefix(prefix)?;
        let rest = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(rest);
        Some(rest.to_string())
    };
    if t == "pi" {
        return Ok(Real::pi());
    }
    if t == "gamma" {
        return Ok(Real::euler_gamma());
    }
    if let Some(a) = arg("sqrt") {
        return nonneg(parse_rat(&a)?).map(|r| Real::rat(r).sqrt());
    }
    if let Some(a) = arg("cbrt") {
        return nonneg(parse_rat(&a)?).map(|r| Real::rat(r).pow(&crate::exact::rat(1, 3)));
    }
    if let Some(a) = arg("ln") {
        let r = parse_rat(&a)?;
        if r <= Rat::from_integer(0.into()) {
            return Err(Error::domain("ln needs a positive argument"));
        }
        return Ok(Real::ln(r));
    }
    if let Some(a) = arg("root") {
        let (x, k) = a
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("root needs (x,k): {s:?}")))?;
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad root index in {s:?}")))?;
        if k < 1 {
            return Err(Error::Parse(format!("bad root index in {s:?}")));
        }
        return nonneg(parse_rat(x)?).map(|r| Real::rat(r).pow(&crate::exact::rat(1, k)));
    }
    parse_rat(&t).map(Real::rat)
}

fn nonneg(r: Rat) -> Result<Rat> {
    if r < Rat::from_integer(0.into()) {
        return Err(Error::domain("root of a negative number"));
    }
    Ok(r)
}

/// Comma-separated list for [`parse_real`]; commas inside parentheses are kept.
pub fn parse_real_list(s: &str) -> Result<Vec<Real>> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_real(&s[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(parse_real(&s[start..])?);
    Ok(out)
}

/// `a..b` or a single value, inclusive.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::Parse(format!("bad range {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{certified_compare, Verdict};

    #[test]
    fn presets() {
        match preset("even-sum-2d").unwrap() {
            Preset::Lattice(l) => assert_eq!(l.det_abs(), &rat_int(2)),
            Preset::Gram(_) => panic!("expected a basis"),
        }
        assert_eq!(preset("zn(3)").unwrap().form(), QuadraticForm::identity(3));
        assert_eq!(preset("Z2").unwrap().form(), QuadraticForm::identity(2));
        assert_eq!(
            preset("hexagonal").unwrap().form().det(),
            crate::exact::rat(3, 4)
        );
        assert_eq!(d4().det(), rat_int(4));
        assert_eq!(preset("e8").unwrap_err().kind(), "parse");
    }

    #[test]
    fn reals() {
        let v = parse_real_list("sqrt2, root(3,2), 7/5").unwrap();
        let w = crate::exact::rat(1, 1_000_000);
        let e = v[0].enclose(&w).unwrap();
        assert!(e.lo > crate::exact::rat(1_414_213, 1_000_000));
        assert!(e.hi < crate::exact::rat(1_414_214, 1_000_000));
        assert_eq!(
            certified_compare(&v[1], &Real::frac(17, 10)),
            Verdict::Greater
        );
        assert_eq!(v[2].exact(), Some(crate::exact::rat(7, 5)));
        assert!(parse_real("sqrt(-1)").is_err());
        assert_eq!(parse_range("2..8").unwrap(), (2, 8));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
    }
}
