use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{Check, Relation, TheoremCertificate};
use crate::body::{sqrt_up, ConvexBody, QuadraticForm};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{
    certified_compare, exact_root, factorial, rat, rat_from_int, serde_rat, Int, Rat, Real,
    RealEnclosure, Verdict,
};
use crate::lattice::{form_minimal_vectors, points_in_body, to_rats};
use crate::linalg::{self, Matrix};

/// Deterministic winner: least vector with a positive leading nonzero coordinate.
fn canonical_winner(mut pts: Vec<Vec<i64>>) -> Option<Vec<i64>> {
    pts.retain(|p| p.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0));
    pts.into_iter().min()
}

/// x ∈ ℤⁿ∖{0} with |Σₖ aⱼₖxₖ| ≤ λⱼ for all j, given ∏λⱼ ≥ |det A|.
pub fn linear_forms_solve(a: &Matrix, lambda: &[Rat]) -> Result<(Vec<i64>, TheoremCertificate)> {
    let n = a.len();
    if n == 0 || !linalg::is_square(a) || lambda.len() != n {
        return Err(Error::domain("need an n×n matrix and n bounds"));
    }
    if lambda.iter().any(|l| !l.is_positive()) {
        return Err(Error::domain("bounds must be positive"));
    }
    let mut cert = TheoremCertificate::new("linear-forms");
    let d = linalg::det(a).abs();
    let prod = lambda.iter().fold(Rat::one(), |acc, l| acc * l);
    cert.hypotheses.push(Check::rational(
        "|det A| vs 0",
        &d,
        Relation::Gt,
        &Rat::zero(),
    ));
    cert.hypotheses.push(Check::rational(
        "prod lambda vs |det A|",
        &prod,
        Relation::Ge,
        &d,
    ));
    cert.require_hypotheses()?;
    let body = ConvexBody::forms_box(a.clone(), lambda.to_vec())?;
    let budget = Budget::default();
    let mut meter = budget.meter();
    let pts = points_in_body(&body, &Rat::one(), &mut meter)?
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    let x = canonical_winner(pts)
        .ok_or_else(|| Error::NotFound("no solution despite the hypothesis (defect)".into()))?;
    let y = linalg::mul_vec(a, &to_rats(&x));
    for (j, (yj, lj)) in y.iter().zip(lambda).enumerate() {
        cert.verification.push(Check::rational(
            format!("|Y{j}(x)| vs lambda{j}"),
            &yj.abs(),
            Relation::Le,
            lj,
        ));
    }
    cert.witnesses.push(to_rats(&x));
    Ok((x, cert))
}

/// s conjugate pairs Y, Ȳ (given by real and imaginary coefficient rows) and r
/// real forms, r + 2s = n.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ComplexForms {
    #[serde(with = "serde_rat::matrix")]
    pub pair_re: Matrix,
    #[serde(with = "serde_rat::matrix")]
    pub pair_im: Matrix,
    #[serde(with = "serde_rat::matrix")]
    pub reals: Matrix,
}

impl ComplexForms {
    pub fn s(&self) -> usize {
        self.pair_re.len()
    }

    pub fn dim(&self) -> usize {
        self.reals.len() + 2 * self.pair_re.len()
    }

    /// Real rows: Re and Im of each pair, then the real forms.
    fn real_matrix(&self) -> Matrix {
        let mut m = Vec::with_capacity(self.dim());
        for (re, im) in self.pair_re.iter().zip(&self.pair_im) {
            m.push(re.clone());
            m.push(im.clone());
        }
        m.extend(self.reals.iter().cloned());
        m
    }

    /// |det| of the complex n×n system: each pair contributes a factor 2.
    pub fn det_abs(&self) -> Rat {
        linalg::det(&self.real_matrix()).abs() * rat_from_int(&Int::from(2).pow(self.s() as u32))
    }

    /// β² with β = (2/π)^(s/n)·|det|^(1/n).
    pub fn bound_sq(&self) -> Real {
        let n = self.dim() as i64;
        let s = self.s() as i64;
        if s == 0 {
            let d2 = self.det_abs() * self.det_abs();
            if let Some(v) = exact_root(&d2, n as u32) {
                return Real::rat(v);
            }
        }
        ((Real::int(2) / Real::pi()).powi(s) * Real::rat(self.det_abs())).pow(&rat(2, n))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexSolution {
    pub x: Vec<i64>,
    /// Enclosure of β = (2/π)^(s/n)|det|^(1/n).
    pub bound: RealEnclosure,
    pub certificate: TheoremCertificate,
}

/// x ≠ 0 with |Yⱼ(x)| ≤ (2/π)^(s/n)|det|^(1/n) for every form, moduli certified.
pub fn complex_linear_forms_solve(f: &ComplexForms) -> Result<ComplexSolution> {
    let n = f.dim();
    let s = f.s();
    if f.pair_im.len() != s
        || f.pair_re
            .iter()
            .chain(&f.pair_im)
            .chain(&f.reals)
            .any(|r| r.len() != n)
        || n == 0
    {
        return Err(Error::domain(
            "forms must have n coefficients each, r + 2s = n",
        ));
    }
    let m = f.real_matrix();
    let mut cert = TheoremCertificate::new("complex-linear-forms");
    cert.hypotheses.push(Check::rational(
        "|det| vs 0",
        &f.det_abs(),
        Relation::Gt,
        &Rat::zero(),
    ));
    cert.require_hypotheses()?;
    let beta_sq = f.bound_sq();
    let beta_sq_hi = beta_sq.quick()?.hi;
    // screen with a rational over-approximation of the body, then certify
    let beta_up = sqrt_up(&beta_sq_hi);
    let screen = ConvexBody::forms_box(m.clone(), vec![beta_up; n])?;
    let budget = Budget::default();
    let mut meter = budget.meter();
    let mut cands: Vec<Vec<i64>> = points_in_body(&screen, &Rat::one(), &mut meter)?
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    cands.sort();
    let moduli_sq = |x: &[i64]| -> Vec<Rat> {
        let y = linalg::mul_vec(&m, &to_rats(x));
        let mut out = Vec::with_capacity(n - s);
        for k in 0..s {
            out.push(&y[2 * k] * &y[2 * k] + &y[2 * k + 1] * &y[2 * k + 1]);
        }
        out.extend(y[2 * s..].iter().map(|v| v * v));
        out
    };
    let mut winner = None;
    for x in cands {
        if !x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
            continue;
        }
        let ok = moduli_sq(&x)
            .iter()
            .all(|v| v <= &beta_sq_hi && certified_compare(&Real::rat(v.clone()), &beta_sq).le());
        if ok {
            winner = Some(x);
            break;
        }
    }
    let x = winner.ok_or_else(|| Error::NotFound("no solution (defect)".into()))?;
    for (j, v) in moduli_sq(&x).iter().enumerate() {
        cert.verification.push(Check::new(
            format!("|Y{j}(x)|^2 vs beta^2"),
            &Real::rat(v.clone()),
            Relation::Le,
            &beta_sq,
        ));
    }
    cert.witnesses.push(to_rats(&x));
    let bound = beta_sq.sqrt().enclose(&rat(1, 1_000_000_000_000))?;
    Ok(ComplexSolution {
        x,
        bound,
        certificate: cert,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FirstMinimum {
    #[serde(with = "serde_rat")]
    pub min: Rat,
    pub witness: Vec<i64>,
    /// D = det of the Gram matrix.
    #[serde(with = "serde_rat")]
    pub det: Rat,
    /// (4/π)·Γ(n/2+1)^(2/n)·D^(1/n)
    pub minkowski_bound: RealEnclosure,
    /// (4/3)^((n−1)/2)·D^(1/n)
    pub hermite_bound: RealEnclosure,
    /// min / D^(1/n)
    pub gamma_ratio: RealEnclosure,
    pub checks: Vec<Check>,
}

pub fn minkowski_bound_expr(n: usize, d: &Rat) -> Real {
    let two_over_n = rat(2, n as i64);
    Real::int(4) / Real::pi()
        * Real::gamma_half(n as u32 + 2).pow(&two_over_n)
        * Real::rat(d.clone()).pow(&rat(1, n as i64))
}

pub fn hermite_bound_expr(n: usize, d: &Rat) -> Real {
    Real::frac(4, 3).pow(&rat(n as i64 - 1, 2)) * Real::rat(d.clone()).pow(&rat(1, n as i64))
}

/// Exact first minimum of a positive definite form with Minkowski's and Hermite's bounds.
pub fn form_first_minimum(q: &QuadraticForm) -> Result<FirstMinimum> {
    let n = q.dim();
    let (min, vecs) = form_minimal_vectors(q, &Budget::default())?;
    let witness = canonical_winner(vecs).expect("minimal vectors come in pairs");
    let d = q.det();
    let mink = minkowski_bound_expr(n, &d);
    let herm = hermite_bound_expr(n, &d);
    let m = Real::rat(min.clone());
    let checks = vec![
        Check::new("min vs Minkowski bound", &m, Relation::Le, &mink),
        Check::new("min vs Hermite bound", &m, Relation::Le, &herm),
    ];
    let w = rat(1, 1_000_000_000_000);
    let ratio = &m / Real::rat(d.clone()).pow(&rat(1, n as i64));
    Ok(FirstMinimum {
        minkowski_bound: mink.enclose(&w)?,
        hermite_bound: herm.enclose(&w)?,
        gamma_ratio: ratio.enclose(&w)?,
        min,
        witness,
        det: d,
        checks,
    })
}

/// (4/π)^r₂ · n!/nⁿ · √|Δ|, bounding the least norm of an ideal class representative.
pub fn minkowski_field_bound(n: u32, r2: u32, disc_abs: &Int) -> Result<(Real, RealEnclosure)> {
    if n < 2 || 2 * r2 > n {
        return Err(Error::domain("need n ≥ 2 and 2·r2 ≤ n"));
    }
    if !disc_abs.is_positive() {
        return Err(Error::domain("discriminant must be nonzero"));
    }
    let ratio = Rat::new(factorial(u64::from(n)), Int::from(n).pow(n));
    let v = (Real::int(4) / Real::pi()).powi(i64::from(r2))
        * Real::rat(ratio)
        * Real::rat(rat_from_int(disc_abs)).sqrt();
    let e = v.enclose(&rat(1, 1_000_000_000_000))?;
    Ok((v, e))
}

/// True when the field bound is below 1, i.e. no such discriminant can occur.
pub fn field_bound_below_one(v: &Real) -> bool {
    certified_compare(v, &Real::int(1)) == Verdict::Less
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn r(v: i64) -> Rat {
        rat_int(v)
    }

    #[test]
    fn linear_forms_examples() {
        let id = linalg::identity(2);
        let (x, c) = linear_forms_solve(&id, &[r(1), r(1)]).unwrap();
        assert!(c.is_valid());
        assert_eq!(x.iter().map(|v| v.abs()).sum::<i64>(), 1);
        let a = vec![vec![r(1), rat(1, 2)], vec![r(0), r(1)]];
        let (x, c) = linear_forms_solve(&a, &[rat(1, 2), r(2)]).unwrap();
        assert!(c.is_valid());
        let y0 = rat_int(x[0]) + rat(x[1], 2);
        assert!(y0.abs() <= rat(1, 2) && x[1].abs() <= 2);
        assert_eq!(
            linear_forms_solve(&a, &[rat(1, 2), r(1)])
                .unwrap_err()
                .kind(),
            "hypothesis"
        );
    }

    #[test]
    fn complex_pair() {
        let f = ComplexForms {
            pair_re: vec![vec![r(1), r(0)]],
            pair_im: vec![vec![r(0), r(1)]],
            reals: vec![],
        };
        assert_eq!(f.det_abs(), r(2));
        let sol = complex_linear_forms_solve(&f).unwrap();
        assert!(sol.certificate.is_valid());
        // β = 2/√π ≈ 1.128
        assert!(sol.bound.contains(&rat(1128, 1000)) || sol.bound.lo > rat(1128, 1000));
        assert!(sol.bound.hi < rat(1129, 1000));
        assert_eq!(sol.x.iter().map(|v| v * v).sum::<i64>(), 1);
    }

    #[test]
    fn complex_without_pairs_is_real_case() {
        let f = ComplexForms {
            pair_re: vec![],
            pair_im: vec![],
            reals: vec![vec![r(2), r(1)], vec![r(0), r(2)]],
        };
        let sol = complex_linear_forms_solve(&f).unwrap();
        let (x, _) = linear_forms_solve(&f.reals, &[r(2), r(2)]).unwrap();
        assert_eq!(sol.x, x);
    }

    #[test]
    fn first_minima() {
        let fm = form_first_minimum(&QuadraticForm::identity(2)).unwrap();
        assert_eq!(fm.min, r(1));
        assert!(fm.checks.iter().all(|c| c.holds));
        let hex = QuadraticForm::new(vec![vec![r(1), rat(1, 2)], vec![rat(1, 2), r(1)]]).unwrap();
        let fm = form_first_minimum(&hex).unwrap();
        assert_eq!((fm.min.clone(), fm.det.clone()), (r(1), rat(3, 4)));
        let g2 = (Real::int(2) / Real::int(3).sqrt())
            .enclose(&rat(1, 1 << 50))
            .unwrap();
        assert!(fm.gamma_ratio.overlaps(&g2));
    }

    #[test]
    fn field_bounds() {
        let (v, _) = minkowski_field_bound(2, 0, &Int::from(5)).unwrap();
        let e = (v - Real::int(5).sqrt() / Real::int(2))
            .enclose(&rat(1, 1 << 40))
            .unwrap();
        assert!(e.contains(&Rat::zero()));
        let (v, _) = minkowski_field_bound(2, 1, &Int::from(4)).unwrap();
        let e = (v - Real::int(4) / Real::pi())
            .enclose(&rat(1, 1 << 40))
            .unwrap();
        assert!(e.contains(&Rat::zero()));
        let (v, _) = minkowski_field_bound(2, 0, &Int::from(1)).unwrap();
        assert!(field_bound_below_one(&v));
        assert_eq!(
            minkowski_field_bound(2, 2, &Int::from(1))
                .unwrap_err()
                .kind(),
            "domain"
        );
    }
}
