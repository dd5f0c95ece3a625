use num_traits::ToPrimitive;
use serde::Serialize;

use super::{Check, Relation, TheoremCertificate};
use crate::error::{Error, Result};
use crate::exact::{
    certified_compare, floor, rat, rat_int, Int, Rat, Real, RealEnclosure, Verdict,
};

#[derive(Clone, Debug, Serialize)]
pub struct Dirichlet {
    pub x: i64,
    pub y: i64,
    /// |yα − x|
    pub error: RealEnclosure,
    pub certificate: TheoremCertificate,
}

/// Integers near yα: the floor and ceiling of an enclosure of yα.
fn near_integers(v: &Real, p: u32) -> Result<Vec<i64>> {
    let e = v.eval(p)?;
    let lo = floor(&e.lo);
    let hi = floor(&e.hi) + Int::from(1);
    let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
        return Err(Error::budget("value exceeds 64-bit range"));
    };
    Ok((lo..=hi).collect())
}

fn wide_leaf_check(alpha: &Real, limit: &Rat) -> Result<()> {
    if let Some(w) = alpha.fixed_width() {
        if &w >= limit {
            return Err(Error::Precision(format!(
                "enclosure of alpha has width {w}, needs < {limit}"
            )));
        }
    }
    Ok(())
}

/// Best approximation y ≤ Q: minimises |yα − x| over 1 ≤ y ≤ Q (least y on ties),
/// and certifies |yα − x| < 1/Q.
pub fn dirichlet_1d(alpha: &Real, q: i64) -> Result<Dirichlet> {
    if q < 2 {
        return Err(Error::domain("Q must be at least 2"));
    }
    let qr = rat_int(q);
    wide_leaf_check(
        alpha,
        &(Rat::from_integer(Int::from(1)) / (&qr * &qr * rat_int(1000))),
    )?;
    let p = 64 + 2 * (64 - q.leading_zeros());
    let mut best: Option<(i64, i64, Real)> = None;
    for y in 1..=q {
        let ya = Real::int(y) * alpha;
        for x in near_integers(&ya, p)? {
            let d = (&ya - Real::int(x)).abs();
            let better = match &best {
                None => true,
                Some((_, _, bd)) => match certified_compare(&d, bd) {
                    Verdict::Less => true,
                    Verdict::Greater | Verdict::Equal => false,
                    Verdict::Undecided => {
                        return Err(Error::Precision(format!(
                            "cannot order |{y}a - {x}| against the current best"
                        )))
                    }
                },
            };
            if better {
                best = Some((x, y, d));
            }
        }
    }
    let (x, y, d) = best.expect("Q ≥ 2");
    let mut cert = TheoremCertificate::new("dirichlet");
    cert.verification.push(Check::new(
        "|y alpha - x| vs 1/Q",
        &d,
        Relation::Lt,
        &Real::rat(Rat::new(1.into(), q.into())),
    ));
    if !cert.is_valid() {
        return Err(Error::Precision("bound could not be certified".into()));
    }
    cert.witnesses.push(vec![rat_int(x), rat_int(y)]);
    let error = d
        .enclose(&rat(1, 1_000_000_000_000))
        .or_else(|_| d.quick())?;
    Ok(Dirichlet {
        x,
        y,
        error,
        certificate: cert,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SimultaneousApprox {
    pub p: Vec<i64>,
    pub q: i64,
    pub certificate: TheoremCertificate,
}

/// Least q ≤ q_max with |αⱼ − pⱼ/q| < n/(n+1) · q^(−1−1/n) for every j.
pub fn simultaneous_approx(alpha: &[Real], q_max: i64) -> Result<SimultaneousApprox> {
    let n = alpha.len();
    if n == 0 || q_max < 1 {
        return Err(Error::domain("need at least one number and q_max ≥ 1"));
    }
    let factor = Real::rat(rat(n as i64, n as i64 + 1));
    let exponent = rat(-(n as i64 + 1), n as i64);
    let p_bits = 64 + 2 * (64 - q_max.leading_zeros());
    'q: for q in 1..=q_max {
        let bound = &factor * Real::int(q).pow(&exponent);
        let mut ps = Vec::with_capacity(n);
        let mut checks = Vec::with_capacity(n);
        for a in alpha {
            let qa = Real::int(q) * a;
            let mut found = None;
            for p in near_integers(&qa, p_bits)? {
                let diff = (a - Real::frac(p, q)).abs();
                match certified_compare(&diff, &bound) {
                    Verdict::Less => {
                        found = Some((p, diff));
                        break;
                    }
                    Verdict::Undecided => {
                        return Err(Error::Precision(format!("undecided at q = {q}")))
                    }
                    _ => {}
                }
            }
            let Some((p, diff)) = found else {
                continue 'q;
            };
            ps.push(p);
            checks.push(Check::new(
                format!("|alpha{} - p/q| vs n/(n+1) q^(-1-1/n)", ps.len() - 1),
                &diff,
                Relation::Lt,
                &bound,
            ));
        }
        let mut cert = TheoremCertificate::new("simultaneous-approximation");
        cert.verification = checks;
        let mut w: Vec<Rat> = ps.iter().map(|&p| rat_int(p)).collect();
        w.push(rat_int(q));
        cert.witnesses.push(w);
        return Ok(SimultaneousApprox {
            p: ps,
            q,
            certificate: cert,
        });
    }
    Err(Error::budget(format!("no q ≤ {q_max} satisfies the bound")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn rational_hit() {
        let d = dirichlet_1d(&Real::frac(1, 3), 3).unwrap();
        assert_eq!((d.x, d.y), (1, 3));
        assert!(d.error.is_exact() && d.error.lo.is_zero());
    }

    #[test]
    fn sqrt_two_q5() {
        let d = dirichlet_1d(&Real::int(2).sqrt(), 5).unwrap();
        assert_eq!((d.x, d.y), (7, 5));
        assert!(d.certificate.is_valid());
    }

    #[test]
    fn pi_q100() {
        let d = dirichlet_1d(&Real::pi(), 100).unwrap();
        assert!(d.certificate.is_valid());
        assert!(d.error.hi < rat(1, 100));
    }

    #[test]
    fn wide_enclosure_rejected() {
        let a = Real::fixed(RealEnclosure::new(rat(141, 100), rat(142, 100)));
        assert_eq!(dirichlet_1d(&a, 10).unwrap_err().kind(), "precision");
    }

    #[test]
    fn simultaneous() {
        let s = simultaneous_approx(&[Real::int(2).sqrt()], 20).unwrap();
        assert_eq!((s.p.clone(), s.q), (vec![1], 1));
        let s = simultaneous_approx(&[Real::frac(3, 7), Real::frac(5, 7)], 100).unwrap();
        assert!(s.q <= 7);
        let s = simultaneous_approx(&[Real::int(2).sqrt(), Real::int(3).sqrt()], 10_000).unwrap();
        assert!(s.certificate.is_valid());
    }
}
