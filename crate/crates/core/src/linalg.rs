//! Small dense rational matrices (n ≤ 8). Row-major `Vec<Vec<Rat>>`.

use num_traits::{One, Signed, Zero};

use crate::exact::Rat;

pub type Matrix = Vec<Vec<Rat>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

pub fn is_square(m: &Matrix) -> bool {
    m.iter().all(|r| r.len() == m.len())
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = b.len();
    let cols = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..k).fold(Rat::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &Matrix, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn mul_int_vec(a: &Matrix, v: &[i64]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(Rat::zero(), |acc, (x, &y)| {
                if y == 0 {
                    acc
                } else {
                    acc + x * Rat::from_integer(y.into())
                }
            })
        })
        .collect()
}

/// xᵀ G x for integer x.
pub fn quad_form_int(g: &Matrix, x: &[i64]) -> Rat {
    let n = x.len();
    let mut acc = Rat::zero();
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        let xi = Rat::from_integer(x[i].into());
        acc += &g[i][i] * &xi * &xi;
        for j in i + 1..n {
            if x[j] == 0 {
                continue;
            }
            acc += &g[i][j] * &xi * Rat::from_integer((2 * x[j]).into());
        }
    }
    acc
}

/// xᵀ G x for rational x.
pub fn quad_form(g: &Matrix, x: &[Rat]) -> Rat {
    dot(&mul_vec(g, x), x)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det(m: &Matrix) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in 0..2 * n {
            a[c][k] = &a[c][k] / &piv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Leading principal minors all positive.
pub fn is_positive_definite(g: &Matrix) -> bool {
    (1..=g.len()).all(|k| {
        let sub: Matrix = g[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&sub).is_positive()
    })
}

pub fn is_symmetric(g: &Matrix) -> bool {
    let n = g.len();
    (0..n).all(|i| (0..n).all(|j| g[i][j] == g[j][i]))
}

/// Rank of a set of integer vectors (rows).
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let m: Matrix = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    rank(&m)
}

pub fn rank(m: &Matrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut a = m.clone();
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Decomposition G = Uᵀ·D·U with U unit upper triangular, so that
/// xᵀGx = Σᵢ dᵢ (xᵢ + Σ_{j>i} uᵢⱼ xⱼ)². Requires G positive definite.
pub struct Ldl {
    pub d: Vec<Rat>,
    /// u[i][j] for j > i
    pub u: Matrix,
}

pub fn ldl(g: &Matrix) -> Option<Ldl> {
    let n = g.len();
    let mut d = vec![Rat::zero(); n];
    let mut u = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let mut di = g[i][i].clone();
        for k in 0..i {
            di -= &d[k] * &u[k][i] * &u[k][i];
        }
        if !di.is_positive() {
            return None;
        }
        for j in i + 1..n {
            let mut s = g[i][j].clone();
            for k in 0..i {
                s -= &d[k] * &u[k][i] * &u[k][j];
            }
            u[i][j] = s / &di;
        }
        u[i][i] = Rat::one();
        d[i] = di;
    }
    Some(Ldl { d, u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[0, 1]]);
        assert_eq!(det(&a), rat_int(2));
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn ldl_reproduces_form() {
        let g = vec![
            vec![rat_int(1), rat(1, 2), rat(1, 2)],
            vec![rat(1, 2), rat_int(1), rat(1, 2)],
            vec![rat(1, 2), rat(1, 2), rat_int(1)],
        ];
        let f = ldl(&g).unwrap();
        let x = [1i64, -2, 3];
        let mut acc = Rat::zero();
        for i in 0..3 {
            let mut s = rat_int(x[i]);
            for j in i + 1..3 {
                s += &f.u[i][j] * rat_int(x[j]);
            }
            acc += &f.d[i] * &s * &s;
        }
        assert_eq!(acc, quad_form_int(&g, &x));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_int(&[vec![1, 0], vec![2, 0]]), 1);
        assert_eq!(rank_int(&[vec![1, 1], vec![1, -1]]), 2);
    }
}
