//! Exact rational scalars and small dense matrix helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Canonical "p/q" rendering, always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, d)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(p, d))
        }
        None => Ok(q(s.parse().map_err(|_| bad())?)),
    }
}

pub fn big_to_q(x: &BigRational) -> Result<Q> {
    let n = x.numer().to_i64().ok_or(Error::Overflow("rational conversion"))?;
    let d = x.denom().to_i64().ok_or(Error::Overflow("rational conversion"))?;
    Ok(Q::new(n, d))
}

pub fn big_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow("integer conversion"))
}

pub fn floor_q(x: &Q) -> i64 {
    Integer::div_floor(x.numer(), x.denom())
}

pub fn ceil_q(x: &Q) -> i64 {
    -Integer::div_floor(&-x.numer(), x.denom())
}

pub fn frac_q(x: &Q) -> Q {
    x - q(floor_q(x))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> i64 {
    xs.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

/// (-1)^k.
pub fn sign_pow(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Generalized binomial coefficient binom(m, j) for any integer m and j >= 0.
pub fn gen_binom(m: i64, j: i64) -> i64 {
    if j < 0 {
        return 0;
    }
    if m >= 0 && j > m {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..j as i128 {
        num *= m as i128 - i;
        den *= i + 1;
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    (num / den) as i64
}

pub type QMatrix = Vec<Vec<Q>>;

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    out
}

/// Inverse and determinant of a small rational matrix by Gauss-Jordan
/// elimination over big rationals.
pub fn inverse_det(m: &[Vec<Q>]) -> Result<(QMatrix, Q)> {
    let n = m.len();
    let to_big = |x: &Q| BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(to_big).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Invalid("singular matrix".into()))?;
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let piv = a[k][k].clone();
        det *= &piv;
        for x in a[k].iter_mut() {
            *x /= &piv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    let inv = a
        .iter()
        .map(|r| r[n..].iter().map(big_to_q).collect::<Result<Vec<_>>>())
        .collect::<Result<QMatrix>>()?;
    Ok((inv, big_to_q(&det)?))
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_with_negative_top() {
        assert_eq!(gen_binom(-1, 5), -1);
        assert_eq!(gen_binom(-2, 3), -4);
        assert_eq!(gen_binom(4, 2), 6);
        assert_eq!(gen_binom(2, 3), 0);
        assert_eq!(gen_binom(-3, 0), 1);
    }

    #[test]
    fn rationals_round_trip() {
        assert_eq!(fmt_q(&qr(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&q(5)), "5/1");
        assert_eq!(parse_q("-3/2").unwrap(), qr(-3, 2));
        assert_eq!(parse_q(" 7 ").unwrap(), q(7));
        assert!(parse_q("1/0").is_err());
        assert_eq!(floor_q(&qr(-1, 2)), -1);
        assert_eq!(ceil_q(&qr(-1, 2)), 0);
        assert_eq!(frac_q(&qr(-1, 3)), qr(2, 3));
    }
}
