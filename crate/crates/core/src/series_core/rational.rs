//! Exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qz() -> Q {
    Q::zero()
}

pub fn qo() -> Q {
    Q::one()
}

/// `p/q` string, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn qpow(x: &Q, e: u32) -> Q {
    let mut r = qo();
    for _ in 0..e {
        r *= x;
    }
    r
}

pub fn factorial(n: u32) -> Q {
    let mut r = qo();
    for k in 2..=n {
        r *= q(k as i64);
    }
    r
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}
