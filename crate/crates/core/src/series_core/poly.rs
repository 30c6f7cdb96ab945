//! Dense univariate polynomials over Q in the variable alpha.

use super::rational::{qo, qz, Q};
use num_traits::Zero;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients stored low degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(qo())
    }

    pub fn constant(a: Q) -> Self {
        Poly::from_coeffs(vec![a])
    }

    /// `a + b*alpha`.
    pub fn linear(a: Q, b: Q) -> Self {
        Poly::from_coeffs(vec![a, b])
    }

    pub fn monomial(a: Q, e: usize) -> Self {
        let mut c = vec![qz(); e + 1];
        c[e] = a;
        Poly::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<Q>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(qz)
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(qz)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = qz();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|a| a * s).collect() }
    }

    /// p(-alpha).
    pub fn conj(&self) -> Self {
        Poly {
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        }
    }

    /// Exact division by (alpha - r); `None` if r is not a root.
    pub fn div_root(&self, r: &Q) -> Option<Self> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let n = self.c.len();
        let mut out = vec![qz(); n - 1];
        let mut carry = qz();
        for i in (0..n).rev() {
            let v = &self.c[i] + &carry * r;
            if i == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                out[i - 1] = v.clone();
                carry = v;
            }
        }
        Some(Poly::from_coeffs(out))
    }

    /// Multiplicity of r as a root.
    pub fn root_order(&self, r: &Q) -> u32 {
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            match p.div_root(r) {
                Some(s) => {
                    p = s;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    /// p(alpha + s), the Taylor shift.
    pub fn shift(&self, s: &Q) -> Self {
        let mut out = Poly::zero();
        let x = Poly::linear(s.clone(), qo());
        for a in self.c.iter().rev() {
            out = &(&out * &x) + &Poly::constant(a.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Poly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Long division: (quotient, remainder).
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut qv = vec![qz(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let f = &r[i] / &lead;
            if f.is_zero() {
                continue;
            }
            for j in 0..=dd {
                r[i - dd + j] -= &f * &d.c[j];
            }
            qv[i - dd] = f;
        }
        (Poly::from_coeffs(qv), Poly::from_coeffs(r))
    }

    /// Monic gcd over Q.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        if x.is_zero() {
            return x;
        }
        let l = x.lead();
        x.scale(&(qo() / l))
    }

    /// Rational roots with multiplicity, if the polynomial splits into
    /// linear factors over Q. Returns (leading coefficient, roots).
    pub fn split_rational(&self) -> Option<(Q, Vec<(Q, u32)>)> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Signed};
        self.degree()?;
        let lead = self.lead();
        let mut p = self.clone();
        let mut roots: Vec<(Q, u32)> = Vec::new();
        let z = p.root_order(&qz());
        if z > 0 {
            for _ in 0..z {
                p = p.div_root(&qz()).unwrap();
            }
            roots.push((qz(), z));
        }
        while p.degree().unwrap_or(0) > 0 {
            // Clear denominators to integer coefficients.
            let l = p.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
            let ints: Vec<BigInt> = p.c.iter().map(|a| (a * Q::from_integer(l.clone())).to_integer()).collect();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let divs = |n: &BigInt| -> Vec<BigInt> {
                let mut v = Vec::new();
                let mut k = BigInt::one();
                while &k * &k <= *n {
                    if (n % &k).is_zero() {
                        v.push(k.clone());
                        v.push(n / &k);
                    }
                    k += 1;
                }
                v
            };
            let mut found = None;
            'outer: for pn in divs(&a0) {
                for qd in divs(&an) {
                    for sgn in [1i64, -1] {
                        let r = Q::new(&pn * BigInt::from(sgn), qd.clone());
                        if p.eval(&r).is_zero() {
                            found = Some(r);
                            break 'outer;
                        }
                    }
                }
            }
            let r = found?;
            let k = p.root_order(&r);
            for _ in 0..k {
                p = p.div_root(&r).unwrap();
            }
            roots.push((r, k));
        }
        Some((lead, roots))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + o.coeff(i));
        }
        Poly::from_coeffs(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) - o.coeff(i));
        }
        Poly::from_coeffs(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![qz(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }
}
