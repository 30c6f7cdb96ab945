//! Rational functions in alpha whose denominators split into rational linear
//! factors. Reduction cancels common roots, which is the polynomial gcd for
//! this class of denominators.

use super::poly::Poly;
use super::rational::{fmt_q, qo, qz, Q};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

/// `num / prod (alpha - r)^m`, reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: BTreeMap<Q, u32>,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }

    pub fn constant(a: Q) -> Self {
        RatFn::from_poly(Poly::constant(a))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: BTreeMap::new() }
    }

    /// `alpha^e` for any integer e.
    pub fn alpha_pow(e: i64) -> Self {
        if e >= 0 {
            RatFn::from_poly(Poly::monomial(qo(), e as usize))
        } else {
            let mut den = BTreeMap::new();
            den.insert(qz(), (-e) as u32);
            RatFn { num: Poly::one(), den }
        }
    }

    /// `num / prod (alpha - r)^m` from explicit roots.
    pub fn from_roots(num: Poly, roots: &[(Q, u32)]) -> Self {
        let mut den = BTreeMap::new();
        for (r, m) in roots {
            if *m > 0 {
                *den.entry(r.clone()).or_insert(0) += m;
            }
        }
        let mut f = RatFn { num, den };
        f.reduce();
        f
    }

    /// General `num / den`; `den` must split over Q.
    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let (lead, roots) = den
            .split_rational()
            .ok_or_else(|| Error::Precondition("denominator does not split over Q".into()))?;
        Ok(RatFn::from_roots(num.scale(&(qo() / lead)), &roots))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_roots(&self) -> &BTreeMap<Q, u32> {
        &self.den
    }

    pub fn denominator(&self) -> Poly {
        let mut d = Poly::one();
        for (r, m) in &self.den {
            d = &d * &Poly::linear(-r.clone(), qo()).pow(*m);
        }
        d
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let roots: Vec<Q> = self.den.keys().cloned().collect();
        for r in roots {
            let m = self.den.get_mut(&r).unwrap();
            while *m > 0 {
                match self.num.div_root(&r) {
                    Some(p) => {
                        self.num = p;
                        *m -= 1;
                    }
                    None => break,
                }
            }
            if *m == 0 {
                self.den.remove(&r);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// deg num - deg den; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(dn - self.den.values().map(|m| *m as i64).sum::<i64>())
    }

    pub fn eval(&self, x: &Q) -> Option<Q> {
        let mut d = qo();
        for (r, m) in &self.den {
            let f = x - r;
            if f.is_zero() {
                return None;
            }
            for _ in 0..*m {
                d *= &f;
            }
        }
        Some(self.num.eval(x) / d)
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        RatFn { num: -&self.num, den: self.den.clone() }
    }

    fn common(a: &BTreeMap<Q, u32>, b: &BTreeMap<Q, u32>) -> BTreeMap<Q, u32> {
        let mut c = a.clone();
        for (r, m) in b {
            let e = c.entry(r.clone()).or_insert(0);
            if *m > *e {
                *e = *m;
            }
        }
        c
    }

    fn lift(&self, to: &BTreeMap<Q, u32>) -> Poly {
        let mut p = self.num.clone();
        for (r, m) in to {
            let have = self.den.get(r).copied().unwrap_or(0);
            for _ in have..*m {
                p = &p * &Poly::linear(-r.clone(), qo());
            }
        }
        p
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let den = RatFn::common(&self.den, &o.den);
        let num = &self.lift(&den) + &o.lift(&den);
        let mut f = RatFn { num, den };
        f.reduce();
        f
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        let mut den = self.den.clone();
        for (r, m) in &o.den {
            *den.entry(r.clone()).or_insert(0) += m;
        }
        let mut f = RatFn { num: &self.num * &o.num, den };
        f.reduce();
        f
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFn {
        self.mul(&RatFn::from_poly(p.clone()))
    }

    /// Division by `a + b*alpha` with b nonzero, or by a nonzero constant.
    pub fn div_linear(&self, a: &Q, b: &Q) -> Result<RatFn> {
        if b.is_zero() {
            if a.is_zero() {
                return Err(Error::NonInvertible);
            }
            return Ok(self.scale(&(qo() / a)));
        }
        let root = -(a / b);
        let mut den = self.den.clone();
        *den.entry(root).or_insert(0) += 1;
        let mut f = RatFn { num: self.num.scale(&(qo() / b)), den };
        f.reduce();
        Ok(f)
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::NonInvertible);
        }
        let (lead, roots) = self
            .num
            .split_rational()
            .ok_or_else(|| Error::Precondition("numerator does not split over Q".into()))?;
        let num = self.denominator().scale(&(qo() / lead));
        Ok(RatFn::from_roots(num, &roots))
    }

    pub fn pow(&self, e: u32) -> RatFn {
        let mut r = RatFn::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// f(-alpha).
    pub fn conj(&self) -> RatFn {
        let mut num = self.num.conj();
        let mut den = BTreeMap::new();
        for (r, m) in &self.den {
            // (-alpha - r) = -(alpha + r)
            if m % 2 == 1 {
                num = -&num;
            }
            den.insert(-r.clone(), *m);
        }
        RatFn { num, den }
    }

    /// Pole order at a0 (0 if regular).
    pub fn pole_order(&self, a0: &Q) -> u32 {
        self.den.get(a0).copied().unwrap_or(0)
    }

    /// lim (alpha - a0) f(alpha); errors on a pole of order >= 2.
    pub fn residue_at(&self, a0: &Q) -> Result<Q> {
        match self.pole_order(a0) {
            0 => Ok(qz()),
            1 => {
                let mut v = self.num.eval(a0);
                for (r, m) in &self.den {
                    if r == a0 {
                        continue;
                    }
                    let f = a0 - r;
                    for _ in 0..*m {
                        v /= &f;
                    }
                }
                Ok(v)
            }
            k => Err(Error::PoleOrder { order: k, at: fmt_q(a0) }),
        }
    }

    /// Taylor coefficients of f at a0 (must be regular there), orders 0..n.
    pub fn taylor_at(&self, a0: &Q, n: usize) -> Vec<Q> {
        assert_eq!(self.pole_order(a0), 0);
        // repeated synthetic division by (alpha - a0) gives the low Taylor
        // coefficients of the numerator without a full shift
        let mut s = Vec::with_capacity(n);
        let mut cur: Vec<Q> = self.num.coeffs().to_vec();
        while s.len() < n && !cur.is_empty() {
            let mut quot = vec![qz(); cur.len() - 1];
            let mut acc = qz();
            for i in (0..cur.len()).rev() {
                acc = &acc * a0 + &cur[i];
                if i > 0 {
                    quot[i - 1] = acc.clone();
                }
            }
            s.push(acc);
            cur = quot;
        }
        s.resize(n, qz());
        for (r, m) in &self.den {
            // 1/(c + eps), c = a0 - r
            let c = a0 - r;
            let ci = qo() / &c;
            let mut inv = Vec::with_capacity(n);
            let mut t = ci.clone();
            for _ in 0..n {
                inv.push(t.clone());
                t = -(&t * &ci);
            }
            for _ in 0..*m {
                s = series_mul(&s, &inv, n);
            }
        }
        s
    }

    /// Coefficients of (alpha - g)^{-k}, k = 1..order, at g.
    pub fn principal_part(&self, g: &Q) -> Vec<Q> {
        let m = self.pole_order(g) as usize;
        if m == 0 {
            return Vec::new();
        }
        let mut rest = self.clone();
        rest.den.remove(g);
        let t = rest.taylor_at(g, m);
        (1..=m).map(|k| t[m - k].clone()).collect()
    }

    /// Expansion at alpha = infinity: coefficients of alpha^k for
    /// k = top, top-1, ..., lowest. Returned as (k, coeff) pairs.
    pub fn laurent_at_infinity(&self, lowest: i64) -> Vec<(i64, Q)> {
        let Some(top) = self.degree() else {
            return Vec::new();
        };
        if top < lowest {
            return Vec::new();
        }
        let n = (top - lowest + 1) as usize;
        let dn = self.num.degree().unwrap();
        // prod (1 - r u)^{-m} as a series in u = 1/alpha.
        let mut h = vec![qz(); n];
        h[0] = qo();
        for (r, m) in &self.den {
            let mut g = Vec::with_capacity(n);
            let mut t = qo();
            for _ in 0..n {
                g.push(t.clone());
                t *= r;
            }
            for _ in 0..*m {
                h = series_mul(&h, &g, n);
            }
        }
        // num(alpha) * alpha^{-D} * h(1/alpha); leading power is top.
        // coefficient of alpha^{top - j} = sum_i num_{dn - i} h_{j - i}.
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = qz();
            for i in 0..=j.min(dn) {
                acc += self.num.coeff(dn - i) * &h[j - i];
            }
            out.push((top - j as i64, acc));
        }
        out
    }

    /// Coefficient of alpha^k in the expansion at infinity.
    pub fn coeff_at_infinity(&self, k: i64) -> Q {
        self.laurent_at_infinity(k)
            .into_iter()
            .find(|(e, _)| *e == k)
            .map(|(_, c)| c)
            .unwrap_or_else(qz)
    }
}

pub(crate) fn series_mul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut c = vec![qz(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            c[i + j] += x * y;
        }
    }
    c
}
