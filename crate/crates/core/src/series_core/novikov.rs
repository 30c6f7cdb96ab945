//! Truncated multivariate Novikov series with box truncation.

use super::coeff::Coeff;
use super::rational::{q, qo, Q};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Exponent vector d = (d_1, ..., d_m).
pub type Degree = Vec<u32>;

/// Sum of c_d q^d with every d_a <= d_max.
#[derive(Clone, Debug, PartialEq)]
pub struct NovikovSeries<C: Coeff> {
    m: usize,
    dmax: u32,
    proto: C,
    terms: BTreeMap<Degree, C>,
}

/// All d with 0 <= d_a <= dmax, ordered by total degree then lexicographically.
pub fn degree_box(m: usize, dmax: u32) -> Vec<Degree> {
    let mut out: Vec<Degree> = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for d in &out {
            for k in 0..=dmax {
                let mut e = d.clone();
                e.push(k);
                next.push(e);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| {
        let sa: u32 = a.iter().sum();
        let sb: u32 = b.iter().sum();
        sa.cmp(&sb).then(a.cmp(b))
    });
    out
}

/// All r with 0 <= r <= d componentwise.
pub fn sub_degrees(d: &[u32]) -> Vec<Degree> {
    let mut out: Vec<Degree> = vec![vec![]];
    for &k in d {
        let mut next = Vec::new();
        for r in &out {
            for j in 0..=k {
                let mut e = r.clone();
                e.push(j);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

pub fn is_zero_degree(d: &[u32]) -> bool {
    d.iter().all(|x| *x == 0)
}

impl<C: Coeff> NovikovSeries<C> {
    /// The zero series; `proto` is any element of the coefficient ring.
    pub fn zero(m: usize, dmax: u32, proto: &C) -> Self {
        NovikovSeries { m, dmax, proto: proto.zero_like(), terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, dmax: u32, c: C) -> Self {
        let mut s = NovikovSeries::zero(m, dmax, &c);
        s.set(vec![0; m], c);
        s
    }

    pub fn one(m: usize, dmax: u32, proto: &C) -> Self {
        NovikovSeries::constant(m, dmax, proto.one_like())
    }

    /// The Novikov variable q_a.
    pub fn var(m: usize, dmax: u32, a: usize, proto: &C) -> Self {
        let mut s = NovikovSeries::zero(m, dmax, proto);
        let mut d = vec![0; m];
        d[a] = 1;
        s.set(d, proto.one_like());
        s
    }

    pub fn from_terms(m: usize, dmax: u32, proto: &C, terms: impl IntoIterator<Item = (Degree, C)>) -> Self {
        let mut s = NovikovSeries::zero(m, dmax, proto);
        for (d, c) in terms {
            let v = s.get(&d).add(&c);
            s.set(d, v);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    pub fn proto(&self) -> &C {
        &self.proto
    }

    pub fn get(&self, d: &[u32]) -> C {
        self.terms.get(d).cloned().unwrap_or_else(|| self.proto.zero_like())
    }

    /// Stores a coefficient; entries beyond the box are dropped.
    pub fn set(&mut self, d: Degree, c: C) {
        assert_eq!(d.len(), self.m, "degree length");
        if d.iter().any(|x| *x > self.dmax) {
            return;
        }
        if c.is_nil() {
            self.terms.remove(&d);
        } else {
            self.terms.insert(d, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Degree, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        self.get(&vec![0; self.m])
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.m != o.m {
            return Err(Error::VariableMismatch(self.m, o.m));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        r.dmax = self.dmax.min(o.dmax);
        for (d, c) in &o.terms {
            let v = r.get(d).add(c);
            r.set(d.clone(), v);
        }
        r.terms.retain(|d, _| d.iter().all(|x| *x <= r.dmax));
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &Q) -> Self {
        self.map(|c| c.scale(s))
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        self.map(|c| c.mul(k))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = NovikovSeries::zero(self.m, self.dmax, &self.proto);
        for (d, c) in &self.terms {
            r.set(d.clone(), f(c));
        }
        r
    }

    /// Coefficientwise change of coefficient ring.
    pub fn map_into<D: Coeff>(&self, proto: &D, f: impl Fn(&C) -> D) -> NovikovSeries<D> {
        let mut r = NovikovSeries::zero(self.m, self.dmax, proto);
        for (d, c) in &self.terms {
            r.set(d.clone(), f(c));
        }
        r
    }

    /// Truncated product: coefficient of q^d is sum over r + s = d of a_r b_s.
    pub fn mul_truncated(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let dmax = self.dmax.min(o.dmax);
        let mut r = NovikovSeries::zero(self.m, dmax, &self.proto);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                let d: Degree = d1.iter().zip(d2).map(|(a, b)| a + b).collect();
                if d.iter().any(|x| *x > dmax) {
                    continue;
                }
                let v = r.get(&d).add(&c1.mul(c2));
                r.set(d, v);
            }
        }
        Ok(r)
    }

    /// Two-sided inverse of a series with invertible constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let c0i = c0.inv().ok_or(Error::NonInvertible)?;
        let mut b = NovikovSeries::zero(self.m, self.dmax, &self.proto);
        for d in degree_box(self.m, self.dmax) {
            if is_zero_degree(&d) {
                b.set(d, c0i.clone());
                continue;
            }
            let mut acc = self.proto.zero_like();
            for r in sub_degrees(&d) {
                if is_zero_degree(&r) {
                    continue;
                }
                let s: Degree = d.iter().zip(&r).map(|(a, b)| a - b).collect();
                let ar = self.get(&r);
                if ar.is_nil() {
                    continue;
                }
                acc = acc.add(&ar.mul(&b.get(&s)));
            }
            b.set(d, acc.mul(&c0i).neg());
        }
        Ok(b)
    }

    fn max_power(&self) -> u32 {
        self.m as u32 * self.dmax
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_nil() {
            return Err(Error::Precondition("exp requires zero constant term".into()));
        }
        let mut result = NovikovSeries::one(self.m, self.dmax, &self.proto);
        let mut term = result.clone();
        for k in 1..=self.max_power() {
            term = term.mul_truncated(self)?.scale(&(qo() / q(k as i64)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// log of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        let one = self.proto.one_like();
        if !self.constant_term().sub(&one).is_nil() {
            return Err(Error::Precondition("log requires constant term 1".into()));
        }
        let u = self.sub(&NovikovSeries::one(self.m, self.dmax, &self.proto))?;
        let mut result = NovikovSeries::zero(self.m, self.dmax, &self.proto);
        let mut pw = NovikovSeries::one(self.m, self.dmax, &self.proto);
        for k in 1..=self.max_power() {
            pw = pw.mul_truncated(&u)?;
            if pw.is_zero() {
                break;
            }
            let sgn = if k % 2 == 1 { qo() } else { -qo() };
            result = result.add(&pw.scale(&(sgn / q(k as i64))))?;
        }
        Ok(result)
    }

    /// Formal composition a(q_1 -> images_1, ..., q_m -> images_m), where each
    /// image is q_a times a unit.
    pub fn substitute(&self, images: &[NovikovSeries<Q>]) -> Result<Self> {
        if images.len() != self.m {
            return Err(Error::VariableMismatch(self.m, images.len()));
        }
        for (a, img) in images.iter().enumerate() {
            if img.nvars() != self.m {
                return Err(Error::VariableMismatch(self.m, img.nvars()));
            }
            let mut ea = vec![0; self.m];
            ea[a] = 1;
            let unit = img.get(&ea) == qo();
            let divisible = img.terms().all(|(d, _)| d[a] >= 1);
            if !unit || !divisible {
                return Err(Error::Precondition(format!("image {a} is not q_{a} times a unit")));
            }
        }
        let dmax = images.iter().map(|i| i.dmax).fold(self.dmax, u32::min);
        // powers[a][k] = images[a]^k
        let mut powers: Vec<Vec<NovikovSeries<Q>>> = Vec::new();
        for img in images {
            let mut v = vec![NovikovSeries::one(self.m, dmax, &qo())];
            for k in 1..=dmax as usize {
                let next = v[k - 1].mul_truncated(img)?;
                v.push(next);
            }
            powers.push(v);
        }
        let mut r = NovikovSeries::zero(self.m, dmax, &self.proto);
        for (d, c) in &self.terms {
            if d.iter().any(|x| *x > dmax) {
                continue;
            }
            let mut p = NovikovSeries::one(self.m, dmax, &qo());
            for (a, k) in d.iter().enumerate() {
                p = p.mul_truncated(&powers[a][*k as usize])?;
            }
            for (e, s) in p.terms() {
                let v = r.get(e).add(&c.scale(s));
                r.set(e.clone(), v);
            }
        }
        Ok(r)
    }
}
