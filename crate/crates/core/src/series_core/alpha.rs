//! Laurent polynomials in alpha (and the Chern variable x) with cohomology
//! coefficients.

use super::coeff::Coeff;
use super::rational::{qo, Q};
use super::xpoly::XPoly;
use crate::geometry::{CohClass, CohRing};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Sum of `c * alpha^a * x^e`, keyed by `(a, e)`.
#[derive(Clone, Debug)]
pub struct AlphaValue {
    ring: Arc<CohRing>,
    terms: BTreeMap<(i32, i32), CohClass>,
}

impl PartialEq for AlphaValue {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl AlphaValue {
    pub fn zero(ring: &Arc<CohRing>) -> Self {
        AlphaValue { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(ring: &Arc<CohRing>, a: Q) -> Self {
        Self::monomial(CohClass::scalar(ring, a), 0, 0)
    }

    pub fn one(ring: &Arc<CohRing>) -> Self {
        Self::scalar(ring, qo())
    }

    pub fn from_class(c: CohClass) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * alpha^a * x^e`.
    pub fn monomial(c: CohClass, a: i32, e: i32) -> Self {
        let ring = c.ring().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, e), c);
        }
        AlphaValue { ring, terms }
    }

    /// Scalar-valued Laurent polynomial in x times alpha^a.
    pub fn from_xpoly(ring: &Arc<CohRing>, p: &XPoly, a: i32) -> Self {
        let mut r = Self::zero(ring);
        for (e, c) in p.terms() {
            r.add_term(a, *e, CohClass::scalar(ring, c.clone()));
        }
        r
    }

    pub fn ring(&self) -> &Arc<CohRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<(i32, i32), CohClass> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: i32, e: i32) -> CohClass {
        self.terms.get(&(a, e)).cloned().unwrap_or_else(|| CohClass::zero(&self.ring))
    }

    /// All x-terms at alpha^a.
    pub fn alpha_layer(&self, a: i32) -> BTreeMap<i32, CohClass> {
        self.terms.iter().filter(|((b, _), _)| *b == a).map(|((_, e), c)| (*e, c.clone())).collect()
    }

    pub fn max_alpha(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn min_alpha(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(|k| k.1 == 0)
    }

    fn add_term(&mut self, a: i32, e: i32, c: CohClass) {
        if c.is_zero() {
            return;
        }
        let nv = match self.terms.get(&(a, e)) {
            Some(v) => v.add(&c),
            None => c,
        };
        if nv.is_zero() {
            self.terms.remove(&(a, e));
        } else {
            self.terms.insert((a, e), nv);
        }
    }

    pub fn add(&self, o: &AlphaValue) -> AlphaValue {
        let mut r = self.clone();
        for ((a, e), c) in &o.terms {
            r.add_term(*a, *e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &AlphaValue) -> AlphaValue {
        self.add(&o.scale(&-qo()))
    }

    pub fn scale(&self, s: &Q) -> AlphaValue {
        if s.is_zero() {
            return Self::zero(&self.ring);
        }
        AlphaValue { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, c)| (*k, c.scale(s))).collect() }
    }

    pub fn mul(&self, o: &AlphaValue) -> AlphaValue {
        let mut r = Self::zero(&self.ring);
        for ((a1, e1), c1) in &self.terms {
            for ((a2, e2), c2) in &o.terms {
                r.add_term(a1 + a2, e1 + e2, c1.mul(c2));
            }
        }
        r
    }

    pub fn mul_class(&self, c: &CohClass) -> AlphaValue {
        let mut r = Self::zero(&self.ring);
        for ((a, e), v) in &self.terms {
            r.add_term(*a, *e, v.mul(c));
        }
        r
    }

    /// Multiplies by alpha^a x^e.
    pub fn shift(&self, a: i32, e: i32) -> AlphaValue {
        AlphaValue { ring: self.ring.clone(), terms: self.terms.iter().map(|((b, f), c)| ((b + a, f + e), c.clone())).collect() }
    }

    /// Keeps only the terms whose cohomology degree is at most `k`.
    pub fn truncate_degree(&self, k: u32) -> AlphaValue {
        let mut r = Self::zero(&self.ring);
        for (key, c) in &self.terms {
            for j in 0..=k {
                r.add_term(key.0, key.1, c.degree_part(j));
            }
        }
        r
    }

    /// Re-embeds every coefficient into another ring on the same generators.
    pub fn reinterpret(&self, ring: &Arc<CohRing>) -> AlphaValue {
        let mut r = Self::zero(ring);
        for ((a, e), c) in &self.terms {
            r.add_term(*a, *e, c.reinterpret(ring));
        }
        r
    }

    /// Applies a linear functional on classes, giving `(alpha, x) -> value`.
    pub fn apply(&self, f: impl Fn(&CohClass) -> Q) -> BTreeMap<(i32, i32), Q> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.insert(*k, v);
            }
        }
        out
    }

    /// Conjugation alpha -> -alpha.
    pub fn conj(&self) -> AlphaValue {
        AlphaValue {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|((a, e), c)| ((*a, *e), if a.rem_euclid(2) == 1 { c.scale(&-qo()) } else { c.clone() }))
                .collect(),
        }
    }

    /// Scalar value if this is `s * alpha^a * x^e` with a nonzero scalar `s`.
    fn as_scalar_monomial(&self) -> Option<(Q, i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((a, e), c) = self.terms.iter().next().unwrap();
        if c.max_degree() == Some(0) {
            Some((c.scalar_part(), *a, *e))
        } else {
            None
        }
    }
}

impl Coeff for AlphaValue {
    fn zero_like(&self) -> Self {
        AlphaValue::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        AlphaValue::one(&self.ring)
    }
    fn add(&self, o: &Self) -> Self {
        AlphaValue::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        AlphaValue::mul(self, o)
    }
    fn scale(&self, s: &Q) -> Self {
        AlphaValue::scale(self, s)
    }
    fn is_nil(&self) -> bool {
        AlphaValue::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        let (s, a, e) = self.as_scalar_monomial()?;
        Some(AlphaValue::scalar(&self.ring, qo() / s).shift(-a, -e))
    }
}
