//! Laurent polynomials in the Chern variable x.

use super::coeff::Coeff;
use super::rational::{fmt_q, qo, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct XPoly {
    terms: BTreeMap<i32, Q>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn constant(a: Q) -> Self {
        XPoly::monomial(a, 0)
    }

    pub fn monomial(a: Q, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&a) {
            terms.insert(e, a);
        }
        XPoly { terms }
    }

    pub fn coeff(&self, e: i32) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> &BTreeMap<i32, Q> {
        &self.terms
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == 0)
    }

    /// Evaluation at a nonzero rational x.
    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for (e, a) in &self.terms {
            let mut p = qo();
            for _ in 0..e.unsigned_abs() {
                p *= x;
            }
            if *e < 0 {
                p = qo() / p;
            }
            acc += a * p;
        }
        acc
    }

    pub fn to_string_exact(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, a)| match e {
                0 => fmt_q(a),
                1 => format!("({})*x", fmt_q(a)),
                _ => format!("({})*x^{}", fmt_q(a), e),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Coeff for XPoly {
    fn zero_like(&self) -> Self {
        XPoly::zero()
    }
    fn one_like(&self) -> Self {
        XPoly::constant(qo())
    }
    fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (e, a) in &o.terms {
            let v = t.entry(*e).or_insert_with(Q::zero);
            *v += a;
            if Zero::is_zero(&*v) {
                t.remove(e);
            }
        }
        XPoly { terms: t }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = XPoly::zero();
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                r = r.add(&XPoly::monomial(a * b, e + f));
            }
        }
        r
    }
    fn scale(&self, s: &Q) -> Self {
        if Zero::is_zero(s) {
            return XPoly::zero();
        }
        XPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * s)).collect() }
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn inv(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (e, a) = self.terms.iter().next().unwrap();
            Some(XPoly::monomial(qo() / a, -e))
        } else {
            None
        }
    }
}
