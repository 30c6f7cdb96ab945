//! Products of linear factors in the ring generators, alpha and x.

use crate::error::{Error, Result};
use crate::geometry::{CohClass, CohRing, Geometry};
use crate::series_core::{qo, qpow, qz, AlphaValue, Poly, RatFn, Q};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `sum_i gens[i] * G_i + cst + alpha_coeff * alpha + x_coeff * x`, where
/// `G_i` are the ring generators and `cst` is an equivariant weight constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    pub gens: Vec<Q>,
    pub cst: Q,
    pub alpha: Q,
    pub x: Q,
}

impl LinearForm {
    pub fn new(gens: Vec<Q>, cst: Q, alpha: Q, x: Q) -> Self {
        LinearForm { gens, cst, alpha, x }
    }

    /// Restriction to a fixed point, with x specialized: `a + b alpha`.
    pub fn restrict(&self, g: &Geometry, p: usize, xval: &Q) -> (Q, Q) {
        let a = g.restrict_linear(&self.gens, p) + &self.cst + &self.x * xval;
        (a, self.alpha.clone())
    }

    /// Nonequivariant value as an alpha-Laurent polynomial; drops `cst`.
    pub fn to_alpha_value(&self, ring: &Arc<CohRing>) -> AlphaValue {
        let mut v = AlphaValue::from_class(CohClass::linear(ring, &self.gens));
        if !self.alpha.is_zero() {
            v = v.add(&AlphaValue::scalar(ring, self.alpha.clone()).shift(1, 0));
        }
        if !self.x.is_zero() {
            v = v.add(&AlphaValue::scalar(ring, self.x.clone()).shift(0, 1));
        }
        v
    }

    pub fn conj(&self) -> Self {
        LinearForm { alpha: -self.alpha.clone(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|c| c.is_zero()) && self.cst.is_zero() && self.alpha.is_zero() && self.x.is_zero()
    }

    /// Inverse as an alpha- or x-Laurent expansion, using nilpotency of the
    /// generator part. Requires exactly one of alpha, x to be nonzero.
    fn inverse_expansion(&self, ring: &Arc<CohRing>) -> Result<AlphaValue> {
        let c = CohClass::linear(ring, &self.gens);
        let (unit, key) = match (self.alpha.is_zero(), self.x.is_zero()) {
            (false, true) => (self.alpha.clone(), (1, 0)),
            (true, false) => (self.x.clone(), (0, 1)),
            (true, true) => return Err(Error::NonInvertible),
            (false, false) => {
                return Err(Error::Unsupported("inverse of a factor carrying both alpha and x".into()))
            }
        };
        // 1/(u t + c) = sum_j (-c)^j / (u t)^{j+1}
        let mut out = AlphaValue::zero(ring);
        let neg_c = c.scale(&-qo());
        let mut pw = CohClass::one(ring);
        let mut upow = unit.clone();
        let mut j = 0i32;
        while !pw.is_zero() {
            let term = AlphaValue::from_class(pw.scale(&(qo() / &upow))).shift(-(j + 1) * key.0, -(j + 1) * key.1);
            out = out.add(&term);
            pw = pw.mul(&neg_c);
            upow *= &unit;
            j += 1;
        }
        Ok(out)
    }
}

/// `prefactor * prod_i form_i^{e_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredForm {
    pub prefactor: Q,
    pub factors: Vec<(LinearForm, i32)>,
}

impl FactoredForm {
    pub fn one() -> Self {
        FactoredForm { prefactor: qo(), factors: Vec::new() }
    }

    pub fn push(&mut self, f: LinearForm, e: i32) {
        if e != 0 {
            self.factors.push((f, e));
        }
    }

    pub fn mul(&self, o: &FactoredForm) -> FactoredForm {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        FactoredForm { prefactor: &self.prefactor * &o.prefactor, factors }
    }

    pub fn inv(&self) -> Result<FactoredForm> {
        if self.prefactor.is_zero() {
            return Err(Error::NonInvertible);
        }
        Ok(FactoredForm {
            prefactor: qo() / &self.prefactor,
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        })
    }

    pub fn conj(&self) -> FactoredForm {
        FactoredForm {
            prefactor: self.prefactor.clone(),
            factors: self.factors.iter().map(|(f, e)| (f.conj(), *e)).collect(),
        }
    }

    /// Merges identical factors and drops those with net exponent zero.
    pub fn simplify(&self) -> FactoredForm {
        let mut acc: BTreeMap<LinearForm, i32> = BTreeMap::new();
        for (f, e) in &self.factors {
            *acc.entry(f.clone()).or_insert(0) += e;
        }
        FactoredForm {
            prefactor: self.prefactor.clone(),
            factors: acc.into_iter().filter(|(_, e)| *e != 0).collect(),
        }
    }

    /// The same form with all equivariant constants removed.
    pub fn nonequivariant(&self) -> FactoredForm {
        FactoredForm {
            prefactor: self.prefactor.clone(),
            factors: self.factors.iter().map(|(f, e)| (LinearForm { cst: qz(), ..f.clone() }, *e)).collect(),
        }
    }

    /// Multiset of factors with positive and negative total exponent.
    pub fn exponent_map(&self) -> BTreeMap<LinearForm, i32> {
        self.simplify().factors.into_iter().collect()
    }

    /// Restriction at a fixed point as a rational function of alpha.
    pub fn restrict(&self, g: &Geometry, p: usize, xval: &Q) -> Result<RatFn> {
        let mut num = Poly::constant(self.prefactor.clone());
        let mut roots: BTreeMap<Q, i64> = BTreeMap::new();
        for (f, e) in &self.factors {
            let (a, b) = f.restrict(g, p, xval);
            if b.is_zero() {
                if a.is_zero() {
                    if *e < 0 {
                        return Err(Error::ZeroWeight(p));
                    }
                    return Ok(RatFn::zero());
                }
                let s = if *e > 0 { qpow(&a, *e as u32) } else { qo() / qpow(&a, (-*e) as u32) };
                num = num.scale(&s);
            } else {
                // a + b alpha = b (alpha - r)
                let r = -(&a / &b);
                let s = if *e > 0 { qpow(&b, *e as u32) } else { qo() / qpow(&b, (-*e) as u32) };
                num = num.scale(&s);
                *roots.entry(r).or_insert(0) += *e as i64;
            }
        }
        let mut den = Vec::new();
        for (r, e) in roots {
            if e > 0 {
                num = &num * &Poly::linear(-r.clone(), qo()).pow(e as u32);
            } else if e < 0 {
                den.push((r, (-e) as u32));
            }
        }
        Ok(RatFn::from_roots(num, &den))
    }

    /// Nonequivariant expansion in `ring`. Factors with negative exponent are
    /// inverted as alpha- or x-Laurent series; a factor with neither is an
    /// error. Equivariant constants must already be absent.
    pub fn expand(&self, ring: &Arc<CohRing>) -> Result<AlphaValue> {
        let mut v = AlphaValue::scalar(ring, self.prefactor.clone());
        for (f, e) in &self.factors {
            if !f.cst.is_zero() {
                return Err(Error::Precondition("nonequivariant expansion of an equivariant factor".into()));
            }
            if *e > 0 {
                let fv = f.to_alpha_value(ring);
                for _ in 0..*e {
                    v = v.mul(&fv);
                }
            }
        }
        for (f, e) in &self.factors {
            if *e < 0 {
                let fi = f.inverse_expansion(ring)?;
                for _ in 0..(-*e) {
                    v = v.mul(&fi);
                }
            }
        }
        Ok(v)
    }

    /// Degree in alpha of the restricted rational function, counted from
    /// the factor list (factors without alpha contribute nothing).
    pub fn alpha_degree(&self) -> i64 {
        self.factors.iter().filter(|(f, _)| !f.alpha.is_zero()).map(|(_, e)| *e as i64).sum()
    }

    /// Number of factors carrying x, counted with sign.
    pub fn x_count(&self) -> (u32, u32) {
        let mut pos = 0;
        let mut neg = 0;
        for (f, e) in &self.factors {
            if !f.x.is_zero() {
                if *e > 0 {
                    pos += *e as u32;
                } else {
                    neg += (-*e) as u32;
                }
            }
        }
        (pos, neg)
    }
}
