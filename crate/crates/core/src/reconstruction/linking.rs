//! Prescribed values of b_T(V_d) at the balloon poles.

use crate::error::{Error, Result};
use crate::euler_engine::{balloon_multiples, linking_factor, BundleSpec, MultClass};
use crate::geometry::Geometry;
use crate::series_core::{fmt_q, q, qo, Degree, RatFn, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Values keyed by oriented balloon `(p, q)` and multiplicity delta,
/// together with Omega restricted at each fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkingValueTable {
    pub class: MultClass,
    pub xval: Q,
    pub values: BTreeMap<(usize, usize, u32), Q>,
    pub omega: Vec<Q>,
}

pub fn linking_values_from_splitting(g: &Geometry, v: &BundleSpec, b: MultClass, dmax: u32, xval: &Q) -> Result<LinkingValueTable> {
    let mut values = BTreeMap::new();
    for (bl, delta) in balloon_multiples(g, dmax) {
        let d: Degree = bl.degree.iter().map(|x| x * delta).collect();
        let a0 = &bl.weight / q(delta as i64);
        values.insert((bl.p, bl.q, delta), linking_factor(g, v, b, &d, bl.p, &a0, xval)?);
    }
    let omega = (0..g.n_fixed())
        .map(|p| {
            let r = crate::euler_engine::omega_factored(v, b).restrict(g, p, xval)?;
            constant_of(&r, p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinkingValueTable { class: b, xval: xval.clone(), values, omega })
}

fn constant_of(r: &RatFn, p: usize) -> Result<Q> {
    if !r.is_polynomial() || r.degree().unwrap_or(0) > 0 {
        return Err(Error::Precondition(format!("Omega depends on alpha at point {p}")));
    }
    Ok(r.eval(&Q::zero()).unwrap_or_else(Q::zero))
}

/// One signed term of a resolution of V by split bundles.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionTerm {
    pub sign: i32,
    pub bundle: BundleSpec,
}

/// Signed multiset of weights: H^0 weights of the convex summands and H^1
/// weights of the concave ones, as for a split bundle, combined with the
/// term signs.
fn balloon_weights(g: &Geometry, terms: &[ResolutionTerm], p: usize, d: &[u32], a0: &Q) -> BTreeMap<Q, i64> {
    let mut acc: BTreeMap<Q, i64> = BTreeMap::new();
    for t in terms {
        for l in &t.bundle.convex {
            let lp = l.value_at(g, p);
            for k in 0..=l.pairing(g, d) {
                *acc.entry(&lp - q(k) * a0).or_insert(0) += t.sign as i64;
            }
        }
        for l in &t.bundle.concave {
            let lp = l.value_at(g, p);
            for k in 1..(-l.pairing(g, d)) {
                *acc.entry(&lp + q(k) * a0).or_insert(0) += t.sign as i64;
            }
        }
    }
    acc.retain(|_, m| *m != 0);
    acc
}

/// Linking values for a bundle given by a resolution. Weights are cancelled
/// across signs before b is applied; zero weights are ignored for the Euler
/// class and kept (as x) for the Chern polynomial.
pub fn linking_values_from_resolution(
    g: &Geometry,
    terms: &[ResolutionTerm],
    b: MultClass,
    dmax: u32,
    xval: &Q,
) -> Result<LinkingValueTable> {
    let mut values = BTreeMap::new();
    for (bl, delta) in balloon_multiples(g, dmax) {
        let d: Degree = bl.degree.iter().map(|x| x * delta).collect();
        let a0 = &bl.weight / q(delta as i64);
        let mut val = qo();
        for (w, m) in balloon_weights(g, terms, bl.p, &d, &a0) {
            if m < 0 {
                return Err(Error::NegativeMultiplicity(fmt_q(&w)));
            }
            if b == MultClass::Euler && w.is_zero() {
                continue;
            }
            for _ in 0..m {
                val *= b.eval_weight(&w, xval);
            }
        }
        values.insert((bl.p, bl.q, delta), val);
    }
    let mut omega = Vec::with_capacity(g.n_fixed());
    for p in 0..g.n_fixed() {
        let mut val = qo();
        for (w, m) in omega_weights(g, terms, p) {
            let f = b.eval_weight(&w, xval);
            if f.is_zero() {
                return Err(Error::OmegaVanishes(p));
            }
            for _ in 0..m.unsigned_abs() {
                if m > 0 {
                    val *= &f;
                } else {
                    val /= &f;
                }
            }
        }
        omega.push(val);
    }
    Ok(LinkingValueTable { class: b, xval: xval.clone(), values, omega })
}

/// Net multiplicity of each weight in Omega at p: convex summands count with
/// the term sign, concave ones against it.
fn omega_weights(g: &Geometry, terms: &[ResolutionTerm], p: usize) -> BTreeMap<Q, i64> {
    let mut acc: BTreeMap<Q, i64> = BTreeMap::new();
    for t in terms {
        for l in &t.bundle.convex {
            *acc.entry(l.value_at(g, p)).or_insert(0) += t.sign as i64;
        }
        for l in &t.bundle.concave {
            *acc.entry(l.value_at(g, p)).or_insert(0) -= t.sign as i64;
        }
    }
    acc.retain(|_, m| *m != 0);
    acc
}

/// Weights L(p) whose Chern-polynomial factors x + L(p) divide Omega at
/// each fixed point, with repetition.
pub fn omega_x_poles(g: &Geometry, terms: &[ResolutionTerm]) -> Vec<Vec<Q>> {
    (0..g.n_fixed())
        .map(|p| {
            omega_weights(g, terms, p)
                .into_iter()
                .filter(|(_, m)| *m < 0)
                .flat_map(|(w, m)| std::iter::repeat(w).take(m.unsigned_abs() as usize))
                .collect()
        })
        .collect()
}

/// rk V_d for a resolution: the signed sum of the split ranks.
pub fn resolution_rank(g: &Geometry, terms: &[ResolutionTerm], d: &[u32]) -> i64 {
    terms.iter().map(|t| t.sign as i64 * t.bundle.induced_rank(g, d)).sum()
}
