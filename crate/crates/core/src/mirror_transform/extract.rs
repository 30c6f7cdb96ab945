//! Matching the integrated transformed series against alpha^-3 (2 - d.T) K_d.

use super::Transformed;
use crate::error::{Error, Result};
use crate::euler_engine::{multi_indices, BundleSpec, EquivariantSeries, MultClass};
use crate::geometry::{CohClass, Geometry};
use crate::linalg::solve_unique;
use crate::series_core::{degree_box, factorial, is_zero_degree, q, q_abs, qf, qo, qpow, qz, NovikovSeries, Poly, RatFn, Degree, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantTable {
    pub k: BTreeMap<Degree, Q>,
    /// Sum of absolute mismatches per degree; zero on every successful run.
    pub residuals: BTreeMap<Degree, Q>,
    /// The x-order s at which the invariants were read off.
    pub shift: i64,
    /// Phi = sum_d K_d Q^d.
    pub phi: NovikovSeries<Q>,
}

/// rk V_d minus the expected dimension, required constant over the degree
/// box. Euler and one require it to vanish.
pub fn dimension_shift(g: &Geometry, v: &BundleSpec, b: MultClass, dmax: u32) -> Result<i64> {
    shift_from_ranks(g, b, dmax, |d| if b == MultClass::One { 0 } else { v.induced_rank(g, d) })
}

/// [`dimension_shift`] for a bundle known only through `rank(d)`.
pub fn shift_from_ranks(g: &Geometry, b: MultClass, dmax: u32, rank: impl Fn(&[u32]) -> i64) -> Result<i64> {
    let c1 = g.c1();
    let mut shift = None;
    for d in degree_box(g.m, dmax) {
        if is_zero_degree(&d) {
            continue;
        }
        let expdim = g.pairing(&c1, &d)?.to_integer().try_into().unwrap_or(i64::MAX) + g.dim as i64 - 3;
        let s = rank(&d) - expdim;
        match b {
            MultClass::ChernPoly => {
                if s < 0 || shift.is_some_and(|t| t != s) {
                    return Err(Error::ShiftNotConstant(format!("s = {s} at d = {d:?}")));
                }
            }
            _ if s != 0 => return Err(Error::DimensionBalance(format!("{d:?}"))),
            _ => {}
        }
        shift = Some(s);
    }
    Ok(shift.unwrap_or(0))
}

/// K_d from a balanced nonequivariant transform (euler or one).
pub fn extract_invariants(g: &Geometry, v: &BundleSpec, b: MultClass, tr: &Transformed, dmax: u32) -> Result<InvariantTable> {
    if b == MultClass::ChernPoly {
        return Err(Error::Precondition("chern_poly needs the shifted extraction".into()));
    }
    dimension_shift(g, v, b, dmax)?;
    extract_invariants_shifted(g, tr, 0, dmax)
}

/// K_d read from the x^s coefficient of the integrated series.
pub fn extract_invariants_shifted(g: &Geometry, tr: &Transformed, s: i64, dmax: u32) -> Result<InvariantTable> {
    let mus = multi_indices(g.m, g.dim as u32);
    let ring = &g.ring;
    let weights: Vec<CohClass> = mus
        .iter()
        .map(|mu| {
            let mut c = CohClass::one(ring);
            for (a, e) in mu.iter().enumerate() {
                let h = CohClass::linear(ring, &g.h_coeffs[a]).scale(&-qo());
                c = c.mul(&h.pow(*e)).scale(&(qo() / factorial(*e)));
            }
            c
        })
        .collect();
    let mut rows = BTreeMap::new();
    for d in degree_box(g.m, dmax) {
        if is_zero_degree(&d) {
            continue;
        }
        let ad = tr.coeffs.get(&d).ok_or_else(|| Error::DegreeTooLarge(format!("{d:?}")))?;
        let mut vals = BTreeMap::new();
        let mut stray = qz();
        for (mu, w) in mus.iter().zip(&weights) {
            let target = -3 + mu.iter().sum::<u32>() as i32;
            for ((a, e), c) in ad.apply(|c| g.integrate(&c.mul(w))) {
                if e as i64 != s {
                    continue;
                }
                if a == target {
                    vals.insert(mu.clone(), c);
                } else {
                    stray += q_abs(&c);
                }
            }
        }
        rows.insert(d, (vals, stray));
    }
    finish(g, rows, s)
}

/// For each mu, `sum_p [alpha^{-3+|mu|}] A_d(p) (-H(p))^mu / mu! / e(p)`:
/// the lambda-degree-zero part of the equivariant integral.
fn equivariant_values(g: &Geometry, a: &EquivariantSeries, d: &[u32]) -> Result<BTreeMap<Vec<u32>, Q>> {
    let mut out = BTreeMap::new();
    for mu in multi_indices(g.m, g.dim as u32) {
        let k = -3 + mu.iter().sum::<u32>() as i64;
        let mut acc = qz();
        for (p, fp) in g.fixed_points.iter().enumerate() {
            let mut w = qo() / &fp.euler;
            for (a_, e) in mu.iter().enumerate() {
                w *= qpow(&-g.h_value(a_, p), *e) / factorial(*e);
            }
            if !w.is_zero() {
                acc += a.get(p, d).coeff_at_infinity(k) * w;
            }
        }
        out.insert(mu, acc);
    }
    Ok(out)
}

/// K_d from fixed-point restrictions (euler or one).
pub fn extract_equivariant(g: &Geometry, a: &EquivariantSeries) -> Result<InvariantTable> {
    let mut rows = BTreeMap::new();
    for d in degree_box(g.m, a.dmax) {
        if !is_zero_degree(&d) {
            rows.insert(d.clone(), (equivariant_values(g, a, &d)?, qz()));
        }
    }
    finish(g, rows, 0)
}

/// Roots in x of the denominator of the restrictions, with multiplicity
/// taken as the maximum over fixed points. `per_point[p]` lists the
/// restrictions L(p) of the divided-out summands, each a factor x + L(p).
pub fn x_denominator(per_point: &[Vec<Q>]) -> Vec<(Q, u32)> {
    let mut mult: BTreeMap<Q, u32> = BTreeMap::new();
    for vals in per_point {
        let mut here: BTreeMap<Q, u32> = BTreeMap::new();
        for l in vals {
            *here.entry(-l.clone()).or_insert(0) += 1;
        }
        for (r, k) in here {
            let e = mult.entry(r).or_insert(0);
            *e = (*e).max(k);
        }
    }
    mult.into_iter().collect()
}

/// K_d for chern_poly from restrictions computed at sampled x. Each
/// integrated value times the denominator is a polynomial in x of degree at
/// most s + deg(den); it is fitted on that many points plus one check, and
/// K_d is the x^s coefficient of the quotient at x = infinity.
pub fn extract_equivariant_interpolated(
    g: &Geometry,
    s: i64,
    den: &[(Q, u32)],
    dmax: u32,
    mut sample: impl FnMut(&Q) -> Result<EquivariantSeries>,
) -> Result<InvariantTable> {
    let den_deg: u32 = den.iter().map(|(_, k)| k).sum();
    let npoly = s as usize + den_deg as usize + 1;
    let mut den_poly = Poly::one();
    for (r, k) in den {
        den_poly = &den_poly * &Poly::linear(-r.clone(), qo()).pow(*k);
    }
    let mut xs = Vec::new();
    let mut k = 1;
    while xs.len() < npoly + 1 {
        let x = q(k) + qf(1, 3);
        if !den.iter().any(|(r, _)| *r == x) {
            xs.push(x);
        }
        k += 1;
    }
    let mut samples = Vec::with_capacity(xs.len());
    for x in &xs {
        samples.push(sample(x)?);
    }
    let vander: Vec<Vec<Q>> = xs[..npoly].iter().map(|x| (0..npoly).map(|i| qpow(x, i as u32)).collect()).collect();
    let mut rows = BTreeMap::new();
    for d in degree_box(g.m, dmax) {
        if is_zero_degree(&d) {
            continue;
        }
        let per_x: Vec<BTreeMap<Vec<u32>, Q>> =
            samples.iter().map(|a| equivariant_values(g, a, &d)).collect::<Result<_>>()?;
        let mut vals = BTreeMap::new();
        for mu in per_x[0].keys() {
            let ys: Vec<Q> = xs.iter().zip(&per_x).map(|(x, t)| &t[mu] * den_poly.eval(x)).collect();
            let coeffs = solve_unique(&vander, &ys[..npoly], npoly)
                .ok_or_else(|| Error::ExtractionResidual(format!("{d:?}: singular x-interpolation")))?;
            let p = Poly::from_coeffs(coeffs);
            if p.eval(&xs[npoly]) != ys[npoly] {
                return Err(Error::ExtractionResidual(format!("{d:?}: x-dependence is not rational of the expected degree")));
            }
            vals.insert(mu.clone(), RatFn::from_roots(p, den).coeff_at_infinity(s));
        }
        rows.insert(d, (vals, qz()));
    }
    finish(g, rows, s)
}

type Rows = BTreeMap<Degree, (BTreeMap<Vec<u32>, Q>, Q)>;

/// K_d = half the mu = 0 value; mu = e_a must give -d_a K_d and every other
/// mu must give zero.
fn finish(g: &Geometry, rows: Rows, s: i64) -> Result<InvariantTable> {
    let mut k = BTreeMap::new();
    let mut residuals = BTreeMap::new();
    let mut phi = NovikovSeries::zero(g.m, rows.keys().map(|d| d.iter().copied().max().unwrap_or(0)).max().unwrap_or(0), &qo());
    for (d, (vals, stray)) in rows {
        let kd = vals.get(&vec![0; g.m]).cloned().unwrap_or_else(qz) / q(2);
        let mut res = stray;
        for (mu, val) in &vals {
            let deg: u32 = mu.iter().sum();
            let expected = match deg {
                0 => continue,
                1 => -q(d[mu.iter().position(|e| *e == 1).unwrap()] as i64) * &kd,
                _ => qz(),
            };
            res += q_abs(&(val - expected));
        }
        if !res.is_zero() {
            return Err(Error::ExtractionResidual(format!("{d:?}")));
        }
        phi.set(d.clone(), kd.clone());
        k.insert(d.clone(), kd);
        residuals.insert(d, res);
    }
    Ok(InvariantTable { k, residuals, shift: s, phi })
}
