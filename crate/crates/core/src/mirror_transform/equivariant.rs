//! The transform carried out fixed point by fixed point, with alpha-rational
//! coefficients. Needed wherever a nonequivariant expansion is unavailable,
//! and as a second route to the same mirror data.

use super::{invert_mirror_map, MirrorData};
use crate::error::{Error, Result};
use crate::euler_engine::{assemble_b, BundleSpec, EquivariantSeries, MultClass};
use crate::geometry::Geometry;
use crate::linalg::solve_unique;
use crate::series_core::{degree_box, is_zero_degree, qo, qz, NovikovSeries, RatFn, XPoly, Q};
use std::collections::BTreeMap;

/// Mirror data and transformed restrictions A_d(p) at one value of x.
#[derive(Clone, Debug)]
pub struct EquivariantMirror {
    pub xval: Q,
    pub mirror: MirrorData,
    pub a: EquivariantSeries,
}

/// Restricts B, reads the mirror data from the expansion of B_d(p)/Omega(p)
/// at alpha = infinity, and transforms each fixed point separately.
pub fn equivariant_transform(g: &Geometry, v: &BundleSpec, b: MultClass, dmax: u32, xval: &Q) -> Result<EquivariantMirror> {
    let bser = assemble_b(g, v, b, dmax)?.restrict(g, xval)?;
    transform_restricted(g, &bser, xval)
}

/// Same as [`equivariant_transform`] starting from given restrictions.
pub fn transform_restricted(g: &Geometry, bser: &EquivariantSeries, xval: &Q) -> Result<EquivariantMirror> {
    let m = g.m;
    let dmax = bser.dmax;
    let np = g.n_fixed();
    let mut cof: Vec<BTreeMap<_, RatFn>> = vec![BTreeMap::new(); np];
    for p in 0..np {
        let om = &bser.omega[p];
        if om.is_zero() {
            return Err(Error::OmegaVanishes(p));
        }
        let oinv = om.inv()?;
        for d in degree_box(m, dmax) {
            if !is_zero_degree(&d) {
                cof[p].insert(d.clone(), bser.get(p, &d).mul(&oinv));
            }
        }
    }
    let zero_xp = XPoly::zero();
    let mut c = NovikovSeries::one(m, dmax, &qo());
    let mut cp = NovikovSeries::zero(m, dmax, &zero_xp);
    let mut cpp: Vec<NovikovSeries<Q>> = (0..m).map(|_| NovikovSeries::zero(m, dmax, &qo())).collect();
    let rows: Vec<Vec<Q>> = (0..np)
        .map(|p| std::iter::once(qo()).chain((0..m).map(|a| g.h_value(a, p))).collect())
        .collect();
    for d in degree_box(m, dmax) {
        if is_zero_degree(&d) {
            continue;
        }
        let mut c0 = None;
        let mut rhs = Vec::with_capacity(np);
        for (p, row) in cof.iter().enumerate() {
            let f = &row[&d];
            if let Some(top) = f.degree() {
                if top > 0 {
                    return Err(Error::ChernBound(format!("B_d/Omega has alpha^{top} at d = {d:?}, point {p}")));
                }
            }
            let v0 = f.coeff_at_infinity(0);
            match &c0 {
                None => c0 = Some(v0),
                Some(prev) if *prev != v0 => {
                    return Err(Error::AsymptoticShape(format!("alpha^0 term varies over fixed points at d = {d:?}")));
                }
                _ => {}
            }
            rhs.push(f.coeff_at_infinity(-1));
        }
        c.set(d.clone(), c0.unwrap_or_else(qz));
        let sol = solve_unique(&rows, &rhs, m + 1)
            .ok_or_else(|| Error::AsymptoticShape(format!("alpha^-1 term outside span(1, H) at d = {d:?}")))?;
        cp.set(d.clone(), XPoly::constant(sol[0].clone()));
        for a in 0..m {
            cpp[a].set(d.clone(), sol[a + 1].clone());
        }
    }
    let md = super::mirror_fg(&MirrorData {
        f1: NovikovSeries::zero(m, dmax, &qo()),
        f0: NovikovSeries::zero(m, dmax, &zero_xp),
        g: (0..m).map(|_| NovikovSeries::zero(m, dmax, &qo())).collect(),
        c,
        c_prime: cp,
        c_second: cpp,
    })?;
    let qs = invert_mirror_map(&md.g, m, dmax)?;
    let proto = RatFn::one();
    let cinv = md.c.invert_unit()?.map_into(&proto, |s| RatFn::constant(s.clone()));
    let inv_alpha = RatFn::alpha_pow(-1);
    let mut coeffs = Vec::with_capacity(np);
    for p in 0..np {
        let mut expo = NovikovSeries::zero(m, dmax, &proto);
        for d in degree_box(m, dmax) {
            let mut s = md.f0.get(&d).coeff(0);
            for a in 0..m {
                s += g.h_value(a, p) * md.g[a].get(&d);
            }
            expo.set(d, inv_alpha.scale(&s));
        }
        let sp = NovikovSeries::from_terms(m, dmax, &proto, cof[p].clone()).add(&NovikovSeries::one(m, dmax, &proto))?;
        let tilde = cinv.mul_truncated(&expo.exp()?)?.mul_truncated(&sp)?.substitute(&qs)?;
        let mut row = BTreeMap::new();
        for d in degree_box(m, dmax) {
            if is_zero_degree(&d) {
                continue;
            }
            let ad = bser.omega[p].mul(&tilde.get(&d));
            if let Some(top) = ad.degree() {
                if top > -2 {
                    return Err(Error::DegreeBound(format!("{d:?} at point {p}")));
                }
            }
            row.insert(d, ad);
        }
        coeffs.push(row);
    }
    Ok(EquivariantMirror {
        xval: xval.clone(),
        mirror: md,
        a: EquivariantSeries { m, dmax, omega: bser.omega.clone(), coeffs },
    })
}
