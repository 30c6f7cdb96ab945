//! Determination of A_d(p) from the degree bound, the pole structure of
//! 1_d, the prescribed balloon residues and the Euler-series identity.

use super::LinkingValueTable;
use crate::error::{Error, Result};
use crate::euler_engine::{
    accumulate_principal_parts, coeff_one_product, euler_quadratic_terms, EquivariantSeries, PrincipalParts,
};
use crate::geometry::{monomials_of_degree, Geometry};
use crate::linalg::{solve, Solution};
use crate::series_core::{degree_box, is_zero_degree, q, qo, qz, Degree, Poly, RatFn, Q};
use std::collections::BTreeMap;

/// Size of the linear system at one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub d: Degree,
    pub unknowns: usize,
    pub equations: usize,
    /// Highest zeta-order of Euler-series constraints used.
    pub zeta_order: u32,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub series: EquivariantSeries,
    pub reports: Vec<DegreeReport>,
}

/// Solves degree by degree. At each p, A_d(p) = phi_p / E_p where 1/E_p is
/// the restriction of 1_d and deg phi_p <= deg E_p - 2.
pub fn solve_linear_model(g: &Geometry, lv: &LinkingValueTable, dmax: u32) -> Result<Reconstruction> {
    solve_linear_model_capped(g, lv, dmax, None)
}

/// As `solve_linear_model`, with Euler-series rows limited to zeta-orders
/// `<= max_zeta` when given.
pub fn solve_linear_model_capped(
    g: &Geometry,
    lv: &LinkingValueTable,
    dmax: u32,
    max_zeta: Option<u32>,
) -> Result<Reconstruction> {
    if !g.is_product() {
        return Err(Error::Unsupported("reconstruction needs a projective product".into()));
    }
    let np = g.n_fixed();
    let m = g.m;
    let omega: Vec<RatFn> = lv.omega.iter().map(|w| RatFn::constant(w.clone())).collect();
    let mut series = EquivariantSeries { m, dmax, omega, coeffs: vec![BTreeMap::new(); np] };
    let mut degrees: Vec<Degree> = degree_box(m, dmax).into_iter().filter(|d| !is_zero_degree(d)).collect();
    degrees.sort_by_key(|d| (d.iter().sum::<u32>(), d.clone()));
    let mut reports = Vec::new();
    for d in degrees {
        // denominators and unknown layout
        let mut ones = Vec::with_capacity(np);
        let mut offsets = Vec::with_capacity(np + 1);
        let mut n = 0;
        for p in 0..np {
            let one = coeff_one_product(g, &d, true)?.restrict(g, p, &lv.xval)?;
            offsets.push(n);
            n += one.denominator().degree().unwrap_or(0).saturating_sub(1);
            ones.push(one);
        }
        offsets.push(n);
        let basis = |p: usize, j: usize| -> RatFn {
            let roots: Vec<(Q, u32)> = ones[p].denominator_roots().iter().map(|(r, k)| (r.clone(), *k)).collect();
            RatFn::from_roots(Poly::monomial(qo(), j), &roots)
        };
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        // prescribed residues at the balloon poles
        for bl in &g.balloons {
            for bb in [bl.clone(), bl.reversed()] {
                let Some(delta) = multiple_of(&d, &bb.degree) else { continue };
                let Some(val) = lv.values.get(&(bb.p, bb.q, delta)) else {
                    return Err(Error::Precondition(format!("missing linking value at ({}, {}, {delta})", bb.p, bb.q)));
                };
                let a0 = &bb.weight / q(delta as i64);
                let p = bb.p;
                let mut row = vec![qz(); n];
                for j in 0..offsets[p + 1] - offsets[p] {
                    row[offsets[p] + j] = basis(p, j).residue_at(&a0)?;
                }
                rows.push(row);
                rhs.push(val * ones[p].residue_at(&a0)?);
            }
        }
        // Euler-series identity: principal parts of the quadratic sums
        // vanish. Orders up to dim + 1 always; more while a kernel remains.
        let mut min_order = g.dim as u32 + 1;
        let mut max_order = min_order + d.iter().sum::<u32>();
        if let Some(cap) = max_zeta {
            min_order = min_order.min(cap);
            max_order = max_order.min(cap);
        }
        let mut order = 0;
        let x = loop {
            for mu in monomials_of_degree(m, order) {
                euler_rows(g, &series, &d, &mu, &offsets, &basis, &mut rows, &mut rhs)?;
            }
            if order >= min_order {
                match solve(&rows, &rhs, n) {
                    Solution::Inconsistent => return Err(Error::Inconsistent(format!("{d:?}"))),
                    Solution::Affine { particular, kernel } if kernel.is_empty() => break particular,
                    Solution::Affine { kernel, .. } if order == max_order => {
                        return Err(Error::Underdetermined(format!("{d:?}"), kernel.len()));
                    }
                    _ => {}
                }
            }
            order += 1;
        };
        for p in 0..np {
            let phi = Poly::from_coeffs(x[offsets[p]..offsets[p + 1]].to_vec());
            let roots: Vec<(Q, u32)> = ones[p].denominator_roots().iter().map(|(r, k)| (r.clone(), *k)).collect();
            series.coeffs[p].insert(d.clone(), RatFn::from_roots(phi, &roots));
        }
        reports.push(DegreeReport { d: d.clone(), unknowns: n, equations: rows.len(), zeta_order: order, kernel_dim: 0 });
    }
    Ok(Reconstruction { series, reports })
}

/// Rows stating that the principal parts of the quadratic sum at (d, mu)
/// vanish; only the r = 0 and r = d terms involve the unknowns.
#[allow(clippy::too_many_arguments)]
fn euler_rows(
    g: &Geometry,
    series: &EquivariantSeries,
    d: &[u32],
    mu: &[u32],
    offsets: &[usize],
    basis: &dyn Fn(usize, usize) -> RatFn,
    rows: &mut Vec<Vec<Q>>,
    rhs: &mut Vec<Q>,
) -> Result<()> {
    let np = offsets.len() - 1;
    let mut known = PrincipalParts::new();
    for t in euler_quadratic_terms(g, series, d, mu)? {
        accumulate_principal_parts(&mut known, &t);
    }
    let mut cols: Vec<PrincipalParts> = Vec::with_capacity(offsets[np]);
    for p in 0..np {
        for j in 0..offsets[p + 1] - offsets[p] {
            let mut probe = EquivariantSeries {
                m: series.m,
                dmax: series.dmax,
                omega: series.omega.clone(),
                coeffs: vec![BTreeMap::new(); np],
            };
            probe.coeffs[p].insert(d.to_vec(), basis(p, j));
            let mut pp = PrincipalParts::new();
            for t in euler_quadratic_terms(g, &probe, d, mu)? {
                accumulate_principal_parts(&mut pp, &t);
            }
            cols.push(pp);
        }
    }
    let mut keys: BTreeMap<(Q, usize), ()> = BTreeMap::new();
    for pp in cols.iter().chain(std::iter::once(&known)) {
        for (r, v) in pp {
            for i in 0..v.len() {
                keys.insert((r.clone(), i), ());
            }
        }
    }
    for (r, i) in keys.into_keys() {
        let at = |pp: &PrincipalParts| pp.get(&r).and_then(|v| v.get(i)).cloned().unwrap_or_else(qz);
        rows.push(cols.iter().map(at).collect());
        rhs.push(-at(&known));
    }
    Ok(())
}

/// delta with d = delta * c, if any.
fn multiple_of(d: &[u32], c: &[u32]) -> Option<u32> {
    let a = c.iter().position(|x| *x != 0)?;
    if d[a] % c[a] != 0 {
        return None;
    }
    let delta = d[a] / c[a];
    (delta > 0 && d.iter().zip(c).all(|(x, y)| *x == delta * y)).then_some(delta)
}
