//! Asymptotics of B(t), the mirror transformation (f, g), the change of
//! variables, and extraction of the invariants K_d.

mod equivariant;
mod extract;

pub use equivariant::{equivariant_transform, transform_restricted, EquivariantMirror};
pub use extract::{
    dimension_shift, extract_equivariant, extract_equivariant_interpolated, extract_invariants,
    extract_invariants_shifted, shift_from_ranks, x_denominator, InvariantTable,
};

use crate::error::{Error, Result};
use crate::euler_engine::{assemble_b, omega_factored, BundleSpec, MultClass};
use crate::geometry::{CohClass, CohRing, Geometry};
use crate::series_core::{degree_box, is_zero_degree, qo, AlphaValue, Coeff, Degree, NovikovSeries, XPoly, Q};
use std::collections::BTreeMap;
use std::sync::Arc;

/// C, C', C'' read from the asymptotics and the derived f = alpha f1 + f0, g.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorData {
    pub c: NovikovSeries<Q>,
    pub c_prime: NovikovSeries<XPoly>,
    pub c_second: Vec<NovikovSeries<Q>>,
    /// Coefficient of alpha in f, i.e. -log C.
    pub f1: NovikovSeries<Q>,
    /// alpha-free part of f, i.e. -C'/C.
    pub f0: NovikovSeries<XPoly>,
    pub g: Vec<NovikovSeries<Q>>,
}

/// Omega as a class; x-Laurent for the Chern polynomial. Concave Euler
/// data has no such class.
pub fn omega_class(g: &Geometry, v: &BundleSpec, b: MultClass) -> Result<AlphaValue> {
    omega_factored(v, b).nonequivariant().expand(&g.ring).map_err(|e| match e {
        Error::NonInvertible => Error::OmegaDivision("Omega has a concave Euler factor".into()),
        e => e,
    })
}

/// The cofactors B_d / Omega, expanded in a working ring.
#[derive(Clone, Debug)]
pub struct Cofactors {
    pub ring: Arc<CohRing>,
    /// Extra truncation order of the working ring over the true ring.
    pub ext: u32,
    pub dmax: u32,
    pub coeffs: BTreeMap<Degree, AlphaValue>,
}

/// Computes B_d / Omega by factor cancellation. Concave Euler data is
/// handled in a ring extended by the number of concave summands, which
/// needs a single projective factor.
pub fn cofactors(g: &Geometry, v: &BundleSpec, b: MultClass, dmax: u32) -> Result<Cofactors> {
    let ext = if b == MultClass::Euler && !v.concave.is_empty() {
        if g.product_dims().map(|d| d.len()) != Some(1) {
            return Err(Error::Unsupported("concave Euler data needs a single projective space".into()));
        }
        v.concave.len() as u32
    } else {
        0
    };
    let ring = if ext > 0 { g.extended_ring(ext)? } else { g.ring.clone() };
    let series = assemble_b(g, v, b, dmax)?;
    let omega_inv = series.omega.inv()?;
    let mut coeffs = BTreeMap::new();
    for d in degree_box(g.m, dmax) {
        let val = if is_zero_degree(&d) {
            AlphaValue::one(&ring)
        } else {
            series.get(&d).mul(&omega_inv).simplify().nonequivariant().expand(&ring)?
        };
        coeffs.insert(d, val);
    }
    Ok(Cofactors { ring, ext, dmax, coeffs })
}

/// Reads C, C', C'' from the alpha^0 and alpha^-1 layers of the cofactors.
pub fn asymptotics(g: &Geometry, cof: &Cofactors) -> Result<MirrorData> {
    let m = g.m;
    let dmax = cof.dmax;
    let mut c = NovikovSeries::one(m, dmax, &qo());
    let mut cp = NovikovSeries::zero(m, dmax, &XPoly::zero());
    let mut cpp: Vec<NovikovSeries<Q>> = (0..m).map(|_| NovikovSeries::zero(m, dmax, &qo())).collect();
    for (d, val) in &cof.coeffs {
        if is_zero_degree(d) {
            continue;
        }
        if let Some(top) = val.max_alpha() {
            if top > 0 {
                return Err(Error::ChernBound(format!("B_d/Omega has alpha^{top} at d = {d:?}")));
            }
        }
        let mut c0 = crate::series_core::qz();
        for (e, cls) in val.alpha_layer(0) {
            if e != 0 || cls.max_degree() != Some(0) {
                return Err(Error::AsymptoticShape(format!("alpha^0 layer at d = {d:?} is not a scalar")));
            }
            c0 = cls.scalar_part();
        }
        c.set(d.clone(), c0);
        let mut xp = XPoly::zero();
        for (e, cls) in val.alpha_layer(-1) {
            if cls.max_degree().unwrap_or(0) > 1 {
                return Err(Error::AsymptoticShape(format!("alpha^-1 layer at d = {d:?} has degree >= 2")));
            }
            xp = Coeff::add(&xp, &XPoly::monomial(cls.scalar_part(), e));
            let lin = cls.degree_part(1);
            if lin.is_zero() {
                continue;
            }
            if e != 0 {
                return Err(Error::AsymptoticShape(format!("alpha^-1 class part at d = {d:?} depends on x")));
            }
            let lin = lin.reinterpret(&g.ring);
            for (a, s) in cpp.iter_mut().enumerate() {
                let mut ea = vec![0; m];
                ea[a] = 1;
                s.set(d.clone(), g.pairing(&lin, &ea)?);
            }
        }
        cp.set(d.clone(), xp);
    }
    Ok(MirrorData {
        f1: NovikovSeries::zero(m, dmax, &qo()),
        f0: NovikovSeries::zero(m, dmax, &XPoly::zero()),
        g: (0..m).map(|_| NovikovSeries::zero(m, dmax, &qo())).collect(),
        c,
        c_prime: cp,
        c_second: cpp,
    })
}

/// f = -alpha log C - C'/C and g = -C''/C.
pub fn mirror_fg(md: &MirrorData) -> Result<MirrorData> {
    let cinv = md.c.invert_unit()?;
    let f1 = md.c.log()?.neg();
    let cinv_x = cinv.map_into(&XPoly::zero(), |s| XPoly::constant(s.clone()));
    let f0 = md.c_prime.mul_truncated(&cinv_x)?.neg();
    let g = md.c_second.iter().map(|s| Ok(s.mul_truncated(&cinv)?.neg())).collect::<Result<Vec<_>>>()?;
    Ok(MirrorData { f1, f0, g, ..md.clone() })
}

/// q(Q) from Q_a = q_a exp(g_a(q)) by fixed-point iteration, and a check
/// that substituting back returns Q.
pub fn invert_mirror_map(g_series: &[NovikovSeries<Q>], m: usize, dmax: u32) -> Result<Vec<NovikovSeries<Q>>> {
    let vars: Vec<NovikovSeries<Q>> = (0..m).map(|a| NovikovSeries::var(m, dmax, a, &qo())).collect();
    let mut qs = vars.clone();
    for _ in 0..(m as u32 * dmax).max(1) {
        let mut next = Vec::with_capacity(m);
        for a in 0..m {
            let ga = g_series[a].substitute(&qs)?;
            next.push(vars[a].mul_truncated(&ga.neg().exp()?)?);
        }
        qs = next;
    }
    for a in 0..m {
        let back = qs[a].mul_truncated(&g_series[a].substitute(&qs)?.exp()?)?;
        if back != vars[a] {
            return Err(Error::AsymptoticShape("mirror map inversion did not converge".into()));
        }
    }
    Ok(qs)
}

/// The transformed series A, nonequivariant, in the true ring.
#[derive(Clone, Debug)]
pub struct Transformed {
    pub coeffs: BTreeMap<Degree, AlphaValue>,
    /// q(Q) images used for the substitution.
    pub inverse_map: Vec<NovikovSeries<Q>>,
}

/// A_d from `sum_d A_d Q^d = exp((f + H.g)/alpha) sum_d B_d q^d` at q = q(Q).
pub fn transform_apply(g: &Geometry, v: &BundleSpec, b: MultClass, cof: &Cofactors, md: &MirrorData) -> Result<Transformed> {
    let m = g.m;
    let dmax = cof.dmax;
    let ring = &cof.ring;
    let one = AlphaValue::one(ring);
    let s = NovikovSeries::from_terms(m, dmax, &one, cof.coeffs.clone());
    let mut expo = NovikovSeries::zero(m, dmax, &one);
    for d in degree_box(m, dmax) {
        let mut val = AlphaValue::from_xpoly(ring, &md.f0.get(&d), -1);
        for a in 0..m {
            let h = CohClass::linear(ring, &g.h_coeffs[a]);
            val = val.add(&AlphaValue::from_class(h.scale(&md.g[a].get(&d))).shift(-1, 0));
        }
        expo.set(d, val);
    }
    let cinv = md.c.invert_unit()?.map_into(&one, |x| AlphaValue::scalar(ring, x.clone()));
    let tilde = cinv.mul_truncated(&expo.exp()?)?.mul_truncated(&s)?;
    let qs = invert_mirror_map(&md.g, m, dmax)?;
    let tilde = tilde.substitute(&qs)?;
    let mut coeffs = BTreeMap::new();
    for d in degree_box(m, dmax) {
        if is_zero_degree(&d) {
            continue;
        }
        let ad = apply_omega(g, v, b, cof, &tilde.get(&d))?;
        if let Some(top) = ad.max_alpha() {
            if top > -2 {
                return Err(Error::DegreeBound(format!("{d:?}")));
            }
        }
        coeffs.insert(d, ad);
    }
    Ok(Transformed { coeffs, inverse_map: qs })
}

/// Omega times a cofactor-side value, landing in the true ring.
fn apply_omega(g: &Geometry, v: &BundleSpec, b: MultClass, cof: &Cofactors, val: &AlphaValue) -> Result<AlphaValue> {
    if cof.ext == 0 {
        return Ok(omega_class(g, v, b)?.mul(val));
    }
    // single projective factor: Omega = c H^{N+} / H^{N-}
    let ring = &cof.ring;
    let mut num = val.clone();
    for l in &v.convex {
        num = num.mul_class(&CohClass::linear(ring, &l.gens));
    }
    let nminus = v.concave.len() as u32;
    let mut cst = qo();
    for l in &v.concave {
        cst *= &l.gens[0];
    }
    let mut out = AlphaValue::zero(&g.ring);
    for ((a, e), cls) in num.terms() {
        let mut raw = Vec::new();
        for (mono, c) in cls.terms() {
            if mono[0] < nminus {
                return Err(Error::OmegaDivision(format!("low-degree term H^{} survives", mono[0])));
            }
            raw.push((vec![mono[0] - nminus], c / &cst));
        }
        out = out.add(&AlphaValue::monomial(CohClass::from_raw(&g.ring, raw), *a, *e));
    }
    Ok(out)
}

/// Everything the nonequivariant pipeline produces.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub mirror: MirrorData,
    pub transformed: Transformed,
}

/// cofactors -> asymptotics -> (f, g) -> transform.
pub fn run_pipeline(g: &Geometry, v: &BundleSpec, b: MultClass, dmax: u32) -> Result<Pipeline> {
    let cof = cofactors(g, v, b, dmax)?;
    let md = mirror_fg(&asymptotics(g, &cof)?)?;
    let transformed = transform_apply(g, v, b, &cof, &md)?;
    Ok(Pipeline { mirror: md, transformed })
}
