//! The hypergeometric side: O_d, 1_d, P_d and B_d in factored form, the
//! Euler-data and Euler-series checks, and linking residues computed two ways.

mod bundle;
mod factored;

pub use bundle::{divisor_constant, BundleSpec, LineBundle, MultClass};
pub use factored::{FactoredForm, LinearForm};

use crate::error::{Error, Result};
use crate::geometry::{monomials_of_degree, Balloon, Geometry};
use crate::series_core::{degree_box, factorial, is_zero_degree, q, qf, qo, qz, AlphaValue, Degree, Poly, RatFn, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

fn ld(d: &[u32]) -> Vec<i64> {
    d.iter().map(|x| *x as i64).collect()
}

/// Divisor k as a linear form; `equivariant` keeps its weight constant.
pub fn divisor_form(g: &Geometry, k: usize, equivariant: bool) -> LinearForm {
    let cst = if equivariant { divisor_constant(g, k) } else { qz() };
    LinearForm::new(g.divisors[k].gen_coeffs.clone(), cst, qz(), qz())
}

/// `<D_k, d>`.
pub fn divisor_degree(g: &Geometry, k: usize, d: &[u32]) -> i64 {
    g.divisors[k].charges.iter().zip(d).map(|(c, x)| c * *x as i64).sum()
}

/// O_d over the torus-invariant divisors.
pub fn coeff_o_toric(g: &Geometry, d: &[u32], equivariant: bool) -> FactoredForm {
    let mut f = FactoredForm::one();
    for k in 0..g.divisors.len() {
        let l = divisor_degree(g, k, d);
        let base = divisor_form(g, k, equivariant);
        if l < 0 {
            for j in 0..-l {
                f.push(LinearForm { alpha: q(j), ..base.clone() }, 1);
            }
        } else {
            for j in 1..=l {
                f.push(LinearForm { alpha: q(-j), ..base.clone() }, -1);
            }
        }
    }
    f
}

/// 1_d on a product of projective spaces.
pub fn coeff_one_product(g: &Geometry, d: &[u32], equivariant: bool) -> Result<FactoredForm> {
    let lambda = match (&g.product_weights, g.product_dims()) {
        (Some(l), Some(_)) => l,
        _ => return Err(Error::Unsupported("1_d closed form needs a projective product".into())),
    };
    let mut f = FactoredForm::one();
    for (a, la) in lambda.iter().enumerate() {
        let mut gens = vec![qz(); g.m];
        gens[a] = qo();
        for li in la {
            let cst = if equivariant { -li.clone() } else { qz() };
            for k in 1..=d[a] as i64 {
                f.push(LinearForm::new(gens.clone(), cst.clone(), q(-k), qz()), -1);
            }
        }
    }
    Ok(f)
}

/// The base series coefficient: 1_d for products, O_d otherwise.
pub fn base_coeff(g: &Geometry, d: &[u32], equivariant: bool) -> Result<FactoredForm> {
    if g.is_product() {
        coeff_one_product(g, d, equivariant)
    } else {
        Ok(coeff_o_toric(g, d, equivariant))
    }
}

fn line_form(l: &LineBundle, b: MultClass, alpha: i64) -> LinearForm {
    LinearForm::new(l.gens.clone(), l.cst.clone(), q(alpha), b.x_coeff())
}

/// The hypergeometric factor multiplying the base coefficient.
pub fn hyper_factor(g: &Geometry, v: &BundleSpec, b: MultClass, d: &[u32]) -> Result<FactoredForm> {
    if b == MultClass::One {
        return Err(Error::Precondition("hyper_factor is defined only for euler and chern_poly".into()));
    }
    let mut f = FactoredForm::one();
    for l in &v.convex {
        let p = l.pairing(g, d);
        for k in 0..=p {
            f.push(line_form(l, b, -k), 1);
        }
    }
    for l in &v.concave {
        let p = l.pairing(g, d);
        for k in 1..=(-p - 1) {
            f.push(line_form(l, b, k), 1);
        }
    }
    Ok(f)
}

/// Omega = b(V+)/b(V-) in factored form.
pub fn omega_factored(v: &BundleSpec, b: MultClass) -> FactoredForm {
    let mut f = FactoredForm::one();
    if b == MultClass::One {
        return f;
    }
    for l in &v.convex {
        f.push(line_form(l, b, 0), 1);
    }
    for l in &v.concave {
        f.push(line_form(l, b, 0), -1);
    }
    f
}

/// A truncated Euler series whose coefficients are kept factored.
#[derive(Clone, Debug)]
pub struct EulerSeries {
    pub m: usize,
    pub dmax: u32,
    pub class: MultClass,
    pub omega: FactoredForm,
    /// Coefficients for d != 0, equivariant.
    pub coeffs: BTreeMap<Degree, FactoredForm>,
}

impl EulerSeries {
    /// Coefficient at d; the d = 0 coefficient is Omega.
    pub fn get(&self, d: &[u32]) -> FactoredForm {
        if is_zero_degree(d) {
            self.omega.clone()
        } else {
            self.coeffs.get(d).cloned().unwrap_or_else(|| FactoredForm { prefactor: qz(), factors: vec![] })
        }
    }

    /// Nonequivariant expansion of B_d.
    pub fn expand(&self, g: &Geometry, d: &[u32]) -> Result<AlphaValue> {
        self.get(d).nonequivariant().expand(&g.ring)
    }

    /// Restrictions of every coefficient at every fixed point.
    pub fn restrict(&self, g: &Geometry, xval: &Q) -> Result<EquivariantSeries> {
        let mut omega = Vec::new();
        let mut coeffs = Vec::new();
        for p in 0..g.n_fixed() {
            omega.push(self.omega.restrict(g, p, xval)?);
            let mut row = BTreeMap::new();
            for (d, f) in &self.coeffs {
                row.insert(d.clone(), f.restrict(g, p, xval)?);
            }
            coeffs.push(row);
        }
        Ok(EquivariantSeries { m: self.m, dmax: self.dmax, omega, coeffs })
    }
}

/// B_d = hyper_factor(d) * base_d for d != 0, and B_0 = Omega.
pub fn assemble_b(g: &Geometry, v: &BundleSpec, b: MultClass, dmax: u32) -> Result<EulerSeries> {
    let mut coeffs = BTreeMap::new();
    for d in degree_box(g.m, dmax) {
        if is_zero_degree(&d) {
            continue;
        }
        let base = base_coeff(g, &d, true)?;
        let f = if b == MultClass::One { base } else { hyper_factor(g, v, b, &d)?.mul(&base) };
        coeffs.insert(d, f);
    }
    Ok(EulerSeries { m: g.m, dmax, class: b, omega: omega_factored(v, b), coeffs })
}

/// Fixed-point restrictions of an Euler series: `coeffs[p][d]` for d != 0.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantSeries {
    pub m: usize,
    pub dmax: u32,
    pub omega: Vec<RatFn>,
    pub coeffs: Vec<BTreeMap<Degree, RatFn>>,
}

impl EquivariantSeries {
    pub fn get(&self, p: usize, d: &[u32]) -> RatFn {
        if is_zero_degree(d) {
            self.omega[p].clone()
        } else {
            self.coeffs[p].get(d).cloned().unwrap_or_else(RatFn::zero)
        }
    }
}

/// Outcome of the Euler-data check.
#[derive(Clone, Debug, PartialEq)]
pub struct DataCheckReport {
    pub passed: bool,
    pub pairs_checked: usize,
    /// First failing `(d, r)` in the order degree-then-lex.
    pub first_failure: Option<(Degree, Degree)>,
}

/// P_d as a factor multiset, with P_0 = Omega. `fault` drops the last factor
/// of every P_d with d != 0.
fn euler_data_term(g: &Geometry, v: &BundleSpec, b: MultClass, d: &[u32], fault: bool) -> Result<FactoredForm> {
    if is_zero_degree(d) {
        return Ok(omega_factored(v, b));
    }
    if b == MultClass::One {
        return Ok(FactoredForm::one());
    }
    let mut f = hyper_factor(g, v, b, d)?;
    if fault {
        f.factors.pop();
    }
    Ok(f)
}

/// The substitution c -> c + <c, r> alpha on every factor.
fn j_star(g: &Geometry, f: &FactoredForm, r: &[u32]) -> FactoredForm {
    let r = ld(r);
    FactoredForm {
        prefactor: f.prefactor.clone(),
        factors: f
            .factors
            .iter()
            .map(|(l, e)| (LinearForm { alpha: &l.alpha + g.pairing_linear(&l.gens, &r), ..l.clone() }, *e))
            .collect(),
    }
}

/// Checks `Omega * j_r^* P_d = conj(P_r) * P_{d-r}` for all `0 <= r <= d <= dmax`.
pub fn euler_data_check(g: &Geometry, v: &BundleSpec, b: MultClass, dmax: u32, fault: bool) -> Result<DataCheckReport> {
    let omega = omega_factored(v, b);
    let mut pairs = 0;
    for d in degree_box(g.m, dmax) {
        let pd = euler_data_term(g, v, b, &d, fault)?;
        for r in crate::series_core::sub_degrees(&d) {
            let s: Degree = d.iter().zip(&r).map(|(x, y)| x - y).collect();
            let lhs = omega.mul(&j_star(g, &pd, &r));
            let rhs = euler_data_term(g, v, b, &r, fault)?.conj().mul(&euler_data_term(g, v, b, &s, fault)?);
            pairs += 1;
            if lhs.prefactor != rhs.prefactor || lhs.exponent_map() != rhs.exponent_map() {
                return Ok(DataCheckReport { passed: false, pairs_checked: pairs, first_failure: Some((d.clone(), r)) });
            }
        }
    }
    Ok(DataCheckReport { passed: true, pairs_checked: pairs, first_failure: None })
}

/// Outcome of the Euler-series check.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCheckReport {
    pub passed: bool,
    pub checked: usize,
    /// First failing degree and zeta multi-index.
    pub first_failure: Option<(Degree, Vec<u32>)>,
}

/// All multi-indices in m variables of total degree at most k.
pub fn multi_indices(m: usize, k: u32) -> Vec<Vec<u32>> {
    (0..=k).flat_map(|j| monomials_of_degree(m, j)).collect()
}

/// `prod_a (h_a + r_a alpha)^{mu_a} / mu_a!`.
fn zeta_weight(h: &[Q], r: &[u32], mu: &[u32]) -> Poly {
    let mut p = Poly::one();
    for a in 0..h.len() {
        let lin = Poly::linear(h[a].clone(), q(r[a] as i64));
        p = &p * &lin.pow(mu[a]);
        p = p.scale(&(qo() / factorial(mu[a])));
    }
    p
}

/// Principal parts at every pole, keyed by pole location.
pub type PrincipalParts = BTreeMap<Q, Vec<Q>>;

/// Adds the principal parts of `f` into `acc`.
pub fn accumulate_principal_parts(acc: &mut PrincipalParts, f: &RatFn) {
    for r in f.denominator_roots().keys() {
        let pp = f.principal_part(r);
        let slot = acc.entry(r.clone()).or_default();
        if slot.len() < pp.len() {
            slot.resize(pp.len(), qz());
        }
        for (i, c) in pp.into_iter().enumerate() {
            slot[i] += c;
        }
    }
}

pub fn principal_parts_vanish(pp: &PrincipalParts) -> bool {
    pp.values().all(|v| v.iter().all(|c| c.is_zero()))
}

/// The terms of the quadratic Euler-series sum at degree d and zeta
/// multi-index mu: `conj(A_r) A_{d-r} w_{r,mu} / (Omega e)(p)` over p and r.
pub fn euler_quadratic_terms(g: &Geometry, a: &EquivariantSeries, d: &[u32], mu: &[u32]) -> Result<Vec<RatFn>> {
    let mut out = Vec::new();
    for p in 0..g.n_fixed() {
        let om = &a.omega[p];
        if om.is_zero() {
            return Err(Error::OmegaVanishes(p));
        }
        let h: Vec<Q> = (0..g.m).map(|i| g.h_value(i, p)).collect();
        let scale = RatFn::constant(qo() / &g.fixed_points[p].euler).mul(&om.inv()?);
        for r in crate::series_core::sub_degrees(d) {
            let s: Degree = d.iter().zip(&r).map(|(x, y)| x - y).collect();
            let ar = a.get(p, &r);
            let asr = a.get(p, &s);
            if ar.is_zero() || asr.is_zero() {
                continue;
            }
            out.push(ar.conj().mul(&asr).mul_poly(&zeta_weight(&h, &r, mu)).mul(&scale));
        }
    }
    Ok(out)
}

/// The quadratic Euler-series sum as a single rational function.
pub fn euler_quadratic_sum(g: &Geometry, a: &EquivariantSeries, d: &[u32], mu: &[u32]) -> Result<RatFn> {
    Ok(euler_quadratic_terms(g, a, d, mu)?.iter().fold(RatFn::zero(), |acc, t| acc.add(t)))
}

/// Checks that every quadratic sum is a polynomial in alpha, pole by pole.
pub fn euler_series_check(g: &Geometry, a: &EquivariantSeries, dmax: u32, zeta_order: u32) -> Result<SeriesCheckReport> {
    let mut checked = 0;
    for d in degree_box(g.m, dmax) {
        for mu in multi_indices(g.m, zeta_order) {
            checked += 1;
            let mut pp = PrincipalParts::new();
            for t in euler_quadratic_terms(g, a, &d, &mu)? {
                accumulate_principal_parts(&mut pp, &t);
            }
            if !principal_parts_vanish(&pp) {
                return Ok(SeriesCheckReport { passed: false, checked, first_failure: Some((d, mu)) });
            }
        }
    }
    Ok(SeriesCheckReport { passed: true, checked, first_failure: None })
}

/// Residue of B_d at the balloon pole, from the closed product formula.
pub fn residue_closed_form(g: &Geometry, v: &BundleSpec, b: MultClass, balloon: &Balloon, delta: u32, xval: &Q) -> Result<Q> {
    let d: Degree = balloon.degree.iter().map(|x| x * delta).collect();
    if d.iter().any(|x| *x > g.dmax) {
        return Err(Error::DegreeTooLarge(format!("{d:?}")));
    }
    let p = balloon.p;
    let a0 = &balloon.weight / q(delta as i64);
    let mut num = Vec::new();
    let mut den = Vec::new();
    for k in 0..g.divisors.len() {
        let l = divisor_degree(g, k, &d);
        let dp = &g.divisors[k].values[p];
        if l < 0 {
            for j in 0..-l {
                num.push(dp + q(j) * &a0);
            }
        } else if k == balloon.divisor_at_p {
            for j in 1..delta as i64 {
                den.push(dp - q(j) * &a0);
            }
        } else {
            for j in 1..=l {
                den.push(dp - q(j) * &a0);
            }
        }
    }
    let nz = num.iter().filter(|x| x.is_zero()).count();
    let dz = den.iter().filter(|x| x.is_zero()).count();
    if dz > nz {
        return Err(Error::ZeroWeightImbalance(nz, dz));
    }
    if nz > dz {
        return Ok(qz());
    }
    let nv = num.iter().filter(|x| !x.is_zero()).fold(qo(), |acc, x| acc * x);
    let dv = den.iter().filter(|x| !x.is_zero()).fold(qo(), |acc, x| acc * x);
    let link = linking_factor(g, v, b, &d, p, &a0, xval)?;
    Ok(-qf(1, delta as i64) * nv / dv * link)
}

/// Restriction of hyper_factor(d) at p with alpha specialized (1 for b = one).
pub fn linking_factor(g: &Geometry, v: &BundleSpec, b: MultClass, d: &[u32], p: usize, a0: &Q, xval: &Q) -> Result<Q> {
    if b == MultClass::One {
        return Ok(qo());
    }
    let r = hyper_factor(g, v, b, d)?.restrict(g, p, xval)?;
    r.eval(a0).ok_or(Error::PoleOrder { order: 1, at: crate::series_core::fmt_q(a0) })
}

/// Residue of the restricted coefficient B_d(p) at a0.
pub fn residue_direct(g: &Geometry, series: &EulerSeries, d: &[u32], p: usize, a0: &Q, xval: &Q) -> Result<Q> {
    series.get(d).restrict(g, p, xval)?.residue_at(a0)
}

/// Every oriented balloon with every admissible multiplicity.
pub fn balloon_multiples(g: &Geometry, dmax: u32) -> Vec<(Balloon, u32)> {
    let mut out = Vec::new();
    for b in &g.balloons {
        for bb in [b.clone(), b.reversed()] {
            for delta in 1..=dmax {
                if bb.degree.iter().all(|x| x * delta <= dmax) {
                    out.push((bb.clone(), delta));
                }
            }
        }
    }
    out
}

/// Outcome of the degree-bound check on the nonequivariant 1_d.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeBoundReport {
    pub passed: bool,
    pub first_failure: Option<Degree>,
}

/// Checks deg_alpha 1_d <= min(-2, -<c_1, d>) for d != 0.
pub fn one_degree_bound_check(g: &Geometry, dmax: u32) -> Result<DegreeBoundReport> {
    let c1 = g.c1();
    for d in degree_box(g.m, dmax) {
        if is_zero_degree(&d) {
            continue;
        }
        let v = coeff_one_product(g, &d, false)?.expand(&g.ring)?;
        let bound = (-2i64).min(-g.pairing(&c1, &d)?.to_integer().try_into().unwrap_or(0i64));
        if v.max_alpha().map(|a| a as i64 > bound).unwrap_or(false) {
            return Ok(DegreeBoundReport { passed: false, first_failure: Some(d) });
        }
    }
    Ok(DegreeBoundReport { passed: true, first_failure: None })
}
