//! Target geometries: products of projective spaces and smooth complete toric
//! manifolds, with their cohomology rings, fixed points, balloons and
//! integration (combinatorial and by fixed-point localization).

pub mod ring;
mod toric;

pub use ring::{monomials_of_degree, CohClass, CohRing, Mono};

use crate::error::{Error, Result};
use crate::series_core::{fmt_q, q, qf, qo, qz, Q};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Maximum number of weight draws before giving up on genericity.
pub const WEIGHT_RETRY_BUDGET: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometrySpec {
    ProjectiveProduct { dims: Vec<u32> },
    Toric { rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>> },
}

impl GeometrySpec {
    pub fn projective(n: u32) -> Self {
        GeometrySpec::ProjectiveProduct { dims: vec![n] }
    }

    pub fn product(dims: &[u32]) -> Self {
        GeometrySpec::ProjectiveProduct { dims: dims.to_vec() }
    }

    /// The standard fan of P^n.
    pub fn projective_fan(n: usize) -> Self {
        let mut rays = Vec::new();
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = 1;
            rays.push(v);
        }
        rays.push(vec![-1; n]);
        let cones = (0..=n).map(|omit| (0..=n).filter(|i| *i != omit).collect()).collect();
        GeometrySpec::Toric { rays, cones }
    }

    /// The fan of P^1 x P^1.
    pub fn p1xp1_fan() -> Self {
        GeometrySpec::Toric {
            rays: vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            cones: vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        }
    }

    /// The Hirzebruch surface F_a.
    pub fn hirzebruch_fan(a: i64) -> Self {
        GeometrySpec::Toric {
            rays: vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        }
    }
}

/// A torus-invariant divisor with its nonequivariant class, pairings with
/// the curve-class basis, and restriction values at fixed points.
#[derive(Clone, Debug)]
pub struct Divisor {
    pub name: String,
    /// Linear combination of ring generators.
    pub gen_coeffs: Vec<Q>,
    /// Pairing with each basis curve class.
    pub charges: Vec<i64>,
    /// Equivariant restriction at each fixed point.
    pub values: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub id: usize,
    pub label: String,
    /// Restriction of each ring generator.
    pub gen_values: Vec<Q>,
    /// Weights of the isotropy representation on the tangent space.
    pub tangent: Vec<Q>,
    /// e_T(p/X).
    pub euler: Q,
}

#[derive(Clone, Debug)]
pub struct Balloon {
    pub p: usize,
    pub q: usize,
    /// Tangent weight along the balloon at p; the weight at q is its negative.
    pub weight: Q,
    /// Degree vector in the curve-class basis.
    pub degree: Vec<u32>,
    /// Pairing of each divisor with the balloon.
    pub divisor_degrees: Vec<i64>,
    /// Divisor whose restriction at p is the balloon weight.
    pub divisor_at_p: usize,
    /// Same, at q.
    pub divisor_at_q: usize,
}

impl Balloon {
    /// The balloon seen from the other endpoint.
    pub fn reversed(&self) -> Balloon {
        Balloon {
            p: self.q,
            q: self.p,
            weight: -self.weight.clone(),
            degree: self.degree.clone(),
            divisor_degrees: self.divisor_degrees.clone(),
            divisor_at_p: self.divisor_at_q,
            divisor_at_q: self.divisor_at_p,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Geometry {
    pub spec: GeometrySpec,
    pub dim: usize,
    /// Rank of the curve-class lattice.
    pub m: usize,
    pub ring: Arc<CohRing>,
    pub divisors: Vec<Divisor>,
    /// H_a as linear combinations of ring generators, dual to the curve basis.
    pub h_coeffs: Vec<Vec<Q>>,
    pub fixed_points: Vec<FixedPoint>,
    pub balloons: Vec<Balloon>,
    pub weight_seed: u64,
    pub dmax: u32,
    /// Product case: weights lambda_{a,i}.
    pub product_weights: Option<Vec<Vec<Q>>>,
    /// Toric case: the torus weight vector.
    pub toric_weight: Option<Vec<Q>>,
}

/// Builds a geometry with a generic weight assignment drawn from `weight_seed`.
/// `dmax` bounds the multiplicities delta used by the genericity check.
pub fn build_geometry(spec: &GeometrySpec, weight_seed: u64, dmax: u32) -> Result<Geometry> {
    for attempt in 0..WEIGHT_RETRY_BUDGET {
        let seed = weight_seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = match spec {
            GeometrySpec::ProjectiveProduct { dims } => build_product(spec, dims, &mut rng, attempt)?,
            GeometrySpec::Toric { rays, cones } => toric::build_toric(spec, rays, cones, &mut rng, attempt)?,
        };
        let g = Geometry { weight_seed, dmax, ..g };
        if g.is_generic(dmax) {
            return Ok(g);
        }
    }
    Err(Error::Genericity(WEIGHT_RETRY_BUDGET))
}

fn build_product(spec: &GeometrySpec, dims: &[u32], rng: &mut ChaCha8Rng, attempt: u32) -> Result<Geometry> {
    if dims.is_empty() || dims.iter().any(|n| *n == 0) {
        return Err(Error::Precondition("projective dimensions must be positive".into()));
    }
    let m = dims.len();
    let names = (0..m).map(|a| format!("H{}", a + 1)).collect();
    let ring = CohRing::truncated(dims.to_vec(), names);
    let range = 4 * (dims.iter().sum::<u32>() as i64 + 2) + 2 * attempt as i64;
    let mut lambda: Vec<Vec<Q>> = Vec::new();
    for &n in dims {
        let mut set = BTreeSet::new();
        while set.len() < n as usize + 1 {
            set.insert(rng.gen_range(-range..=range));
        }
        let mut v: Vec<i64> = set.into_iter().collect();
        // deterministic shuffle so weights are not sorted
        for i in (1..v.len()).rev() {
            let j = rng.gen_range(0..=i);
            v.swap(i, j);
        }
        lambda.push(v.into_iter().map(q).collect());
    }
    // Fixed points: tuples (i_1, ..., i_m).
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for &n in dims {
        let mut next = Vec::new();
        for t in &tuples {
            for i in 0..=n as usize {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        tuples = next;
    }
    let mut fixed_points = Vec::new();
    for (id, t) in tuples.iter().enumerate() {
        let gen_values: Vec<Q> = (0..m).map(|a| lambda[a][t[a]].clone()).collect();
        let mut tangent = Vec::new();
        for a in 0..m {
            for j in 0..=dims[a] as usize {
                if j != t[a] {
                    tangent.push(&lambda[a][t[a]] - &lambda[a][j]);
                }
            }
        }
        let euler = tangent.iter().fold(qo(), |acc, w| acc * w);
        let label = format!("({})", t.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        fixed_points.push(FixedPoint { id, label, gen_values, tangent, euler });
    }
    let mut divisors = Vec::new();
    let mut div_index = vec![vec![0usize; 0]; m];
    for a in 0..m {
        for i in 0..=dims[a] as usize {
            let mut gen_coeffs = vec![qz(); m];
            gen_coeffs[a] = qo();
            let mut charges = vec![0; m];
            charges[a] = 1;
            let values = tuples.iter().map(|t| &lambda[a][t[a]] - &lambda[a][i]).collect();
            div_index[a].push(divisors.len());
            divisors.push(Divisor { name: format!("D{}_{}", a + 1, i), gen_coeffs, charges, values });
        }
    }
    let mut balloons = Vec::new();
    for (pi, tp) in tuples.iter().enumerate() {
        for (qi, tq) in tuples.iter().enumerate().skip(pi + 1) {
            let diff: Vec<usize> = (0..m).filter(|a| tp[*a] != tq[*a]).collect();
            if diff.len() != 1 {
                continue;
            }
            let a = diff[0];
            let mut degree = vec![0; m];
            degree[a] = 1;
            let divisor_degrees = divisors.iter().map(|d| d.charges[a]).collect();
            balloons.push(Balloon {
                p: pi,
                q: qi,
                weight: &lambda[a][tp[a]] - &lambda[a][tq[a]],
                degree,
                divisor_degrees,
                divisor_at_p: div_index[a][tq[a]],
                divisor_at_q: div_index[a][tp[a]],
            });
        }
    }
    let h_coeffs = (0..m)
        .map(|a| {
            let mut v = vec![qz(); m];
            v[a] = qo();
            v
        })
        .collect();
    Ok(Geometry {
        spec: spec.clone(),
        dim: dims.iter().sum::<u32>() as usize,
        m,
        ring,
        divisors,
        h_coeffs,
        fixed_points,
        balloons,
        weight_seed: 0,
        dmax: 0,
        product_weights: Some(lambda),
        toric_weight: None,
    })
}

impl Geometry {
    pub fn is_product(&self) -> bool {
        matches!(self.spec, GeometrySpec::ProjectiveProduct { .. })
    }

    pub fn product_dims(&self) -> Option<&[u32]> {
        match &self.spec {
            GeometrySpec::ProjectiveProduct { dims } => Some(dims),
            _ => None,
        }
    }

    /// Genericity predicate: nonzero tangent weights and, at every fixed
    /// point, pairwise distinct values lambda/delta for delta <= dmax.
    pub fn is_generic(&self, dmax: u32) -> bool {
        for p in &self.fixed_points {
            let mut seen = BTreeSet::new();
            for w in &p.tangent {
                if w.is_zero() {
                    return false;
                }
                for delta in 1..=dmax.max(1) {
                    if !seen.insert(w / q(delta as i64)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn n_fixed(&self) -> usize {
        self.fixed_points.len()
    }

    /// Normal form of a raw polynomial in the ring generators.
    pub fn normal_form(&self, raw: impl IntoIterator<Item = (Mono, Q)>) -> CohClass {
        CohClass::from_raw(&self.ring, raw)
    }

    pub fn one(&self) -> CohClass {
        CohClass::one(&self.ring)
    }

    pub fn h_class(&self, a: usize) -> CohClass {
        CohClass::linear(&self.ring, &self.h_coeffs[a])
    }

    pub fn divisor_class(&self, k: usize) -> CohClass {
        CohClass::linear(&self.ring, &self.divisors[k].gen_coeffs)
    }

    /// c_1(X) = sum of the toric divisors.
    pub fn c1(&self) -> CohClass {
        (0..self.divisors.len()).fold(CohClass::zero(&self.ring), |acc, k| acc.add(&self.divisor_class(k)))
    }

    /// Restriction of H_a at fixed point p.
    pub fn h_value(&self, a: usize, p: usize) -> Q {
        self.h_coeffs[a]
            .iter()
            .zip(&self.fixed_points[p].gen_values)
            .fold(qz(), |acc, (c, v)| acc + c * v)
    }

    /// Pairing of a ring generator with the curve-class basis.
    fn gen_charges(&self, i: usize) -> Vec<Q> {
        if self.is_product() {
            (0..self.m).map(|a| if a == i { qo() } else { qz() }).collect()
        } else {
            self.divisors[i].charges.iter().map(|c| q(*c)).collect()
        }
    }

    /// <c, d> for a class of pure degree 1.
    pub fn pairing(&self, c: &CohClass, d: &[u32]) -> Result<Q> {
        if c.terms().keys().any(|m| m.iter().sum::<u32>() != 1) {
            return Err(Error::Precondition("pairing requires a class of pure degree 1".into()));
        }
        let mut acc = qz();
        for (m, a) in c.terms() {
            let i = m.iter().position(|e| *e == 1).unwrap();
            let ch = self.gen_charges(i);
            for (j, dj) in d.iter().enumerate() {
                acc += a * &ch[j] * q(*dj as i64);
            }
        }
        Ok(acc)
    }

    /// Pairing of a linear combination of generators with a degree vector.
    pub fn pairing_linear(&self, gen_coeffs: &[Q], d: &[i64]) -> Q {
        let mut acc = qz();
        for (i, a) in gen_coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ch = self.gen_charges(i);
            for (j, dj) in d.iter().enumerate() {
                acc += a * &ch[j] * q(*dj);
            }
        }
        acc
    }

    /// i_p^* c.
    pub fn restrict(&self, c: &CohClass, p: usize) -> Q {
        c.eval(&self.fixed_points[p].gen_values)
    }

    /// Restriction of a linear combination of generators.
    pub fn restrict_linear(&self, gen_coeffs: &[Q], p: usize) -> Q {
        gen_coeffs
            .iter()
            .zip(&self.fixed_points[p].gen_values)
            .fold(qz(), |acc, (c, v)| acc + c * v)
    }

    /// Combinatorial integration: coefficient of the top monomial. Products
    /// only; toric geometries integrate through localization.
    pub fn integrate(&self, c: &CohClass) -> Q {
        match &self.spec {
            GeometrySpec::ProjectiveProduct { dims } => c.coeff(&dims.to_vec()),
            GeometrySpec::Toric { .. } => self
                .localized_integrate(&c.degree_part(self.dim as u32))
                .expect("generic weights have nonzero tangent weights"),
        }
    }

    /// sum_p i_p^* c / e_T(p/X).
    pub fn localized_integrate(&self, c: &CohClass) -> Result<Q> {
        let mut acc = qz();
        for p in &self.fixed_points {
            if p.euler.is_zero() {
                return Err(Error::ZeroWeight(p.id));
            }
            acc += c.eval(&p.gen_values) / &p.euler;
        }
        Ok(acc)
    }

    pub fn balloon_list(&self) -> &[Balloon] {
        &self.balloons
    }

    /// Description of the weight assignment, exact.
    pub fn weight_summary(&self) -> String {
        if let Some(l) = &self.product_weights {
            l.iter()
                .map(|v| format!("[{}]", v.iter().map(fmt_q).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ")
        } else if let Some(w) = &self.toric_weight {
            format!("[{}]", w.iter().map(fmt_q).collect::<Vec<_>>().join(","))
        } else {
            String::new()
        }
    }

    /// Product geometry with every truncation raised by `ext`; used when a
    /// concave Omega must be divided out of a cofactor.
    pub fn extended_ring(&self, ext: u32) -> Result<Arc<CohRing>> {
        match &self.spec {
            GeometrySpec::ProjectiveProduct { dims } => {
                let t: Vec<u32> = dims.iter().map(|n| n + ext).collect();
                Ok(CohRing::truncated(t, self.ring.names().to_vec()))
            }
            _ => Err(Error::Unsupported("ring extension needs a projective product".into())),
        }
    }
}

/// Convenience: lambda/delta.
pub fn weight_over(l: &Q, delta: u32) -> Q {
    l * qf(1, delta as i64)
}
