//! Nonequivariant cohomology rings in monomial normal form.

use crate::linalg::rref;
use crate::series_core::{qo, qz, Q};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

pub type Mono = Vec<u32>;

#[derive(Debug, Clone)]
enum Reduction {
    /// Q[H_1..H_m] / (H_a^{trunc_a + 1}).
    Truncated { trunc: Vec<u32> },
    /// Quotient by linear and Stanley-Reisner relations; `table` maps every
    /// monomial of degree <= dim to its normal form.
    Table { table: BTreeMap<Mono, Vec<(Mono, Q)>> },
}

/// A graded Artinian Q-algebra presented by generators and relations.
#[derive(Debug, Clone)]
pub struct CohRing {
    ngens: usize,
    dim: usize,
    names: Vec<String>,
    red: Reduction,
}

impl CohRing {
    /// Product of projective spaces with per-factor truncation exponents.
    pub fn truncated(trunc: Vec<u32>, names: Vec<String>) -> Arc<Self> {
        let dim = trunc.iter().sum::<u32>() as usize;
        Arc::new(CohRing { ngens: trunc.len(), dim, names, red: Reduction::Truncated { trunc } })
    }

    /// Quotient of Q[D_1..D_N] by the given relations (each a linear
    /// combination of monomials), with everything above `dim` set to zero.
    pub fn presented(ngens: usize, dim: usize, relations: &[Vec<(Mono, Q)>], names: Vec<String>) -> Arc<Self> {
        let mut table = BTreeMap::new();
        for k in 0..=dim as u32 {
            let monos = monomials_of_degree(ngens, k);
            // columns: monomials sorted descending, so pivots are the largest.
            let mut cols = monos.clone();
            cols.sort();
            cols.reverse();
            let idx: BTreeMap<Mono, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows: Vec<Vec<Q>> = Vec::new();
            for rel in relations {
                let rd = rel.iter().map(|(m, _)| m.iter().sum::<u32>()).max().unwrap_or(0);
                if rd > k {
                    continue;
                }
                for mult in monomials_of_degree(ngens, k - rd) {
                    let mut row = vec![qz(); cols.len()];
                    for (m, c) in rel {
                        let mm: Mono = m.iter().zip(&mult).map(|(a, b)| a + b).collect();
                        row[idx[&mm]] += c;
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let (rref, pivots) = rref(rows, cols.len());
            let pivot_of: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(r, c)| (*c, r)).collect();
            for (ci, m) in cols.iter().enumerate() {
                let nf = match pivot_of.get(&ci) {
                    None => vec![(m.clone(), qo())],
                    Some(&r) => rref[r]
                        .iter()
                        .enumerate()
                        .filter(|(j, x)| *j != ci && !x.is_zero())
                        .map(|(j, x)| (cols[j].clone(), -x.clone()))
                        .collect(),
                };
                table.insert(m.clone(), nf);
            }
        }
        Arc::new(CohRing { ngens, dim, names, red: Reduction::Table { table } })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Complex dimension of the underlying space (top degree).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn truncation(&self) -> Option<&[u32]> {
        match &self.red {
            Reduction::Truncated { trunc } => Some(trunc),
            Reduction::Table { .. } => None,
        }
    }

    /// Normal form of a single monomial.
    pub fn reduce_mono(&self, m: &Mono) -> Vec<(Mono, Q)> {
        match &self.red {
            Reduction::Truncated { trunc } => {
                if m.iter().zip(trunc).all(|(e, t)| e <= t) {
                    vec![(m.clone(), qo())]
                } else {
                    Vec::new()
                }
            }
            Reduction::Table { table } => table.get(m).cloned().unwrap_or_default(),
        }
    }

    /// Standard monomials (a basis of the ring).
    pub fn basis(&self) -> Vec<Mono> {
        let mut out = Vec::new();
        let top = match &self.red {
            Reduction::Truncated { trunc } => trunc.iter().sum::<u32>(),
            Reduction::Table { .. } => self.dim as u32,
        };
        for k in 0..=top {
            for m in monomials_of_degree(self.ngens, k) {
                let r = self.reduce_mono(&m);
                if r.len() == 1 && r[0].0 == m && r[0].1 == qo() {
                    out.push(m);
                }
            }
        }
        out
    }
}

pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Mono> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials_of_degree(n - 1, k - first) {
            let mut m = vec![first];
            m.append(&mut rest);
            out.push(m);
        }
    }
    out
}

/// An element of a [`CohRing`] in normal form.
#[derive(Clone, Debug)]
pub struct CohClass {
    ring: Arc<CohRing>,
    terms: BTreeMap<Mono, Q>,
}

impl PartialEq for CohClass {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl CohClass {
    pub fn zero(ring: &Arc<CohRing>) -> Self {
        CohClass { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(ring: &Arc<CohRing>, a: Q) -> Self {
        let mut c = CohClass::zero(ring);
        c.add_mono(&vec![0; ring.ngens], a);
        c
    }

    pub fn one(ring: &Arc<CohRing>) -> Self {
        CohClass::scalar(ring, qo())
    }

    pub fn gen(ring: &Arc<CohRing>, i: usize) -> Self {
        let mut m = vec![0; ring.ngens];
        m[i] = 1;
        let mut c = CohClass::zero(ring);
        c.add_mono(&m, qo());
        c
    }

    /// Linear combination of generators.
    pub fn linear(ring: &Arc<CohRing>, coeffs: &[Q]) -> Self {
        let mut c = CohClass::zero(ring);
        for (i, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                let mut m = vec![0; ring.ngens];
                m[i] = 1;
                c.add_mono(&m, a.clone());
            }
        }
        c
    }

    /// Normal form of an arbitrary polynomial in the generators.
    pub fn from_raw(ring: &Arc<CohRing>, raw: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut c = CohClass::zero(ring);
        for (m, a) in raw {
            c.add_mono(&m, a);
        }
        c
    }

    fn add_mono(&mut self, m: &Mono, a: Q) {
        if a.is_zero() {
            return;
        }
        for (n, b) in self.ring.reduce_mono(m) {
            let v = self.terms.entry(n.clone()).or_insert_with(qz);
            *v += &a * b;
            if v.is_zero() {
                self.terms.remove(&n);
            }
        }
    }

    pub fn ring(&self) -> &Arc<CohRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(qz)
    }

    /// Scalar (degree-0) coefficient.
    pub fn scalar_part(&self) -> Q {
        self.coeff(&vec![0; self.ring.ngens])
    }

    pub fn degree_part(&self, k: u32) -> CohClass {
        CohClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.iter().sum::<u32>() == k).map(|(m, a)| (m.clone(), a.clone())).collect(),
        }
    }

    /// Largest degree present; `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).min()
    }

    pub fn add(&self, o: &CohClass) -> CohClass {
        let mut r = self.clone();
        for (m, a) in &o.terms {
            let v = r.terms.entry(m.clone()).or_insert_with(qz);
            *v += a;
            if v.is_zero() {
                r.terms.remove(m);
            }
        }
        r
    }

    pub fn sub(&self, o: &CohClass) -> CohClass {
        self.add(&o.scale(&-qo()))
    }

    pub fn scale(&self, s: &Q) -> CohClass {
        if s.is_zero() {
            return CohClass::zero(&self.ring);
        }
        CohClass { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * s)).collect() }
    }

    pub fn mul(&self, o: &CohClass) -> CohClass {
        let mut r = CohClass::zero(&self.ring);
        for (m1, a1) in &self.terms {
            for (m2, a2) in &o.terms {
                let m: Mono = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
                r.add_mono(&m, a1 * a2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> CohClass {
        let mut r = CohClass::one(&self.ring);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Substitutes rational values for the generators.
    pub fn eval(&self, vals: &[Q]) -> Q {
        let mut acc = qz();
        for (m, a) in &self.terms {
            let mut t = a.clone();
            for (e, v) in m.iter().zip(vals) {
                for _ in 0..*e {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embeds into another ring with the same generators.
    pub fn reinterpret(&self, ring: &Arc<CohRing>) -> CohClass {
        CohClass::from_raw(ring, self.terms.clone())
    }
}
