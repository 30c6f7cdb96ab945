//! Fixed-point sums over stable-map graphs on P^n for K_1 and K_2 of a
//! convex O(l). These use nothing from the Euler-series machinery.

use crate::error::{Error, Result};
use crate::series_core::{factorial, q, qf, qo, qpow, qz, Q};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Distinct integer weights with every pairwise difference and every
/// nonzero-level convex combination that appears in the sums nonzero.
fn draw_weights(n: u32, seed: u64) -> Result<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'draw: for _ in 0..50 {
        let range = 10 * (n as i64 + 2);
        let w: Vec<i64> = (0..=n).map(|_| rng.gen_range(-range..=range)).collect();
        let lam: Vec<Q> = w.iter().map(|x| q(*x)).collect();
        for i in 0..lam.len() {
            if lam[i].is_zero() {
                continue 'draw;
            }
            for j in 0..lam.len() {
                for k in 0..lam.len() {
                    if i != j && k != i && k != j {
                        for a in 0..=2 {
                            if (q(a) * &lam[i] + q(2 - a) * &lam[j]) / q(2) == lam[k] {
                                continue 'draw;
                            }
                        }
                    }
                }
                if i != j && lam[i] == lam[j] {
                    continue 'draw;
                }
            }
        }
        return Ok(lam);
    }
    Err(Error::Genericity(50))
}

/// Moving part of the deformation space of a degree-d cover of the line ij.
fn edge(lam: &[Q], i: usize, j: usize, d: u32) -> Q {
    let dq = q(d as i64);
    let sign = if d % 2 == 1 { -qo() } else { qo() };
    let mut v = sign * qpow(&dq, 2 * d) / (factorial(d) * factorial(d) * qpow(&(&lam[i] - &lam[j]), 2 * d));
    for (k, lk) in lam.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        for a in 0..=d {
            v /= (q(a as i64) * &lam[i] + q((d - a) as i64) * &lam[j]) / &dq - lk;
        }
    }
    v
}

/// Weights of H^0 of O(l) pulled back along the cover.
fn edge_bundle(lam: &[Q], i: usize, j: usize, d: u32, l: i64) -> Q {
    let dq = q(d as i64);
    let ld = l * d as i64;
    (0..=ld).fold(qo(), |acc, a| acc * (q(a) * &lam[i] + q(ld - a) * &lam[j]) / &dq)
}

/// Vertex at i with the given (neighbour, edge degree) flags.
fn vertex(lam: &[Q], i: usize, flags: &[(usize, u32)], l: i64) -> Q {
    let val = flags.len() as i32;
    let omegas: Vec<Q> = flags.iter().map(|(j, d)| (&lam[i] - &lam[*j]) / q(*d as i64)).collect();
    let tangent = lam.iter().enumerate().filter(|(k, _)| *k != i).fold(qo(), |acc, (_, lk)| acc * (&lam[i] - lk));
    let inv_sum: Q = omegas.iter().map(|w| qo() / w).sum();
    let mut v = powi(&tangent, val - 1) * powi(&inv_sum, val - 3);
    for w in &omegas {
        v /= w;
    }
    v / powi(&(q(l) * &lam[i]), val - 1)
}

fn powi(x: &Q, e: i32) -> Q {
    let p = qpow(x, e.unsigned_abs());
    if e < 0 {
        qo() / p
    } else {
        p
    }
}

/// Integral of e(V_1) for O(l) on P^n as a sum over the torus-fixed lines,
/// i.e. the fixed points of G(2, n+1). Zero when ranks and dimensions do
/// not match.
pub fn oracle_line_count(n: u32, l: i64, seed: u64) -> Result<Q> {
    if l + 1 != 2 * (n as i64 - 1) {
        return Ok(qz());
    }
    let lam = draw_weights(n, seed)?;
    let mut acc = qz();
    for i in 0..lam.len() {
        for j in (i + 1)..lam.len() {
            let num = (0..=l).fold(qo(), |a, k| a * (q(k) * &lam[i] + q(l - k) * &lam[j]));
            let den = (0..lam.len())
                .filter(|k| *k != i && *k != j)
                .fold(qo(), |a, k| a * (&lam[i] - &lam[k]) * (&lam[j] - &lam[k]));
            acc += num / den;
        }
    }
    Ok(acc)
}

/// Degree-one graph sum; agrees with [`oracle_line_count`] and calibrates
/// the edge and vertex factors used at degree two.
pub fn oracle_degree_one_graphs(n: u32, l: i64, seed: u64) -> Result<Q> {
    if l + 1 != 2 * (n as i64 - 1) {
        return Ok(qz());
    }
    let lam = draw_weights(n, seed)?;
    let mut acc = qz();
    for i in 0..lam.len() {
        for j in (i + 1)..lam.len() {
            acc += edge(&lam, i, j, 1)
                * edge_bundle(&lam, i, j, 1, l)
                * vertex(&lam, i, &[(j, 1)], l)
                * vertex(&lam, j, &[(i, 1)], l);
        }
    }
    Ok(acc)
}

/// K_2 for O(l) on P^n from the two degree-two graph shapes: a double
/// cover of one line, and two lines meeting at a point.
pub fn oracle_degree_two(n: u32, l: i64, seed: u64) -> Result<Q> {
    if 2 * l + 1 != 3 * n as i64 - 1 {
        return Ok(qz());
    }
    let lam = draw_weights(n, seed)?;
    let half = qf(1, 2);
    let mut acc = qz();
    for i in 0..lam.len() {
        for j in (i + 1)..lam.len() {
            acc += &half
                * edge(&lam, i, j, 2)
                * edge_bundle(&lam, i, j, 2, l)
                * vertex(&lam, i, &[(j, 2)], l)
                * vertex(&lam, j, &[(i, 2)], l);
        }
    }
    for j in 0..lam.len() {
        for i in 0..lam.len() {
            for k in 0..lam.len() {
                if i == j || k == j {
                    continue;
                }
                acc += &half
                    * edge(&lam, j, i, 1)
                    * edge(&lam, j, k, 1)
                    * edge_bundle(&lam, j, i, 1, l)
                    * edge_bundle(&lam, j, k, 1, l)
                    * vertex(&lam, j, &[(i, 1), (k, 1)], l)
                    * vertex(&lam, i, &[(j, 1)], l)
                    * vertex(&lam, k, &[(j, 1)], l);
            }
        }
    }
    Ok(acc)
}
