use super::{Balloon, CohRing, Divisor, FixedPoint, Geometry, GeometrySpec, Mono};
use crate::error::{Error, Result};
use crate::linalg::{det, inverse, rank, solve, solve_unique, Solution};
use crate::series_core::{q, qo, qz, Q};
use num_integer::Integer;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|x| q(*x)).collect()
}

pub(super) fn build_toric(
    spec: &GeometrySpec,
    rays: &[Vec<i64>],
    cones: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
    attempt: u32,
) -> Result<Geometry> {
    let nrays = rays.len();
    let n = rays.first().map(|r| r.len()).ok_or_else(|| Error::InvalidFan("no rays".into()))?;
    if rays.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidFan("rays of different dimension".into()));
    }
    for r in rays {
        let g = r.iter().fold(0i64, |acc, x| acc.gcd(x));
        if g != 1 {
            return Err(Error::InvalidFan(format!("ray {r:?} is not primitive")));
        }
    }
    let rows: Vec<Vec<Q>> = (0..n).map(|j| rays.iter().map(|r| q(r[j])).collect()).collect();
    if rank(&rows, nrays) != n {
        return Err(Error::InvalidFan("rays do not span the lattice".into()));
    }
    // Cones: n distinct rays forming a lattice basis.
    let mut cone_inv: Vec<Vec<Vec<Q>>> = Vec::new();
    for c in cones {
        let mut s = c.clone();
        s.sort();
        s.dedup();
        if s.len() != n || s.iter().any(|a| *a >= nrays) {
            return Err(Error::InvalidFan(format!("cone {c:?} is not simplicial of full dimension")));
        }
        // matrix with the cone's rays as columns
        let mat: Vec<Vec<Q>> = (0..n).map(|j| c.iter().map(|a| q(rays[*a][j])).collect()).collect();
        let d = det(&mat);
        if d.abs() != qo() {
            return Err(Error::InvalidFan(format!("cone {c:?} is not smooth")));
        }
        cone_inv.push(inverse(&mat).unwrap());
    }
    // Walls shared by exactly two cones, with the opposite-side condition.
    let mut walls: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, c) in cones.iter().enumerate() {
        for &omit in c {
            let mut w: Vec<usize> = c.iter().copied().filter(|a| *a != omit).collect();
            w.sort();
            walls.entry(w).or_default().push((ci, omit));
        }
    }
    let mut raw_balloons = Vec::new();
    for (w, list) in &walls {
        if list.len() != 2 {
            return Err(Error::InvalidFan(format!("wall {w:?} lies in {} cones; fan not complete", list.len())));
        }
        let (s1, a1) = list[0];
        let (s2, a2) = list[1];
        // v_{a2} in the basis of cone s1
        let coords: Vec<Q> = (0..n)
            .map(|i| (0..n).fold(qz(), |acc, j| acc + &cone_inv[s1][i][j] * q(rays[a2][j])))
            .collect();
        let mut charge = vec![0i64; nrays];
        for (i, &b) in cones[s1].iter().enumerate() {
            if b == a1 {
                if coords[i] != -qo() {
                    return Err(Error::InvalidFan(format!("wall {w:?}: cones not on opposite sides")));
                }
                charge[b] = 1;
            } else {
                if !coords[i].is_integer() {
                    return Err(Error::InvalidFan("non-integral wall relation".into()));
                }
                charge[b] = -coords[i].to_integer().try_into().unwrap_or(0i64);
            }
        }
        charge[a2] = 1;
        raw_balloons.push((s1, s2, a1, a2, charge));
    }
    let m = nrays - n;
    // Curve-class basis: m balloon classes generating all balloon classes
    // with non-negative integer coefficients.
    let mut distinct: Vec<Vec<i64>> = raw_balloons.iter().map(|b| b.4.clone()).collect();
    distinct.sort();
    distinct.dedup();
    let basis = choose_curve_basis(&distinct, m, nrays)
        .ok_or_else(|| Error::InvalidFan("effective curve classes are not simplicially generated".into()))?;
    let bmat: Vec<Vec<Q>> = (0..nrays).map(|a| basis.iter().map(|v| q(v[a])).collect()).collect();
    let coords_in_basis = |ch: &[i64]| -> Vec<u32> {
        let x = solve_unique(&bmat, &to_q(ch), m).expect("balloon class in basis span");
        x.iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    };
    // Torus weight.
    let range = 6 * (nrays as i64 + 2) + 2 * attempt as i64;
    let w: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-range..=range))).collect();
    // D_a(p_sigma) = <u_a, w> for a in sigma.
    let mut values = vec![vec![qz(); cones.len()]; nrays];
    for (ci, c) in cones.iter().enumerate() {
        for (i, &a) in c.iter().enumerate() {
            values[a][ci] = (0..n).fold(qz(), |acc, j| acc + &cone_inv[ci][i][j] * &w[j]);
        }
    }
    let names: Vec<String> = (0..nrays).map(|a| format!("D{}", a + 1)).collect();
    let mut relations: Vec<Vec<(Mono, Q)>> = Vec::new();
    for j in 0..n {
        let rel: Vec<(Mono, Q)> = (0..nrays)
            .filter(|a| rays[*a][j] != 0)
            .map(|a| {
                let mut mo = vec![0; nrays];
                mo[a] = 1;
                (mo, q(rays[a][j]))
            })
            .collect();
        relations.push(rel);
    }
    for s in minimal_nonfaces(nrays, n, cones) {
        let mut mo = vec![0; nrays];
        for a in s {
            mo[a] = 1;
        }
        relations.push(vec![(mo, qo())]);
    }
    let ring = CohRing::presented(nrays, n, &relations, names.clone());
    let divisors: Vec<Divisor> = (0..nrays)
        .map(|a| {
            let mut gen_coeffs = vec![qz(); nrays];
            gen_coeffs[a] = qo();
            Divisor { name: names[a].clone(), gen_coeffs, charges: basis.iter().map(|v| v[a]).collect(), values: values[a].clone() }
        })
        .collect();
    let fixed_points: Vec<FixedPoint> = cones
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let gen_values: Vec<Q> = (0..nrays).map(|a| values[a][ci].clone()).collect();
            let tangent: Vec<Q> = c.iter().map(|a| values[*a][ci].clone()).collect();
            let euler = tangent.iter().fold(qo(), |acc, t| acc * t);
            FixedPoint { id: ci, label: format!("{c:?}"), gen_values, tangent, euler }
        })
        .collect();
    let balloons = raw_balloons
        .iter()
        .map(|(s1, s2, a1, a2, ch)| Balloon {
            p: *s1,
            q: *s2,
            weight: values[*a1][*s1].clone(),
            degree: coords_in_basis(ch),
            divisor_degrees: ch.clone(),
            divisor_at_p: *a1,
            divisor_at_q: *a2,
        })
        .collect();
    // H_a: classes dual to the curve basis.
    let bt: Vec<Vec<Q>> = (0..m).map(|i| (0..nrays).map(|a| q(basis[i][a])).collect()).collect();
    let mut h_coeffs = Vec::new();
    for i in 0..m {
        let rhs: Vec<Q> = (0..m).map(|j| if i == j { qo() } else { qz() }).collect();
        match solve(&bt, &rhs, nrays) {
            Solution::Affine { particular, .. } => h_coeffs.push(particular),
            Solution::Inconsistent => return Err(Error::InvalidFan("no divisor basis dual to curve basis".into())),
        }
    }
    Ok(Geometry {
        spec: spec.clone(),
        dim: n,
        m,
        ring,
        divisors,
        h_coeffs,
        fixed_points,
        balloons,
        weight_seed: 0,
        dmax: 0,
        product_weights: None,
        toric_weight: Some(w),
    })
}

fn choose_curve_basis(classes: &[Vec<i64>], m: usize, nrays: usize) -> Option<Vec<Vec<i64>>> {
    let k = classes.len();
    let mut idx: Vec<usize> = (0..m).collect();
    if m > k {
        return None;
    }
    loop {
        let cand: Vec<Vec<i64>> = idx.iter().map(|i| classes[*i].clone()).collect();
        let bmat: Vec<Vec<Q>> = (0..nrays).map(|a| cand.iter().map(|v| q(v[a])).collect()).collect();
        if rank(&bmat, m) == m {
            let ok = classes.iter().all(|c| {
                solve_unique(&bmat, &to_q(c), m)
                    .map(|x| x.iter().all(|v| v.is_integer() && !v.is_negative()))
                    .unwrap_or(false)
            });
            if ok {
                return Some(cand);
            }
        }
        // next combination
        let mut i = m;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < k - m + i {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Minimal subsets of rays not contained in any cone.
fn minimal_nonfaces(nrays: usize, n: usize, cones: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let in_cone = |s: &[usize]| cones.iter().any(|c| s.iter().all(|a| c.contains(a)));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for size in 2..=(n + 1).min(nrays) {
        for s in subsets(nrays, size) {
            if in_cone(&s) {
                continue;
            }
            if out.iter().any(|t| t.iter().all(|a| s.contains(a))) {
                continue;
            }
            out.push(s);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

