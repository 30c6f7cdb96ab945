//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line and the
//! binary exits nonzero if any line is `FAIL`. Runs without the libtest
//! harness so the lines always reach stdout.
//!
//! All numerical criteria are exact over the rationals, so the only pinned
//! tolerances are the wall-clock budgets below.

use gwmirror_cli::{cmd_compute, cmd_solve, parse_config, ResultDocument, RunConfig, Status};
use gwmirror_core::euler_engine::{
    assemble_b, balloon_multiples, euler_data_check, euler_series_check, one_degree_bound_check, residue_closed_form,
    residue_direct,
};
use gwmirror_core::geometry::monomials_of_degree;
use gwmirror_core::mirror_transform::{equivariant_transform, run_pipeline};
use gwmirror_core::reconstruction::{linking_values_from_splitting, oracle_line_count, solve_linear_model};
use gwmirror_core::{build_geometry, q, qf, BundleSpec, CohClass, Geometry, GeometrySpec, MultClass, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Budget for the degree-one quintic run.
const QUINTIC_D1_BUDGET: Duration = Duration::from_secs(5);
/// Budget for the quintic run up to degree six.
const QUINTIC_D6_BUDGET: Duration = Duration::from_secs(60);
/// Seeds used wherever a criterion asks for weight-seed invariance.
const SEEDS: [u64; 3] = [1, 2, 3];
/// Splitting types drawn for the Euler-data identity.
const RANDOM_SPLITTINGS: usize = 20;
/// Exact comparison; kept as a named constant so every line can print it.
const TOL: &str = "exact";

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn config(dims: &[u32], convex: &[&[i64]], concave: &[&[i64]], class: &str, d_max: u32, seed: u64) -> RunConfig {
    let list = |v: &[&[i64]]| format!("{:?}", v.iter().map(|x| x.to_vec()).collect::<Vec<_>>());
    let text = format!(
        "[geometry]\nkind = \"projective_product\"\ndims = {dims:?}\n\n[bundle]\nconvex = {}\nconcave = {}\n\n\
         [class]\nname = \"{class}\"\n\n[run]\nd_max = {d_max}\nweight_seed = {seed}\n",
        list(convex),
        list(concave)
    );
    parse_config(&text).expect("acceptance config")
}

fn geometry(dims: &[u32], seed: u64, dmax: u32) -> Geometry {
    build_geometry(&GeometrySpec::ProjectiveProduct { dims: dims.to_vec() }, seed, dmax).unwrap()
}

fn bundle(g: &Geometry, convex: &[Vec<i64>], concave: &[Vec<i64>]) -> BundleSpec {
    BundleSpec::from_h_vectors(g, convex, concave).unwrap()
}

fn fact(n: u32) -> Q {
    (1..=n as i64).fold(q(1), |acc, k| acc * q(k))
}

fn harmonic(n: u32) -> Q {
    (1..=n as i64).fold(q(0), |acc, k| acc + qf(1, k))
}

fn k_of(doc: &ResultDocument, d: u32) -> String {
    doc.k(&[d]).unwrap_or("missing").to_string()
}

/// Collects every extraction residual seen by the suite.
#[derive(Default)]
struct Residuals {
    runs: usize,
    nonzero: Vec<String>,
}

impl Residuals {
    fn record(&mut self, label: &str, doc: &ResultDocument) {
        self.runs += 1;
        for r in &doc.invariants {
            if r.residual != "0" {
                self.nonzero.push(format!("{label} d={:?} residual {}", r.d, r.residual));
            }
        }
    }
}

fn criterion_1(res: &mut Residuals) -> Line {
    let start = Instant::now();
    let doc = cmd_compute(&config(&[4], &[&[5]], &[], "euler", 1, 1), false).unwrap();
    let elapsed = start.elapsed();
    res.record("quintic d1", &doc);
    let oracle = oracle_line_count(4, 5, 1).unwrap();
    let k1 = k_of(&doc, 1);
    Line {
        id: 1,
        name: "quintic_degree_one",
        pass: k1 == "2875" && oracle == q(2875) && elapsed < QUINTIC_D1_BUDGET,
        detail: format!("K_1 = {k1}, graph sum = {oracle}, {elapsed:.2?} (budget {QUINTIC_D1_BUDGET:?})"),
    }
}

fn criterion_2(res: &mut Residuals) -> Line {
    let start = Instant::now();
    let deep = cmd_compute(&config(&[4], &[&[5]], &[], "euler", 6, 1), false).unwrap();
    let elapsed = start.elapsed();
    res.record("quintic d6", &deep);
    let mut ok = k_of(&deep, 2) == "4876875/8" && k_of(&deep, 3) == "8564575000/27" && elapsed < QUINTIC_D6_BUDGET;
    let with_oracle = cmd_compute(&config(&[4], &[&[5]], &[], "euler", 3, 1), true).unwrap();
    res.record("quintic oracle", &with_oracle);
    let oracle_ok = with_oracle.checks.iter().any(|c| c.name == "degree_two_graph_oracle" && c.status == Status::Pass);
    ok &= oracle_ok;
    let mut seeds_ok = true;
    for seed in SEEDS {
        let doc = cmd_compute(&config(&[4], &[&[5]], &[], "euler", 3, seed), false).unwrap();
        res.record("quintic seed", &doc);
        seeds_ok &= doc.invariants == with_oracle.invariants;
    }
    ok &= seeds_ok;
    Line {
        id: 2,
        name: "quintic_up_to_degree_three",
        pass: ok,
        detail: format!(
            "K_2 = {}, K_3 = {}, d=2 graph sum {}, seeds {SEEDS:?} agree: {seeds_ok}, d_max 6 in {elapsed:.2?}",
            k_of(&deep, 2),
            k_of(&deep, 3),
            if oracle_ok { "agrees" } else { "disagrees" }
        ),
    }
}

fn criterion_3() -> Line {
    let g = geometry(&[4], 1, 4);
    let v = bundle(&g, &[vec![5]], &[]);
    let md = run_pipeline(&g, &v, MultClass::Euler, 4).unwrap().mirror;
    let mut ok = true;
    for d in 1..=4u32 {
        ok &= md.c.get(&[d]) == fact(5 * d) / fact(d).pow(5);
    }
    // first-order mirror map from the derivative of the hypergeometric term
    let g1 = q(5) * fact(5) * (harmonic(5) - harmonic(1));
    ok &= g1 == q(770) && md.g[0].get(&[1]) == g1;
    Line { id: 3, name: "quintic_mirror_map", pass: ok, detail: format!("g_1 = {}, C_1..C_4 checked", md.g[0].get(&[1])) }
}

fn criterion_4(res: &mut Residuals) -> Line {
    let doc = cmd_compute(&config(&[1], &[], &[&[-1], &[-1]], "euler", 4, 1), false).unwrap();
    res.record("local curve", &doc);
    let g = geometry(&[1], 1, 1);
    let v = bundle(&g, &[], &[vec![-1], vec![-1]]);
    let rank_zero = v.induced_rank(&g, &[1]) == 0;
    let got: Vec<String> = (1..=4).map(|d| k_of(&doc, d)).collect();
    let want: Vec<String> = (1..=4i64).map(|d| qf(1, d * d * d).to_string()).collect();
    Line {
        id: 4,
        name: "local_curve",
        pass: got == want && rank_zero,
        detail: format!("K_1..K_4 = {got:?}, rank V_1 = 0: {rank_zero}"),
    }
}

fn criterion_5() -> Line {
    let cases: [(&str, &[u32], Vec<Vec<i64>>, MultClass); 3] = [
        ("O on P2", &[2], vec![], MultClass::One),
        ("O on P1xP1", &[1, 1], vec![], MultClass::One),
        ("quintic B", &[4], vec![vec![5]], MultClass::Euler),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, dims, convex, b) in cases {
        let g = geometry(dims, 1, 3);
        let v = bundle(&g, &convex, &[]);
        let bser = assemble_b(&g, &v, b, 3).unwrap().restrict(&g, &q(0)).unwrap();
        let r = euler_series_check(&g, &bser, 3, 4).unwrap();
        ok &= r.passed;
        detail.push(format!("{name}: {} sums {}", r.checked, if r.passed { "ok" } else { "fail" }));
    }
    Line { id: 5, name: "euler_series_predicate", pass: ok, detail: detail.join(", ") }
}

fn criterion_6() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut clean = 0;
    let mut caught = 0;
    for _ in 0..RANDOM_SPLITTINGS {
        let n = rng.gen_range(1..=3u32);
        let g = geometry(&[n], rng.gen(), 3);
        // at least one positive summand so that every P_d has a factor to drop
        let convex: Vec<Vec<i64>> = (0..rng.gen_range(1..=2)).map(|_| vec![rng.gen_range(1..=5)]).collect();
        let concave: Vec<Vec<i64>> = (0..rng.gen_range(0..=2)).map(|_| vec![-rng.gen_range(1..=4)]).collect();
        let b = if rng.gen_bool(0.5) { MultClass::Euler } else { MultClass::ChernPoly };
        let v = bundle(&g, &convex, &concave);
        clean += euler_data_check(&g, &v, b, 3, false).unwrap().passed as usize;
        caught += !euler_data_check(&g, &v, b, 3, true).unwrap().passed as usize;
    }
    Line {
        id: 6,
        name: "euler_data_identity",
        pass: clean == RANDOM_SPLITTINGS && caught == RANDOM_SPLITTINGS,
        detail: format!("{clean}/{RANDOM_SPLITTINGS} pass, {caught}/{RANDOM_SPLITTINGS} faults detected"),
    }
}

fn criterion_7() -> Line {
    let cases: [(&[u32], Vec<Vec<i64>>, Vec<Vec<i64>>, MultClass); 4] = [
        (&[2], vec![vec![3]], vec![], MultClass::Euler),
        (&[2], vec![vec![2]], vec![], MultClass::ChernPoly),
        (&[1, 1], vec![], vec![vec![-2, -2]], MultClass::Euler),
        (&[4], vec![vec![5]], vec![], MultClass::Euler),
    ];
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (dims, convex, concave, b) in cases {
        let g = geometry(dims, 1, 2);
        let v = bundle(&g, &convex, &concave);
        let xval = if b == MultClass::ChernPoly { qf(7, 3) } else { q(0) };
        let series = assemble_b(&g, &v, b, 2).unwrap();
        for (bl, delta) in balloon_multiples(&g, 2) {
            let d: Vec<u32> = bl.degree.iter().map(|x| x * delta).collect();
            let a0 = &bl.weight / q(delta as i64);
            let direct = residue_direct(&g, &series, &d, bl.p, &a0, &xval).unwrap();
            let closed = residue_closed_form(&g, &v, b, &bl, delta, &xval).unwrap();
            pairs += 1;
            if direct != closed {
                bad.push(format!("{dims:?} balloon ({}, {}) delta {delta}", bl.p, bl.q));
            }
        }
    }
    Line { id: 7, name: "linking_residues", pass: bad.is_empty(), detail: format!("{pairs} pairs, mismatches {bad:?}") }
}

fn criterion_8() -> Line {
    let mut count = 0;
    let mut bad = Vec::new();
    for seed in SEEDS {
        for dims in [&[2u32][..], &[3], &[1, 2]] {
            let g = geometry(dims, seed, 1);
            for k in 0..=g.dim as u32 {
                for mono in monomials_of_degree(g.ring.ngens(), k) {
                    let c = CohClass::from_raw(&g.ring, [(mono.clone(), q(1))]);
                    count += 1;
                    if g.localized_integrate(&c).unwrap() != g.integrate(&c) {
                        bad.push(format!("{dims:?} seed {seed} {mono:?}"));
                    }
                }
            }
        }
    }
    Line { id: 8, name: "localization", pass: bad.is_empty(), detail: format!("{count} monomials, mismatches {bad:?}") }
}

fn criterion_9() -> Line {
    let mut ok = true;
    let mut runs = 0;
    for (dims, convex, concave) in [
        (&[4u32][..], vec![vec![5i64]], vec![]),
        (&[1], vec![], vec![vec![-1], vec![-1]]),
        (&[2], vec![], vec![vec![-3]]),
    ] {
        let g = geometry(dims, 1, 3);
        let v = bundle(&g, &convex, &concave);
        let tr = run_pipeline(&g, &v, MultClass::Euler, 3).unwrap().transformed;
        runs += 1;
        ok &= tr.coeffs.values().all(|a| a.max_alpha().map_or(true, |t| t <= -2));
    }
    let g = geometry(&[1, 1], 1, 2);
    let v = bundle(&g, &[], &[vec![-2, -2]]);
    let em = equivariant_transform(&g, &v, MultClass::Euler, 2, &q(0)).unwrap();
    runs += 1;
    ok &= em.a.coeffs.iter().flat_map(|row| row.values()).all(|f| f.degree().map_or(true, |t| t <= -2));
    let mut spaces = 0;
    for n in 1..=4u32 {
        let r = one_degree_bound_check(&geometry(&[n], 1, 4), 4).unwrap();
        spaces += 1;
        ok &= r.passed;
    }
    Line {
        id: 9,
        name: "degree_bounds",
        pass: ok,
        detail: format!("A_d bound over {runs} transforms, 1_d bound on {spaces} projective spaces up to d = 4"),
    }
}

fn criterion_10(res: &mut Residuals) -> Line {
    let mut ok = true;
    let mut detail = Vec::new();
    for (label, dims, convex, class, b, xs) in [
        ("quintic", &[4u32][..], vec![5i64], "euler", MultClass::Euler, vec![q(0)]),
        ("O(3) on P2", &[2], vec![3], "chern_poly", MultClass::ChernPoly, vec![qf(7, 3), qf(-5, 2)]),
    ] {
        let cfg = config(dims, &[&convex], &[], class, 2, 1);
        let compute = cmd_compute(&cfg, false).unwrap();
        let solve = cmd_solve(&cfg).unwrap();
        res.record(label, &compute);
        res.record(label, &solve);
        let tables = compute.invariants == solve.invariants && !compute.invariants.is_empty();
        let g = geometry(dims, 1, 2);
        let v = bundle(&g, &[convex.clone()], &[]);
        let mut restrictions = true;
        for x in &xs {
            let rec = solve_linear_model(&g, &linking_values_from_splitting(&g, &v, b, 2, x).unwrap(), 2).unwrap();
            let em = equivariant_transform(&g, &v, b, 2, x).unwrap();
            restrictions &= rec.series.coeffs == em.a.coeffs;
        }
        ok &= tables && restrictions;
        detail.push(format!("{label}: K tables {tables}, restrictions at {} x-values {restrictions}", xs.len()));
    }
    Line { id: 10, name: "reconstruction_equivalence", pass: ok, detail: detail.join(", ") }
}

fn criterion_11(res: &mut Residuals) -> Line {
    for (label, cfg) in [
        ("local P2", config(&[2], &[], &[&[-3]], "euler", 3, 1)),
        ("O(-2,-2) on P1xP1", config(&[1, 1], &[], &[&[-2, -2]], "euler", 2, 1)),
        ("O(3) chern", config(&[2], &[&[3]], &[], "chern_poly", 2, 2)),
    ] {
        let doc = cmd_compute(&cfg, false).unwrap();
        res.record(label, &doc);
    }
    Line {
        id: 11,
        name: "extraction_overdetermination",
        pass: res.nonzero.is_empty() && res.runs > 0,
        detail: format!("{} runs, nonzero residuals {:?}", res.runs, res.nonzero),
    }
}

fn main() {
    let mut res = Residuals::default();
    let lines = vec![
        criterion_1(&mut res),
        criterion_2(&mut res),
        criterion_3(),
        criterion_4(&mut res),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(&mut res),
        criterion_11(&mut res),
    ];
    for l in &lines {
        println!("{} C{:02} {:<30} [{TOL}] {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.name, l.detail);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    println!("acceptance: {}/{} criteria pass", lines.len() - failed.len(), lines.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
