//! The result document and its JSON and CSV renderings. Every number is an
//! exact fraction string.

use crate::config::RunConfig;
use gwmirror_core::mirror_transform::MirrorData;
use gwmirror_core::{fmt_q, Coeff, Geometry, InvariantTable, NovikovSeries, Q};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct ResultDocument {
    pub mode: String,
    pub config: RunConfig,
    pub geometry: GeometryInfo,
    /// Which computation produced the invariants.
    pub route: String,
    pub shift: Option<i64>,
    pub invariants: Vec<InvariantRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror: Option<MirrorTables>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub solve: Vec<SolveRecord>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timing_ms: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometryInfo {
    pub dim: usize,
    pub m: usize,
    pub fixed_points: usize,
    pub balloons: usize,
    pub weights: String,
}

impl GeometryInfo {
    pub fn of(g: &Geometry) -> Self {
        GeometryInfo {
            dim: g.dim,
            m: g.m,
            fixed_points: g.n_fixed(),
            balloons: g.balloons.len(),
            weights: g.weight_summary(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantRecord {
    pub d: Vec<u32>,
    pub k: String,
    pub residual: String,
}

pub fn invariant_records(t: &InvariantTable) -> Vec<InvariantRecord> {
    t.k.iter()
        .map(|(d, k)| InvariantRecord { d: d.clone(), k: fmt_q(k), residual: fmt_q(&t.residuals[d]) })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub d: Vec<u32>,
    pub value: String,
}

fn entries<C: Coeff>(s: &NovikovSeries<C>, f: impl Fn(&C) -> String) -> Vec<Entry> {
    s.terms().map(|(d, c)| Entry { d: d.clone(), value: f(c) }).collect()
}

/// C, C', C'', and f = alpha f1 + f0, g, as sparse coefficient lists.
#[derive(Clone, Debug, Serialize)]
pub struct MirrorTables {
    pub c: Vec<Entry>,
    pub c_prime: Vec<Entry>,
    pub c_second: Vec<Vec<Entry>>,
    pub f_alpha: Vec<Entry>,
    pub f_const: Vec<Entry>,
    pub g: Vec<Vec<Entry>>,
}

impl MirrorTables {
    pub fn of(md: &MirrorData) -> Self {
        let q = |x: &Q| fmt_q(x);
        MirrorTables {
            c: entries(&md.c, q),
            c_prime: entries(&md.c_prime, |x| x.to_string_exact()),
            c_second: md.c_second.iter().map(|s| entries(s, q)).collect(),
            f_alpha: entries(&md.f1, q),
            f_const: entries(&md.f0, |x| x.to_string_exact()),
            g: md.g.iter().map(|s| entries(s, q)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveRecord {
    pub d: Vec<u32>,
    pub unknowns: usize,
    pub equations: usize,
    pub zeta_order: u32,
    pub kernel_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckRecord {
    pub fn new(name: &str, status: Status, detail: Option<String>, counterexample: Option<String>) -> Self {
        CheckRecord { name: name.into(), status, detail, counterexample }
    }
}

impl ResultDocument {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn k(&self, d: &[u32]) -> Option<&str> {
        self.invariants.iter().find(|r| r.d == d).map(|r| r.k.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// The K table only: one row per degree, degree entries joined by ';'.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["d", "k", "residual"]).expect("in-memory write");
        for r in &self.invariants {
            let d = r.d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
            w.write_record([d.as_str(), r.k.as_str(), r.residual.as_str()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
