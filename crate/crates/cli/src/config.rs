//! Run configuration: a TOML document with [geometry], [bundle], [class]
//! and [run] sections.

use crate::CliError;
use gwmirror_core::{BundleSpec, Geometry, GeometrySpec, LineBundle, MultClass, ResolutionTerm};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub bundle: BundleConfig,
    pub class: ClassConfig,
    pub run: RunSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometryConfig {
    ProjectiveProduct { dims: Vec<u32> },
    Toric { rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>> },
}

/// Line summands given either over the H-basis or over the torus-invariant
/// divisors (the latter fixes the equivariant lift).
struct Summands<'a> {
    convex: &'a [Vec<i64>],
    concave: &'a [Vec<i64>],
    convex_divisors: &'a [Vec<i64>],
    concave_divisors: &'a [Vec<i64>],
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub convex: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concave: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub convex_divisors: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concave_divisors: Vec<Vec<i64>>,
    /// Signed split terms; used by `solve` in place of the splitting.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub resolution: Vec<ResolutionConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionConfig {
    pub sign: i32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub convex: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concave: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub convex_divisors: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concave_divisors: Vec<Vec<i64>>,
}

impl BundleConfig {
    fn split(&self) -> Summands<'_> {
        Summands { convex: &self.convex, concave: &self.concave, convex_divisors: &self.convex_divisors, concave_divisors: &self.concave_divisors }
    }
}

impl ResolutionConfig {
    fn split(&self) -> Summands<'_> {
        Summands { convex: &self.convex, concave: &self.concave, convex_divisors: &self.convex_divisors, concave_divisors: &self.concave_divisors }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassConfig {
    pub name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Compute,
    Verify,
    Solve,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub d_max: u32,
    #[serde(default = "default_zeta_order")]
    pub zeta_order: u32,
    #[serde(default = "default_seed")]
    pub weight_seed: u64,
    #[serde(default = "default_mode")]
    pub mode: Mode,
}

fn default_zeta_order() -> u32 {
    4
}

fn default_seed() -> u64 {
    1
}

fn default_mode() -> Mode {
    Mode::Compute
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |field: &str, msg: String| Err(CliError::Config(format!("{field}: {msg}")));
        if self.run.d_max < 1 {
            return bad("run.d_max", "must be at least 1".into());
        }
        if self.run.zeta_order < 1 {
            return bad("run.zeta_order", "must be at least 1".into());
        }
        if MultClass::parse(&self.class.name).is_none() {
            return bad("class.name", format!("unknown class {:?}; expected one, euler or chern_poly", self.class.name));
        }
        let (m, ndiv) = match &self.geometry {
            GeometryConfig::ProjectiveProduct { dims } => {
                if dims.is_empty() || dims.contains(&0) {
                    return bad("geometry.dims", "needs at least one positive dimension".into());
                }
                (dims.len(), dims.iter().map(|n| *n as usize + 1).sum())
            }
            GeometryConfig::Toric { rays, cones } => {
                let n = rays.first().map(|r| r.len()).unwrap_or(0);
                if n == 0 || rays.len() <= n || cones.is_empty() {
                    return bad("geometry.rays", "need more rays than the lattice rank and at least one cone".into());
                }
                (rays.len() - n, rays.len())
            }
        };
        let check = |prefix: &str, s: Summands| -> Result<(), CliError> {
            for (name, vecs, len) in [
                ("convex", s.convex, m),
                ("concave", s.concave, m),
                ("convex_divisors", s.convex_divisors, ndiv),
                ("concave_divisors", s.concave_divisors, ndiv),
            ] {
                for (i, v) in vecs.iter().enumerate() {
                    if v.len() != len {
                        return bad(&format!("{prefix}.{name}[{i}]"), format!("length {} but expected {len}", v.len()));
                    }
                }
            }
            Ok(())
        };
        check("bundle", self.bundle.split())?;
        for (i, r) in self.bundle.resolution.iter().enumerate() {
            if r.sign != 1 && r.sign != -1 {
                return bad(&format!("bundle.resolution[{i}].sign"), "must be 1 or -1".into());
            }
            check(&format!("bundle.resolution[{i}]"), r.split())?;
        }
        Ok(())
    }

    pub fn class(&self) -> MultClass {
        MultClass::parse(&self.class.name).expect("validated")
    }

    pub fn geometry_spec(&self) -> GeometrySpec {
        match &self.geometry {
            GeometryConfig::ProjectiveProduct { dims } => GeometrySpec::ProjectiveProduct { dims: dims.clone() },
            GeometryConfig::Toric { rays, cones } => GeometrySpec::Toric { rays: rays.clone(), cones: cones.clone() },
        }
    }

    pub fn has_resolution(&self) -> bool {
        !self.bundle.resolution.is_empty()
    }

    /// The split bundle without the sign check.
    pub fn bundle_unchecked(&self, g: &Geometry) -> Result<BundleSpec, CliError> {
        self.bundle.split().build(g)
    }

    /// The split bundle, validated against every balloon.
    pub fn bundle(&self, g: &Geometry) -> Result<BundleSpec, CliError> {
        let v = self.bundle_unchecked(g)?;
        v.validate(g)?;
        Ok(v)
    }

    /// The resolution terms; a plain splitting is a single positive term.
    pub fn resolution(&self, g: &Geometry) -> Result<Vec<ResolutionTerm>, CliError> {
        if !self.has_resolution() {
            return Ok(vec![ResolutionTerm { sign: 1, bundle: self.bundle(g)? }]);
        }
        self.bundle
            .resolution
            .iter()
            .map(|r| Ok(ResolutionTerm { sign: r.sign, bundle: r.split().build(g)? }))
            .collect()
    }
}

impl Summands<'_> {
    fn build(&self, g: &Geometry) -> Result<BundleSpec, CliError> {
        let mut convex = Vec::new();
        let mut concave = Vec::new();
        for v in self.convex {
            convex.push(LineBundle::from_h_vector(g, v)?);
        }
        for v in self.convex_divisors {
            convex.push(LineBundle::from_divisors(g, v)?);
        }
        for v in self.concave {
            concave.push(LineBundle::from_h_vector(g, v)?);
        }
        for v in self.concave_divisors {
            concave.push(LineBundle::from_divisors(g, v)?);
        }
        Ok(BundleSpec { convex, concave })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUINTIC: &str = r#"
[geometry]
kind = "projective_product"
dims = [4]

[bundle]
convex = [[5]]

[class]
name = "euler"

[run]
d_max = 3
"#;

    #[test]
    fn quintic_round_trips() {
        let cfg = parse_config(QUINTIC).unwrap();
        assert_eq!(cfg.class(), MultClass::Euler);
        assert_eq!(cfg.run.mode, Mode::Compute);
        assert_eq!(cfg.run.zeta_order, 4);
        let back = toml::to_string(&cfg).unwrap();
        assert_eq!(parse_config(&back).unwrap(), cfg);
    }

    #[test]
    fn summand_length_mismatch_names_field() {
        let text = QUINTIC.replace("[[5]]", "[[5, 1]]");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("bundle.convex[0]"), "{err}");
    }

    #[test]
    fn unknown_key_rejected() {
        let text = QUINTIC.replace("d_max = 3", "d_max = 3\nbogus = 1");
        assert!(matches!(parse_config(&text), Err(CliError::Config(_))));
    }

    #[test]
    fn unbalanced_chern_parses() {
        let text = QUINTIC.replace("\"euler\"", "\"chern_poly\"");
        assert_eq!(parse_config(&text).unwrap().class(), MultClass::ChernPoly);
    }

    #[test]
    fn bad_sign_in_resolution() {
        let text = QUINTIC.replace("convex = [[5]]", "[[bundle.resolution]]\nsign = 2\nconvex = [[5]]");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("bundle.resolution[0].sign"), "{err}");
    }
}
