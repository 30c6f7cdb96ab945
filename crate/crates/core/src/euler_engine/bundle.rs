//! Split bundle data and the multiplicative class applied to it.

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::series_core::{fmt_q, q, qz, Q};
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// A line bundle with a chosen equivariant lift: first Chern class
/// `sum gens[i] G_i + cst`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineBundle {
    pub gens: Vec<Q>,
    pub cst: Q,
}

impl LineBundle {
    /// `O(sum_a c_a H_a)`.
    pub fn from_h_vector(g: &Geometry, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != g.m {
            return Err(Error::VariableMismatch(coeffs.len(), g.m));
        }
        let mut gens = vec![qz(); g.ring.ngens()];
        for (a, c) in coeffs.iter().enumerate() {
            for (i, h) in g.h_coeffs[a].iter().enumerate() {
                gens[i] += h * q(*c);
            }
        }
        Ok(LineBundle { gens, cst: qz() })
    }

    /// `O(sum_k c_k D_k)` over the torus-invariant divisors, with the lift
    /// inherited from the divisors.
    pub fn from_divisors(g: &Geometry, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != g.divisors.len() {
            return Err(Error::VariableMismatch(coeffs.len(), g.divisors.len()));
        }
        let mut gens = vec![qz(); g.ring.ngens()];
        let mut cst = qz();
        for (k, c) in coeffs.iter().enumerate() {
            let c = q(*c);
            for (i, h) in g.divisors[k].gen_coeffs.iter().enumerate() {
                gens[i] += h * &c;
            }
            cst += divisor_constant(g, k) * &c;
        }
        Ok(LineBundle { gens, cst })
    }

    /// `<c_1(L), d>`.
    pub fn pairing(&self, g: &Geometry, d: &[u32]) -> i64 {
        let d: Vec<i64> = d.iter().map(|x| *x as i64).collect();
        g.pairing_linear(&self.gens, &d).to_integer().to_i64().expect("pairing fits in i64")
    }

    /// Restriction of the lifted class at fixed point p.
    pub fn value_at(&self, g: &Geometry, p: usize) -> Q {
        g.restrict_linear(&self.gens, p) + &self.cst
    }
}

/// Equivariant constant of divisor k: its restriction minus that of its
/// generator expression (zero for toric divisors).
pub fn divisor_constant(g: &Geometry, k: usize) -> Q {
    let dv = &g.divisors[k];
    &dv.values[0] - g.restrict_linear(&dv.gen_coeffs, 0)
}

/// A concavex split bundle `V = V+ (+) V-`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BundleSpec {
    pub convex: Vec<LineBundle>,
    pub concave: Vec<LineBundle>,
}

impl BundleSpec {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from H-basis coefficient vectors and checks the sign conditions.
    pub fn from_h_vectors(g: &Geometry, convex: &[Vec<i64>], concave: &[Vec<i64>]) -> Result<Self> {
        let v = Self::from_h_vectors_unchecked(g, convex, concave)?;
        v.validate(g)?;
        Ok(v)
    }

    /// Same, without the sign check (used for fault injection).
    pub fn from_h_vectors_unchecked(g: &Geometry, convex: &[Vec<i64>], concave: &[Vec<i64>]) -> Result<Self> {
        Ok(BundleSpec {
            convex: convex.iter().map(|c| LineBundle::from_h_vector(g, c)).collect::<Result<_>>()?,
            concave: concave.iter().map(|c| LineBundle::from_h_vector(g, c)).collect::<Result<_>>()?,
        })
    }

    /// Convex summands must pair nonnegatively and concave summands
    /// negatively with every balloon class.
    pub fn validate(&self, g: &Geometry) -> Result<()> {
        for b in &g.balloons {
            for (i, l) in self.convex.iter().enumerate() {
                if l.pairing(g, &b.degree) < 0 {
                    return Err(Error::BundleSign(format!("convex summand {i} has negative degree on a balloon")));
                }
            }
            for (j, l) in self.concave.iter().enumerate() {
                if l.pairing(g, &b.degree) >= 0 {
                    return Err(Error::BundleSign(format!("concave summand {j} has nonnegative degree on a balloon")));
                }
            }
        }
        Ok(())
    }

    /// Rank of the induced bundle on degree-d maps.
    pub fn induced_rank(&self, g: &Geometry, d: &[u32]) -> i64 {
        let plus: i64 = self.convex.iter().map(|l| l.pairing(g, d) + 1).sum();
        let minus: i64 = self.concave.iter().map(|l| -l.pairing(g, d) - 1).sum();
        plus + minus
    }

    pub fn is_empty(&self) -> bool {
        self.convex.is_empty() && self.concave.is_empty()
    }
}

/// The multiplicative characteristic class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultClass {
    One,
    Euler,
    ChernPoly,
}

impl MultClass {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "one" => Some(MultClass::One),
            "euler" => Some(MultClass::Euler),
            "chern_poly" => Some(MultClass::ChernPoly),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            MultClass::One => "one",
            MultClass::Euler => "euler",
            MultClass::ChernPoly => "chern_poly",
        }
    }

    /// Coefficient of x in every factor.
    pub fn x_coeff(&self) -> Q {
        match self {
            MultClass::ChernPoly => q(1),
            _ => qz(),
        }
    }

    /// b applied to a line with weight w.
    pub fn eval_weight(&self, w: &Q, xval: &Q) -> Q {
        match self {
            MultClass::One => q(1),
            MultClass::Euler => w.clone(),
            MultClass::ChernPoly => w + xval,
        }
    }
}

impl fmt::Display for LineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(fmt_q).collect();
        if self.cst.is_zero() {
            write!(f, "[{}]", parts.join(","))
        } else {
            write!(f, "[{}]+{}", parts.join(","), fmt_q(&self.cst))
        }
    }
}
