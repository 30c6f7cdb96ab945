//! Exact computation of genus-0 intersection numbers for concavex bundles on
//! products of projective spaces and smooth toric manifolds, through
//! hypergeometric Euler series and the mirror transformation.

pub mod error;
pub mod euler_engine;
pub mod geometry;
pub mod linalg;
pub mod mirror_transform;
pub mod reconstruction;
pub mod series_core;

pub use error::{Error, Result};
pub use euler_engine::{BundleSpec, LineBundle, MultClass};
pub use geometry::{build_geometry, Balloon, CohClass, CohRing, FixedPoint, Geometry, GeometrySpec};
pub use mirror_transform::InvariantTable;
pub use reconstruction::{LinkingValueTable, ResolutionTerm};
pub use series_core::{fmt_q, q, qf, Coeff, Degree, NovikovSeries, Poly, RatFn, XPoly, Q};
