//! Exact arithmetic kernel: rationals, univariate polynomials and rational
//! functions in alpha, Laurent polynomials in x, and truncated Novikov series.

pub mod alpha;
pub mod coeff;
pub mod novikov;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod xpoly;

pub use alpha::AlphaValue;
pub use coeff::Coeff;
pub use novikov::{degree_box, is_zero_degree, sub_degrees, Degree, NovikovSeries};
pub use poly::Poly;
pub use ratfn::RatFn;
pub use rational::{factorial, fmt_q, parse_q, q, q_abs, qf, qo, qpow, qz, Q};
pub use xpoly::XPoly;

use crate::error::Result;

/// Direction selector for [`exp_log`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpLog {
    Exp,
    Log,
}

pub fn mul_truncated<C: Coeff>(a: &NovikovSeries<C>, b: &NovikovSeries<C>) -> Result<NovikovSeries<C>> {
    a.mul_truncated(b)
}

pub fn invert_unit<C: Coeff>(a: &NovikovSeries<C>) -> Result<NovikovSeries<C>> {
    a.invert_unit()
}

pub fn exp_log<C: Coeff>(a: &NovikovSeries<C>, dir: ExpLog) -> Result<NovikovSeries<C>> {
    match dir {
        ExpLog::Exp => a.exp(),
        ExpLog::Log => a.log(),
    }
}

pub fn substitute_novikov<C: Coeff>(a: &NovikovSeries<C>, images: &[NovikovSeries<Q>]) -> Result<NovikovSeries<C>> {
    a.substitute(images)
}

pub fn residue_at(f: &RatFn, a0: &Q) -> Result<Q> {
    f.residue_at(a0)
}
