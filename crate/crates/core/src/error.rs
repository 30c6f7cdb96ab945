//! Error catalog. Every variant names the mathematical condition that failed.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable-count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("non-invertible constant term")]
    NonInvertible,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pole of order {order} at alpha = {at}")]
    PoleOrder { order: u32, at: String },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("weight genericity check failed after {0} draws")]
    Genericity(u32),
    #[error("geometry kind not supported here: {0}")]
    Unsupported(String),
    #[error("Omega division is not exact: {0}")]
    OmegaDivision(String),
    #[error("Chern class bound c1(V+) - c1(V-) <= c1(X) violated: {0}")]
    ChernBound(String),
    #[error("asymptotic shape violated: {0}")]
    AsymptoticShape(String),
    #[error("alpha-degree bound deg A_d <= -2 violated at d = {0}")]
    DegreeBound(String),
    #[error("dimension balance rk V_d = <c1(X),d> + dim X - 3 fails at d = {0}")]
    DimensionBalance(String),
    #[error("shift s = rk V_d - expected dimension is not a constant non-negative integer: {0}")]
    ShiftNotConstant(String),
    #[error("extraction residual nonzero at d = {0}")]
    ExtractionResidual(String),
    #[error("Omega vanishes at fixed point {0}; choose another weight seed")]
    OmegaVanishes(usize),
    #[error("zero tangent weight at fixed point {0}")]
    ZeroWeight(usize),
    #[error("zero-weight cancellation unbalanced: {0} in numerator vs {1} in denominator")]
    ZeroWeightImbalance(usize, usize),
    #[error("degree {0} exceeds d_max")]
    DegreeTooLarge(String),
    #[error("signed cancellation leaves a negative multiplicity for weight {0}")]
    NegativeMultiplicity(String),
    #[error("linear system inconsistent at d = {0}")]
    Inconsistent(String),
    #[error("linear system underdetermined at d = {0}: {1}-dimensional solution space")]
    Underdetermined(String, usize),
    #[error("bundle sign condition violated: {0}")]
    BundleSign(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable catalog name used in reports and CLI output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::VariableMismatch(..) => "variable_mismatch",
            Error::NonInvertible => "non_invertible",
            Error::Precondition(_) => "precondition",
            Error::PoleOrder { .. } => "pole_order",
            Error::InvalidFan(_) => "invalid_fan",
            Error::Genericity(_) => "weight_genericity",
            Error::Unsupported(_) => "unsupported_geometry",
            Error::OmegaDivision(_) => "omega_division",
            Error::ChernBound(_) => "chern_bound",
            Error::AsymptoticShape(_) => "asymptotic_shape",
            Error::DegreeBound(_) => "degree_bound",
            Error::DimensionBalance(_) => "dimension_balance",
            Error::ShiftNotConstant(_) => "shift_not_constant",
            Error::ExtractionResidual(_) => "extraction_residual",
            Error::OmegaVanishes(_) => "omega_vanishes",
            Error::ZeroWeight(_) => "zero_weight",
            Error::ZeroWeightImbalance(..) => "zero_weight_imbalance",
            Error::DegreeTooLarge(_) => "degree_too_large",
            Error::NegativeMultiplicity(_) => "negative_multiplicity",
            Error::Inconsistent(_) => "inconsistent_system",
            Error::Underdetermined(..) => "underdetermined_system",
            Error::BundleSign(_) => "bundle_sign",
        }
    }

    /// True for failures of a mathematical check (as opposed to bad input).
    pub fn is_math_failure(&self) -> bool {
        !matches!(
            self,
            Error::VariableMismatch(..)
                | Error::Precondition(_)
                | Error::InvalidFan(_)
                | Error::Unsupported(_)
                | Error::BundleSign(_)
                | Error::DegreeTooLarge(_)
        )
    }
}
