use thiserror::Error;

use crate::half::HalfInt;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid spin: 2S = {two_s} (need 2S >= {min})")]
    InvalidSpin { two_s: u32, min: u32 },

    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "sector Sz_t = {0} is one-dimensional; coefficients exist only for two-dimensional sectors"
    )]
    SectorDimension(HalfInt),

    #[error("sector Sz_t = {s_z_t} does not exist for 2S = {two_s}")]
    SectorRange { s_z_t: HalfInt, two_s: u32 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("temperature must be positive, got {0}")]
    Temperature(f64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("singular denominator in closed-form negativity (Delta = 0 with 1 - 2D/J >= 0)")]
    SingularDenominator,

    #[error("negativity {last_negativity:e} still above threshold level at T_max = {t_max}")]
    UnresolvedThreshold {
        t_max: f64,
        last_negativity: f64,
        /// Sampled (T, negativity) pairs up to T_max.
        profile: Vec<(f64, f64)>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
