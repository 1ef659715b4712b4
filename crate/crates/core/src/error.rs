use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {re}+{im}i is not inside the unit disk (|u| = {modulus})")]
    OutsideDisk { re: f64, im: f64, modulus: f64 },

    #[error("evaluation point has modulus {0} > 1")]
    OutsideClosedDisk(f64),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("direction lies on the non-smooth sub-bundle E0; the fundamental tensor is undefined there")]
    NonSmoothDirection,

    #[error("degenerate direction: h = 0")]
    DegenerateDirection,

    #[error("Randers decomposition requires Im(conj(u) h) > 0, got {0}")]
    NotRandersCone(f64),

    #[error("step schedule invalid: {0}")]
    BadSchedule(String),

    #[error("curve invalid: {0}")]
    BadCurve(String),

    #[error("target is not in the saturated set of the base element")]
    NotInOmega,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
