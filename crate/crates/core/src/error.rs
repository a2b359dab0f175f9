use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {0} is not inside the open unit disk")]
    OutsideDisk(Complex64),

    #[error("objective is not finite at {at}: {value}")]
    NonFinite { at: Complex64, value: f64 },

    #[error("map is not sense-preserving at {at} (J_f = {jacobian:e})")]
    NotSensePreserving { at: Complex64, jacobian: f64 },

    #[error("analytic part has a vanishing derivative at {at} (|h'| = {modulus:e})")]
    VanishingDerivative { at: Complex64, modulus: f64 },

    #[error("quotient is undefined for coincident points")]
    CoincidentPoints,

    #[error("{name} = {value} is outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("generator gave up after {0} attempts")]
    GenerationFailed(usize),

    #[error("malformed map specification: {0}")]
    MapSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            domain,
        }
    }
}
