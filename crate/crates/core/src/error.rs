use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point ({x}, {y}) lies outside the {domain} domain")]
    Domain { domain: &'static str, x: f64, y: f64 },

    #[error("curve is not regular at t = {t} (speed {speed:e})")]
    Regularity { t: f64, speed: f64 },

    #[error("geodesic left the domain after arclength {at}")]
    Escape { at: f64 },

    #[error("sign changes near t = {t} are closer than two grid steps; resample with more than {samples} points")]
    Resolution { t: f64, samples: usize },

    #[error("curve passes within {distance:e} of the pole")]
    Pole { distance: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("no acceptable sample after {tries} tries")]
    Generation { tries: usize },

    #[error("integration did not converge: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

pub(crate) fn param_error(msg: impl Into<String>) -> GeomError {
    GeomError::Parameter(msg.into())
}
