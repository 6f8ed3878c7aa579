use thiserror::Error;

/// Errors produced by model evaluation and solving.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// A quantity that must be strictly positive was zero or negative.
    #[error("{name} must be strictly positive (got {value})")]
    NonPositive { name: &'static str, value: f64 },

    /// A quantity fell outside its admissible range.
    #[error("{name} must be in {range} (got {value})")]
    OutOfRange {
        name: &'static str,
        range: &'static str,
        value: f64,
    },

    /// Anything else that makes an input unusable (NaN, inconsistent
    /// combination of fields, degenerate profile, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(ModelError::NonPositive { name, value });
    }
    Ok(())
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(ModelError::OutOfRange {
            name,
            range: "[0, inf)",
            value,
        });
    }
    Ok(())
}

pub(crate) fn ensure_probability(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 || value >= 1.0 {
        return Err(ModelError::OutOfRange {
            name,
            range: "(0, 1)",
            value,
        });
    }
    Ok(())
}
