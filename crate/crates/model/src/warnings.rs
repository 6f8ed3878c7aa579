use std::fmt;

use serde::{Serialize, Serializer};

/// Non-fatal diagnostics attached to evaluation results. Ordering within a
/// result is fixed so serialized output is reproducible byte for byte.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// The HGP failure-rate fit was evaluated at or above its threshold
    /// gate error; the value grows with patch size there.
    HgpFitExtrapolated { gate_error: f64 },
    /// The surface-code fit was evaluated at or above 70*p_g = 1.
    SurfaceFitExtrapolated { gate_error: f64 },
    /// An accumulated stage rate exceeds 0.1, where first-order error
    /// addition starts to overestimate noticeably.
    StageRateHigh { stage: &'static str, rate: f64 },
    /// A summed failure rate exceeds 1; it is reported untruncated.
    RateExceedsUnity { value: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::HgpFitExtrapolated { gate_error } => write!(
                f,
                "hgp fit extrapolated: gate error {gate_error} is at or above threshold 0.006"
            ),
            Warning::SurfaceFitExtrapolated { gate_error } => write!(
                f,
                "surface fit extrapolated: gate error {gate_error} is at or above threshold 1/70"
            ),
            Warning::StageRateHigh { stage, rate } => write!(
                f,
                "stage rate high: {stage} = {rate} exceeds 0.1; additive propagation degrades"
            ),
            Warning::RateExceedsUnity { value } => {
                write!(f, "summed rate {value} exceeds 1; reported untruncated")
            }
        }
    }
}

impl Serialize for Warning {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
