use thiserror::Error;

/// Failures reported by the evaluators and verifiers.
///
/// Variants split into two families: malformed input (wrong lengths,
/// out-of-range indices, unparsable text) and mathematical degeneracy
/// (a Pochhammer denominator that vanishes for the given parameters).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("k = {k} exceeds n = {n}")]
    IndexExceedsDegree { n: usize, k: usize },

    #[error("parts sum to {sum}, expected {n}")]
    PartsSumMismatch { n: usize, sum: usize },

    #[error("number of parts must be at least {min}, got {got}")]
    TooFewParts { min: usize, got: usize },

    #[error("length mismatch: {left} has {left_len} entries, {right} has {right_len}")]
    LengthMismatch {
        left: &'static str,
        left_len: usize,
        right: &'static str,
        right_len: usize,
    },

    #[error("pivot {pivot} out of range 1..={len}")]
    PivotOutOfRange { pivot: usize, len: usize },

    #[error("weight at pivot {pivot} is zero")]
    ZeroPivotWeight { pivot: usize },

    #[error("invalid rational {text:?}: {reason}")]
    ParseRational { text: String, reason: &'static str },

    #[error("denominator parameter degenerate: (c)_k vanishes at k = {k}")]
    DegenerateDenominator { k: usize },

    #[error("denominator parameter {c} within {tolerance:e} of degenerate integer {nearest}")]
    NearDegenerateDenominator {
        c: f64,
        nearest: i64,
        tolerance: f64,
    },

    #[error("transformation undefined for these parameters")]
    TransformUndefined,

    #[error("intermediate form undefined: (1 - a_pivot - n)_s vanishes at s = {s}")]
    IntermediateUndefined { s: usize },

    #[error("closed form undefined: (sum of a_j)_s vanishes at s = {s}")]
    ClosedFormUndefined { s: usize },

    #[error("right-hand side unavailable: z = 0")]
    ZeroScale,
}

impl Error {
    /// True for errors caused by vanishing Pochhammer denominators rather
    /// than malformed input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::DegenerateDenominator { .. }
                | Error::NearDegenerateDenominator { .. }
                | Error::TransformUndefined
                | Error::IntermediateUndefined { .. }
                | Error::ClosedFormUndefined { .. }
                | Error::ZeroScale
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
