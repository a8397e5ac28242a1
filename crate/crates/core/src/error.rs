use thiserror::Error;

use crate::interval::Precision;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision {0} bits is outside [{min}, {max}]", min = Precision::MIN_BITS, max = Precision::MAX_BITS)]
    InvalidPrecision(u32),
    #[error("interval endpoints out of order")]
    InvalidInterval,
    #[error("divisor interval contains zero")]
    DivisorContainsZero,
    #[error("square root of an interval with negative lower endpoint")]
    NegativeRadicand,
    #[error("enclosure of the point touches the origin")]
    OriginInEnclosure,
    #[error("invalid spiral index {0} (indices start at 1)")]
    InvalidIndex(u64),
    #[error("invalid window ({m}, {n}): need 1 <= m < n")]
    InvalidWindow { m: u64, n: u64 },
    #[error("invalid bound {0}: need at least two points")]
    InvalidBound(u64),
    #[error("precision schedule must be nonempty and strictly increasing")]
    InvalidSchedule,
    #[error("undecidable at the precision cap of {cap} bits")]
    PrecisionExhausted { cap: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
