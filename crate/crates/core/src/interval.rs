//! Closed intervals with dyadic endpoints and outward rounding.

use std::fmt;

use crate::dyadic::{Dyadic, Rounding};
use crate::error::{Error, Result};

/// Working mantissa width for outward rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 16;
    pub const MAX_BITS: u32 = 8192;

    pub fn new(bits: u32) -> Result<Self> {
        if (Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            Ok(Precision(bits))
        } else {
            Err(Error::InvalidPrecision(bits))
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Internal working precisions (precision plus guard bits) may exceed
    /// the public cap.
    pub(crate) fn with_guard(self, guard: u32) -> Self {
        Precision(self.0 + guard)
    }

    /// The default escalation schedule: 64, 128, ..., 8192 bits.
    pub fn default_schedule() -> Vec<Precision> {
        (6..=13).map(|k| Precision(1 << k)).collect()
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::InvalidInterval)
        }
    }

    pub(crate) fn ordered(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::point(Dyadic::from_i64(v))
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::point(Dyadic::one())
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn into_bounds(self) -> (Dyadic, Dyadic) {
        (self.lo, self.hi)
    }

    /// `hi - lo`, exact.
    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    /// Exact midpoint.
    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `other ⊆ self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Every point is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Every point is strictly negative.
    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Exact negation.
    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// Exact range of `|x|`.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = (-&self.lo).max(self.hi.clone());
            Interval {
                lo: Dyadic::zero(),
                hi: m,
            }
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    /// Pointwise minimum: encloses `min(x, y)` for `x ∈ self`, `y ∈ other`.
    pub fn min(&self, other: &Interval) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Decimal rendering `[lo, hi]` with `lo` rounded down and `hi` up.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_decimal(digits, Rounding::Floor),
            self.hi.to_decimal(digits, Rounding::Ceil),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal(crate::decimal::DEFAULT_DIGITS);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Rounds `lo` toward −∞ and `hi` toward +∞ to at most `p` mantissa bits.
pub fn round_out(a: &Interval, p: Precision) -> Interval {
    Interval {
        lo: a.lo.round(p.bits(), Rounding::Floor),
        hi: a.hi.round(p.bits(), Rounding::Ceil),
    }
}

pub fn iv_add(a: &Interval, b: &Interval, p: Precision) -> Interval {
    round_out(
        &Interval {
            lo: &a.lo + &b.lo,
            hi: &a.hi + &b.hi,
        },
        p,
    )
}

/// `a - b`, computed as `a + (-b)`.
pub fn iv_sub(a: &Interval, b: &Interval, p: Precision) -> Interval {
    iv_add(a, &b.neg(), p)
}

pub fn iv_mul(a: &Interval, b: &Interval, p: Precision) -> Interval {
    let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let lo = products.iter().min().cloned().unwrap_or_default();
    let hi = products.iter().max().cloned().unwrap_or_default();
    round_out(&Interval { lo, hi }, p)
}

/// Encloses `{x² : x ∈ a}`; tighter than `iv_mul(a, a)` when `a` straddles zero.
pub fn iv_sqr(a: &Interval, p: Precision) -> Interval {
    let m = a.abs();
    round_out(
        &Interval {
            lo: &m.lo * &m.lo,
            hi: &m.hi * &m.hi,
        },
        p,
    )
}

pub fn iv_div(a: &Interval, b: &Interval, p: Precision) -> Result<Interval> {
    if b.contains_zero() {
        return Err(Error::DivisorContainsZero);
    }
    let bits = p.bits();
    // x / y is monotone in each argument on the box, so the extremes sit at
    // corners. Positive operands (the common case) need only two quotients.
    if !a.lo.is_negative() && b.lo.is_positive() {
        return Ok(Interval {
            lo: a.lo.div(&b.hi, bits, Rounding::Floor),
            hi: a.hi.div(&b.lo, bits, Rounding::Ceil),
        });
    }
    let corners = [
        (&a.lo, &b.lo),
        (&a.lo, &b.hi),
        (&a.hi, &b.lo),
        (&a.hi, &b.hi),
    ];
    let lo = corners
        .iter()
        .map(|(x, y)| x.div(y, bits, Rounding::Floor))
        .min()
        .unwrap_or_default();
    let hi = corners
        .iter()
        .map(|(x, y)| x.div(y, bits, Rounding::Ceil))
        .max()
        .unwrap_or_default();
    Ok(Interval { lo, hi })
}
