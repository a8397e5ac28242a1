//! Exact binary rationals `mantissa * 2^exponent`.
//!
//! Ring operations (`+`, `-`, `*`) are exact. The only inexact operations are
//! [`Dyadic::round`], [`Dyadic::div`] and [`Dyadic::sqrt`], which take an
//! explicit [`Rounding`] direction so callers can round outward.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rounding {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
}

impl Rounding {
    pub fn flip(self) -> Self {
        match self {
            Rounding::Floor => Rounding::Ceil,
            Rounding::Ceil => Rounding::Floor,
        }
    }
}

/// A binary rational in canonical form: the mantissa is odd, or the value is
/// zero and the exponent is zero. Canonical form makes derived equality and
/// hashing agree with numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mantissa, exponent }
        } else {
            Dyadic {
                mantissa: mantissa >> tz,
                exponent: exponent + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn from_u64(v: u64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::new(v, 0)
    }

    /// Exact conversion of a finite double. Returns `None` for NaN and infinities.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Self::zero());
        }
        let bits = v.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let m = BigInt::from(m);
        Some(Self::new(if negative { -m } else { m }, e))
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.sign() == Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.sign() == Sign::Plus
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Bit length of the mantissa magnitude (0 for zero).
    pub fn bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// Position of the most significant bit: `|x|` lies in `[2^(m-1), 2^m)`
    /// where `m` is the returned value. Zero maps to `i64::MIN`.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.bits() as i64 + self.exponent
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Rounds to at most `bits` significant mantissa bits in direction `dir`.
    pub fn round(&self, bits: u32, dir: Rounding) -> Self {
        let len = self.bits();
        if len <= bits as u64 {
            return self.clone();
        }
        let shift = len - bits as u64;
        Self::new(
            shift_round(&self.mantissa, shift, dir),
            self.exponent + shift as i64,
        )
    }

    /// Quotient rounded to `bits` significant bits in direction `dir`.
    ///
    /// Panics if `other` is zero.
    pub fn div(&self, other: &Dyadic, bits: u32, dir: Rounding) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let extra = bits as i64 + 2 + other.bits() as i64 - self.bits() as i64;
        let shift = extra.max(0) as usize;
        let numerator = &self.mantissa << shift;
        let q = match dir {
            Rounding::Floor => numerator.div_floor(&other.mantissa),
            Rounding::Ceil => -((-numerator).div_floor(&other.mantissa)),
        };
        Self::new(q, self.exponent - other.exponent - shift as i64).round(bits, dir)
    }

    /// Square root rounded to `bits` significant bits in direction `dir`.
    ///
    /// Panics if `self` is negative.
    pub fn sqrt(&self, bits: u32, dir: Rounding) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        // Scale to an even exponent with at least 2*bits + 4 integer bits, so
        // the integer square root carries bits + 2 significant bits.
        let target = 2 * bits as i64 + 4;
        let mut scaled_exp = self.exponent - (target - self.bits() as i64).max(0);
        if scaled_exp.rem_euclid(2) != 0 {
            scaled_exp -= 1;
        }
        let n = &self.mantissa << (self.exponent - scaled_exp) as usize;
        let r = n.sqrt();
        let root = match dir {
            Rounding::Floor => r,
            Rounding::Ceil => {
                if &r * &r == n {
                    r
                } else {
                    r + 1
                }
            }
        };
        Self::new(root, scaled_exp / 2).round(bits, dir)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as usize
        } else {
            shift_round(&self.mantissa, (-self.exponent) as u64, Rounding::Floor)
        }
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as usize
        } else {
            shift_round(&self.mantissa, (-self.exponent) as u64, Rounding::Ceil)
        }
    }

    /// Nearest double (approximate; used only for display and plotting).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = self.bits();
        let (m, e) = if len > 64 {
            let shift = len - 64;
            (&self.mantissa >> shift, self.exponent + shift as i64)
        } else {
            (self.mantissa.clone(), self.exponent)
        };
        let m = m.to_f64().unwrap_or(f64::NAN);
        let e = e.clamp(-2200, 2200) as i32;
        // Split the scaling so subnormal and huge intermediates do not overflow.
        let half = e / 2;
        m * 2f64.powi(half) * 2f64.powi(e - half)
    }

    /// Decimal rendering with `digits` significant digits, rounded in
    /// direction `dir`. Trailing fractional zeros are trimmed.
    pub fn to_decimal(&self, digits: usize, dir: Rounding) -> String {
        crate::decimal::render(self, digits.max(1), dir)
    }
}

fn shift_round(m: &BigInt, shift: u64, dir: Rounding) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let exact = m.trailing_zeros().is_none_or(|tz| tz >= shift);
    let magnitude = m.magnitude() >> shift;
    let truncated = if m.is_negative() {
        -BigInt::from(magnitude)
    } else {
        BigInt::from(magnitude)
    };
    if exact {
        return truncated;
    }
    // truncation rounds toward zero
    match (dir, m.is_negative()) {
        (Rounding::Floor, true) => truncated - 1,
        (Rounding::Ceil, false) => truncated + 1,
        _ => truncated,
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.cmp(&b);
        }
        if a == 0 {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes first to avoid large shifts
        let (ma, mb) = (self.magnitude(), other.magnitude());
        if ma != mb {
            let ord = ma.cmp(&mb);
            return if a > 0 { ord } else { ord.reverse() };
        }
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &rhs.mantissa << (rhs.exponent - e) as usize;
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        // product of odd mantissas is odd: already canonical
        Dyadic {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        -&self
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}*2^{}", self.mantissa, self.exponent)
        }
    }
}
