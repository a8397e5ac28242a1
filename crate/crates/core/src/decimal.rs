//! Directed decimal rendering of dyadic values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::dyadic::{Dyadic, Rounding};

/// Default number of significant digits for rendered endpoints.
pub const DEFAULT_DIGITS: usize = 30;

pub(crate) fn render(x: &Dyadic, digits: usize, dir: Rounding) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    // round the magnitude away from the requested direction for negatives
    let mag_dir = if negative { dir.flip() } else { dir };
    let mant = x.mantissa().abs();
    let exp = x.exponent();

    // |x| ~ 2^(bits + exp - 1); estimate the decimal exponent from that.
    let log10_est = ((x.bits() as i64 + exp - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let mut scale = digits as i64 - 1 - log10_est;

    let scaled = |s: i64| -> BigInt {
        let mut num = mant.clone();
        let mut den = BigInt::from(1);
        if exp >= 0 {
            num <<= exp as usize;
        } else {
            den <<= (-exp) as usize;
        }
        let ten = BigInt::from(10);
        if s >= 0 {
            num *= num_traits::pow(ten, s as usize);
        } else {
            den *= num_traits::pow(ten, (-s) as usize);
        }
        match mag_dir {
            Rounding::Floor => num.div_floor(&den),
            Rounding::Ceil => -((-num).div_floor(&den)),
        }
    };

    let mut r = scaled(scale);
    while r.to_string().len() > digits {
        scale -= 1;
        r = scaled(scale);
    }
    while r.to_string().len() < digits {
        let next = scaled(scale + 1);
        if next.to_string().len() > digits {
            break;
        }
        scale += 1;
        r = next;
    }

    let body = place_point(&r.to_string(), scale);
    if negative && !r.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// Formats `digits * 10^(-scale)` as a plain decimal string.
fn place_point(digits: &str, scale: i64) -> String {
    let mut s = if scale <= 0 {
        let mut s = digits.to_string();
        s.extend(std::iter::repeat_n('0', (-scale) as usize));
        return s;
    } else {
        let scale = scale as usize;
        if digits.len() > scale {
            let (int, frac) = digits.split_at(digits.len() - scale);
            format!("{int}.{frac}")
        } else {
            let zeros = "0".repeat(scale - digits.len());
            format!("0.{zeros}{digits}")
        }
    };
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}
