#![allow(dead_code)]

use num_bigint::BigInt;
use theodorus_core::{ComplexInterval, Dyadic, Interval};

/// Frozen 50-digit values from an mpmath (60 dps) session.
pub mod oracle {
    pub const SQRT2: &str = "1.4142135623730950488016887242096980785696718753769";
    pub const ATAN_INV_SQRT2: &str = "0.61547970867038734106746458912399368785517000467755";
    pub const PI: &str = "3.1415926535897932384626433832795028841971693993751";
    pub const QUARTER_PI: &str = "0.78539816339744830961566084581987572104929234984378";
    pub const Z4_RE: &str = "-0.69270534084003630527620715505778839359342893573471";
    pub const Z4_IM: &str = "1.8762087599123102725437791301558245962714464421825";
    pub const W1_7_RE: &str = "-2.6417995393402450893688005161656919720567237295581";
    pub const W1_7_IM: &str = "-0.14455169989200693727416823318071429344239544948879";
    pub const THETA_7: &str = "3.1962552786060864214647982684561197112168090852014";
    pub const MARGIN_1_7: &str = "0.054662625016293183002154885176616827019639685826277";
    pub const THETA_17: &str = "6.1287310009151568976430168244934812045114461869515";
    pub const THETA_18: &str = "6.366672125745365163812514894473891705871252500337";
    pub const THETA_2048: &str = "88.355567753117769757016058880502106623744468733813";
    pub const MARGIN_31_51: &str = "0.00083518188749091084165555434080958984208492926130824";
}

/// Exact rational `num / 10^scale` from a plain decimal string.
pub fn parse_decimal(s: &str) -> (BigInt, u32) {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{int}{frac}");
    (digits.parse().expect("decimal digits"), frac.len() as u32)
}

/// Sign of `d - num/10^scale`.
pub fn cmp_decimal(d: &Dyadic, num: &BigInt, scale: u32) -> std::cmp::Ordering {
    let ten_k = num_traits::pow(BigInt::from(10), scale as usize);
    let (lhs, rhs) = if d.exponent() >= 0 {
        (
            (d.mantissa() << d.exponent() as usize) * &ten_k,
            num.clone(),
        )
    } else {
        (d.mantissa() * &ten_k, num << (-d.exponent()) as usize)
    };
    lhs.cmp(&rhs)
}

/// True when `iv` meets the oracle value, allowing for the oracle's own
/// truncation (one unit in its last printed place).
pub fn meets(iv: &Interval, value: &str) -> bool {
    let (num, scale) = parse_decimal(value);
    let up = &num + 1;
    let down = &num - 1;
    cmp_decimal(iv.lo(), &up, scale).is_le() && cmp_decimal(iv.hi(), &down, scale).is_ge()
}

pub fn meets_box(z: &ComplexInterval, re: &str, im: &str) -> bool {
    meets(&z.re, re) && meets(&z.im, im)
}
