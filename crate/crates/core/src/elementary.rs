//! Certified square root, arctangent and π.
//!
//! Kernels evaluate at a working precision of `p + GUARD_BITS` and round the
//! final enclosure out to `p`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::dyadic::{Dyadic, Rounding};
use crate::error::{Error, Result};
use crate::interval::{iv_add, iv_div, iv_mul, iv_sqr, iv_sub, round_out, Interval, Precision};

const GUARD_BITS: u32 = 40;

pub fn iv_sqrt(a: &Interval, p: Precision) -> Result<Interval> {
    if a.lo().is_negative() {
        return Err(Error::NegativeRadicand);
    }
    Ok(Interval::ordered(
        a.lo().sqrt(p.bits(), Rounding::Floor),
        a.hi().sqrt(p.bits(), Rounding::Ceil),
    ))
}

/// Encloses `arctan(x)` for every `x ∈ a`.
///
/// arctan is increasing, so the lower endpoint comes from an enclosure at
/// `a.lo` and the upper one from an enclosure at `a.hi`.
pub fn iv_atan(a: &Interval, p: Precision) -> Interval {
    let wp = p.with_guard(GUARD_BITS);
    if a.is_point() {
        return round_out(&atan_point(a.lo(), wp), p);
    }
    let lo = atan_point(a.lo(), wp).into_bounds().0;
    let hi = atan_point(a.hi(), wp).into_bounds().1;
    round_out(&Interval::ordered(lo, hi), p)
}

/// Encloses π with width at most `2^(4 - p)`.
///
/// Machin's identity `π = 16·arctan(1/5) − 4·arctan(1/239)`, evaluated
/// through the certified arctangent. Results are memoised per precision.
pub fn iv_pi(p: Precision) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(pi) = cache.lock().expect("pi cache poisoned").get(&p.bits()) {
        return pi.clone();
    }
    let pi = machin(p);
    cache
        .lock()
        .expect("pi cache poisoned")
        .entry(p.bits())
        .or_insert(pi)
        .clone()
}

fn machin(p: Precision) -> Interval {
    let wp = p.with_guard(GUARD_BITS);
    let one = Interval::one();
    let fifth = iv_div(&one, &Interval::from_i64(5), wp).expect("nonzero divisor");
    let inv239 = iv_div(&one, &Interval::from_i64(239), wp).expect("nonzero divisor");
    let a = iv_atan(&fifth, wp).mul_pow2(4);
    let b = iv_atan(&inv239, wp).mul_pow2(2);
    round_out(&iv_sub(&a, &b, wp), p)
}

fn atan_point(x: &Dyadic, wp: Precision) -> Interval {
    if x.is_zero() {
        return Interval::zero();
    }
    if x.is_negative() {
        return atan_point(&-x, wp).neg();
    }
    let one = Dyadic::one();
    if x > &one {
        // arctan(x) = π/2 − arctan(1/x); 1/x rounds to at most 1
        let inv =
            iv_div(&Interval::one(), &Interval::point(x.clone()), wp).expect("positive divisor");
        let lo = atan_unit(&Interval::point(inv.lo().clone()), wp)
            .into_bounds()
            .0;
        let hi = atan_unit(&Interval::point(inv.hi().clone()), wp)
            .into_bounds()
            .1;
        let half_pi = iv_pi(wp).mul_pow2(-1);
        return iv_sub(&half_pi, &Interval::ordered(lo, hi), wp);
    }
    atan_unit(&Interval::point(x.clone()), wp)
}

/// arctan on `y ⊆ [0, 1]`: two angle halvings, then the Maclaurin series with
/// the alternating-series tail added outward.
fn atan_unit(y: &Interval, wp: Precision) -> Interval {
    let one = Interval::one();
    let mut y = y.clone();
    for _ in 0..2 {
        // tan(θ/2) = t / (1 + √(1 + t²))
        let root = iv_sqrt(&iv_add(&one, &iv_sqr(&y, wp), wp), wp).expect("radicand >= 1");
        y = iv_div(&y, &iv_add(&one, &root, wp), wp).expect("divisor >= 2");
    }
    series(&y, wp).mul_pow2(2)
}

fn series(y: &Interval, wp: Precision) -> Interval {
    let y2 = iv_sqr(y, wp);
    let tol = Dyadic::pow2(-(wp.bits() as i64) - 4);
    let mut power = y.clone();
    let mut sum = Interval::zero();
    let mut k: i64 = 0;
    loop {
        let denom = Interval::from_i64(2 * k + 1);
        let term = iv_div(&power, &denom, wp).expect("odd denominator");
        if term.hi() < &tol {
            // |tail| ≤ first omitted term
            let bound = term.hi().clone();
            let tail = Interval::ordered(-&bound, bound);
            return iv_add(&sum, &tail, wp);
        }
        sum = if k % 2 == 0 {
            iv_add(&sum, &term, wp)
        } else {
            iv_sub(&sum, &term, wp)
        };
        power = iv_mul(&power, &y2, wp);
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn dec(s: &str) -> Dyadic {
        // test helper: parse a short decimal into an exact-enough dyadic
        let v: f64 = s.parse().unwrap();
        Dyadic::from_f64(v).unwrap()
    }

    #[test]
    fn sqrt_examples() {
        let r = iv_sqrt(&Interval::from_i64(4), p(64)).unwrap();
        assert!(r.contains(&Dyadic::from_i64(2)));
        assert!(r.width() <= Dyadic::pow2(1 - 64));
        assert_eq!(iv_sqrt(&Interval::zero(), p(64)).unwrap(), Interval::zero());
        let neg = Interval::new(Dyadic::from_i64(-1), Dyadic::one()).unwrap();
        assert_eq!(iv_sqrt(&neg, p(64)), Err(Error::NegativeRadicand));
    }

    #[test]
    fn atan_examples() {
        assert_eq!(iv_atan(&Interval::zero(), p(64)), Interval::zero());
        let q = iv_atan(&Interval::one(), p(64));
        let pi = iv_pi(p(64));
        assert!(q.intersects(&pi.mul_pow2(-2)));
        assert!(q.width() <= Dyadic::pow2(-60));
    }

    #[test]
    fn atan_odd_symmetry() {
        let x = Interval::point(dec("0.37"));
        assert_eq!(iv_atan(&x.neg(), p(80)), iv_atan(&x, p(80)).neg());
    }

    #[test]
    fn atan_large_argument_uses_reflection() {
        // arctan(1000) = π/2 − arctan(1/1000) ≈ 1.5697963271282298
        let r = iv_atan(&Interval::from_i64(1000), p(64));
        assert!(r.lo().to_f64() <= 1.5697963271282298 + 1e-15);
        assert!(r.hi().to_f64() >= 1.5697963271282298 - 1e-15);
        assert!(r.width() < Dyadic::pow2(-58));
    }

    #[test]
    fn pi_width() {
        for bits in [16, 64, 128, 256] {
            let pi = iv_pi(p(bits));
            assert!(pi.width() <= Dyadic::pow2(4 - bits as i64), "p={bits}");
        }
    }
}
