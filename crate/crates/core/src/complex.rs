//! Rectangular complex enclosures.

use crate::interval::{iv_add, iv_mul, iv_sqr, iv_sub, Interval, Precision};

/// Box `re × im` enclosing a complex value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn one() -> Self {
        Self::new(Interval::one(), Interval::zero())
    }

    /// `1 + i·t`.
    pub fn one_plus_i(t: Interval) -> Self {
        Self::new(Interval::one(), t)
    }

    /// Multiplication by `i`, exact.
    pub fn mul_i(&self) -> Self {
        Self::new(self.im.neg(), self.re.clone())
    }

    pub fn intersects(&self, other: &ComplexInterval) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn encloses(&self, other: &ComplexInterval) -> bool {
        self.re.encloses(&other.re) && self.im.encloses(&other.im)
    }
}

pub fn cx_add(a: &ComplexInterval, b: &ComplexInterval, p: Precision) -> ComplexInterval {
    ComplexInterval::new(iv_add(&a.re, &b.re, p), iv_add(&a.im, &b.im, p))
}

pub fn cx_mul(a: &ComplexInterval, b: &ComplexInterval, p: Precision) -> ComplexInterval {
    let re = iv_sub(&iv_mul(&a.re, &b.re, p), &iv_mul(&a.im, &b.im, p), p);
    let im = iv_add(&iv_mul(&a.re, &b.im, p), &iv_mul(&a.im, &b.re, p), p);
    ComplexInterval::new(re, im)
}

/// `z · (1 + i·t)` = `(re − t·im) + i·(im + t·re)`.
pub fn cx_mul_one_plus_i(z: &ComplexInterval, t: &Interval, p: Precision) -> ComplexInterval {
    let re = iv_sub(&z.re, &iv_mul(t, &z.im, p), p);
    let im = iv_add(&z.im, &iv_mul(t, &z.re, p), p);
    ComplexInterval::new(re, im)
}

/// Scales both coordinates by a real interval.
pub fn cx_scale(z: &ComplexInterval, s: &Interval, p: Precision) -> ComplexInterval {
    ComplexInterval::new(iv_mul(&z.re, s, p), iv_mul(&z.im, s, p))
}

/// Encloses `re² + im²`.
pub fn cx_norm_sqr(z: &ComplexInterval, p: Precision) -> Interval {
    iv_add(&iv_sqr(&z.re, p), &iv_sqr(&z.im, p), p)
}

pub fn cx_round_out(z: &ComplexInterval, p: Precision) -> ComplexInterval {
    use crate::interval::round_out;
    ComplexInterval::new(round_out(&z.re, p), round_out(&z.im, p))
}
