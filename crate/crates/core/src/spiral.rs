//! Outer points of the spiral of Theodorus and their cumulative angles.
//!
//! Two independent routes produce `z_n`: iterating the construction step
//! `z ↦ z + i·z/|z|` from `z_1 = 1`, and the closed product
//! `z_n = ∏_{k=1}^{n-1} (1 + i/√k)`. The argument of each factor is
//! `arctan(1/√k)`, so `θ(n) = Σ_{k<n} arctan(1/√k)` is the cumulative angle
//! of `z_n`; it is never reduced modulo 2π.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::complex::{cx_mul_one_plus_i, cx_norm_sqr, cx_round_out, ComplexInterval};
use crate::dyadic::Dyadic;
use crate::elementary::{iv_atan, iv_pi, iv_sqrt};
use crate::error::{Error, Result};
use crate::interval::{iv_add, iv_div, iv_mul, round_out, Interval, Precision};

/// Guard bits for the angle prefix sums.
const PREFIX_GUARD: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiralPoint {
    pub index: u64,
    pub z: ComplexInterval,
    /// Cumulative angle θ(n) in radians.
    pub angle: Interval,
}

/// Guard bits for a product of `n` box factors `(1 + i/√k)`.
///
/// Each box multiplication inflates the relative width by at most
/// `1 + 1/√k`, so `n` factors cost about `log2(e)·2√n ≈ 2.9√n` bits.
pub(crate) fn product_guard(n: u64) -> u32 {
    64 + (3.0 * (n as f64).sqrt()).ceil() as u32
}

/// Guard bits for `n` recurrence steps. Recomputing `1/|z|` from the box
/// roughly doubles the per-step inflation of the product route.
pub(crate) fn recurrence_guard(n: u64) -> u32 {
    64 + (6.0 * (n as f64).sqrt()).ceil() as u32
}

/// Encloses `1/√k`.
pub(crate) fn inv_sqrt(k: u64, p: Precision) -> Interval {
    let root = iv_sqrt(&Interval::point(Dyadic::from_u64(k)), p).expect("k >= 1");
    iv_div(&Interval::one(), &root, p).expect("k >= 1")
}

/// Encloses `|z|² = re² + im²`.
pub fn modulus_sq(z: &ComplexInterval, p: Precision) -> Interval {
    cx_norm_sqr(z, p)
}

/// One construction step: `z + i·z/|z|`, the outer vertex of the unit-leg
/// right triangle erected on the hypotenuse ending at `z`.
pub fn next_point(z: &ComplexInterval, p: Precision) -> Result<ComplexInterval> {
    let msq = modulus_sq(z, p);
    if !msq.is_positive() {
        return Err(Error::OriginInEnclosure);
    }
    let modulus = iv_sqrt(&msq, p)?;
    let inv = iv_div(&Interval::one(), &modulus, p)?;
    Ok(cx_mul_one_plus_i(z, &inv, p))
}

/// Enclosures of `z_1, ..., z_max_n` obtained by iterating [`next_point`]
/// from `z_1 = 1`. The walk runs with guard bits sized for `max_n` steps and
/// each yielded box is rounded out to `p`.
pub fn recurrence_points(max_n: u64, p: Precision) -> Result<Vec<ComplexInterval>> {
    if max_n < 1 {
        return Err(Error::InvalidIndex(max_n));
    }
    let wp = p.with_guard(recurrence_guard(max_n));
    let mut out = Vec::with_capacity(max_n as usize);
    let mut z = ComplexInterval::one();
    out.push(z.clone());
    for _ in 1..max_n {
        z = next_point(&z, wp)?;
        out.push(cx_round_out(&z, p));
    }
    Ok(out)
}

/// `z_n` from the closed product, accumulated `k = 1, 2, ..., n-1`.
pub fn point_by_product(n: u64, p: Precision) -> Result<SpiralPoint> {
    if n < 1 {
        return Err(Error::InvalidIndex(n));
    }
    let wp = p.with_guard(product_guard(n));
    let mut z = ComplexInterval::one();
    for k in 1..n {
        z = cx_mul_one_plus_i(&z, &inv_sqrt(k, wp), wp);
    }
    Ok(SpiralPoint {
        index: n,
        z: cx_round_out(&z, p),
        angle: angle_prefix(n, p)?,
    })
}

/// Points `1..=max_n` from one left-to-right product sweep. The guard is
/// sized for `max_n`, so early points may be tighter than the ones a single
/// [`point_by_product`] call returns.
pub fn points_by_product(max_n: u64, p: Precision) -> Result<Vec<SpiralPoint>> {
    if max_n < 1 {
        return Err(Error::InvalidIndex(max_n));
    }
    let wp = p.with_guard(product_guard(max_n));
    let table = AnglePrefixTable::for_precision(p);
    table.extend_to(max_n);
    let mut out = Vec::with_capacity(max_n as usize);
    let mut z = ComplexInterval::one();
    for n in 1..=max_n {
        out.push(SpiralPoint {
            index: n,
            z: cx_round_out(&z, p),
            angle: table.get(n)?,
        });
        if n < max_n {
            z = cx_mul_one_plus_i(&z, &inv_sqrt(n, wp), wp);
        }
    }
    Ok(out)
}

/// Encloses θ(n) from the shared prefix table for `p`.
pub fn angle_prefix(n: u64, p: Precision) -> Result<Interval> {
    AnglePrefixTable::for_precision(p).get(n)
}

/// Smallest `n` whose angle enclosure lies strictly above `2πr`.
///
/// Starts at `p` and doubles the precision whenever an enclosure straddles
/// `2πr`, up to [`Precision::MAX_BITS`].
pub fn revolution_index(r: u64, p: Precision) -> Result<u64> {
    revolution_index_capped(r, p, Precision::new(Precision::MAX_BITS)?)
}

/// [`revolution_index`] with an explicit precision cap.
pub fn revolution_index_capped(r: u64, p: Precision, cap: Precision) -> Result<u64> {
    if r < 1 {
        return Err(Error::InvalidIndex(r));
    }
    let cap = cap.max(p).bits();
    let mut bits = p.bits();
    loop {
        let prec = Precision::new(bits)?;
        let target = iv_mul(
            &iv_pi(prec),
            &Interval::point(Dyadic::from_u64(2 * r)),
            prec,
        );
        let table = AnglePrefixTable::for_precision(prec);
        let mut n = 1;
        let found = loop {
            let theta = table.get(n)?;
            if theta.lo() > target.hi() {
                break Some(n);
            }
            if theta.hi() >= target.lo() {
                break None;
            }
            n += 1;
        };
        match found {
            Some(n) => return Ok(n),
            None if bits >= cap => return Err(Error::PrecisionExhausted { cap }),
            None => bits = (bits * 2).min(cap),
        }
    }
}

/// Append-only cache of θ(1), θ(2), ... for one precision.
///
/// Entries are accumulated with [`PREFIX_GUARD`] extra bits and rounded out
/// to the table precision on read. Reads run concurrently; extension takes
/// the write lock.
#[derive(Debug)]
pub struct AnglePrefixTable {
    precision: Precision,
    entries: RwLock<Vec<Interval>>,
}

impl AnglePrefixTable {
    pub fn new(precision: Precision) -> Self {
        AnglePrefixTable {
            precision,
            entries: RwLock::new(vec![Interval::zero()]),
        }
    }

    /// The process-wide table for `p`.
    pub fn for_precision(p: Precision) -> Arc<AnglePrefixTable> {
        static TABLES: OnceLock<Mutex<HashMap<u32, Arc<AnglePrefixTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
        tables
            .lock()
            .expect("prefix table registry poisoned")
            .entry(p.bits())
            .or_insert_with(|| Arc::new(AnglePrefixTable::new(p)))
            .clone()
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("prefix table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn working(&self) -> Precision {
        self.precision.with_guard(PREFIX_GUARD)
    }

    /// Ensures entries up to θ(n) exist.
    pub fn extend_to(&self, n: u64) {
        if self.len() as u64 >= n {
            return;
        }
        let wp = self.working();
        let mut entries = self.entries.write().expect("prefix table poisoned");
        while (entries.len() as u64) < n {
            // entries[k - 1] holds θ(k); θ(k + 1) = θ(k) + arctan(1/√k)
            let k = entries.len() as u64;
            let term = iv_atan(&inv_sqrt(k, wp), wp);
            let next = iv_add(&entries[k as usize - 1], &term, wp);
            entries.push(next);
        }
    }

    /// θ(n) at working precision.
    pub(crate) fn get_raw(&self, n: u64) -> Result<Interval> {
        if n < 1 {
            return Err(Error::InvalidIndex(n));
        }
        self.extend_to(n);
        Ok(self.entries.read().expect("prefix table poisoned")[n as usize - 1].clone())
    }

    /// θ(n) rounded out to the table precision.
    pub fn get(&self, n: u64) -> Result<Interval> {
        Ok(round_out(&self.get_raw(n)?, self.precision))
    }

    /// Snapshot of θ(1..=n) at working precision, under a single read lock.
    pub(crate) fn snapshot(&self, n: u64) -> Vec<Interval> {
        self.extend_to(n);
        self.entries.read().expect("prefix table poisoned")[..n as usize].to_vec()
    }
}
