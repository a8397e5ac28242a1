//! Certificates that no two hypotenuses of the spiral lie on one line.
//!
//! Hypotenuses `0→z_m` and `0→z_n` (m < n) are collinear exactly when
//! `z_n / z_m = ∏_{k=m}^{n-1} (1 + i/√k)` is real, i.e. when the window angle
//! `θ(n) − θ(m)` is an integer multiple of π. A window is certified when the
//! distance from its angle to the nearest multiple of π has a positive lower
//! bound. Multiples of 2π cover the parallel case and odd multiples of π the
//! anti-parallel one.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{cx_mul_one_plus_i, cx_round_out, ComplexInterval};
use crate::dyadic::{Dyadic, Rounding};
use crate::elementary::iv_pi;
use crate::error::{Error, Result};
use crate::interval::{iv_div, iv_mul, iv_sub, Interval, Precision};
use crate::spiral::{inv_sqrt, product_guard, AnglePrefixTable};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificationStatus {
    Certified,
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCertificate {
    pub m: u64,
    pub n: u64,
    /// Encloses `θ(n) − θ(m)`.
    pub theta: Interval,
    pub nearest_q: u64,
    /// Encloses `min_q |theta − qπ|`.
    pub margin: Interval,
    /// The precision that decided the window, or the last one tried.
    pub precision: Precision,
    pub status: CertificationStatus,
}

impl WindowCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertificationStatus::Certified
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationReport {
    pub bound: u64,
    pub windows_total: u64,
    pub certified: u64,
    pub unresolved: Vec<(u64, u64)>,
    pub min_margin_window: (u64, u64),
    pub min_margin_lo: Dyadic,
    pub precision_schedule: Vec<Precision>,
}

/// Wire form of [`CertificationReport`]. Field order is the emitted key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    #[serde(rename = "N")]
    pub n: u64,
    pub windows_total: u64,
    pub certified: u64,
    pub unresolved: Vec<[u64; 2]>,
    pub min_margin_window: [u64; 2],
    pub min_margin_lo: String,
    pub precision_schedule: Vec<u32>,
    pub tool_version: String,
}

impl CertificationReport {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    pub fn to_wire(&self, digits: usize) -> ReportJson {
        ReportJson {
            n: self.bound,
            windows_total: self.windows_total,
            certified: self.certified,
            unresolved: self.unresolved.iter().map(|&(m, n)| [m, n]).collect(),
            min_margin_window: [self.min_margin_window.0, self.min_margin_window.1],
            min_margin_lo: self.min_margin_lo.to_decimal(digits, Rounding::Floor),
            precision_schedule: self.precision_schedule.iter().map(|p| p.bits()).collect(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn to_json(&self, digits: usize) -> String {
        serde_json::to_string_pretty(&self.to_wire(digits)).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Positive,
    Negative,
    StraddlesZeroAtCap,
}

/// A window whose product has a non-positive (or undecided) imaginary part,
/// although every term of `Σ 1/√k` over the window is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditFinding {
    pub m: u64,
    pub n: u64,
    pub im_enclosure: Interval,
    pub verdict: Verdict,
}

fn check_window(m: u64, n: u64) -> Result<()> {
    if m < 1 || m >= n {
        Err(Error::InvalidWindow { m, n })
    } else {
        Ok(())
    }
}

/// Encloses `θ(n) − θ(m) = Σ_{k=m}^{n-1} arctan(1/√k)`.
pub fn window_angle(m: u64, n: u64, p: Precision) -> Result<Interval> {
    check_window(m, n)?;
    let table = AnglePrefixTable::for_precision(p);
    let hi = table.get_raw(n)?;
    let lo = table.get_raw(m)?;
    Ok(iv_sub(&hi, &lo, p))
}

/// Returns the nearest multiple index `q` and an enclosure of
/// `min_{q ∈ ℤ} |theta − qπ|`.
///
/// Every integer that can be nearest to some point of `theta` lies in
/// `[floor(lo/π), ceil(hi/π)]`; all of them are evaluated and the pointwise
/// minimum of their distance enclosures is returned. `q` is the candidate
/// with the smallest upper distance bound.
pub fn nearest_pi_multiple(theta: &Interval, p: Precision) -> (u64, Interval) {
    let pi = iv_pi(p);
    let ratio = iv_div(theta, &pi, p).expect("π enclosure is positive");
    let first = ratio.lo().floor().max(BigInt::zero());
    let last = ratio.hi().ceil().max(BigInt::zero());
    let count = (&last - &first).to_u64().unwrap_or(u64::MAX);

    let distance = |q: &BigInt| -> Interval {
        let multiple = iv_mul(&pi, &Interval::point(Dyadic::from_bigint(q.clone())), p);
        iv_sub(theta, &multiple, p).abs()
    };

    if count >= 2 {
        // theta covers at least one full multiple of π
        let q = ((&first + &last) / 2u32).to_u64().unwrap_or(u64::MAX);
        let upper = pi.mul_pow2(-1).hi().clone();
        return (q, Interval::ordered(Dyadic::zero(), upper));
    }

    let near = distance(&first);
    if count == 0 {
        return (first.to_u64().unwrap_or(u64::MAX), near);
    }
    let far = distance(&last);
    let margin = near.min(&far);
    let q = if far.hi() < near.hi() { last } else { first };
    (q.to_u64().unwrap_or(u64::MAX), margin)
}

/// Walks `schedule` until the margin is provably positive.
pub fn certify_window(m: u64, n: u64, schedule: &[Precision]) -> Result<WindowCertificate> {
    check_window(m, n)?;
    check_schedule(schedule)?;
    let mut last = None;
    for &p in schedule {
        let cert = decide(m, n, window_angle(m, n, p)?, p);
        if cert.is_certified() {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.expect("schedule is nonempty"))
}

fn decide(m: u64, n: u64, theta: Interval, p: Precision) -> WindowCertificate {
    let (nearest_q, margin) = nearest_pi_multiple(&theta, p);
    let status = if margin.is_positive() {
        CertificationStatus::Certified
    } else {
        CertificationStatus::Unresolved
    };
    WindowCertificate {
        m,
        n,
        theta,
        nearest_q,
        margin,
        precision: p,
        status,
    }
}

fn check_schedule(schedule: &[Precision]) -> Result<()> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        Err(Error::InvalidSchedule)
    } else {
        Ok(())
    }
}

#[derive(Default)]
struct RowSummary {
    certified: u64,
    unresolved: Vec<(u64, u64)>,
    min_margin: Option<(Dyadic, (u64, u64))>,
}

impl RowSummary {
    fn absorb(&mut self, other: RowSummary) {
        self.certified += other.certified;
        self.unresolved.extend(other.unresolved);
        if let Some((lo, window)) = other.min_margin {
            let better = match &self.min_margin {
                None => true,
                Some((best, _)) => lo < *best,
            };
            if better {
                self.min_margin = Some((lo, window));
            }
        }
    }
}

/// Certifies every window `1 ≤ m < n ≤ bound` on `workers` threads.
///
/// Rows `m` are processed independently and merged in increasing `m`, so the
/// report does not depend on the worker count. Ties in the minimum margin go
/// to the lexicographically first window.
pub fn certify_all(
    bound: u64,
    schedule: &[Precision],
    workers: usize,
) -> Result<CertificationReport> {
    if bound < 2 {
        return Err(Error::InvalidBound(bound));
    }
    check_schedule(schedule)?;
    AnglePrefixTable::for_precision(schedule[0]).extend_to(bound);
    for &p in schedule {
        iv_pi(p);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let rows: Vec<Result<RowSummary>> = pool.install(|| {
        (1..bound)
            .into_par_iter()
            .map(|m| certify_row(m, bound, schedule))
            .collect()
    });

    let mut total = RowSummary::default();
    for row in rows {
        total.absorb(row?);
    }
    let (min_margin_lo, min_margin_window) = total.min_margin.unwrap_or((Dyadic::zero(), (1, 2)));
    Ok(CertificationReport {
        bound,
        windows_total: bound * (bound - 1) / 2,
        certified: total.certified,
        unresolved: total.unresolved,
        min_margin_window,
        min_margin_lo,
        precision_schedule: schedule.to_vec(),
    })
}

fn certify_row(m: u64, bound: u64, schedule: &[Precision]) -> Result<RowSummary> {
    let mut row = RowSummary::default();
    // first pass reads one snapshot of the lowest-precision table
    let first = schedule[0];
    let prefix = AnglePrefixTable::for_precision(first).snapshot(bound);
    for n in m + 1..=bound {
        let theta = iv_sub(&prefix[n as usize - 1], &prefix[m as usize - 1], first);
        let mut cert = decide(m, n, theta, first);
        if !cert.is_certified() && schedule.len() > 1 {
            cert = certify_window(m, n, &schedule[1..])?;
        }
        if cert.is_certified() {
            row.certified += 1;
        } else {
            row.unresolved.push((m, n));
        }
        let lo = cert.margin.lo().clone();
        let better = match &row.min_margin {
            None => true,
            Some((best, _)) => lo < *best,
        };
        if better {
            row.min_margin = Some((lo, (m, n)));
        }
    }
    Ok(row)
}

/// Encloses `∏_{k=m}^{n-1} (1 + i/√k)`, accumulated left to right.
pub fn window_product(m: u64, n: u64, p: Precision) -> Result<ComplexInterval> {
    check_window(m, n)?;
    let wp = p.with_guard(product_guard(n));
    let mut z = ComplexInterval::one();
    for k in m..n {
        z = cx_mul_one_plus_i(&z, &inv_sqrt(k, wp), wp);
    }
    Ok(cx_round_out(&z, p))
}

/// Every window `(m, n)`, `n ≤ bound`, whose product does not have a provably
/// positive imaginary part, in lexicographic order.
pub fn audit_im_sign(bound: u64, p: Precision) -> Result<Vec<AuditFinding>> {
    if bound < 2 {
        return Err(Error::InvalidBound(bound));
    }
    let wp = p.with_guard(product_guard(bound));
    let factors: Vec<Interval> = (1..bound).map(|k| inv_sqrt(k, wp)).collect();
    let rows: Vec<Vec<AuditFinding>> = (1..bound)
        .into_par_iter()
        .map(|m| {
            let mut found = Vec::new();
            let mut z = ComplexInterval::one();
            for n in m + 1..=bound {
                z = cx_mul_one_plus_i(&z, &factors[(n - 2) as usize], wp);
                let im = crate::interval::round_out(&z.im, p);
                let verdict = if im.is_positive() {
                    continue;
                } else if im.is_negative() {
                    Verdict::Negative
                } else {
                    Verdict::StraddlesZeroAtCap
                };
                found.push(AuditFinding {
                    m,
                    n,
                    im_enclosure: im,
                    verdict,
                });
            }
            found
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}
