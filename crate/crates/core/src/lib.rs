//! Validated numerics for the spiral of Theodorus.
//!
//! The outer vertices of the spiral are `z_n = ∏_{k<n} (1 + i/√k)`. This crate
//! encloses them with dyadic interval arithmetic and certifies, for every pair
//! of indices up to a bound, that no two hypotenuses are collinear.

pub mod certifier;
pub mod complex;
pub mod decimal;
pub mod dyadic;
pub mod elementary;
pub mod error;
pub mod interval;
pub mod spiral;

pub use certifier::{
    audit_im_sign, certify_all, certify_window, nearest_pi_multiple, window_angle, window_product,
    AuditFinding, CertificationReport, CertificationStatus, ReportJson, Verdict, WindowCertificate,
    TOOL_VERSION,
};
pub use complex::ComplexInterval;
pub use dyadic::{Dyadic, Rounding};
pub use elementary::{iv_atan, iv_pi, iv_sqrt};
pub use error::{Error, Result};
pub use interval::{iv_add, iv_div, iv_mul, iv_sqr, iv_sub, round_out, Interval, Precision};
pub use spiral::{
    angle_prefix, modulus_sq, next_point, point_by_product, points_by_product, recurrence_points,
    revolution_index, revolution_index_capped, AnglePrefixTable, SpiralPoint,
};
