//! Command implementations behind the `theodorus` binary.
//!
//! Every command renders its whole output into a string first; the binary
//! writes it with a single writer after the computation has finished.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use theodorus_core::{
    audit_im_sign, certify_all, iv_sqrt, modulus_sq, point_by_product, points_by_product,
    revolution_index_capped, Error as CoreError, Interval, Precision, Verdict,
};

pub mod svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Generate,
    Certify,
    Plot,
    Stats,
    Audit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub max_n: u64,
    pub precision_bits: u32,
    pub precision_cap: u32,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub digits: usize,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(command: Command, max_n: u64) -> Self {
        RunConfig {
            command,
            max_n,
            precision_bits: 64,
            precision_cap: Precision::MAX_BITS,
            output_path: None,
            format: None,
            digits: theodorus_core::decimal::DEFAULT_DIGITS,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bits = self.precision_bits;
        let cap = self.precision_cap;
        if !(Precision::MIN_BITS..=Precision::MAX_BITS).contains(&bits)
            || bits > cap
            || cap > Precision::MAX_BITS
        {
            return Err(CliError::Config(format!(
                "precision must satisfy {} <= precision ({bits}) <= cap ({cap}) <= {}",
                Precision::MIN_BITS,
                Precision::MAX_BITS
            )));
        }
        if self.max_n < 1 {
            return Err(CliError::Config("--max-n must be at least 1".into()));
        }
        if self.digits < 1 {
            return Err(CliError::Config("--digits must be at least 1".into()));
        }
        if self.workers < 1 {
            return Err(CliError::Config("--workers must be at least 1".into()));
        }
        Ok(())
    }

    fn precision(&self) -> Result<Precision, CliError> {
        Ok(Precision::new(self.precision_bits)?)
    }

    fn cap(&self) -> Result<Precision, CliError> {
        Ok(Precision::new(self.precision_cap)?)
    }

    /// Doubling schedule from the initial precision, ending at the cap.
    pub fn schedule(&self) -> Result<Vec<Precision>, CliError> {
        let mut out = Vec::new();
        let mut bits = self.precision_bits;
        while bits < self.precision_cap {
            out.push(Precision::new(bits)?);
            bits = bits.saturating_mul(2);
        }
        out.push(self.cap()?);
        Ok(out)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::PrecisionExhausted { .. }) => 2,
            _ => 1,
        }
    }
}

/// Rendered command output plus the process exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub status: i32,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, status: 0 }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    match cfg.command {
        Command::Generate => cmd_generate(cfg).map(Outcome::ok),
        Command::Certify => cmd_certify(cfg),
        Command::Plot => cmd_plot(cfg).map(Outcome::ok),
        Command::Stats => cmd_stats(cfg).map(Outcome::ok),
        Command::Audit => cmd_audit(cfg).map(Outcome::ok),
    }
}

fn reject_format(cfg: &RunConfig, allowed: &[Format]) -> Result<(), CliError> {
    match cfg.format {
        Some(f) if !allowed.contains(&f) => Err(CliError::Config(format!(
            "format {f:?} is not available for {:?}",
            cfg.command
        ))),
        _ => Ok(()),
    }
}

pub const CSV_HEADER: &str = "n,re_lo,re_hi,im_lo,im_hi,theta_lo,theta_hi";

#[derive(Serialize)]
struct PointRow {
    n: u64,
    re_lo: String,
    re_hi: String,
    im_lo: String,
    im_hi: String,
    theta_lo: String,
    theta_hi: String,
}

/// Point table for `n = 1..=max_n` as CSV (default) or JSON.
pub fn cmd_generate(cfg: &RunConfig) -> Result<String, CliError> {
    reject_format(cfg, &[Format::Csv, Format::Json])?;
    let points = points_by_product(cfg.max_n, cfg.precision()?)?;
    let rows: Vec<PointRow> = points
        .iter()
        .map(|pt| {
            let (re_lo, re_hi) = pt.z.re.to_decimal(cfg.digits);
            let (im_lo, im_hi) = pt.z.im.to_decimal(cfg.digits);
            let (theta_lo, theta_hi) = pt.angle.to_decimal(cfg.digits);
            PointRow {
                n: pt.index,
                re_lo,
                re_hi,
                im_lo,
                im_hi,
                theta_lo,
                theta_hi,
            }
        })
        .collect();
    if cfg.format == Some(Format::Json) {
        let mut s = serde_json::to_string_pretty(&rows).map_err(std::io::Error::from)?;
        s.push('\n');
        return Ok(s);
    }
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in &rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.n, r.re_lo, r.re_hi, r.im_lo, r.im_hi, r.theta_lo, r.theta_hi
        );
    }
    Ok(s)
}

/// JSON certification report; status 0 when every window is certified,
/// 2 when any is unresolved.
pub fn cmd_certify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    reject_format(cfg, &[Format::Json])?;
    if cfg.max_n < 2 {
        return Err(CliError::Config("need at least two points".into()));
    }
    let report = certify_all(cfg.max_n, &cfg.schedule()?, cfg.workers)?;
    let mut body = report.to_json(cfg.digits);
    body.push('\n');
    Ok(Outcome {
        body,
        status: if report.is_complete() { 0 } else { 2 },
    })
}

pub fn cmd_plot(cfg: &RunConfig) -> Result<String, CliError> {
    reject_format(cfg, &[Format::Svg])?;
    let points = points_by_product(cfg.max_n + 1, cfg.precision()?)?;
    let model: Vec<(f64, f64)> = points
        .iter()
        .map(|pt| (pt.z.re.mid().to_f64(), pt.z.im.mid().to_f64()))
        .collect();
    Ok(svg::render_spiral(&model))
}

#[derive(Serialize)]
struct Revolution {
    r: u64,
    n: u64,
}

#[derive(Serialize)]
struct Stats {
    max_n: u64,
    revolutions: Vec<Revolution>,
    theta: [String; 2],
    modulus: [String; 2],
}

/// Revolution indices up to `max_n`, plus θ(max_n) and |z_max_n|.
pub fn cmd_stats(cfg: &RunConfig) -> Result<String, CliError> {
    reject_format(cfg, &[Format::Json])?;
    let p = cfg.precision()?;
    let cap = cfg.cap()?;
    let mut revolutions = Vec::new();
    for r in 1.. {
        let n = revolution_index_capped(r, p, cap)?;
        if n > cfg.max_n {
            break;
        }
        revolutions.push(Revolution { r, n });
    }
    let pt = point_by_product(cfg.max_n, p)?;
    let modulus = iv_sqrt(&modulus_sq(&pt.z, p), p)?;
    let pair = |iv: &Interval| {
        let (lo, hi) = iv.to_decimal(cfg.digits);
        [lo, hi]
    };
    let stats = Stats {
        max_n: cfg.max_n,
        revolutions,
        theta: pair(&pt.angle),
        modulus: pair(&modulus),
    };
    if cfg.format == Some(Format::Json) {
        let mut s = serde_json::to_string_pretty(&stats).map_err(std::io::Error::from)?;
        s.push('\n');
        return Ok(s);
    }
    let mut s = String::new();
    if stats.revolutions.is_empty() {
        let _ = writeln!(s, "no complete revolution up to n = {}", cfg.max_n);
    }
    for rev in &stats.revolutions {
        let _ = writeln!(s, "revolution {} completes at n = {}", rev.r, rev.n);
    }
    let _ = writeln!(
        s,
        "theta({}) in [{}, {}]",
        cfg.max_n, stats.theta[0], stats.theta[1]
    );
    let _ = writeln!(
        s,
        "|z_{}| in [{}, {}]",
        cfg.max_n, stats.modulus[0], stats.modulus[1]
    );
    Ok(s)
}

#[derive(Serialize)]
struct FindingRow {
    m: u64,
    n: u64,
    im_lo: String,
    im_hi: String,
    verdict: Verdict,
}

/// Windows whose product has a non-positive imaginary part.
pub fn cmd_audit(cfg: &RunConfig) -> Result<String, CliError> {
    reject_format(cfg, &[Format::Json])?;
    if cfg.max_n < 2 {
        return Err(CliError::Config("need at least two points".into()));
    }
    let findings = audit_im_sign(cfg.max_n, cfg.precision()?)?;
    let rows: Vec<FindingRow> = findings
        .iter()
        .map(|f| {
            let (im_lo, im_hi) = f.im_enclosure.to_decimal(cfg.digits);
            FindingRow {
                m: f.m,
                n: f.n,
                im_lo,
                im_hi,
                verdict: f.verdict,
            }
        })
        .collect();
    if cfg.format == Some(Format::Json) {
        let mut s = serde_json::to_string_pretty(&rows).map_err(std::io::Error::from)?;
        s.push('\n');
        return Ok(s);
    }
    if rows.is_empty() {
        return Ok("no counterexample windows\n".into());
    }
    let mut s = String::new();
    for r in &rows {
        let verdict = match r.verdict {
            Verdict::Positive => "positive",
            Verdict::Negative => "negative",
            Verdict::StraddlesZeroAtCap => "straddles-zero-at-cap",
        };
        let _ = writeln!(
            s,
            "window ({},{}): Im in [{}, {}] {verdict}",
            r.m, r.n, r.im_lo, r.im_hi
        );
    }
    let _ = writeln!(s, "{} counterexample window(s)", rows.len());
    Ok(s)
}
