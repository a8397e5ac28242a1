//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod support;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use support::{dist, stdout, svg_triangles, theodorus};
use theodorus_core::{
    audit_im_sign, certify_all, iv_add, iv_atan, iv_div, iv_mul, iv_pi, iv_sqrt, modulus_sq,
    points_by_product, recurrence_points, revolution_index, Dyadic, Interval, Precision, Verdict,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn p(bits: u32) -> Precision {
    Precision::new(bits).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn anchors() -> Check {
    let prec = p(128);
    let pts = points_by_product(2, prec).map_err(|e| e.to_string())?;
    let walk = recurrence_points(2, prec).map_err(|e| e.to_string())?;
    let limit = Dyadic::pow2(-60);
    ensure(
        pts[0].z.re == Interval::one() && pts[0].z.im == Interval::zero(),
        "z_1 is not exactly 1",
    )?;
    ensure(walk[0] == pts[0].z, "recurrence z_1 is not exactly 1")?;
    for z in [&pts[1].z, &walk[1]] {
        ensure(
            z.re.contains(&Dyadic::one()) && z.im.contains(&Dyadic::one()),
            "z_2 misses 1+i",
        )?;
        ensure(z.re.width() < limit && z.im.width() < limit, "z_2 too wide")?;
        let modulus = iv_sqrt(&modulus_sq(z, prec), prec).map_err(|e| e.to_string())?;
        let two = Dyadic::from_i64(2);
        let (lo, hi) = (modulus.lo(), modulus.hi());
        ensure(lo * lo <= two && two <= hi * hi, "|z_2| misses sqrt 2")?;
        ensure(modulus.width() < limit, "|z_2| too wide")?;
    }
    Ok("z_1 = 1 exactly, z_2 encloses 1+i, |z_2| encloses sqrt 2, widths < 2^-60".into())
}

fn cross_formula() -> Check {
    let start = Instant::now();
    let prec = p(128);
    let walk = recurrence_points(2048, prec).map_err(|e| e.to_string())?;
    let prod = points_by_product(2048, prec).map_err(|e| e.to_string())?;
    let limit = Dyadic::pow2(-64);
    let mut widest = Dyadic::zero();
    for (z, pt) in walk.iter().zip(&prod) {
        ensure(
            z.intersects(&pt.z),
            format!("n={} enclosures disjoint", pt.index),
        )?;
        for w in [z.re.width(), z.im.width(), pt.z.re.width(), pt.z.im.width()] {
            ensure(w < limit, format!("n={} width >= 2^-64", pt.index))?;
            widest = widest.max(w);
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), format!("took {}", secs(t)))?;
    Ok(format!(
        "n <= 2048 intersect, widest coordinate 2^{} < 2^-64, {}",
        widest.magnitude(),
        secs(t)
    ))
}

fn telescoping() -> Check {
    let start = Instant::now();
    let prec = p(128);
    for pt in points_by_product(2048, prec).map_err(|e| e.to_string())? {
        let msq = modulus_sq(&pt.z, prec);
        ensure(
            msq.contains(&Dyadic::from_u64(pt.index)),
            format!("n={} not in |z_n|^2", pt.index),
        )?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), format!("took {}", secs(t)))?;
    Ok(format!("|z_n|^2 contains n for n <= 2048, {}", secs(t)))
}

/// Smallest distance from a window angle to a multiple of π, in doubles.
fn f64_min_margin(bound: usize) -> ((usize, usize), f64) {
    let mut theta = vec![0.0f64; bound + 1];
    for n in 2..=bound {
        theta[n] = theta[n - 1] + (1.0 / ((n - 1) as f64).sqrt()).atan();
    }
    let mut best = ((0, 0), f64::INFINITY);
    for m in 1..bound {
        for n in m + 1..=bound {
            let r = (theta[n] - theta[m]).rem_euclid(PI);
            let d = r.min(PI - r);
            if d < best.1 {
                best = ((m, n), d);
            }
        }
    }
    best
}

fn certification() -> Check {
    let start = Instant::now();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report =
        certify_all(1000, &Precision::default_schedule(), workers).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(
        report.windows_total == 499_500,
        format!("{} windows", report.windows_total),
    )?;
    ensure(
        report.certified == 499_500,
        format!("{} certified", report.certified),
    )?;
    ensure(
        report.unresolved.is_empty(),
        format!("{} unresolved", report.unresolved.len()),
    )?;
    ensure(
        report.min_margin_lo.is_positive(),
        "minimum margin not positive",
    )?;

    let capped = [p(64), p(128), p(256)];
    let low = certify_all(1000, &capped, workers).map_err(|e| e.to_string())?;
    ensure(low.unresolved.is_empty(), "needs more than 256 bits")?;

    let ((m, n), oracle) = f64_min_margin(1000);
    let got = report.min_margin_lo.to_f64();
    ensure(
        report.min_margin_window == (m as u64, n as u64),
        format!(
            "min window {:?}, oracle ({m},{n})",
            report.min_margin_window
        ),
    )?;
    ensure(
        (got - oracle).abs() < 1e-9,
        format!("margin {got:e} vs oracle {oracle:e}"),
    )?;
    ensure(t < Duration::from_secs(120), format!("took {}", secs(t)))?;
    Ok(format!(
        "499500/499500 certified within 256 bits, min window ({m},{n}) margin {got:.6e} (oracle {oracle:.6e}), {} on {workers} workers",
        secs(t)
    ))
}

fn audit() -> Check {
    let prec = p(128);
    let six = audit_im_sign(6, prec).map_err(|e| e.to_string())?;
    ensure(
        six.is_empty(),
        format!("{} findings for bound 6", six.len()),
    )?;
    let found = audit_im_sign(7, prec).map_err(|e| e.to_string())?;
    ensure(
        found.len() == 1,
        format!("{} findings for bound 7", found.len()),
    )?;
    let f = &found[0];
    ensure(
        (f.m, f.n) == (1, 7),
        format!("first finding ({},{})", f.m, f.n),
    )?;
    ensure(f.verdict == Verdict::Negative, "verdict not negative")?;

    // direct double-precision product (1 + i/√1)...(1 + i/√6)
    let (mut re, mut im) = (1.0f64, 0.0f64);
    for k in 1..7 {
        let t = 1.0 / (k as f64).sqrt();
        (re, im) = (re - im * t, im + re * t);
    }
    let got = f.im_enclosure.mid().to_f64();
    ensure((got - im).abs() < 1e-12, format!("Im {got} vs double {im}"))?;
    ensure((got + 0.1444).abs() < 5e-4, format!("Im {got}"))?;
    ensure(
        f.im_enclosure.hi().is_negative(),
        "Im enclosure not below zero",
    )?;
    Ok(format!(
        "bound 6 clean, first finding (1,7) with Im = {got:.6} (double product {im:.6})"
    ))
}

/// First n with the double-precision prefix sum above 2πr.
fn f64_revolution(r: u32) -> usize {
    let mut theta = 0.0f64;
    let mut n = 1;
    while theta <= 2.0 * PI * r as f64 {
        theta += (1.0 / (n as f64).sqrt()).atan();
        n += 1;
    }
    n
}

fn revolutions() -> Check {
    let prec = p(128);
    let one = revolution_index(1, prec).map_err(|e| e.to_string())?;
    let two = revolution_index(2, prec).map_err(|e| e.to_string())?;
    let (o1, o2) = (f64_revolution(1), f64_revolution(2));
    ensure(
        one == 18 && o1 == 18,
        format!("revolution 1 at {one}, oracle {o1}"),
    )?;
    ensure(
        two as usize == o2,
        format!("revolution 2 at {two}, oracle {o2}"),
    )?;
    Ok(format!(
        "revolution 1 at n = {one}, revolution 2 at n = {two} (oracle {o2})"
    ))
}

fn random_dyadic(rng: &mut StdRng) -> Dyadic {
    let bits = rng.gen_range(8..=90u32);
    let mut m = BigInt::from(rng.gen::<u64>()) << 64usize | BigInt::from(rng.gen::<u64>());
    m >>= (128 - bits) as usize;
    m |= BigInt::from(1) << (bits - 1) as usize;
    if rng.gen_bool(0.5) {
        m = -m;
    }
    Dyadic::new(m, rng.gen_range(-40..=8i64) - bits as i64 + 1)
}

fn random_interval(rng: &mut StdRng) -> Interval {
    let a = random_dyadic(rng);
    let w = Dyadic::new(BigInt::from(rng.gen_range(0..1024u32)), a.magnitude() - 70);
    Interval::new(a.clone(), &a + &w).unwrap()
}

type Kernel = fn(&Interval, &Interval, Precision) -> Option<Interval>;

fn soundness() -> Check {
    const SAMPLES: usize = 100_000;
    let kernels: [(&str, Kernel); 5] = [
        ("add", |a, b, p| Some(iv_add(a, b, p))),
        ("mul", |a, b, p| Some(iv_mul(a, b, p))),
        ("div", |a, b, p| iv_div(a, b, p).ok()),
        ("sqrt", |a, _, p| iv_sqrt(&a.abs(), p).ok()),
        ("atan", |a, _, p| Some(iv_atan(a, p))),
    ];
    let start = Instant::now();
    for (seed, (name, op)) in kernels.iter().enumerate() {
        let mut rng = StdRng::seed_from_u64(1000 + seed as u64);
        let mut checked = 0;
        while checked < SAMPLES {
            let a = random_interval(&mut rng);
            let b = random_interval(&mut rng);
            let bits = rng.gen_range(16..=64u32);
            let (Some(low), Some(high)) = (op(&a, &b, p(bits)), op(&a, &b, p(4 * bits))) else {
                continue;
            };
            ensure(
                low.contains(&high.mid()),
                format!("{name}: a={a} b={b} p={bits}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!(
        "{SAMPLES} differential samples each for add, mul, div, sqrt, atan, zero violations, {}",
        secs(start.elapsed())
    ))
}

fn pi_quality() -> Check {
    let mut parts = Vec::new();
    for bits in [64u32, 128, 256] {
        let w = iv_pi(p(bits)).width();
        ensure(
            w <= Dyadic::pow2(4 - bits as i64),
            format!("p={bits}: width 2^{}", w.magnitude()),
        )?;
        parts.push(format!("p={bits}: 2^{}", w.magnitude()));
    }
    Ok(format!("width <= 2^(4-p) ({})", parts.join(", ")))
}

fn figure() -> Check {
    let out = theodorus(&["plot", "--max-n", "8"]);
    ensure(out.status.success(), "plot failed")?;
    let tris = svg_triangles(&stdout(&out));
    ensure(tris.len() == 8, format!("{} triangles", tris.len()))?;
    for (i, [o, a, b]) in tris.iter().enumerate() {
        let n = i + 1;
        ensure(*o == (0.0, 0.0), format!("rib {n} apex not at origin"))?;
        let leg = dist(*a, *b);
        ensure((leg - 1.0).abs() <= 1e-9, format!("rib {n} leg {leg}"))?;
        let hyp = dist(*o, *a);
        ensure(
            (hyp - (n as f64).sqrt()).abs() <= 1e-9 * hyp,
            format!("rib {n} side {hyp}"),
        )?;
        if let Some(next) = tris.get(i + 1) {
            ensure(
                next[1] == *b,
                format!("ribs {n} and {} not contiguous", n + 1),
            )?;
        }
    }
    ensure(
        (dist(tris[0][0], tris[0][1]) - 1.0).abs() <= 1e-9,
        "first leg not unit",
    )?;
    Ok("8 contiguous triangles at the origin, unit legs within 1e-9".into())
}

fn determinism() -> Check {
    let schedule = Precision::default_schedule();
    let one = certify_all(300, &schedule, 1).map_err(|e| e.to_string())?;
    let eight = certify_all(300, &schedule, 8).map_err(|e| e.to_string())?;
    ensure(
        one.to_json(30) == eight.to_json(30),
        "library reports differ",
    )?;

    let a = theodorus(&["certify", "--max-n", "300", "--workers", "1"]);
    let b = theodorus(&["certify", "--max-n", "300", "--workers", "8"]);
    ensure(a.status.success() && b.status.success(), "certify failed")?;
    ensure(a.stdout == b.stdout, "binary reports differ")?;
    ensure(
        a.stdout == format!("{}\n", one.to_json(30)).into_bytes(),
        "binary and library reports differ",
    )?;
    Ok(format!(
        "1 and 8 workers give byte-identical reports ({} bytes)",
        a.stdout.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("anchors", anchors),
        ("cross-formula agreement", cross_formula),
        ("telescoping modulus", telescoping),
        ("certification N=1000", certification),
        ("imaginary-part audit", audit),
        ("revolution structure", revolutions),
        ("interval soundness", soundness),
        ("pi quality", pi_quality),
        ("figure reproduction", figure),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
