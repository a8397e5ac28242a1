#![allow(dead_code)]

use std::process::{Command, Output};

pub fn theodorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theodorus"))
        .args(args)
        .env_remove("THEODORUS_PRECISION_CAP")
        .output()
        .expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Triangles of an emitted plot, as model-coordinate vertex triples.
pub fn svg_triangles(svg: &str) -> Vec<[(f64, f64); 3]> {
    let scale: f64 = attr(svg, "data-scale").parse().expect("numeric scale");
    svg.split("<path")
        .skip(1)
        .map(|chunk| {
            let d = attr(chunk, "d");
            let nums: Vec<f64> = d
                .split_whitespace()
                .filter(|t| !matches!(*t, "M" | "L" | "Z"))
                .map(|t| t.parse().expect("coordinate"))
                .collect();
            assert_eq!(nums.len(), 6, "path {d}");
            let v = |i: usize| (nums[2 * i] / scale, -nums[2 * i + 1] / scale);
            [v(0), v(1), v(2)]
        })
        .collect()
}

fn attr<'a>(s: &'a str, name: &str) -> &'a str {
    let key = format!(" {name}=\"");
    let start = s.find(&key).unwrap_or_else(|| panic!("missing {name}")) + key.len();
    let len = s[start..].find('"').expect("closing quote");
    &s[start..start + len]
}

pub fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}
