//! Locale-independent number and row formatting.

use std::io::{self, Write};

use spherical_collapse::{Sample, Source, Velocity};

/// Shortest decimal that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        ryu::Buffer::new().format_finite(v).to_string()
    } else if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "INF".to_string()
    } else {
        "-INF".to_string()
    }
}

pub fn velocity(v: Velocity) -> String {
    match v {
        Velocity::Finite(x) => num(x),
        other => other.to_string(),
    }
}

pub fn write_header(out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "t,r,rdot,source")
}

pub fn write_row(
    out: &mut impl Write,
    t: f64,
    r: f64,
    rdot: Velocity,
    source: Source,
) -> io::Result<()> {
    writeln!(out, "{},{},{},{}", num(t), num(r), velocity(rdot), source)
}

pub fn write_sample_row(out: &mut impl Write, s: &Sample) -> io::Result<()> {
    write_row(out, s.t, s.r, s.rdot, s.source)
}
