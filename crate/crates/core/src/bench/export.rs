//! CSV, JSON and SVG writers for traces, profiles and distributions.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::residue::{BudgetKind, ProfilePoint};
use crate::error::{Error, Result};
use crate::trace::{RunTrace, TraceRecord};

/// Column order of trace CSV files.
pub const TRACE_CSV_HEADER: [&str; 6] = ["k", "t", "ub", "lb", "n_cuts", "tau"];

pub fn trace_to_csv(trace: &RunTrace) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for rec in &trace.records {
        w.serialize(rec)?;
    }
    if trace.records.is_empty() {
        w.write_record(TRACE_CSV_HEADER)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Backend(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_trace_csv(trace: &RunTrace, path: &Path) -> Result<()> {
    write_text(path, &trace_to_csv(trace)?)
}

/// Reads the records of a trace CSV; run metadata comes from the caller.
pub fn read_trace_csv(
    path: &Path,
    config_name: &str,
    instance_name: &str,
    f0: f64,
) -> Result<RunTrace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != TRACE_CSV_HEADER {
        return Err(Error::Parse {
            line: 1,
            message: format!("unexpected trace header {header:?}"),
        });
    }
    let mut trace = RunTrace::new(config_name, instance_name, f0);
    for rec in rdr.deserialize::<TraceRecord>() {
        trace.push(rec?);
    }
    Ok(trace)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    write_text(path, &to_json(value)?)
}

pub fn read_trace_json(path: &Path) -> Result<RunTrace> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// `config,budget,median,q1,q3` rows.
pub fn profiles_to_csv(profiles: &[(String, Vec<ProfilePoint>)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["config", "budget", "median", "q1", "q3"])?;
    for (name, points) in profiles {
        for p in points {
            w.write_record([
                name.clone(),
                p.budget.to_string(),
                p.median.to_string(),
                p.q1.to_string(),
                p.q3.to_string(),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Backend(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `config,residue,fraction` rows.
pub fn distributions_to_csv(dists: &[(String, Vec<(f64, f64)>)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["config", "residue", "fraction"])?;
    for (name, cdf) in dists {
        for (r, frac) in cdf {
            w.write_record([name.clone(), r.to_string(), frac.to_string()])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Backend(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

struct Frame {
    x_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        let span = if self.x_max > 0.0 { self.x_max } else { 1.0 };
        MARGIN + (v / span) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN - v.clamp(0.0, 1.0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn svg_open(title: &str, x_label: &str, y_label: &str, x_max: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        WIDTH / 2.0
    );
    let (x0, y0, x1, y1) = (MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, MARGIN);
    let _ = writeln!(
        s,
        r#"<g class="axes" stroke="black"><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{x_label} (0 to {x_max:.3})</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{}" font-size="12" transform="rotate(-90 14 {})" text-anchor="middle">{y_label}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    s
}

fn legend(s: &mut String, idx: usize, name: &str) {
    let color = PALETTE[idx % PALETTE.len()];
    let y = MARGIN + 16.0 * idx as f64;
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{y}" font-size="11" fill="{color}">{name}</text>"#,
        WIDTH - MARGIN - 80.0
    );
}

fn budget_label(kind: BudgetKind) -> &'static str {
    match kind {
        BudgetKind::Iterations => "iterations",
        BudgetKind::Runtime => "runtime [s]",
    }
}

/// Median residue profiles: one shaded IQR polygon and one median path per
/// configuration.
pub fn profiles_to_svg(profiles: &[(String, Vec<ProfilePoint>)], kind: BudgetKind) -> String {
    let x_max = profiles
        .iter()
        .flat_map(|(_, p)| p.iter().map(|q| q.budget))
        .fold(0.0, f64::max);
    let frame = Frame { x_max };
    let mut s = svg_open("Median residue profile", budget_label(kind), "residue", x_max);
    for (idx, (name, points)) in profiles.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let upper = points.iter().map(|p| (frame.x(p.budget), frame.y(p.q3)));
        let lower = points.iter().rev().map(|p| (frame.x(p.budget), frame.y(p.q1)));
        let band: Vec<String> = upper
            .chain(lower)
            .map(|(x, y)| format!("{x:.2},{y:.2}"))
            .collect();
        let _ = writeln!(
            s,
            r#"<polygon class="iqr" data-config="{name}" points="{}" fill="{color}" fill-opacity="0.2" stroke="none"/>"#,
            band.join(" ")
        );
        let mut d = String::new();
        for (i, p) in points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{:.2},{:.2} ", frame.x(p.budget), frame.y(p.median));
        }
        let _ = writeln!(
            s,
            r#"<path class="median" data-config="{name}" d="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            d.trim_end()
        );
        legend(&mut s, idx, name);
    }
    s.push_str("</svg>\n");
    s
}

/// Residue distributions as step plots, residue on the x axis.
pub fn distributions_to_svg(dists: &[(String, Vec<(f64, f64)>)], budget: f64) -> String {
    let frame = Frame { x_max: 1.0 };
    let mut s = svg_open(
        &format!("Residue distribution at budget {budget}"),
        "residue",
        "fraction of problems",
        1.0,
    );
    for (idx, (name, cdf)) in dists.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut d = format!("M{:.2},{:.2} ", frame.x(0.0), frame.y(0.0));
        let mut prev = 0.0;
        for &(r, frac) in cdf {
            let _ = write!(d, "L{:.2},{:.2} ", frame.x(r), frame.y(prev));
            let _ = write!(d, "L{:.2},{:.2} ", frame.x(r), frame.y(frac));
            prev = frac;
        }
        let _ = write!(d, "L{:.2},{:.2}", frame.x(1.0), frame.y(prev));
        let _ = writeln!(
            s,
            r#"<path class="cdf" data-config="{name}" d="{d}" fill="none" stroke="{color}" stroke-width="2"/>"#
        );
        legend(&mut s, idx, name);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_record() -> RunTrace {
        let mut t = RunTrace::new("cpm", "e1", 3.0);
        t.push(TraceRecord {
            k: 0,
            t: 0.001,
            ub: 3.0,
            lb: -3.0,
            n_cuts: 1,
            tau: f64::INFINITY,
        });
        t
    }

    #[test]
    fn csv_has_header_and_row() {
        let csv = trace_to_csv(&one_record()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,t,ub,lb,n_cuts,tau");
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("0,0.001,3.0,-3.0,1,"));
    }

    #[test]
    fn csv_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let t = one_record();
        write_trace_csv(&t, &path).unwrap();
        let back = read_trace_csv(&path, "cpm", "e1", 3.0).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn json_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.json");
        let t = one_record();
        write_json(&t, &path).unwrap();
        assert_eq!(read_trace_json(&path).unwrap(), t);
    }

    #[test]
    fn io_error_names_path() {
        let err = write_text(Path::new("/nonexistent-dir/x.csv"), "").unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }
}
