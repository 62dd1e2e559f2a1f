//! CSV, JSON and SVG writers.

use std::fmt::Write as _;

use quantum_domino::metrics::{PeakReport, PolarizationSeries, Snapshot};
use serde::Serialize;

pub const SERIES_HEADER: &str = "tau,total_polarization,delta_p";
pub const SNAPSHOT_HEADER: &str = "site,polarization";
pub const PEAK_HEADER: &str = "n_sites,tau_star,delta_p_star,alpha,contrast";

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn num(x: f64) -> String {
    format!("{}", round12(x))
}

pub fn series_csv(s: &PolarizationSeries) -> String {
    let mut out = format!("{SERIES_HEADER}\n");
    for i in 0..s.tau_grid.len() {
        writeln!(
            out,
            "{},{},{}",
            num(s.tau_grid[i]),
            num(s.total_p[i]),
            num(s.delta_p[i])
        )
        .unwrap();
    }
    out
}

pub fn snapshot_csv(snap: &Snapshot) -> String {
    let mut out = format!("{SNAPSHOT_HEADER}\n");
    for (i, p) in snap.sites.iter().enumerate() {
        writeln!(out, "{},{}", i + 1, num(*p)).unwrap();
    }
    out
}

pub fn peaks_csv(reports: &[PeakReport]) -> String {
    let mut out = format!("{PEAK_HEADER}\n");
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n_sites,
            num(r.tau_star),
            num(r.delta_p_star),
            num(r.alpha),
            num(r.contrast)
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct Manifest {
    n_sites: usize,
    omega1: f64,
    engine: String,
    tool_version: &'static str,
}

impl Manifest {
    fn new(s: &PolarizationSeries) -> Self {
        Self {
            n_sites: s.n_sites,
            omega1: round12(s.omega1),
            engine: s.engine.tag().to_string(),
            tool_version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Serialize)]
struct SnapshotJson {
    tau: f64,
    polarization: Vec<f64>,
}

#[derive(Serialize)]
struct SeriesJson {
    manifest: Manifest,
    tau: Vec<f64>,
    total_polarization: Vec<f64>,
    delta_p: Vec<f64>,
    snapshots: Vec<SnapshotJson>,
}

fn rounded(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(round12).collect()
}

pub fn series_json(s: &PolarizationSeries) -> String {
    let doc = SeriesJson {
        manifest: Manifest::new(s),
        tau: rounded(&s.tau_grid),
        total_polarization: rounded(&s.total_p),
        delta_p: rounded(&s.delta_p),
        snapshots: s
            .snapshots
            .iter()
            .map(|snap| SnapshotJson {
                tau: round12(snap.tau),
                polarization: rounded(&snap.sites),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("series serializes") + "\n"
}

#[derive(Serialize)]
struct PeakJson {
    n_sites: usize,
    tau_star: f64,
    delta_p_star: f64,
    alpha: f64,
    contrast: f64,
}

#[derive(Serialize)]
struct PeaksJson {
    tool_version: &'static str,
    engine: String,
    omega1: f64,
    peaks: Vec<PeakJson>,
}

pub fn peaks_json(reports: &[PeakReport], engine: &str, omega1: f64) -> String {
    let doc = PeaksJson {
        tool_version: env!("CARGO_PKG_VERSION"),
        engine: engine.to_string(),
        omega1: round12(omega1),
        peaks: reports
            .iter()
            .map(|r| PeakJson {
                n_sites: r.n_sites,
                tau_star: round12(r.tau_star),
                delta_p_star: round12(r.delta_p_star),
                alpha: round12(r.alpha),
                contrast: round12(r.contrast),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("peaks serialize") + "\n"
}

/// Static line plot of `ys` against `xs`: one polyline, two axes, labels.
pub fn svg_plot(xs: &[f64], ys: &[f64], title: &str, x_label: &str, y_label: &str) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 60.0;
    let range = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 1.0, lo + 1.0)
        }
    };
    let (x0, x1) = range(xs);
    let (y0, y1) = range(ys);
    let px = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let py = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let points: Vec<String> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<line x1="{M}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>"#,
        b = H - M,
        r = W - M
    )
    .unwrap();
    writeln!(
        out,
        r#"<line x1="{M}" y1="{M}" x2="{M}" y2="{b}" stroke="black"/>"#,
        b = H - M
    )
    .unwrap();
    let tick = |v: f64| format!("{}", round12(v));
    writeln!(
        out,
        r#"<text x="{M}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        H - M + 16.0,
        tick(x0)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        W - M,
        H - M + 16.0,
        tick(x1)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{}</text>"#,
        M - 6.0,
        H - M,
        tick(y0)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{}</text>"#,
        M - 6.0,
        M + 4.0,
        tick(y1)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">{x_label}</text>"#,
        W / 2.0,
        H - 16.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="18" y="{c}" font-size="14" text-anchor="middle" transform="rotate(-90 18 {c})">{y_label}</text>"#,
        c = H / 2.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="28" font-size="16" text-anchor="middle">{title}</text>"#,
        W / 2.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        points.join(" ")
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

pub fn series_svg(s: &PolarizationSeries) -> String {
    let title = format!("N = {}, {}", s.n_sites, s.engine.tag());
    svg_plot(&s.tau_grid, &s.delta_p, &title, "ω₁t", "ΔP")
}

pub fn snapshot_svg(snap: &Snapshot) -> String {
    let sites: Vec<f64> = (1..=snap.sites.len()).map(|i| i as f64).collect();
    svg_plot(
        &sites,
        &snap.sites,
        &format!("ω₁t = {}", round12(snap.tau)),
        "site",
        "polarization",
    )
}

/// Parses a series CSV back into `(tau, total, delta)` columns.
#[cfg(test)]
pub fn parse_series_csv(text: &str) -> Result<Vec<[f64; 3]>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(SERIES_HEADER) {
        return Err("missing series header".into());
    }
    lines
        .map(|line| {
            let cols = line
                .split(',')
                .map(|c| c.parse::<f64>().map_err(|e| format!("{line}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            <[f64; 3]>::try_from(cols).map_err(|_| format!("{line}: expected 3 columns"))
        })
        .collect()
}
