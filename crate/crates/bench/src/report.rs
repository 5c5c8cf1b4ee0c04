use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use csv::{Terminator, WriterBuilder};

use crate::experiment::{sort_rows, ResultRow};
use crate::{BenchError, Result};

pub const CSV_HEADER: [&str; 6] = ["algorithm", "estimator", "n", "step", "quantile", "value"];

/// Writes `rows` as CSV, sorted by key, values with 17 significant digits.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut rows = rows.to_vec();
    sort_rows(&mut rows);
    let mut w = WriterBuilder::new()
        .terminator(Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &rows {
        if !r.value.is_finite() || !r.quantile.is_finite() {
            return Err(BenchError::Row {
                line: 0,
                reason: format!("non-finite value in {} n={}", r.spec(), r.n),
            });
        }
        w.write_record([
            r.algorithm.name().to_string(),
            r.estimator.name().to_string(),
            r.n.to_string(),
            r.step.map(|s| s.to_string()).unwrap_or_default(),
            format!("{:.16e}", r.quantile),
            format!("{:.16e}", r.value),
        ])?;
    }
    w.flush().map_err(|source| BenchError::Io {
        path: "csv output".into(),
        source,
    })?;
    Ok(())
}

/// Writes the CSV to `path`, replacing it only once the whole file is written.
pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(BenchError::NoRows);
    }
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    write_atomically(path, &buf)
}

fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| BenchError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut tmp = PathBuf::from(path);
    tmp.as_mut_os_string().push(".partial");
    fs::write(&tmp, bytes).map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRow>> {
    let file = fs::File::open(path).map_err(|source| BenchError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_csv(file)
}

pub fn parse_csv<R: std::io::Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_reader(input);
    if reader.headers()?.iter().ne(CSV_HEADER) {
        return Err(BenchError::Row {
            line: 1,
            reason: format!("expected header {}", CSV_HEADER.join(",")),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let bad = |reason: String| BenchError::Row { line, reason };
        let field = |i: usize| record.get(i).unwrap_or("");
        let num = |i: usize| -> Result<f64> {
            field(i)
                .parse()
                .map_err(|_| bad(format!("bad number `{}`", field(i))))
        };
        let step = match field(3) {
            "" => None,
            s => Some(s.parse().map_err(|_| bad(format!("bad step `{s}`")))?),
        };
        rows.push(ResultRow {
            algorithm: field(0).parse().map_err(|e| bad(format!("{e}")))?,
            estimator: field(1).parse().map_err(|e| bad(format!("{e}")))?,
            n: field(2)
                .parse()
                .map_err(|_| bad(format!("bad size `{}`", field(2))))?,
            step,
            quantile: num(4)?,
            value: num(5)?,
        });
    }
    Ok(rows)
}

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 220.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const MAX_POINTS: usize = 1500;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

type SeriesKey = (&'static str, &'static str, Option<usize>);

/// One curve: x positions with the value at every quantile level.
struct Series {
    label: String,
    points: BTreeMap<usize, BTreeMap<u64, f64>>,
}

/// Renders rows as an SVG chart: one median line and two shaded quantile
/// bands per series. Rows without steps are plotted against `n` on a log
/// axis; rows with steps against the step index.
pub fn render_svg(rows: &[ResultRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(BenchError::NoRows);
    }
    let profile = rows.iter().any(|r| r.step.is_some());
    let sizes: std::collections::BTreeSet<usize> = rows.iter().map(|r| r.n).collect();

    let mut series: BTreeMap<SeriesKey, Series> = BTreeMap::new();
    let mut levels: Vec<f64> = Vec::new();
    for r in rows {
        let key = (
            r.algorithm.name(),
            r.estimator.name(),
            profile.then_some(r.n),
        );
        let label = if profile && sizes.len() > 1 {
            format!("{} n={}", r.spec(), r.n)
        } else {
            r.spec().to_string()
        };
        let x = if profile { r.step.unwrap_or(0) } else { r.n };
        series
            .entry(key)
            .or_insert_with(|| Series {
                label,
                points: BTreeMap::new(),
            })
            .points
            .entry(x)
            .or_default()
            .insert(r.quantile.to_bits(), r.value);
        if !levels.contains(&r.quantile) {
            levels.push(r.quantile);
        }
    }
    levels.sort_by(f64::total_cmp);
    let mid = (0..levels.len())
        .min_by(|&a, &b| (levels[a] - 0.5).abs().total_cmp(&(levels[b] - 0.5).abs()))
        .unwrap_or(0);
    let bands: Vec<(f64, f64, f64)> = [(0, 0.15), (1, 0.3)]
        .into_iter()
        .filter(|&(i, _)| i < mid && levels.len() - 1 - i > mid)
        .map(|(i, opacity)| (levels[i], levels[levels.len() - 1 - i], opacity))
        .collect();

    let xs: Vec<f64> = series
        .values()
        .flat_map(|s| s.points.keys().map(|&x| x as f64))
        .collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.value).collect();
    let x_axis = Axis::new(&xs, !profile);
    let y_axis = Axis::new(&ys, false).padded(0.05);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + x_axis.fraction(x) * plot_w;
    let py = |y: f64| TOP + (1.0 - y_axis.fraction(y)) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );

    let x_ticks = if profile {
        x_axis.linear_ticks()
    } else {
        sizes.iter().map(|&n| n as f64).collect()
    };
    for t in x_ticks {
        let x = px(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y1:.2}" stroke="#dddddd"/><text x="{x:.2}" y="{ty:.2}" text-anchor="middle">{label}</text>"##,
            y0 = TOP,
            y1 = TOP + plot_h,
            ty = TOP + plot_h + 16.0,
            label = tick_label(t),
        );
    }
    for t in y_axis.linear_ticks() {
        let y = py(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{tx:.2}" y="{ty:.2}" text-anchor="end">{label}</text>"##,
            x0 = LEFT,
            x1 = LEFT + plot_w,
            tx = LEFT - 6.0,
            ty = y + 4.0,
            label = tick_label(t),
        );
    }
    let (x_title, y_title) = if profile {
        ("comparisons", "normalized Kendall tau distance")
    } else {
        ("n", "comparisons above lower bound (%)")
    };
    let _ = writeln!(
        svg,
        r#"<text x="{x:.2}" y="{y:.2}" text-anchor="middle">{x_title}</text>"#,
        x = LEFT + plot_w / 2.0,
        y = HEIGHT - 12.0,
    );
    let _ = writeln!(
        svg,
        r#"<text transform="translate(16 {y:.2}) rotate(-90)" text-anchor="middle">{y_title}</text>"#,
        y = TOP + plot_h / 2.0,
    );

    for (index, s) in series.values().enumerate() {
        let color = PALETTE[index % PALETTE.len()];
        let stride = s.points.len().div_ceil(MAX_POINTS).max(1);
        let last = s.points.len().saturating_sub(1);
        let kept: Vec<(&usize, &BTreeMap<u64, f64>)> = s
            .points
            .iter()
            .enumerate()
            .filter(|(i, _)| i % stride == 0 || *i == last)
            .map(|(_, p)| p)
            .collect();
        let at = |q: &BTreeMap<u64, f64>, level: f64| q.get(&level.to_bits()).copied();
        let _ = writeln!(svg, r#"<g id="series-{index}">"#);
        for &(lo, hi, opacity) in &bands {
            let upper = kept
                .iter()
                .filter_map(|(x, q)| Some((**x as f64, at(q, hi)?)));
            let lower = kept
                .iter()
                .rev()
                .filter_map(|(x, q)| Some((**x as f64, at(q, lo)?)));
            let pts = upper
                .chain(lower)
                .map(|(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                svg,
                r#"<polygon points="{pts}" fill="{color}" fill-opacity="{opacity}" stroke="none"/>"#
            );
        }
        let median = kept
            .iter()
            .filter_map(|(x, q)| Some((**x as f64, at(q, levels[mid])?)))
            .map(|(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            svg,
            r#"<polyline points="{median}" fill="none" stroke="{color}" stroke-width="1.5"/>"#
        );
        let ly = TOP + 10.0 + 18.0 * index as f64;
        let lx = LEFT + plot_w + 12.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{x2:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="3"/><text x="{tx:.2}" y="{ty:.2}">{label}</text>"#,
            x2 = lx + 20.0,
            tx = lx + 26.0,
            ty = ly + 4.0,
            label = escape(&s.label),
        );
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_plot(rows: &[ResultRow], path: &Path) -> Result<()> {
    write_atomically(path, render_svg(rows)?.as_bytes())
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn new(values: &[f64], log: bool) -> Self {
        let map = |v: f64| {
            if log {
                v.max(f64::MIN_POSITIVE).log10()
            } else {
                v
            }
        };
        let lo = values
            .iter()
            .copied()
            .map(map)
            .fold(f64::INFINITY, f64::min);
        let hi = values
            .iter()
            .copied()
            .map(map)
            .fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if lo < hi {
            (lo, hi)
        } else if lo.is_finite() {
            (lo - 1.0, lo + 1.0)
        } else {
            (0.0, 1.0)
        };
        Self { lo, hi, log }
    }

    fn padded(self, frac: f64) -> Self {
        let pad = (self.hi - self.lo) * frac;
        Self {
            lo: self.lo - pad,
            hi: self.hi + pad,
            ..self
        }
    }

    fn fraction(&self, v: f64) -> f64 {
        let v = if self.log {
            v.max(f64::MIN_POSITIVE).log10()
        } else {
            v
        };
        (v - self.lo) / (self.hi - self.lo)
    }

    /// Round tick values spanning a linear axis.
    fn linear_ticks(&self) -> Vec<f64> {
        let raw = (self.hi - self.lo) / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .into_iter()
            .map(|m| m * mag)
            .find(|&s| s >= raw)
            .unwrap_or(10.0 * mag);
        let mut t = (self.lo / step).ceil() * step;
        let mut ticks = Vec::new();
        while t <= self.hi + step * 1e-9 {
            ticks.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
            t += step;
        }
        ticks
    }
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
