//! Contours of affine slices `f(x, y, 1) = 0` by marching squares, written
//! as SVG or CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::curves::RealCubic;
use crate::error::{Error, Result};

pub const MIN_RESOLUTION: usize = 16;
pub const MAX_RESOLUTION: usize = 4096;
pub const DEFAULT_RESOLUTION: usize = 512;
const SVG_WIDTH: f64 = 800.0;
const COLORS: [&str; 6] = ["#c0392b", "#2c5aa0", "#1e7d32", "#8e44ad", "#d35400", "#555555"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotFormat {
    Svg,
    Csv,
}

impl std::str::FromStr for PlotFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(PlotFormat::Svg),
            "csv" => Ok(PlotFormat::Csv),
            other => Err(Error::Parse(format!("unknown plot format {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn square(r: f64) -> Self {
        Window { xmin: -r, xmax: r, ymin: -r, ymax: r }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Layer {
    pub name: String,
    pub cubic: RealCubic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotSpec {
    pub layers: Vec<Layer>,
    pub window: Window,
    pub resolution: usize,
    pub format: PlotFormat,
}

impl PlotSpec {
    pub fn validate(&self) -> Result<()> {
        let w = &self.window;
        if !(w.xmin < w.xmax && w.ymin < w.ymax) || ![w.xmin, w.xmax, w.ymin, w.ymax].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput(format!("bad window {w:?}")));
        }
        if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&self.resolution) {
            return Err(Error::InvalidInput(format!(
                "resolution {} outside [{MIN_RESOLUTION}, {MAX_RESOLUTION}]",
                self.resolution
            )));
        }
        if self.layers.is_empty() {
            return Err(Error::InvalidInput("nothing to plot".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyline {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

/// A crossing lies on a grid edge: horizontal edges `(i, j)-(i+1, j)` and
/// vertical edges `(i, j)-(i, j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EdgeKey {
    H(usize, usize),
    V(usize, usize),
}

/// Contour polylines of `f(x, y, 1) = 0` over the window.
pub fn contour(f: &RealCubic, w: &Window, res: usize) -> Vec<Polyline> {
    let n = res + 1;
    let xs: Vec<f64> = (0..n).map(|i| w.xmin + (w.xmax - w.xmin) * i as f64 / res as f64).collect();
    let ys: Vec<f64> = (0..n).map(|j| w.ymin + (w.ymax - w.ymin) * j as f64 / res as f64).collect();
    let vals: Vec<f64> = (0..n * n).map(|k| f.eval([xs[k % n], ys[k / n], 1.0])).collect();
    let v = |i: usize, j: usize| vals[j * n + i];
    let pos = |x: f64| x > 0.0;

    let mut points: BTreeMap<EdgeKey, [f64; 2]> = BTreeMap::new();
    let mut point = |key: EdgeKey| -> EdgeKey {
        points.entry(key).or_insert_with(|| {
            let ((ia, ja), (ib, jb)) = match key {
                EdgeKey::H(i, j) => ((i, j), (i + 1, j)),
                EdgeKey::V(i, j) => ((i, j), (i, j + 1)),
            };
            let (va, vb) = (v(ia, ja), v(ib, jb));
            let t = if va == vb { 0.5 } else { va / (va - vb) };
            [xs[ia] + t * (xs[ib] - xs[ia]), ys[ja] + t * (ys[jb] - ys[ja])]
        });
        key
    };

    let mut segs: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for j in 0..res {
        for i in 0..res {
            let s = [pos(v(i, j)), pos(v(i + 1, j)), pos(v(i + 1, j + 1)), pos(v(i, j + 1))];
            let bottom = EdgeKey::H(i, j);
            let right = EdgeKey::V(i + 1, j);
            let top = EdgeKey::H(i, j + 1);
            let left = EdgeKey::V(i, j);
            let edges = [(bottom, s[0] != s[1]), (right, s[1] != s[2]), (top, s[2] != s[3]), (left, s[3] != s[0])];
            let crossing: Vec<EdgeKey> = edges.iter().filter(|e| e.1).map(|e| e.0).collect();
            match crossing.len() {
                2 => segs.push((point(crossing[0]), point(crossing[1]))),
                4 => {
                    let center = 0.25 * (v(i, j) + v(i + 1, j) + v(i + 1, j + 1) + v(i, j + 1));
                    if pos(center) == s[0] {
                        segs.push((point(bottom), point(right)));
                        segs.push((point(top), point(left)));
                    } else {
                        segs.push((point(bottom), point(left)));
                        segs.push((point(top), point(right)));
                    }
                }
                _ => {}
            }
        }
    }
    join(&segs, &points)
}

fn join(segs: &[(EdgeKey, EdgeKey)], points: &BTreeMap<EdgeKey, [f64; 2]>) -> Vec<Polyline> {
    let mut at: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (k, (a, b)) in segs.iter().enumerate() {
        at.entry(*a).or_default().push(k);
        at.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segs.len()];
    let mut out = Vec::new();
    let walk = |start: EdgeKey, used: &mut Vec<bool>| -> Option<Polyline> {
        let mut key = start;
        let mut pts = vec![points[&key]];
        loop {
            let Some(&s) = at[&key].iter().find(|&&s| !used[s]) else { break };
            used[s] = true;
            key = if segs[s].0 == key { segs[s].1 } else { segs[s].0 };
            pts.push(points[&key]);
        }
        (pts.len() > 1).then(|| Polyline { closed: key == start && pts.len() > 2, points: pts })
    };
    let ends: Vec<EdgeKey> = at.iter().filter(|(_, v)| v.len() == 1).map(|(k, _)| *k).collect();
    for k in ends {
        if let Some(p) = walk(k, &mut used) {
            out.push(p);
        }
    }
    for s in 0..segs.len() {
        if !used[s] {
            if let Some(p) = walk(segs[s].0, &mut used) {
                out.push(p);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerContour {
    pub name: String,
    pub polylines: Vec<Polyline>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotSummary {
    pub layers: Vec<(String, usize)>,
    pub empty: bool,
}

pub fn contours(spec: &PlotSpec) -> Result<Vec<LayerContour>> {
    spec.validate()?;
    Ok(spec
        .layers
        .iter()
        .map(|l| LayerContour { name: l.name.clone(), polylines: contour(&l.cubic, &spec.window, spec.resolution) })
        .collect())
}

pub fn summary(layers: &[LayerContour]) -> PlotSummary {
    PlotSummary {
        layers: layers.iter().map(|l| (l.name.clone(), l.polylines.len())).collect(),
        empty: layers.iter().all(|l| l.polylines.is_empty()),
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

pub fn to_csv(layers: &[LayerContour]) -> String {
    let mut out = String::from("layer,path,x,y\n");
    for l in layers {
        for (k, p) in l.polylines.iter().enumerate() {
            for q in &p.points {
                let _ = writeln!(out, "{},{},{},{}", l.name, k, num(q[0]), num(q[1]));
            }
        }
    }
    out
}

pub fn to_svg(spec: &PlotSpec, layers: &[LayerContour]) -> String {
    let w = &spec.window;
    let width = SVG_WIDTH;
    let height = SVG_WIDTH * (w.ymax - w.ymin) / (w.xmax - w.xmin);
    let sx = |x: f64| (x - w.xmin) / (w.xmax - w.xmin) * width;
    let sy = |y: f64| (w.ymax - y) / (w.ymax - w.ymin) * height;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(width),
        num(height),
        num(width),
        num(height)
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    for (k, l) in layers.iter().enumerate() {
        let _ = writeln!(
            out,
            "<g id=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\">",
            escape(&l.name),
            COLORS[k % COLORS.len()]
        );
        for p in &l.polylines {
            let mut d = String::new();
            for (i, q) in p.points.iter().enumerate() {
                let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(sx(q[0])), num(sy(q[1])));
            }
            if p.closed {
                d.push('Z');
            }
            let _ = writeln!(out, "<path d=\"{}\"/>", d.trim_end());
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders the spec in its format, with a summary of what was drawn.
pub fn render(spec: &PlotSpec) -> Result<(String, PlotSummary)> {
    let layers = contours(spec)?;
    let text = match spec.format {
        PlotFormat::Svg => to_svg(spec, &layers),
        PlotFormat::Csv => to_csv(&layers),
    };
    Ok((text, summary(&layers)))
}
