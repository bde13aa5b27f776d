use std::io::Read;

use hesse_lab::curves::{CubicForm, RealCubic};
use hesse_lab::dynamics::ExtendedParam;
use hesse_lab::normal_forms::QSqrt3;
use hesse_lab::plot::Window;

use crate::commands::Failure;

pub fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// A real number: a rational, `p+q*sqrt3`, or a float literal.
pub fn real(s: &str) -> Result<f64, Failure> {
    if let Ok(q) = s.parse::<QSqrt3>() {
        return Ok(q.to_f64());
    }
    s.trim().parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| input(format!("not a real number: {s:?}")))
}

/// An element of `Q(sqrt3)` when the text is one.
pub fn exact(s: &str) -> Option<QSqrt3> {
    s.parse::<QSqrt3>().ok()
}

/// A Hesse parameter: exact when rational, a float otherwise.
pub fn param(s: &str) -> Result<ExtendedParam, Failure> {
    if let Ok(p) = ExtendedParam::parse(s) {
        return Ok(p);
    }
    real(s).map(ExtendedParam::Real)
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| input(format!("reading {path}: {e}")))
    }
}

pub fn cubic_file(path: &str) -> Result<CubicForm, Failure> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| input(format!("bad cubic form JSON: {e}")))
}

pub fn coeffs(s: &str) -> Result<RealCubic, Failure> {
    let vals: Vec<f64> = s.split(',').map(real).collect::<Result<_, _>>()?;
    let arr: [f64; 10] = vals.try_into().map_err(|_| input("expected ten coefficients"))?;
    RealCubic::new(arr).map_err(|e| input(e.to_string()))
}

pub fn window(s: &str) -> Result<Window, Failure> {
    let v: Vec<f64> = s.split(',').map(real).collect::<Result<_, _>>()?;
    match v[..] {
        [xmin, xmax, ymin, ymax] => Ok(Window { xmin, xmax, ymin, ymax }),
        _ => Err(input("window needs xmin,xmax,ymin,ymax")),
    }
}

/// Oracle budget: `HESSE_LAB_NMAX` clamped to `1..=N_MAX`.
pub fn budget() -> u32 {
    let max = hesse_lab::dynamics::N_MAX;
    std::env::var("HESSE_LAB_NMAX").ok().and_then(|v| v.trim().parse::<u32>().ok()).map_or(max, |n| n.clamp(1, max))
}
