use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use hesse_lab::algebra::Complex as Complex64;
use hesse_lab::curves::RealCubic;
use hesse_lab::dynamics::{
    self, backward_growth_witness, count_table, enumerate_chains, enumerate_loops_with, table_to_csv, table_to_text,
    ChainTarget, CountReport, CountRow, ExtendedParam, LoopMode, Oracle,
};
use hesse_lab::elliptic::{point_distance, EPoint, EabCurve};
use hesse_lab::halving_geometry::{verify_theorem7, GammaAB, Status};
use hesse_lab::normal_forms::{self, QSqrt3, WnfParams};
use hesse_lab::plot::{self, Layer, PlotFormat, PlotSpec};
use hesse_lab::Error;

use crate::parse;
use crate::{ChainsArgs, ConvertArgs, ConvertTo, CountsArgs, DeriveArgs, HalveArgs, LoopsArgs, OrbitArgs, PlotArgs, VerifyArgs};

/// Residual bound for `2 Q = -P` reported by `halve`.
const HALVE_TOL: f64 = 1e-7;

/// Why a command failed; each kind has a fixed exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Precondition(String),
    Verification(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Verification(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::Parse(_) | Error::InvalidInput(_) | Error::InvalidInterval => Failure::Input(m),
            _ => Failure::Precondition(m),
        }
    }
}

type Out = Result<(), Failure>;

/// Writes to stdout; a closed pipe ends output quietly.
fn write_out(text: &str) -> Out {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Input(format!("writing stdout: {e}"))),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(v: &T) -> Out {
    let s = serde_json::to_string(v).map_err(|e| Failure::Input(e.to_string()))?;
    write_out(&(s + "\n"))
}

pub fn derive(a: DeriveArgs) -> Out {
    if a.iterations == 0 {
        return Err(parse::input("--iterations must be at least 1"));
    }
    if let Some(c) = a.hesse_c {
        let c0 = parse::param(&c)?;
        let mut seq = Vec::new();
        let mut cur = c0.clone();
        for _ in 0..a.iterations {
            cur = dynamics::step(&cur);
            seq.push(cur.clone());
        }
        #[derive(Serialize)]
        struct Sequence {
            c0: ExtendedParam,
            sequence: Vec<ExtendedParam>,
        }
        return emit(&Sequence { c0, sequence: seq });
    }
    let path = a.input.ok_or_else(|| parse::input("give --input or --hesse-c"))?;
    let mut f = parse::cubic_file(&path)?;
    #[derive(Serialize)]
    struct Step<'a> {
        iteration: u32,
        cubic: &'a hesse_lab::curves::CubicForm,
    }
    for i in 1..=a.iterations {
        f = f.hesse_derivative()?;
        emit(&Step { iteration: i, cubic: &f })?;
    }
    Ok(())
}

pub fn counts(a: CountsArgs) -> Out {
    let budget = parse::budget();
    if a.oracle_max > budget {
        return Err(Error::BudgetExceeded { n: a.oracle_max, max: budget }.into());
    }
    let rows = count_table(a.max_n, a.oracle_max.min(a.max_n), &mut Oracle::new(budget))?;
    match a.format.as_str() {
        "text" => write_out(&table_to_text(&rows))?,
        "csv" => write_out(&table_to_csv(&rows)?)?,
        "json" => {
            #[derive(Serialize)]
            struct Line<'a> {
                #[serde(flatten)]
                row: &'a CountRow,
                reports: Vec<CountReport>,
            }
            for r in &rows {
                emit(&Line { row: r, reports: r.reports() })?;
            }
        }
        other => return Err(parse::input(format!("unknown format {other:?}"))),
    }
    if let Some(path) = a.csv {
        std::fs::write(&path, table_to_csv(&rows)?).map_err(|e| parse::input(format!("writing {path}: {e}")))?;
    }
    let bad: Vec<u32> = rows.iter().filter(|r| r.agree == Some(false)).map(|r| r.n).collect();
    if !bad.is_empty() {
        return Err(Failure::Verification(format!("oracle disagrees with the closed forms at n = {bad:?}")));
    }
    Ok(())
}

fn point_on(curve: &EabCurve, x0: f64, negative: bool) -> EPoint {
    let p = curve.point_at(Complex64::new(x0, 0.0));
    if negative {
        curve.negate(&p)
    } else {
        p
    }
}

pub fn verify_thm7(a: VerifyArgs) -> Out {
    let g = GammaAB::new(parse::real(&a.a)?, parse::real(&a.b)?)?;
    let curve = g.curve()?;
    let x0 = match a.x0 {
        Some(s) => parse::real(&s)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            (0..10_000)
                .map(|_| rng.gen_range(-10.0..10.0))
                .find(|&x: &f64| x.abs() > 0.1 && curve.rhs(Complex64::new(x, 0.0)).re > 1e-6)
                .ok_or_else(|| Failure::Precondition("no real point found on the curve".into()))?
        }
    };
    if x0 == 0.0 {
        return Err(Error::PoleAtZero.into());
    }
    let p = point_on(&curve, x0, a.negative_y);
    let report = verify_theorem7(&g, &p, a.tol)?;
    emit(&report)?;
    if report.status == Status::Fail {
        let failed: Vec<&str> = report.residuals.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        return Err(Failure::Verification(format!("failed checks: {}", failed.join(", "))));
    }
    Ok(())
}

fn hesse_cubic(c: &ExtendedParam) -> Result<RealCubic, Failure> {
    let mut k = [0.0; 10];
    k[4] = 1.0;
    if !c.is_infinite() {
        k[0] = 1.0;
        k[6] = 1.0;
        k[9] = 1.0;
        k[4] = c.to_f64();
    }
    Ok(RealCubic::new(k)?)
}

pub fn plot(a: PlotArgs) -> Out {
    let cubic = if let Some(c) = &a.hesse_c {
        hesse_cubic(&parse::param(c)?)?
    } else if let Some(c) = &a.d3 {
        normal_forms::hesse_to_d3(parse::real(c)?)?
    } else if let Some(k) = &a.coeffs {
        parse::coeffs(k)?
    } else if let Some(path) = &a.input {
        parse::cubic_file(path)?.to_real()
    } else {
        return Err(parse::input("give one of --hesse-c, --d3, --coeffs, --input"));
    };
    let mut layers = vec![Layer { name: "curve".into(), cubic }];
    if a.with_derivative {
        layers.push(Layer { name: "derivative".into(), cubic: cubic.hesse_derivative()? });
    }
    let format: PlotFormat = a.format.parse()?;
    let spec = PlotSpec { layers, window: parse::window(&a.window)?, resolution: a.resolution, format };
    let (text, summary) = plot::render(&spec)?;
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| parse::input(format!("writing {path}: {e}")))?;
            emit(&summary)?;
        }
        None => write_out(&text)?,
    }
    if summary.empty {
        return Err(parse::input("empty contour in the window; header written"));
    }
    Ok(())
}

/// Enumeration errors other than budget and length are failed cross-checks.
fn enumeration_failure(e: Error) -> Failure {
    match e {
        Error::InvalidInput(m) => Failure::Verification(m),
        other => other.into(),
    }
}

pub fn loops(a: LoopsArgs) -> Out {
    let budget = parse::budget();
    let mode = match a.mode.as_deref() {
        Some("exact") => LoopMode::Exact,
        Some("float") => LoopMode::Float,
        Some(other) => return Err(parse::input(format!("unknown mode {other:?}"))),
        None if a.n <= budget => LoopMode::Exact,
        None => LoopMode::Float,
    };
    let cycles = enumerate_loops_with(a.n, mode, &mut Oracle::new(budget)).map_err(enumeration_failure)?;
    #[derive(Serialize)]
    struct Line<'a> {
        n: u32,
        values: &'a [f64],
        closing_error: f64,
    }
    for c in &cycles {
        emit(&Line { n: a.n, values: &c.values, closing_error: c.closing_error() })?;
    }
    Ok(())
}

pub fn chains(a: ChainsArgs) -> Out {
    if let Some(bound) = a.witness {
        return emit(&backward_growth_witness(bound)?);
    }
    let target: ChainTarget = a.target.parse()?;
    let n = a.n.ok_or_else(|| parse::input("give --n or --witness"))?;
    let budget = parse::budget();
    if n > budget {
        return Err(Error::BudgetExceeded { n, max: budget }.into());
    }
    let starts = enumerate_chains(target, n).map_err(enumeration_failure)?;
    #[derive(Serialize)]
    struct Line {
        target: ChainTarget,
        n: u32,
        start: f64,
    }
    for start in starts {
        emit(&Line { target, n, start })?;
    }
    Ok(())
}

pub fn orbit(a: OrbitArgs) -> Out {
    let c0 = parse::param(&a.c0)?;
    emit(&dynamics::orbit(&c0, a.max_steps, a.tol)?)
}

pub fn halve(a: HalveArgs) -> Out {
    let curve = EabCurve::real(parse::real(&a.a)?, parse::real(&a.b)?)?;
    let p = point_on(&curve, parse::real(&a.x0)?, a.negative_y);
    let target = curve.negate(&p);
    #[derive(Serialize)]
    struct Line<'a> {
        label: &'a str,
        point: EPoint,
        residual: f64,
        status: Status,
    }
    let mut failed = 0;
    for (label, q) in ["Q11", "Q12", "Q21", "Q22"].iter().zip(curve.halve(&p)?) {
        let residual = point_distance(&curve.double(&q), &target);
        let status = if residual <= HALVE_TOL { Status::Pass } else { Status::Fail };
        failed += (status == Status::Fail) as usize;
        emit(&Line { label, point: q, residual, status })?;
    }
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} halves fail 2Q = -P")));
    }
    Ok(())
}

pub fn convert(a: ConvertArgs) -> Out {
    match a.to {
        ConvertTo::Wnf { q } => {
            #[derive(Serialize)]
            struct Wnf {
                exact: Option<WnfParams<QSqrt3>>,
                approx: WnfParams<f64>,
            }
            match parse::exact(&q) {
                Some(qe) => {
                    let exact = normal_forms::hesse_to_wnf(&qe)?;
                    emit(&Wnf { approx: exact.to_f64(), exact: Some(exact) })
                }
                None => emit(&Wnf { exact: None, approx: normal_forms::hesse_to_wnf(&parse::real(&q)?)? }),
            }
        }
        ConvertTo::Q { c } => {
            #[derive(Serialize)]
            struct Qs {
                c: f64,
                q: Vec<f64>,
            }
            let c = parse::real(&c)?;
            emit(&Qs { c, q: normal_forms::wnf_q_from_c(c)? })
        }
        ConvertTo::D3 { c } => {
            #[derive(Serialize)]
            struct D3 {
                exact: Option<Vec<QSqrt3>>,
                cubic: RealCubic,
            }
            let exact = match parse::exact(&c) {
                Some(ce) => Some(normal_forms::hesse_to_d3_in(&ce)?.to_vec()),
                None => None,
            };
            emit(&D3 { exact, cubic: normal_forms::hesse_to_d3(parse::real(&c)?)? })
        }
        ConvertTo::Loop2 => {
            let r = normal_forms::wnf_loop2_report()?;
            emit(&r)?;
            if !r.pass {
                return Err(Failure::Verification("the length-two loop does not close".into()));
            }
            Ok(())
        }
    }
}
