use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Every variant maps to a precondition or contract failure named in the
/// operation docs; the CLI turns them into stable exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid interval: lower bound must be below upper bound")]
    InvalidInterval,
    #[error("leading coefficient of the cubic vanishes")]
    DegenerateLeadingCoefficient,
    #[error("the Hessian determinant vanishes identically")]
    IdenticallyZeroHessian,
    #[error("cubic form has all coefficients zero")]
    ZeroCubic,
    #[error("conic is not degenerate (|det| = {det:e} exceeds {bound:e})")]
    NotDegenerate { det: f64, bound: f64 },
    #[error("conic matrix is zero")]
    RankZero,
    #[error("degenerate conic splits into a complex-conjugate line pair")]
    ComplexLinePair,
    #[error("line is a component of the cubic")]
    LineIsComponent,
    #[error("zero linear form")]
    ZeroLine,
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("singular halving input: {0}")]
    SingularInput(String),
    #[error("pole at x0=0")]
    PoleAtZero,
    #[error("point is not on the Hesse derivative (residual {0:e})")]
    NotOnHesseDerivative(f64),
    #[error("point is not on the curve (residual {0:e})")]
    NotOnCurve(f64),
    #[error("oracle budget exceeded: n = {n} > {max}")]
    BudgetExceeded { n: u32, max: u32 },
    #[error("loop length {0} is not a valid even length")]
    NotEven(u32),
    #[error("invalid length n = {0}")]
    InvalidLength(u32),
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
