//! Forward orbits of the parameter map with terminal classification.

use serde::Serialize;

use super::param::{step, ExtendedParam};
use crate::error::{Error, Result};

/// Rational states whose numerator and denominator together exceed this
/// many bits end the orbit as open.
pub const EXACT_BIT_CAP: u64 = 1 << 16;
pub const DEFAULT_ORBIT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Terminal {
    FixedMinus3 { at: usize },
    FixedInfinity { at: usize },
    Periodic { period: usize, at: usize },
    Open,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitRecord {
    pub start: ExtendedParam,
    pub states: Vec<ExtendedParam>,
    pub terminal: Terminal,
}

fn is_minus3(c: &ExtendedParam, tol: f64) -> bool {
    c.close_to(&ExtendedParam::from_int(-3), tol)
}

fn too_big(c: &ExtendedParam) -> bool {
    match c {
        ExtendedParam::Rational(q) => q.numer().bits() + q.denom().bits() > EXACT_BIT_CAP,
        _ => false,
    }
}

/// Iterates `step` from `c0` for at most `max_steps` steps.
pub fn orbit(c0: &ExtendedParam, max_steps: usize, tol: f64) -> Result<OrbitRecord> {
    if max_steps == 0 {
        return Err(Error::InvalidInput("max_steps must be at least 1".into()));
    }
    if let ExtendedParam::Real(x) = c0 {
        if !x.is_finite() {
            return Err(Error::InvalidInput("non-finite start".into()));
        }
    }
    let classify = |states: &[ExtendedParam]| -> Option<Terminal> {
        let i = states.len() - 1;
        let c = &states[i];
        if c.is_infinite() {
            return Some(Terminal::FixedInfinity { at: i });
        }
        if is_minus3(c, tol) {
            return Some(Terminal::FixedMinus3 { at: i });
        }
        states[..i].iter().rposition(|s| s.close_to(c, tol)).map(|j| Terminal::Periodic { period: i - j, at: j })
    };
    let mut states = vec![c0.clone()];
    if let Some(t) = classify(&states) {
        return Ok(OrbitRecord { start: c0.clone(), states, terminal: t });
    }
    for _ in 0..max_steps {
        let next = step(states.last().unwrap());
        let stop = too_big(&next);
        states.push(next);
        if let Some(t) = classify(&states) {
            return Ok(OrbitRecord { start: c0.clone(), states, terminal: t });
        }
        if stop {
            break;
        }
    }
    Ok(OrbitRecord { start: c0.clone(), states, terminal: Terminal::Open })
}
