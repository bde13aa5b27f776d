use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for projective point equality.
pub const POINT_TOL: f64 = 1e-9;

/// A point of the real projective plane.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProjPoint {
    pub coords: [f64; 3],
}

impl ProjPoint {
    pub fn new(coords: [f64; 3]) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite point coordinate".into()));
        }
        if coords.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidInput("projective point cannot be zero".into()));
        }
        Ok(ProjPoint { coords })
    }

    /// The point `(x : y : 1)`.
    pub fn affine(x: f64, y: f64) -> Self {
        ProjPoint { coords: [x, y, 1.0] }
    }

    /// Representative whose largest-magnitude coordinate equals one.
    pub fn normalized(&self) -> [f64; 3] {
        let k = (0..3).max_by(|&i, &j| self.coords[i].abs().total_cmp(&self.coords[j].abs())).unwrap();
        let s = self.coords[k];
        self.coords.map(|c| c / s)
    }

    /// Affine chart `z = 1`, if the point is not at infinity.
    pub fn to_affine(&self) -> Option<(f64, f64)> {
        let n = self.normalized();
        if n[2].abs() < 1e-12 {
            None
        } else {
            Some((n[0] / n[2], n[1] / n[2]))
        }
    }

    pub fn distance(&self, other: &ProjPoint) -> f64 {
        let a = self.normalized();
        let b = other.normalized();
        a.iter().zip(b.iter()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
    }

    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, POINT_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_up_to_scale() {
        let p = ProjPoint::new([1.0, -2.0, 4.0]).unwrap();
        let q = ProjPoint::new([-0.5, 1.0, -2.0]).unwrap();
        assert_eq!(p, q);
        assert_ne!(p, ProjPoint::affine(0.25, -0.5001));
        assert!(ProjPoint::new([0.0; 3]).is_err());
        assert_eq!(ProjPoint::new([0.0, 1.0, 0.0]).unwrap().to_affine(), None);
    }
}
