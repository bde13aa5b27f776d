//! Hesse derivatives of plane cubic curves and the dynamics they induce.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`] exact big-rational polynomials, Sturm chains, continued
//!   fraction root isolation, Cardano's cubic formula and determinants of
//!   matrices of linear forms.
//! * [`curves`] ternary cubic forms, Hesse matrices, Hesse derivatives,
//!   polar conics and their splitting into line pairs.
//! * [`elliptic`] the curves `y^2 = x^3 + a x^2 + b x`, their group law and
//!   the four-way halving formulas.
//! * [`halving_geometry`] the line pair of a polar conic at a point of the
//!   Hesse derivative and how it carries the halving points.
//! * [`dynamics`] the map `c -> -(108 + c^3) / (3 c^2)` on Hesse-form
//!   parameters: counting sequences, exact oracles, chains and loops.
//! * [`normal_forms`] parameter maps to Weierstrass-type and D3-symmetric
//!   forms, with exact arithmetic in Q(sqrt 3).
//! * [`plot`] marching-squares contours of affine slices to SVG/CSV.

pub mod algebra;
pub mod curves;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod halving_geometry;
pub mod normal_forms;
pub mod plot;

pub use error::{Error, Result};
