//! Exact and numeric polynomial arithmetic.

pub mod cubic;
pub mod intpoly;
pub mod linear;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod rational_map;
pub mod roots;
pub mod ternary;

pub use cubic::solve_cubic;
pub use intpoly::IntPoly;
pub use linear::{det3_linear, LinearForm3, LinearMatrix3};
pub use poly::UniPoly;
pub use rational::{parse_rational, rational_to_f64, ExtReal};
pub use rational_map::RationalMap1;
pub use ternary::{monomial_index, Scalar, MONOMIALS, MONOMIAL_KEYS};
pub use roots::{isolate_real_roots, sturm_count_real_roots, RealRoot, DEFAULT_ROOT_TOL};

pub use num_complex::Complex64 as Complex;
pub use num_rational::BigRational;
