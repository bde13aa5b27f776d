//! The parameter map of the Hesse form and the real dynamics of
//! `h(x) = (a + x^3) / (b x^2)`.

mod chains;
mod counts;
mod hmap;
mod loops;
mod oracle;
mod orbit;
mod param;
mod table;

pub use chains::{backward_growth_witness, enumerate_chains, steps_to_target, GrowthWitness, REACH_TOL};
pub use counts::{
    count_chains, count_critical_points, count_fixed_points, count_loops, count_nontrivial_fixed_points, count_zeros,
    loop_count_bounds, loop_count_formula, mobius, ChainTarget,
};
pub use hmap::{h_eval, preimages, HMapParams, Preimage, PREIMAGE_IMAG_TOL};
pub use loops::{enumerate_loops, enumerate_loops_with, Cycle, LoopMode, CLOSE_TOL, FLOAT_NMAX};
pub use oracle::{exact_iterate_value, oracle_count, Oracle, OracleKind, N_MAX};
pub use orbit::{orbit, OrbitRecord, Terminal, DEFAULT_ORBIT_TOL, EXACT_BIT_CAP};
pub use param::{step, step_f64, ExtendedParam};
pub use table::{closed_form, count_table, table_to_csv, table_to_text, CountReport, CountRow};
