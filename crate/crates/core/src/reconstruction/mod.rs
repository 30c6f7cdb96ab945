//! Recovering the transformed series from linking values, and independent
//! fixed-point oracles for small-degree invariants.

mod linking;
mod oracle;
mod solve;

pub use linking::{
    linking_values_from_resolution, linking_values_from_splitting, omega_x_poles, resolution_rank, LinkingValueTable,
    ResolutionTerm,
};
pub use oracle::{oracle_degree_one_graphs, oracle_degree_two, oracle_line_count};
pub use solve::{solve_linear_model, solve_linear_model_capped, DegreeReport, Reconstruction};
