//! Summatory objects: `N_{D,d}(n)`, exact `F_{k,D,d}(x)` and its class
//! pieces, `β_k`, local Euler factors, Cohen numbers, averages and
//! q-expansions.

mod average;
mod beta;
mod cohen;
mod counts;
mod euler;
mod fsum;
mod qexp;

pub use average::{average_chain, average_dirichlet, average_exact, average_f, AverageMethod, AverageResult};
pub use beta::{beta_closed, c_k};
pub use cohen::{cohen_h, zeta_one_minus_2k};
pub use counts::{count_roots_mod, n_dd, n_dd_direct, roots_mod_4n, NddCounter};
pub use euler::{
    divisor_sum, euler_factor_both, euler_factor_closed_value, euler_factor_rhs, f_divisor_identity, local_data,
    LocalData, TruncatedSeries,
};
pub use fsum::{
    class_characters, class_sums, eval_f, eval_f_star, eval_f_sym, eval_f_unweighted, eval_f_with,
    for_each_positive_form, midpoint_average, sign_change_sums,
};
pub use qexp::{qexpansion, Coefficient, QExpansion};
