//! Self-contained numerical kernels: standard normal functions and small
//! dense symmetric positive definite linear algebra.

mod linalg;
mod normal;

pub use linalg::{cholesky, inverse_spd, solve_spd, Matrix};
pub use normal::{
    std_normal_cdf, std_normal_inv_cdf, std_normal_ln_cdf, std_normal_ln_pdf, std_normal_pdf,
};
