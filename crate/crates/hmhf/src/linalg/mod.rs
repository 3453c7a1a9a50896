//! Sparse storage, direct factorization, saddle point solves and the
//! inf-sup estimator.

mod band;
mod infsup;
mod kkt;
mod sparse;
mod solve;

pub use infsup::estimate_inf_sup;
pub use kkt::{solve_kkt, KktSystem};
pub use sparse::CsrMatrix;
pub use solve::{residual_inf, solve_direct, LuFactor};
