//! Floating-point kernels for the concrete matrix groups.

pub mod cmat2;
pub mod mat2;
pub mod semidirect;

pub use cmat2::{
    exp_sl2c, hermitian_exp, hermitian_log, mobius_j, polar_decompose_sl2c, CMat2, JQuaternion,
};
pub use mat2::{
    exp_rk4_oracle, exp_sl2, iwasawa_decompose, lower_triangular, polar_decompose, sigma1,
    spd_log, Mat2,
};
pub use semidirect::{
    exp_semidirect, exp_semidirect_general, exp_semidirect_general_t, factor_pseudo_euclidean,
    g1_kernel, g2_kernel, ode_exp_oracle, Semidirect,
};
