//! Special functions: complex gamma, Gauss hypergeometric series, the
//! Huber transform of `f_X` and the sign properties of its leading
//! coefficient.

mod gamma;
mod huber;
mod hyp2f1;
mod ode;
mod quad;
mod signs;

pub use gamma::{complex_gamma, gamma, ln_gamma};
pub use huber::{
    a_product, g_function, g_gamma_it, huber_closed, huber_closed_approx, huber_main_coeff,
    huber_oracle, huber_oracle_lambda, huber_t0, re_g_gamma_it, HuberEval, SpectralParam,
    ORACLE_XMAX,
};
pub use hyp2f1::{gauss_2f1_minus_one, gauss_2f1_small};
pub use ode::{integrate, Tolerance};
pub use quad::{gauss_legendre, gauss_legendre_on};
pub use signs::{sign_lemma_check, sign_sample, step_grid, SignReport, SignSample};
