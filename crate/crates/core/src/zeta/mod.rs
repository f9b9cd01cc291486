//! Representation numbers, Epstein and Riemann zeta functions, Eisenstein
//! series and their geodesic periods, and Hecke's relation between them.

mod dirichlet;
mod eisenstein;
mod hecke;
mod repcount;

pub use dirichlet::{epstein_from_counts, epstein_zeta, riemann_zeta, DirichletTail};
pub use eisenstein::{
    eisenstein_period_numeric, eisenstein_raw, eisenstein_series, period_with, EisensteinValue, PeriodValue,
};
pub use hecke::{
    hecke_prefactor, hecke_relation_check, HeckeConfig, HeckeReport, EISENSTEIN_PERIOD_AT_HALF,
    EISENSTEIN_PERIOD_AT_HALF_NOTE,
};
pub use repcount::{rep_count, RepCount, RepCounter};
