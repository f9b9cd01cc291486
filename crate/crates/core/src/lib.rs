//! Hyperbolic lattice point counting for the modular group, restricted to
//! hyperbolic conjugacy classes, together with the special functions and
//! arithmetic needed to study its error terms.

pub mod conjcls;
pub mod error;
pub mod hypgeom;
pub mod modgroup;
pub mod report;
pub mod specfun;
pub mod xlab;
pub mod zeta;

pub use conjcls::{make_class, ConjClass, QuadForm};
pub use error::{Error, Result};
pub use hypgeom::{RealMatrix2, UpperHalfPoint};
pub use modgroup::GammaMatrix;
pub use num_complex::Complex64;
