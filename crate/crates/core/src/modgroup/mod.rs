//! PSL(2,Z) elements, group balls and the classical counting function.

mod ball;
mod cache;
mod matrix;

pub use ball::{
    ball_enumerate, ball_visit, classical_count, classical_error_series, frobenius_sq_at_i,
    guarded_count, ClassicalRow, FrobeniusNorm, Threshold, GUARD,
};
pub use cache::{cache_load, cache_store, BallCache, CACHE_VERSION};
pub use matrix::GammaMatrix;
