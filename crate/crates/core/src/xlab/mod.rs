//! Experiments: error series, radial mean values, averages along the
//! closed geodesic, and evaluation of supplied spectral data.

mod average;
mod meanvalue;
mod series;
mod spectral;

pub use average::{
    discrete_average, geodesic_average, node_average, DiscreteAverage, DiscreteRow, GeodesicAverage, GeodesicRow,
    SignStats,
};
pub use meanvalue::{mean_value, mean_value_from_counter, t_grid, MeanMode, MeanValueCurve, COSH_MAX_STEP};
pub use series::{
    error_series, linear_grid, log_grid, validate_series, CountRow, CountSeries, Validation,
};
pub use spectral::{spectral_expansion_eval, SpectralCoeffFile, SpectralRow, SpectralSeries};
