//! Shared inputs for the criterion benches.

use hyperlattice::UpperHalfPoint;

/// A generic center off every elliptic point and every short geodesic.
pub fn generic_center() -> UpperHalfPoint {
    UpperHalfPoint::new(0.123, 1.37).expect("valid point")
}
