//! Dormand–Prince 5(4) integrator with local-extrapolation step control.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights (equal to the last row of `A`).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Difference between fifth- and fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

/// Integrates `y' = f(t, y)` from `t0` to `t1 >= t0`, returning `y(t1)`.
pub fn integrate<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    t1: f64,
    y0: [f64; N],
    tol: Tolerance,
) -> Result<[f64; N]> {
    if t1 < t0 {
        return Err(Error::Domain("integration interval reversed".into()));
    }
    if t1 == t0 {
        return Ok(y0);
    }
    let span = t1 - t0;
    let mut t = t0;
    let mut y = y0;
    let mut h = (span * 1e-3).min(1e-2);
    let mut k = [[0.0; N]; 7];
    k[0] = f(t, &y);
    let mut steps = 0usize;
    while t < t1 {
        steps += 1;
        if steps > 10_000_000 {
            return Err(Error::NonConvergence("ODE step budget exhausted".into()));
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        for s in 1..7 {
            let mut ys = y;
            for (i, v) in ys.iter_mut().enumerate() {
                for j in 0..s {
                    *v += h * A[s][j] * k[j][i];
                }
            }
            k[s] = f(t + C[s] * h, &ys);
        }
        let mut ynew = y;
        let mut err = 0.0f64;
        for i in 0..N {
            let mut inc = 0.0;
            let mut e = 0.0;
            for s in 0..7 {
                inc += B5[s] * k[s][i];
                e += E[s] * k[s][i];
            }
            ynew[i] = y[i] + h * inc;
            let scale = tol.atol + tol.rtol * y[i].abs().max(ynew[i].abs());
            err = err.max((h * e).abs() / scale);
        }
        if err <= 1.0 {
            t = if last { t1 } else { t + h };
            y = ynew;
            k[0] = k[6];
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h < span * 1e-15 {
            return Err(Error::NonConvergence("ODE step size underflow".into()));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let tol = Tolerance {
            rtol: 1e-12,
            atol: 1e-14,
        };
        let y = integrate(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, 10.0, [1.0, 0.0], tol).unwrap();
        assert!((y[0] - 10f64.cos()).abs() < 1e-10);
        assert!((y[1] + 10f64.sin()).abs() < 1e-10);
    }

    #[test]
    fn exponential_growth() {
        let tol = Tolerance {
            rtol: 1e-12,
            atol: 0.0,
        };
        let y = integrate(|_, y: &[f64; 1]| [y[0]], 0.0, 5.0, [1.0], tol).unwrap();
        assert!((y[0] / 5f64.exp() - 1.0).abs() < 1e-10);
    }
}
