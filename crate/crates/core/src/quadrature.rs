//! Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Tolerances and refinement budget.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
    /// Number of equal pieces the interval is split into before adapting.
    pub initial_pieces: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            rel_tol: 1.0e-8,
            abs_tol: 1.0e-14,
            max_intervals: 20_000,
            initial_pieces: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kron += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Piece {
        a,
        b,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]` until the summed error estimate drops below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    let n0 = opts.initial_pieces.max(1);
    let width = (b - a) / n0 as f64;
    let mut heap: BinaryHeap<Piece> = (0..n0)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == n0 { b } else { lo + width };
            kronrod(&f, lo, hi)
        })
        .collect();

    loop {
        let (value, error): (f64, f64) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if !value.is_finite() {
            return Err(Error::Quadrature {
                achieved: f64::INFINITY,
                requested: opts.rel_tol,
            });
        }
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            return Ok(Integral {
                value,
                error,
                intervals: heap.len(),
            });
        }
        if heap.len() >= opts.max_intervals {
            let achieved = if value != 0.0 {
                error / value.abs()
            } else {
                error
            };
            return Err(Error::Quadrature {
                achieved,
                requested: opts.rel_tol,
            });
        }
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            let achieved = if value != 0.0 {
                error / value.abs()
            } else {
                error
            };
            return Err(Error::Quadrature {
                achieved,
                requested: opts.rel_tol,
            });
        }
        heap.push(kronrod(&f, worst.a, mid));
        heap.push(kronrod(&f, mid, worst.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x.powi(5) - 2.0 * x, 0.0, 2.0, Default::default()).unwrap();
        assert_relative_eq!(r.value, 64.0 / 6.0 - 4.0, max_relative = 1e-14);
    }

    #[test]
    fn oscillatory() {
        let t = 200.0;
        // two pieces per period; a 15-point rule cannot see finer oscillation
        let opts = QuadratureOptions {
            initial_pieces: 2600,
            ..Default::default()
        };
        let r = integrate(|x: f64| (t * x).cos() * (-x).exp(), 0.0, 40.0, opts).unwrap();
        // ∫₀^∞ e^{-x} cos(tx) dx = 1/(1+t²); the tail beyond 40 is ~e^-40
        assert_relative_eq!(r.value, 1.0 / (1.0 + t * t), max_relative = 1e-8);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, Default::default()).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-7);
    }

    #[test]
    fn reports_failure() {
        let opts = QuadratureOptions {
            max_intervals: 4,
            ..Default::default()
        };
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-6, PI, opts).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }
}
