//! Chebyshev–Gauss–Lobatto collocation blocks: nodes mapped to a subinterval
//! and the dense differentiation matrices on them.

use super::SpectralError;
use faer::Mat;
use std::f64::consts::PI;

/// Collocation nodes and differentiation matrices on one subinterval.
#[derive(Debug, Clone)]
pub struct ChebBlock {
    /// Polynomial order; the block carries `n + 1` nodes.
    pub n: usize,
    /// Nodes in ascending order, `nodes[0] = a`, `nodes[n] = b`.
    pub nodes: Vec<f64>,
    /// First-derivative matrix on the physical nodes.
    pub d1: Mat<f64>,
    /// Second-derivative matrix, `d1 * d1`.
    pub d2: Mat<f64>,
}

/// Build a collocation block of order `n` on `[a, b]`.
pub fn cheb_block(n: usize, interval: (f64, f64)) -> Result<ChebBlock, SpectralError> {
    let (a, b) = interval;
    if n < 2 {
        return Err(SpectralError::OrderTooSmall(n));
    }
    assert!(b > a, "empty interval");

    // Ascending Gauss-Lobatto nodes on the reference interval.
    let xr: Vec<f64> = (0..=n).map(|j| -(j as f64 * PI / n as f64).cos()).collect();
    let nodes: Vec<f64> = xr
        .iter()
        .map(|&x| 0.5 * (a + b) + 0.5 * (b - a) * x)
        .collect();

    // Barycentric weights: w_j = (-1)^j, halved at the endpoints.
    let w: Vec<f64> = (0..=n)
        .map(|j| {
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n {
                0.5 * s
            } else {
                s
            }
        })
        .collect();

    let scale = 2.0 / (b - a);
    let mut d1 = Mat::<f64>::zeros(n + 1, n + 1);
    for i in 0..=n {
        let mut row_sum = 0.0;
        for j in 0..=n {
            if i != j {
                let v = (w[j] / w[i]) / (xr[i] - xr[j]) * scale;
                d1[(i, j)] = v;
                row_sum += v;
            }
        }
        // Negative-sum trick: exact derivative of constants.
        d1[(i, i)] = -row_sum;
    }
    let d2 = &d1 * &d1;
    Ok(ChebBlock { n, nodes, d1, d2 })
}
