//! Adaptive Dormand–Prince 5(4) integration for the small smooth systems used
//! by the Riccati and absorbing-layer modules. State vectors are flat `f64`
//! slices; complex systems are integrated as interleaved real pairs.

// Dormand-Prince coefficients (ode45 tableau).
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
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
// 5th-order solution weights equal the last A row (FSAL); these are the
// embedded 4th-order weights for the error estimate.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate `y' = f(x, y)` from `x0` to `x1` (forward only, `x1 > x0`).
///
/// `rhs(x, y, dy)` writes the derivative into `dy`. Returns the final state.
/// Panics if step-size control underflows, which does not happen for the
/// smooth non-stiff systems this crate integrates.
pub fn integrate<F>(rhs: F, y0: &[f64], x0: f64, x1: f64, rtol: f64, atol: f64) -> Vec<f64>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    assert!(x1 > x0, "integration span must be forward");
    let dim = y0.len();
    let span = x1 - x0;
    let mut x = x0;
    let mut y = y0.to_vec();
    let mut h = span / 64.0;
    let mut k = vec![vec![0.0; dim]; 7];
    let mut ytmp = vec![0.0; dim];
    let mut y5 = vec![0.0; dim];
    rhs(x, &y, &mut k[0]);
    let mut first_same_as_last = false;

    while x < x1 {
        if h > x1 - x {
            h = x1 - x;
        }
        if !first_same_as_last {
            rhs(x, &y, &mut k[0]);
        }
        for s in 1..7 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                ytmp[i] = y[i] + h * acc;
            }
            rhs(x + C[s] * h, &ytmp, &mut k[s]);
        }
        // 5th order solution is stage 7's argument (FSAL): ytmp already holds it.
        y5.copy_from_slice(&ytmp);
        // Error estimate against the embedded 4th-order solution.
        let mut err = 0.0f64;
        for i in 0..dim {
            let mut y4 = y[i];
            for (j, kj) in k.iter().enumerate() {
                y4 += h * B4[j] * kj[i];
            }
            let sc = atol + rtol * y[i].abs().max(y5[i].abs());
            let e = (y5[i] - y4) / sc;
            err += e * e;
        }
        err = (err / dim as f64).sqrt();

        if err <= 1.0 {
            x += h;
            y.copy_from_slice(&y5);
            // FSAL: k[6] is the derivative at the accepted point.
            let (head, tail) = k.split_at_mut(6);
            head[0].copy_from_slice(&tail[0]);
            first_same_as_last = true;
        } else {
            first_same_as_last = false;
        }
        let fac = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
        h *= fac;
        assert!(
            h > span * 1e-14,
            "step size underflow at x = {x} (err = {err:.3e})"
        );
    }
    y
}

/// Integrate across an ordered list of breakpoints, restarting the step-size
/// control at each smoothness boundary.
pub fn integrate_piecewise<F>(rhs: F, y0: &[f64], points: &[f64], rtol: f64, atol: f64) -> Vec<f64>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let mut y = y0.to_vec();
    for w in points.windows(2) {
        if w[1] > w[0] {
            y = integrate(&rhs, &y, w[0], w[1], rtol, atol);
        }
    }
    y
}
