//! DtN quantities on the half line: `v(x,k) = u'(x,k)/u(x,k)` for the solution
//! of `u'' = (k^2 + V) u` normalized by the boundary condition at 0, and its
//! `k`-derivative via the integrating-factor formula
//! `vdot(x,k) = (2k / u(x,k)^2) \int_0^x u(y,k)^2 dy`.

use super::{axis_matrix, TransferError};
use crate::ode;
use crate::potential::{BoundaryCondition, Domain, PotentialSpec};

/// DtN value and derivative at one `(x, k)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiSample {
    pub x: f64,
    pub k: f64,
    pub v: f64,
    pub vdot: f64,
}

const POLE_TOL: f64 = 1e-12;

fn initial_data(p: &PotentialSpec) -> Result<[f64; 2], TransferError> {
    match p.domain() {
        Domain::HalfLine(BoundaryCondition::Dirichlet) => Ok([0.0, 1.0]),
        Domain::HalfLine(BoundaryCondition::Neumann) => Ok([1.0, 0.0]),
        Domain::FullLine => Err(TransferError::HalfLineRequired),
    }
}

/// `\int_0^len (u0 C + u0' S)^2 dt` for `u'' = mu u` with closed-form pieces
/// `Icc = \int C^2`, `Ics = \int C S`, `Iss = \int S^2`.
fn segment_square_integral(mu: f64, len: f64, u0: f64, du0: f64) -> f64 {
    let z = mu * len * len;
    let (icc, ics, iss) = if z.abs() < 1e-3 {
        // Series around mu = 0; relative truncation error below 1e-12.
        let l = len;
        let icc = l + mu * l.powi(3) / 3.0 + mu * mu * l.powi(5) / 15.0;
        let ics = l * l / 2.0 + mu * l.powi(4) / 6.0 + mu * mu * l.powi(6) / 45.0;
        let iss = l.powi(3) / 3.0 + mu * l.powi(5) / 15.0 + 2.0 * mu * mu * l.powi(7) / 315.0;
        (icc, ics, iss)
    } else if mu > 0.0 {
        let w = mu.sqrt();
        let sh2 = (2.0 * w * len).sinh();
        let shl = (w * len).sinh();
        let icc = len / 2.0 + sh2 / (4.0 * w);
        let ics = shl * shl / (2.0 * mu);
        let iss = (sh2 / (4.0 * w) - len / 2.0) / mu;
        (icc, ics, iss)
    } else {
        let w = (-mu).sqrt();
        let sn2 = (2.0 * w * len).sin();
        let snl = (w * len).sin();
        let icc = len / 2.0 + sn2 / (4.0 * w);
        let ics = snl * snl / (2.0 * (-mu));
        let iss = (len / 2.0 - sn2 / (4.0 * w)) / (-mu);
        (icc, ics, iss)
    };
    u0 * u0 * icc + 2.0 * u0 * du0 * ics + du0 * du0 * iss
}

/// Constant pieces of `V(x)` on `[0, x_end]`, gaps filled with zero.
fn clipped_segments(p: &PotentialSpec, x_end: f64) -> Option<Vec<(f64, f64)>> {
    let segs = p.const_segments()?;
    let mut out = Vec::new();
    let mut x = 0.0f64;
    for s in &segs {
        if x >= x_end {
            break;
        }
        if s.x1 <= x {
            continue;
        }
        let x0 = s.x0.max(x);
        if x0 > x {
            out.push((x0 - x, 0.0));
        }
        let x1 = s.x1.min(x_end);
        if x1 > x0 {
            out.push((x1 - x0, s.value));
        }
        x = x1.max(x);
    }
    if x < x_end {
        out.push((x_end - x, 0.0));
    }
    Some(out)
}

/// Cauchy data `(u, u')` at `x_end`, plus `\int_0^{x_end} u^2` when requested.
fn propagate_axis(
    p: &PotentialSpec,
    k: f64,
    x_end: f64,
    with_integral: bool,
) -> Result<(f64, f64, f64), TransferError> {
    let y0 = initial_data(p)?;
    if let Some(pieces) = clipped_segments(p, x_end) {
        let (mut u, mut du, mut acc) = (y0[0], y0[1], 0.0);
        for &(len, c) in &pieces {
            let mu = k * k + c;
            if with_integral {
                acc += segment_square_integral(mu, len, u, du);
            }
            let m = axis_matrix(mu, len);
            let (nu, ndu) = (m[0][0] * u + m[0][1] * du, m[1][0] * u + m[1][1] * du);
            u = nu;
            du = ndu;
        }
        Ok((u, du, acc))
    } else {
        // Spline body: integrate the linear system, splitting at the knots.
        let mut points: Vec<f64> = vec![0.0];
        for t in p.breakpoints() {
            if t > 0.0 && t < x_end {
                points.push(t);
            }
        }
        points.push(x_end);
        let rhs = |x: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = (k * k + p.evaluate(x)) * y[0];
            if dy.len() > 2 {
                dy[2] = y[0] * y[0];
            }
        };
        if with_integral {
            let y = ode::integrate_piecewise(rhs, &[y0[0], y0[1], 0.0], &points, 1e-12, 1e-30);
            Ok((y[0], y[1], y[2]))
        } else {
            let y = ode::integrate_piecewise(rhs, &[y0[0], y0[1]], &points, 1e-12, 1e-30);
            Ok((y[0], y[1], 0.0))
        }
    }
}

pub(crate) fn cauchy_data(
    p: &PotentialSpec,
    k: f64,
    x_end: f64,
) -> Result<(f64, f64), TransferError> {
    let (u, du, _) = propagate_axis(p, k, x_end, false)?;
    Ok((u, du))
}

/// `v(x_end, k) = u'(x_end)/u(x_end)`. The potential must already carry any
/// coupling scaling.
pub fn riccati_v(p: &PotentialSpec, k: f64, x_end: f64) -> Result<f64, TransferError> {
    let (u, du) = cauchy_data(p, k, x_end)?;
    if u.abs() <= POLE_TOL * u.hypot(du / k.max(1.0)) {
        return Err(TransferError::PoleAtEvaluationPoint { x: x_end, k });
    }
    Ok(du / u)
}

/// `vdot(x_end, k)` via the integral formula.
pub fn riccati_v_dot(p: &PotentialSpec, k: f64, x_end: f64) -> Result<f64, TransferError> {
    let (u, du, int) = propagate_axis(p, k, x_end, true)?;
    if u.abs() <= POLE_TOL * u.hypot(du / k.max(1.0)) {
        return Err(TransferError::PoleAtEvaluationPoint { x: x_end, k });
    }
    Ok(2.0 * k * int / (u * u))
}

/// Both DtN quantities at one point.
pub fn riccati_sample(p: &PotentialSpec, k: f64, x: f64) -> Result<RiccatiSample, TransferError> {
    let (u, du, int) = propagate_axis(p, k, x, true)?;
    if u.abs() <= POLE_TOL * u.hypot(du / k.max(1.0)) {
        return Err(TransferError::PoleAtEvaluationPoint { x, k });
    }
    Ok(RiccatiSample {
        x,
        k,
        v: du / u,
        vdot: 2.0 * k * int / (u * u),
    })
}
