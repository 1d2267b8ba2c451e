//! Secular functions on the imaginary axis: zeros of the bound-state function
//! are bound states `ik`, zeros of the antibound function are antibound states
//! `-ik`. With a step barrier on `[A, B]` the exterior solution is matched
//! through the explicit barrier transfer matrix; without one the matching is
//! `u'/u = -k` (bound) or `+k` (antibound) at the support edge.

use super::riccati::{cauchy_data, riccati_v};
use super::TransferError;
use crate::potential::{Barrier, PotentialSpec, ScaleParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    Bound,
    Antibound,
}

/// A refined root of one of the axis secular functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisState {
    pub k: f64,
    pub kind: AxisKind,
    pub residual: f64,
}

/// Matching value `R(k)` with `s(k) = v(A, k) + R(k)`.
///
/// With a barrier, `R = k1 (1 - beta e) / (1 + beta e)` where
/// `beta_- = (1 - k/k1)/(1 + k/k1)` (bound), `beta_+` its reciprocal
/// (antibound), `e = exp(-2 k1 (B - A))` and `k1 = sqrt(k^2 + q^2 V1)`.
/// The ratios are evaluated in cleared form so `beta_+ -> infinity` as
/// `k -> k1` causes no overflow.
fn matching_value(k: f64, q: f64, barrier: Option<Barrier>, kind: AxisKind) -> f64 {
    match barrier {
        None => match kind {
            AxisKind::Bound => k,
            AxisKind::Antibound => -k,
        },
        Some(b) => {
            let k1 = (k * k + q * q * b.height).sqrt();
            let e = (-2.0 * k1 * (b.b - b.a)).exp();
            let (num, den) = match kind {
                // beta_- e = (k1 - k) e / (k1 + k)
                AxisKind::Bound => ((k1 + k) - (k1 - k) * e, (k1 + k) + (k1 - k) * e),
                // beta_+ e = (k1 + k) e / (k1 - k)
                AxisKind::Antibound => ((k1 - k) - (k1 + k) * e, (k1 - k) + (k1 + k) * e),
            };
            k1 * num / den
        }
    }
}

/// Right edge of the region where the DtN value is evaluated: the barrier foot
/// when present, the support edge otherwise.
fn matching_point(p: &PotentialSpec) -> f64 {
    match p.barrier() {
        Some(b) => b.a,
        None => p.support().1,
    }
}

/// Axis secular function `s(k) = v(A, k) + R(k)`; zeros are bound (`Bound`)
/// or antibound (`Antibound`) states of `H_{q^2 V}`. Has poles at interior
/// Dirichlet eigenvalues; see [`axis_secular_g`] for the pole-free form.
pub fn axis_secular(
    p: &PotentialSpec,
    q: f64,
    k: f64,
    kind: AxisKind,
) -> Result<f64, TransferError> {
    let scaled = p.inner().scale(ScaleParams::new(q).expect("q > 0"));
    let a = matching_point(p);
    let v = riccati_v(&scaled, k, a)?;
    Ok(v + matching_value(k, q, p.barrier(), kind))
}

/// Pole-free secular function `g(k) = u'(A, k) + R(k) u(A, k)`, with the same
/// zeros as [`axis_secular`] but smooth through the poles of `v`.
pub fn axis_secular_g(p: &PotentialSpec, q: f64, k: f64, kind: AxisKind) -> f64 {
    let scaled = p.inner().scale(ScaleParams::new(q).expect("q > 0"));
    let a = matching_point(p);
    let (u, du) = cauchy_data(&scaled, k, a).expect("half-line potential");
    du + matching_value(k, q, p.barrier(), kind) * u
}

/// Diagnostic ratio `F(k) = v(A,k) / sqrt(k^2 + q^2 V1) - 1` for barrier
/// potentials; its root stability drives the bound/antibound pairing.
pub fn dtn_barrier_ratio(p: &PotentialSpec, q: f64, k: f64) -> Result<f64, TransferError> {
    let b = p.barrier().ok_or(TransferError::UnsupportedBody)?;
    let scaled = p.inner().scale(ScaleParams::new(q).expect("q > 0"));
    let v = riccati_v(&scaled, k, b.a)?;
    Ok(v / (k * k + q * q * b.height).sqrt() - 1.0)
}

/// All simple zeros of the chosen secular function in `(k_lo, k_hi)`, refined
/// by bisection to machine resolution and sorted ascending.
pub fn find_axis_states(
    p: &PotentialSpec,
    q: f64,
    k_range: (f64, f64),
    kind: AxisKind,
) -> Vec<AxisState> {
    let (k_lo, k_hi) = k_range;
    assert!(k_lo > 0.0 && k_hi > k_lo, "need 0 < k_lo < k_hi");
    let n = 4096usize.max(((k_hi - k_lo) * 512.0).ceil() as usize);
    let g = |k: f64| axis_secular_g(p, q, k, kind);

    let mut roots = Vec::new();
    let mut prev_k = k_lo;
    let mut prev_g = g(prev_k);
    for i in 1..=n {
        let k = k_lo + (k_hi - k_lo) * i as f64 / n as f64;
        let gk = g(k);
        if prev_g == 0.0 {
            roots.push(prev_k);
        } else if prev_g.signum() != gk.signum() && gk != 0.0 {
            roots.push(bisect(&g, prev_k, k, prev_g));
        }
        prev_k = k;
        prev_g = gk;
    }
    if prev_g == 0.0 {
        roots.push(prev_k);
    }

    roots
        .into_iter()
        .map(|k| {
            let residual = axis_secular(p, q, k, kind).map_or(g(k).abs(), |s| s.abs());
            AxisState { k, kind, residual }
        })
        .collect()
}

fn bisect(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, g_lo: f64) -> f64 {
    let sign_lo = g_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at machine resolution
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
