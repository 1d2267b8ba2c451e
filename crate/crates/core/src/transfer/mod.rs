//! Exact propagation of Cauchy data `[u, u']` across piecewise-constant
//! potentials, DtN/Riccati quantities on the half line, axis secular functions
//! for bound/antibound states, and complex zero finding for resonances.

mod axis;
mod riccati;
mod zeros;

pub use axis::{
    axis_secular, axis_secular_g, dtn_barrier_ratio, find_axis_states, AxisKind, AxisState,
};
pub use riccati::{riccati_sample, riccati_v, riccati_v_dot, RiccatiSample};
pub use zeros::{find_resonances_secular, ComplexRect};

use crate::potential::{BoundaryCondition, Domain, PotentialSpec};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransferError {
    #[error("operation requires a piecewise-constant potential")]
    UnsupportedBody,
    #[error("operation requires a half-line potential")]
    HalfLineRequired,
    #[error("u({x}) vanishes at the evaluation point for k = {k}; DtN value is a pole here")]
    PoleAtEvaluationPoint { x: f64, k: f64 },
    #[error("secular function vanishes on the search contour; retry with a jittered contour")]
    ContourThroughZero,
}

/// 2x2 complex matrix mapping `[u(a), u'(a)]` to `[u(b), u'(b)]`.
/// Unit determinant (constant Wronskian of `u'' = (V - lambda^2) u`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn identity() -> Self {
        Self {
            m11: Complex64::new(1.0, 0.0),
            m12: Complex64::new(0.0, 0.0),
            m21: Complex64::new(0.0, 0.0),
            m22: Complex64::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn norm(&self) -> f64 {
        (self.m11.norm_sqr() + self.m12.norm_sqr() + self.m21.norm_sqr() + self.m22.norm_sqr())
            .sqrt()
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m11 * v[0] + self.m12 * v[1],
            self.m21 * v[0] + self.m22 * v[1],
        ]
    }
}

/// cosh(sqrt(z) t) and sinh(sqrt(z) t)/sqrt(z): entire, even in sqrt(z).
fn cosh_sinhc(z: Complex64, t: f64) -> (Complex64, Complex64) {
    let zt2 = z * t * t;
    if zt2.norm() < 1e-3 {
        // Small-argument series; truncation below 1e-16 relative.
        let c = Complex64::new(1.0, 0.0)
            + zt2 * (1.0 / 2.0)
            + zt2 * zt2 * (1.0 / 24.0)
            + zt2 * zt2 * zt2 * (1.0 / 720.0);
        let s = Complex64::new(1.0, 0.0)
            + zt2 * (1.0 / 6.0)
            + zt2 * zt2 * (1.0 / 120.0)
            + zt2 * zt2 * zt2 * (1.0 / 5040.0);
        (c, s * t)
    } else {
        let w = z.sqrt();
        let wt = w * t;
        (wt.cosh(), wt.sinh() / w)
    }
}

/// Real counterpart for `u'' = mu u` with real `mu` (imaginary-axis spectral
/// parameter); returns `(cosh, sinh-cardinal)` evaluated at length `t`.
pub(crate) fn cosh_sinhc_real(mu: f64, t: f64) -> (f64, f64) {
    let zt2 = mu * t * t;
    if zt2.abs() < 1e-3 {
        let c = 1.0 + zt2 * (1.0 / 2.0 + zt2 * (1.0 / 24.0 + zt2 / 720.0));
        let s = 1.0 + zt2 * (1.0 / 6.0 + zt2 * (1.0 / 120.0 + zt2 / 5040.0));
        (c, s * t)
    } else if mu > 0.0 {
        let w = mu.sqrt();
        ((w * t).cosh(), (w * t).sinh() / w)
    } else {
        let w = (-mu).sqrt();
        ((w * t).cos(), (w * t).sin() / w)
    }
}

/// Transfer matrix across a constant piece `V = c` of length `len` at spectral
/// parameter `lambda` (`u'' = (c - lambda^2) u`).
///
/// Entire in `lambda`; the `kappa -> 0` limit is handled by series evaluation.
pub fn segment_matrix(c: f64, len: f64, lambda: Complex64) -> TransferMatrix {
    debug_assert!(len > 0.0);
    let kappa2 = Complex64::new(c, 0.0) - lambda * lambda;
    let (ch, sh) = cosh_sinhc(kappa2, len);
    TransferMatrix {
        m11: ch,
        m12: sh,
        m21: kappa2 * sh,
        m22: ch,
    }
}

/// Real transfer matrix for `u'' = mu u` across length `len`.
pub(crate) fn axis_matrix(mu: f64, len: f64) -> [[f64; 2]; 2] {
    let (ch, sh) = cosh_sinhc_real(mu, len);
    [[ch, sh], [mu * sh, ch]]
}

/// Ordered left-to-right product of segment matrices over the support of a
/// piecewise-constant potential.
pub fn propagate(p: &PotentialSpec, lambda: Complex64) -> Result<TransferMatrix, TransferError> {
    let segs = p.const_segments().ok_or(TransferError::UnsupportedBody)?;
    let mut m = TransferMatrix::identity();
    for s in &segs {
        if s.x1 > s.x0 {
            m = segment_matrix(s.value, s.x1 - s.x0, lambda).compose(&m);
        }
    }
    Ok(m)
}

/// Secular function whose zeros are the resonances, bound and antibound
/// states: the coefficient of the incoming wave `e^{-i lambda x}` at the right
/// edge of the support, for the solution with no incoming wave from the left
/// (full line) or satisfying the boundary condition at 0 (half line).
pub fn resonance_secular(p: &PotentialSpec, lambda: Complex64) -> Result<Complex64, TransferError> {
    let i = Complex64::i();
    let (lo, hi) = p.support();
    let (start, v0) = match p.domain() {
        Domain::FullLine => {
            // Purely left-outgoing wave e^{-i lambda x} below the support.
            let phase = (-i * lambda * lo).exp();
            (lo, [phase, -i * lambda * phase])
        }
        Domain::HalfLine(BoundaryCondition::Dirichlet) => {
            (0.0, [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
        }
        Domain::HalfLine(BoundaryCondition::Neumann) => {
            (0.0, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)])
        }
    };
    let segs = p.const_segments().ok_or(TransferError::UnsupportedBody)?;
    let mut u = v0;
    let mut x = start;
    for s in &segs {
        if s.x1 <= x {
            continue;
        }
        let x0 = s.x0.max(x);
        if x0 > x {
            // Zero-potential gap (half-line support starting right of 0).
            u = segment_matrix(0.0, x0 - x, lambda).apply(u);
        }
        u = segment_matrix(s.value, s.x1 - x0, lambda).apply(u);
        x = s.x1;
    }
    // u = a e^{i lambda x} + b e^{-i lambda x} for x >= hi; return b.
    let two_i_lambda = 2.0 * i * lambda;
    Ok((i * lambda * u[0] - u[1]) * (i * lambda * hi).exp() / two_i_lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{BoundaryCondition, Domain, PotentialSpec};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_segment_at_zero_energy_is_shear() {
        let m = segment_matrix(0.0, 2.0, c(0.0, 0.0));
        assert!((m.m11 - 1.0).norm() < 1e-14);
        assert!((m.m12 - 2.0).norm() < 1e-14);
        assert!(m.m21.norm() < 1e-14);
        assert!((m.m22 - 1.0).norm() < 1e-14);
    }

    #[test]
    fn barrier_segment_matches_explicit_form() {
        // c = q^2 V1 = 3, lambda = i (k = 1): k1 = 2 and
        // M = [[cosh 2, sinh(2)/2], [2 sinh 2, cosh 2]].
        let m = segment_matrix(3.0, 1.0, c(0.0, 1.0));
        let k1 = 2.0f64;
        assert!((m.m11 - k1.cosh()).norm() < 1e-12);
        assert!((m.m12 - k1.sinh() / k1).norm() < 1e-12);
        assert!((m.m21 - k1 * k1.sinh()).norm() < 1e-12);
        assert!((m.m22 - k1.cosh()).norm() < 1e-12);
    }

    #[test]
    fn determinant_is_one_for_random_inputs() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rand = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        // Physically relevant ranges: |kappa * len| stays moderate, so the
        // cancellation in cosh^2 - sinh^2 stays far below the tolerance.
        for _ in 0..1000 {
            let cval = -20.0 + 40.0 * rand();
            let len = 0.01 + 1.2 * rand();
            let lambda = c(-4.0 + 8.0 * rand(), -4.0 + 8.0 * rand());
            let m = segment_matrix(cval, len, lambda);
            let tol = 1e-10 * m.norm().max(1.0);
            assert!(
                (m.det() - 1.0).norm() <= tol,
                "det failed for c={cval}, len={len}, lambda={lambda}"
            );
        }
    }

    #[test]
    fn segment_semigroup_property() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut rand = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let cval = -30.0 + 60.0 * rand();
            let l1 = 0.01 + 1.5 * rand();
            let l2 = 0.01 + 1.5 * rand();
            let lambda = c(-6.0 + 12.0 * rand(), -6.0 + 12.0 * rand());
            let whole = segment_matrix(cval, l1 + l2, lambda);
            let split = segment_matrix(cval, l2, lambda).compose(&segment_matrix(cval, l1, lambda));
            let scale = whole.norm().max(1.0);
            for (a, b) in [
                (whole.m11, split.m11),
                (whole.m12, split.m12),
                (whole.m21, split.m21),
                (whole.m22, split.m22),
            ] {
                assert!((a - b).norm() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn propagate_zero_potential_is_single_segment() {
        let p = PotentialSpec::zero(Domain::FullLine, (0.0, 1.0)).unwrap();
        let lambda = c(0.7, -0.3);
        let m = propagate(&p, lambda).unwrap();
        let s = segment_matrix(0.0, 1.0, lambda);
        assert!((m.m11 - s.m11).norm() < 1e-14);
        assert!((m.m12 - s.m12).norm() < 1e-14);
    }

    #[test]
    fn propagate_composes_segments_in_order() {
        let p = PotentialSpec::piecewise_constant(
            Domain::HalfLine(BoundaryCondition::Dirichlet),
            vec![0.0, 1.0, 2.0],
            vec![-9.0, 1.0],
        )
        .unwrap();
        let lambda = c(0.0, 1.0);
        let m = propagate(&p, lambda).unwrap();
        let expect = segment_matrix(1.0, 1.0, lambda).compose(&segment_matrix(-9.0, 1.0, lambda));
        assert!((m.m11 - expect.m11).norm() < 1e-13);
        assert!((m.m21 - expect.m21).norm() < 1e-13);
        assert!((m.det() - 1.0).norm() < 1e-10);
    }

    #[test]
    fn propagate_rejects_splines() {
        let p = PotentialSpec::spline(Domain::FullLine, vec![0.0, 1.0, 0.0], vec![0.0, 1.0, 2.0])
            .unwrap();
        assert!(matches!(
            propagate(&p, c(1.0, 0.0)),
            Err(TransferError::UnsupportedBody)
        ));
    }

    #[test]
    fn splitting_a_segment_leaves_product_unchanged() {
        let one = PotentialSpec::piecewise_constant(Domain::FullLine, vec![0.0, 1.0], vec![-4.0])
            .unwrap();
        let two = PotentialSpec::piecewise_constant(
            Domain::FullLine,
            vec![0.0, 0.3, 1.0],
            vec![-4.0, -4.0],
        )
        .unwrap();
        let lambda = c(2.0, -0.7);
        let (a, b) = (
            propagate(&one, lambda).unwrap(),
            propagate(&two, lambda).unwrap(),
        );
        let scale = a.norm().max(1.0);
        assert!((a.m11 - b.m11).norm() < 1e-12 * scale);
        assert!((a.m12 - b.m12).norm() < 1e-12 * scale);
        assert!((a.m21 - b.m21).norm() < 1e-12 * scale);
        assert!((a.m22 - b.m22).norm() < 1e-12 * scale);
    }

    #[test]
    fn free_secular_has_no_zeros_on_grid() {
        let p = PotentialSpec::zero(Domain::FullLine, (-1.0, 1.0)).unwrap();
        for i in 0..50 {
            for j in 0..30 {
                let lambda = c(-5.0 + 10.0 * i as f64 / 49.0, -3.0 + 3.5 * j as f64 / 29.0);
                if lambda.norm() < 0.05 {
                    continue;
                }
                let d = resonance_secular(&p, lambda).unwrap();
                assert!(d.norm() > 1e-3, "free d vanished at {lambda}");
            }
        }
    }

    #[test]
    fn secular_obeys_schwarz_reflection() {
        let p = PotentialSpec::piecewise_constant(Domain::FullLine, vec![-1.0, 1.0], vec![-1.0])
            .unwrap();
        let mut state = 0xd1342543de82ef95u64;
        let mut rand = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let lambda = c(-4.0 + 8.0 * rand(), -2.0 + 4.0 * rand());
            if lambda.norm() < 0.1 {
                continue;
            }
            let d1 = resonance_secular(&p, lambda).unwrap();
            let d2 = resonance_secular(&p, -lambda.conj()).unwrap();
            assert!(
                (d2 - d1.conj()).norm() <= 1e-10 * d1.norm().max(1.0),
                "reflection failed at {lambda}: {d1} vs {d2}"
            );
        }
    }
}
