//! Complex absorbing layer on `(L, M)`: the exterior equation gains an
//! imaginary quadratic-ramp potential, outgoing/incoming solutions are
//! integrated across the layer, and their ratio at the truncation point gives
//! the reflection coefficient `rho(lambda)` and the perturbed outgoing
//! parameter `lambda_hat = lambda (1 - rho)/(1 + rho)`.

use crate::ode;
use crate::potential::{Domain, PotentialSpec};
use crate::spectral::{assemble_pencil_with, BoundaryScheme, Mesh, PencilPair, SpectralError};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AbsorberError {
    #[error("incoming solution vanished at the truncation point; rho undefined")]
    IncomingVanishes,
    #[error("1 + rho = {0} is resonant; lambda_hat undefined")]
    ResonantDenominator(Complex64),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Shipped layer defaults: with `W(x) = -i sigma ((x-L)/(M-L))^2` these hold
/// `max |rho| = 6.7e-4` on the real window `lambda in [1, 5]`. The width is
/// load-bearing: the quadratic onset reflects like `sigma / (4 W^2 lambda^3)`
/// at the low end of the window while absorption of the high end needs
/// `sigma W >~ 100`, which together force a wide layer.
pub const DEFAULT_SIGMA: f64 = 4.2;
pub const DEFAULT_WIDTH: f64 = 28.0;

/// Absorbing layer `[l, m]` with the quadratic-ramp imaginary potential
/// `W(x) = -i sigma ((x - l)/(m - l))^2`; `W(l) = 0` keeps the physical
/// region untouched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorberSpec {
    pub l: f64,
    pub m: f64,
    pub sigma: f64,
}

impl AbsorberSpec {
    pub fn new(l: f64, m: f64, sigma: f64) -> Self {
        assert!(m > l, "absorber needs m > l");
        assert!(sigma >= 0.0);
        Self { l, m, sigma }
    }

    pub fn with_defaults(l: f64) -> Self {
        Self::new(l, l + DEFAULT_WIDTH, DEFAULT_SIGMA)
    }

    pub fn width(&self) -> f64 {
        self.m - self.l
    }

    /// Layer potential at `|x|`-distance into the layer; zero outside `[l, m]`.
    pub fn w_abs(&self, x: f64) -> Complex64 {
        if x <= self.l || x > self.m {
            return Complex64::new(0.0, 0.0);
        }
        let t = (x - self.l) / self.width();
        Complex64::new(0.0, -self.sigma * t * t)
    }
}

/// Outgoing/incoming data at the truncation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionData {
    pub lambda: Complex64,
    pub gamma_plus_m: Complex64,
    pub gamma_minus_m: Complex64,
    pub rho: Complex64,
    pub lambda_hat: Complex64,
}

fn integrate_layer(abs: &AbsorberSpec, lambda: Complex64, outgoing: bool) -> [Complex64; 2] {
    // gamma(l) = 1, gamma'(l) = +- i lambda; u'' = (W - lambda^2) u.
    let s = if outgoing { 1.0 } else { -1.0 };
    let ic = [1.0, 0.0, 0.0, s * -lambda.im, s * lambda.re, 0.0];
    // State: [Re u, Im u, Re u', Im u'].
    let y0 = [ic[0], ic[1], ic[3], ic[4]];
    let lam2 = lambda * lambda;
    let rhs = |x: f64, y: &[f64], dy: &mut [f64]| {
        let u = Complex64::new(y[0], y[1]);
        let coeff = abs.w_abs(x.min(abs.m)) - lam2;
        let upp = coeff * u;
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = upp.re;
        dy[3] = upp.im;
    };
    let y = ode::integrate(rhs, &y0, abs.l, abs.m, 1e-11, 1e-30);
    [Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3])]
}

/// Integrate the outgoing and incoming waves across the layer; returns
/// `(gamma_+(M), gamma_-(M))`.
pub fn integrate_gamma(abs: &AbsorberSpec, lambda: Complex64) -> (Complex64, Complex64) {
    let gp = integrate_layer(abs, lambda, true);
    let gm = integrate_layer(abs, lambda, false);
    (gp[0], gm[0])
}

/// Full boundary data including derivatives (for Wronskian checks).
pub fn integrate_gamma_full(
    abs: &AbsorberSpec,
    lambda: Complex64,
) -> ([Complex64; 2], [Complex64; 2]) {
    (
        integrate_layer(abs, lambda, true),
        integrate_layer(abs, lambda, false),
    )
}

/// Reflection coefficient `rho = -gamma_+(M) / gamma_-(M)`.
pub fn rho(abs: &AbsorberSpec, lambda: Complex64) -> Result<Complex64, AbsorberError> {
    let (gp, gm) = integrate_gamma(abs, lambda);
    // Overflow of the growing solution leaves the ratio undefined too.
    if gm.norm() < 1e-14 * gp.norm() || !gm.norm().is_finite() || !gp.norm().is_finite() {
        return Err(AbsorberError::IncomingVanishes);
    }
    Ok(-gp / gm)
}

/// Perturbed outgoing parameter `lambda_hat = lambda (1 - rho)/(1 + rho)`.
pub fn lambda_hat(lambda: Complex64, rho_val: Complex64) -> Result<Complex64, AbsorberError> {
    let denom = Complex64::new(1.0, 0.0) + rho_val;
    if denom.norm() < 1e-12 {
        return Err(AbsorberError::ResonantDenominator(rho_val));
    }
    Ok(lambda * (Complex64::new(1.0, 0.0) - rho_val) / denom)
}

/// Reflection data bundle at one `lambda`.
pub fn reflection_data(
    abs: &AbsorberSpec,
    lambda: Complex64,
) -> Result<ReflectionData, AbsorberError> {
    let (gp, gm) = integrate_gamma(abs, lambda);
    if gm.norm() < 1e-14 * gp.norm() {
        return Err(AbsorberError::IncomingVanishes);
    }
    let r = -gp / gm;
    Ok(ReflectionData {
        lambda,
        gamma_plus_m: gp,
        gamma_minus_m: gm,
        rho: r,
        lambda_hat: lambda_hat(lambda, r)?,
    })
}

/// Mesh over the absorber-extended domain: the potential's own cells plus
/// layer cells out to `±M` (full line) or `M` (half line).
pub fn capped_mesh(p: &PotentialSpec, abs: &AbsorberSpec, order: usize) -> Mesh {
    let mut breaks = p.breakpoints();
    breaks.push(abs.l);
    breaks.push(-abs.l);
    let interval = match p.domain() {
        Domain::FullLine => (-abs.m, abs.m),
        Domain::HalfLine(_) => (0.0, abs.m),
    };
    Mesh::covering(interval, &breaks, order, 1.25)
}

/// Pencil for `-u'' + (V + W_abs) u = lambda^2 u` with homogeneous Dirichlet
/// rows at the truncation points (the layer is mirrored onto `x < -L` for
/// full-line potentials). Eigenvalues approximate the outgoing-problem poles
/// wherever `|rho(lambda)|` is small.
pub fn capped_pencil(
    p: &PotentialSpec,
    abs: &AbsorberSpec,
    mesh_ext: &Mesh,
) -> Result<PencilPair, AbsorberError> {
    let (lo, hi) = mesh_ext.hull();
    let need_hi = abs.m;
    if (hi - need_hi).abs() > 1e-9 {
        return Err(SpectralError::MeshMismatch(format!(
            "mesh must end at the truncation point {need_hi}, ends at {hi}"
        ))
        .into());
    }
    if matches!(p.domain(), Domain::FullLine) && (lo + abs.m).abs() > 1e-9 {
        return Err(SpectralError::MeshMismatch(format!(
            "full-line mesh must start at {}, starts at {lo}",
            -abs.m
        ))
        .into());
    }
    let v = |x: f64| Complex64::new(p.evaluate(x), 0.0) + abs.w_abs(x.abs());
    Ok(assemble_pencil_with(
        v,
        p.domain(),
        mesh_ext,
        BoundaryScheme::CappedDirichlet,
    )?)
}
