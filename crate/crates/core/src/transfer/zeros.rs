//! Complex zero finding for the resonance secular function: rectangular
//! argument-principle counts on a quadtree subdivision, then Newton polishing.

use super::{resonance_secular, TransferError};
use crate::potential::PotentialSpec;
use num_complex::Complex64;

/// Axis-aligned search rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRect {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl ComplexRect {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Self {
        assert!(re_lo < re_hi && im_lo < im_hi, "empty rectangle");
        Self {
            re_lo,
            re_hi,
            im_lo,
            im_hi,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_lo && z.re <= self.re_hi && z.im >= self.im_lo && z.im <= self.im_hi
    }

    fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_lo + self.re_hi),
            0.5 * (self.im_lo + self.im_hi),
        )
    }

    fn diag(&self) -> f64 {
        (self.re_hi - self.re_lo).hypot(self.im_hi - self.im_lo)
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_lo, self.im_lo),
            Complex64::new(self.re_hi, self.im_lo),
            Complex64::new(self.re_hi, self.im_hi),
            Complex64::new(self.re_lo, self.im_hi),
        ]
    }

    fn quadrants(&self) -> [ComplexRect; 4] {
        let (rm, im) = (
            0.5 * (self.re_lo + self.re_hi),
            0.5 * (self.im_lo + self.im_hi),
        );
        [
            ComplexRect {
                re_hi: rm,
                im_hi: im,
                ..*self
            },
            ComplexRect {
                re_lo: rm,
                im_hi: im,
                ..*self
            },
            ComplexRect {
                re_hi: rm,
                im_lo: im,
                ..*self
            },
            ComplexRect {
                re_lo: rm,
                im_lo: im,
                ..*self
            },
        ]
    }
}

const ORIGIN_RADIUS: f64 = 1e-3;

/// Winding number of `f` along the closed polygon `vertices`, by adaptive
/// phase tracking. Errors out when the function gets too small on the contour.
fn winding<F>(f: &F, vertices: &[Complex64], floor: f64) -> Result<i64, TransferError>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut total = 0.0f64;
    let n = vertices.len();
    for i in 0..n {
        let (z0, z1) = (vertices[i], vertices[(i + 1) % n]);
        let (f0, f1) = (f(z0), f(z1));
        total += phase_increment(f, z0, z1, f0, f1, floor, 0)?;
    }
    Ok((total / std::f64::consts::TAU).round() as i64)
}

fn phase_increment<F>(
    f: &F,
    z0: Complex64,
    z1: Complex64,
    f0: Complex64,
    f1: Complex64,
    floor: f64,
    depth: u32,
) -> Result<f64, TransferError>
where
    F: Fn(Complex64) -> Complex64,
{
    if f0.norm() <= floor || f1.norm() <= floor {
        return Err(TransferError::ContourThroughZero);
    }
    let dphi = (f1 / f0).arg();
    if dphi.abs() <= std::f64::consts::FRAC_PI_2 && depth >= 3 {
        return Ok(dphi);
    }
    if depth > 24 {
        return Err(TransferError::ContourThroughZero);
    }
    let zm = 0.5 * (z0 + z1);
    let fm = f(zm);
    Ok(phase_increment(f, z0, zm, f0, fm, floor, depth + 1)?
        + phase_increment(f, zm, z1, fm, f1, floor, depth + 1)?)
}

fn winding_with_jitter<F>(f: &F, rect: &ComplexRect, floor: f64) -> Result<i64, TransferError>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut r = *rect;
    for attempt in 0..4 {
        match winding(f, &r.corners(), floor) {
            Ok(w) => return Ok(w),
            Err(_) if attempt < 3 => {
                // Grow the box slightly; zeros stay inside, the contour moves.
                let eps = 3.7e-4 * r.diag() * (attempt + 1) as f64;
                r = ComplexRect {
                    re_lo: r.re_lo - eps,
                    re_hi: r.re_hi + eps,
                    im_lo: r.im_lo - eps,
                    im_hi: r.im_hi + eps,
                };
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

fn newton<F>(f: &F, start: Complex64, scale: f64) -> Option<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut z = start;
    for _ in 0..80 {
        let fz = f(z);
        let h = 1e-7 * (1.0 + z.norm());
        let df = (f(z + h) - f(z - h)) / (2.0 * h);
        if df.norm() == 0.0 {
            return None;
        }
        let step = fz / df;
        z -= step;
        if step.norm() <= 1e-13 * (1.0 + z.norm()) {
            let res = f(z);
            return (res.norm() <= 1e-10 * scale).then_some(z);
        }
    }
    None
}

/// All zeros of the resonance secular function inside `region`, refined to
/// `|d| <= 1e-10 * scale` and verified by a small-contour multiplicity count.
/// A disk of radius 1e-3 around the origin is excluded (the secular function
/// has its 1/lambda normalization pole there).
pub fn find_resonances_secular(
    p: &PotentialSpec,
    region: ComplexRect,
    grid_density: usize,
) -> Result<Vec<Complex64>, TransferError> {
    // Validate the body once up front.
    let _ = resonance_secular(p, Complex64::new(region.re_lo, region.im_lo))?;
    let f = |z: Complex64| resonance_secular(p, z).expect("piecewise-constant checked above");

    // Magnitude scale: median of |d| on a coarse grid, used for the refinement
    // and contour-degeneracy thresholds.
    let g = grid_density.clamp(2, 64);
    let mut mags = Vec::new();
    for i in 0..=4 * g {
        for j in 0..=4 * g {
            let z = Complex64::new(
                region.re_lo + (region.re_hi - region.re_lo) * i as f64 / (4 * g) as f64,
                region.im_lo + (region.im_hi - region.im_lo) * j as f64 / (4 * g) as f64,
            );
            if z.norm() > ORIGIN_RADIUS {
                mags.push(f(z).norm());
            }
        }
    }
    mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let scale = mags[mags.len() / 2].max(f64::MIN_POSITIVE);
    let floor = 1e-13 * scale;

    // Initial grid of boxes, then quadtree subdivision on the winding count.
    let mut queue: Vec<ComplexRect> = Vec::new();
    for i in 0..g {
        for j in 0..g {
            queue.push(ComplexRect {
                re_lo: region.re_lo + (region.re_hi - region.re_lo) * i as f64 / g as f64,
                re_hi: region.re_lo + (region.re_hi - region.re_lo) * (i + 1) as f64 / g as f64,
                im_lo: region.im_lo + (region.im_hi - region.im_lo) * j as f64 / g as f64,
                im_hi: region.im_lo + (region.im_hi - region.im_lo) * (j + 1) as f64 / g as f64,
            });
        }
    }

    let mut roots: Vec<Complex64> = Vec::new();
    while let Some(rect) = queue.pop() {
        // Skip boxes swallowed by the origin exclusion.
        let c = rect.center();
        if c.norm() + rect.diag() / 2.0 <= ORIGIN_RADIUS {
            continue;
        }
        // Subdivide boxes that straddle the excluded disk until they are
        // small enough to discard or clear it.
        let straddles = rect.corners().iter().any(|z| z.norm() < ORIGIN_RADIUS)
            || (rect.contains(Complex64::new(0.0, 0.0)) && rect.diag() > ORIGIN_RADIUS);
        if straddles {
            if rect.diag() > 0.25 * ORIGIN_RADIUS {
                queue.extend(rect.quadrants());
            }
            continue;
        }

        let count = winding_with_jitter(&f, &rect, floor)?;
        if count == 0 {
            continue;
        }
        let tiny = rect.diag() < 1e-7 * (1.0 + c.norm());
        if count == 1 || tiny {
            if let Some(z) = newton(&f, c, scale) {
                // Newton may tunnel to a zero outside the box; accepting it
                // would orphan the zero this box actually brackets.
                let margin = 1e-7 * (1.0 + z.norm());
                let stayed = z.re >= rect.re_lo - margin
                    && z.re <= rect.re_hi + margin
                    && z.im >= rect.im_lo - margin
                    && z.im <= rect.im_hi + margin;
                if stayed || tiny {
                    roots.push(z);
                    continue;
                }
            }
        }
        if !tiny {
            queue.extend(rect.quadrants());
        }
    }

    // Deduplicate Newton-converged clusters.
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for z in roots {
        match clusters
            .iter_mut()
            .find(|(c, _)| (*c - z).norm() <= 1e-8 * (1.0 + z.norm()))
        {
            Some((_, n)) => *n += 1,
            None => clusters.push((z, 1)),
        }
    }

    // Keep zeros inside the requested region, away from the origin, and
    // confirmed by a small-contour argument-principle count.
    let mut out = Vec::new();
    for (z, _) in clusters {
        if !region.contains(z) || z.norm() <= ORIGIN_RADIUS {
            continue;
        }
        let mut confirmed = false;
        for radius_factor in [1.0, 1.9] {
            let r = 1e-5 * (1.0 + z.norm()) * radius_factor;
            let circle: Vec<Complex64> = (0..16)
                .map(|t| {
                    let a = std::f64::consts::TAU * t as f64 / 16.0;
                    z + Complex64::new(r * a.cos(), r * a.sin())
                })
                .collect();
            if let Ok(m) = winding(&f, &circle, floor) {
                if m >= 1 {
                    confirmed = true;
                    break;
                }
            }
        }
        if confirmed {
            out.push(z);
        }
    }
    out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(out)
}
