//! Spurious-eigenvalue rejection: solve the pencil at the mesh orders and at
//! orders increased by 50%, keep eigenvalues that reappear within the match
//! tolerance, and attach the match distance as the accuracy estimate.

use super::{assemble_pencil, solve_pencil, BoundaryScheme, Mesh, SolveOptions, SpectralError};
use crate::potential::PotentialSpec;
use crate::resonance::{classify, ResonanceEntry, ResonanceSet, DEFAULT_TOL_AXIS};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct FilterOptions {
    /// Relative match tolerance between the coarse and fine solves.
    pub match_tol: f64,
    /// Eigenvalues closer to the origin than this are dropped (degenerate).
    pub origin_exclusion: f64,
    pub tol_axis: f64,
    pub dense_limit: usize,
}

impl Default for FilterOptions {
    fn default() -> Self {
        Self {
            match_tol: 1e-6,
            origin_exclusion: 1e-6,
            tol_axis: DEFAULT_TOL_AXIS,
            dense_limit: 3000,
        }
    }
}

/// Eigenvalues surviving the 50% order-refinement comparison, classified.
///
/// The reported value is the fine-solve eigenvalue; `accuracy` is the distance
/// between the two solves.
pub fn filtered_eigenvalues(
    p: &PotentialSpec,
    mesh: &Mesh,
    scheme: BoundaryScheme,
    opts: FilterOptions,
) -> Result<ResonanceSet, SpectralError> {
    let solve_opts = SolveOptions {
        dense_limit: opts.dense_limit,
        keep_vectors: false,
    };
    let fine_mesh = mesh.refined();
    let (coarse, fine) = rayon::join(
        || -> Result<_, SpectralError> {
            let pp = assemble_pencil(p, mesh, scheme)?;
            solve_pencil(&pp, solve_opts)
        },
        || -> Result<_, SpectralError> {
            let pp = assemble_pencil(p, &fine_mesh, scheme)?;
            solve_pencil(&pp, solve_opts)
        },
    );
    let (coarse, fine) = (coarse?, fine?);

    let survivors = match_eigenvalues(
        &coarse.eigenvalues,
        &fine.eigenvalues,
        opts.match_tol,
        opts.origin_exclusion,
    );

    let mut entries = Vec::new();
    for (lam, acc) in survivors {
        match classify(lam, opts.tol_axis) {
            Ok(class) => entries.push(ResonanceEntry {
                re: lam.re,
                im: lam.im,
                class,
                accuracy: acc,
            }),
            Err(_) => continue, // ambiguous near-origin value
        }
    }
    entries.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(ResonanceSet {
        engine: "spectral".into(),
        potential_hash: p.hash(),
        entries,
    })
}

/// Greedy injective nearest pairing; returns the fine values and distances.
fn match_eigenvalues(
    coarse: &[Complex64],
    fine: &[Complex64],
    match_tol: f64,
    origin_exclusion: f64,
) -> Vec<(Complex64, f64)> {
    let c: Vec<Complex64> = coarse
        .iter()
        .copied()
        .filter(|z| z.norm() > origin_exclusion)
        .collect();
    let f: Vec<Complex64> = fine
        .iter()
        .copied()
        .filter(|z| z.norm() > origin_exclusion)
        .collect();
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for (i, zc) in c.iter().enumerate() {
        for (j, zf) in f.iter().enumerate() {
            let d = (zc - zf).norm();
            if d <= match_tol * zc.norm().max(1.0) {
                cand.push((d, i, j));
            }
        }
    }
    cand.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut used_c = vec![false; c.len()];
    let mut used_f = vec![false; f.len()];
    let mut out = Vec::new();
    for (d, i, j) in cand {
        if !used_c[i] && !used_f[j] {
            used_c[i] = true;
            used_f[j] = true;
            out.push((f[j], d));
        }
    }
    out
}
