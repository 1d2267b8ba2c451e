//! Dense solve of the generalized pencil by shift-and-invert: eigenvalues of
//! `X = (A - sigma B)^{-1} B` are `1/(lambda - sigma)`, so one complex
//! eigendecomposition recovers every finite pencil eigenvalue; `mu ~ 0` slots
//! are the infinite eigenvalues contributed by the lambda-independent rows.

use super::{PencilPair, SpectralError};
use faer::linalg::solvers::Solve;
use faer::{Mat, Par};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub dense_limit: usize,
    pub keep_vectors: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            dense_limit: 3000,
            keep_vectors: true,
        }
    }
}

/// Finite eigenvalues with residuals; eigenvectors keep only the `u` field.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub eigenvalues: Vec<Complex64>,
    /// `u`-components of the eigenvectors, parallel to `eigenvalues`.
    pub u_vectors: Option<Vec<Vec<Complex64>>>,
    /// `||(A - lambda B) x|| / ||x||` per reported eigenvalue.
    pub residuals: Vec<f64>,
    pub n_infinite: usize,
    pub n_discarded: usize,
    pub a_norm: f64,
}

fn c64(z: Complex64) -> faer::c64 {
    faer::c64::new(z.re, z.im)
}

fn from_c64(z: faer::c64) -> Complex64 {
    Complex64::new(z.re, z.im)
}

// Deterministic shift sequence; the first entry works for every problem in
// the test corpus, the rest guard against a shift landing on an eigenvalue.
const SHIFTS: [(f64, f64); 5] = [
    (0.31425, 0.77135),
    (0.82731, 1.40937),
    (-0.57913, 0.93357),
    (1.72413, 0.41437),
    (-1.25331, 1.61441),
];

/// Solve `A x = lambda B x` densely.
pub fn solve_pencil(pp: &PencilPair, opts: SolveOptions) -> Result<EigenResult, SpectralError> {
    let dim = pp.dim();
    if dim > opts.dense_limit {
        return Err(SpectralError::DenseLimit {
            dim,
            limit: opts.dense_limit,
        });
    }
    // Keep dense kernels sequential: reproducible results regardless of the
    // machine's thread count.
    faer::set_global_parallelism(Par::Seq);

    let a = Mat::<faer::c64>::from_fn(dim, dim, |i, j| c64(pp.a[(i, j)]));
    let b = Mat::<faer::c64>::from_fn(dim, dim, |i, j| c64(pp.b[(i, j)]));
    let a_norm = a.norm_l2();

    let mut last_err = String::new();
    for &(sr, si) in &SHIFTS {
        let sigma = faer::c64::new(sr, si);
        let shifted = Mat::<faer::c64>::from_fn(dim, dim, |i, j| a[(i, j)] - sigma * b[(i, j)]);
        let lu = shifted.partial_piv_lu();
        let x = lu.solve(&b);
        if !x.norm_max().is_finite() {
            last_err = format!("singular shift {sigma:?}");
            continue;
        }
        let evd = match x.eigen() {
            Ok(e) => e,
            Err(e) => {
                last_err = format!("{e:?}");
                continue;
            }
        };
        let s = evd.S();
        let u = evd.U();

        // lambda = sigma + 1/mu; tiny mu are the pencil's infinite eigenvalues.
        let mut order: Vec<usize> = (0..dim).collect();
        let lambdas: Vec<Complex64> = (0..dim)
            .map(|i| {
                let mu = from_c64(s[i]);
                Complex64::new(sr, si) + 1.0 / mu
            })
            .collect();
        order.sort_by(|&p, &q| {
            (lambdas[p].re, lambdas[p].im)
                .partial_cmp(&(lambdas[q].re, lambdas[q].im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });

        let au = &a * u;
        let bu = &b * u;

        let mut eigenvalues = Vec::new();
        let mut residuals = Vec::new();
        let mut u_vectors = opts.keep_vectors.then(Vec::new);
        let mut n_infinite = 0usize;
        let mut n_discarded = 0usize;
        let t = pp.node_count();

        for &i in &order {
            let lam = lambdas[i];
            if !lam.re.is_finite() || !lam.im.is_finite() || lam.norm() > 1e10 {
                n_infinite += 1;
                continue;
            }
            let mut num = 0.0f64;
            let mut den = 0.0f64;
            for r in 0..dim {
                let v = from_c64(au[(r, i)]) - lam * from_c64(bu[(r, i)]);
                num += v.norm_sqr();
                den += from_c64(u[(r, i)]).norm_sqr();
            }
            let res = (num / den.max(f64::MIN_POSITIVE)).sqrt();
            if res > 1e-8 * a_norm {
                n_discarded += 1;
                continue;
            }
            eigenvalues.push(lam);
            residuals.push(res);
            if let Some(vs) = u_vectors.as_mut() {
                vs.push((0..t).map(|r| from_c64(u[(r, i)])).collect());
            }
        }

        if eigenvalues.is_empty() && n_infinite == dim {
            last_err = "all eigenvalues infinite".into();
            continue;
        }
        return Ok(EigenResult {
            eigenvalues,
            u_vectors,
            residuals,
            n_infinite,
            n_discarded,
            a_norm,
        });
    }
    Err(SpectralError::SolverFailure(last_err))
}
