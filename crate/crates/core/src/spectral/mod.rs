//! Chebyshev collocation of the outgoing-boundary eigenvalue problem.
//!
//! The quadratic dependence on the spectral parameter is linearized with the
//! auxiliary field `psi = lambda u`, giving a generalized pencil
//! `A x = lambda B x` over the two fields; junctions between subintervals
//! enforce continuity of `u` and `u'`, and outgoing rows close the domain.

mod cheb;
mod filter;
mod pencil;
mod solve;

pub use cheb::{cheb_block, ChebBlock};
pub use filter::{filtered_eigenvalues, FilterOptions};
pub use pencil::{assemble_pencil, assemble_pencil_with, BoundaryScheme, PencilPair, RowTag};
pub use solve::{solve_pencil, EigenResult, SolveOptions};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("collocation order {0} is too small (need n >= 2)")]
    OrderTooSmall(usize),
    #[error("mesh does not resolve the potential: {0}")]
    MeshMismatch(String),
    #[error("pencil dimension {dim} exceeds the dense-solver limit {limit}")]
    DenseLimit { dim: usize, limit: usize },
    #[error("dense eigensolver failed: {0}")]
    SolverFailure(String),
}

/// Contiguous subintervals covering the computational domain, with a
/// collocation order per subinterval.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub cells: Vec<(f64, f64)>,
    pub orders: Vec<usize>,
}

impl Mesh {
    /// Build a mesh over `[lo, hi]` whose cell endpoints include every listed
    /// breakpoint; cells longer than `max_len` are split evenly.
    pub fn covering(interval: (f64, f64), breakpoints: &[f64], order: usize, max_len: f64) -> Self {
        let (lo, hi) = interval;
        assert!(hi > lo, "empty computational interval");
        let mut pts = vec![lo, hi];
        for &b in breakpoints {
            if b > lo + 1e-14 && b < hi - 1e-14 {
                pts.push(b);
            }
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        let mut cells = Vec::new();
        for w in pts.windows(2) {
            let len = w[1] - w[0];
            let parts = (len / max_len).ceil().max(1.0) as usize;
            for p in 0..parts {
                cells.push((
                    w[0] + len * p as f64 / parts as f64,
                    w[0] + len * (p + 1) as f64 / parts as f64,
                ));
            }
        }
        let orders = vec![order; cells.len()];
        Mesh { cells, orders }
    }

    /// Default mesh for a potential: `[-L, L]` for the full line (L the
    /// largest support offset), `[0, L]` on the half line.
    pub fn for_potential(p: &crate::potential::PotentialSpec, order: usize) -> Self {
        let (lo, hi) = p.support();
        let interval = match p.domain() {
            crate::potential::Domain::FullLine => {
                let l = lo.abs().max(hi.abs()).max(1e-3);
                (-l, l)
            }
            crate::potential::Domain::HalfLine(_) => (0.0, hi.max(1e-3)),
        };
        Mesh::covering(interval, &p.breakpoints(), order, 2.0)
    }

    /// The same mesh with every order scaled by 3/2 (rounded up): the
    /// refinement used to tag spurious eigenvalues.
    pub fn refined(&self) -> Self {
        Mesh {
            cells: self.cells.clone(),
            orders: self.orders.iter().map(|&n| n.div_ceil(2) + n).collect(),
        }
    }

    pub fn hull(&self) -> (f64, f64) {
        (self.cells[0].0, self.cells.last().unwrap().1)
    }
}
