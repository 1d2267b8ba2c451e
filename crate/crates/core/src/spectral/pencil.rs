//! Assembly of the two-field generalized pencil `A x = lambda B x`.
//!
//! Unknowns are `x = [u; psi]` over all collocation nodes (interface nodes are
//! duplicated). Row layout, with `T` the total node count:
//!
//! * rows `0..T` — one row per node: the domain equation
//!   `(-D2 + V) u - lambda psi = 0` at interior nodes, replaced by boundary
//!   rows at the two extreme nodes and by the two continuity rows
//!   (`u` and `D1 u` match) at each duplicated interface;
//! * rows `T..2T` — the definition `psi = lambda u` at every node.

use super::{cheb_block, ChebBlock, Mesh, SpectralError};
use crate::potential::{BoundaryCondition, Domain, PotentialSpec};
use faer::Mat;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowTag {
    DomainU,
    PsiDef,
    JunctionU,
    JunctionUp,
    BoundaryLeft,
    BoundaryRight,
}

/// How the computational interval is closed at its two ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryScheme {
    /// Outgoing waves: `(d/dx - i lambda) u = 0` at the right end and
    /// `(d/dx + i lambda) u = 0` at the left end (half-line potentials keep
    /// their own condition at 0).
    Outgoing,
    /// Homogeneous Dirichlet at the truncation points (absorbing-layer runs).
    CappedDirichlet,
}

/// Assembled dense pencil plus the node geometry needed to reconstruct and
/// check eigenvectors.
#[derive(Debug, Clone)]
pub struct PencilPair {
    pub a: Mat<Complex64>,
    pub b: Mat<Complex64>,
    pub row_map: Vec<RowTag>,
    pub node_xs: Vec<f64>,
    pub blocks: Vec<ChebBlock>,
    /// Global index of each block's first node.
    pub offsets: Vec<usize>,
}

impl PencilPair {
    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn node_count(&self) -> usize {
        self.node_xs.len()
    }
}

/// Assemble for a real potential; see [`assemble_pencil_with`].
pub fn assemble_pencil(
    p: &PotentialSpec,
    mesh: &Mesh,
    scheme: BoundaryScheme,
) -> Result<PencilPair, SpectralError> {
    // Every smoothness breakpoint inside the hull must be a cell endpoint.
    let (lo, hi) = mesh.hull();
    for bp in p.breakpoints() {
        if bp > lo + 1e-12 && bp < hi - 1e-12 {
            let hit = mesh
                .cells
                .iter()
                .any(|&(a, b)| (a - bp).abs() < 1e-12 || (b - bp).abs() < 1e-12);
            if !hit {
                return Err(SpectralError::MeshMismatch(format!(
                    "breakpoint {bp} is not a mesh cell endpoint"
                )));
            }
        }
    }
    assemble_pencil_with(
        |x| Complex64::new(p.evaluate(x), 0.0),
        p.domain(),
        mesh,
        scheme,
    )
}

/// Assemble the pencil for a (possibly complex) potential sampled pointwise.
pub fn assemble_pencil_with(
    v: impl Fn(f64) -> Complex64,
    domain: Domain,
    mesh: &Mesh,
    scheme: BoundaryScheme,
) -> Result<PencilPair, SpectralError> {
    assert_eq!(mesh.cells.len(), mesh.orders.len());
    let mut blocks = Vec::with_capacity(mesh.cells.len());
    let mut offsets = Vec::with_capacity(mesh.cells.len());
    let mut node_xs = Vec::new();
    for (cell, &order) in mesh.cells.iter().zip(&mesh.orders) {
        offsets.push(node_xs.len());
        let blk = cheb_block(order, *cell)?;
        node_xs.extend_from_slice(&blk.nodes);
        blocks.push(blk);
    }
    let t = node_xs.len();
    let dim = 2 * t;

    let i_unit = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let mut a = Mat::<Complex64>::zeros(dim, dim);
    let mut b = Mat::<Complex64>::zeros(dim, dim);
    let mut row_map = vec![RowTag::DomainU; dim];

    let last_block = blocks.len() - 1;
    for (bi, blk) in blocks.iter().enumerate() {
        let off = offsets[bi];
        let n = blk.n;
        for j in 0..=n {
            let g = off + j;
            let is_left_end = bi == 0 && j == 0;
            let is_right_end = bi == last_block && j == n;
            if is_left_end {
                match (scheme, domain) {
                    (BoundaryScheme::Outgoing, Domain::FullLine) => {
                        // (d/dx + i lambda) u = 0 -> D1 u = lambda (-i u)
                        for c in 0..=n {
                            a[(g, off + c)] = Complex64::new(blk.d1[(j, c)], 0.0);
                        }
                        b[(g, g)] = -i_unit;
                    }
                    (_, Domain::HalfLine(BoundaryCondition::Dirichlet)) => {
                        a[(g, g)] = one;
                    }
                    (_, Domain::HalfLine(BoundaryCondition::Neumann)) => {
                        for c in 0..=n {
                            a[(g, off + c)] = Complex64::new(blk.d1[(j, c)], 0.0);
                        }
                    }
                    (BoundaryScheme::CappedDirichlet, Domain::FullLine) => {
                        a[(g, g)] = one;
                    }
                }
                row_map[g] = RowTag::BoundaryLeft;
            } else if is_right_end {
                match scheme {
                    BoundaryScheme::Outgoing => {
                        // (d/dx - i lambda) u = 0 -> D1 u = lambda (i u)
                        for c in 0..=n {
                            a[(g, off + c)] = Complex64::new(blk.d1[(j, c)], 0.0);
                        }
                        b[(g, g)] = i_unit;
                    }
                    BoundaryScheme::CappedDirichlet => {
                        a[(g, g)] = one;
                    }
                }
                row_map[g] = RowTag::BoundaryRight;
            } else if j == n {
                // Interface, left side: value continuity with the next block.
                a[(g, g)] = one;
                a[(g, offsets[bi + 1])] = -one;
                row_map[g] = RowTag::JunctionU;
            } else if j == 0 {
                // Interface, right side: derivative continuity.
                let prev = &blocks[bi - 1];
                let poff = offsets[bi - 1];
                for c in 0..=prev.n {
                    a[(g, poff + c)] = Complex64::new(prev.d1[(prev.n, c)], 0.0);
                }
                for c in 0..=n {
                    a[(g, off + c)] -= Complex64::new(blk.d1[(0, c)], 0.0);
                }
                row_map[g] = RowTag::JunctionUp;
            } else {
                // Domain row: (-D2 + V) u - lambda psi = 0.
                for c in 0..=n {
                    a[(g, off + c)] = Complex64::new(-blk.d2[(j, c)], 0.0);
                }
                a[(g, g)] += v(node_xs[g]);
                b[(g, t + g)] = one;
                row_map[g] = RowTag::DomainU;
            }
            // psi definition row: psi = lambda u.
            a[(t + g, t + g)] = one;
            b[(t + g, g)] = one;
            row_map[t + g] = RowTag::PsiDef;
        }
    }

    Ok(PencilPair {
        a,
        b,
        row_map,
        node_xs,
        blocks,
        offsets,
    })
}
