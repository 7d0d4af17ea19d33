//! Squeezing-interaction graphs and their spectra.
//!
//! A graph holds the symmetric matrix of interaction weights between optical
//! modes, in units of the nonlinear coupling. Off-diagonal entries weight
//! two-mode squeezing edges; diagonal entries weight single-mode (self-loop)
//! squeezing. The matrix exponential of this adjacency matrix drives the
//! whole quadrature dynamics, so its eigensystem is the quantity of
//! interest.
//!
//! Three uniform complete-graph families recur throughout:
//!
//! - `ghz_graph`: off-diagonal 1, diagonal 0 - eigenvalues `{N-1, -1, ...}`.
//! - `vlb_graph`: off-diagonal 1, diagonal `-(N-2)/2` - eigenvalues
//!   `{N/2, -N/2, ...}`.
//! - `allones_graph`: every entry 1 - eigenvalues `{N, 0, ...}`.
//!
//! All of these are `a*(J - I) + d*I` for constant off-diagonal `a` and
//! diagonal `d`, so [`spectrum`] recognizes that shape and returns the exact
//! eigensystem (uniform vector plus Helmert complement) instead of running
//! the dense eigensolver.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::{Error, Result};

/// Weighted symmetric coupling graph over `n` optical modes.
///
/// Invariants enforced at construction: the matrix is square with at least
/// one row, exactly symmetric, and every entry is finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct InteractionGraph {
    weights: DMatrix<f64>,
}

/// JSON shape: `{"n": 3, "weights": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    weights: Vec<Vec<f64>>,
}

impl From<InteractionGraph> for GraphRepr {
    fn from(g: InteractionGraph) -> Self {
        let n = g.n_modes();
        let weights = (0..n)
            .map(|i| (0..n).map(|j| g.weights[(i, j)]).collect())
            .collect();
        GraphRepr { n, weights }
    }
}

impl TryFrom<GraphRepr> for InteractionGraph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        if repr.weights.len() != repr.n {
            return Err(Error::InvalidArgument(format!(
                "declared n = {} but weights has {} rows",
                repr.n,
                repr.weights.len()
            )));
        }
        if repr.weights.iter().any(|row| row.len() != repr.n) {
            return Err(Error::InvalidArgument(
                "weights rows must all have length n".into(),
            ));
        }
        let m = DMatrix::from_fn(repr.n, repr.n, |i, j| repr.weights[i][j]);
        InteractionGraph::from_weights(m)
    }
}

impl InteractionGraph {
    /// Wrap a weight matrix, validating the type invariants.
    pub fn from_weights(weights: DMatrix<f64>) -> Result<Self> {
        if weights.nrows() == 0 || weights.nrows() != weights.ncols() {
            return Err(Error::InvalidArgument(format!(
                "weights must be square and non-empty, got {}x{}",
                weights.nrows(),
                weights.ncols()
            )));
        }
        if !linalg::all_finite(&weights) {
            return Err(Error::InvalidArgument(
                "weights must be finite".into(),
            ));
        }
        if !linalg::is_symmetric_exact(&weights) {
            return Err(Error::InvalidArgument(
                "weights must be symmetric".into(),
            ));
        }
        Ok(InteractionGraph { weights })
    }

    pub fn n_modes(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    pub fn weight(&self, k: usize, l: usize) -> f64 {
        self.weights[(k, l)]
    }

    pub fn spectrum(&self) -> Spectrum {
        spectrum(self)
    }

    /// `(off_diagonal, diagonal)` when every off-diagonal entry is one
    /// constant and every diagonal entry another; the shape with exact
    /// closed-form eigensystem.
    pub(crate) fn uniform_profile(&self) -> Option<(f64, f64)> {
        let n = self.n_modes();
        let d = self.weights[(0, 0)];
        let a = if n > 1 { self.weights[(0, 1)] } else { 0.0 };
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { d } else { a };
                if self.weights[(i, j)] != want {
                    return None;
                }
            }
        }
        Some((a, d))
    }
}

/// Fully connected graph with unit two-mode edges and no self-loops:
/// `A[k][l] = 1 - delta[k][l]`.
pub fn ghz_graph(n: usize) -> Result<InteractionGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "a pairwise-coupled graph needs at least 2 modes, got {n}"
        )));
    }
    let m = DMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { 1.0 });
    InteractionGraph::from_weights(m)
}

/// Unit edges plus self-loops of opposite sign and strength `(N-2)/2`,
/// the beam-splitter-network equivalent graph.
pub fn vlb_graph(n: usize) -> Result<InteractionGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "a pairwise-coupled graph needs at least 2 modes, got {n}"
        )));
    }
    let diag = -((n as f64) - 2.0) / 2.0;
    let m = DMatrix::from_fn(n, n, |i, j| if i == j { diag } else { 1.0 });
    InteractionGraph::from_weights(m)
}

/// Every entry 1, including unit self-loops; eigenvalues `{N, 0, ..., 0}`.
pub fn allones_graph(n: usize) -> Result<InteractionGraph> {
    if n < 1 {
        return Err(Error::InvalidArgument("need at least 1 mode".into()));
    }
    InteractionGraph::from_weights(DMatrix::from_element(n, n, 1.0))
}

/// Full eigendecomposition of a graph's weight matrix.
///
/// Eigenvalues are sorted descending; exact ties are broken by
/// lexicographic order of the sign-normalized eigenvectors, so repeated
/// calls are reproducible. Eigenvectors within a degenerate block are basis
/// choices, not invariants - compare subspace projectors, not columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Spectrum {
    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as columns, ordered like the eigenvalues.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// `V diag(lambda) V^T`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let v = &self.eigenvectors;
        v * DMatrix::from_diagonal(&self.eigenvalues) * v.transpose()
    }

    /// Orthogonal projector onto the span of eigenvectors whose eigenvalue
    /// lies within `tol` of `target`. This is the right object to compare
    /// across eigensolvers when eigenvalues are degenerate.
    pub fn projector(&self, target: f64, tol: f64) -> DMatrix<f64> {
        let n = self.eigenvectors.nrows();
        let mut p = DMatrix::zeros(n, n);
        for (i, &lambda) in self.eigenvalues.iter().enumerate() {
            if (lambda - target).abs() <= tol {
                let v = self.eigenvectors.column(i);
                p += v * v.transpose();
            }
        }
        p
    }
}

/// Eigendecomposition of a graph, exact for uniform complete-graph families
/// and dense otherwise.
pub fn spectrum(g: &InteractionGraph) -> Spectrum {
    let n = g.n_modes();
    if let Some((a, d)) = g.uniform_profile() {
        // a*(J - I) + d*I: uniform vector at a*(n-1)+d, Helmert complement
        // at d-a.
        let lambda_ones = a * ((n - 1) as f64) + d;
        let lambda_perp = d - a;
        let mut vals = Vec::with_capacity(n);
        let mut cols = Vec::with_capacity(n);
        let inv_sqrt = 1.0 / (n as f64).sqrt();
        vals.push(lambda_ones);
        cols.push(DVector::from_element(n, inv_sqrt));
        for h in linalg::helmert_columns(n) {
            vals.push(lambda_perp);
            cols.push(h);
        }
        let (eigenvalues, eigenvectors) = linalg::canonical_eigen_order(vals, cols);
        return Spectrum {
            eigenvalues,
            eigenvectors,
        };
    }
    dense_decomposition(g.weights())
}

/// Dense symmetric eigensolver route, exposed as the cross-check against
/// the closed-form path. Errors if the matrix is not exactly symmetric.
pub fn spectrum_dense(m: &DMatrix<f64>) -> Result<Spectrum> {
    if m.nrows() == 0 || m.nrows() != m.ncols() {
        return Err(Error::InvalidArgument(format!(
            "matrix must be square and non-empty, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if !linalg::all_finite(m) {
        return Err(Error::InvalidArgument("matrix must be finite".into()));
    }
    if !linalg::is_symmetric_exact(m) {
        return Err(Error::InvalidArgument("matrix must be symmetric".into()));
    }
    Ok(dense_decomposition(m))
}

fn dense_decomposition(m: &DMatrix<f64>) -> Spectrum {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let cols: Vec<DVector<f64>> = (0..vals.len())
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    let (eigenvalues, eigenvectors) = linalg::canonical_eigen_order(vals, cols);
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}
