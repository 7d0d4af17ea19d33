//! GHZ entanglement-witness observables and the combined-variance
//! separability test.
//!
//! The witnesses are the phase sum `P_1 + ... + P_N` and the amplitude
//! differences `X_k - X_l`. For each pair `(k, l)` the combined variance
//! `Var(X_k - X_l) + Var(sum P)` is compared against a separability bound;
//! with unit gains and vacuum variance 1 per quadrature the bound is 4
//! (the minimum each term can reach jointly on separable states), and a
//! combined variance strictly below it flags entanglement.

use nalgebra::DVector;
use serde::Serialize;

use crate::dynamics::{variance, GaussianState, QuadratureForm};
use crate::{Error, Result};

/// Separability threshold for unit-gain combined variances in the
/// vacuum-variance-1 convention.
pub const DEFAULT_WITNESS_BOUND: f64 = 4.0;

/// `sum_j P_j` over `n` modes.
pub fn phase_sum_form(n: usize) -> Result<QuadratureForm> {
    if n < 1 {
        return Err(Error::InvalidArgument("need at least 1 mode".into()));
    }
    QuadratureForm::new(DVector::zeros(n), DVector::from_element(n, 1.0))
}

/// `X_k - X_l` with 1-based mode indices `1 <= k < l <= n`.
pub fn amplitude_diff_form(n: usize, k: usize, l: usize) -> Result<QuadratureForm> {
    if k < 1 || l <= k || l > n {
        return Err(Error::InvalidArgument(format!(
            "mode pair must satisfy 1 <= k < l <= {n}, got ({k}, {l})"
        )));
    }
    let mut x = DVector::zeros(n);
    x[k - 1] = 1.0;
    x[l - 1] = -1.0;
    QuadratureForm::new(x, DVector::zeros(n))
}

/// Verdict for one mode pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairWitness {
    /// 1-based first mode index.
    pub k: usize,
    /// 1-based second mode index.
    pub l: usize,
    pub var_x_diff: f64,
    /// `var_x_diff + var_p_sum`.
    pub combined: f64,
    /// `combined < bound`, strictly.
    pub violated: bool,
}

/// Combined-variance witness evaluation over all mode pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub var_p_sum: f64,
    pub bound: f64,
    pub pairs: Vec<PairWitness>,
}

impl WitnessReport {
    pub fn pair(&self, k: usize, l: usize) -> Option<&PairWitness> {
        self.pairs.iter().find(|p| p.k == k && p.l == l)
    }

    pub fn all_violated(&self) -> bool {
        self.pairs.iter().all(|p| p.violated)
    }

    pub fn any_violated(&self) -> bool {
        self.pairs.iter().any(|p| p.violated)
    }
}

/// Witness evaluation at the default bound of 4.
pub fn ghz_witness(state: &GaussianState) -> Result<WitnessReport> {
    ghz_witness_with_bound(state, DEFAULT_WITNESS_BOUND)
}

/// Witness evaluation at a caller-chosen separability bound.
pub fn ghz_witness_with_bound(state: &GaussianState, bound: f64) -> Result<WitnessReport> {
    let n = state.n_modes();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "witness needs at least 2 modes".into(),
        ));
    }
    if !bound.is_finite() {
        return Err(Error::InvalidArgument("bound must be finite".into()));
    }
    let var_p_sum = variance(state, &phase_sum_form(n)?)?;
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..=n {
        for l in (k + 1)..=n {
            let var_x_diff = variance(state, &amplitude_diff_form(n, k, l)?)?;
            let combined = var_x_diff + var_p_sum;
            pairs.push(PairWitness {
                k,
                l,
                var_x_diff,
                combined,
                violated: combined < bound,
            });
        }
    }
    Ok(WitnessReport {
        var_p_sum,
        bound,
        pairs,
    })
}
