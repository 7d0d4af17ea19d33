//! Gaussian covariance dynamics under graph-defined quadratic Hamiltonians.
//!
//! In Heisenberg picture the quadratures evolve as `X -> e^{tau A} X` and
//! `P -> e^{-tau A} P`, where `A` is the symmetric weight matrix of the
//! interaction graph and `tau` the dimensionless interaction time. Starting
//! from vacuum (covariance = identity), the state stays Gaussian with
//!
//! ```text
//! cov = [ e^{2 tau A}      0        ]
//!       [      0      e^{-2 tau A}  ]
//! ```
//!
//! in block order `(X_1..X_N, P_1..P_N)`.
//!
//! Two evolution methods are provided. The spectral route exponentiates
//! through the eigendecomposition of `A` (exact for symmetric matrices) and
//! keeps the factors, so variances of combinations aligned with exact
//! eigenvectors are evaluated without ever mixing the huge antisqueezed
//! scales into the tiny squeezed ones. The dense route forms the
//! exponential by Pade scaling-and-squaring and serves as the in-library
//! cross-check.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::graphs::{spectrum, InteractionGraph};
use crate::linalg;
use crate::{Error, Result};

/// How matrix exponentials are carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Method {
    #[default]
    #[serde(rename = "analytic-spectral")]
    AnalyticSpectral,
    #[serde(rename = "dense-exponential")]
    DenseExponential,
}

/// Dimensionless interaction time plus method choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionSpec {
    tau: f64,
    method: Method,
}

impl EvolutionSpec {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "interaction time must be finite and non-negative, got {tau}"
            )));
        }
        Ok(EvolutionSpec {
            tau,
            method: Method::default(),
        })
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn method(&self) -> Method {
        self.method
    }
}

/// Linear combination of quadratures `sum_j x[j] X_j + p[j] P_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureForm {
    x: DVector<f64>,
    p: DVector<f64>,
}

impl QuadratureForm {
    pub fn new(x_coeffs: DVector<f64>, p_coeffs: DVector<f64>) -> Result<Self> {
        if x_coeffs.len() != p_coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: x_coeffs.len(),
                found: p_coeffs.len(),
            });
        }
        if x_coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "form must cover at least one mode".into(),
            ));
        }
        if !x_coeffs.iter().chain(p_coeffs.iter()).all(|c| c.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        if x_coeffs.iter().chain(p_coeffs.iter()).all(|&c| c == 0.0) {
            return Err(Error::InvalidArgument(
                "form must have at least one nonzero coefficient".into(),
            ));
        }
        Ok(QuadratureForm {
            x: x_coeffs,
            p: p_coeffs,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.x.len()
    }

    pub fn x_coeffs(&self) -> &DVector<f64> {
        &self.x
    }

    pub fn p_coeffs(&self) -> &DVector<f64> {
        &self.p
    }

    /// Variance on vacuum: the squared Euclidean norm of the coefficients,
    /// since every quadrature independently carries unit vacuum variance.
    pub fn vacuum_variance(&self) -> f64 {
        self.x.iter().chain(self.p.iter()).map(|c| c * c).sum()
    }

    /// Stacked coefficient vector `[x; p]` matching covariance block order.
    pub(crate) fn stacked(&self) -> DVector<f64> {
        let n = self.n_modes();
        let mut c = DVector::zeros(2 * n);
        for i in 0..n {
            c[i] = self.x[i];
            c[n + i] = self.p[i];
        }
        c
    }
}

/// Spectral factorization carried alongside an analytically evolved
/// covariance: `cov_XX = V diag(e^{g}) V^T`, `cov_PP = V diag(e^{-g}) V^T`
/// with `g = 2 tau lambda`.
#[derive(Debug, Clone, PartialEq)]
struct SpectralFactor {
    basis: DMatrix<f64>,
    log_scales: DVector<f64>,
}

/// Zero-mean Gaussian state of `N` modes: `2N x 2N` covariance in block
/// order `(X_1..X_N, P_1..P_N)`, vacuum variance 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct GaussianState {
    cov: DMatrix<f64>,
    mean: DVector<f64>,
    factor: Option<SpectralFactor>,
}

/// JSON shape: `{"n": 2, "cov": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct StateRepr {
    n: usize,
    cov: Vec<Vec<f64>>,
}

impl From<GaussianState> for StateRepr {
    fn from(s: GaussianState) -> Self {
        let d = 2 * s.n_modes();
        let cov = (0..d)
            .map(|i| (0..d).map(|j| s.cov[(i, j)]).collect())
            .collect();
        StateRepr { n: s.n_modes(), cov }
    }
}

impl TryFrom<StateRepr> for GaussianState {
    type Error = Error;

    fn try_from(repr: StateRepr) -> Result<Self> {
        let d = 2 * repr.n;
        if repr.cov.len() != d || repr.cov.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidArgument(format!(
                "covariance must be {d}x{d} for n = {}",
                repr.n
            )));
        }
        let cov = DMatrix::from_fn(d, d, |i, j| repr.cov[i][j]);
        GaussianState::from_cov(cov)
    }
}

impl GaussianState {
    /// Vacuum of `n` modes: identity covariance.
    pub fn vacuum(n: usize) -> Self {
        GaussianState {
            cov: DMatrix::identity(2 * n, 2 * n),
            mean: DVector::zeros(2 * n),
            factor: None,
        }
    }

    /// Wrap an explicit covariance, validating symmetry and positivity
    /// (up to a small relative tolerance, so that strongly squeezed states
    /// survive serialization round-trips).
    pub fn from_cov(cov: DMatrix<f64>) -> Result<Self> {
        let d = cov.nrows();
        if d == 0 || d % 2 != 0 || cov.ncols() != d {
            return Err(Error::InvalidArgument(format!(
                "covariance must be square with even dimension, got {}x{}",
                d,
                cov.ncols()
            )));
        }
        if !linalg::all_finite(&cov) {
            return Err(Error::InvalidArgument("covariance must be finite".into()));
        }
        if !linalg::is_symmetric_exact(&cov) {
            return Err(Error::InvalidArgument("covariance must be symmetric".into()));
        }
        let scale = cov.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let min_eig = nalgebra::SymmetricEigen::new(cov.clone())
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |m, &x| m.min(x));
        if min_eig < -1e-12 * scale.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "covariance is not positive semidefinite (min eigenvalue {min_eig:.3e})"
            )));
        }
        Ok(GaussianState {
            cov,
            mean: DVector::zeros(d),
            factor: None,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.cov.nrows() / 2
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Mean vector; identically zero in this crate (squeezing concerns
    /// fluctuations only).
    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    /// Uncertainty-relation check: `cov + i Omega_s >= 0` with
    /// `Omega_s = [[0, 2I], [-2I, 0]]`, tested through the real symmetric
    /// embedding `[[cov, -Omega_s], [Omega_s, cov]]`.
    pub fn is_physical(&self, tol: f64) -> bool {
        let d = self.cov.nrows();
        let n = d / 2;
        let mut omega = DMatrix::zeros(d, d);
        for i in 0..n {
            omega[(i, n + i)] = 2.0;
            omega[(n + i, i)] = -2.0;
        }
        let mut embed = DMatrix::zeros(2 * d, 2 * d);
        embed.view_mut((0, 0), (d, d)).copy_from(&self.cov);
        embed.view_mut((d, d), (d, d)).copy_from(&self.cov);
        embed.view_mut((0, d), (d, d)).copy_from(&(-&omega));
        embed.view_mut((d, 0), (d, d)).copy_from(&omega);
        nalgebra::SymmetricEigen::new(embed)
            .eigenvalues
            .iter()
            .all(|&x| x >= -tol)
    }

    /// Symplectic eigenvalues, descending. A pure Gaussian state has all of
    /// them equal to 1 in this convention.
    pub fn symplectic_eigenvalues(&self) -> DVector<f64> {
        let d = self.cov.nrows();
        let n = d / 2;
        // symmetric square root of the covariance
        let eig = nalgebra::SymmetricEigen::new(self.cov.clone());
        let sqrt_vals = DVector::from_iterator(d, eig.eigenvalues.iter().map(|&x| x.max(0.0).sqrt()));
        let root = &eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose();

        let mut omega0 = DMatrix::zeros(d, d);
        for i in 0..n {
            omega0[(i, n + i)] = 1.0;
            omega0[(n + i, i)] = -1.0;
        }
        // singular values of root * Omega0 * root come in equal pairs
        let k = &root * omega0 * &root;
        let sv = k.svd(false, false).singular_values;
        let mut paired: Vec<f64> = sv.iter().copied().collect();
        paired.sort_by(|a, b| b.partial_cmp(a).unwrap());
        DVector::from_iterator(n, paired.into_iter().step_by(2))
    }
}

fn block_diag(xx: &DMatrix<f64>, pp: &DMatrix<f64>) -> DMatrix<f64> {
    let n = xx.nrows();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(xx);
    out.view_mut((n, n), (n, n)).copy_from(pp);
    out
}

/// `V diag(e^{scales}) V^T` from an eigenbasis.
fn exp_from_factors(basis: &DMatrix<f64>, scales: &DVector<f64>) -> DMatrix<f64> {
    let expd = DVector::from_iterator(scales.len(), scales.iter().map(|&g| g.exp()));
    linalg::symmetrize(&(basis * DMatrix::from_diagonal(&expd) * basis.transpose()))
}

/// Heisenberg quadrature map `S = diag(e^{tau A}, e^{-tau A})`; symplectic
/// with respect to `Omega_s`.
pub fn symplectic_map(g: &InteractionGraph, spec: &EvolutionSpec) -> DMatrix<f64> {
    let n = g.n_modes();
    if spec.tau == 0.0 {
        return DMatrix::identity(2 * n, 2 * n);
    }
    match spec.method {
        Method::AnalyticSpectral => {
            let s = spectrum(g);
            let scales = DVector::from_iterator(
                n,
                s.eigenvalues().iter().map(|&l| spec.tau * l),
            );
            let xx = exp_from_factors(s.eigenvectors(), &scales);
            let pp = exp_from_factors(s.eigenvectors(), &(-&scales));
            block_diag(&xx, &pp)
        }
        Method::DenseExponential => {
            let a = g.weights();
            let xx = linalg::symmetrize(&linalg::expm_pade(&(spec.tau * a)));
            let pp = linalg::symmetrize(&linalg::expm_pade(&(-spec.tau * a)));
            block_diag(&xx, &pp)
        }
    }
}

/// Evolve vacuum: `cov_XX = e^{2 tau A}`, `cov_PP = e^{-2 tau A}`, no
/// cross-correlations. The spectral method keeps its factorization for
/// accurate variance evaluation later.
pub fn evolve_vacuum(g: &InteractionGraph, spec: &EvolutionSpec) -> GaussianState {
    let n = g.n_modes();
    if spec.tau == 0.0 {
        return GaussianState::vacuum(n);
    }
    match spec.method {
        Method::AnalyticSpectral => {
            let s = spectrum(g);
            let scales = DVector::from_iterator(
                n,
                s.eigenvalues().iter().map(|&l| 2.0 * spec.tau * l),
            );
            let xx = exp_from_factors(s.eigenvectors(), &scales);
            let pp = exp_from_factors(s.eigenvectors(), &(-&scales));
            GaussianState {
                cov: block_diag(&xx, &pp),
                mean: DVector::zeros(2 * n),
                factor: Some(SpectralFactor {
                    basis: s.eigenvectors().clone(),
                    log_scales: scales,
                }),
            }
        }
        Method::DenseExponential => {
            let a = g.weights();
            let xx = linalg::symmetrize(&linalg::expm_pade(&(2.0 * spec.tau * a)));
            let pp = linalg::symmetrize(&linalg::expm_pade(&(-2.0 * spec.tau * a)));
            GaussianState {
                cov: block_diag(&xx, &pp),
                mean: DVector::zeros(2 * n),
                factor: None,
            }
        }
    }
}

/// Variance `c^T cov c` of a quadrature combination.
///
/// When the state carries a spectral factorization the quadratic form is
/// evaluated per eigencomponent, which avoids the absolute noise floor a
/// materialized covariance would impose on strongly squeezed directions.
pub fn variance(state: &GaussianState, form: &QuadratureForm) -> Result<f64> {
    if form.n_modes() != state.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: state.n_modes(),
            found: form.n_modes(),
        });
    }
    Ok(bilinear(state, form, form))
}

/// Covariance `c^T cov d` between two quadrature combinations.
pub(crate) fn covariance(
    state: &GaussianState,
    f: &QuadratureForm,
    g: &QuadratureForm,
) -> Result<f64> {
    if f.n_modes() != state.n_modes() || g.n_modes() != state.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: state.n_modes(),
            found: f.n_modes().max(g.n_modes()),
        });
    }
    Ok(bilinear(state, f, g))
}

fn bilinear(state: &GaussianState, f: &QuadratureForm, g: &QuadratureForm) -> f64 {
    match &state.factor {
        Some(fac) => {
            let vt = fac.basis.transpose();
            let fx = &vt * f.x_coeffs();
            let fp = &vt * f.p_coeffs();
            let gx = &vt * g.x_coeffs();
            let gp = &vt * g.p_coeffs();
            let mut acc = 0.0;
            for i in 0..fac.log_scales.len() {
                acc += fac.log_scales[i].exp() * fx[i] * gx[i];
                acc += (-fac.log_scales[i]).exp() * fp[i] * gp[i];
            }
            acc
        }
        None => (f.stacked().transpose() * &state.cov * g.stacked())[(0, 0)],
    }
}

/// Squeezing of a combination relative to vacuum, in dB:
/// `10 log10(Var / Var_vacuum)`. Negative means squeezed.
pub fn squeezing_db(state: &GaussianState, form: &QuadratureForm) -> Result<f64> {
    let v = variance(state, form)?;
    Ok(10.0 * (v / form.vacuum_variance()).log10())
}

/// Infinite-time limit of a combination's variance, computed spectrally.
///
/// On the eigenvector with eigenvalue `lambda`, the X-component grows like
/// `e^{2 tau lambda}` and the P-component like `e^{-2 tau lambda}`;
/// components on strictly contracting directions vanish, components on the
/// kernel persist, and any component on an expanding direction diverges.
/// Returns `f64::INFINITY` in the divergent case. Eigenvalues and
/// components smaller than `1e-10` relative to their natural scale are
/// treated as zero.
pub fn limit_variance(g: &InteractionGraph, form: &QuadratureForm) -> Result<f64> {
    if form.n_modes() != g.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: g.n_modes(),
            found: form.n_modes(),
        });
    }
    let s = spectrum(g);
    let a_scale = g
        .weights()
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    let c_scale = form
        .x_coeffs()
        .iter()
        .chain(form.p_coeffs().iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    let lam_tol = 1e-10 * a_scale;
    let coef_tol = 1e-10 * c_scale;

    let vt = s.eigenvectors().transpose();
    let xc = &vt * form.x_coeffs();
    let pc = &vt * form.p_coeffs();

    let mut finite = 0.0;
    for (i, &lambda) in s.eigenvalues().iter().enumerate() {
        if lambda > lam_tol {
            if xc[i].abs() > coef_tol {
                return Ok(f64::INFINITY);
            }
        } else if lambda < -lam_tol {
            if pc[i].abs() > coef_tol {
                return Ok(f64::INFINITY);
            }
        } else {
            finite += xc[i] * xc[i] + pc[i] * pc[i];
        }
    }
    Ok(finite)
}
