//! Double-double (~106-bit significand) arithmetic and a dense matrix
//! exponential built on it.
//!
//! Purpose: an `f64` scaling-and-squaring exponential of a matrix with
//! spectral spread `s` carries an absolute noise floor of roughly
//! `e^s * 1e-16` per entry, which is far too coarse to certify squeezed
//! variances of order `e^{-s}` at tight absolute tolerances. Carrying the
//! exponential and the quadrature quadratic form in double-double pushes
//! that floor to ~`e^s * 1e-32`, so the oracle stays meaningful across the
//! whole parameter grid exercised by the acceptance checks.
//!
//! The algorithms are the textbook ones: Dekker/Knuth error-free
//! transformations for the scalar type, and scaling-and-squaring with a
//! truncated Taylor series for the exponential (adequate here because the
//! scaled norm is kept below 1/4 and terms are accumulated to ~1e-38).

mod dd;
mod matrix;

pub use dd::Dd;
pub use matrix::DdMatrix;

/// `exp(t * A)` for a square matrix given row-major as `f64`, carried in
/// double-double end to end.
pub fn expm_scaled(a: &[f64], n: usize, t: f64) -> DdMatrix {
    assert_eq!(a.len(), n * n, "matrix data length must be n^2");
    let mut m = DdMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, Dd::two_product(t, a[i * n + j]));
        }
    }
    m.expm()
}

/// Quadratic form `c^T M c` evaluated in double-double, rounded once at the end.
pub fn quadratic_form(m: &DdMatrix, c: &[f64]) -> f64 {
    assert_eq!(c.len(), m.dim(), "coefficient length must match matrix dim");
    let mut acc = Dd::ZERO;
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            acc = acc + m.get(i, j) * Dd::two_product(c[i], c[j]);
        }
    }
    acc.to_f64()
}

/// Variance of the quadrature combination `(x, p)` on the covariance of a
/// vacuum state evolved under the symmetric coupling matrix `a` for the
/// dimensionless time `tau`: `x^T e^{2 tau A} x + p^T e^{-2 tau A} p`.
///
/// This is the full dense-exponential route with no spectral shortcuts, so
/// it is independent of implementations that factor through an
/// eigendecomposition.
pub fn evolved_vacuum_variance(a: &[f64], n: usize, tau: f64, x: &[f64], p: &[f64]) -> f64 {
    assert_eq!(x.len(), n, "x coefficient length");
    assert_eq!(p.len(), n, "p coefficient length");
    let cov_xx = expm_scaled(a, n, 2.0 * tau);
    let cov_pp = expm_scaled(a, n, -2.0 * tau);
    let mut acc = Dd::ZERO;
    for i in 0..n {
        for j in 0..n {
            acc = acc + cov_xx.get(i, j) * Dd::two_product(x[i], x[j]);
            acc = acc + cov_pp.get(i, j) * Dd::two_product(p[i], p[j]);
        }
    }
    acc.to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_roundtrip_and_products() {
        let a = Dd::from(0.1) + Dd::from(0.2);
        // double-double resolves the classic 0.1 + 0.2 residue
        let err = (a - Dd::from(0.3)).to_f64();
        assert!(err.abs() < 1e-16 && err != 0.0);

        let p = Dd::two_product(1.0e8 + 1.0, 1.0e8 - 1.0);
        assert_eq!(p.to_f64(), 1.0e16 - 1.0);
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = Dd::from(std::f64::consts::PI);
        let y = Dd::from(std::f64::consts::E);
        let z = (x * y) / y;
        assert!((z - x).to_f64().abs() < 1e-30);
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let a = vec![0.0; 9];
        let e = expm_scaled(&a, 3, 1.0);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(e.get(i, j).to_f64(), want);
            }
        }
    }

    #[test]
    fn expm_matches_hyperbolic_closed_form() {
        // exp(t * [[0,1],[1,0]]) = [[cosh t, sinh t],[sinh t, cosh t]]
        let a = vec![0.0, 1.0, 1.0, 0.0];
        for &t in &[0.3, 1.0, 2.5, 7.0] {
            let e = expm_scaled(&a, 2, t);
            let c = t.cosh();
            let s = t.sinh();
            assert!((e.get(0, 0).to_f64() - c).abs() <= 4.0 * f64::EPSILON * c);
            assert!((e.get(0, 1).to_f64() - s).abs() <= 4.0 * f64::EPSILON * c);
            assert!((e.get(1, 0).to_f64() - s).abs() <= 4.0 * f64::EPSILON * c);
            assert!((e.get(1, 1).to_f64() - c).abs() <= 4.0 * f64::EPSILON * c);
        }
    }

    #[test]
    fn expm_inverse_cancels_far_below_f64_noise() {
        // exp(tA) * exp(-tA) = I; the residual gauges the working precision.
        let a = vec![0.0, 1.0, 2.0, 1.0, -0.5, 1.0, 2.0, 1.0, 0.25];
        let t = 3.0;
        let e = expm_scaled(&a, 3, t);
        let einv = expm_scaled(&a, 3, -t);
        let prod = e.mul(&einv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (prod.get(i, j).to_f64() - want).abs() < 1e-24,
                    "residual too large at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn variance_oracle_matches_rank_one_formula() {
        // all-ones coupling: e^{-2 tau J} = I + (e^{-2 tau N} - 1)/N * J,
        // so the phase-sum variance is N * e^{-2 tau N}.
        let n = 5;
        let a = vec![1.0; n * n];
        let ones = vec![1.0; n];
        let zeros = vec![0.0; n];
        for &tau in &[0.0, 0.4, 1.0, 2.0] {
            let v = evolved_vacuum_variance(&a, n, tau, &zeros, &ones);
            let want = n as f64 * (-2.0 * tau * n as f64).exp();
            assert!((v - want).abs() < 1e-14 * want.max(1.0));
        }
    }
}
