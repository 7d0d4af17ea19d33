//! Internal dense linear-algebra helpers: Pade scaling-and-squaring matrix
//! exponential, the Helmert orthonormal complement of the uniform vector,
//! and canonical ordering of eigenpairs.

use nalgebra::{DMatrix, DVector};

/// Entries must match bitwise; builders and deserialized matrices satisfy
/// this by construction.
pub(crate) fn is_symmetric_exact(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    if m.ncols() != n {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if m[(i, j)] != m[(j, i)] {
                return false;
            }
        }
    }
    true
}

pub(crate) fn all_finite(m: &DMatrix<f64>) -> bool {
    m.iter().all(|x| x.is_finite())
}

pub(crate) fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    0.5 * (m + m.transpose())
}

/// Orthonormal basis of the hyperplane orthogonal to `(1, ..., 1)`:
/// the k-th vector has k entries `1/sqrt(k(k+1))` followed by
/// `-k/sqrt(k(k+1))` and zeros. Component sums vanish exactly in floating
/// point, which keeps uniform-graph variance formulas free of
/// antisqueezing leakage.
pub(crate) fn helmert_columns(n: usize) -> Vec<DVector<f64>> {
    let mut cols = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let norm = ((k * (k + 1)) as f64).sqrt();
        let mut v = DVector::zeros(n);
        for i in 0..k {
            v[i] = 1.0 / norm;
        }
        v[k] = -(k as f64) / norm;
        cols.push(v);
    }
    cols
}

/// Fix the sign of each column so its largest-magnitude component is
/// positive (first such index wins on ties), then sort by descending
/// eigenvalue with lexicographic column order breaking exact ties.
pub(crate) fn canonical_eigen_order(
    eigenvalues: Vec<f64>,
    columns: Vec<DVector<f64>>,
) -> (DVector<f64>, DMatrix<f64>) {
    let n = columns.first().map_or(0, |c| c.len());
    let mut cols: Vec<DVector<f64>> = columns
        .into_iter()
        .map(|mut c| {
            let mut pivot = 0;
            for i in 1..c.len() {
                if c[i].abs() > c[pivot].abs() {
                    pivot = i;
                }
            }
            if c[pivot] < 0.0 {
                c.neg_mut();
            }
            c
        })
        .collect();

    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eigenvalues[b]
            .partial_cmp(&eigenvalues[a])
            .unwrap()
            .then_with(|| {
                for i in 0..n {
                    match cols[a][i].partial_cmp(&cols[b][i]).unwrap() {
                        std::cmp::Ordering::Equal => continue,
                        other => return other,
                    }
                }
                std::cmp::Ordering::Equal
            })
    });

    let vals = DVector::from_iterator(order.len(), order.iter().map(|&i| eigenvalues[i]));
    let mut mat = DMatrix::zeros(n, order.len());
    for (dst, &src) in order.iter().enumerate() {
        mat.set_column(dst, &std::mem::replace(&mut cols[src], DVector::zeros(0)));
    }
    (vals, mat)
}

// Pade-13 numerator coefficients (Higham 2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn norm_1(m: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..m.ncols() {
        let s: f64 = m.column(j).iter().map(|x| x.abs()).sum();
        worst = worst.max(s);
    }
    worst
}

/// Dense matrix exponential by scaling-and-squaring with the [13/13] Pade
/// approximant. Inputs here are always real symmetric, but nothing below
/// assumes it.
pub(crate) fn expm_pade(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    let norm = norm_1(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let b = a * (-s as f64).exp2();

    let b2 = &b * &b;
    let b4 = &b2 * &b2;
    let b6 = &b2 * &b4;
    let ident = DMatrix::identity(n, n);

    let u_inner = &b6 * (PADE13[13] * &b6 + PADE13[11] * &b4 + PADE13[9] * &b2)
        + PADE13[7] * &b6
        + PADE13[5] * &b4
        + PADE13[3] * &b2
        + PADE13[1] * &ident;
    let u = &b * u_inner;
    let v = &b6 * (PADE13[12] * &b6 + PADE13[10] * &b4 + PADE13[8] * &b2)
        + PADE13[6] * &b6
        + PADE13[4] * &b4
        + PADE13[2] * &b2
        + PADE13[0] * &ident;

    let lhs = &v - &u;
    let rhs = &v + &u;
    let mut result = lhs
        .lu()
        .solve(&rhs)
        .expect("Pade denominator is nonsingular for scaled input");

    for _ in 0..s {
        result = &result * &result;
    }
    result
}
