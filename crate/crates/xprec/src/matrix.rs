//! Minimal dense square matrix over [`Dd`], just enough for
//! scaling-and-squaring exponentials of small matrices.

use crate::dd::Dd;

#[derive(Clone, Debug)]
pub struct DdMatrix {
    n: usize,
    data: Vec<Dd>,
}

impl DdMatrix {
    pub fn zeros(n: usize) -> Self {
        DdMatrix {
            n,
            data: vec![Dd::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Dd::ONE);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Dd {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Dd) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &DdMatrix) -> DdMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = DdMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.hi == 0.0 && a.lo == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * rhs.get(k, j));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &DdMatrix) -> DdMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o = *o + *r;
        }
        out
    }

    pub fn scale_pow2(&self, exp: i32) -> DdMatrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = v.ldexp(exp);
        }
        out
    }

    /// Max-row-sum norm, rounded to `f64` (only used to pick the scaling).
    pub fn norm_inf(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            let mut row = 0.0;
            for j in 0..self.n {
                row += self.get(i, j).abs().to_f64();
            }
            worst = worst.max(row);
        }
        worst
    }

    /// Matrix exponential by scaling-and-squaring with a Taylor series.
    ///
    /// The input is scaled so its norm is at most 1/4; the series then
    /// converges very fast and is truncated once terms fall below 1e-38
    /// relative to the running sum.
    pub fn expm(&self) -> DdMatrix {
        let n = self.n;
        let norm = self.norm_inf();
        let s = if norm > 0.25 {
            (norm / 0.25).log2().ceil() as i32
        } else {
            0
        };
        let b = self.scale_pow2(-s);

        let mut sum = DdMatrix::identity(n);
        let mut term = DdMatrix::identity(n);
        for k in 1..=96u32 {
            term = term.mul(&b);
            for v in term.data.iter_mut() {
                *v = *v / (k as f64);
            }
            sum = sum.add(&term);
            if term.norm_inf() < 1e-38 * sum.norm_inf().max(1.0) {
                break;
            }
        }

        let mut result = sum;
        for _ in 0..s {
            result = result.mul(&result);
        }
        result
    }
}
