//! Small dense symmetric solvers for the covariance matrices used by the
//! discriminant and the synthetic generator. Matrices are row-major `n x n`.

use crate::Scalar;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] += v;
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&v| v * factor).collect() }
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        (0..self.n).all(|i| {
            (0..i).all(|j| {
                let (a, b) = (self.get(i, j), self.get(j, i));
                (a - b).abs() <= tol * T::one().max(a.abs()).max(b.abs())
            })
        })
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn quad_form(&self, x: &[T]) -> T {
        dot(x, &self.mul_vec(x))
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Lower Cholesky factor `L` with `A = L L^T`.
#[derive(Debug, Clone)]
pub struct Cholesky<T> {
    lower: SquareMatrix<T>,
}

impl<T: Scalar> Cholesky<T> {
    /// Fails when a pivot is not positive relative to the largest diagonal entry.
    pub fn factor(a: &SquareMatrix<T>) -> Option<Self> {
        let n = a.dim();
        let scale = (0..n).map(|i| a.get(i, i).abs()).fold(T::zero(), T::max);
        let tol = scale * T::epsilon() * T::from_count(n.max(1)) * T::c(16.0);
        let mut l = SquareMatrix::zeros(n);
        for j in 0..n {
            let mut d = a.get(j, j);
            for k in 0..j {
                d -= l.get(j, k) * l.get(j, k);
            }
            if !(d > tol) || !d.is_finite() {
                return None;
            }
            let djj = d.sqrt();
            l.set(j, j, djj);
            for i in (j + 1)..n {
                let mut s = a.get(i, j);
                for k in 0..j {
                    s -= l.get(i, k) * l.get(j, k);
                }
                l.set(i, j, s / djj);
            }
        }
        Some(Self { lower: l })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.lower.dim();
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let t = self.lower.get(i, k) * y[k];
                y[i] -= t;
            }
            y[i] /= self.lower.get(i, i);
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let t = self.lower.get(k, i) * y[k];
                y[i] -= t;
            }
            y[i] /= self.lower.get(i, i);
        }
        y
    }

    pub fn ln_det(&self) -> T {
        let two = T::c(2.0);
        (0..self.lower.dim()).map(|i| two * self.lower.get(i, i).ln()).sum()
    }

    /// `L x` for a vector `x`.
    pub fn lower_mul(&self, x: &[T]) -> Vec<T> {
        let n = self.lower.dim();
        (0..n).map(|i| (0..=i).map(|k| self.lower.get(i, k) * x[k]).sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_spd_system() {
        let a = SquareMatrix::from_rows(&[vec![4.0, 2.0], vec![2.0, 3.0]]).unwrap();
        let ch = Cholesky::factor(&a).unwrap();
        let x = ch.solve(&[2.0, 1.0]);
        let back = a.mul_vec(&x);
        assert!((back[0] - 2.0_f64).abs() < 1e-14 && (back[1] - 1.0).abs() < 1e-14);
        assert!((ch.ln_det() - 8.0_f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn rejects_singular() {
        let a = SquareMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(Cholesky::<f64>::factor(&a).is_none());
    }
}
