//! Small dense integer matrices acting on lattice coordinates.
//!
//! Matrices act on column vectors: `(M x)_i = Σ_j M_ij x_j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Rational, RationalVector};
use num_bigint::BigInt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Argument(format!("matrix must be square ({n} rows)")));
        }
        Ok(IntMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    /// `I - a bᵀ`, the matrix of `x ↦ x - ⟨x, b⟩ a`.
    pub fn reflection(a: &LatticeVector, b: &LatticeVector) -> Self {
        let n = a.dim();
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, m.get(i, j) - a[i] * b[j]);
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix { n, data: vec![0; n * n] };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(x.dim(), self.n);
        LatticeVector(
            (0..self.n)
                .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
                .collect(),
        )
    }

    pub fn apply_rational(&self, y: &RationalVector) -> RationalVector {
        RationalVector(
            (0..self.n)
                .map(|i| {
                    (0..self.n)
                        .map(|j| &y.0[j] * BigInt::from(self.get(i, j)))
                        .sum::<Rational>()
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(i, j, self.get(j, i));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        (sign * a[n * n - 1]) as i64
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs() == 1
    }

    /// Inverse over the integers; fails unless the determinant is ±1.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let n = self.n;
        if !self.is_unimodular() {
            return Err(Error::Argument(format!(
                "matrix is not invertible over the integers (determinant {})",
                self.determinant()
            )));
        }
        // Gauss-Jordan over the rationals; the result is integral.
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        let v = if j < n { self.get(i, j) } else { (j - n == i) as i64 };
                        Rational::from_integer(BigInt::from(v))
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r][col] != Rational::from_integer(0.into()))
                .expect("unimodular matrix is nonsingular");
            a.swap(col, piv);
            let p = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..n {
                if r != col {
                    let f = a[r][col].clone();
                    if f != Rational::from_integer(0.into()) {
                        for j in 0..2 * n {
                            let t = &a[col][j] * &f;
                            a[r][j] -= t;
                        }
                    }
                }
            }
        }
        let mut out = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j];
                debug_assert!(v.is_integer());
                out.set(i, j, i64::try_from(v.to_integer()).expect("small entries"));
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        IntMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.determinant(), 1);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[0, 1]]));
        assert!(a.mul(&inv).is_identity());
        assert_eq!(m(&[&[2, 0], &[0, 1]]).determinant(), 2);
        assert!(m(&[&[2, 0], &[0, 1]]).inverse().is_err());
        assert_eq!(m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).determinant(), -1);
        assert_eq!(m(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]).determinant(), 4);
    }

    #[test]
    fn reflection_matrix() {
        // s_α for α = (2,-1), α∨ = (1,0)
        let s = IntMatrix::reflection(&LatticeVector::from([2, -1]), &LatticeVector::from([1, 0]));
        assert_eq!(s.apply(&LatticeVector::from([1, 0])), LatticeVector::from([-1, 1]));
        assert_eq!(s.apply(&LatticeVector::from([0, 1])), LatticeVector::from([0, 1]));
        assert!(s.mul(&s).is_identity());
    }

    #[test]
    fn non_square_rejected() {
        assert!(IntMatrix::from_rows(&[vec![1, 2]]).is_err());
    }
}
