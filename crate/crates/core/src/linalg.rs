//! Exact rational Gaussian elimination.

use num_traits::Zero;

use crate::lattice::{LatticeVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Consistent, but the solution space has positive dimension; carries
    /// one particular solution (free variables set to zero).
    Underdetermined(Vec<Rational>),
    Inconsistent,
}

impl Solution {
    pub fn unique(self) -> Option<Vec<Rational>> {
        match self {
            Solution::Unique(v) => Some(v),
            _ => None,
        }
    }
}

/// Solves `rows · v = rhs` for `v` with `nvars` unknowns.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], nvars: usize) -> Solution {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v = &*v / &pv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=nvars {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[nvars].is_zero()) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Rational::zero(); nvars];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = a[i][nvars].clone();
    }
    if pivots.len() == nvars {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined(x)
    }
}

/// Coefficients `c` with `target = Σ cᵢ basisᵢ`, if the basis vectors are
/// linearly independent and the target lies in their rational span.
pub fn coordinates_in(basis: &[LatticeVector], target: &LatticeVector) -> Option<Vec<Rational>> {
    let d = target.dim();
    let rows: Vec<Vec<Rational>> = (0..d)
        .map(|i| basis.iter().map(|b| Rational::from_integer(b[i].into())).collect())
        .collect();
    let rhs: Vec<Rational> = target.0.iter().map(|&c| Rational::from_integer(c.into())).collect();
    solve(&rows, &rhs, basis.len()).unique()
}

/// Rank of a list of lattice vectors.
pub fn rank(vectors: &[LatticeVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let d = first.dim();
    let mut a: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.0.iter().map(|&c| Rational::from_integer(c.into())).collect())
        .collect();
    let mut r = 0;
    for col in 0..d {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if !a[i][col].is_zero() {
                let f = &a[i][col] / &a[r][col];
                for j in col..d {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}
