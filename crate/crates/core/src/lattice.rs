//! Integer lattice vectors, rational covectors and the lattice primitives
//! used by the polytope and reconstruction code: the canonical pairing,
//! indivisible elements of a finite set and lattice points on a segment.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A point of a character or cocharacter lattice, in a fixed basis.
///
/// Ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Integer pairing with a vector of the dual lattice.
    pub fn dot(&self, other: &LatticeVector) -> i64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: i64, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    /// Exact division by `n`, if every coordinate is divisible.
    pub fn div_exact(&self, n: i64) -> Option<LatticeVector> {
        if n == 0 || self.0.iter().any(|c| c % n != 0) {
            return None;
        }
        Some(LatticeVector(self.0.iter().map(|c| c / n).collect()))
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|&c| rat(c)).collect())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(v: [i64; N]) -> Self {
        LatticeVector(v.to_vec())
    }
}

impl Index<usize> for LatticeVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

/// A vector with exact rational coordinates, e.g. an element of `Y ⊗ Q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zero(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&c| rat(c)).collect())
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// The lattice vector with the same coordinates, if all are integers.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.0
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(LatticeVector)
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

/// The canonical pairing `⟨x, y⟩ = Σ xᵢ yᵢ` between `X` and `Y ⊗ Q`.
pub fn pairing(x: &LatticeVector, y: &RationalVector) -> Result<Rational> {
    check_dim(x.dim(), y.dim())?;
    Ok(x.0
        .iter()
        .zip(&y.0)
        .map(|(&a, b)| b * BigInt::from(a))
        .sum())
}

/// Elements `x ∈ K` such that `x / n ∉ K` for every integer `n > 1`.
///
/// Only divisors of the content of `x` can give a lattice point, so those
/// are the only `n` tested. `0` is never indivisible when it lies in `K`.
pub fn indivisible_elements(set: &BTreeSet<LatticeVector>) -> BTreeSet<LatticeVector> {
    set.iter()
        .filter(|x| {
            if x.is_zero() {
                return false;
            }
            let g = x.content();
            (2..=g)
                .filter(|n| g % n == 0)
                .all(|n| !set.contains(&x.div_exact(n).expect("n divides content")))
        })
        .cloned()
        .collect()
}

/// All lattice points on the closed segment `[a, b]`, ordered from `a` to `b`.
pub fn lattice_points_on_segment(a: &LatticeVector, b: &LatticeVector) -> Vec<LatticeVector> {
    let diff = b - a;
    let g = diff.content();
    if g == 0 {
        return vec![a.clone()];
    }
    let step = diff.div_exact(g).expect("content divides");
    (0..=g).map(|t| a.add_scaled(t, &step)).collect()
}
