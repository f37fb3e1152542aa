// Independent oracles shared by the integration tests. Nothing here calls
// the library's polytope, character or feasibility code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rootdatum::lattice::LatticeVector;
use rootdatum::linalg::coordinates_in;
use rootdatum::matrix::IntMatrix;
use rootdatum::root_datum::{construct, find_simple_system, LatticeKind, RootDatum, SimpleSystem};
use rootdatum::weyl::{generate, WeylGroup};

pub fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector(v.to_vec())
}

pub struct Fixture {
    pub name: String,
    pub datum: RootDatum,
    pub delta: SimpleSystem,
    pub group: WeylGroup,
}

pub fn fixture(label: &str, kind: LatticeKind) -> Fixture {
    let datum = construct(label, kind).unwrap();
    let delta = find_simple_system(&datum, None).unwrap();
    let group = generate(&datum, &delta).unwrap();
    Fixture { name: format!("{label} {kind:?}"), datum, delta, group }
}

pub const ALL: &[(&str, LatticeKind)] = &[
    ("A1", LatticeKind::SimplyConnected),
    ("A1", LatticeKind::Adjoint),
    ("A2", LatticeKind::SimplyConnected),
    ("A2", LatticeKind::Adjoint),
    ("A1xA1", LatticeKind::SimplyConnected),
    ("B2", LatticeKind::SimplyConnected),
    ("G2", LatticeKind::SimplyConnected),
    ("A3", LatticeKind::SimplyConnected),
    ("GL2", LatticeKind::GlVariant),
    ("GL3", LatticeKind::GlVariant),
];

pub const SEMISIMPLE: &[(&str, LatticeKind)] = &[
    ("A1", LatticeKind::SimplyConnected),
    ("A1", LatticeKind::Adjoint),
    ("A2", LatticeKind::SimplyConnected),
    ("A2", LatticeKind::Adjoint),
    ("A1xA1", LatticeKind::SimplyConnected),
    ("B2", LatticeKind::SimplyConnected),
    ("G2", LatticeKind::SimplyConnected),
    ("A3", LatticeKind::SimplyConnected),
];

/// Dominant points with every coordinate in `0..=bound`.
pub fn dominant_box(f: &Fixture, bound: i64) -> Vec<LatticeVector> {
    let d = f.datum.rank();
    let mut out = Vec::new();
    let mut p = vec![0i64; d];
    loop {
        let x = LatticeVector(p.clone());
        if f.delta.simple_coroots().iter().all(|c| x.dot(c) >= 0) {
            out.push(x);
        }
        let mut i = 0;
        while i < d && p[i] == bound {
            p[i] = 0;
            i += 1;
        }
        if i == d {
            return out;
        }
        p[i] += 1;
    }
}

pub fn highest_root(f: &Fixture) -> LatticeVector {
    let h = f.delta.two_rho_check();
    f.delta.positive_roots().iter().max_by_key(|r| r.dot(&h)).unwrap().clone()
}

pub fn two_rho(f: &Fixture) -> LatticeVector {
    f.delta.positive_roots().iter().fold(LatticeVector::zero(f.datum.rank()), |a, r| &a + r)
}

// ---------------------------------------------------------------------------
// Weyl dimension and Kostant multiplicity

/// `Π_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`, evaluated with `2λ + 2ρ` and `2ρ`.
pub fn weyl_dimension(f: &Fixture, lambda: &LatticeVector) -> i64 {
    let rho2 = two_rho(f);
    let top = &lambda.scale(2) + &rho2;
    let mut num = BigRational::one();
    for c in f.delta.positive_coroots() {
        num *= BigRational::new(top.dot(c).into(), rho2.dot(c).into());
    }
    assert!(num.is_integer());
    num.to_integer().try_into().unwrap()
}

/// Number of ways to write `v` as a nonnegative integer combination of the
/// positive roots.
pub struct Partition {
    positives: Vec<Vec<i64>>,
    simples: Vec<LatticeVector>,
    memo: HashMap<(usize, Vec<i64>), i64>,
}

impl Partition {
    pub fn new(f: &Fixture) -> Self {
        let simples = f.delta.simple_roots().to_vec();
        let positives = f
            .delta
            .positive_roots()
            .iter()
            .map(|r| simple_coords(&simples, r).unwrap())
            .collect();
        Partition { positives, simples, memo: HashMap::new() }
    }

    pub fn count(&mut self, v: &LatticeVector) -> i64 {
        if v.is_zero() {
            return 1;
        }
        match simple_coords(&self.simples, v) {
            Some(c) if c.iter().all(|&x| x >= 0) => self.count_from(0, c),
            _ => 0,
        }
    }

    fn count_from(&mut self, k: usize, v: Vec<i64>) -> i64 {
        if v.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == self.positives.len() {
            return 0;
        }
        if let Some(&n) = self.memo.get(&(k, v.clone())) {
            return n;
        }
        let mut total = 0;
        let mut rest = v.clone();
        loop {
            total += self.count_from(k + 1, rest.clone());
            for (r, p) in rest.iter_mut().zip(&self.positives[k]) {
                *r -= p;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
        self.memo.insert((k, v), total);
        total
    }
}

fn simple_coords(simples: &[LatticeVector], v: &LatticeVector) -> Option<Vec<i64>> {
    if simples.is_empty() {
        return v.is_zero().then(Vec::new);
    }
    let c = coordinates_in(simples, v)?;
    c.iter()
        .map(|q| q.is_integer().then(|| q.to_integer().try_into().unwrap()))
        .collect()
}

/// Kostant: `m_λ(μ) = Σ_w det(w) P(w(λ+ρ) - (μ+ρ))`.
pub fn kostant_multiplicity(f: &Fixture, part: &mut Partition, lambda: &LatticeVector, mu: &LatticeVector) -> i64 {
    let rho2 = two_rho(f);
    let a = &lambda.scale(2) + &rho2;
    let b = &mu.scale(2) + &rho2;
    let mut total = 0;
    for w in f.group.elements() {
        let diff = &w.apply(&a) - &b;
        let Some(half) = diff.div_exact(2) else { continue };
        let n = part.count(&half);
        if n != 0 {
            total += w.matrix.determinant() * n;
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Exact planar convex hulls

fn cross(o: &LatticeVector, a: &LatticeVector, b: &LatticeVector) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Hull vertices in counter-clockwise order (monotone chain, collinear
/// points dropped).
pub fn planar_hull(points: &BTreeSet<LatticeVector>) -> Vec<LatticeVector> {
    let pts: Vec<LatticeVector> = points.iter().cloned().collect();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<LatticeVector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<LatticeVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn in_planar_hull(hull: &[LatticeVector], p: &LatticeVector) -> bool {
    match hull.len() {
        0 => false,
        1 => &hull[0] == p,
        2 => {
            cross(&hull[0], &hull[1], p) == 0
                && (0..2).all(|i| p[i] >= hull[0][i].min(hull[1][i]) && p[i] <= hull[0][i].max(hull[1][i]))
        }
        n => (0..n).all(|i| cross(&hull[i], &hull[(i + 1) % n], p) >= 0),
    }
}

/// Sorted edge pairs of a planar hull.
pub fn planar_edges(hull: &[LatticeVector]) -> BTreeSet<(LatticeVector, LatticeVector)> {
    let n = hull.len();
    let sorted = |a: &LatticeVector, b: &LatticeVector| if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    match n {
        0 | 1 => BTreeSet::new(),
        2 => BTreeSet::from([sorted(&hull[0], &hull[1])]),
        _ => (0..n).map(|i| sorted(&hull[i], &hull[(i + 1) % n])).collect(),
    }
}

/// `(λ + ZΦ) ∩ conv(W λ)` for rank ≤ 2 by brute force over the bounding box.
pub fn brute_weight_set(f: &Fixture, lambda: &LatticeVector) -> BTreeSet<LatticeVector> {
    let orbit: BTreeSet<LatticeVector> = f.group.elements().iter().map(|w| w.apply(lambda)).collect();
    let d = f.datum.rank();
    assert!(d <= 2);
    let lo: Vec<i64> = (0..d).map(|i| orbit.iter().map(|p| p[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|i| orbit.iter().map(|p| p[i]).max().unwrap()).collect();
    let in_coset = |x: &LatticeVector| simple_coords(f.delta.simple_roots(), &(x - lambda)).is_some();
    let mut out = BTreeSet::new();
    if d == 1 {
        for a in lo[0]..=hi[0] {
            let x = lv(&[a]);
            if in_coset(&x) {
                out.insert(x);
            }
        }
        return out;
    }
    let hull = planar_hull(&orbit);
    for a in lo[0]..=hi[0] {
        for b in lo[1]..=hi[1] {
            let x = lv(&[a, b]);
            if in_coset(&x) && in_planar_hull(&hull, &x) {
                out.insert(x);
            }
        }
    }
    out
}

/// Vertices and edges of a rank-1 "polytope" (an interval).
pub fn interval_edges(points: &BTreeSet<LatticeVector>) -> BTreeSet<(LatticeVector, LatticeVector)> {
    let lo = points.iter().next().unwrap().clone();
    let hi = points.iter().next_back().unwrap().clone();
    if lo == hi {
        BTreeSet::new()
    } else {
        BTreeSet::from([(lo, hi)])
    }
}

// ---------------------------------------------------------------------------
// Random data

/// A random matrix with entries in `[-bound, bound]` and determinant ±1.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        if m.is_unimodular() {
            return m;
        }
    }
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let n: i64 = rng.gen_range(-20..=20);
    let d: i64 = rng.gen_range(1..=7);
    BigRational::new(n.into(), d.into())
}
