//! Formal characters in the group ring of `X`, weight sets and
//! multiplicities of irreducible representations, and decomposition of
//! W-invariant characters into irreducibles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::feasibility::hull_membership;
use crate::lattice::LatticeVector;
use crate::linalg::coordinates_in;
use crate::root_datum::{dominance, two_rho, RootDatum, SimpleSystem};
use crate::weyl::{orbit_by_reflections, WeylGroup};

/// A finite integer combination of characters of the torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    rank: usize,
    terms: BTreeMap<LatticeVector, i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterTerm {
    pub weight: LatticeVector,
    pub mult: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    terms: Vec<CharacterTerm>,
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> Self {
        FormalCharacter { rank, terms: BTreeMap::new() }
    }

    pub fn monomial(weight: LatticeVector, mult: i64) -> Self {
        let mut c = FormalCharacter::zero(weight.dim());
        c.add_term(weight, mult);
        c
    }

    /// Sums repeated weights; every weight must have dimension `rank`.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticeVector, i64)>,
    {
        let mut c = FormalCharacter::zero(rank);
        for (w, m) in terms {
            check_dim(rank, w.dim())?;
            c.add_term(w, m);
        }
        Ok(c)
    }

    /// Each weight with multiplicity one per occurrence.
    pub fn from_multiset<'a, I>(rank: usize, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a LatticeVector>,
    {
        FormalCharacter::from_terms(rank, weights.into_iter().map(|w| (w.clone(), 1)))
    }

    fn add_term(&mut self, weight: LatticeVector, mult: i64) {
        let e = self.terms.entry(weight.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&weight);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, i64> {
        &self.terms
    }

    pub fn mult(&self, weight: &LatticeVector) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn support(&self) -> BTreeSet<LatticeVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the multiplicities (the dimension, for a genuine character).
    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        self.add_scaled(1, other)
    }

    pub fn add_scaled(&self, k: i64, other: &FormalCharacter) -> Result<FormalCharacter> {
        check_dim(self.rank, other.rank)?;
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_term(w.clone(), k * m);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> FormalCharacter {
        FormalCharacter::zero(self.rank).add_scaled(k, self).expect("same rank")
    }

    pub fn term_list(&self) -> Vec<CharacterTerm> {
        self.terms
            .iter()
            .map(|(w, &m)| CharacterTerm { weight: w.clone(), mult: m })
            .collect()
    }

    pub fn from_term_list(rank: usize, terms: Vec<CharacterTerm>) -> Result<Self> {
        FormalCharacter::from_terms(rank, terms.into_iter().map(|t| (t.weight, t.mult)))
    }

    /// The image under a lattice map: weight `x` goes to `m x`.
    pub fn map(&self, m: &crate::matrix::IntMatrix) -> Result<FormalCharacter> {
        check_dim(self.rank, m.dim())?;
        FormalCharacter::from_terms(m.dim(), self.terms.iter().map(|(w, &k)| (m.apply(w), k)))
    }

    pub fn to_doc(&self) -> CharacterDoc {
        CharacterDoc { rank: None, terms: self.term_list() }
    }

    pub fn from_doc(doc: CharacterDoc) -> Result<Self> {
        let rank = match (doc.rank, doc.terms.first()) {
            (Some(r), _) => r,
            (None, Some(t)) => t.weight.dim(),
            (None, None) => 0,
        };
        FormalCharacter::from_terms(rank, doc.terms.into_iter().map(|t| (t.weight, t.mult)))
    }
}

impl Serialize for FormalCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = CharacterDoc::deserialize(d)?;
        FormalCharacter::from_doc(doc).map_err(serde::de::Error::custom)
    }
}

/// Convolution product: the character of a tensor product.
pub fn multiply(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
    check_dim(a.rank, b.rank)?;
    let mut out = FormalCharacter::zero(a.rank);
    for (x, m) in &a.terms {
        for (y, n) in &b.terms {
            out.add_term(x + y, m * n);
        }
    }
    Ok(out)
}

/// Whether `χ ∘ w = χ` for every generator `w` of the group.
pub fn is_w_invariant(group: &WeylGroup, chi: &FormalCharacter) -> bool {
    if chi.rank != group.rank() && !chi.is_zero() {
        return false;
    }
    group
        .generators()
        .iter()
        .all(|g| chi.terms.iter().all(|(w, &m)| chi.mult(&g.apply(w)) == m))
}

/// A highest weight together with the simple system it is dominant for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleLabel {
    pub highest_weight: LatticeVector,
    pub simple_system: SimpleSystem,
}

impl IrreducibleLabel {
    pub fn new(highest_weight: LatticeVector, simple_system: SimpleSystem) -> Result<Self> {
        require_dominant(&highest_weight, &simple_system)?;
        Ok(IrreducibleLabel { highest_weight, simple_system })
    }
}

fn require_dominant(lambda: &LatticeVector, delta: &SimpleSystem) -> Result<()> {
    check_dim(delta.rank(), lambda.dim())?;
    if !dominance(lambda, delta).is_dominant() {
        return Err(Error::Precondition(format!("{lambda} is not dominant")));
    }
    Ok(())
}

/// The dominant point in the orbit of `x`, by simple reflections.
pub fn dominant_in_orbit(delta: &SimpleSystem, x: &LatticeVector) -> LatticeVector {
    let mut y = x.clone();
    while let Some(k) = delta.simple_coroots().iter().position(|c| y.dot(c) < 0) {
        y = y.add_scaled(-y.dot(&delta.simple_coroots()[k]), &delta.simple_roots()[k]);
    }
    y
}

/// Dominant `μ` with `λ - μ` a nonnegative integer combination of simple
/// roots, sorted by decreasing height.
pub fn dominant_weights_below(delta: &SimpleSystem, lambda: &LatticeVector) -> Result<Vec<LatticeVector>> {
    require_dominant(lambda, delta)?;
    let h = delta.two_rho_check();
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        for a in delta.simple_roots() {
            let next = &mu - a;
            // dominant weights have nonnegative height and heights only drop
            if next.dot(&h) >= 0 && !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<LatticeVector> =
        seen.into_iter().filter(|m| dominance(m, delta).is_dominant()).collect();
    out.sort_by(|a, b| b.dot(&h).cmp(&a.dot(&h)).then_with(|| b.cmp(a)));
    Ok(out)
}

/// `wts(ρ_λ)`: the union of the W-orbits of the dominant weights below `λ`.
pub fn weight_set(datum: &RootDatum, delta: &SimpleSystem, lambda: &LatticeVector) -> Result<BTreeSet<LatticeVector>> {
    check_dim(datum.rank(), lambda.dim())?;
    let mut out = BTreeSet::new();
    for mu in dominant_weights_below(delta, lambda)? {
        out.extend(orbit_by_reflections(delta, &mu));
    }
    Ok(out)
}

/// `wts(ρ_λ)` as `(λ + ZΦ) ∩ conv(W λ)`, by testing every lattice point of
/// the bounding box of the orbit.
pub fn weight_set_by_hull(datum: &RootDatum, delta: &SimpleSystem, lambda: &LatticeVector) -> Result<BTreeSet<LatticeVector>> {
    check_dim(datum.rank(), lambda.dim())?;
    require_dominant(lambda, delta)?;
    let orbit: Vec<LatticeVector> = orbit_by_reflections(delta, lambda).into_iter().collect();
    let d = datum.rank();
    let lo: Vec<i64> = (0..d).map(|i| orbit.iter().map(|p| p[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|i| orbit.iter().map(|p| p[i]).max().unwrap()).collect();
    let mut out = BTreeSet::new();
    let mut point = lo.clone();
    loop {
        let x = LatticeVector(point.clone());
        if in_root_coset(delta, lambda, &x) && hull_membership(&x.to_rational(), &orbit)? {
            out.insert(x);
        }
        // odometer step through the box
        let mut i = 0;
        while i < d {
            if point[i] < hi[i] {
                point[i] += 1;
                break;
            }
            point[i] = lo[i];
            i += 1;
        }
        if i == d {
            break;
        }
    }
    Ok(out)
}

fn in_root_coset(delta: &SimpleSystem, lambda: &LatticeVector, x: &LatticeVector) -> bool {
    let diff = x - lambda;
    if diff.is_zero() {
        return true;
    }
    if delta.is_empty() {
        return false;
    }
    coordinates_in(delta.simple_roots(), &diff).is_some_and(|c| c.iter().all(|q| q.is_integer()))
}

/// The W-invariant form `B(x, y) = Σ_{α ∈ Φ} ⟨x, α∨⟩⟨y, α∨⟩`.
pub fn invariant_form(datum: &RootDatum, x: &LatticeVector, y: &LatticeVector) -> i64 {
    datum.coroots().iter().map(|c| x.dot(c) * y.dot(c)).sum()
}

/// Multiplicities of `ρ_λ` by Freudenthal's recursion
/// `B(λ-μ, λ+μ+2ρ) m(μ) = 2 Σ_{α>0} Σ_{k≥1} B(μ+kα, α) m(μ+kα)`.
pub fn freudenthal_multiplicities(
    datum: &RootDatum,
    delta: &SimpleSystem,
    lambda: &LatticeVector,
) -> Result<FormalCharacter> {
    check_dim(datum.rank(), lambda.dim())?;
    let dominant = dominant_weights_below(delta, lambda)?;
    let rho2 = two_rho(delta);
    let support: BTreeSet<LatticeVector> = dominant
        .iter()
        .flat_map(|m| orbit_by_reflections(delta, m))
        .collect();
    let mut mult: BTreeMap<LatticeVector, i64> = BTreeMap::new();
    for mu in &dominant {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut rhs = 0i64;
        for a in delta.positive_roots() {
            let mut k = 1;
            loop {
                let nu = mu.add_scaled(k, a);
                if !support.contains(&nu) {
                    break;
                }
                let m = mult
                    .get(&dominant_in_orbit(delta, &nu))
                    .copied()
                    .ok_or_else(|| Error::Inconsistency(format!("multiplicity of {nu} needed before it is known")))?;
                rhs += 2 * invariant_form(datum, &nu, a) * m;
                k += 1;
            }
        }
        let denom = invariant_form(datum, &(lambda - mu), &(&(lambda + mu) + &rho2));
        if denom <= 0 || rhs % denom != 0 {
            return Err(Error::Inconsistency(format!(
                "Freudenthal recursion at {mu}: {rhs} / {denom} is not a positive integer"
            )));
        }
        mult.insert(mu.clone(), rhs / denom);
    }
    let mut out = FormalCharacter::zero(datum.rank());
    for x in support {
        let m = mult[&dominant_in_orbit(delta, &x)];
        out.add_term(x, m);
    }
    Ok(out)
}

/// Coefficients of a W-invariant character in the basis of irreducible
/// characters, keyed by highest weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub simple_system: SimpleSystem,
    pub coefficients: BTreeMap<LatticeVector, i64>,
}

impl Decomposition {
    pub fn labels(&self) -> Vec<(IrreducibleLabel, i64)> {
        self.coefficients
            .iter()
            .map(|(w, &c)| {
                (IrreducibleLabel { highest_weight: w.clone(), simple_system: self.simple_system.clone() }, c)
            })
            .collect()
    }

    /// `Σ c_λ χ_λ`.
    pub fn recompose(&self, datum: &RootDatum) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::zero(datum.rank());
        for (w, &c) in &self.coefficients {
            out = out.add_scaled(c, &freudenthal_multiplicities(datum, &self.simple_system, w)?)?;
        }
        Ok(out)
    }
}

/// Peels off the irreducible character of the highest dominant weight in
/// the support until nothing is left.
pub fn decompose(
    datum: &RootDatum,
    delta: &SimpleSystem,
    group: &WeylGroup,
    chi: &FormalCharacter,
) -> Result<Decomposition> {
    if !chi.is_zero() {
        check_dim(datum.rank(), chi.rank())?;
    }
    if !is_w_invariant(group, chi) {
        return Err(Error::Precondition("character is not W-invariant".to_string()));
    }
    let h = delta.two_rho_check();
    let mut rest = chi.clone();
    let mut coefficients = BTreeMap::new();
    while !rest.is_zero() {
        let top = rest
            .terms
            .keys()
            .filter(|w| dominance(w, delta).is_dominant())
            .max_by(|a, b| a.dot(&h).cmp(&b.dot(&h)).then_with(|| a.cmp(b)))
            .cloned()
            .ok_or_else(|| Error::Inconsistency("invariant character without dominant weights".to_string()))?;
        let c = rest.mult(&top);
        let irr = freudenthal_multiplicities(datum, delta, &top)?;
        rest = rest.add_scaled(-c, &irr)?;
        *coefficients.entry(top).or_insert(0) += c;
    }
    Ok(Decomposition { simple_system: delta.clone(), coefficients })
}
