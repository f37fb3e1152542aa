//! Weyl groups as sets of integer matrices on `X`, orbits, dominant
//! representatives, the parabolic subgroup `W₀` fixing a dominant point and
//! the edge-indexing set `Δ(x₀) = W₀ (Δ ∖ Δ₀)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::lattice::{LatticeVector, RationalVector};
use crate::matrix::IntMatrix;
use crate::root_datum::{dominance, level_zero_subsystem, RootDatum, SimpleSystem};

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

/// An element of the Weyl group, stored as its matrix on `X`. The word, when
/// present, lists generator positions `g₁ g₂ … g_k` with `w = s_{g₁} ⋯ s_{g_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    pub word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { matrix: IntMatrix::identity(rank), word: Some(Vec::new()) }
    }

    pub fn apply(&self, x: &LatticeVector) -> LatticeVector {
        self.matrix.apply(x)
    }

    /// Contragredient action on `Y ⊗ Q`: `y ↦ (M⁻¹)ᵀ y`, so that
    /// `⟨w x, w y⟩ = ⟨x, y⟩`.
    pub fn apply_to_coweight(&self, y: &RationalVector) -> RationalVector {
        let inv = self.matrix.inverse().expect("Weyl elements are unimodular");
        inv.transpose().apply_rational(y)
    }

    pub fn apply_to_coroot(&self, y: &LatticeVector) -> LatticeVector {
        let inv = self.matrix.inverse().expect("Weyl elements are unimodular");
        inv.transpose().apply(y)
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        WeylElement { matrix: self.matrix.mul(&other.matrix), word }
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            matrix: self.matrix.inverse().expect("Weyl elements are unimodular"),
            word: self.word.as_ref().map(|w| w.iter().rev().copied().collect()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Whether the matrix maps the roots of `datum` onto themselves.
    pub fn permutes_roots(&self, datum: &RootDatum) -> bool {
        let image: BTreeSet<LatticeVector> = datum.roots().iter().map(|r| self.apply(r)).collect();
        image == datum.root_set()
    }
}

/// The reflection `s_α : x ↦ x - ⟨x, α∨⟩ α`.
pub fn reflection(datum: &RootDatum, root: &LatticeVector) -> Result<WeylElement> {
    let coroot = datum
        .coroot_of(root)
        .ok_or_else(|| Error::Argument(format!("{root} is not a root")))?;
    Ok(WeylElement { matrix: IntMatrix::reflection(root, coroot), word: None })
}

/// A finite group generated by reflections, enumerated in full.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    generator_roots: Vec<LatticeVector>,
    generators: Vec<WeylElement>,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
}

impl WeylGroup {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// The roots whose reflections generate the group, in generator order.
    pub fn generator_roots(&self) -> &[LatticeVector] {
        &self.generator_roots
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn element(&self, m: &IntMatrix) -> Option<&WeylElement> {
        self.index.get(m).map(|&i| &self.elements[i])
    }

    pub fn matrices(&self) -> BTreeSet<IntMatrix> {
        self.elements.iter().map(|e| e.matrix.clone()).collect()
    }
}

/// The Weyl group generated by the simple reflections of `delta`.
pub fn generate(datum: &RootDatum, delta: &SimpleSystem) -> Result<WeylGroup> {
    generate_with_cap(datum, delta.simple_roots(), DEFAULT_ORDER_CAP)
}

/// Closure of the reflections in `roots` under multiplication. Elements are
/// found breadth-first, so each stored word is a shortest word.
pub fn generate_with_cap(datum: &RootDatum, roots: &[LatticeVector], cap: usize) -> Result<WeylGroup> {
    let rank = datum.rank();
    let generators: Vec<WeylElement> = roots
        .iter()
        .enumerate()
        .map(|(k, r)| {
            reflection(datum, r).map(|mut g| {
                g.word = Some(vec![k]);
                g
            })
        })
        .collect::<Result<_>>()?;
    let identity = WeylElement::identity(rank);
    let mut index = HashMap::new();
    index.insert(identity.matrix.clone(), 0);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &generators {
            let next = elements[i].compose(g);
            if !index.contains_key(&next.matrix) {
                if elements.len() >= cap {
                    return Err(Error::Resource(format!(
                        "reflection group closure exceeds {cap} elements"
                    )));
                }
                index.insert(next.matrix.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    Ok(WeylGroup { rank, generator_roots: roots.to_vec(), generators, elements, index })
}

/// `{ w(x) : w ∈ W }`.
pub fn orbit(group: &WeylGroup, x: &LatticeVector) -> Result<BTreeSet<LatticeVector>> {
    check_dim(group.rank(), x.dim())?;
    Ok(group.elements().iter().map(|w| w.apply(x)).collect())
}

/// Orbit of `x` under the reflections in `delta`, by breadth-first closure.
pub(crate) fn orbit_by_reflections(delta: &SimpleSystem, x: &LatticeVector) -> BTreeSet<LatticeVector> {
    let mut seen = BTreeSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(p) = queue.pop_front() {
        for (a, c) in delta.simple_roots().iter().zip(delta.simple_coroots()) {
            let q = p.add_scaled(-p.dot(c), a);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// The dominant point `x⁺ = w(x)` of the orbit of `x` and an element `w`
/// reaching it, found by reflecting in simple roots with negative pairing.
pub fn dominant_representative(
    group: &WeylGroup,
    delta: &SimpleSystem,
    x: &LatticeVector,
) -> Result<(LatticeVector, WeylElement)> {
    check_dim(group.rank(), x.dim())?;
    let mut w = WeylElement::identity(group.rank());
    let mut y = x.clone();
    let mut steps = 0usize;
    while let Some(k) = delta.simple_coroots().iter().position(|c| y.dot(c) < 0) {
        let a = &delta.simple_roots()[k];
        let s = reflection_from_pair(a, &delta.simple_coroots()[k], k);
        y = s.apply(&y);
        w = s.compose(&w);
        steps += 1;
        if steps > group.order() * group.rank().max(1) + 1 {
            return Err(Error::Inconsistency("dominant representative search did not terminate".to_string()));
        }
    }
    // express w through the group's own generators when possible
    if let Some(e) = group.element(&w.matrix) {
        w = e.clone();
    }
    Ok((y, w))
}

fn reflection_from_pair(root: &LatticeVector, coroot: &LatticeVector, k: usize) -> WeylElement {
    WeylElement { matrix: IntMatrix::reflection(root, coroot), word: Some(vec![k]) }
}

/// The subgroup `W₀` generated by reflections in `Δ₀` (simple roots
/// orthogonal to the dominant point `x₀`).
pub fn w0_subgroup(datum: &RootDatum, delta: &SimpleSystem, x0: &LatticeVector) -> Result<WeylGroup> {
    let lz = level_zero_subsystem(datum, delta, x0)?;
    let roots: Vec<LatticeVector> = lz.delta0.iter().map(|&i| datum.root(i).clone()).collect();
    generate_with_cap(datum, &roots, DEFAULT_ORDER_CAP)
}

/// An element of `Δ(x₀)` with a witness `α = w₀(α₀)`, `w₀ ∈ W₀`,
/// `α₀ ∈ Δ ∖ Δ₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRoot {
    pub root: LatticeVector,
    pub root_index: usize,
    pub w0: WeylElement,
    pub base: LatticeVector,
}

/// `Δ(x₀) = W₀ (Δ ∖ Δ₀)` with a witness for each element, sorted by root.
pub fn delta_of_x0_witnessed(datum: &RootDatum, delta: &SimpleSystem, x0: &LatticeVector) -> Result<Vec<EdgeRoot>> {
    let lz = level_zero_subsystem(datum, delta, x0)?;
    let w0 = w0_subgroup(datum, delta, x0)?;
    let mut found: std::collections::BTreeMap<LatticeVector, EdgeRoot> = Default::default();
    for &i in delta.simple_indices() {
        if lz.delta0.contains(&i) {
            continue;
        }
        let base = datum.root(i);
        for w in w0.elements() {
            let r = w.apply(base);
            if !found.contains_key(&r) {
                let root_index = datum
                    .root_index(&r)
                    .ok_or_else(|| Error::Inconsistency(format!("W₀ image {r} is not a root")))?;
                found.insert(
                    r.clone(),
                    EdgeRoot { root: r, root_index, w0: w.clone(), base: base.clone() },
                );
            }
        }
    }
    Ok(found.into_values().collect())
}

/// `Δ(x₀)` as a sorted set of roots.
pub fn delta_of_x0(datum: &RootDatum, delta: &SimpleSystem, x0: &LatticeVector) -> Result<BTreeSet<LatticeVector>> {
    Ok(delta_of_x0_witnessed(datum, delta, x0)?.into_iter().map(|e| e.root).collect())
}

/// Nonnegative integer coefficients `c` with `target = Σ cᵢ vᵢ`, found by
/// bounded enumeration. `height` must be strictly positive on every `vᵢ`;
/// it bounds each coefficient by `height(target) / height(vᵢ)`.
pub fn nonnegative_combination(
    target: &LatticeVector,
    vectors: &[LatticeVector],
    height: &LatticeVector,
) -> Option<Vec<i64>> {
    let h: Vec<i64> = vectors.iter().map(|v| v.dot(height)).collect();
    assert!(h.iter().all(|&x| x > 0), "height must be positive on every vector");
    fn search(
        k: usize,
        rest: &LatticeVector,
        budget: i64,
        vectors: &[LatticeVector],
        h: &[i64],
        out: &mut Vec<i64>,
    ) -> bool {
        if k == vectors.len() {
            return rest.is_zero();
        }
        let max = budget / h[k];
        for c in 0..=max {
            out.push(c);
            let next = rest.add_scaled(-c, &vectors[k]);
            if search(k + 1, &next, budget - c * h[k], vectors, h, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let budget = target.dot(height);
    if budget < 0 {
        return None;
    }
    let mut out = Vec::new();
    search(0, target, budget, vectors, &h, &mut out).then_some(out)
}

/// Whether `x` is dominant for `delta` (convenience re-export for tests of
/// the fundamental-domain property).
pub fn is_dominant(x: &LatticeVector, delta: &SimpleSystem) -> bool {
    dominance(x, delta).is_dominant()
}
