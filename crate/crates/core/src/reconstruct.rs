//! Recovering roots, simple roots, the Weyl group and coroots of a root
//! datum from the weights of irreducible representations, transported
//! across a lattice isomorphism; and a blind mode that rebuilds `(Φ, Φ∨)`
//! from characters alone.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::characters::{freudenthal_multiplicities, weight_set, CharacterTerm, FormalCharacter};
use crate::error::{check_dim, Error, Result};
use crate::feasibility::hull_vertices;
use crate::lattice::{indivisible_elements, lattice_points_on_segment, rat, LatticeVector, Rational};
use crate::linalg::{self, Solution};
use crate::matrix::IntMatrix;
use crate::polytope::{edges_among_vertices, EdgeDescriptor};
use crate::root_datum::{find_simple_system, simple_system_containing, two_rho, RootDatum, SimpleSystem};
use crate::weyl::{generate, WeylGroup};

// ---------------------------------------------------------------------------
// Matched presentations

/// One irreducible seen from both sides: its weights on `X(T′)` and on `X(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedIrrep {
    pub label: String,
    pub weights_prime: FormalCharacter,
    pub weights: FormalCharacter,
}

/// A unimodular `M : X(T′) → X(T)` together with matched irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedPresentation {
    rank: usize,
    m: IntMatrix,
    m_inv: IntMatrix,
    irreps: Vec<MatchedIrrep>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IrrepDoc {
    label: String,
    weights_prime: Vec<CharacterTerm>,
    weights: Vec<CharacterTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchedPresentationDoc {
    rank: usize,
    #[serde(rename = "M")]
    m: Vec<Vec<i64>>,
    irreps: Vec<IrrepDoc>,
}

impl TryFrom<MatchedPresentationDoc> for MatchedPresentation {
    type Error = Error;

    fn try_from(doc: MatchedPresentationDoc) -> Result<Self> {
        check_dim(doc.rank, doc.m.len())?;
        let m = IntMatrix::from_rows(&doc.m)?;
        let irreps = doc
            .irreps
            .into_iter()
            .map(|i| {
                Ok(MatchedIrrep {
                    label: i.label,
                    weights_prime: FormalCharacter::from_term_list(doc.rank, i.weights_prime)?,
                    weights: FormalCharacter::from_term_list(doc.rank, i.weights)?,
                })
            })
            .collect::<Result<_>>()?;
        MatchedPresentation::new(m, irreps)
    }
}

impl From<MatchedPresentation> for MatchedPresentationDoc {
    fn from(mp: MatchedPresentation) -> Self {
        MatchedPresentationDoc {
            rank: mp.rank,
            m: mp.m.rows(),
            irreps: mp
                .irreps
                .into_iter()
                .map(|i| IrrepDoc {
                    label: i.label,
                    weights_prime: i.weights_prime.term_list(),
                    weights: i.weights.term_list(),
                })
                .collect(),
        }
    }
}

impl Serialize for MatchedPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatchedPresentationDoc::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatchedPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = MatchedPresentationDoc::deserialize(d)?;
        MatchedPresentation::try_from(doc).map_err(serde::de::Error::custom)
    }
}

impl MatchedPresentation {
    /// Rejects matrices that are not invertible over the integers. Whether
    /// the irreducibles actually match is left to [`Self::validate`].
    pub fn new(m: IntMatrix, irreps: Vec<MatchedIrrep>) -> Result<Self> {
        if !m.is_unimodular() {
            return Err(Error::Precondition(format!(
                "M has determinant {}, not ±1",
                m.determinant()
            )));
        }
        let rank = m.dim();
        for i in &irreps {
            for c in [&i.weights_prime, &i.weights] {
                if !c.is_zero() {
                    check_dim(rank, c.rank())?;
                }
            }
        }
        let m_inv = m.inverse()?;
        Ok(MatchedPresentation { rank, m, m_inv, irreps })
    }

    /// Irreducibles of `datum′` with the given highest weights, matched with
    /// their images under `m`.
    pub fn from_image(datum_prime: &RootDatum, m: &IntMatrix, highest_weights: &[LatticeVector]) -> Result<Self> {
        check_dim(datum_prime.rank(), m.dim())?;
        let delta = find_simple_system(datum_prime, None)?;
        let irreps = highest_weights
            .iter()
            .map(|l| {
                let chi = freudenthal_multiplicities(datum_prime, &delta, l)?;
                Ok(MatchedIrrep { label: format!("V{l}"), weights: chi.map(m)?, weights_prime: chi })
            })
            .collect::<Result<_>>()?;
        MatchedPresentation::new(m.clone(), irreps)
    }

    /// The presentation carrying the irreducible of highest weight `2ρ′`,
    /// which is all the root transport needs.
    pub fn standard(datum_prime: &RootDatum, m: &IntMatrix) -> Result<Self> {
        let delta = find_simple_system(datum_prime, None)?;
        MatchedPresentation::from_image(datum_prime, m, &[two_rho(&delta)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.m_inv
    }

    pub fn irreps(&self) -> &[MatchedIrrep] {
        &self.irreps
    }

    pub fn irreps_mut(&mut self) -> &mut Vec<MatchedIrrep> {
        &mut self.irreps
    }

    /// The same data read in the other direction, with `M⁻¹`.
    pub fn reversed(&self) -> MatchedPresentation {
        MatchedPresentation {
            rank: self.rank,
            m: self.m_inv.clone(),
            m_inv: self.m.clone(),
            irreps: self
                .irreps
                .iter()
                .map(|i| MatchedIrrep {
                    label: i.label.clone(),
                    weights_prime: i.weights.clone(),
                    weights: i.weights_prime.clone(),
                })
                .collect(),
        }
    }

    /// One diagnostic per pair whose multisets `M` does not match.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, i) in self.irreps.iter().enumerate() {
            let image = match i.weights_prime.map(&self.m) {
                Ok(c) => c,
                Err(e) => {
                    out.push(format!("irrep {k} ({}): {e}", i.label));
                    continue;
                }
            };
            if image != i.weights {
                let bad = image
                    .terms()
                    .iter()
                    .find(|(w, &m)| i.weights.mult(w) != m)
                    .map(|(w, &m)| format!("M maps multiplicity {m} to {w}, which has {}", i.weights.mult(w)))
                    .or_else(|| {
                        i.weights
                            .terms()
                            .iter()
                            .find(|(w, _)| image.mult(w) == 0)
                            .map(|(w, &m)| format!("{w} has multiplicity {m} but is not an image weight"))
                    })
                    .unwrap_or_default();
                out.push(format!("irrep {k} ({}): weight multisets do not match under M: {bad}", i.label));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Roots

/// The unique indivisible element of `x₀ - (wts ∩ e)`.
pub fn root_from_edge(x0: &LatticeVector, e: &EdgeDescriptor, wts: &BTreeSet<LatticeVector>) -> Result<LatticeVector> {
    if !e.contains(x0) {
        return Err(Error::Argument(format!("{x0} is not an endpoint of the edge")));
    }
    let k: BTreeSet<LatticeVector> = lattice_points_on_segment(&e.a, &e.b)
        .into_iter()
        .filter(|u| wts.contains(u))
        .map(|u| x0 - &u)
        .collect();
    if k.is_empty() {
        return Err(Error::Argument("no weight lies on the edge".to_string()));
    }
    let ind = indivisible_elements(&k);
    if ind.len() != 1 {
        return Err(Error::Inconsistency(format!(
            "edge at {x0} has {} indivisible elements, expected exactly one",
            ind.len()
        )));
    }
    Ok(ind.into_iter().next().expect("one element"))
}

fn find_irrep<'a>(mp: &'a MatchedPresentation, wts_prime: &BTreeSet<LatticeVector>) -> Option<&'a MatchedIrrep> {
    mp.irreps.iter().find(|i| &i.weights_prime.support() == wts_prime)
}

/// The root of `datum` corresponding to `α′`: the edge `[x′₀, s_{α′}(x′₀)]`
/// at `x′₀ = 2ρ′` of a simple system containing `α′` is moved by `M`, and
/// the root is read off the matched weights on the unprimed side.
pub fn recover_root(datum_prime: &RootDatum, mp: &MatchedPresentation, alpha_prime: &LatticeVector) -> Result<LatticeVector> {
    check_dim(datum_prime.rank(), mp.rank())?;
    let delta_prime = simple_system_containing(datum_prime, alpha_prime)?;
    let x0_prime = two_rho(&delta_prime);
    let wts_prime = weight_set(datum_prime, &delta_prime, &x0_prime)?;
    let irrep = find_irrep(mp, &wts_prime).ok_or_else(|| {
        Error::MissingData(format!("no matched irreducible with highest weight {x0_prime}"))
    })?;
    let i = datum_prime.root_index(alpha_prime).expect("checked by simple_system_containing");
    let x1_prime = datum_prime.reflect(i, &x0_prime);
    let x0 = mp.m.apply(&x0_prime);
    let e = EdgeDescriptor::new(&x0, &mp.m.apply(&x1_prime))?;
    let alpha = root_from_edge(&x0, &e, &irrep.weights.support())?;
    let expected = mp.m.apply(alpha_prime);
    if alpha != expected {
        return Err(Error::Inconsistency(format!(
            "edge gives {alpha} but M·{alpha_prime} = {expected}"
        )));
    }
    Ok(alpha)
}

/// Both directions of the root correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootTransport {
    pub forward: BTreeMap<LatticeVector, LatticeVector>,
    pub reverse: BTreeMap<LatticeVector, LatticeVector>,
    pub onto: bool,
    pub failures: Vec<String>,
}

impl RootTransport {
    pub fn ok(&self) -> bool {
        self.onto && self.failures.is_empty()
    }
}

pub fn transport_roots(datum: &RootDatum, datum_prime: &RootDatum, mp: &MatchedPresentation) -> RootTransport {
    let mut failures = Vec::new();
    let mut sweep = |from: &RootDatum, to: &RootDatum, mp: &MatchedPresentation, tag: &str| {
        let mut map = BTreeMap::new();
        for a in from.roots() {
            match recover_root(from, mp, a) {
                Ok(b) if to.is_root(&b) => {
                    map.insert(a.clone(), b);
                }
                Ok(b) => failures.push(format!("{tag}: {a} recovers {b}, which is not a root")),
                Err(e) => failures.push(format!("{tag}: {a}: {e}")),
            }
        }
        map
    };
    let forward = sweep(datum_prime, datum, mp, "forward");
    let reverse = sweep(datum, datum_prime, &mp.reversed(), "reverse");
    let image: BTreeSet<LatticeVector> = forward.values().cloned().collect();
    let onto = forward.len() == datum_prime.num_roots()
        && reverse.len() == datum.num_roots()
        && image == datum.root_set();
    if !onto && failures.is_empty() {
        failures.push(format!(
            "recovered {} of {} roots; image is not the whole root set",
            image.len(),
            datum.num_roots()
        ));
    }
    RootTransport { forward, reverse, onto, failures }
}

/// `M(Δ′)`, checked to be a simple system of `datum`.
pub fn transport_simple_roots(
    datum: &RootDatum,
    mp: &MatchedPresentation,
    delta_prime: &SimpleSystem,
) -> Result<SimpleSystem> {
    let image: Vec<LatticeVector> = delta_prime.simple_roots().iter().map(|a| mp.m.apply(a)).collect();
    SimpleSystem::from_simple_roots(datum, &image)
}

// ---------------------------------------------------------------------------
// Weyl group and coroots

/// A boolean verdict with reasons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub failures: Vec<String>,
}

impl Verdict {
    fn from_failures(failures: Vec<String>) -> Self {
        Verdict { ok: failures.is_empty(), failures }
    }
}

/// Checks `{M σ M⁻¹ : σ ∈ W′} = W` and `M s_{α′} M⁻¹ = s_{M α′}`.
pub fn transport_weyl(
    datum: &RootDatum,
    datum_prime: &RootDatum,
    group: &WeylGroup,
    group_prime: &WeylGroup,
    mp: &MatchedPresentation,
) -> Verdict {
    let mut failures = Vec::new();
    let conj = |s: &IntMatrix| mp.m.mul(s).mul(&mp.m_inv);
    let image: BTreeSet<IntMatrix> = group_prime.elements().iter().map(|e| conj(&e.matrix)).collect();
    if image != group.matrices() {
        failures.push(format!(
            "conjugated group has {} elements, {} of them outside W (|W| = {})",
            image.len(),
            image.iter().filter(|m| !group.contains(m)).count(),
            group.order()
        ));
    }
    for (a, c) in datum_prime.roots().iter().zip(datum_prime.coroots()) {
        let target = mp.m.apply(a);
        match datum.coroot_of(&target) {
            Some(tc) => {
                if conj(&IntMatrix::reflection(a, c)) != IntMatrix::reflection(&target, tc) {
                    failures.push(format!("reflection in {a} does not correspond to reflection in {target}"));
                }
            }
            None => failures.push(format!("{target} = M·{a} is not a root")),
        }
    }
    Verdict::from_failures(failures)
}

/// The coroot of `α` as the unique `y` with `x - s_α(x) = ⟨x, y⟩ α`, with
/// `s_α` found in the group as the element negating `α` and fixing a
/// hyperplane.
pub fn coroot_via_reflection(datum: &RootDatum, alpha: &LatticeVector, group: &WeylGroup) -> Result<LatticeVector> {
    check_dim(datum.rank(), alpha.dim())?;
    if !datum.is_root(alpha) {
        return Err(Error::Argument(format!("{alpha} is not a root")));
    }
    let d = datum.rank();
    let neg = alpha.scale(-1);
    let identity = IntMatrix::identity(d);
    let s = group
        .elements()
        .iter()
        .map(|e| &e.matrix)
        .find(|m| {
            if m.apply(alpha) != neg {
                return false;
            }
            let cols: Vec<LatticeVector> = (0..d)
                .map(|j| LatticeVector((0..d).map(|i| identity.get(i, j) - m.get(i, j)).collect()))
                .collect();
            linalg::rank(&cols) == 1
        })
        .ok_or_else(|| Error::Inconsistency(format!("no reflection negating {alpha} in the group")))?;
    // column j of (I - s) is y_j α
    let k = alpha.0.iter().position(|&v| v != 0).expect("roots are nonzero");
    let mut y = Vec::with_capacity(d);
    for j in 0..d {
        let col: Vec<i64> = (0..d).map(|i| identity.get(i, j) - s.get(i, j)).collect();
        if col[k] % alpha[k] != 0 {
            return Err(Error::Inconsistency(format!("column {j} of 1 - s is not an integer multiple of {alpha}")));
        }
        let yj = col[k] / alpha[k];
        if LatticeVector(col) != alpha.scale(yj) {
            return Err(Error::Inconsistency(format!("column {j} of 1 - s is not a multiple of {alpha}")));
        }
        y.push(yj);
    }
    let y = LatticeVector(y);
    if alpha.dot(&y) != 2 {
        return Err(Error::Inconsistency(format!("⟨{alpha}, {y}⟩ ≠ 2")));
    }
    if datum.coroot_of(alpha) != Some(&y) {
        return Err(Error::Inconsistency(format!("reflection gives coroot {y} for {alpha}, datum stores another")));
    }
    Ok(y)
}

/// Checks `Mᵀ α∨ = (M⁻¹ α)∨` for every root `α` of `datum`.
pub fn transport_coroots(
    datum: &RootDatum,
    datum_prime: &RootDatum,
    group: &WeylGroup,
    group_prime: &WeylGroup,
    mp: &MatchedPresentation,
) -> Verdict {
    let mt = mp.m.transpose();
    let mut failures = Vec::new();
    for a in datum.roots() {
        let a_prime = mp.m_inv.apply(a);
        let lhs = coroot_via_reflection(datum, a, group).map(|c| mt.apply(&c));
        let rhs = coroot_via_reflection(datum_prime, &a_prime, group_prime);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => failures.push(format!("Mᵀ({a})∨ = {l} but ({a_prime})∨ = {r}")),
            (Err(e), _) | (_, Err(e)) => failures.push(format!("coroot of {a}: {e}")),
        }
    }
    Verdict::from_failures(failures)
}

// ---------------------------------------------------------------------------
// Full battery

/// The certified maps: `x_map = M` on characters, `y_map = Mᵀ` on cocharacters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub x_map: IntMatrix,
    pub y_map: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconstructionReport {
    pub recovered_roots: Vec<LatticeVector>,
    pub recovered_coroots: Vec<LatticeVector>,
    pub simple_system_image: Vec<LatticeVector>,
    pub roots_transport_ok: bool,
    pub weyl_transport_ok: bool,
    pub coroot_transport_ok: bool,
    pub isomorphism_ok: bool,
    pub isomorphism: Option<Isomorphism>,
    pub failures: Vec<String>,
}

impl ReconstructionReport {
    fn failed(failures: Vec<String>) -> Self {
        ReconstructionReport {
            recovered_roots: Vec::new(),
            recovered_coroots: Vec::new(),
            simple_system_image: Vec::new(),
            roots_transport_ok: false,
            weyl_transport_ok: false,
            coroot_transport_ok: false,
            isomorphism_ok: false,
            isomorphism: None,
            failures,
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check and certifies `(M, Mᵀ)` as an isomorphism of root data
/// from `datum′` to `datum`, or reports why not.
pub fn assemble_isomorphism(datum: &RootDatum, datum_prime: &RootDatum, mp: &MatchedPresentation) -> ReconstructionReport {
    let mut failures = Vec::new();
    if datum.rank() != mp.rank() || datum_prime.rank() != mp.rank() {
        return ReconstructionReport::failed(vec![format!(
            "ranks differ: datum {}, datum′ {}, M {}",
            datum.rank(),
            datum_prime.rank(),
            mp.rank()
        )]);
    }
    for (name, d) in [("datum", datum), ("datum′", datum_prime)] {
        failures.extend(d.validate().iter().map(|v| format!("{name}: {v}")));
    }
    failures.extend(mp.validate());
    if datum.num_roots() != datum_prime.num_roots() {
        failures.push(format!(
            "root counts differ: {} vs {}",
            datum.num_roots(),
            datum_prime.num_roots()
        ));
    }
    if !failures.is_empty() {
        return ReconstructionReport::failed(failures);
    }

    let roots = transport_roots(datum, datum_prime, mp);
    failures.extend(roots.failures.iter().cloned());
    let recovered_roots: Vec<LatticeVector> = roots.forward.values().cloned().collect::<BTreeSet<_>>().into_iter().collect();

    let mut simple_system_image = Vec::new();
    let mut weyl_ok = false;
    let mut coroot_ok = false;
    let mut recovered_coroots = Vec::new();
    let groups = find_simple_system(datum, None)
        .and_then(|d| generate(datum, &d))
        .and_then(|g| Ok((g, find_simple_system(datum_prime, None)?)))
        .and_then(|(g, dp)| Ok((g, generate(datum_prime, &dp)?, dp)));
    match groups {
        Ok((group, group_prime, delta_prime)) => {
            if roots.ok() {
                match transport_simple_roots(datum, mp, &delta_prime) {
                    Ok(s) => simple_system_image = s.simple_roots().to_vec(),
                    Err(e) => failures.push(format!("simple roots: {e}")),
                }
            }
            let w = transport_weyl(datum, datum_prime, &group, &group_prime, mp);
            weyl_ok = w.ok;
            failures.extend(w.failures);
            let c = transport_coroots(datum, datum_prime, &group, &group_prime, mp);
            coroot_ok = c.ok;
            failures.extend(c.failures);
            for a in &recovered_roots {
                match coroot_via_reflection(datum, a, &group) {
                    Ok(c) => recovered_coroots.push(c),
                    Err(e) => failures.push(format!("coroot of {a}: {e}")),
                }
            }
        }
        Err(e) => failures.push(format!("Weyl groups: {e}")),
    }

    // ⟨α′, β′∨⟩ = ⟨M α′, (M⁻¹)ᵀ β′∨⟩ on the root data themselves
    let y_inv = mp.m_inv.transpose();
    for (a, _) in datum_prime.roots().iter().zip(datum_prime.coroots()) {
        for c in datum_prime.coroots() {
            let image_c = y_inv.apply(c);
            if mp.m.apply(a).dot(&image_c) != a.dot(c) || !datum.coroots().contains(&image_c) {
                failures.push(format!("pairing or coroot image fails at ({a}, {c})"));
            }
        }
    }

    let isomorphism_ok = failures.is_empty();
    ReconstructionReport {
        recovered_roots,
        recovered_coroots,
        simple_system_image,
        roots_transport_ok: roots.ok(),
        weyl_transport_ok: weyl_ok,
        coroot_transport_ok: coroot_ok,
        isomorphism_ok,
        isomorphism: isomorphism_ok.then(|| Isomorphism { x_map: mp.m.clone(), y_map: mp.m.transpose() }),
        failures,
    }
}

// ---------------------------------------------------------------------------
// Blind reconstruction

/// Roots and coroots recovered from characters alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlindReport {
    pub rank: usize,
    pub roots: Vec<LatticeVector>,
    /// Index-aligned with `roots`; `None` where the string data do not
    /// determine the coroot.
    pub coroots: Vec<Option<LatticeVector>>,
    pub coroots_determined: bool,
    pub saturated: bool,
    pub layers: usize,
    pub diagnostics: Vec<String>,
}

impl BlindReport {
    /// The recovered root datum, when every coroot is known.
    pub fn datum(&self, label: &str) -> Result<RootDatum> {
        let coroots = self
            .coroots
            .iter()
            .map(|c| c.clone().ok_or_else(|| Error::MissingData("a coroot is undetermined".to_string())))
            .collect::<Result<_>>()?;
        RootDatum::new(label, self.rank, self.roots.clone(), coroots)
    }
}

#[derive(Default)]
struct Sighting {
    outer: bool,
    // (vertex, string length) pairs by layer
    pairs: Vec<(usize, LatticeVector, i64)>,
}

/// Solves `⟨x, y⟩ = c` for every pair together with `⟨α, y⟩ = 2`.
fn solve_coroot(alpha: &LatticeVector, pairs: &[(LatticeVector, i64)]) -> Result<Option<LatticeVector>> {
    let mut rows: Vec<Vec<Rational>> = pairs.iter().map(|(x, _)| x.to_rational().0).collect();
    let mut rhs: Vec<Rational> = pairs.iter().map(|(_, c)| rat(*c)).collect();
    rows.push(alpha.to_rational().0);
    rhs.push(rat(2));
    match linalg::solve(&rows, &rhs, alpha.dim()) {
        Solution::Unique(y) => {
            let y = crate::lattice::RationalVector(y);
            y.to_lattice()
                .map(Some)
                .ok_or_else(|| Error::Inconsistency(format!("string data give a non-integral coroot for {alpha}")))
        }
        Solution::Underdetermined(_) => Ok(None),
        Solution::Inconsistent => Err(Error::Inconsistency(format!("string lengths for {alpha} are inconsistent"))),
    }
}

fn reflection_preserves(chi: &FormalCharacter, a: &LatticeVector, c: &LatticeVector) -> bool {
    chi.terms().iter().all(|(w, &m)| chi.mult(&w.add_scaled(-w.dot(c), a)) == m)
}

/// Roots from the edges of the weight polytopes of the given characters.
///
/// Edges of the outer hull give roots directly. Inner convex layers are
/// peeled as well, since the outer edges of one character can miss a root
/// length (the adjoint characters of B2 and G2, for instance); a root found
/// only on an inner layer is kept when its string data give an integral
/// coroot whose reflection preserves every input character.
pub fn blind_reconstruct(rank: usize, characters: &[FormalCharacter]) -> Result<BlindReport> {
    let mut sightings: BTreeMap<LatticeVector, Sighting> = BTreeMap::new();
    let mut diagnostics = Vec::new();
    let mut layers = 0;
    for (n, chi) in characters.iter().enumerate() {
        if chi.is_zero() {
            continue;
        }
        check_dim(rank, chi.rank())?;
        let wts = chi.support();
        let mut layer = wts.clone();
        let mut depth = 0;
        while layer.len() >= 2 {
            let verts = hull_vertices(&layer)?;
            for x0 in &verts {
                for e in edges_among_vertices(&verts, x0)? {
                    let alpha = match root_from_edge(x0, &e, &wts) {
                        Ok(a) => a,
                        Err(err) if depth == 0 => return Err(err),
                        Err(err) => {
                            diagnostics.push(format!("character {n}, layer {depth}, edge at {x0}: {err}"));
                            continue;
                        }
                    };
                    let on_edge: Vec<LatticeVector> =
                        e.lattice_points().into_iter().filter(|u| wts.contains(u)).collect();
                    let c = on_edge.len() as i64 - 1;
                    let string: BTreeSet<LatticeVector> = (0..=c).map(|t| x0.add_scaled(-t, &alpha)).collect();
                    if string != on_edge.iter().cloned().collect() {
                        let msg = format!("character {n}, layer {depth}: weights on the edge at {x0} are not an {alpha}-string");
                        if depth == 0 {
                            return Err(Error::Inconsistency(msg));
                        }
                        diagnostics.push(msg);
                        continue;
                    }
                    let s = sightings.entry(alpha).or_default();
                    s.outer |= depth == 0;
                    s.pairs.push((depth, x0.clone(), c));
                }
            }
            let vs: BTreeSet<LatticeVector> = verts.into_iter().collect();
            layer = layer.difference(&vs).cloned().collect();
            depth += 1;
        }
        layers = layers.max(depth);
    }

    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for (alpha, s) in &sightings {
        if s.outer {
            let pairs: Vec<_> = s.pairs.iter().filter(|p| p.0 == 0).map(|p| (p.1.clone(), p.2)).collect();
            let y = solve_coroot(alpha, &pairs)?;
            if y.is_none() {
                diagnostics.push(format!("coroot of {alpha} underdetermined"));
            }
            roots.push(alpha.clone());
            coroots.push(y);
        } else {
            let pairs: Vec<_> = s.pairs.iter().map(|p| (p.1.clone(), p.2)).collect();
            match solve_coroot(alpha, &pairs) {
                Ok(Some(y)) if characters.iter().all(|chi| reflection_preserves(chi, alpha, &y)) => {
                    roots.push(alpha.clone());
                    coroots.push(Some(y));
                }
                Ok(Some(_)) => diagnostics.push(format!("inner candidate {alpha}: reflection does not preserve the characters")),
                Ok(None) => diagnostics.push(format!("inner candidate {alpha}: coroot underdetermined")),
                Err(e) => diagnostics.push(format!("inner candidate {alpha}: {e}")),
            }
        }
    }
    let coroots_determined = coroots.iter().all(Option::is_some);
    let root_set: BTreeSet<&LatticeVector> = roots.iter().collect();
    let saturated = coroots_determined
        && roots.iter().zip(&coroots).all(|(a, c)| {
            let c = c.as_ref().expect("determined");
            roots.iter().all(|b| root_set.contains(&b.add_scaled(-b.dot(c), a)))
        });
    Ok(BlindReport { rank, roots, coroots, coroots_determined, saturated, layers, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{construct, LatticeKind};

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    fn set(v: &[&[i64]]) -> BTreeSet<LatticeVector> {
        v.iter().map(|x| lv(x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn root_from_edge_examples() {
        let e = EdgeDescriptor::new(&lv(&[2]), &lv(&[-2])).unwrap();
        assert_eq!(root_from_edge(&lv(&[2]), &e, &set(&[&[2], &[0], &[-2]])).unwrap(), lv(&[2]));
        let e = EdgeDescriptor::new(&lv(&[1]), &lv(&[-1])).unwrap();
        assert_eq!(root_from_edge(&lv(&[1]), &e, &set(&[&[1], &[0], &[-1]])).unwrap(), lv(&[1]));
        let e = EdgeDescriptor::new(&lv(&[1, 1]), &lv(&[-1, 2])).unwrap();
        let wts = set(&[&[1, 1], &[-1, 2], &[0, 0]]);
        assert_eq!(root_from_edge(&lv(&[1, 1]), &e, &wts).unwrap(), lv(&[2, -1]));
        assert!(matches!(root_from_edge(&lv(&[0, 0]), &e, &wts), Err(Error::Argument(_))));
        // with the middle weight missing, K = {0, 4} and 4 is indivisible in K
        let e = EdgeDescriptor::new(&lv(&[2]), &lv(&[-2])).unwrap();
        assert_eq!(root_from_edge(&lv(&[2]), &e, &set(&[&[2], &[-2]])).unwrap(), lv(&[4]));
    }

    #[test]
    fn recover_root_examples() {
        let a2 = construct("A2", LatticeKind::SimplyConnected).unwrap();
        let id = IntMatrix::identity(2);
        let mp = MatchedPresentation::standard(&a2, &id).unwrap();
        assert_eq!(recover_root(&a2, &mp, &lv(&[2, -1])).unwrap(), lv(&[2, -1]));
        let m = mat(&[&[1, 1], &[0, 1]]);
        let mp = MatchedPresentation::standard(&a2, &m).unwrap();
        assert_eq!(recover_root(&a2, &mp, &lv(&[2, -1])).unwrap(), lv(&[1, -1]));
        let a1 = construct("A1", LatticeKind::SimplyConnected).unwrap();
        let mp = MatchedPresentation::standard(&a1, &mat(&[&[-1]])).unwrap();
        assert_eq!(recover_root(&a1, &mp, &lv(&[2])).unwrap(), lv(&[-2]));
        let empty = MatchedPresentation::new(id, Vec::new()).unwrap();
        assert!(matches!(recover_root(&a2, &empty, &lv(&[2, -1])), Err(Error::MissingData(_))));
    }

    #[test]
    fn unimodularity_enforced() {
        assert!(matches!(
            MatchedPresentation::new(mat(&[&[2, 0], &[0, 1]]), Vec::new()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn transports_on_image_datum() {
        let a2 = construct("A2", LatticeKind::SimplyConnected).unwrap();
        let m = mat(&[&[1, 1], &[0, 1]]);
        let image = a2.image_under(&m).unwrap();
        let mp = MatchedPresentation::standard(&a2, &m).unwrap();
        let t = transport_roots(&image, &a2, &mp);
        assert!(t.ok(), "{:?}", t.failures);
        let dp = find_simple_system(&a2, None).unwrap();
        let s = transport_simple_roots(&image, &mp, &dp).unwrap();
        assert_eq!(s.simple_roots(), &[lv(&[1, -1]), lv(&[1, 2])]);
        let g = generate(&image, &find_simple_system(&image, None).unwrap()).unwrap();
        let gp = generate(&a2, &dp).unwrap();
        assert!(transport_weyl(&image, &a2, &g, &gp, &mp).ok);
        assert!(transport_coroots(&image, &a2, &g, &gp, &mp).ok);
        // Mᵀ applied to the coroot of M α₁ is α₁∨
        let c = coroot_via_reflection(&image, &lv(&[1, -1]), &g).unwrap();
        assert_eq!(m.transpose().apply(&c), lv(&[1, 0]));

        let a1 = construct("A1", LatticeKind::SimplyConnected).unwrap();
        let mp = MatchedPresentation::standard(&a1, &mat(&[&[-1]])).unwrap();
        let s = transport_simple_roots(&a1, &mp, &find_simple_system(&a1, None).unwrap()).unwrap();
        assert_eq!(s.simple_roots(), &[lv(&[-2])]);
    }

    #[test]
    fn coroot_via_reflection_examples() {
        let a2 = construct("A2", LatticeKind::SimplyConnected).unwrap();
        let g = generate(&a2, &find_simple_system(&a2, None).unwrap()).unwrap();
        assert_eq!(coroot_via_reflection(&a2, &lv(&[2, -1]), &g).unwrap(), lv(&[1, 0]));
        for a in a2.roots() {
            assert_eq!(a.dot(&coroot_via_reflection(&a2, a, &g).unwrap()), 2);
        }
        let a1 = construct("A1", LatticeKind::SimplyConnected).unwrap();
        let g = generate(&a1, &find_simple_system(&a1, None).unwrap()).unwrap();
        assert_eq!(coroot_via_reflection(&a1, &lv(&[2]), &g).unwrap(), lv(&[1]));
    }

    #[test]
    fn assemble_examples() {
        let g2 = construct("G2", LatticeKind::SimplyConnected).unwrap();
        let m = mat(&[&[2, 1], &[1, 1]]);
        let image = g2.image_under(&m).unwrap();
        let mp = MatchedPresentation::standard(&g2, &m).unwrap();
        let r = assemble_isomorphism(&image, &g2, &mp);
        assert!(r.isomorphism_ok, "{:?}", r.failures);
        assert_eq!(r.recovered_roots.iter().cloned().collect::<BTreeSet<_>>(), image.root_set());
        assert_eq!(r.isomorphism.unwrap().y_map, m.transpose());

        let a2 = construct("A2", LatticeKind::SimplyConnected).unwrap();
        let a1a1 = construct("A1xA1", LatticeKind::SimplyConnected).unwrap();
        let mp = MatchedPresentation::standard(&a1a1, &IntMatrix::identity(2)).unwrap();
        let r = assemble_isomorphism(&a2, &a1a1, &mp);
        assert!(!r.ok());
        assert!(r.failures.iter().any(|f| f.contains("root counts differ")));

        let mut mp = MatchedPresentation::standard(&a2, &IntMatrix::identity(2)).unwrap();
        let w = mp.irreps()[0].weights.clone();
        let (x, _) = w.terms().iter().next().unwrap();
        let moved = w.add(&FormalCharacter::monomial(x.clone(), -1)).unwrap().add(&FormalCharacter::monomial(lv(&[9, 9]), 1)).unwrap();
        mp.irreps_mut()[0].weights = moved;
        let r = assemble_isomorphism(&a2, &a2, &mp);
        assert!(!r.isomorphism_ok);
        assert!(r.failures[0].contains("irrep 0"));
    }

    #[test]
    fn torus_is_vacuous() {
        let t = RootDatum::torus(2).unwrap();
        let mp = MatchedPresentation::new(mat(&[&[0, 1], &[1, 0]]), Vec::new()).unwrap();
        let tr = transport_roots(&t, &t, &mp);
        assert!(tr.ok() && tr.forward.is_empty());
        assert!(assemble_isomorphism(&t, &t, &mp).isomorphism_ok);
    }

    #[test]
    fn json_round_trip() {
        let a1 = construct("A1", LatticeKind::SimplyConnected).unwrap();
        let mp = MatchedPresentation::standard(&a1, &mat(&[&[-1]])).unwrap();
        let v = serde_json::to_value(&mp).unwrap();
        assert_eq!(v["M"], serde_json::json!([[-1]]));
        assert!(v["irreps"][0]["weights_prime"][0]["mult"].is_number());
        let back: MatchedPresentation = serde_json::from_value(v).unwrap();
        assert_eq!(back, mp);
    }

    #[test]
    fn blind_examples() {
        let a1 = construct("A1", LatticeKind::SimplyConnected).unwrap();
        let v1 = FormalCharacter::from_terms(1, [(lv(&[1]), 1), (lv(&[-1]), 1)]).unwrap();
        let r = blind_reconstruct(1, &[v1]).unwrap();
        assert_eq!(r.roots, vec![lv(&[-2]), lv(&[2])]);
        assert_eq!(r.coroots, vec![Some(lv(&[-1])), Some(lv(&[1]))]);
        assert!(r.saturated);
        assert!(r.datum("blind").unwrap().same_as(&a1));

        let trivial = FormalCharacter::monomial(lv(&[0, 0]), 1);
        let r = blind_reconstruct(2, &[trivial]).unwrap();
        assert!(r.roots.is_empty() && r.saturated);

        for (label, kind) in [
            ("A2", LatticeKind::Adjoint),
            ("B2", LatticeKind::Adjoint),
            ("G2", LatticeKind::Adjoint),
        ] {
            let d = construct(label, kind).unwrap();
            let s = find_simple_system(&d, None).unwrap();
            let top = s.positive_roots().iter().max_by_key(|r| r.dot(&s.two_rho_check())).unwrap();
            let adj = freudenthal_multiplicities(&d, &s, top).unwrap();
            let r = blind_reconstruct(2, &[adj]).unwrap();
            assert!(r.saturated, "{label}: {:?}", r.diagnostics);
            assert!(r.datum("blind").unwrap().same_as(&d), "{label}");
        }
    }
}
