//! Root data `(X, Φ, Y, Φ∨)` in dual coordinates, standard constructors,
//! simple systems and dominance.
//!
//! `X` and `Y` are both `Z^rank` and the pairing is the dot product, so all
//! information about the lattice lives in the coordinates of the roots and
//! coroots. Roots and coroots are index-aligned.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::lattice::{pairing, LatticeVector, Rational, RationalVector};
use crate::linalg;

/// JSON interchange form of a root datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumDoc {
    pub label: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RootDatumDoc", into = "RootDatumDoc")]
pub struct RootDatum {
    label: String,
    rank: usize,
    roots: Vec<LatticeVector>,
    coroots: Vec<LatticeVector>,
    index: HashMap<LatticeVector, usize>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.roots == other.roots && self.coroots == other.coroots
    }
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("label", &self.label)
            .field("rank", &self.rank)
            .field("roots", &self.roots)
            .field("coroots", &self.coroots)
            .finish()
    }
}

impl TryFrom<RootDatumDoc> for RootDatum {
    type Error = Error;
    fn try_from(doc: RootDatumDoc) -> Result<Self> {
        RootDatum::new(
            doc.label,
            doc.rank,
            doc.roots.into_iter().map(LatticeVector).collect(),
            doc.coroots.into_iter().map(LatticeVector).collect(),
        )
    }
}

impl From<RootDatum> for RootDatumDoc {
    fn from(d: RootDatum) -> Self {
        RootDatumDoc {
            label: d.label,
            rank: d.rank,
            roots: d.roots.into_iter().map(|r| r.0).collect(),
            coroots: d.coroots.into_iter().map(|r| r.0).collect(),
        }
    }
}

/// A failed root-datum axiom. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `⟨αᵢ, αᵢ∨⟩ ≠ 2`
    Pairing { index: usize, value: i64 },
    /// `s_{αᵢ}(αⱼ)` is not a root.
    RootReflection { reflection: usize, root: usize },
    /// `s_{αᵢ∨}(αⱼ∨)` is not a coroot.
    CorootReflection { reflection: usize, coroot: usize },
    /// `s_{αᵢ}(αⱼ) = α_k` but `s_{αᵢ∨}(αⱼ∨) ≠ α_k∨`.
    IndexCorrespondence { reflection: usize, root: usize },
    /// A root has a multiple other than `±1` among the roots.
    Reduced { root: usize, multiple: usize },
    /// `-α` is not a root.
    Symmetric { root: usize },
    Duplicate { first: usize, second: usize },
    ZeroRoot { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pairing { index, value } => write!(f, "pairing: <root {index}, coroot {index}> = {value}, expected 2"),
            Violation::RootReflection { reflection, root } => write!(f, "reflection {reflection} sends root {root} outside the roots"),
            Violation::CorootReflection { reflection, coroot } => write!(f, "coreflection {reflection} sends coroot {coroot} outside the coroots"),
            Violation::IndexCorrespondence { reflection, root } => write!(f, "reflection {reflection} does not respect the root/coroot indexing at {root}"),
            Violation::Reduced { root, multiple } => write!(f, "reduced: root {multiple} is a multiple of root {root}"),
            Violation::Symmetric { root } => write!(f, "symmetric: the negative of root {root} is not a root"),
            Violation::Duplicate { first, second } => write!(f, "duplicate: roots {first} and {second} coincide"),
            Violation::ZeroRoot { index } => write!(f, "zero root at index {index}"),
        }
    }
}

impl RootDatum {
    /// Builds a datum after shape checks only; use [`RootDatum::validate`]
    /// for the axioms.
    pub fn new(
        label: impl Into<String>,
        rank: usize,
        roots: Vec<LatticeVector>,
        coroots: Vec<LatticeVector>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Argument("rank must be positive".to_string()));
        }
        if roots.len() != coroots.len() {
            return Err(Error::Argument(format!(
                "{} roots but {} coroots",
                roots.len(),
                coroots.len()
            )));
        }
        for v in roots.iter().chain(&coroots) {
            check_dim(rank, v.dim())?;
        }
        let mut index = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            index.entry(r.clone()).or_insert(i);
        }
        Ok(RootDatum { label: label.into(), rank, roots, coroots, index })
    }

    /// A torus of the given rank (no roots).
    pub fn torus(rank: usize) -> Result<Self> {
        RootDatum::new(format!("T{rank}"), rank, Vec::new(), Vec::new())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[LatticeVector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[LatticeVector] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &LatticeVector {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &LatticeVector {
        &self.coroots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, root: &LatticeVector) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_root(&self, root: &LatticeVector) -> bool {
        self.index.contains_key(root)
    }

    pub fn root_set(&self) -> BTreeSet<LatticeVector> {
        self.roots.iter().cloned().collect()
    }

    /// The coroot paired with a given root.
    pub fn coroot_of(&self, root: &LatticeVector) -> Option<&LatticeVector> {
        self.root_index(root).map(|i| &self.coroots[i])
    }

    /// The set of `(α, α∨)` pairs, forgetting the order of the lists.
    pub fn pairs(&self) -> BTreeSet<(LatticeVector, LatticeVector)> {
        self.roots.iter().cloned().zip(self.coroots.iter().cloned()).collect()
    }

    /// Equality up to reordering the (root, coroot) pairs.
    pub fn same_as(&self, other: &RootDatum) -> bool {
        self.rank == other.rank && self.pairs() == other.pairs()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `s_α(x) = x - ⟨x, α∨⟩ α` for the root with index `i`.
    pub fn reflect(&self, i: usize, x: &LatticeVector) -> LatticeVector {
        x.add_scaled(-x.dot(&self.coroots[i]), &self.roots[i])
    }

    /// `s_{α∨}(y) = y - ⟨α, y⟩ α∨` for the root with index `i`.
    pub fn coreflect(&self, i: usize, y: &LatticeVector) -> LatticeVector {
        y.add_scaled(-self.roots[i].dot(y), &self.coroots[i])
    }

    /// Checks every axiom and returns all violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.roots.len();
        let mut first_seen: HashMap<&LatticeVector, usize> = HashMap::new();
        for (i, r) in self.roots.iter().enumerate() {
            if r.is_zero() {
                out.push(Violation::ZeroRoot { index: i });
            }
            if let Some(&j) = first_seen.get(r) {
                out.push(Violation::Duplicate { first: j, second: i });
            } else {
                first_seen.insert(r, i);
            }
        }
        let coroot_index: HashMap<&LatticeVector, usize> =
            self.coroots.iter().enumerate().map(|(i, c)| (c, i)).collect();
        for i in 0..n {
            let p = self.roots[i].dot(&self.coroots[i]);
            if p != 2 {
                out.push(Violation::Pairing { index: i, value: p });
            }
            if !self.is_root(&-&self.roots[i]) {
                out.push(Violation::Symmetric { root: i });
            }
        }
        for i in 0..n {
            if self.roots[i].dot(&self.coroots[i]) != 2 {
                continue;
            }
            for j in 0..n {
                let sr = self.reflect(i, &self.roots[j]);
                let sc = self.coreflect(i, &self.coroots[j]);
                let k = self.root_index(&sr);
                if k.is_none() {
                    out.push(Violation::RootReflection { reflection: i, root: j });
                }
                if !coroot_index.contains_key(&sc) {
                    out.push(Violation::CorootReflection { reflection: i, coroot: j });
                }
                if let Some(k) = k {
                    if coroot_index.contains_key(&sc) && self.coroots[k] != sc {
                        out.push(Violation::IndexCorrespondence { reflection: i, root: j });
                    }
                }
            }
        }
        for (i, r) in self.roots.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for (j, s) in self.roots.iter().enumerate() {
                if i != j && s != r && *s != -r && is_positive_multiple_or_negative(r, s) {
                    out.push(Violation::Reduced { root: i, multiple: j });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "root datum '{}' is invalid: {}",
                self.label,
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
            )))
        }
    }

    /// The sub-datum on the same lattices with the given root indices.
    pub fn subdatum(&self, label: impl Into<String>, indices: &[usize]) -> RootDatum {
        RootDatum::new(
            label,
            self.rank,
            indices.iter().map(|&i| self.roots[i].clone()).collect(),
            indices.iter().map(|&i| self.coroots[i].clone()).collect(),
        )
        .expect("shape inherited from a valid datum")
    }

    /// The datum obtained by transporting along `x ↦ M x` on `X` (and the
    /// contragredient `(M⁻¹)ᵀ` on `Y`).
    pub fn image_under(&self, m: &crate::matrix::IntMatrix) -> Result<RootDatum> {
        check_dim(self.rank, m.dim())?;
        let inv_t = m.inverse()?.transpose();
        RootDatum::new(
            format!("M({})", self.label),
            self.rank,
            self.roots.iter().map(|r| m.apply(r)).collect(),
            self.coroots.iter().map(|c| inv_t.apply(c)).collect(),
        )
    }

    /// Generic functional `(N^{d-1}, …, N, 1)` with `N = 1 + max |coord|`;
    /// no nonzero vector with coordinates below `N` in absolute value
    /// pairs to zero with it.
    pub fn generic_functional(&self) -> RationalVector {
        let n = 1 + self.roots.iter().flat_map(|r| r.0.iter()).map(|c| c.abs()).max().unwrap_or(0);
        let n = BigInt::from(n);
        let mut coords = Vec::with_capacity(self.rank);
        let mut p = BigInt::from(1);
        for _ in 0..self.rank {
            coords.push(Rational::from_integer(p.clone()));
            p *= &n;
        }
        coords.reverse();
        RationalVector(coords)
    }
}

fn is_positive_multiple_or_negative(r: &LatticeVector, s: &LatticeVector) -> bool {
    // s = t r for some rational t
    let Some(i) = r.0.iter().position(|&c| c != 0) else {
        return false;
    };
    let (num, den) = (s[i], r[i]);
    r.0.iter().zip(&s.0).all(|(&a, &b)| a * num == b * den)
}

// ---------------------------------------------------------------------------
// Constructors

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::G2 => 2,
        }
    }

    /// `P[i][j] = ⟨αᵢ, αⱼ∨⟩` in Bourbaki numbering.
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut p = vec![vec![0i64; n]; n];
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, ij: i64, ji: i64| {
            p[i][j] = ij;
            p[j][i] = ji;
        };
        match *self {
            CartanType::A(_) => (1..n).for_each(|i| link(i - 1, i, -1, -1)),
            CartanType::B(_) => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            CartanType::C(_) => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            CartanType::D(_) => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            CartanType::G2 => link(0, 1, -1, -3),
        }
        p
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("unknown Cartan label '{s}'"));
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let t = match head {
            "A" if n >= 1 => CartanType::A(n),
            "B" if n >= 2 => CartanType::B(n),
            "C" if n >= 2 => CartanType::C(n),
            "D" if n >= 4 => CartanType::D(n),
            "G" if n == 2 => CartanType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    /// `X` is the weight lattice, basis of fundamental weights.
    SimplyConnected,
    /// `X` is the root lattice, basis of simple roots.
    Adjoint,
    /// Type `A_n` only: `X = Z^{n+1}`, the character lattice of `GL_{n+1}`.
    GlVariant,
}

impl FromStr for LatticeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc" | "simply_connected" => Ok(LatticeKind::SimplyConnected),
            "adj" | "adjoint" => Ok(LatticeKind::Adjoint),
            "gl" | "gl_variant" => Ok(LatticeKind::GlVariant),
            _ => Err(Error::Argument(format!("unknown lattice kind '{s}'"))),
        }
    }
}

/// All (root, coroot) pairs of an irreducible type, in simple-root and
/// simple-coroot coordinates: positives by height, then the negatives.
fn root_pairs_in_simple_coords(t: CartanType) -> Vec<(Vec<i64>, Vec<i64>)> {
    let n = t.rank();
    let p = t.pairing_matrix();
    let mut pos: Vec<(Vec<i64>, Vec<i64>)> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e.clone(), e)
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = pos.iter().map(|(r, _)| r.clone()).collect();
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(k) = queue.pop_front() {
        let (r, c) = pos[k].clone();
        for i in 0..n {
            let rp: i64 = (0..n).map(|j| r[j] * p[j][i]).sum(); // ⟨β, αᵢ∨⟩
            let cp: i64 = (0..n).map(|j| c[j] * p[i][j]).sum(); // ⟨αᵢ, β∨⟩
            let mut r2 = r.clone();
            let mut c2 = c.clone();
            r2[i] -= rp;
            c2[i] -= cp;
            if r2.iter().all(|&x| x >= 0) && r2.iter().any(|&x| x > 0) && seen.insert(r2.clone()) {
                pos.push((r2, c2));
                queue.push_back(pos.len() - 1);
            }
        }
    }
    pos.sort_by_key(|(r, _)| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    let neg: Vec<_> = pos
        .iter()
        .map(|(r, c)| (r.iter().map(|x| -x).collect(), c.iter().map(|x| -x).collect()))
        .collect();
    pos.into_iter().chain(neg).collect()
}

fn dim_of_span(v: &[LatticeVector]) -> usize {
    linalg::rank(v)
}

fn component(t: CartanType, lattice: LatticeKind) -> Result<(usize, Vec<LatticeVector>, Vec<LatticeVector>)> {
    let n = t.rank();
    let p = t.pairing_matrix();
    let pairs = root_pairs_in_simple_coords(t);
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let dim = match lattice {
        LatticeKind::GlVariant => {
            if !matches!(t, CartanType::A(_)) {
                return Err(Error::Argument(format!("gl_variant requires type A, got {t}")));
            }
            n + 1
        }
        _ => n,
    };
    for (r, c) in pairs {
        let (x, y) = match lattice {
            LatticeKind::SimplyConnected => {
                let x = (0..n).map(|k| (0..n).map(|j| r[j] * p[j][k]).sum()).collect();
                (x, c)
            }
            LatticeKind::Adjoint => {
                let y = (0..n).map(|k| (0..n).map(|j| c[j] * p[k][j]).sum()).collect();
                (r, y)
            }
            LatticeKind::GlVariant => {
                let expand = |v: &[i64]| {
                    let mut out = vec![0i64; n + 1];
                    for (j, &a) in v.iter().enumerate() {
                        out[j] += a;
                        out[j + 1] -= a;
                    }
                    out
                };
                (expand(&r), expand(&c))
            }
        };
        roots.push(LatticeVector(x));
        coroots.push(LatticeVector(y));
    }
    Ok((dim, roots, coroots))
}

/// Builds the root datum of a (product of) Cartan type(s) in the requested
/// lattice. Labels are components joined by `x`, e.g. `A2`, `A1xA1`, `B2xT1`
/// (`Tk` appends a rank-`k` central torus); `GLn` is accepted as shorthand
/// for `A{n-1}` with the GL lattice.
pub fn construct(label: &str, lattice: LatticeKind) -> Result<RootDatum> {
    let label = label.trim();
    if let Some(n) = label.strip_prefix("GL") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Argument(format!("unknown Cartan label '{label}'")))?;
        if n < 2 {
            return Err(Error::Argument(format!("unknown Cartan label '{label}'")));
        }
        return construct(&format!("A{}", n - 1), LatticeKind::GlVariant).map(|d| d.with_label(label));
    }
    let parts: Vec<&str> = label.split(['x', '×']).map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::Argument(format!("unknown Cartan label '{label}'")));
    }
    let mut blocks: Vec<(usize, Vec<LatticeVector>, Vec<LatticeVector>)> = Vec::new();
    let mut n_cartan = 0;
    for part in &parts {
        if let Some(k) = part.strip_prefix('T') {
            let k: usize = k
                .parse()
                .ok()
                .filter(|&k| k > 0)
                .ok_or_else(|| Error::Argument(format!("unknown Cartan label '{part}'")))?;
            blocks.push((k, Vec::new(), Vec::new()));
        } else {
            let t: CartanType = part.parse()?;
            if lattice == LatticeKind::GlVariant && parts.len() > 1 {
                return Err(Error::Argument("gl_variant supports a single type A component".to_string()));
            }
            blocks.push(component(t, lattice)?);
            n_cartan += 1;
        }
    }
    if n_cartan == 0 && lattice == LatticeKind::GlVariant {
        return Err(Error::Argument("gl_variant requires type A".to_string()));
    }
    let rank: usize = blocks.iter().map(|b| b.0).sum();
    // Order: every simple root, then the other positive roots, then the
    // negatives, so the list starts with the standard simple system.
    let mut tiers: [Vec<(LatticeVector, LatticeVector)>; 3] = Default::default();
    let mut offset = 0;
    for (dim, rs, cs) in blocks {
        let pad = |v: &LatticeVector| {
            let mut out = vec![0i64; rank];
            out[offset..offset + dim].copy_from_slice(&v.0);
            LatticeVector(out)
        };
        let half = rs.len() / 2;
        let simples = if half == 0 { 0 } else { dim_of_span(&rs[..half]) };
        for (k, (r, c)) in rs.iter().zip(&cs).enumerate() {
            let tier = if k < simples { 0 } else if k < half { 1 } else { 2 };
            tiers[tier].push((pad(r), pad(c)));
        }
        offset += dim;
    }
    let (roots, coroots): (Vec<_>, Vec<_>) = tiers.into_iter().flatten().unzip();
    let suffix = match lattice {
        LatticeKind::SimplyConnected => "sc",
        LatticeKind::Adjoint => "adj",
        LatticeKind::GlVariant => "gl",
    };
    let datum = RootDatum::new(format!("{label} {suffix}"), rank, roots, coroots)?;
    debug_assert!(datum.is_valid(), "constructed datum must validate");
    Ok(datum)
}

// ---------------------------------------------------------------------------
// Simple systems

/// A system of simple roots of a datum, with its positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSystem {
    rank: usize,
    simple_indices: Vec<usize>,
    simple_roots: Vec<LatticeVector>,
    simple_coroots: Vec<LatticeVector>,
    positive_indices: Vec<usize>,
    positive_roots: Vec<LatticeVector>,
    positive_coroots: Vec<LatticeVector>,
}

impl SimpleSystem {
    /// Checks that the given roots form a simple system of `datum`: linearly
    /// independent, and every root a same-sign integer combination of them.
    pub fn from_simple_roots(datum: &RootDatum, simples: &[LatticeVector]) -> Result<SimpleSystem> {
        let mut simple_indices = Vec::with_capacity(simples.len());
        for s in simples {
            let i = datum
                .root_index(s)
                .ok_or_else(|| Error::Inconsistency(format!("{s} is not a root")))?;
            simple_indices.push(i);
        }
        if linalg::rank(simples) != simples.len() {
            return Err(Error::Inconsistency("simple roots are linearly dependent".to_string()));
        }
        let mut positive_indices = Vec::new();
        for (i, r) in datum.roots().iter().enumerate() {
            let coeffs = linalg::coordinates_in(simples, r).ok_or_else(|| {
                Error::Inconsistency(format!("root {r} is not in the span of the simple roots"))
            })?;
            if coeffs.iter().any(|c| !c.is_integer()) {
                return Err(Error::Inconsistency(format!(
                    "root {r} is not an integer combination of the simple roots"
                )));
            }
            let pos = coeffs.iter().any(|c| c.is_positive());
            let neg = coeffs.iter().any(|c| c.is_negative());
            if pos && neg {
                return Err(Error::Inconsistency(format!("root {r} has coefficients of mixed sign")));
            }
            if pos {
                positive_indices.push(i);
            }
        }
        Ok(SimpleSystem::assemble(datum, simple_indices, positive_indices))
    }

    fn assemble(datum: &RootDatum, simple_indices: Vec<usize>, positive_indices: Vec<usize>) -> SimpleSystem {
        SimpleSystem {
            rank: datum.rank(),
            simple_roots: simple_indices.iter().map(|&i| datum.root(i).clone()).collect(),
            simple_coroots: simple_indices.iter().map(|&i| datum.coroot(i).clone()).collect(),
            positive_roots: positive_indices.iter().map(|&i| datum.root(i).clone()).collect(),
            positive_coroots: positive_indices.iter().map(|&i| datum.coroot(i).clone()).collect(),
            simple_indices,
            positive_indices,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.simple_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simple_indices.is_empty()
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple_indices
    }

    pub fn simple_roots(&self) -> &[LatticeVector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[LatticeVector] {
        &self.simple_coroots
    }

    pub fn positive_indices(&self) -> &[usize] {
        &self.positive_indices
    }

    pub fn positive_roots(&self) -> &[LatticeVector] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[LatticeVector] {
        &self.positive_coroots
    }

    pub fn contains(&self, root: &LatticeVector) -> bool {
        self.simple_roots.contains(root)
    }

    pub fn is_positive(&self, root_index: usize) -> bool {
        self.positive_indices.contains(&root_index)
    }

    /// Sum of the positive coroots; pairs to 2 with every simple root.
    pub fn two_rho_check(&self) -> LatticeVector {
        self.positive_coroots
            .iter()
            .fold(LatticeVector::zero(self.rank), |acc, c| &acc + c)
    }

    /// The image system `s_β(Δ)` for the simple root with position `k`.
    pub fn reflect_by_simple(&self, datum: &RootDatum, k: usize) -> SimpleSystem {
        let b = self.simple_indices[k];
        let map = |i: usize| {
            datum
                .root_index(&datum.reflect(b, datum.root(i)))
                .expect("a valid datum is closed under reflections")
        };
        let simple_indices = self.simple_indices.iter().map(|&i| map(i)).collect();
        let positive_indices = self.positive_indices.iter().map(|&i| map(i)).collect();
        SimpleSystem::assemble(datum, simple_indices, positive_indices)
    }

    /// The image `w(Δ)` under a lattice automorphism permuting the roots.
    pub fn transform(&self, datum: &RootDatum, w: &crate::matrix::IntMatrix) -> Result<SimpleSystem> {
        let map = |i: usize| {
            datum
                .root_index(&w.apply(datum.root(i)))
                .ok_or_else(|| Error::Argument("matrix does not permute the roots".to_string()))
        };
        let simple_indices = self.simple_indices.iter().map(|&i| map(i)).collect::<Result<_>>()?;
        let positive_indices = self.positive_indices.iter().map(|&i| map(i)).collect::<Result<_>>()?;
        Ok(SimpleSystem::assemble(datum, simple_indices, positive_indices))
    }
}

/// Chooses positive roots by a functional that is nonzero on every root and
/// returns the resulting simple system.
///
/// Without a seed: if the roots list begins with a simple system (the
/// convention used by [`construct`]) that system is returned, otherwise the
/// datum's generic functional decides. With a seed, roots pairing nonzero
/// with the seed keep its sign and ties are broken by the generic
/// functional.
pub fn find_simple_system(datum: &RootDatum, seed: Option<&RationalVector>) -> Result<SimpleSystem> {
    datum.require_valid()?;
    if seed.is_none() {
        if let Some(sys) = leading_simple_system(datum) {
            return Ok(sys);
        }
    }
    let generic = datum.generic_functional();
    let functional = match seed {
        None => generic,
        Some(seed) => {
            check_dim(datum.rank(), seed.dim())?;
            let lcm = seed
                .0
                .iter()
                .fold(BigInt::from(1), |l, c| num_integer::Integer::lcm(&l, c.denom()));
            let bound = datum
                .roots()
                .iter()
                .map(|r| pairing(r, &generic).expect("dims checked").abs())
                .max()
                .unwrap_or_else(Rational::zero);
            let t = (bound + Rational::from_integer(1.into())) * Rational::from_integer(lcm);
            seed.scale(&t).add(&generic)
        }
    };
    let positive_indices: Vec<usize> = (0..datum.num_roots())
        .filter(|&i| pairing(datum.root(i), &functional).expect("dims checked").is_positive())
        .collect();
    let positive: HashSet<&LatticeVector> = positive_indices.iter().map(|&i| datum.root(i)).collect();
    let simple_indices: Vec<usize> = positive_indices
        .iter()
        .copied()
        .filter(|&i| {
            let a = datum.root(i);
            !positive.iter().any(|b| positive.contains(&(a - *b)))
        })
        .collect();
    let sys = SimpleSystem::assemble(datum, simple_indices, positive_indices);
    debug_assert!(SimpleSystem::from_simple_roots(datum, sys.simple_roots()).is_ok());
    Ok(sys)
}

/// The simple system formed by the first `k` roots, `k` the rank of the root
/// span, when they form one.
fn leading_simple_system(datum: &RootDatum) -> Option<SimpleSystem> {
    let k = linalg::rank(datum.roots());
    if k == 0 {
        return None;
    }
    SimpleSystem::from_simple_roots(datum, &datum.roots()[..k]).ok()
}

/// A simple system containing the given root, found by breadth-first search
/// over the images of a base system under simple reflections.
pub fn simple_system_containing(datum: &RootDatum, root: &LatticeVector) -> Result<SimpleSystem> {
    let Some(target) = datum.root_index(root) else {
        return Err(Error::Argument(format!("{root} is not a root")));
    };
    let base = find_simple_system(datum, None)?;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(base.simple_indices.clone());
    queue.push_back(base);
    while let Some(sys) = queue.pop_front() {
        if sys.simple_indices.contains(&target) {
            return Ok(sys);
        }
        for k in 0..sys.len() {
            let next = sys.reflect_by_simple(datum, k);
            if seen.insert(next.simple_indices.clone()) {
                queue.push_back(next);
            }
        }
    }
    Err(Error::Inconsistency(format!("no simple system contains {root}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    StronglyDominant,
    Dominant,
    NotDominant,
}

impl Dominance {
    pub fn is_dominant(self) -> bool {
        self != Dominance::NotDominant
    }
}

pub fn dominance(x: &LatticeVector, delta: &SimpleSystem) -> Dominance {
    let pairings: Vec<i64> = delta.simple_coroots().iter().map(|c| x.dot(c)).collect();
    if pairings.iter().any(|&p| p < 0) {
        Dominance::NotDominant
    } else if pairings.iter().all(|&p| p > 0) {
        Dominance::StronglyDominant
    } else {
        Dominance::Dominant
    }
}

/// Sum of the positive roots.
pub fn two_rho(delta: &SimpleSystem) -> LatticeVector {
    delta
        .positive_roots()
        .iter()
        .fold(LatticeVector::zero(delta.rank()), |acc, r| &acc + r)
}

/// `Φ₀`, `P₀` and `Δ₀` for a dominant `x₀`: the roots orthogonal to `x₀`,
/// and their intersections with the positive and simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelZero {
    pub phi0: Vec<usize>,
    pub p0: Vec<usize>,
    pub delta0: Vec<usize>,
}

impl LevelZero {
    pub fn datum(&self, datum: &RootDatum) -> RootDatum {
        datum.subdatum(format!("{} level zero", datum.label()), &self.phi0)
    }
}

pub fn level_zero_subsystem(datum: &RootDatum, delta: &SimpleSystem, x0: &LatticeVector) -> Result<LevelZero> {
    check_dim(datum.rank(), x0.dim())?;
    if !dominance(x0, delta).is_dominant() {
        return Err(Error::Precondition(format!("{x0} is not dominant")));
    }
    let phi0: Vec<usize> = (0..datum.num_roots())
        .filter(|&i| x0.dot(datum.coroot(i)) == 0)
        .collect();
    let p0 = phi0.iter().copied().filter(|&i| delta.is_positive(i)).collect();
    let delta0 = delta
        .simple_indices()
        .iter()
        .copied()
        .filter(|i| phi0.contains(i))
        .collect();
    Ok(LevelZero { phi0, p0, delta0 })
}
