//! Weight polytopes: vertices, edges at a vertex from `Δ(x₀)` with explicit
//! supporting functionals, and an independent edge oracle by exact
//! feasibility.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use serde::Serialize;

use crate::characters::weight_set;
use crate::error::{check_dim, Error, Result};
use crate::feasibility::{hull_vertices, rational_feasible, HalfSpaceSystem};
use crate::lattice::{lattice_points_on_segment, pairing, rat, LatticeVector, Rational, RationalVector};
use crate::root_datum::{dominance, RootDatum, SimpleSystem};
use crate::weyl::{delta_of_x0_witnessed, dominant_representative, orbit, WeylElement, WeylGroup};

/// A segment between two distinct lattice points, endpoints sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeDescriptor {
    pub a: LatticeVector,
    pub b: LatticeVector,
    pub lattice_count: usize,
}

impl EdgeDescriptor {
    pub fn new(x0: &LatticeVector, x1: &LatticeVector) -> Result<Self> {
        check_dim(x0.dim(), x1.dim())?;
        if x0 == x1 {
            return Err(Error::Argument(format!("degenerate edge at {x0}")));
        }
        let (a, b) = if x0 < x1 { (x0, x1) } else { (x1, x0) };
        Ok(EdgeDescriptor {
            a: a.clone(),
            b: b.clone(),
            lattice_count: lattice_points_on_segment(a, b).len(),
        })
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        &self.a == x || &self.b == x
    }

    /// The endpoint other than `x`.
    pub fn other(&self, x: &LatticeVector) -> Option<&LatticeVector> {
        if &self.a == x {
            Some(&self.b)
        } else if &self.b == x {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        lattice_points_on_segment(&self.a, &self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPolytope {
    pub lambda: LatticeVector,
    pub weights: BTreeSet<LatticeVector>,
    pub vertices: BTreeSet<LatticeVector>,
    pub edges_at: BTreeMap<LatticeVector, Vec<EdgeDescriptor>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolytopeReport {
    pub lambda: LatticeVector,
    pub vertices: Vec<LatticeVector>,
    pub edges: Vec<EdgeDescriptor>,
}

impl WeightPolytope {
    /// Every edge once, sorted.
    pub fn edges(&self) -> BTreeSet<EdgeDescriptor> {
        self.edges_at.values().flatten().cloned().collect()
    }

    pub fn report(&self) -> PolytopeReport {
        PolytopeReport {
            lambda: self.lambda.clone(),
            vertices: self.vertices.iter().cloned().collect(),
            edges: self.edges().into_iter().collect(),
        }
    }
}

fn require_dominant(lambda: &LatticeVector, delta: &SimpleSystem) -> Result<()> {
    check_dim(delta.rank(), lambda.dim())?;
    if !dominance(lambda, delta).is_dominant() {
        return Err(Error::Precondition(format!("{lambda} is not dominant")));
    }
    Ok(())
}

fn rho_check(delta: &SimpleSystem) -> RationalVector {
    delta.two_rho_check().to_rational().scale(&(Rational::one() / rat(2)))
}

/// `W λ`, each point certified extreme: with `w x = λ`, the functional
/// `w⁻¹ ρ∨` is maximised on the orbit at `x` alone.
pub fn vertices(group: &WeylGroup, delta: &SimpleSystem, lambda: &LatticeVector) -> Result<BTreeSet<LatticeVector>> {
    require_dominant(lambda, delta)?;
    let orb = orbit(group, lambda)?;
    let rho = rho_check(delta);
    for x in &orb {
        let (top, w) = dominant_representative(group, delta, x)?;
        if &top != lambda {
            return Err(Error::Inconsistency(format!("orbit point {x} does not return to {lambda}")));
        }
        let y = w.inverse().apply_to_coweight(&rho);
        let vx = pairing(x, &y)?;
        for z in &orb {
            if z != x && pairing(z, &y)? >= vx {
                return Err(Error::Inconsistency(format!("orbit point {x} is not extreme")));
            }
        }
    }
    Ok(orb)
}

/// A simple system for which `x0` is dominant, and an element `w` with
/// `w(x0)` dominant for `delta`.
fn chamber_of(group: &WeylGroup, delta: &SimpleSystem, datum: &RootDatum, x0: &LatticeVector) -> Result<(SimpleSystem, WeylElement)> {
    let (_, w) = dominant_representative(group, delta, x0)?;
    let local = delta.transform(datum, &w.inverse().matrix)?;
    Ok((local, w))
}

/// Edges `[x₀, s_α(x₀)]` for `α ∈ Δ(x₀)`, computed in a chamber where `x₀`
/// is dominant.
pub fn edges_theorem(
    datum: &RootDatum,
    delta: &SimpleSystem,
    group: &WeylGroup,
    lambda: &LatticeVector,
    x0: &LatticeVector,
) -> Result<Vec<EdgeDescriptor>> {
    check_dim(datum.rank(), x0.dim())?;
    require_dominant(lambda, delta)?;
    let (top, _) = dominant_representative(group, delta, x0)?;
    if &top != lambda {
        return Err(Error::Argument(format!("{x0} is not a vertex of the polytope of {lambda}")));
    }
    let (local, _) = chamber_of(group, delta, datum, x0)?;
    let mut edges = Vec::new();
    for e in delta_of_x0_witnessed(datum, &local, x0)? {
        let x1 = datum.reflect(e.root_index, x0);
        edges.push(EdgeDescriptor::new(x0, &x1)?);
    }
    edges.sort();
    let distinct: BTreeSet<_> = edges.iter().collect();
    if distinct.len() != edges.len() {
        return Err(Error::Inconsistency(format!("two roots of Δ({x0}) give the same edge")));
    }
    Ok(edges)
}

/// Roots indexing the edges at `x₀`, paired with the edge they give.
pub fn edge_roots(
    datum: &RootDatum,
    delta: &SimpleSystem,
    group: &WeylGroup,
    x0: &LatticeVector,
) -> Result<Vec<(LatticeVector, EdgeDescriptor)>> {
    let (local, _) = chamber_of(group, delta, datum, x0)?;
    delta_of_x0_witnessed(datum, &local, x0)?
        .into_iter()
        .map(|e| {
            let x1 = datum.reflect(e.root_index, x0);
            Ok((e.root, EdgeDescriptor::new(x0, &x1)?))
        })
        .collect()
}

/// A coweight `y` with `⟨β, y⟩ ≥ 0` for every `β ∈ Δ(x₀)`, with equality
/// exactly at `β = α`. For `α` simple this is `ỹ - ½⟨α, ỹ⟩α∨` with `ỹ = ρ∨`;
/// otherwise `α = w₀(α₀)` and `y = w₀(y₀)`.
pub fn supporting_functional(
    datum: &RootDatum,
    delta: &SimpleSystem,
    group: &WeylGroup,
    x0: &LatticeVector,
    alpha: &LatticeVector,
) -> Result<RationalVector> {
    check_dim(datum.rank(), x0.dim())?;
    check_dim(datum.rank(), alpha.dim())?;
    let (local, _) = chamber_of(group, delta, datum, x0)?;
    let witnessed = delta_of_x0_witnessed(datum, &local, x0)?;
    let entry = witnessed
        .iter()
        .find(|e| &e.root == alpha)
        .ok_or_else(|| Error::Argument(format!("{alpha} is not in Δ({x0})")))?;
    let base_coroot = datum.coroot_of(&entry.base).expect("base is a root");
    let ytilde = rho_check(&local);
    let half = Rational::one() / rat(2);
    let y0 = ytilde.sub(&base_coroot.to_rational().scale(&(half * pairing(&entry.base, &ytilde)?)));
    let y = entry.w0.apply_to_coweight(&y0);
    for e in &witnessed {
        let v = pairing(&e.root, &y)?;
        let ok = if &e.root == alpha { v == rat(0) } else { v > rat(0) };
        if !ok {
            return Err(Error::Inconsistency(format!(
                "supporting functional for {alpha} pairs to {v} with {}",
                e.root
            )));
        }
    }
    Ok(y)
}

/// The vertices on which `⟨·, y⟩` attains its maximum over `points`.
pub fn face_of(points: &BTreeSet<LatticeVector>, y: &RationalVector) -> Result<BTreeSet<LatticeVector>> {
    let mut best: Option<Rational> = None;
    let mut face = BTreeSet::new();
    for p in points {
        let v = pairing(p, y)?;
        match &best {
            Some(b) if &v < b => {}
            Some(b) if &v == b => {
                face.insert(p.clone());
            }
            _ => {
                best = Some(v);
                face = BTreeSet::from([p.clone()]);
            }
        }
    }
    Ok(face)
}

/// Edges at `x₀` of `conv(weights)` by feasibility: `[x₀, x₁]` is an edge
/// iff some `(y, c)` has `⟨x₀, y⟩ = ⟨x₁, y⟩ = c` and `⟨v, y⟩ ≤ c - 1` at
/// every other vertex.
pub fn edges_oracle(weights: &BTreeSet<LatticeVector>, x0: &LatticeVector) -> Result<Vec<EdgeDescriptor>> {
    let verts = hull_vertices(weights)?;
    if !verts.contains(x0) {
        return Err(Error::Argument(format!("{x0} is not an extreme point")));
    }
    edges_among_vertices(&verts, x0)
}

/// The oracle of [`edges_oracle`] for a known vertex list containing `x0`.
pub fn edges_among_vertices(verts: &[LatticeVector], x0: &LatticeVector) -> Result<Vec<EdgeDescriptor>> {
    let d = x0.dim();
    let row = |x: &LatticeVector| {
        let mut v = x.to_rational().0;
        v.push(-Rational::one());
        RationalVector(v)
    };
    let mut edges = Vec::new();
    for x1 in verts.iter().filter(|v| *v != x0) {
        let mut sys = HalfSpaceSystem::new(d + 1);
        sys.equal(row(x0), rat(0))?;
        sys.equal(row(x1), rat(0))?;
        for v in verts.iter().filter(|v| *v != x0 && *v != x1) {
            sys.le(row(v), rat(-1))?;
        }
        if rational_feasible(&sys)?.is_feasible() {
            edges.push(EdgeDescriptor::new(x0, x1)?);
        }
    }
    edges.sort();
    Ok(edges)
}

/// Weights, vertices and the edges at every vertex.
pub fn build_polytope(
    datum: &RootDatum,
    delta: &SimpleSystem,
    group: &WeylGroup,
    lambda: &LatticeVector,
) -> Result<WeightPolytope> {
    let weights = weight_set(datum, delta, lambda)?;
    let verts = vertices(group, delta, lambda)?;
    if !verts.is_subset(&weights) {
        return Err(Error::Inconsistency("a vertex is not a weight".to_string()));
    }
    let mut edges_at = BTreeMap::new();
    for x0 in &verts {
        let es = edges_theorem(datum, delta, group, lambda, x0)?;
        if es.iter().any(|e| !verts.contains(e.other(x0).expect("edge at x0"))) {
            return Err(Error::Inconsistency(format!("edge at {x0} leaves the vertex set")));
        }
        edges_at.insert(x0.clone(), es);
    }
    Ok(WeightPolytope { lambda: lambda.clone(), weights, vertices: verts, edges_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::is_extreme;
    use crate::lattice::ratio;
    use crate::root_datum::{construct, find_simple_system, LatticeKind};
    use crate::weyl::generate;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    fn setup(label: &str, kind: LatticeKind) -> (RootDatum, SimpleSystem, WeylGroup) {
        let d = construct(label, kind).unwrap();
        let s = find_simple_system(&d, None).unwrap();
        let w = generate(&d, &s).unwrap();
        (d, s, w)
    }

    fn edge(a: &[i64], b: &[i64]) -> EdgeDescriptor {
        EdgeDescriptor::new(&lv(a), &lv(b)).unwrap()
    }

    #[test]
    fn vertex_examples() {
        let (_, s, w) = setup("A1", LatticeKind::SimplyConnected);
        assert_eq!(vertices(&w, &s, &lv(&[3])).unwrap(), [lv(&[3]), lv(&[-3])].into_iter().collect());
        let (d, s, w) = setup("A2", LatticeKind::SimplyConnected);
        let v = vertices(&w, &s, &lv(&[1, 1])).unwrap();
        assert_eq!(v.len(), 6);
        assert!(!v.contains(&lv(&[0, 0])));
        let weights: Vec<_> = weight_set(&d, &s, &lv(&[1, 1])).unwrap().into_iter().collect();
        for x in &weights {
            assert_eq!(is_extreme(x, &weights).unwrap(), v.contains(x));
        }
        let (d, s, w) = setup("G2", LatticeKind::SimplyConnected);
        let long: BTreeSet<_> = d.roots().iter().filter(|r| is_long(&d, r)).cloned().collect();
        assert_eq!(long.len(), 6);
        let highest = s.positive_roots().iter().max_by_key(|r| r.dot(&s.two_rho_check())).unwrap().clone();
        assert_eq!(vertices(&w, &s, &highest).unwrap(), long);
    }

    // short G2 roots pair to ±3 with some long coroot; long ones never exceed 1
    fn is_long(d: &RootDatum, r: &LatticeVector) -> bool {
        let c = d.coroot_of(r).unwrap();
        d.roots().iter().filter(|s| *s != r && **s != r.scale(-1)).all(|s| s.dot(c).abs() <= 1)
    }

    #[test]
    fn theorem_edge_examples() {
        let (d, s, w) = setup("A2", LatticeKind::SimplyConnected);
        assert_eq!(
            edges_theorem(&d, &s, &w, &lv(&[1, 1]), &lv(&[1, 1])).unwrap(),
            vec![edge(&[1, 1], &[-1, 2]), edge(&[1, 1], &[2, -1])]
        );
        assert_eq!(
            edges_theorem(&d, &s, &w, &lv(&[1, 0]), &lv(&[1, 0])).unwrap(),
            vec![edge(&[1, 0], &[-1, 1]), edge(&[1, 0], &[0, -1])]
        );
        assert!(matches!(
            edges_theorem(&d, &s, &w, &lv(&[1, 1]), &lv(&[0, 0])),
            Err(Error::Argument(_))
        ));
        let (d, s, w) = setup("A1", LatticeKind::Adjoint);
        assert_eq!(edges_theorem(&d, &s, &w, &lv(&[1]), &lv(&[1])).unwrap(), vec![edge(&[1], &[-1])]);
    }

    #[test]
    fn supporting_functional_examples() {
        let (d, s, w) = setup("A2", LatticeKind::SimplyConnected);
        let y = supporting_functional(&d, &s, &w, &lv(&[1, 1]), &lv(&[2, -1])).unwrap();
        assert_eq!(y, RationalVector(vec![ratio(1, 2), rat(1)]));
        assert_eq!(pairing(&lv(&[-1, 2]), &y).unwrap(), ratio(3, 2));

        let (d1, s1, w1) = setup("A1", LatticeKind::SimplyConnected);
        let y = supporting_functional(&d1, &s1, &w1, &lv(&[1]), &lv(&[2])).unwrap();
        assert_eq!(y, RationalVector(vec![rat(0)]));

        // α₁ + α₂ = s_{α₂}(α₁) at x₀ = ω₁
        let y = supporting_functional(&d, &s, &w, &lv(&[1, 0]), &lv(&[1, 1])).unwrap();
        let y0 = supporting_functional(&d, &s, &w, &lv(&[1, 0]), &lv(&[2, -1])).unwrap();
        let s2 = crate::weyl::reflection(&d, &lv(&[-1, 2])).unwrap();
        assert_eq!(y, s2.apply_to_coweight(&y0));
        assert!(matches!(
            supporting_functional(&d, &s, &w, &lv(&[1, 0]), &lv(&[-1, 2])),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        let square: BTreeSet<_> = [[1, 1], [1, -1], [-1, 1], [-1, -1]].iter().map(|p| lv(p)).collect();
        assert_eq!(
            edges_oracle(&square, &lv(&[1, 1])).unwrap(),
            vec![edge(&[1, 1], &[-1, 1]), edge(&[1, 1], &[1, -1])]
        );
        let (d, s, w) = setup("A2", LatticeKind::SimplyConnected);
        let weights = weight_set(&d, &s, &lv(&[1, 1])).unwrap();
        assert_eq!(
            edges_oracle(&weights, &lv(&[1, 1])).unwrap(),
            edges_theorem(&d, &s, &w, &lv(&[1, 1]), &lv(&[1, 1])).unwrap()
        );
        let single = BTreeSet::from([lv(&[2, 3])]);
        assert!(edges_oracle(&single, &lv(&[2, 3])).unwrap().is_empty());
        assert!(matches!(edges_oracle(&weights, &lv(&[0, 0])), Err(Error::Argument(_))));
    }

    #[test]
    fn build_examples() {
        let (d, s, w) = setup("A2", LatticeKind::SimplyConnected);
        let p = build_polytope(&d, &s, &w, &lv(&[1, 1])).unwrap();
        assert_eq!(p.vertices.len(), 6);
        assert!(p.edges_at.values().all(|e| e.len() == 2));
        assert_eq!(p.edges().len(), 6);
        let r = serde_json::to_value(p.report()).unwrap();
        assert_eq!(r["edges"].as_array().unwrap().len(), 6);
        assert_eq!(r["edges"][0]["lattice_count"], 2);

        let (d, s, w) = setup("A1", LatticeKind::SimplyConnected);
        let p = build_polytope(&d, &s, &w, &lv(&[0])).unwrap();
        assert_eq!(p.vertices.len(), 1);
        assert!(p.edges().is_empty());

        let (d, s, w) = setup("G2", LatticeKind::SimplyConnected);
        let two_rho = crate::root_datum::two_rho(&s);
        let p = build_polytope(&d, &s, &w, &two_rho).unwrap();
        assert_eq!(p.vertices.len(), 12);
        assert!(p.edges_at.values().all(|e| e.len() == 2));
    }

    #[test]
    fn theorem_matches_oracle_small() {
        for (label, kind) in [
            ("A2", LatticeKind::SimplyConnected),
            ("B2", LatticeKind::SimplyConnected),
            ("G2", LatticeKind::SimplyConnected),
            ("A1xA1", LatticeKind::SimplyConnected),
        ] {
            let (d, s, w) = setup(label, kind);
            for lam in [[1, 0], [0, 1], [1, 1], [2, 0]] {
                let p = build_polytope(&d, &s, &w, &lv(&lam)).unwrap();
                for x0 in &p.vertices {
                    assert_eq!(p.edges_at[x0], edges_oracle(&p.weights, x0).unwrap(), "{label} {lam:?} {x0}");
                }
            }
        }
    }

    #[test]
    fn faces_and_strings() {
        let (d, s, w) = setup("B2", LatticeKind::SimplyConnected);
        for lam in [[1, 0], [0, 1], [1, 1], [0, 2]] {
            let lam = lv(&lam);
            let p = build_polytope(&d, &s, &w, &lam).unwrap();
            for x0 in &p.vertices {
                for (alpha, e) in edge_roots(&d, &s, &w, x0).unwrap() {
                    let y = supporting_functional(&d, &s, &w, x0, &alpha).unwrap();
                    let face = face_of(&p.vertices, &y).unwrap();
                    assert_eq!(face, [e.a.clone(), e.b.clone()].into_iter().collect());
                    let c = x0.dot(d.coroot_of(&alpha).unwrap());
                    let on_edge = e.lattice_points().into_iter().filter(|q| p.weights.contains(q)).count();
                    assert_eq!(on_edge as i64, c + 1);
                }
            }
        }
    }
}
