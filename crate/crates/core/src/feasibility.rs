//! Exact feasibility of systems of rational linear constraints by
//! Fourier–Motzkin elimination, with witness recovery by back-substitution.
//!
//! Constraints are cleared of denominators and carried as primitive integer
//! rows, so elimination never introduces fractions. Strict inequalities are
//! tracked through elimination (a combination is strict if either input is),
//! which makes the verdict exact without an infinitesimal.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::lattice::{LatticeVector, Rational, RationalVector};

/// Default cap on the number of live constraints during elimination.
pub const DEFAULT_CONSTRAINT_CAP: usize = 250_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `⟨a, x⟩ ≤ b`
    Le,
    /// `⟨a, x⟩ = b`
    Eq,
    /// `⟨a, x⟩ < b`
    Lt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub covector: RationalVector,
    pub bound: Rational,
    pub relation: Relation,
}

impl HalfSpace {
    pub fn satisfied_by(&self, x: &RationalVector) -> bool {
        let v = self.covector.dot(x);
        match self.relation {
            Relation::Le => v <= self.bound,
            Relation::Eq => v == self.bound,
            Relation::Lt => v < self.bound,
        }
    }
}

/// A conjunction of linear constraints on `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpaceSystem {
    dim: usize,
    constraints: Vec<HalfSpace>,
}

impl HalfSpaceSystem {
    pub fn new(dim: usize) -> Self {
        HalfSpaceSystem { dim, constraints: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn push(&mut self, covector: RationalVector, relation: Relation, bound: Rational) -> Result<()> {
        check_dim(self.dim, covector.dim())?;
        self.constraints.push(HalfSpace { covector, bound, relation });
        Ok(())
    }

    pub fn le(&mut self, covector: RationalVector, bound: Rational) -> Result<()> {
        self.push(covector, Relation::Le, bound)
    }

    pub fn lt(&mut self, covector: RationalVector, bound: Rational) -> Result<()> {
        self.push(covector, Relation::Lt, bound)
    }

    pub fn equal(&mut self, covector: RationalVector, bound: Rational) -> Result<()> {
        self.push(covector, Relation::Eq, bound)
    }

    /// `⟨a, x⟩ ≥ b`
    pub fn ge(&mut self, covector: RationalVector, bound: Rational) -> Result<()> {
        let neg = RationalVector(covector.0.into_iter().map(|c| -c).collect());
        self.push(neg, Relation::Le, -bound)
    }

    /// `⟨a, x⟩ > b`
    pub fn gt(&mut self, covector: RationalVector, bound: Rational) -> Result<()> {
        let neg = RationalVector(covector.0.into_iter().map(|c| -c).collect());
        self.push(neg, Relation::Lt, -bound)
    }

    pub fn is_satisfied_by(&self, x: &RationalVector) -> bool {
        self.constraints.iter().all(|c| c.satisfied_by(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(RationalVector),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RationalVector> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Row {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
    rel: Relation,
}

impl Row {
    fn from_halfspace(h: &HalfSpace) -> Row {
        let lcm = h
            .covector
            .0
            .iter()
            .chain(std::iter::once(&h.bound))
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scale = |c: &Rational| (c * Rational::from_integer(lcm.clone())).to_integer();
        let mut row = Row {
            coeffs: h.covector.0.iter().map(scale).collect(),
            rhs: scale(&h.bound),
            rel: h.relation,
        };
        row.normalize();
        row
    }

    fn normalize(&mut self) {
        let g = self.coeffs.iter().fold(self.rhs.abs(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c /= &g;
            }
            self.rhs /= &g;
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// For a row with no variables left: does `0 rel rhs` hold?
    fn trivially_holds(&self) -> bool {
        match self.rel {
            Relation::Le => !self.rhs.is_negative(),
            Relation::Lt => self.rhs.is_positive(),
            Relation::Eq => self.rhs.is_zero(),
        }
    }

    /// `p * self + q * other` with `p, q > 0` for inequalities.
    fn combine(&self, p: &BigInt, other: &Row, q: &BigInt) -> Row {
        let rel = match (self.rel, other.rel) {
            (Relation::Eq, Relation::Eq) => Relation::Eq,
            (Relation::Lt, _) | (_, Relation::Lt) => Relation::Lt,
            _ => Relation::Le,
        };
        let mut row = Row {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| p * a + q * b).collect(),
            rhs: p * &self.rhs + q * &other.rhs,
            rel,
        };
        row.normalize();
        row
    }

    /// Value of `rhs - Σ_{j≠var} a_j x_j`, the slack left for `var`.
    fn residual(&self, var: usize, x: &[Rational]) -> Rational {
        let mut r = Rational::from_integer(self.rhs.clone());
        for (j, a) in self.coeffs.iter().enumerate() {
            if j != var && !a.is_zero() {
                r -= &x[j] * Rational::from_integer(a.clone());
            }
        }
        r
    }
}

enum Stage {
    Substitute { var: usize, pivot: Row },
    Eliminate { var: usize, rows: Vec<Row> },
}

/// Decides the system exactly. A returned witness satisfies every
/// constraint (re-checked before returning).
pub fn rational_feasible(system: &HalfSpaceSystem) -> Result<Feasibility> {
    rational_feasible_with_cap(system, DEFAULT_CONSTRAINT_CAP)
}

pub fn rational_feasible_with_cap(system: &HalfSpaceSystem, cap: usize) -> Result<Feasibility> {
    for c in &system.constraints {
        check_dim(system.dim, c.covector.dim())?;
    }
    let n = system.dim;
    let mut rows: Vec<Row> = Vec::new();
    for h in &system.constraints {
        let r = Row::from_halfspace(h);
        if r.is_trivial() {
            if !r.trivially_holds() {
                return Ok(Feasibility::Infeasible);
            }
        } else {
            rows.push(r);
        }
    }
    rows = dedup(rows);

    let mut stages: Vec<Stage> = Vec::new();
    let mut eliminated = vec![false; n];
    loop {
        if rows.is_empty() {
            break;
        }
        // Equalities first: substitute one variable out.
        if let Some((pi, var)) = pick_equality(&rows) {
            let pivot = rows.swap_remove(pi);
            let a = pivot.coeffs[var].clone();
            let mut next = Vec::with_capacity(rows.len());
            for r in rows {
                let b = &r.coeffs[var];
                let nr = if b.is_zero() {
                    r
                } else {
                    // |a| * r - sign(a) * b * pivot removes var and keeps direction.
                    let q = if a.is_positive() { -b.clone() } else { b.clone() };
                    r.combine(&a.abs(), &pivot, &q)
                };
                if nr.is_trivial() {
                    if !nr.trivially_holds() {
                        return Ok(Feasibility::Infeasible);
                    }
                } else {
                    next.push(nr);
                }
            }
            rows = dedup(next);
            eliminated[var] = true;
            stages.push(Stage::Substitute { var, pivot });
            continue;
        }

        let var = pick_variable(&rows, &eliminated);
        let (involved, rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| !r.coeffs[var].is_zero());
        let pos: Vec<&Row> = involved.iter().filter(|r| r.coeffs[var].is_positive()).collect();
        let neg: Vec<&Row> = involved.iter().filter(|r| r.coeffs[var].is_negative()).collect();
        if rest.len() + pos.len() * neg.len() > cap {
            return Err(Error::Resource(format!(
                "Fourier-Motzkin elimination would exceed {cap} constraints"
            )));
        }
        let mut next = rest;
        for p in &pos {
            for q in &neg {
                let nr = p.combine(&(-&q.coeffs[var]), q, &p.coeffs[var]);
                if nr.is_trivial() {
                    if !nr.trivially_holds() {
                        return Ok(Feasibility::Infeasible);
                    }
                } else {
                    next.push(nr);
                }
            }
        }
        rows = dedup(next);
        eliminated[var] = true;
        stages.push(Stage::Eliminate { var, rows: involved });
    }

    let mut x = vec![Rational::zero(); n];
    for stage in stages.iter().rev() {
        match stage {
            Stage::Substitute { var, pivot } => {
                let a = Rational::from_integer(pivot.coeffs[*var].clone());
                x[*var] = pivot.residual(*var, &x) / a;
            }
            Stage::Eliminate { var, rows } => {
                x[*var] = choose_value(*var, rows, &x);
            }
        }
    }
    let witness = RationalVector(x);
    if !system.is_satisfied_by(&witness) {
        return Err(Error::Inconsistency(
            "feasibility witness failed re-check".to_string(),
        ));
    }
    Ok(Feasibility::Feasible(witness))
}

fn pick_equality(rows: &[Row]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, r) in rows.iter().enumerate() {
        if r.rel != Relation::Eq {
            continue;
        }
        for (j, a) in r.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| a.abs() < *b) {
                best = Some((i, j, a.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// The variable whose elimination creates the fewest new rows.
fn pick_variable(rows: &[Row], eliminated: &[bool]) -> usize {
    let n = eliminated.len();
    (0..n)
        .filter(|&j| !eliminated[j] && rows.iter().any(|r| !r.coeffs[j].is_zero()))
        .min_by_key(|&j| {
            let p = rows.iter().filter(|r| r.coeffs[j].is_positive()).count();
            let q = rows.iter().filter(|r| r.coeffs[j].is_negative()).count();
            p * q
        })
        .expect("a nontrivial row mentions some live variable")
}

/// Removes duplicate rows and, among inequalities with the same direction,
/// keeps only the tightest.
fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut best: HashMap<Vec<BigInt>, (Rational, Relation)> = HashMap::new();
    let mut order: Vec<Vec<BigInt>> = Vec::new();
    let mut eqs: BTreeSet<(Vec<BigInt>, BigInt)> = BTreeSet::new();
    for r in rows {
        if r.rel == Relation::Eq {
            let flip = r.coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
            if flip {
                eqs.insert((r.coeffs.iter().map(|c| -c).collect(), -r.rhs));
            } else {
                eqs.insert((r.coeffs, r.rhs));
            }
            continue;
        }
        let g = r.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let dir: Vec<BigInt> = r.coeffs.iter().map(|c| c / &g).collect();
        let bound = Rational::new(r.rhs, g);
        match best.get_mut(&dir) {
            Some((b, rel)) => {
                if bound < *b || (bound == *b && r.rel == Relation::Lt) {
                    *b = bound;
                    *rel = r.rel;
                }
            }
            None => {
                order.push(dir.clone());
                best.insert(dir, (bound, r.rel));
            }
        }
    }
    let mut out: Vec<Row> = eqs
        .into_iter()
        .map(|(coeffs, rhs)| Row { coeffs, rhs, rel: Relation::Eq })
        .collect();
    for dir in order {
        let (bound, rel) = best.remove(&dir).expect("recorded direction");
        let q = bound.denom().clone();
        let mut row = Row {
            coeffs: dir.iter().map(|c| c * &q).collect(),
            rhs: bound.numer().clone(),
            rel,
        };
        row.normalize();
        out.push(row);
    }
    out
}

/// Picks a value of `var` satisfying every row of the stage, given the
/// values of all variables that appear with it.
fn choose_value(var: usize, rows: &[Row], x: &[Rational]) -> Rational {
    let mut lower: Option<(Rational, bool)> = None;
    let mut upper: Option<(Rational, bool)> = None;
    for r in rows {
        let a = Rational::from_integer(r.coeffs[var].clone());
        let bound = r.residual(var, x) / &a;
        let strict = r.rel == Relation::Lt;
        if a.is_positive() {
            let tighter = match &upper {
                None => true,
                Some((u, s)) => bound < *u || (bound == *u && strict && !s),
            };
            if tighter {
                upper = Some((bound, strict));
            }
        } else {
            let tighter = match &lower {
                None => true,
                Some((l, s)) => bound > *l || (bound == *l && strict && !s),
            };
            if tighter {
                lower = Some((bound, strict));
            }
        }
    }
    let fits = |v: &Rational| {
        lower.as_ref().is_none_or(|(l, s)| if *s { v > l } else { v >= l })
            && upper.as_ref().is_none_or(|(u, s)| if *s { v < u } else { v <= u })
    };
    // Prefer 0, then the integer nearest the binding bound, then a midpoint.
    let zero = Rational::zero();
    if fits(&zero) {
        return zero;
    }
    if let Some((l, s)) = &lower {
        let c = if *s { l.floor() + Rational::one() } else { l.ceil() };
        if fits(&c) {
            return c;
        }
    }
    if let Some((u, s)) = &upper {
        let c = if *s { u.ceil() - Rational::one() } else { u.floor() };
        if fits(&c) {
            return c;
        }
    }
    match (lower, upper) {
        (Some((l, _)), Some((u, _))) if l == u => l,
        (Some((l, _)), Some((u, _))) => (l + u) / Rational::from_integer(BigInt::from(2)),
        _ => unreachable!("a one-sided bound always admits an integer"),
    }
}

/// Whether `p` is a convex combination of `points`.
///
/// Decided through the separation system: `p ∉ conv(points)` iff some
/// covector `y` has `⟨s - p, y⟩ ≤ -1` for every `s` (the system is
/// homogeneous, so the strict gap can be scaled to 1).
pub fn hull_membership(p: &RationalVector, points: &[LatticeVector]) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::Argument("convex hull of an empty point set".to_string()));
    }
    for s in points {
        check_dim(p.dim(), s.dim())?;
    }
    let mut sys = HalfSpaceSystem::new(p.dim());
    for s in points {
        sys.le(s.to_rational().sub(p), -Rational::one())?;
    }
    Ok(!rational_feasible(&sys)?.is_feasible())
}

/// Whether `v` is an extreme point of `conv(points ∪ {v})`, i.e. it is not
/// a convex combination of the other points.
pub fn is_extreme(v: &LatticeVector, points: &[LatticeVector]) -> Result<bool> {
    let others: Vec<LatticeVector> = points.iter().filter(|p| *p != v).cloned().collect();
    if others.is_empty() {
        return Ok(true);
    }
    Ok(!hull_membership(&v.to_rational(), &others)?)
}

/// Vertices of the convex hull of a finite point set, sorted.
///
/// Points that are the midpoint of two other points of the set are
/// discarded first; a vertex is never such a midpoint, and removing
/// non-vertices does not change the hull, so the remaining candidates are
/// tested for extremeness against each other only.
pub fn hull_vertices(points: &BTreeSet<LatticeVector>) -> Result<Vec<LatticeVector>> {
    let candidates: Vec<LatticeVector> = points
        .iter()
        .filter(|x| {
            !points.iter().any(|a| {
                a != *x && {
                    let mirror = &x.scale(2) - a;
                    mirror != **x && points.contains(&mirror)
                }
            })
        })
        .cloned()
        .collect();
    let mut out = Vec::new();
    for v in &candidates {
        if is_extreme(v, &candidates)? {
            out.push(v.clone());
        }
    }
    Ok(out)
}
