//! Weight multiplicities and branching to regular subsystems.
//!
//! Weights live in the ambient space of the constructed positive system and
//! are stored with exact rational coordinates. Full weight systems come from
//! Freudenthal's recursion on dominant weights; restriction to a subsystem uses
//! the alternating sum over the subsystem's Weyl group.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::rootsys::{build_positive_roots, Family, PositiveRootSet, RootMask, RootVector};
use crate::weyl::MAX_GROUP_ORDER;

/// A weight with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Rational64>);

impl Weight {
    pub fn new(coords: Vec<Rational64>) -> Self {
        Weight(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Weight(vec![Rational64::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(
            coords
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        )
    }

    pub fn from_root(root: &RootVector) -> Self {
        Weight::from_ints(root.coords())
    }

    /// Parses comma-separated rationals such as `1,0` or `1/2,-1/2`.
    pub fn parse(s: &str, dim: usize) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<Rational64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dim {
            return Err(Error::Parse(format!(
                "weight '{s}' has {} coordinates, expected {dim}",
                coords.len()
            )));
        }
        Ok(Weight(coords))
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Weight) -> Rational64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_root(&self, root: &RootVector) -> Rational64 {
        self.0
            .iter()
            .zip(root.coords())
            .map(|(a, &b)| a * Rational64::from_integer(b))
            .sum()
    }

    pub fn norm2(&self) -> Rational64 {
        self.dot(self)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: Rational64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add_root(&self, root: &RootVector, k: i64) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(root.coords())
                .map(|(a, &b)| a + Rational64::from_integer(k * b))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Reflection in the hyperplane orthogonal to `root`.
    pub fn reflect(&self, root: &RootVector) -> Weight {
        let c = self.dot_root(root) * 2 / root.norm2();
        Weight(
            self.0
                .iter()
                .zip(root.coords())
                .map(|(a, &b)| a - c * b)
                .collect(),
        )
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

/// Weights with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset(BTreeMap<Weight, u64>);

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `m` copies of `w`; zero is ignored.
    pub fn insert(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.0.entry(w).or_insert(0) += m;
        }
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.0.iter().map(|(w, &m)| (w, m))
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Number of distinct weights.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(Weight, u64)> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = (Weight, u64)>>(iter: I) -> Self {
        let mut out = WeightMultiset::new();
        for (w, m) in iter {
            out.insert(w, m);
        }
        out
    }
}

fn simple_vectors(prs: &PositiveRootSet) -> Vec<RootVector> {
    prs.vectors_of(prs.simple_roots())
}

/// Solves `m x = b` over the rationals; `None` if singular or inconsistent.
///
/// `m` has one row per equation; extra equations are checked for consistency.
fn solve(m: &[Vec<Rational64>], b: &[Rational64]) -> Option<Vec<Rational64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][c].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= inv;
        }
        let pivot = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != pivot_row && !row[c].is_zero() {
                let f = row[c];
                for (x, v) in row.iter_mut().zip(&pivot) {
                    *x -= f * v;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if pivots.len() < cols || a[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some(a[..cols].iter().map(|r| r[cols]).collect())
}

/// Coordinates of `w` in the basis of simple roots, if `w` lies in their span.
fn simple_root_coordinates(prs: &PositiveRootSet, w: &Weight) -> Option<Vec<Rational64>> {
    let simple = simple_vectors(prs);
    let m: Vec<Vec<Rational64>> = (0..w.dim())
        .map(|k| {
            simple
                .iter()
                .map(|a| Rational64::from_integer(a.coords()[k]))
                .collect()
        })
        .collect();
    solve(&m, w.coords())
}

/// Fundamental weights, ordered like the simple roots.
pub fn fundamental_weights(prs: &PositiveRootSet) -> Vec<Weight> {
    let simple = simple_vectors(prs);
    let r = simple.len();
    // Cartan matrix entries 2<a_k, a_j>/<a_j, a_j>, transposed so that row j
    // holds the equation for pairing against a_j.
    let m: Vec<Vec<Rational64>> = (0..r)
        .map(|j| {
            (0..r)
                .map(|k| Rational64::new(2 * simple[k].dot(&simple[j]), simple[j].norm2()))
                .collect()
        })
        .collect();
    (0..r)
        .map(|i| {
            let e: Vec<Rational64> = (0..r)
                .map(|j| {
                    if i == j {
                        Rational64::one()
                    } else {
                        Rational64::zero()
                    }
                })
                .collect();
            let c = solve(&m, &e).expect("Cartan matrix is invertible");
            let mut w = Weight::zero(prs.ambient_dim());
            for (ck, a) in c.iter().zip(&simple) {
                w = w.add(&Weight::from_root(a).scale(*ck));
            }
            w
        })
        .collect()
}

/// `Σ a_i ω_i` for nonnegative coefficients `a_i`.
pub fn weight_from_fundamental(prs: &PositiveRootSet, coeffs: &[i64]) -> Result<Weight> {
    let fw = fundamental_weights(prs);
    if coeffs.len() != fw.len() {
        return domain(format!(
            "{} fundamental coefficients given, rank is {}",
            coeffs.len(),
            fw.len()
        ));
    }
    if coeffs.iter().any(|&c| c < 0) {
        return domain("fundamental coefficients must be nonnegative");
    }
    let mut w = Weight::zero(prs.ambient_dim());
    for (&c, f) in coeffs.iter().zip(&fw) {
        w = w.add(&f.scale(Rational64::from_integer(c)));
    }
    Ok(w)
}

/// Values `2<w, a>/<a, a>` on the simple roots; errors unless `w` is integral
/// and lies in the span of the roots.
pub fn dynkin_labels(prs: &PositiveRootSet, w: &Weight) -> Result<Vec<i64>> {
    if w.dim() != prs.ambient_dim() {
        return domain(format!(
            "weight has dimension {}, ambient dimension is {}",
            w.dim(),
            prs.ambient_dim()
        ));
    }
    if simple_root_coordinates(prs, w).is_none() {
        return domain(format!("weight {w} is not in the span of the roots"));
    }
    simple_vectors(prs)
        .iter()
        .map(|a| {
            let c = w.dot_root(a) * 2 / a.norm2();
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                domain(format!("weight {w} is not integral"))
            }
        })
        .collect()
}

fn rho(prs: &PositiveRootSet) -> Weight {
    let mut w = Weight::zero(prs.ambient_dim());
    for a in prs.roots() {
        w = w.add_root(a, 1);
    }
    w.scale(Rational64::new(1, 2))
}

/// Weyl dimension formula over the positive roots in `mask`.
fn weyl_dimension_over(prs: &PositiveRootSet, mask: RootMask, hw: &Weight) -> Rational64 {
    let mut rho = Weight::zero(prs.ambient_dim());
    for i in mask.iter() {
        rho = rho.add_root(prs.root(i), 1);
    }
    let rho = rho.scale(Rational64::new(1, 2));
    let shifted = hw.add(&rho);
    mask.iter()
        .map(|i| shifted.dot_root(prs.root(i)) / rho.dot_root(prs.root(i)))
        .product()
}

/// Dimension of the irreducible module with highest weight `hw`.
pub fn weyl_dimension(prs: &PositiveRootSet, hw: &Weight) -> Result<u64> {
    let labels = dynkin_labels(prs, hw)?;
    if labels.iter().any(|&c| c < 0) {
        return domain(format!("weight {hw} is not dominant"));
    }
    let d = weyl_dimension_over(prs, prs.full_mask(), hw);
    debug_assert!(d.is_integer());
    Ok(d.to_integer() as u64)
}

fn to_dominant(simple: &[RootVector], w: &Weight) -> Weight {
    let mut w = w.clone();
    while let Some(a) = simple.iter().find(|a| w.dot_root(a).is_negative()) {
        w = w.reflect(a);
    }
    w
}

fn orbit(simple: &[RootVector], w: &Weight) -> BTreeSet<Weight> {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        for a in simple {
            let u = v.reflect(a);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Full weight system of the irreducible module with highest weight `hw`.
pub fn weight_multiplicities(family: Family, rank: usize, hw: &Weight) -> Result<WeightMultiset> {
    let prs = build_positive_roots(family, rank)?;
    weight_multiplicities_for(&prs, hw)
}

/// As [`weight_multiplicities`], for an already constructed system.
pub fn weight_multiplicities_for(prs: &PositiveRootSet, hw: &Weight) -> Result<WeightMultiset> {
    let labels = dynkin_labels(prs, hw)?;
    if labels.iter().any(|&c| c < 0) {
        return domain(format!("weight {hw} is not dominant"));
    }
    let simple = simple_vectors(prs);
    let bound = hw.norm2();

    // Dominant weights below hw, by depth.
    let mut levels: Vec<Vec<Weight>> = vec![vec![hw.clone()]];
    let mut seen = BTreeSet::from([hw.clone()]);
    let mut frontier = vec![hw.clone()];
    let mut dominant: Vec<Weight> = vec![hw.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for a in &simple {
                let v = w.add_root(a, -1);
                if v.norm2() <= bound && seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        let dom: Vec<Weight> = next
            .iter()
            .filter(|v| simple.iter().all(|a| !v.dot_root(a).is_negative()))
            .cloned()
            .collect();
        dominant.extend(dom.iter().cloned());
        levels.push(dom);
        frontier = next;
    }

    let lr = hw.add(&rho(prs)).norm2();
    let rho = rho(prs);
    let mut mult: HashMap<Weight, Rational64> = HashMap::new();
    mult.insert(hw.clone(), Rational64::one());
    for level in levels.iter().skip(1) {
        for mu in level {
            let mut num = Rational64::zero();
            for a in prs.roots() {
                let mut k = 1;
                loop {
                    let v = mu.add_root(a, k);
                    if v.norm2() > bound {
                        break;
                    }
                    if let Some(m) = mult.get(&to_dominant(&simple, &v)) {
                        num += m * v.dot_root(a);
                    }
                    k += 1;
                }
            }
            let den = lr - mu.add(&rho).norm2();
            assert!(
                den.is_positive(),
                "dominant weight below the highest has smaller norm"
            );
            let m = num * 2 / den;
            assert!(
                m.is_integer() && !m.is_negative(),
                "multiplicity {m} at {mu}"
            );
            if !m.is_zero() {
                mult.insert(mu.clone(), m);
            }
        }
    }

    let mut out = WeightMultiset::new();
    for d in &dominant {
        if let Some(m) = mult.get(d) {
            for w in orbit(&simple, d) {
                out.insert(w, m.to_integer() as u64);
            }
        }
    }
    let dim = weyl_dimension_over(prs, prs.full_mask(), hw);
    assert_eq!(
        Rational64::from_integer(out.total() as i64),
        dim,
        "Freudenthal total disagrees with the dimension formula"
    );
    Ok(out)
}

/// Checks that `sub` together with its negatives is closed under addition
/// inside the root system.
fn check_closed(prs: &PositiveRootSet, sub: RootMask) -> Result<()> {
    if sub.is_empty() || !sub.is_subset(prs.full_mask()) {
        return domain("subsystem must be a nonempty set of positive roots");
    }
    for i in sub.iter() {
        for j in sub.iter() {
            let a = prs.root(i);
            let b = prs.root(j);
            for v in [a.add(b), a.sub(b)].into_iter().flatten() {
                let k = prs.index_of(&v).or_else(|| prs.index_of(&v.neg()));
                if let Some(k) = k {
                    if !sub.contains(k) {
                        return domain(format!(
                            "subset is not closed: {} is missing",
                            prs.root(k).to_e_notation(prs.index_base())
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

type Matrix = Vec<Vec<Rational64>>;

fn apply(m: &Matrix, w: &Weight) -> Weight {
    Weight(
        m.iter()
            .map(|row| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

fn reflection_matrix(a: &RootVector) -> Matrix {
    let n = a.dim();
    let aa = a.norm2();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { 1 } else { 0 };
                    Rational64::from_integer(id)
                        - Rational64::new(2 * a.coords()[i] * a.coords()[j], aa)
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Elements of the group generated by reflections in `simple`, with determinants.
fn reflection_group(simple: &[RootVector], dim: usize) -> Result<Vec<(Matrix, i64)>> {
    let gens: Vec<Matrix> = simple.iter().map(reflection_matrix).collect();
    let id: Matrix = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        Rational64::one()
                    } else {
                        Rational64::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut seen: HashMap<Matrix, i64> = HashMap::from([(id.clone(), 1)]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let sign = seen[&g];
        for s in &gens {
            let h = mat_mul(s, &g);
            if !seen.contains_key(&h) {
                if seen.len() >= MAX_GROUP_ORDER {
                    return Err(Error::Capacity {
                        what: "subsystem Weyl group".into(),
                        size: seen.len() + 1,
                        bound: MAX_GROUP_ORDER,
                    });
                }
                seen.insert(h.clone(), -sign);
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|g| {
            let s = seen[&g];
            (g, s)
        })
        .collect())
}

/// Highest weights, with multiplicities, of the restriction of a module to the
/// regular subsystem spanned by the positive roots in `sub`.
///
/// `weights` must be the full weight system of a module of `target`.
pub fn subalgebra_highest_weights(
    target: &PositiveRootSet,
    weights: &WeightMultiset,
    sub: RootMask,
) -> Result<WeightMultiset> {
    check_closed(target, sub)?;
    let simple_sub = target.vectors_of(target.non_sums_within(sub));
    let group = reflection_group(&simple_sub, target.ambient_dim())?;
    let mut rho_sub = Weight::zero(target.ambient_dim());
    for i in sub.iter() {
        rho_sub = rho_sub.add_root(target.root(i), 1);
    }
    let rho_sub = rho_sub.scale(Rational64::new(1, 2));

    let mut out = WeightMultiset::new();
    for (mu, _) in weights.iter() {
        if simple_sub.iter().any(|a| mu.dot_root(a).is_negative()) {
            continue;
        }
        let shifted = mu.add(&rho_sub);
        let n: i64 = group
            .iter()
            .map(|(g, det)| det * weights.get(&apply(g, &shifted).sub(&rho_sub)) as i64)
            .sum();
        assert!(n >= 0, "negative branching multiplicity at {mu}");
        out.insert(mu.clone(), n as u64);
    }
    let covered: Rational64 = out
        .iter()
        .map(|(mu, m)| weyl_dimension_over(target, sub, mu) * Rational64::from_integer(m as i64))
        .sum();
    assert_eq!(
        covered,
        Rational64::from_integer(weights.total() as i64),
        "restriction does not account for every weight"
    );
    Ok(out)
}

/// An affine identification of a rank-2 weight diagram with a multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatch {
    pub family: Family,
    /// Fundamental coefficients of the pattern's highest weight.
    pub coefficients: (i64, i64),
    pub highest_weight: Weight,
    pub dimension: u64,
    /// Image of the pattern's highest weight.
    pub origin: Weight,
    /// Images of the two simple roots (negated steps below the highest weight).
    pub steps: Vec<Weight>,
}

/// Looks for an irreducible module of the rank-2 simple type `family` whose
/// weight diagram maps onto `hw` by an injective affine map.
///
/// Pattern points are written as `λ - n_1 α_1 - n_2 α_2`; the map sends
/// `(n_1, n_2)` to `origin + n_1 steps[0] + n_2 steps[1]`. Candidate modules
/// are tried in order of increasing coefficients, and identifications in the
/// order of the support of `hw`.
pub fn match_pattern(hw: &WeightMultiset, family: Family) -> Result<Option<PatternMatch>> {
    let prs = build_positive_roots(family, 2)?;
    let total = hw.total();
    if total == 0 {
        return Ok(None);
    }
    let fw = fundamental_weights(&prs);
    let simple = simple_vectors(&prs);
    let mut candidates = Vec::new();
    for a in 0.. {
        let lam = fw[0].scale(Rational64::from_integer(a));
        if weyl_dimension(&prs, &lam)? > total {
            break;
        }
        for b in 0.. {
            let lam = lam.add(&fw[1].scale(Rational64::from_integer(b)));
            let d = weyl_dimension(&prs, &lam)?;
            if d > total {
                break;
            }
            if d == total {
                candidates.push((a, b, lam));
            }
        }
    }
    let support: Vec<(&Weight, u64)> = hw.iter().collect();
    for (a, b, lam) in candidates {
        let diagram = weight_multiplicities_for(&prs, &lam)?;
        if diagram.support_len() != support.len() {
            continue;
        }
        // Integer coordinates (n_1, n_2) of each pattern point.
        let points: Vec<([i64; 2], u64)> = diagram
            .iter()
            .map(|(w, m)| {
                let diff = lam.sub(w);
                let c = solve(
                    &(0..diff.dim())
                        .map(|k| {
                            simple
                                .iter()
                                .map(|s| Rational64::from_integer(s.coords()[k]))
                                .collect()
                        })
                        .collect::<Vec<_>>(),
                    diff.coords(),
                )
                .expect("weights differ from the highest by roots");
                ([c[0].to_integer(), c[1].to_integer()], m)
            })
            .collect();
        let found = if points.len() == 1 {
            let (w, m) = support[0];
            (m == points[0].1).then(|| {
                (
                    w.clone(),
                    vec![Weight::zero(w.dim()), Weight::zero(w.dim())],
                )
            })
        } else {
            identify(&points, &support, hw)
        };
        if let Some((origin, steps)) = found {
            let dimension = weyl_dimension(&prs, &lam)?;
            return Ok(Some(PatternMatch {
                family,
                coefficients: (a, b),
                highest_weight: lam,
                dimension,
                origin,
                steps,
            }));
        }
    }
    Ok(None)
}

/// Searches affine maps sending three affinely independent pattern points to
/// support points of `hw`.
fn identify(
    points: &[([i64; 2], u64)],
    support: &[(&Weight, u64)],
    hw: &WeightMultiset,
) -> Option<(Weight, Vec<Weight>)> {
    let p0 = points[0].0;
    let rel = |p: [i64; 2]| [p[0] - p0[0], p[1] - p0[1]];
    let det = |u: [i64; 2], v: [i64; 2]| u[0] * v[1] - u[1] * v[0];
    let (i1, i2) = (1..points.len())
        .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
        .find(|&(i, j)| det(rel(points[i].0), rel(points[j].0)) != 0)?;
    let u = rel(points[i1].0);
    let v = rel(points[i2].0);
    let d = Rational64::from_integer(det(u, v));
    for (h0, m0) in support {
        if *m0 != points[0].1 {
            continue;
        }
        for (h1, m1) in support {
            if *m1 != points[i1].1 || h1 == h0 {
                continue;
            }
            for (h2, m2) in support {
                if *m2 != points[i2].1 || h2 == h0 || h2 == h1 {
                    continue;
                }
                // Solve u0 s + u1 t = h1 - h0, v0 s + v1 t = h2 - h0.
                let x = h1.sub(h0);
                let y = h2.sub(h0);
                let r = |c: i64| Rational64::from_integer(c);
                let s = x.scale(r(v[1]) / d).sub(&y.scale(r(u[1]) / d));
                let t = y.scale(r(u[0]) / d).sub(&x.scale(r(v[0]) / d));
                if !independent(&s, &t) {
                    continue;
                }
                let origin = h0.sub(&s.scale(r(p0[0]))).sub(&t.scale(r(p0[1])));
                let image: WeightMultiset = points
                    .iter()
                    .map(|(p, m)| (origin.add(&s.scale(r(p[0]))).add(&t.scale(r(p[1]))), *m))
                    .collect();
                if &image == hw {
                    return Some((origin, vec![s, t]));
                }
            }
        }
    }
    None
}

fn independent(s: &Weight, t: &Weight) -> bool {
    let n = s.dim();
    (0..n)
        .any(|i| (i + 1..n).any(|j| s.coords()[i] * t.coords()[j] != s.coords()[j] * t.coords()[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn all_ones(ms: &WeightMultiset) -> bool {
        ms.iter().all(|(_, m)| m == 1)
    }

    #[test]
    fn b2_vector_module() {
        let ms = weight_multiplicities(Family::B, 2, &w(&[1, 0])).unwrap();
        assert_eq!(ms.total(), 5);
        assert!(all_ones(&ms));
        for p in [[1, 0], [-1, 0], [0, 1], [0, -1], [0, 0]] {
            assert_eq!(ms.get(&w(&p)), 1);
        }
    }

    #[test]
    fn g2_short_module() {
        let ms = weight_multiplicities(Family::G, 2, &w(&[1, 0, -1])).unwrap();
        assert_eq!(ms.total(), 7);
        assert_eq!(ms.get(&Weight::zero(3)), 1);
    }

    #[test]
    fn a2_adjoint() {
        let ms = weight_multiplicities(Family::A, 2, &w(&[1, 0, -1])).unwrap();
        assert_eq!(ms.total(), 8);
        assert_eq!(ms.support_len(), 7);
        assert_eq!(ms.get(&Weight::zero(3)), 2);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(weight_multiplicities(Family::B, 2, &w(&[0, 1])).is_err());
        let half = Weight::new(vec![Rational64::new(1, 3), Rational64::zero()]);
        assert!(weight_multiplicities(Family::B, 2, &half).is_err());
        // outside the span of the A_2 roots
        assert!(weight_multiplicities(Family::A, 2, &w(&[1, 0, 0])).is_err());
    }

    #[test]
    fn spin_module_has_half_integral_weights() {
        let prs = build_positive_roots(Family::B, 3).unwrap();
        let fw = fundamental_weights(&prs);
        let spin = fw
            .iter()
            .find(|f| f.coords().iter().any(|c| !c.is_integer()))
            .unwrap()
            .clone();
        let ms = weight_multiplicities_for(&prs, &spin).unwrap();
        assert_eq!(ms.total(), 8);
        assert!(all_ones(&ms));
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for (f, r) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::G, 2),
            (Family::F, 4),
        ] {
            let prs = build_positive_roots(f, r).unwrap();
            for (i, fw) in fundamental_weights(&prs).iter().enumerate() {
                let labels = dynkin_labels(&prs, fw).unwrap();
                for (j, l) in labels.iter().enumerate() {
                    assert_eq!(*l, (i == j) as i64);
                }
            }
        }
    }

    #[test]
    fn multiplicities_are_weyl_invariant() {
        let prs = build_positive_roots(Family::G, 2).unwrap();
        let simple = simple_vectors(&prs);
        let lam = weight_from_fundamental(&prs, &[1, 1]).unwrap();
        let ms = weight_multiplicities_for(&prs, &lam).unwrap();
        assert_eq!(ms.total(), 64);
        for (mu, m) in ms.iter() {
            for a in &simple {
                assert_eq!(ms.get(&mu.reflect(a)), m);
            }
        }
    }

    #[test]
    fn b2_restricted_to_short_a1() {
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        let ms = weight_multiplicities_for(&b2, &w(&[1, 0])).unwrap();
        let sub = b2
            .mask_of(&[RootVector::new(vec![1, -1]).unwrap()])
            .unwrap();
        let hw = subalgebra_highest_weights(&b2, &ms, sub).unwrap();
        let expected: WeightMultiset = [(w(&[1, 0]), 1), (w(&[0, 0]), 1), (w(&[0, -1]), 1)]
            .into_iter()
            .collect();
        assert_eq!(hw, expected);
        let m = match_pattern(&hw, Family::A).unwrap().unwrap();
        assert_eq!(m.dimension, 3);
    }

    #[test]
    fn self_restriction_is_trivial() {
        let g2 = build_positive_roots(Family::G, 2).unwrap();
        let lam = weight_from_fundamental(&g2, &[1, 1]).unwrap();
        let ms = weight_multiplicities_for(&g2, &lam).unwrap();
        let hw = subalgebra_highest_weights(&g2, &ms, g2.full_mask()).unwrap();
        assert_eq!(hw, [(lam, 1)].into_iter().collect());
    }

    #[test]
    fn g2_seven_restricted_to_long_a2() {
        let g2 = build_positive_roots(Family::G, 2).unwrap();
        let ms = weight_multiplicities_for(&g2, &w(&[1, 0, -1])).unwrap();
        let hw = subalgebra_highest_weights(&g2, &ms, g2.long_roots()).unwrap();
        assert_eq!(hw.total(), 3);
        assert_eq!(hw.support_len(), 3);
        assert!(match_pattern(&hw, Family::A).unwrap().is_some());
    }

    #[test]
    fn open_subsets_are_rejected() {
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        let ms = weight_multiplicities_for(&b2, &w(&[1, 0])).unwrap();
        // {e1, e2} misses e1+e2 and e1-e2
        let sub = b2
            .mask_of(&[
                RootVector::new(vec![1, 0]).unwrap(),
                RootVector::new(vec![0, 1]).unwrap(),
            ])
            .unwrap();
        assert!(subalgebra_highest_weights(&b2, &ms, sub).is_err());
    }

    #[test]
    fn pattern_edge_cases() {
        let single: WeightMultiset = [(w(&[3, 1]), 1)].into_iter().collect();
        let m = match_pattern(&single, Family::A).unwrap().unwrap();
        assert_eq!(m.coefficients, (0, 0));
        let pair: WeightMultiset = [(w(&[0, 0]), 1), (w(&[1, 1]), 1)].into_iter().collect();
        assert!(match_pattern(&pair, Family::A).unwrap().is_none());
        assert!(match_pattern(&WeightMultiset::new(), Family::A)
            .unwrap()
            .is_none());
    }

    #[test]
    fn pattern_recovers_its_own_diagram() {
        let a2 = build_positive_roots(Family::A, 2).unwrap();
        let lam = weight_from_fundamental(&a2, &[2, 1]).unwrap();
        let ms = weight_multiplicities_for(&a2, &lam).unwrap();
        let m = match_pattern(&ms, Family::A).unwrap().unwrap();
        assert_eq!(m.dimension, ms.total());
    }
}
