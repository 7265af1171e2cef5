//! Sum-preserving embeddings of abstract stems into realized positive systems.
//!
//! An embedding is an injective map `ι` from the stem's positive roots into the
//! target such that `ι(a+b) = ι(a) + ι(b)` whenever `a+b` is a root of the stem.
//! The condition is one-directional: the image may carry additive relations
//! that the stem does not have.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::catalog::{stem_candidates, SimpleType, StemType};
use crate::error::Result;
use crate::rootsys::{build_positive_roots, PositiveRootSet, RootMask};

/// Metric behaviour of an embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricClass {
    Metric,
    Semimetric,
    Nonmetric,
}

impl fmt::Display for MetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricClass::Metric => "metric",
            MetricClass::Semimetric => "semimetric",
            MetricClass::Nonmetric => "nonmetric",
        })
    }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    /// A simple root; `floor` is the position whose image must be exceeded
    /// (first simple root of an identical previous component).
    Free { floor: Option<usize> },
    /// Value forced by `img[a] + img[b]`.
    Forced { a: usize, b: usize },
}

#[derive(Clone, Debug)]
struct SearchPlan {
    /// Abstract root index placed at each position.
    order: Vec<usize>,
    steps: Vec<Step>,
    /// Sum conditions `(x, y, z)` on positions, checked once position `p` is placed.
    checks: Vec<Vec<(usize, usize, usize)>>,
}

/// The canonical positive system of an abstract stem, prepared for embedding search.
#[derive(Clone, Debug)]
pub struct StemSystem {
    stem: StemType,
    roots: PositiveRootSet,
    component_of: Vec<usize>,
    component_roots: Vec<Vec<usize>>,
    gram: Vec<Vec<i64>>,
    plan: SearchPlan,
}

impl StemSystem {
    pub fn new(stem: &StemType) -> Result<Self> {
        let parts: Vec<PositiveRootSet> = stem
            .components()
            .iter()
            .map(|t| build_positive_roots(t.family, t.rank))
            .collect::<Result<_>>()?;
        let roots = if parts.len() == 1 {
            parts[0].clone()
        } else {
            PositiveRootSet::direct_sum(&parts.iter().collect::<Vec<_>>())?
        };
        // component of a root = coordinate block holding its first nonzero entry
        let mut block_of_coord = Vec::new();
        for (c, p) in parts.iter().enumerate() {
            block_of_coord.extend(std::iter::repeat_n(c, p.ambient_dim()));
        }
        let component_of: Vec<usize> = roots
            .roots()
            .iter()
            .map(|r| {
                let first = r.coords().iter().position(|&x| x != 0).unwrap();
                block_of_coord[first]
            })
            .collect();
        let mut component_roots = vec![Vec::new(); parts.len()];
        for (i, &c) in component_of.iter().enumerate() {
            component_roots[c].push(i);
        }
        let gram = (0..roots.len())
            .map(|i| {
                (0..roots.len())
                    .map(|j| roots.root(i).dot(roots.root(j)))
                    .collect()
            })
            .collect();
        let plan = build_plan(&roots, stem.components(), &component_of);
        Ok(StemSystem {
            stem: stem.clone(),
            roots,
            component_of,
            component_roots,
            gram,
            plan,
        })
    }

    pub fn stem(&self) -> &StemType {
        &self.stem
    }

    /// The stem's canonical positive system (simple summands concatenated).
    pub fn roots(&self) -> &PositiveRootSet {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Component index of each abstract root.
    pub fn component_of(&self) -> &[usize] {
        &self.component_of
    }

    /// Metric class of an assignment (abstract root index -> target index).
    pub fn classify(&self, target: &PositiveRootSet, assignment: &[usize]) -> MetricClass {
        let all: Vec<usize> = (0..self.len()).collect();
        if self.proportional_on(target, assignment, &all) {
            return MetricClass::Metric;
        }
        let componentwise = self
            .component_roots
            .iter()
            .all(|c| self.proportional_on(target, assignment, c));
        if componentwise {
            MetricClass::Semimetric
        } else {
            MetricClass::Nonmetric
        }
    }

    // Is there a single lambda > 0 with <a,b>_0 = lambda <ι a, ι b> on `which`?
    fn proportional_on(
        &self,
        target: &PositiveRootSet,
        assignment: &[usize],
        which: &[usize],
    ) -> bool {
        let Some(&p) = which.first() else {
            return true;
        };
        let a0 = self.gram[p][p];
        let b0 = target.root(assignment[p]).norm2();
        which.iter().all(|&i| {
            which.iter().all(|&j| {
                let b = target.root(assignment[i]).dot(target.root(assignment[j]));
                self.gram[i][j] * b0 == a0 * b
            })
        })
    }

    /// Runs the backtracking search, calling `visit` on every assignment found.
    ///
    /// With `onto`, `allowed` must have exactly as many elements as the stem.
    /// With `break_symmetry`, only one representative per permutation of identical
    /// components is produced.
    pub(crate) fn search<F>(
        &self,
        target: &PositiveRootSet,
        allowed: RootMask,
        break_symmetry: bool,
        mut visit: F,
    ) where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if allowed.len() < self.len() {
            return;
        }
        let mut s = Searcher {
            plan: &self.plan,
            target,
            allowed,
            break_symmetry,
            img: vec![0; self.len()],
            used: RootMask::EMPTY,
            assignment: vec![0; self.len()],
        };
        let _ = s.descend(0, &mut visit);
    }
}

fn build_plan(roots: &PositiveRootSet, types: &[SimpleType], component_of: &[usize]) -> SearchPlan {
    let n = roots.len();
    let simple = roots.simple_roots();
    let mut order = Vec::with_capacity(n);
    let mut steps = Vec::with_capacity(n);
    let mut pos_of = vec![usize::MAX; n];
    let mut first_simple_pos: Vec<usize> = Vec::new();

    for comp in 0..types.len() {
        // simple roots of this component, breadth-first along the Dynkin diagram
        let comp_simple: Vec<usize> = simple.iter().filter(|&i| component_of[i] == comp).collect();
        let mut seq = vec![comp_simple[0]];
        while seq.len() < comp_simple.len() {
            let next = comp_simple
                .iter()
                .copied()
                .filter(|s| !seq.contains(s))
                .find(|&s| seq.iter().any(|&t| roots.sum_index(s, t).is_some()))
                .unwrap_or_else(|| *comp_simple.iter().find(|s| !seq.contains(s)).unwrap());
            seq.push(next);
        }
        for (k, &s) in seq.iter().enumerate() {
            let floor = if k == 0 && comp > 0 && types[comp] == types[comp - 1] {
                Some(first_simple_pos[comp - 1])
            } else {
                None
            };
            if k == 0 {
                first_simple_pos.push(order.len());
            }
            pos_of[s] = order.len();
            order.push(s);
            steps.push(Step::Free { floor });
            // close under sums of placed roots
            loop {
                let mut added = false;
                for &(a, b, c) in roots.triples().triples() {
                    if pos_of[c] == usize::MAX && pos_of[a] != usize::MAX && pos_of[b] != usize::MAX
                    {
                        pos_of[c] = order.len();
                        order.push(c);
                        steps.push(Step::Forced {
                            a: pos_of[a],
                            b: pos_of[b],
                        });
                        added = true;
                    }
                }
                if !added {
                    break;
                }
            }
        }
    }
    debug_assert_eq!(order.len(), n);

    let mut checks = vec![Vec::new(); n];
    for &(a, b, c) in roots.triples().triples() {
        let (pa, pb, pc) = (pos_of[a], pos_of[b], pos_of[c]);
        if let Step::Forced { a: fa, b: fb } = steps[pc] {
            if (fa == pa && fb == pb) || (fa == pb && fb == pa) {
                continue;
            }
        }
        checks[pa.max(pb).max(pc)].push((pa, pb, pc));
    }
    SearchPlan {
        order,
        steps,
        checks,
    }
}

struct Searcher<'a> {
    plan: &'a SearchPlan,
    target: &'a PositiveRootSet,
    allowed: RootMask,
    break_symmetry: bool,
    img: Vec<usize>,
    used: RootMask,
    assignment: Vec<usize>,
}

impl Searcher<'_> {
    fn descend<F>(&mut self, pos: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if pos == self.plan.order.len() {
            for (p, &abs) in self.plan.order.iter().enumerate() {
                self.assignment[abs] = self.img[p];
            }
            return visit(&self.assignment);
        }
        match self.plan.steps[pos] {
            Step::Forced { a, b } => {
                if let Some(k) = self.target.sum_index(self.img[a], self.img[b]) {
                    self.try_place(pos, k, visit)?;
                }
            }
            Step::Free { floor } => {
                let mut candidates = RootMask(self.allowed.0 & !self.used.0);
                if let (true, Some(f)) = (self.break_symmetry, floor) {
                    let lowest = self.img[f] + 1;
                    candidates = RootMask(candidates.0 & !((1u128 << lowest) - 1));
                }
                for k in candidates.iter() {
                    self.try_place(pos, k, visit)?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    #[inline]
    fn try_place<F>(&mut self, pos: usize, k: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if !self.allowed.contains(k) || self.used.contains(k) {
            return ControlFlow::Continue(());
        }
        self.img[pos] = k;
        let ok = self.plan.checks[pos]
            .iter()
            .all(|&(x, y, z)| self.target.sum_index(self.img[x], self.img[y]) == Some(self.img[z]));
        if !ok {
            return ControlFlow::Continue(());
        }
        self.used = self.used.with(k);
        let r = self.descend(pos + 1, visit);
        self.used = self.used.without(k);
        r
    }
}

/// A sum-preserving injection of a stem into a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingAssignment {
    pub stem: StemType,
    pub image: RootMask,
    /// Target index of each abstract root, in the stem's canonical root order.
    pub assignment: Vec<usize>,
    pub metric_class: MetricClass,
}

/// Options for [`find_embeddings`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EmbedQuery {
    /// Only target indices in this set may be used (whole target when `None`).
    pub restrict_to: Option<RootMask>,
    /// Require the image to be exactly `restrict_to`.
    pub onto: bool,
    pub limit: Option<usize>,
}

/// Lists embeddings of `stem` into `target`, in deterministic backtracking order.
///
/// All functions are returned, including those that differ only by permuting
/// identical components. With `onto` and no `restrict_to`, the image must be the
/// whole target.
pub fn find_embeddings(
    stem: &StemType,
    target: &PositiveRootSet,
    query: EmbedQuery,
) -> Result<Vec<EmbeddingAssignment>> {
    let sys = StemSystem::new(stem)?;
    Ok(find_embeddings_with(&sys, target, query))
}

pub fn find_embeddings_with(
    sys: &StemSystem,
    target: &PositiveRootSet,
    query: EmbedQuery,
) -> Vec<EmbeddingAssignment> {
    let allowed = query.restrict_to.unwrap_or(target.full_mask());
    let mut out = Vec::new();
    if query.onto && allowed.len() != sys.len() {
        return out;
    }
    if query.limit == Some(0) {
        return out;
    }
    sys.search(target, allowed, false, |a| {
        out.push(EmbeddingAssignment {
            stem: sys.stem.clone(),
            image: RootMask::from_indices(a.iter().copied()),
            assignment: a.to_vec(),
            metric_class: sys.classify(target, a),
        });
        if query.limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// True iff `stem` embeds into `target` (optionally inside `restrict_to`).
pub fn embeds(sys: &StemSystem, target: &PositiveRootSet, restrict_to: Option<RootMask>) -> bool {
    let mut found = false;
    sys.search(
        target,
        restrict_to.unwrap_or(target.full_mask()),
        true,
        |_| {
            found = true;
            ControlFlow::Break(())
        },
    );
    found
}

/// Metric class of an assignment produced for `target`.
pub fn classify_metric(
    sys: &StemSystem,
    target: &PositiveRootSet,
    a: &EmbeddingAssignment,
) -> MetricClass {
    sys.classify(target, &a.assignment)
}

/// One stem realizing a subset as an onto image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub stem: StemType,
    /// Some onto embedding of this stem is metric.
    pub metric_realizable: bool,
    /// Some onto embedding of this stem is metric on every simple component.
    pub componentwise_metric: bool,
    /// Best witness found (metric if possible, then componentwise metric).
    pub witness: EmbeddingAssignment,
}

impl Realization {
    pub fn best_class(&self) -> MetricClass {
        if self.metric_realizable {
            MetricClass::Metric
        } else if self.componentwise_metric {
            MetricClass::Semimetric
        } else {
            MetricClass::Nonmetric
        }
    }
}

/// Shared cache of prepared stem systems and candidate lists.
type CandidateCache = HashMap<(usize, usize), Arc<Vec<Arc<StemSystem>>>>;

#[derive(Default)]
pub struct StemLibrary {
    systems: RwLock<HashMap<StemType, Arc<StemSystem>>>,
    candidates: RwLock<CandidateCache>,
}

impl StemLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn system(&self, stem: &StemType) -> Result<Arc<StemSystem>> {
        if let Some(s) = self.systems.read().unwrap().get(stem) {
            return Ok(s.clone());
        }
        let sys = Arc::new(StemSystem::new(stem)?);
        self.systems
            .write()
            .unwrap()
            .entry(stem.clone())
            .or_insert(sys.clone());
        Ok(sys)
    }

    /// Prepared systems for `stem_candidates(size, max_rank)`.
    pub fn candidates(&self, size: usize, max_rank: usize) -> Arc<Vec<Arc<StemSystem>>> {
        if let Some(c) = self.candidates.read().unwrap().get(&(size, max_rank)) {
            return c.clone();
        }
        let list: Vec<Arc<StemSystem>> = stem_candidates(size, max_rank)
            .iter()
            .map(|s| self.system(s).expect("catalog stems are constructible"))
            .collect();
        let list = Arc::new(list);
        self.candidates
            .write()
            .unwrap()
            .entry((size, max_rank))
            .or_insert(list.clone());
        list
    }
}

// Necessary conditions for an onto embedding of `sys` onto `subset`.
fn feasible(sys: &StemSystem, subset_non_sums: usize, subset_triples: usize) -> bool {
    subset_non_sums <= sys.stem.rank() && sys.roots.triples().len() <= subset_triples
}

/// Does some candidate stem of rank at most `max_rank` map onto `subset`?
pub fn has_realization(
    lib: &StemLibrary,
    subset: RootMask,
    target: &PositiveRootSet,
    max_rank: usize,
) -> bool {
    let non_sums = target.non_sums_within(subset).len();
    if non_sums > max_rank {
        return false;
    }
    let triples = target.triples().count_within(subset);
    lib.candidates(subset.len(), max_rank)
        .iter()
        .filter(|sys| feasible(sys, non_sums, triples))
        .any(|sys| embeds(sys, target, Some(subset)))
}

/// Every candidate stem that maps onto `subset`, each with metric flags and a witness.
pub fn realizations(
    subset: RootMask,
    target: &PositiveRootSet,
    max_rank: usize,
) -> Vec<Realization> {
    realizations_with(&StemLibrary::new(), subset, target, max_rank)
}

pub fn realizations_with(
    lib: &StemLibrary,
    subset: RootMask,
    target: &PositiveRootSet,
    max_rank: usize,
) -> Vec<Realization> {
    if subset.is_empty() {
        return Vec::new();
    }
    let non_sums = target.non_sums_within(subset).len();
    if non_sums > max_rank {
        return Vec::new();
    }
    let triples = target.triples().count_within(subset);
    let mut out = Vec::new();
    for sys in lib.candidates(subset.len(), max_rank).iter() {
        if !feasible(sys, non_sums, triples) {
            continue;
        }
        let mut best: Option<(MetricClass, Vec<usize>)> = None;
        sys.search(target, subset, true, |a| {
            let class = sys.classify(target, a);
            if best.as_ref().is_none_or(|(c, _)| class < *c) {
                best = Some((class, a.to_vec()));
            }
            if class == MetricClass::Metric {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some((class, assignment)) = best {
            out.push(Realization {
                stem: sys.stem.clone(),
                metric_realizable: class == MetricClass::Metric,
                componentwise_metric: class != MetricClass::Nonmetric,
                witness: EmbeddingAssignment {
                    stem: sys.stem.clone(),
                    image: subset,
                    assignment,
                    metric_class: class,
                },
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, RootVector};

    fn v(c: &[i64]) -> RootVector {
        RootVector::new(c.to_vec()).unwrap()
    }
    fn st(s: &str) -> StemType {
        s.parse().unwrap()
    }

    #[test]
    fn a2_onto_itself_twice() {
        let a2 = build_positive_roots(Family::A, 2).unwrap();
        let q = EmbedQuery {
            restrict_to: Some(a2.full_mask()),
            onto: true,
            limit: None,
        };
        let found = find_embeddings(&st("A2"), &a2, q).unwrap();
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn c3_not_into_b4() {
        let b4 = build_positive_roots(Family::B, 4).unwrap();
        assert!(find_embeddings(&st("C3"), &b4, EmbedQuery::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn two_a1_onto_pair_is_vacuous() {
        let a2 = build_positive_roots(Family::A, 2).unwrap();
        let m = a2.mask_of(&[v(&[1, -1, 0]), v(&[0, 1, -1])]).unwrap();
        let q = EmbedQuery {
            restrict_to: Some(m),
            onto: true,
            limit: None,
        };
        assert_eq!(find_embeddings(&st("2A1"), &a2, q).unwrap().len(), 2);
    }

    #[test]
    fn b2_into_g2_hits_listed_image() {
        let g2 = build_positive_roots(Family::G, 2).unwrap();
        let found = find_embeddings(&st("B2"), &g2, EmbedQuery::default()).unwrap();
        assert!(!found.is_empty());
        let want = g2
            .mask_of(&[
                v(&[1, -1, 0]),
                v(&[0, 1, -1]),
                v(&[1, 0, -1]),
                v(&[2, -1, -1]),
            ])
            .unwrap();
        assert!(found.iter().any(|e| e.image == want));
    }

    #[test]
    fn metric_examples() {
        let f4 = build_positive_roots(Family::F, 4).unwrap();
        let d4 = StemSystem::new(&st("D4")).unwrap();
        let q = EmbedQuery {
            restrict_to: Some(f4.long_roots()),
            onto: true,
            limit: None,
        };
        let e = find_embeddings_with(&d4, &f4, q);
        assert!(!e.is_empty());
        assert!(e.iter().all(|x| x.metric_class == MetricClass::Metric));

        let g2 = build_positive_roots(Family::G, 2).unwrap();
        let short = g2
            .mask_of(&[v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[1, 0, -1])])
            .unwrap();
        let a2 = StemSystem::new(&st("A2")).unwrap();
        let e = find_embeddings_with(
            &a2,
            &g2,
            EmbedQuery {
                restrict_to: Some(short),
                onto: true,
                limit: None,
            },
        );
        assert!(e
            .iter()
            .all(|x| classify_metric(&a2, &g2, x) == MetricClass::Metric));

        // each A1 is vacuously metric, so a non-metric 2A1 is semimetric
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        let m = b2.mask_of(&[v(&[1, 0]), v(&[1, -1])]).unwrap();
        let e = find_embeddings(
            &st("2A1"),
            &b2,
            EmbedQuery {
                restrict_to: Some(m),
                onto: true,
                limit: None,
            },
        )
        .unwrap();
        assert!(e.iter().all(|x| x.metric_class == MetricClass::Semimetric));

        let a4 = build_positive_roots(Family::A, 4).unwrap();
        let mut roots = vec![v(&[1, 0, 0, 0, -1])];
        for i in 0..4 {
            for j in i + 1..4 {
                let mut c = vec![0; 5];
                c[i] = 1;
                c[j] = -1;
                roots.push(v(&c));
            }
        }
        let m = a4.mask_of(&roots).unwrap();
        let e = find_embeddings(
            &st("A1+A3"),
            &a4,
            EmbedQuery {
                restrict_to: Some(m),
                onto: true,
                limit: None,
            },
        )
        .unwrap();
        assert!(!e.is_empty());
        assert!(e.iter().all(|x| x.metric_class == MetricClass::Semimetric));
    }

    #[test]
    fn realization_examples() {
        let a3 = build_positive_roots(Family::A, 3).unwrap();
        let m = a3
            .mask_of(&[v(&[1, -1, 0, 0]), v(&[0, 1, -1, 0]), v(&[1, 0, -1, 0])])
            .unwrap();
        let r = realizations(m, &a3, 3);
        let names: Vec<String> = r.iter().map(|x| x.stem.to_string()).collect();
        assert_eq!(names, vec!["3A1", "A2"]);
        assert!(r[1].metric_realizable);

        let b2 = build_positive_roots(Family::B, 2).unwrap();
        let m = b2.mask_of(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let r = realizations(m, &b2, 2);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].stem, st("2A1"));
        assert!(r[0].metric_realizable);

        let a2 = build_positive_roots(Family::A, 2).unwrap();
        let m = a2.mask_of(&[v(&[1, 0, -1]), v(&[0, 1, -1])]).unwrap();
        let r = realizations(m, &a2, 2);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].stem, st("2A1"));
        assert!(!r[0].metric_realizable);
    }

    #[test]
    fn symmetry_breaking_keeps_one_per_orbit() {
        let a3 = build_positive_roots(Family::A, 3).unwrap();
        let sys = StemSystem::new(&st("3A1")).unwrap();
        let m = RootMask::from_indices([0, 1, 2]);
        let mut n = 0;
        sys.search(&a3, m, true, |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(n, 1);
        assert_eq!(
            find_embeddings_with(
                &sys,
                &a3,
                EmbedQuery {
                    restrict_to: Some(m),
                    onto: true,
                    limit: None
                }
            )
            .len(),
            6
        );
    }
}
