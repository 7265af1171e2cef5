//! Splints: partitions of a positive system into two embedded stems.
//!
//! A bipartition `(P1, P2)` of a simple positive system is a splint when each
//! part is the onto image of some stem whose rank does not exceed the rank of
//! the target. Partitions are unordered; the part holding root index 0 is
//! stored first.
//!
//! Exhaustive enumeration walks all `2^(n-1)` bipartitions with compact `u32`
//! masks and filters them in stages: non-sum counts, triple counts against the
//! cheapest candidate stem, and finally the embedding search.

mod table;

pub use table::{
    expected_class_count, expected_rows, verify_table, ExpectedRow, RowType, TableReport,
    TargetReport, WitnessCheck, DESK_TARGETS, TABLE_VERSION,
};

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::catalog::{stem_candidates, StemType};
use crate::embed::{has_realization, realizations_with, MetricClass, Realization, StemLibrary};
use crate::error::{domain, Error, Result};
use crate::rootsys::{Family, PositiveRootSet, RootMask, SystemLabel};
use crate::weyl::{splint_classes, WeylClass, WeylGroup};

/// Largest positive system `enumerate_splints` accepts.
pub const MAX_SPLINT_ROOTS: usize = 26;

/// An unordered bipartition of the target's roots into two nonempty parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplintPartition {
    part1: RootMask,
    part2: RootMask,
}

impl SplintPartition {
    /// Builds the partition `{part, complement}` of `0..n`.
    pub fn from_part(part: RootMask, n: usize) -> Result<Self> {
        let full = RootMask::full(n);
        if !part.is_subset(full) {
            return domain("partition part has indices outside the target");
        }
        Self::new(part, part.complement(n), n)
    }

    pub fn new(a: RootMask, b: RootMask, n: usize) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return domain("both parts of a splint must be nonempty");
        }
        if !a.intersection(b).is_empty() || a.union(b) != RootMask::full(n) {
            return domain("parts must be disjoint and cover every root");
        }
        let (part1, part2) = if a.contains(0) { (a, b) } else { (b, a) };
        Ok(SplintPartition { part1, part2 })
    }

    pub fn part1(&self) -> RootMask {
        self.part1
    }

    pub fn part2(&self) -> RootMask {
        self.part2
    }
}

/// Summary of one part: preferred stem and the metric class of its best realization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartSummary {
    pub stem: StemType,
    pub class: MetricClass,
}

impl fmt::Display for PartSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.stem, self.class)
    }
}

/// Unordered pair of part summaries; stored with the smaller summary first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Descriptor {
    pub first: PartSummary,
    pub second: PartSummary,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// A validated splint with every stem realization of both parts.
#[derive(Clone, Debug)]
pub struct SplintRecord {
    pub partition: SplintPartition,
    pub realizations1: Vec<Realization>,
    pub realizations2: Vec<Realization>,
    pub descriptor: Descriptor,
    pub weyl_class: Option<usize>,
}

// fewer components, then better metric class, then name
fn preference(a: &Realization, b: &Realization) -> Ordering {
    a.stem
        .components()
        .len()
        .cmp(&b.stem.components().len())
        .then(a.best_class().cmp(&b.best_class()))
        .then_with(|| a.stem.to_string().cmp(&b.stem.to_string()))
}

/// The preferred realization of a part.
pub fn preferred(realizations: &[Realization]) -> Option<&Realization> {
    realizations.iter().min_by(|a, b| preference(a, b))
}

fn summary(realizations: &[Realization]) -> PartSummary {
    let r = preferred(realizations).expect("splint parts have a realization");
    PartSummary {
        stem: r.stem.clone(),
        class: r.best_class(),
    }
}

fn summary_key(s: &PartSummary) -> (String, MetricClass) {
    (s.stem.to_string(), s.class)
}

/// Descriptor of a record from its realizations.
pub fn descriptor(realizations1: &[Realization], realizations2: &[Realization]) -> Descriptor {
    let a = summary(realizations1);
    let b = summary(realizations2);
    if summary_key(&a) <= summary_key(&b) {
        Descriptor {
            first: a,
            second: b,
        }
    } else {
        Descriptor {
            first: b,
            second: a,
        }
    }
}

/// Checks whether a partition is a splint, returning all realizations of both parts.
pub fn is_splint(
    target: &PositiveRootSet,
    partition: &SplintPartition,
    max_rank: usize,
) -> Option<(Vec<Realization>, Vec<Realization>)> {
    is_splint_with(&StemLibrary::new(), target, partition, max_rank)
}

pub fn is_splint_with(
    lib: &StemLibrary,
    target: &PositiveRootSet,
    partition: &SplintPartition,
    max_rank: usize,
) -> Option<(Vec<Realization>, Vec<Realization>)> {
    let r1 = realizations_with(lib, partition.part1, target, max_rank);
    if r1.is_empty() {
        return None;
    }
    let r2 = realizations_with(lib, partition.part2, target, max_rank);
    if r2.is_empty() {
        return None;
    }
    Some((r1, r2))
}

/// Builds the full record for a partition known (or suspected) to be a splint.
pub fn record_for(
    lib: &StemLibrary,
    target: &PositiveRootSet,
    partition: SplintPartition,
) -> Option<SplintRecord> {
    let (r1, r2) = is_splint_with(lib, target, &partition, target.rank())?;
    let descriptor = descriptor(&r1, &r2);
    Some(SplintRecord {
        partition,
        realizations1: r1,
        realizations2: r2,
        descriptor,
        weyl_class: None,
    })
}

struct Prefilter {
    rank: usize,
    /// For each root `k`, masks of the pairs summing to it.
    pair_masks: Vec<Vec<u32>>,
    triples: Vec<u32>,
    /// Fewest abstract triples among candidate stems of each size; `None` if no candidate.
    min_triples: Vec<Option<usize>>,
}

impl Prefilter {
    fn new(target: &PositiveRootSet, lib: &StemLibrary) -> Self {
        let n = target.len();
        let rank = target.rank();
        let pair_masks = (0..n)
            .map(|k| {
                target
                    .sum_pairs(k)
                    .iter()
                    .map(|&(i, j)| 1u32 << i | 1u32 << j)
                    .collect()
            })
            .collect();
        let triples = target
            .triples()
            .triples()
            .iter()
            .map(|&(i, j, k)| 1u32 << i | 1u32 << j | 1u32 << k)
            .collect();
        let min_triples = (0..=n)
            .map(|s| {
                if s == 0 {
                    return None;
                }
                lib.candidates(s, rank)
                    .iter()
                    .map(|sys| sys.roots().triples().len())
                    .min()
            })
            .collect();
        Prefilter {
            rank,
            pair_masks,
            triples,
            min_triples,
        }
    }

    #[inline]
    fn non_sums_within_rank(&self, mask: u32) -> bool {
        let mut count = 0;
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !self.pair_masks[k].iter().any(|&p| p & !mask == 0) {
                count += 1;
                if count > self.rank {
                    return false;
                }
            }
        }
        true
    }

    #[inline]
    fn enough_triples(&self, mask: u32) -> bool {
        let Some(need) = self.min_triples[mask.count_ones() as usize] else {
            return false;
        };
        need == 0 || self.triples.iter().filter(|&&t| mask & t == t).count() >= need
    }

    fn passes(&self, mask: u32) -> bool {
        self.non_sums_within_rank(mask) && self.enough_triples(mask)
    }
}

/// Every splint of a simple target, in ascending order of `part1`.
///
/// `jobs` sets the worker count (all available cores when `None`); the output
/// does not depend on it.
pub fn enumerate_splints(
    target: &PositiveRootSet,
    jobs: Option<usize>,
) -> Result<Vec<SplintRecord>> {
    let lib = StemLibrary::new();
    enumerate_splints_with(&lib, target, jobs)
}

pub fn enumerate_splints_with(
    lib: &StemLibrary,
    target: &PositiveRootSet,
    jobs: Option<usize>,
) -> Result<Vec<SplintRecord>> {
    let n = target.len();
    if n > MAX_SPLINT_ROOTS {
        return Err(Error::Capacity {
            what: format!("positive system of {}", target.label()),
            size: n,
            bound: MAX_SPLINT_ROOTS,
        });
    }
    if !matches!(target.label(), SystemLabel::Simple(..)) {
        return domain("splint enumeration needs a simple target");
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let filter = Prefilter::new(target, lib);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let total: u64 = 1u64 << (n - 1);
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let rank = target.rank();

    let parts: Vec<u32> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .flat_map_iter(|c| {
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(total);
                let filter = &filter;
                (lo..hi).filter_map(move |m| {
                    let p1 = 1u32 | (m as u32) << 1;
                    let p2 = full ^ p1;
                    if p2 == 0 || !filter.passes(p1) || !filter.passes(p2) {
                        return None;
                    }
                    let (small, large) = if p1.count_ones() <= p2.count_ones() {
                        (p1, p2)
                    } else {
                        (p2, p1)
                    };
                    let ok = has_realization(lib, RootMask(small as u128), target, rank)
                        && has_realization(lib, RootMask(large as u128), target, rank);
                    ok.then_some(p1)
                })
            })
            .collect()
    });

    let records: Vec<SplintRecord> = pool.install(|| {
        parts
            .par_iter()
            .map(|&p| {
                let partition =
                    SplintPartition::from_part(RootMask(p as u128), n).expect("valid partition");
                record_for(lib, target, partition).expect("prefiltered partitions are splints")
            })
            .collect()
    });
    Ok(records)
}

/// Assigns Weyl class ids to records and returns the classes.
pub fn classify_records(records: &mut [SplintRecord], group: &WeylGroup) -> Vec<WeylClass> {
    let parts: Vec<RootMask> = records.iter().map(|r| r.partition.part1).collect();
    let classes = splint_classes(&parts, group);
    for c in &classes {
        for &m in &c.members {
            records[m].weyl_class = Some(c.id);
        }
    }
    classes
}

/// Table-style label of a part: `D_r` for the long roots of `B_r` or the short
/// roots of `C_r`, and `D2` for pairs of orthogonal equal-length `A1` images in
/// simply-laced targets.
pub fn display_label(
    target: &PositiveRootSet,
    part: RootMask,
    realizations: &[Realization],
) -> String {
    let Some(best) = preferred(realizations) else {
        return String::from("?");
    };
    if let SystemLabel::Simple(fam, r) = *target.label() {
        let d_part = match fam {
            Family::B => Some(target.long_roots()),
            Family::C => Some(target.short_roots()),
            _ => None,
        };
        if d_part == Some(part) && r >= 2 && best.metric_realizable {
            return format!("D{r}");
        }
        if matches!(fam, Family::A | Family::D | Family::E) {
            return pair_orthogonal_a1(target, best);
        }
    }
    best.stem.to_string()
}

fn pair_orthogonal_a1(target: &PositiveRootSet, r: &Realization) -> String {
    use crate::catalog::SimpleType;
    let a1 = SimpleType {
        family: Family::A,
        rank: 1,
    };
    let comps = r.stem.components();
    let sys = crate::embed::StemSystem::new(&r.stem).expect("stem constructible");
    let a1_images: Vec<usize> = comps
        .iter()
        .enumerate()
        .filter(|(_, t)| **t == a1)
        .map(|(c, _)| {
            let abs = sys.component_of().iter().position(|&x| x == c).unwrap();
            r.witness.assignment[abs]
        })
        .collect();
    if a1_images.len() < 2 {
        return r.stem.to_string();
    }
    let mut used = vec![false; a1_images.len()];
    let mut pairs = 0;
    for i in 0..a1_images.len() {
        if used[i] {
            continue;
        }
        for j in i + 1..a1_images.len() {
            if !used[j] && target.root(a1_images[i]).dot(target.root(a1_images[j])) == 0 {
                used[i] = true;
                used[j] = true;
                pairs += 1;
                break;
            }
        }
    }
    let singles = a1_images.len() - 2 * pairs;
    let mut terms = Vec::new();
    if singles > 0 {
        terms.push(if singles == 1 {
            "A1".to_string()
        } else {
            format!("{singles}A1")
        });
    }
    let rest: Vec<String> = comps
        .iter()
        .filter(|t| **t != a1)
        .map(|t| t.to_string())
        .collect();
    if !rest.is_empty() {
        let rest_stem: StemType = rest.join("+").parse().expect("valid stem");
        terms.push(rest_stem.to_string());
    }
    if pairs > 0 {
        terms.push(if pairs == 1 {
            "D2".to_string()
        } else {
            format!("{pairs}D2")
        });
    }
    terms.join("+")
}

/// Candidate stems that could fill a part of the given size within the rank bound.
pub fn part_candidates(size: usize, max_rank: usize) -> Vec<StemType> {
    stem_candidates(size, max_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_positive_roots, RootVector};

    fn v(c: &[i64]) -> RootVector {
        RootVector::new(c.to_vec()).unwrap()
    }

    fn partition(target: &PositiveRootSet, part: &[&[i64]]) -> SplintPartition {
        let m = target
            .mask_of(&part.iter().map(|c| v(c)).collect::<Vec<_>>())
            .unwrap();
        SplintPartition::from_part(m, target.len()).unwrap()
    }

    #[test]
    fn partition_is_unordered() {
        let a = RootMask::from_indices([1, 2]);
        let b = RootMask::from_indices([0, 3]);
        assert_eq!(
            SplintPartition::new(a, b, 4).unwrap(),
            SplintPartition::new(b, a, 4).unwrap()
        );
        assert!(SplintPartition::new(a, RootMask::from_indices([0]), 4).is_err());
        assert!(SplintPartition::from_part(RootMask::full(4), 4).is_err());
    }

    #[test]
    fn g2_two_a1_plus_b2() {
        let g2 = build_positive_roots(Family::G, 2).unwrap();
        let p = partition(&g2, &[&[1, -2, 1], &[1, 1, -2]]);
        let (r1, r2) = is_splint(&g2, &p, 2).unwrap();
        let (long, four) = if p.part1().len() == 2 {
            (r1, r2)
        } else {
            (r2, r1)
        };
        assert_eq!(long[0].stem.to_string(), "2A1");
        assert!(four.iter().any(|r| r.stem.to_string() == "B2"));
    }

    #[test]
    fn b2_singleton_e1_is_not_a_splint() {
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        assert!(is_splint(&b2, &partition(&b2, &[&[1, 0]]), 2).is_none());
    }

    #[test]
    fn a3_three_a1_pair() {
        let a3 = build_positive_roots(Family::A, 3).unwrap();
        let p = partition(&a3, &[&[1, -1, 0, 0], &[0, 1, -1, 0], &[1, 0, 0, -1]]);
        let (r1, r2) = is_splint(&a3, &p, 3).unwrap();
        let d = descriptor(&r1, &r2);
        assert_eq!(d.first.stem.to_string(), "3A1");
        assert_eq!(d.second.stem.to_string(), "3A1");
        assert_eq!(display_label(&a3, p.part1(), &r1), "A1+D2");
    }

    #[test]
    fn small_enumerations() {
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        assert_eq!(enumerate_splints(&b2, Some(1)).unwrap().len(), 5);
        let d5 = build_positive_roots(Family::D, 5).unwrap();
        assert!(enumerate_splints(&d5, None).unwrap().is_empty());
        let e6 = build_positive_roots(Family::E, 6).unwrap();
        assert!(matches!(
            enumerate_splints(&e6, None),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn descriptor_examples() {
        let b3 = build_positive_roots(Family::B, 3).unwrap();
        let p = partition(&b3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let (r1, r2) = is_splint(&b3, &p, 3).unwrap();
        let d = descriptor(&r1, &r2);
        assert_eq!(d.first.stem.to_string(), "3A1");
        assert_eq!(d.first.class, MetricClass::Semimetric);
        assert_eq!(d.second.stem.to_string(), "A3");
        assert_eq!(d.second.class, MetricClass::Nonmetric);

        let c3 = build_positive_roots(Family::C, 3).unwrap();
        let p = partition(
            &c3,
            &[&[0, 1, -1], &[2, 0, 0], &[0, 2, 0], &[1, -1, 0], &[1, 1, 0]],
        );
        let (r1, r2) = is_splint(&c3, &p, 3).unwrap();
        let d = descriptor(&r1, &r2);
        let names = [d.first.stem.to_string(), d.second.stem.to_string()];
        assert!(names.contains(&"A1+B2".to_string()));
        assert!(names.contains(&"A1+A2".to_string()));
    }
}
