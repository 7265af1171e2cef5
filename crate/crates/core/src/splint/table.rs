//! The reference table of splints of simple systems, with explicit witnesses.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::{
    classify_records, enumerate_splints_with, is_splint_with, SplintPartition, SplintRecord,
};
use crate::embed::StemLibrary;
use crate::error::Result;
use crate::rootsys::{build_positive_roots, Family, PositiveRootSet, RootVector};
use crate::weyl::{canonical_pair, weyl_group, WeylClass};

/// Version tag of the embedded table data.
pub const TABLE_VERSION: &str = "1";

/// Targets small enough for exhaustive verification.
pub const DESK_TARGETS: [(Family, usize); 16] = [
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 4),
    (Family::A, 5),
    (Family::A, 6),
    (Family::B, 2),
    (Family::B, 3),
    (Family::B, 4),
    (Family::B, 5),
    (Family::C, 3),
    (Family::C, 4),
    (Family::C, 5),
    (Family::D, 4),
    (Family::D, 5),
    (Family::G, 2),
    (Family::F, 4),
];

/// Row types of the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RowType {
    /// Both stems metric and isomorphic.
    #[serde(rename = "i")]
    I,
    /// Both stems metric, not isomorphic.
    #[serde(rename = "ii")]
    II,
    /// Only the first stem metric.
    #[serde(rename = "iii")]
    III,
    /// Every simple component metric, stems isomorphic.
    #[serde(rename = "iv")]
    IV,
    /// Every simple component metric, stems not isomorphic.
    #[serde(rename = "v")]
    V,
    /// Some simple component of the second stem is not metric.
    #[serde(rename = "vi")]
    VI,
}

impl RowType {
    pub fn roman(self) -> &'static str {
        match self {
            RowType::I => "i",
            RowType::II => "ii",
            RowType::III => "iii",
            RowType::IV => "iv",
            RowType::V => "v",
            RowType::VI => "vi",
        }
    }
}

/// One row of the table instantiated for a concrete target.
#[derive(Clone, Debug, Serialize)]
pub struct ExpectedRow {
    pub family: Family,
    pub rank: usize,
    pub row_type: RowType,
    pub labels: (String, String),
    pub part1: Vec<Vec<i64>>,
    pub part2: Vec<Vec<i64>>,
}

// e_i - e_j style helpers on explicit coordinates
fn vec_with(dim: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; dim];
    for &(i, c) in entries {
        v[i] += c;
    }
    v
}

fn row(
    family: Family,
    rank: usize,
    row_type: RowType,
    labels: (&str, &str),
    part1: Vec<Vec<i64>>,
    part2: Vec<Vec<i64>>,
) -> ExpectedRow {
    ExpectedRow {
        family,
        rank,
        row_type,
        labels: (labels.0.to_string(), labels.1.to_string()),
        part1,
        part2,
    }
}

/// Rows of the table for one target, in table order.
pub fn expected_rows(family: Family, rank: usize) -> Vec<ExpectedRow> {
    let mut rows = Vec::new();
    match family {
        Family::A if rank >= 2 => {
            let d = rank + 1;
            // basis indices 0..=r
            let a = |i: usize, j: usize| vec_with(d, &[(i, 1), (j, -1)]);
            let r = rank;
            let lower: Vec<Vec<i64>> = (0..r)
                .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                .map(|(i, j)| a(i, j))
                .collect();
            rows.push(row(
                family,
                rank,
                RowType::III,
                (&format!("A{}", r - 1), &format!("{r}A1")),
                lower.clone(),
                (0..r).map(|i| a(i, r)).collect(),
            ));
            if r >= 3 {
                let mut with_top = lower.clone();
                with_top.push(a(0, r));
                rows.push(row(
                    family,
                    rank,
                    RowType::V,
                    (&format!("{}A1", r - 1), &format!("A1+A{}", r - 1)),
                    (1..r).map(|i| a(i, r)).collect(),
                    with_top,
                ));
            }
            if r == 3 {
                rows.push(row(
                    family,
                    rank,
                    RowType::IV,
                    ("A1+D2", "A1+D2"),
                    vec![a(0, 1), a(1, 2), a(0, 3)],
                    vec![a(2, 3), a(0, 2), a(1, 3)],
                ));
            }
            if r == 4 {
                rows.push(row(
                    family,
                    rank,
                    RowType::IV,
                    ("A2+D2", "A2+D2"),
                    vec![a(2, 3), a(3, 4), a(2, 4), a(0, 3), a(1, 4)],
                    vec![a(0, 1), a(1, 2), a(0, 2), a(1, 3), a(0, 4)],
                ));
                rows.push(row(
                    family,
                    rank,
                    RowType::V,
                    ("2A2", "2D2"),
                    vec![a(0, 1), a(1, 2), a(0, 2), a(2, 3), a(3, 4), a(2, 4)],
                    vec![a(1, 3), a(0, 3), a(1, 4), a(0, 4)],
                ));
            }
        }
        Family::B | Family::C | Family::D => {
            let d = rank;
            // basis indices 1..=r in e-notation
            let m = |i: usize, j: usize| vec_with(d, &[(i - 1, 1), (j - 1, -1)]);
            let p = |i: usize, j: usize| vec_with(d, &[(i - 1, 1), (j - 1, 1)]);
            let e = |i: usize, c: i64| vec_with(d, &[(i - 1, c)]);
            let dr: Vec<Vec<i64>> = (1..=d)
                .flat_map(|i| (i + 1..=d).flat_map(move |j| [(i, j, false), (i, j, true)]))
                .map(|(i, j, plus)| if plus { p(i, j) } else { m(i, j) })
                .collect();
            match family {
                Family::B if rank >= 2 => {
                    rows.push(row(
                        family,
                        rank,
                        RowType::II,
                        (&format!("D{rank}"), &format!("{rank}A1")),
                        dr.clone(),
                        (1..=d).map(|i| e(i, 1)).collect(),
                    ));
                    if rank == 2 {
                        rows.push(row(
                            family,
                            rank,
                            RowType::III,
                            ("A1", "A2"),
                            vec![m(1, 2)],
                            vec![e(1, 1), e(2, 1), p(1, 2)],
                        ));
                        rows.push(row(
                            family,
                            rank,
                            RowType::IV,
                            ("2A1", "2A1"),
                            vec![e(1, 1), m(1, 2)],
                            vec![e(2, 1), p(1, 2)],
                        ));
                    }
                    if rank == 3 {
                        rows.push(row(
                            family,
                            rank,
                            RowType::VI,
                            ("3A1", "A3"),
                            vec![p(1, 2), p(1, 3), p(2, 3)],
                            vec![m(1, 2), m(1, 3), m(2, 3), e(1, 1), e(2, 1), e(3, 1)],
                        ));
                    }
                }
                Family::C if rank >= 3 => {
                    rows.push(row(
                        family,
                        rank,
                        RowType::II,
                        (&format!("{rank}A1"), &format!("D{rank}")),
                        (1..=d).map(|i| e(i, 2)).collect(),
                        dr.clone(),
                    ));
                    if rank == 3 {
                        rows.push(row(
                            family,
                            rank,
                            RowType::VI,
                            ("A1+B2", "A1+A2"),
                            vec![m(2, 3), e(1, 2), e(2, 2), m(1, 2), p(1, 2)],
                            vec![p(2, 3), e(3, 2), m(1, 3), p(1, 3)],
                        ));
                    }
                }
                Family::D if rank == 4 => {
                    rows.push(row(
                        family,
                        rank,
                        RowType::IV,
                        ("2A2", "2A2"),
                        vec![m(1, 2), m(2, 4), m(1, 4), p(3, 4), m(1, 3), p(1, 4)],
                        vec![m(3, 4), p(2, 4), p(2, 3), m(2, 3), p(1, 3), p(1, 2)],
                    ));
                }
                _ => {}
            }
        }
        Family::G if rank == 2 => {
            let long = vec![vec![2, -1, -1], vec![1, -2, 1], vec![1, 1, -2]];
            let short = vec![vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]];
            rows.push(row(
                family,
                rank,
                RowType::I,
                ("A2", "A2"),
                long,
                short.clone(),
            ));
            let mut b2 = vec![vec![2, -1, -1]];
            b2.extend(short);
            rows.push(row(
                family,
                rank,
                RowType::VI,
                ("2A1", "B2"),
                vec![vec![1, -2, 1], vec![1, 1, -2]],
                b2,
            ));
        }
        Family::F if rank == 4 => {
            if let Ok(f4) = build_positive_roots(Family::F, 4) {
                let coords = |m: crate::rootsys::RootMask| {
                    f4.vectors_of(m)
                        .iter()
                        .map(|v| v.coords().to_vec())
                        .collect()
                };
                rows.push(row(
                    family,
                    rank,
                    RowType::I,
                    ("D4", "D4"),
                    coords(f4.long_roots()),
                    coords(f4.short_roots()),
                ));
            }
        }
        _ => {}
    }
    rows
}

/// Number of Weyl classes of splints the table predicts for a target.
pub fn expected_class_count(family: Family, rank: usize) -> usize {
    expected_rows(family, rank).len()
}

/// Verification result for one row's witness.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub row_type: RowType,
    pub labels: (String, String),
    /// The witness is a valid splint.
    pub accepted: bool,
    /// The witness appears among the enumerated splints.
    pub found: bool,
    pub class_id: Option<usize>,
}

/// Verification of one target.
#[derive(Clone, Debug)]
pub struct TargetReport {
    pub family: Family,
    pub rank: usize,
    pub target: PositiveRootSet,
    pub records: Vec<SplintRecord>,
    pub classes: Vec<WeylClass>,
    pub expected_classes: usize,
    pub witnesses: Vec<WitnessCheck>,
    /// Every witness is accepted and found.
    pub witnesses_matched: bool,
    /// Each class holds exactly one witness.
    pub one_witness_per_class: bool,
    /// Class ids containing no witness.
    pub extra_classes: Vec<usize>,
    /// Row indices whose witness was rejected or not found.
    pub missing_rows: Vec<usize>,
    pub pass: bool,
    pub elapsed: Duration,
}

impl TargetReport {
    pub fn found_classes(&self) -> usize {
        self.classes.len()
    }
}

/// Aggregate verification report.
#[derive(Clone, Debug)]
pub struct TableReport {
    pub targets: Vec<TargetReport>,
}

impl TableReport {
    pub fn pass(&self) -> bool {
        self.targets.iter().all(|t| t.pass)
    }
}

/// Verifies a single target against its table rows.
pub fn verify_target(
    lib: &StemLibrary,
    family: Family,
    rank: usize,
    jobs: Option<usize>,
) -> Result<TargetReport> {
    let start = Instant::now();
    let target = build_positive_roots(family, rank)?;
    let mut records = enumerate_splints_with(lib, &target, jobs)?;
    let group = weyl_group(&target)?;
    let classes = classify_records(&mut records, &group);
    let rows = expected_rows(family, rank);

    let mut witnesses = Vec::new();
    let mut missing_rows = Vec::new();
    let mut per_class = vec![0usize; classes.len()];
    for (ri, row) in rows.iter().enumerate() {
        let to_vectors = |p: &[Vec<i64>]| -> Result<Vec<RootVector>> {
            p.iter().map(|c| RootVector::new(c.clone())).collect()
        };
        let m1 = target.mask_of(&to_vectors(&row.part1)?)?;
        let m2 = target.mask_of(&to_vectors(&row.part2)?)?;
        let partition = SplintPartition::new(m1, m2, target.len()).ok();
        let accepted = partition
            .as_ref()
            .is_some_and(|p| is_splint_with(lib, &target, p, target.rank()).is_some());
        let found_record = partition
            .as_ref()
            .and_then(|p| records.iter().find(|r| &r.partition == p));
        let class_id = partition.as_ref().and_then(|p| {
            let key = canonical_pair(&group, p.part1());
            classes
                .iter()
                .find(|c| c.representative == key)
                .map(|c| c.id)
        });
        if let Some(c) = class_id {
            per_class[c] += 1;
        }
        if !(accepted && found_record.is_some()) {
            missing_rows.push(ri);
        }
        witnesses.push(WitnessCheck {
            row_type: row.row_type,
            labels: row.labels.clone(),
            accepted,
            found: found_record.is_some(),
            class_id,
        });
    }
    let witnesses_matched = missing_rows.is_empty();
    let one_witness_per_class = per_class.iter().all(|&k| k == 1);
    let extra_classes: Vec<usize> = per_class
        .iter()
        .enumerate()
        .filter(|(_, &k)| k == 0)
        .map(|(i, _)| i)
        .collect();
    let pass = witnesses_matched && one_witness_per_class && classes.len() == rows.len();
    Ok(TargetReport {
        family,
        rank,
        target,
        records,
        classes,
        expected_classes: rows.len(),
        witnesses,
        witnesses_matched,
        one_witness_per_class,
        extra_classes,
        missing_rows,
        pass,
        elapsed: start.elapsed(),
    })
}

/// Runs splint enumeration and Weyl classification for each target and compares with the table.
pub fn verify_table(targets: &[(Family, usize)], jobs: Option<usize>) -> Result<TableReport> {
    let lib = StemLibrary::new();
    let targets = targets
        .iter()
        .map(|&(f, r)| verify_target(&lib, f, r, jobs))
        .collect::<Result<_>>()?;
    Ok(TableReport { targets })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        let counts: Vec<usize> = DESK_TARGETS
            .iter()
            .map(|&(f, r)| expected_class_count(f, r))
            .collect();
        assert_eq!(counts, vec![1, 3, 4, 2, 2, 3, 2, 1, 1, 2, 1, 1, 1, 0, 2, 1]);
    }

    #[test]
    fn witnesses_partition_their_targets() {
        for &(f, r) in &DESK_TARGETS {
            let prs = build_positive_roots(f, r).unwrap();
            for row in expected_rows(f, r) {
                let vs = |p: &[Vec<i64>]| {
                    p.iter()
                        .map(|c| RootVector::new(c.clone()).unwrap())
                        .collect::<Vec<_>>()
                };
                let m1 = prs.mask_of(&vs(&row.part1)).unwrap();
                let m2 = prs.mask_of(&vs(&row.part2)).unwrap();
                assert_eq!(m1.len(), row.part1.len());
                assert!(
                    SplintPartition::new(m1, m2, prs.len()).is_ok(),
                    "{f}{r} {:?}",
                    row.row_type
                );
            }
        }
    }

    #[test]
    fn g2_verifies() {
        let report = verify_table(&[(Family::G, 2)], Some(1)).unwrap();
        let t = &report.targets[0];
        assert_eq!(t.found_classes(), 2);
        assert!(t.pass, "{:?}", t.witnesses);
    }
}
