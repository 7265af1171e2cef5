//! Positive root systems in explicit integer coordinates.
//!
//! Every simple family is realized in the classical coordinates: `A_r` lives in
//! dimension `r+1` with basis indices `0..=r`, the `B/C/D` families in dimension
//! `r`, `G_2` in dimension 3 and `F_4` in dimension 4. The `E` family uses the
//! even-lattice presentation of `E_8` doubled so that every coordinate is an
//! integer; `E_7` and `E_6` are the roots orthogonal to one and two fixed roots.
//!
//! Roots are stored sorted ascending lexicographically; every index handed out
//! by this crate refers to that order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// A simple family in Cartan's list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    /// Smallest rank admitted by Cartan's list.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
            Family::E => 6,
            Family::F => 4,
            Family::G => 2,
        }
    }

    /// Checks that `rank` respects Cartan's bounds for this family.
    pub fn check_rank(self, rank: usize) -> Result<()> {
        let ok = match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(())
        } else {
            let bound = match self {
                Family::A => "A_r requires r >= 1",
                Family::B => "B_r requires r >= 2",
                Family::C => "C_r requires r >= 3",
                Family::D => "D_r requires r >= 4",
                Family::E => "E_r requires r in {6, 7, 8}",
                Family::F => "F_r exists only for r = 4",
                Family::G => "G_r exists only for r = 2",
            };
            domain(format!(
                "rank {rank} out of range for family {self}: {bound}"
            ))
        }
    }

    /// Number of positive roots of the simple system of this family and rank.
    pub fn positive_root_count(self, rank: usize) -> usize {
        match self {
            Family::A => rank * (rank + 1) / 2,
            Family::B | Family::C => rank * rank,
            Family::D => rank * (rank - 1),
            Family::E => match rank {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Index of the first ambient basis vector in e-notation (`e_0` for `A`).
    pub fn index_base(self) -> usize {
        if self == Family::A {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl serde::Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Parses a target label such as `"B4"`, `"F4"` or `"A2"`.
pub fn parse_target(s: &str) -> Result<(Family, usize)> {
    let s = s.trim();
    let mut chars = s.chars();
    let first = chars
        .next()
        .ok_or_else(|| Error::Parse("empty target".into()))?;
    let family: Family = first.to_string().parse()?;
    let rank: usize = chars
        .as_str()
        .trim_start_matches('_')
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank in target {s:?}")))?;
    Ok((family, rank))
}

/// Exact integer coordinate vector of a root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector(Vec<i64>);

impl RootVector {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.iter().all(|&c| c == 0) {
            return domain("root vectors must be nonzero");
        }
        Ok(RootVector(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &RootVector) -> i64 {
        dot(&self.0, &other.0)
    }

    pub fn norm2(&self) -> i64 {
        self.dot(self)
    }

    /// Coordinate-wise sum; `None` when the result is zero.
    pub fn add(&self, other: &RootVector) -> Option<RootVector> {
        let v: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect();
        RootVector::new(v).ok()
    }

    pub fn sub(&self, other: &RootVector) -> Option<RootVector> {
        let v: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        RootVector::new(v).ok()
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|c| -c).collect())
    }

    /// Renders the vector as a combination of basis vectors, e.g. `2e1-e2-e3`.
    pub fn to_e_notation(&self, index_base: usize) -> String {
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push('e');
            out.push_str(&(i + index_base).to_string());
        }
        out
    }

    /// Parses e-notation such as `e1-e2` or `2e1-e2-e3` into a vector of length `dim`.
    pub fn parse_e_notation(s: &str, dim: usize, index_base: usize) -> Result<RootVector> {
        let bad = || Error::Parse(format!("bad root expression {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut coords = vec![0i64; dim];
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coef: i64 = if start == pos {
                1
            } else {
                compact[start..pos].parse().map_err(|_| bad())?
            };
            if pos >= bytes.len() || bytes[pos] != b'e' {
                return Err(bad());
            }
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let idx: usize = compact[start..pos].parse().map_err(|_| bad())?;
            if idx < index_base || idx - index_base >= dim {
                return Err(Error::Parse(format!(
                    "basis index e{idx} outside the ambient space in {s:?}"
                )));
            }
            coords[idx - index_base] += sign * coef;
        }
        RootVector::new(coords)
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A subset of root indices, stored as a 128-bit mask (enough for `E_8`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootMask(pub u128);

impl RootMask {
    pub const EMPTY: RootMask = RootMask(0);

    pub fn full(n: usize) -> RootMask {
        if n >= 128 {
            RootMask(u128::MAX)
        } else {
            RootMask((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> RootMask {
        RootMask(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> RootMask {
        it.into_iter().fold(RootMask::EMPTY, |m, i| m.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> RootMask {
        RootMask(self.0 | 1u128 << i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> RootMask {
        RootMask(self.0 & !(1u128 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RootMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: RootMask) -> RootMask {
        RootMask(self.0 | other.0)
    }

    pub fn intersection(self, other: RootMask) -> RootMask {
        RootMask(self.0 & other.0)
    }

    /// Complement relative to the index range `0..n`.
    pub fn complement(self, n: usize) -> RootMask {
        RootMask(!self.0 & RootMask::full(n).0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct MaskIter(u128);

impl Iterator for MaskIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Label of a constructed positive system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SystemLabel {
    Simple(Family, usize),
    /// Direct sum of simple summands, in concatenation order.
    DirectSum(Vec<(Family, usize)>),
}

impl fmt::Display for SystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemLabel::Simple(fam, r) => write!(f, "{fam}{r}"),
            SystemLabel::DirectSum(parts) => {
                let names: Vec<String> = parts.iter().map(|(fam, r)| format!("{fam}{r}")).collect();
                write!(f, "{}", names.join("+"))
            }
        }
    }
}

/// Every index triple `(i, j, k)` with `i < j` and `roots[i] + roots[j] = roots[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTable {
    triples: Vec<(usize, usize, usize)>,
}

impl TripleTable {
    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Number of triples lying entirely inside `mask`.
    pub fn count_within(&self, mask: RootMask) -> usize {
        self.triples
            .iter()
            .filter(|&&(i, j, k)| mask.contains(i) && mask.contains(j) && mask.contains(k))
            .count()
    }
}

const NO_SUM: u16 = u16::MAX;

/// An ordered, realized system of positive roots with its additive structure.
#[derive(Clone, Debug)]
pub struct PositiveRootSet {
    label: SystemLabel,
    rank: usize,
    ambient_dim: usize,
    roots: Vec<RootVector>,
    triples: TripleTable,
    index: HashMap<RootVector, usize>,
    sum_lookup: Vec<u16>,
    sum_pairs: Vec<Vec<(usize, usize)>>,
    non_sums: RootMask,
}

impl PositiveRootSet {
    /// Builds a positive system from an unordered list of roots, checking its invariants.
    pub fn from_roots(
        label: SystemLabel,
        rank: usize,
        ambient_dim: usize,
        mut roots: Vec<RootVector>,
    ) -> Result<Self> {
        if roots.is_empty() || roots.len() > 128 {
            return domain(format!("{} roots is outside 1..=128", roots.len()));
        }
        if roots.iter().any(|r| r.dim() != ambient_dim) {
            return domain("root dimension differs from the ambient dimension");
        }
        roots.sort();
        roots.dedup();
        let n = roots.len();
        for i in 0..n {
            for j in i + 1..n {
                if proportional(&roots[i], &roots[j]) {
                    return domain(format!(
                        "roots {:?} and {:?} are proportional",
                        roots[i].coords(),
                        roots[j].coords()
                    ));
                }
            }
        }
        let index: HashMap<RootVector, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let mut triples = Vec::new();
        let mut sum_lookup = vec![NO_SUM; n * n];
        let mut sum_pairs = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if let Some(k) = roots[i].add(&roots[j]).and_then(|s| index.get(&s).copied()) {
                    triples.push((i, j, k));
                    sum_lookup[i * n + j] = k as u16;
                    sum_lookup[j * n + i] = k as u16;
                    sum_pairs[k].push((i, j));
                }
            }
        }
        let non_sums = RootMask::from_indices((0..n).filter(|&k| sum_pairs[k].is_empty()));
        if non_sums.len() != rank {
            return domain(format!(
                "{} non-sum roots but rank {rank} for {label}",
                non_sums.len()
            ));
        }
        Ok(PositiveRootSet {
            label,
            rank,
            ambient_dim,
            roots,
            triples: TripleTable { triples },
            index,
            sum_lookup,
            sum_pairs,
            non_sums,
        })
    }

    /// Direct sum of the given systems by coordinate concatenation.
    pub fn direct_sum(parts: &[&PositiveRootSet]) -> Result<Self> {
        if parts.is_empty() {
            return domain("direct sum of zero systems");
        }
        let dim: usize = parts.iter().map(|p| p.ambient_dim).sum();
        let mut roots = Vec::new();
        let mut offset = 0;
        let mut labels = Vec::new();
        for p in parts {
            for r in &p.roots {
                let mut v = vec![0i64; dim];
                v[offset..offset + p.ambient_dim].copy_from_slice(r.coords());
                roots.push(RootVector(v));
            }
            offset += p.ambient_dim;
            match &p.label {
                SystemLabel::Simple(f, r) => labels.push((*f, *r)),
                SystemLabel::DirectSum(v) => labels.extend(v.iter().copied()),
            }
        }
        let rank = parts.iter().map(|p| p.rank).sum();
        PositiveRootSet::from_roots(SystemLabel::DirectSum(labels), rank, dim, roots)
    }

    pub fn label(&self) -> &SystemLabel {
        &self.label
    }

    /// The simple family, for simple systems.
    pub fn family(&self) -> Option<Family> {
        match self.label {
            SystemLabel::Simple(f, _) => Some(f),
            SystemLabel::DirectSum(_) => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &RootVector {
        &self.roots[i]
    }

    pub fn full_mask(&self) -> RootMask {
        RootMask::full(self.roots.len())
    }

    pub fn triples(&self) -> &TripleTable {
        &self.triples
    }

    pub fn index_of(&self, v: &RootVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Index of `roots[i] + roots[j]` when it is a root of this system.
    #[inline]
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.sum_lookup[i * self.roots.len() + j];
        (k != NO_SUM).then_some(k as usize)
    }

    /// All unordered pairs `(i, j)` with `roots[i] + roots[j] = roots[k]`.
    pub fn sum_pairs(&self, k: usize) -> &[(usize, usize)] {
        &self.sum_pairs[k]
    }

    /// Roots that are not the sum of two roots of the system (the simple roots).
    pub fn simple_roots(&self) -> RootMask {
        self.non_sums
    }

    /// Elements of `subset` that are not the sum of two elements of `subset`.
    pub fn non_sums_within(&self, subset: RootMask) -> RootMask {
        RootMask::from_indices(subset.iter().filter(|&k| {
            !self.sum_pairs[k]
                .iter()
                .any(|&(i, j)| subset.contains(i) && subset.contains(j))
        }))
    }

    /// Index base of e-notation for this system.
    pub fn index_base(&self) -> usize {
        match self.label {
            SystemLabel::Simple(f, _) => f.index_base(),
            SystemLabel::DirectSum(_) => 1,
        }
    }

    /// Roots of maximal squared norm.
    pub fn long_roots(&self) -> RootMask {
        let max = self.roots.iter().map(RootVector::norm2).max().unwrap_or(0);
        RootMask::from_indices((0..self.len()).filter(|&i| self.roots[i].norm2() == max))
    }

    /// Roots of minimal squared norm.
    pub fn short_roots(&self) -> RootMask {
        let min = self.roots.iter().map(RootVector::norm2).min().unwrap_or(0);
        RootMask::from_indices((0..self.len()).filter(|&i| self.roots[i].norm2() == min))
    }

    /// Resolves a list of vectors to a mask; fails if any vector is not a root here.
    pub fn mask_of(&self, vectors: &[RootVector]) -> Result<RootMask> {
        let mut mask = RootMask::EMPTY;
        for v in vectors {
            let i = self.index_of(v).ok_or_else(|| {
                Error::Domain(format!(
                    "{} is not a positive root of {}",
                    v.to_e_notation(self.index_base()),
                    self.label
                ))
            })?;
            mask = mask.with(i);
        }
        Ok(mask)
    }

    pub fn vectors_of(&self, mask: RootMask) -> Vec<RootVector> {
        mask.iter().map(|i| self.roots[i].clone()).collect()
    }
}

fn proportional(a: &RootVector, b: &RootVector) -> bool {
    let ab = a.dot(b);
    ab * ab == a.norm2() * b.norm2()
}

/// Builds the canonical positive system of a simple family.
pub fn build_positive_roots(family: Family, rank: usize) -> Result<PositiveRootSet> {
    family.check_rank(rank)?;
    let (dim, vecs) = match family {
        Family::A => (rank + 1, type_a(rank)),
        Family::B => {
            let mut v = type_d(rank);
            v.extend((0..rank).map(|i| unit(rank, i, 1)));
            (rank, v)
        }
        Family::C => {
            let mut v = type_d(rank);
            v.extend((0..rank).map(|i| unit(rank, i, 2)));
            (rank, v)
        }
        Family::D => (rank, type_d(rank)),
        Family::E => (8, type_e(rank)),
        Family::F => (4, type_f4()),
        Family::G => (
            3,
            vec![
                vec![1, -1, 0],
                vec![0, 1, -1],
                vec![1, 0, -1],
                vec![2, -1, -1],
                vec![1, 1, -2],
                vec![1, -2, 1],
            ],
        ),
    };
    let roots = vecs.into_iter().map(RootVector).collect();
    let prs = PositiveRootSet::from_roots(SystemLabel::Simple(family, rank), rank, dim, roots)?;
    debug_assert_eq!(prs.len(), family.positive_root_count(rank));
    Ok(prs)
}

fn unit(dim: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

fn type_a(rank: usize) -> Vec<Vec<i64>> {
    let dim = rank + 1;
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut v = vec![0; dim];
            v[i] = 1;
            v[j] = -1;
            out.push(v);
        }
    }
    out
}

fn type_d(rank: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            for s in [-1, 1] {
                let mut v = vec![0; rank];
                v[i] = 1;
                v[j] = s;
                out.push(v);
            }
        }
    }
    out
}

fn type_f4() -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..4).map(|i| unit(4, i, 2)).collect();
    for signs in 0..8u32 {
        let mut v = vec![1i64; 4];
        for (k, c) in v[1..].iter_mut().enumerate() {
            if signs >> k & 1 == 1 {
                *c = -1;
            }
        }
        out.push(v);
    }
    out.extend(type_d(4));
    out
}

/// Doubled even-lattice presentation: `±2e_i±2e_j` and `(±1,...,±1)` with an even
/// number of minus signs; positivity from the functional `Σ 2^(7-i) x_i`.
fn type_e(rank: usize) -> Vec<Vec<i64>> {
    let mut all = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [-2, 2] {
                for sj in [-2, 2] {
                    let mut v = vec![0i64; 8];
                    v[i] = si;
                    v[j] = sj;
                    all.push(v);
                }
            }
        }
    }
    for signs in 0..256u32 {
        if signs.count_ones() % 2 == 0 {
            all.push(
                (0..8)
                    .map(|k| if signs >> k & 1 == 1 { -1 } else { 1 })
                    .collect(),
            );
        }
    }
    let theta = [1i64; 8];
    let theta2 = [-2i64, -2, 0, 0, 0, 0, 0, 0];
    let functional: Vec<i64> = (0..8).map(|i| 1i64 << (7 - i)).collect();
    all.into_iter()
        .filter(|v| dot(v, &functional) > 0)
        .filter(|v| rank == 8 || dot(v, &theta) == 0)
        .filter(|v| rank >= 7 || dot(v, &theta2) == 0)
        .collect()
}

/// Connected components of `subset` under `x ~ y` iff `x+y`, `x-y` or `y-x` lies in `subset`.
///
/// Components are returned ordered by their smallest index.
pub fn components(subset: RootMask, prs: &PositiveRootSet) -> Vec<RootMask> {
    let idx = subset.to_vec();
    let mut parent: Vec<usize> = (0..idx.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let in_subset = |v: Option<RootVector>| {
        v.and_then(|v| prs.index_of(&v))
            .is_some_and(|k| subset.contains(k))
    };
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            let (x, y) = (prs.root(idx[a]), prs.root(idx[b]));
            if in_subset(x.add(y)) || in_subset(x.sub(y)) || in_subset(y.sub(x)) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut blocks: Vec<RootMask> = Vec::new();
    let mut root_block: HashMap<usize, usize> = HashMap::new();
    for (a, &i) in idx.iter().enumerate() {
        let r = find(&mut parent, a);
        let b = *root_block.entry(r).or_insert_with(|| {
            blocks.push(RootMask::EMPTY);
            blocks.len() - 1
        });
        blocks[b] = blocks[b].with(i);
    }
    blocks
}

/// Pairwise dot products of the selected roots, in the given order.
pub fn gram(subset: &[usize], prs: &PositiveRootSet) -> Vec<Vec<i64>> {
    subset
        .iter()
        .map(|&i| {
            subset
                .iter()
                .map(|&j| prs.root(i).dot(prs.root(j)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RootVector {
        RootVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn a2_roots() {
        let a2 = build_positive_roots(Family::A, 2).unwrap();
        assert_eq!(
            a2.roots(),
            &[v(&[0, 1, -1]), v(&[1, -1, 0]), v(&[1, 0, -1])]
        );
        assert_eq!(a2.triples().len(), 1);
    }

    #[test]
    fn g2_roots_match_listed_vectors() {
        let g2 = build_positive_roots(Family::G, 2).unwrap();
        assert_eq!(g2.ambient_dim(), 3);
        let listed = [
            [1, -1, 0],
            [0, 1, -1],
            [1, 0, -1],
            [2, -1, -1],
            [1, 1, -2],
            [1, -2, 1],
        ];
        assert_eq!(g2.len(), 6);
        for c in listed {
            assert!(g2.index_of(&v(&c)).is_some());
        }
        assert_eq!(g2.triples().len(), 5);
    }

    #[test]
    fn counts_and_norms() {
        assert_eq!(build_positive_roots(Family::B, 3).unwrap().len(), 9);
        let f4 = build_positive_roots(Family::F, 4).unwrap();
        assert_eq!(f4.len(), 24);
        let n2 = f4.roots().iter().filter(|r| r.norm2() == 2).count();
        let n4 = f4.roots().iter().filter(|r| r.norm2() == 4).count();
        assert_eq!((n2, n4), (12, 12));
        for (r, n) in [(6, 36), (7, 63), (8, 120)] {
            let e = build_positive_roots(Family::E, r).unwrap();
            assert_eq!(e.len(), n);
            assert!(e.roots().iter().all(|x| x.norm2() == 8));
        }
    }

    #[test]
    fn cartan_bounds() {
        for (f, r) in [
            (Family::A, 0),
            (Family::B, 1),
            (Family::C, 2),
            (Family::D, 3),
            (Family::E, 5),
            (Family::E, 9),
            (Family::F, 3),
            (Family::G, 3),
        ] {
            let err = build_positive_roots(f, r).unwrap_err();
            assert!(
                matches!(err, Error::Domain(ref m) if m.contains("requires") || m.contains("only")),
                "{err}"
            );
        }
    }

    #[test]
    fn b2_triples() {
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        assert_eq!(b2.triples().len(), 2);
    }

    #[test]
    fn component_examples() {
        let a2 = build_positive_roots(Family::A, 2).unwrap();
        assert_eq!(components(a2.full_mask(), &a2).len(), 1);
        let a3 = build_positive_roots(Family::A, 3).unwrap();
        let m = a3.mask_of(&[v(&[1, 0, -1, 0]), v(&[0, 1, 0, -1])]).unwrap();
        assert_eq!(components(m, &a3).len(), 2);
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        assert_eq!(components(b2.full_mask(), &b2).len(), 1);
    }

    #[test]
    fn gram_examples() {
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        let e1 = b2.index_of(&v(&[1, 0])).unwrap();
        let e2 = b2.index_of(&v(&[0, 1])).unwrap();
        assert_eq!(gram(&[e1, e2], &b2), vec![vec![1, 0], vec![0, 1]]);
        let m = b2.index_of(&v(&[1, -1])).unwrap();
        let p = b2.index_of(&v(&[1, 1])).unwrap();
        assert_eq!(gram(&[m, p], &b2), vec![vec![2, 0], vec![0, 2]]);
        let g2 = build_positive_roots(Family::G, 2).unwrap();
        let l = g2.index_of(&v(&[2, -1, -1])).unwrap();
        assert_eq!(gram(&[l], &g2), vec![vec![6]]);
    }

    #[test]
    fn direct_sum_components_are_summands() {
        let a2 = build_positive_roots(Family::A, 2).unwrap();
        let b2 = build_positive_roots(Family::B, 2).unwrap();
        let g2 = build_positive_roots(Family::G, 2).unwrap();
        let sum = PositiveRootSet::direct_sum(&[&a2, &b2, &g2]).unwrap();
        assert_eq!(sum.rank(), 6);
        let blocks = components(sum.full_mask(), &sum);
        let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 4, 6]);
    }

    #[test]
    fn e_notation_round_trip() {
        let g2 = build_positive_roots(Family::G, 2).unwrap();
        for r in g2.roots() {
            let s = r.to_e_notation(1);
            assert_eq!(&RootVector::parse_e_notation(&s, 3, 1).unwrap(), r);
        }
        assert_eq!(v(&[2, -1, -1]).to_e_notation(1), "2e1-e2-e3");
        assert!(RootVector::parse_e_notation("e1+x2", 3, 1).is_err());
        assert!(RootVector::parse_e_notation("e4", 3, 1).is_err());
    }
}
