//! Abstract stem types: multisets of simple types, with canonical names.
//!
//! Grammar: terms `[count]Family rank` joined by `+`, e.g. `A2`, `3A1`, `A1+B2`.
//! Low-rank aliases (`D2`, `D3`, `C2`, `B1`, ...) are accepted on input and
//! resolved to their canonical form.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootsys::Family;

/// A simple type from Cartan's list, already canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        family.check_rank(rank)?;
        Ok(SimpleType { family, rank })
    }

    pub fn size(self) -> usize {
        simple_size(self)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Number of positive roots of a simple type.
pub fn simple_size(t: SimpleType) -> usize {
    t.family.positive_root_count(t.rank)
}

/// A direct sum of simple types, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StemType {
    components: Vec<SimpleType>,
}

impl StemType {
    pub fn new(mut components: Vec<SimpleType>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("a stem needs at least one component".into()));
        }
        components.sort();
        Ok(StemType { components })
    }

    pub fn simple(t: SimpleType) -> Self {
        StemType {
            components: vec![t],
        }
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(|t| t.size()).sum()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|t| t.rank).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.components.len() == 1
    }

    /// Number of copies of `t` among the components.
    pub fn count_of(&self, t: SimpleType) -> usize {
        self.components.iter().filter(|&&c| c == t).count()
    }

    /// Direct sum of two stems.
    pub fn plus(&self, other: &StemType) -> StemType {
        let mut c = self.components.clone();
        c.extend_from_slice(&other.components);
        c.sort();
        StemType { components: c }
    }
}

impl fmt::Display for StemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.components.len() {
            let t = self.components[i];
            let mut j = i;
            while j < self.components.len() && self.components[j] == t {
                j += 1;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}", j - i)?;
            }
            write!(f, "{t}")?;
            i = j;
        }
        Ok(())
    }
}

impl FromStr for StemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut components = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let bad = || Error::Parse(format!("bad stem term {term:?} in {s:?}"));
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let count: usize = if digits == 0 {
                1
            } else {
                term[..digits].parse().map_err(|_| bad())?
            };
            let rest = &term[digits..];
            let fam_char = rest.chars().next().ok_or_else(bad)?;
            let family: Family = fam_char.to_string().parse()?;
            let rank: usize = rest[1..]
                .trim_start_matches('_')
                .parse()
                .map_err(|_| bad())?;
            if count == 0 {
                return Err(bad());
            }
            let (canon, _) = canonical_name(family, rank)?;
            for _ in 0..count {
                components.extend_from_slice(canon.components());
            }
        }
        StemType::new(components)
    }
}

/// Resolves low-rank aliases; the flag is true when the input was an alias.
///
/// `D2 -> 2A1`, `D3 -> A3`, `C2 -> B2`, `B1/C1/D1 -> A1`; everything else must
/// satisfy Cartan's bounds.
pub fn canonical_name(family: Family, rank: usize) -> Result<(StemType, bool)> {
    let a = |r| SimpleType {
        family: Family::A,
        rank: r,
    };
    let alias = match (family, rank) {
        (Family::B | Family::C | Family::D, 1) => Some(vec![a(1)]),
        (Family::D, 2) => Some(vec![a(1), a(1)]),
        (Family::D, 3) => Some(vec![a(3)]),
        (Family::C, 2) => Some(vec![SimpleType {
            family: Family::B,
            rank: 2,
        }]),
        _ => None,
    };
    match alias {
        Some(c) => Ok((StemType::new(c)?, true)),
        None => Ok((StemType::simple(SimpleType::new(family, rank)?), false)),
    }
}

/// Simple types of rank at most `max_rank` and size at most `max_size`, ascending.
pub fn simple_types_up_to(max_size: usize, max_rank: usize) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        for rank in fam.min_rank()..=max_rank {
            if fam.check_rank(rank).is_err() {
                continue;
            }
            let t = SimpleType { family: fam, rank };
            if t.size() <= max_size {
                out.push(t);
            }
        }
    }
    out.sort();
    out
}

/// All canonical stems with exactly `size` positive roots and total rank at most `max_rank`.
///
/// Ordered by canonical name.
pub fn stem_candidates(size: usize, max_rank: usize) -> Vec<StemType> {
    let types = simple_types_up_to(size, max_rank);
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(&types, types.len(), size, max_rank, &mut current, &mut out);
    out.sort_by_cached_key(|s: &StemType| s.to_string());
    out
}

// Components are chosen with non-increasing index into `types`, so each multiset appears once.
fn descend(
    types: &[SimpleType],
    upper: usize,
    size_left: usize,
    rank_left: usize,
    current: &mut Vec<SimpleType>,
    out: &mut Vec<StemType>,
) {
    if size_left == 0 {
        if !current.is_empty() {
            let mut c = current.clone();
            c.sort();
            out.push(StemType { components: c });
        }
        return;
    }
    for i in (0..upper).rev() {
        let t = types[i];
        if t.size() <= size_left && t.rank <= rank_left {
            current.push(t);
            descend(
                types,
                i + 1,
                size_left - t.size(),
                rank_left - t.rank,
                current,
                out,
            );
            current.pop();
        }
    }
}
