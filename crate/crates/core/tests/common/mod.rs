//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rootsplint::catalog::stem_candidates;
use rootsplint::embed::{realizations, StemSystem};
use rootsplint::rootsys::{PositiveRootSet, RootMask};

/// (stem name, some onto map is metric, some onto map is metric on each component)
pub type Flags = (String, bool, bool);

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Does `<x,y>_0 = λ <f x, f y>` hold with one positive λ on `roots`?
pub fn proportional(
    stem: &PositiveRootSet,
    target: &PositiveRootSet,
    map: &[usize],
    roots: &[usize],
) -> bool {
    let Some(&p) = roots.first() else { return true };
    let (g0p, gp) = (stem.root(p).norm2(), target.root(map[p]).norm2());
    roots.iter().all(|&a| {
        roots.iter().all(|&b| {
            let g0 = stem.root(a).dot(stem.root(b));
            let g = target.root(map[a]).dot(target.root(map[b]));
            g0 * gp == g * g0p
        })
    })
}

/// Does the bijection `map` (abstract index -> target index) respect every sum?
pub fn preserves_sums(stem: &PositiveRootSet, target: &PositiveRootSet, map: &[usize]) -> bool {
    for a in 0..stem.len() {
        for b in 0..stem.len() {
            if let Some(c) = stem.sum_index(a, b) {
                let s = target.root(map[a]).add(target.root(map[b]));
                if s.as_ref() != Some(target.root(map[c])) {
                    return false;
                }
            }
        }
    }
    true
}

/// Tries every bijection from every candidate stem onto `subset`.
pub fn naive_realizations(
    subset: RootMask,
    target: &PositiveRootSet,
    max_rank: usize,
) -> BTreeSet<Flags> {
    let elems = subset.to_vec();
    let mut out = BTreeSet::new();
    for stem in stem_candidates(elems.len(), max_rank) {
        let sys = StemSystem::new(&stem).unwrap();
        let roots = sys.roots();
        let comps: Vec<Vec<usize>> = {
            let k = sys.component_of().iter().max().map_or(0, |m| m + 1);
            (0..k)
                .map(|c| {
                    (0..roots.len())
                        .filter(|&i| sys.component_of()[i] == c)
                        .collect()
                })
                .collect()
        };
        let all: Vec<usize> = (0..roots.len()).collect();
        let mut perm: Vec<usize> = (0..elems.len()).collect();
        let (mut found, mut metric, mut compwise) = (false, false, false);
        loop {
            let map: Vec<usize> = perm.iter().map(|&i| elems[i]).collect();
            if preserves_sums(roots, target, &map) {
                found = true;
                metric |= proportional(roots, target, &map, &all);
                compwise |= comps.iter().all(|c| proportional(roots, target, &map, c));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        if found {
            out.insert((stem.to_string(), metric, compwise));
        }
    }
    out
}

pub fn library_realizations(
    subset: RootMask,
    target: &PositiveRootSet,
    max_rank: usize,
) -> BTreeSet<Flags> {
    realizations(subset, target, max_rank)
        .into_iter()
        .map(|r| {
            (
                r.stem.to_string(),
                r.metric_realizable,
                r.componentwise_metric,
            )
        })
        .collect()
}
