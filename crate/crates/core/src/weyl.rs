//! Weyl groups acting on signed roots, and Weyl classes of splints.
//!
//! Group elements are permutations of `Δ ∪ (-Δ)`. Index `i < n` is the positive
//! root `roots[i]`; index `n + i` is its negative. Reflection coefficients
//! `2<β,α>/<α,α>` are integers for every crystallographic system, so the action
//! is computed exactly on integer vectors.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::rootsys::{PositiveRootSet, RootMask, RootVector};

/// Largest group the generator will build.
pub const MAX_GROUP_ORDER: usize = 100_000;

/// A root of `Δ ∪ (-Δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRootIndex {
    pub index: usize,
    pub negative: bool,
}

impl SignedRootIndex {
    pub fn encode(self, n: usize) -> usize {
        self.index + if self.negative { n } else { 0 }
    }

    pub fn decode(code: usize, n: usize) -> Self {
        SignedRootIndex {
            index: code % n,
            negative: code >= n,
        }
    }

    #[must_use]
    pub fn negate(self) -> Self {
        SignedRootIndex {
            index: self.index,
            negative: !self.negative,
        }
    }
}

/// A permutation of signed roots commuting with negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement(Box<[u16]>);

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement((0..2 * n as u16).collect())
    }

    pub fn apply(&self, s: SignedRootIndex) -> SignedRootIndex {
        let n = self.0.len() / 2;
        SignedRootIndex::decode(self.0[s.encode(n)] as usize, n)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        WeylElement(inv.into())
    }

    /// Image of a symmetrized subset `S ∪ (-S)`, returned by its positive half.
    pub fn act_on_symmetrized(&self, mask: RootMask) -> RootMask {
        let n = self.0.len() / 2;
        RootMask::from_indices(mask.iter().map(|i| self.0[i] as usize % n))
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.0
    }
}

/// The Weyl group of a constructed system.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    n: usize,
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn contains(&self, g: &WeylElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Number of positive roots of the underlying system.
    pub fn root_count(&self) -> usize {
        self.n
    }
}

/// Signed root vectors in the encoding used by [`WeylElement`].
pub fn signed_roots(prs: &PositiveRootSet) -> Vec<RootVector> {
    let mut v: Vec<RootVector> = prs.roots().to_vec();
    v.extend(prs.roots().iter().map(RootVector::neg));
    v
}

/// Reflection in `roots[alpha]` as a signed-root permutation.
pub fn simple_reflection(prs: &PositiveRootSet, alpha: usize) -> WeylElement {
    let signed = signed_roots(prs);
    let lookup: HashMap<&RootVector, usize> =
        signed.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let a = prs.root(alpha);
    let aa = a.norm2();
    let perm: Vec<u16> = signed
        .iter()
        .map(|b| {
            let num = 2 * b.dot(a);
            assert_eq!(num % aa, 0, "non-crystallographic reflection coefficient");
            let c = num / aa;
            let img: Vec<i64> = b
                .coords()
                .iter()
                .zip(a.coords())
                .map(|(x, y)| x - c * y)
                .collect();
            let img = RootVector::new(img).expect("reflection of a root is nonzero");
            lookup[&img] as u16
        })
        .collect();
    WeylElement(perm.into())
}

/// Closure of the reflections in the simple roots.
pub fn weyl_group(target: &PositiveRootSet) -> Result<WeylGroup> {
    let n = target.len();
    let gens: Vec<WeylElement> = target
        .simple_roots()
        .iter()
        .map(|a| simple_reflection(target, a))
        .collect();
    let id = WeylElement::identity(n);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = s.compose(&g);
            if !seen.contains(&h) {
                if seen.len() >= MAX_GROUP_ORDER {
                    return Err(Error::Capacity {
                        what: format!("Weyl group of {}", target.label()),
                        size: seen.len() + 1,
                        bound: MAX_GROUP_ORDER,
                    });
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut elements: Vec<WeylElement> = seen.into_iter().collect();
    elements.sort();
    Ok(WeylGroup { n, elements })
}

/// An orbit of splints under the Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylClass {
    pub id: usize,
    /// Indices into the list of partitions passed to [`splint_classes`].
    pub members: Vec<usize>,
    /// Least symmetrized pair over the orbit, as positive halves (smaller mask first).
    pub representative: (RootMask, RootMask),
}

/// Canonical form of the unordered pair `{P, complement}` under the group.
pub fn canonical_pair(group: &WeylGroup, part: RootMask) -> (RootMask, RootMask) {
    let n = group.n;
    group
        .elements
        .iter()
        .map(|g| {
            let a = g.act_on_symmetrized(part);
            let b = a.complement(n);
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .min()
        .expect("group contains the identity")
}

/// Groups partitions (given by one part each) into Weyl classes.
///
/// Classes are numbered in ascending order of their representatives, so the
/// result does not depend on the order of `parts`.
pub fn splint_classes(parts: &[RootMask], group: &WeylGroup) -> Vec<WeylClass> {
    use rayon::prelude::*;
    let keys: Vec<(RootMask, RootMask)> = parts
        .par_iter()
        .map(|&p| canonical_pair(group, p))
        .collect();
    let mut by_key: std::collections::BTreeMap<(RootMask, RootMask), Vec<usize>> =
        Default::default();
    for (i, k) in keys.into_iter().enumerate() {
        by_key.entry(k).or_default().push(i);
    }
    by_key
        .into_iter()
        .enumerate()
        .map(|(id, (representative, members))| WeylClass {
            id,
            members,
            representative,
        })
        .collect()
}

/// The orbit of `{P, complement}` as normalized pairs.
pub fn orbit(group: &WeylGroup, part: RootMask) -> HashSet<(RootMask, RootMask)> {
    let n = group.n;
    group
        .elements
        .iter()
        .map(|g| {
            let a = g.act_on_symmetrized(part);
            let b = a.complement(n);
            (a.min(b), a.max(b))
        })
        .collect()
}
