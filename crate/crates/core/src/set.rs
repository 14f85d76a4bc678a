//! Finite sets of naturals and the three basic relations between them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SetError {
    #[error("elements must be strictly increasing (offender at position {0})")]
    NotIncreasing(usize),
}

/// Finite subset of ℕ, kept strictly increasing. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct FiniteSet {
    elems: Vec<u32>,
}

impl FiniteSet {
    pub fn empty() -> Self {
        FiniteSet { elems: Vec::new() }
    }

    pub fn new(mut elems: Vec<u32>) -> Result<Self, SetError> {
        for i in 1..elems.len() {
            if elems[i - 1] >= elems[i] {
                return Err(SetError::NotIncreasing(i));
            }
        }
        elems.shrink_to_fit();
        Ok(FiniteSet { elems })
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut elems: Vec<u32>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        FiniteSet { elems }
    }

    pub fn singleton(n: u32) -> Self {
        FiniteSet { elems: vec![n] }
    }

    pub fn interval(lo: u32, hi: u32) -> Self {
        FiniteSet { elems: (lo..=hi).collect() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min(&self) -> Option<u32> {
        self.elems.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.elems.last().copied()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.elems.binary_search(&n).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.elems.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.elems
    }

    /// The shift `₀s`: drop the minimum.
    pub fn shift(&self) -> FiniteSet {
        FiniteSet { elems: self.elems.iter().skip(1).copied().collect() }
    }

    /// Initial segment with the first `k` elements.
    pub fn prefix(&self, k: usize) -> FiniteSet {
        FiniteSet { elems: self.elems[..k.min(self.elems.len())].to_vec() }
    }

    pub fn is_subset_of(&self, other: &FiniteSet) -> bool {
        // Two-pointer walk; both sides sorted.
        let mut it = other.elems.iter();
        'outer: for x in &self.elems {
            for y in it.by_ref() {
                match y.cmp(x) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// ⊑: `self ⊆ other` and `self < other ∖ self`.
    pub fn is_initial_segment_of(&self, other: &FiniteSet) -> bool {
        if self.elems.len() > other.elems.len() {
            return false;
        }
        self.elems == other.elems[..self.elems.len()]
    }

    /// The block relation `self < other`: max self < min other, with the
    /// conventions ∅ < X and X < ∅.
    pub fn precedes(&self, other: &FiniteSet) -> bool {
        match (self.max(), other.min()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        }
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.elems);
        v.extend_from_slice(&other.elems);
        FiniteSet::from_unsorted(v)
    }

    pub fn intersect(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet {
            elems: self.elems.iter().copied().filter(|n| other.contains(*n)).collect(),
        }
    }

    pub fn difference(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet {
            elems: self.elems.iter().copied().filter(|n| !other.contains(*n)).collect(),
        }
    }

    /// All subsets. 2^|self| of them; caller is responsible for scale.
    pub fn subsets(&self) -> Vec<FiniteSet> {
        let n = self.elems.len();
        assert!(n < 26, "subset enumeration capped at 25 elements");
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let elems = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.elems[i]).collect();
            out.push(FiniteSet { elems });
        }
        out
    }

    /// Canonical order used everywhere a family is listed: by max element
    /// (∅ first), then lexicographically on the element sequence.
    pub fn canonical_cmp(&self, other: &FiniteSet) -> Ordering {
        match (self.max(), other.max()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.elems.cmp(&other.elems)),
        }
    }
}

impl From<FiniteSet> for Vec<u32> {
    fn from(s: FiniteSet) -> Vec<u32> {
        s.elems
    }
}

impl TryFrom<Vec<u32>> for FiniteSet {
    type Error = SetError;

    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        FiniteSet::new(v)
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[macro_export]
macro_rules! fset {
    ($($x:expr),* $(,)?) => {
        $crate::set::FiniteSet::new(vec![$($x),*]).expect("strictly increasing")
    };
}
