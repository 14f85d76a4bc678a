//! Explicit finite families of finite sets: closures, traces, restrictions,
//! Sperner/thin checks, subfamilies, maximal elements and the finite tree
//! rank. This is the ground-truth layer that symbolic barriers export into.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::set::FiniteSet;

/// Which partial order a closure (or maximality) is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureKind {
    /// ⊆-downward closure; hereditary families.
    Subset,
    /// ⊑-downward closure: initial segments only.
    InitSeg,
}

/// Which relation `rel` tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetRel {
    Subset,
    InitSeg,
    Block,
}

/// Trace ℱ[M] vs restriction ℱ↾M.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    Trace,
    Restrict,
}

/// Deduplicated, canonically ordered finite family of finite sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyExplicit {
    sets: Vec<FiniteSet>,
}

pub fn rel(s: &FiniteSet, t: &FiniteSet, which: SetRel) -> bool {
    match which {
        SetRel::Subset => s.is_subset_of(t),
        SetRel::InitSeg => s.is_initial_segment_of(t),
        SetRel::Block => s.precedes(t),
    }
}

fn below(s: &FiniteSet, t: &FiniteSet, kind: ClosureKind) -> bool {
    match kind {
        ClosureKind::Subset => s.is_subset_of(t),
        ClosureKind::InitSeg => s.is_initial_segment_of(t),
    }
}

/// Outcome of the Sperner/thin check. `witness` is a violating pair when one
/// of the flags is false (a ⊑-pair when thinness fails, otherwise a ⊆-pair).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpernerThinReport {
    pub is_sperner: bool,
    pub is_thin: bool,
    pub witness: Option<(FiniteSet, FiniteSet)>,
}

impl FamilyExplicit {
    pub fn empty() -> Self {
        FamilyExplicit { sets: Vec::new() }
    }

    pub fn new(sets: impl IntoIterator<Item = FiniteSet>) -> Self {
        let dedup: BTreeSet<Vec<u32>> =
            sets.into_iter().map(|s| Vec::from(s)).collect();
        let mut sets: Vec<FiniteSet> = dedup
            .into_iter()
            .map(|v| FiniteSet::new(v).expect("sets validated on construction"))
            .collect();
        sets.sort_by(|a, b| a.canonical_cmp(b));
        FamilyExplicit { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[FiniteSet] {
        &self.sets
    }

    pub fn contains(&self, s: &FiniteSet) -> bool {
        self.sets.binary_search_by(|t| t.canonical_cmp(s)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &FiniteSet> {
        self.sets.iter()
    }

    /// Downward closure. Always contains ∅ when the family is nonempty.
    pub fn closure(&self, kind: ClosureKind) -> FamilyExplicit {
        let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
        for s in &self.sets {
            match kind {
                ClosureKind::InitSeg => {
                    for k in 0..=s.len() {
                        out.insert(Vec::from(s.prefix(k)));
                    }
                }
                ClosureKind::Subset => {
                    for sub in s.subsets() {
                        out.insert(Vec::from(sub));
                    }
                }
            }
        }
        FamilyExplicit::new(out.into_iter().map(|v| FiniteSet::new(v).unwrap()))
    }

    /// Sperner (no ⊆ between distinct members) and thin (no ⊑) check.
    pub fn sperner_thin(&self) -> SpernerThinReport {
        let mut sperner_witness = None;
        let mut thin_witness = None;
        'outer: for (i, s) in self.sets.iter().enumerate() {
            for (j, t) in self.sets.iter().enumerate() {
                if i == j {
                    continue;
                }
                if thin_witness.is_none() && s.is_initial_segment_of(t) {
                    thin_witness = Some((s.clone(), t.clone()));
                    break 'outer; // a ⊑-pair also witnesses the ⊆-violation
                }
                if sperner_witness.is_none() && s.is_subset_of(t) {
                    sperner_witness = Some((s.clone(), t.clone()));
                }
            }
        }
        let is_thin = thin_witness.is_none();
        let is_sperner = is_thin && sperner_witness.is_none();
        SpernerThinReport {
            is_sperner,
            is_thin,
            witness: thin_witness.or(sperner_witness),
        }
    }

    /// ℱ[M] = {s ∩ M} or ℱ↾M = {s ∈ ℱ : s ⊆ M} for a finite M.
    pub fn trace_restrict(&self, m: &FiniteSet, which: TraceKind) -> FamilyExplicit {
        match which {
            TraceKind::Trace => {
                FamilyExplicit::new(self.sets.iter().map(|s| s.intersect(m)))
            }
            TraceKind::Restrict => FamilyExplicit::new(
                self.sets.iter().filter(|s| s.is_subset_of(m)).cloned(),
            ),
        }
    }

    /// ℱ_{n} = {s : n < s and {n} ∪ s ∈ ℱ}.
    pub fn subfamily_at(&self, n: u32) -> FamilyExplicit {
        FamilyExplicit::new(self.sets.iter().filter_map(|s| {
            if s.min() == Some(n) {
                Some(s.shift())
            } else {
                None
            }
        }))
    }

    /// ℱ_s = {t : s < t and s ∪ t ∈ ℱ}, the iterated form of `subfamily_at`.
    pub fn subfamily_after(&self, s: &FiniteSet) -> FamilyExplicit {
        FamilyExplicit::new(self.sets.iter().filter_map(|u| {
            if s.is_initial_segment_of(u) {
                let rest = u.difference(s);
                if s.precedes(&rest) {
                    return Some(rest);
                }
            }
            None
        }))
    }

    /// Height in edges of the longest ⊑-chain from ∅ inside the ⊑-closure.
    /// Since the ⊑-closure contains every prefix of each member, the longest
    /// chain from ∅ is the full prefix chain of a largest member.
    pub fn tree_rank(&self) -> usize {
        self.closure(ClosureKind::InitSeg)
            .sets
            .iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
    }

    /// The ⊆-maximal (or ⊑-maximal) members.
    pub fn maximal_elements(&self, kind: ClosureKind) -> FamilyExplicit {
        FamilyExplicit::new(self.sets.iter().enumerate().filter_map(|(i, s)| {
            let dominated = self
                .sets
                .iter()
                .enumerate()
                .any(|(j, t)| i != j && below(s, t, kind));
            if dominated {
                None
            } else {
                Some(s.clone())
            }
        }))
    }
}

impl fmt::Display for FamilyExplicit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// JSON wire form: `{"sets": [[1,3],[2]]}`.
#[derive(Serialize, Deserialize)]
pub struct FamilyJson {
    pub sets: Vec<FiniteSet>,
}

impl From<&FamilyExplicit> for FamilyJson {
    fn from(f: &FamilyExplicit) -> Self {
        FamilyJson { sets: f.sets.clone() }
    }
}

impl From<FamilyJson> for FamilyExplicit {
    fn from(j: FamilyJson) -> Self {
        FamilyExplicit::new(j.sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fset;

    fn fam(sets: &[&[u32]]) -> FamilyExplicit {
        FamilyExplicit::new(sets.iter().map(|s| FiniteSet::new(s.to_vec()).unwrap()))
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            fam(&[&[1, 3]]).closure(ClosureKind::InitSeg),
            fam(&[&[], &[1], &[1, 3]])
        );
        assert_eq!(fam(&[&[2]]).closure(ClosureKind::Subset), fam(&[&[], &[2]]));
        assert_eq!(
            fam(&[&[0], &[1, 2]]).closure(ClosureKind::InitSeg),
            fam(&[&[], &[0], &[1], &[1, 2]])
        );
    }

    #[test]
    fn sperner_thin_examples() {
        let r = fam(&[&[0, 1], &[1, 2]]).sperner_thin();
        assert!(r.is_sperner && r.is_thin && r.witness.is_none());

        let r = fam(&[&[0], &[0, 1]]).sperner_thin();
        assert!(!r.is_sperner && !r.is_thin);
        assert_eq!(r.witness, Some((fset![0], fset![0, 1])));

        let r = FamilyExplicit::empty().sperner_thin();
        assert!(r.is_sperner && r.is_thin);

        // Sperner fails but thin holds: {0,2} ⊄⊑ {0,1,2} is false for ⊆ only.
        let r = fam(&[&[0, 2], &[0, 1, 2]]).sperner_thin();
        assert!(!r.is_sperner && r.is_thin);
    }

    #[test]
    fn trace_restrict_examples() {
        let f = fam(&[&[0, 2], &[1]]);
        assert_eq!(f.trace_restrict(&fset![0, 1], TraceKind::Trace), fam(&[&[0], &[1]]));
        assert_eq!(f.trace_restrict(&fset![0, 2], TraceKind::Restrict), fam(&[&[0, 2]]));

        // all 2-subsets of {0..4} traced on {0,2,4}
        let mut two_subsets = Vec::new();
        for a in 0..5u32 {
            for b in (a + 1)..5 {
                two_subsets.push(fset![a, b]);
            }
        }
        let f = FamilyExplicit::new(two_subsets);
        let traced = f.trace_restrict(&fset![0, 2, 4], TraceKind::Trace);
        assert_eq!(
            traced,
            fam(&[&[], &[0], &[2], &[4], &[0, 2], &[0, 4], &[2, 4]])
        );
    }

    #[test]
    fn subfamily_examples() {
        // Schreier truncated to {0..5}: sets with |s| = min(s)+1
        let mut sch = Vec::new();
        for s in FiniteSet::interval(0, 5).subsets() {
            if !s.is_empty() && s.len() as u32 == s.min().unwrap() + 1 {
                sch.push(s);
            }
        }
        let sch = FamilyExplicit::new(sch);
        assert_eq!(
            sch.subfamily_at(2),
            fam(&[&[3, 4], &[3, 5], &[4, 5]])
        );

        let singletons = fam(&[&[0], &[1], &[2], &[3], &[4], &[5]]);
        assert_eq!(singletons.subfamily_at(4), fam(&[&[]]));
        assert_eq!(sch.subfamily_at(9), FamilyExplicit::empty());
    }

    #[test]
    fn tree_rank_examples() {
        assert_eq!(fam(&[&[]]).tree_rank(), 0);
        assert_eq!(FamilyExplicit::empty().tree_rank(), 0);

        let mut two_subsets = Vec::new();
        for a in 0..4u32 {
            for b in (a + 1)..4 {
                two_subsets.push(fset![a, b]);
            }
        }
        let closed = FamilyExplicit::new(two_subsets).closure(ClosureKind::InitSeg);
        assert_eq!(closed.tree_rank(), 2);

        let mut sch = Vec::new();
        for s in FiniteSet::interval(0, 6).subsets() {
            if !s.is_empty() && s.len() as u32 == s.min().unwrap() + 1 {
                sch.push(s);
            }
        }
        assert_eq!(FamilyExplicit::new(sch).tree_rank(), 4);
    }

    #[test]
    fn maximal_examples() {
        assert_eq!(
            fam(&[&[], &[0], &[0, 1]]).maximal_elements(ClosureKind::Subset),
            fam(&[&[0, 1]])
        );
        let sperner = fam(&[&[0, 1], &[1, 2]]);
        assert_eq!(sperner.maximal_elements(ClosureKind::Subset), sperner);
        let f = fam(&[&[0], &[1, 2]]).closure(ClosureKind::InitSeg);
        assert_eq!(f.maximal_elements(ClosureKind::InitSeg), fam(&[&[0], &[1, 2]]));
    }

    #[test]
    fn closure_nesting_invariant() {
        for f in [
            fam(&[&[0, 2], &[1, 3, 5]]),
            fam(&[&[4], &[0, 1, 2]]),
            FamilyExplicit::empty(),
        ] {
            let init = f.closure(ClosureKind::InitSeg);
            let sub = f.closure(ClosureKind::Subset);
            for s in init.iter() {
                assert!(sub.contains(s));
            }
        }
    }

    #[test]
    fn maximal_of_subset_closure_is_sperner() {
        let f = fam(&[&[0, 2], &[2, 3], &[1], &[0, 2, 4]]);
        let m = f.closure(ClosureKind::Subset).maximal_elements(ClosureKind::Subset);
        assert!(m.sperner_thin().is_sperner);
    }

    #[test]
    fn subfamily_of_closure_is_downward_closed() {
        let f = fam(&[&[0, 2, 3], &[1, 4], &[2, 3, 5]]).closure(ClosureKind::Subset);
        for n in 0..6 {
            let sub = f.subfamily_at(n);
            let closed = sub.closure(ClosureKind::Subset);
            assert_eq!(sub, closed, "subfamily at {n} not hereditary");
        }
    }
}
