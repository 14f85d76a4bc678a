//! Symbolic algebra of uniform families and barriers on represented
//! infinite sets.
//!
//! A [`BarrierExpr`] is a constructor tree denoting a family of finite
//! subsets of its base set. Membership and initial segments are decided by
//! structural recursion (s ∈ ℱ iff s∖{min s} ∈ ℱ_{min s}); every
//! constructor consumes the elements of a candidate set from left to
//! right, which makes one `descend` routine serve both `contains` and
//! `initial_segment`. Ranks are computed bottom-up as exact ordinals.

mod enumerate;
mod parse;
mod validate;

pub use enumerate::{BoundedEnum, EnumCaps};
pub use validate::{FrontReport, FrontViolation};

use num::{BigUint, One};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mseq::{MSequence, SquareMag};
use crate::ordinal::Ordinal;
use crate::qinterval::Q;
use crate::set::FiniteSet;
use crate::sigma::SigmaCode;
use crate::stream::StreamSpec;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum BarrierError {
    #[error("malformed diagonal: child ranks must strictly increase ({0})")]
    MalformedDiagonal(String),
    #[error("enumeration would exceed the configured cap (estimated {estimate} sets, cap {cap})")]
    TooLarge { estimate: u64, cap: u64 },
    #[error("stream is not inside the barrier's base set")]
    BaseMismatch,
    #[error("barrier parse error: {0}")]
    Parse(String),
}

/// Monotone unbounded map descriptor for generalized Schreier families,
/// with an explicit inverse threshold so margins stay computable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GrowthFn {
    /// f(n) = n.
    Identity,
    /// f(n) = mul·n + add, mul ≥ 1.
    Affine { mul: u32, add: u32 },
}

impl GrowthFn {
    pub fn eval(&self, n: u32) -> u64 {
        match self {
            GrowthFn::Identity => n as u64,
            GrowthFn::Affine { mul, add } => *mul as u64 * n as u64 + *add as u64,
        }
    }
}

/// Child rule of a diagonal (limit-rank) node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum DiagonalRule {
    /// child(n) = Power(n); limit ω. Membership coincides with Schreier.
    Powers,
    /// child(n) = Tensor(inner, n); limit rank(inner)·ω.
    TensorPowers { inner: Box<BarrierExpr> },
}

impl DiagonalRule {
    pub fn child(&self, n: u32) -> BarrierExpr {
        match self {
            DiagonalRule::Powers => BarrierExpr::Power(n),
            DiagonalRule::TensorPowers { inner } => {
                BarrierExpr::Tensor(inner.clone(), n)
            }
        }
    }

    fn limit_rank(&self) -> Result<Ordinal, BarrierError> {
        match self {
            DiagonalRule::Powers => Ok(Ordinal::omega()),
            DiagonalRule::TensorPowers { inner } => {
                let r = inner.rank()?;
                if r.is_zero() {
                    return Err(BarrierError::MalformedDiagonal(
                        "tensorpowers over a rank-0 family".into(),
                    ));
                }
                Ok(r.mul_omega())
            }
        }
    }
}

/// Single- or double-indexed ladder feeding the blocks of a σ-chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "ladder", rename_all = "lowercase")]
pub enum ChainLadder {
    /// B_v = Power(g(v)), g(v) = (⌊log₂(v+2)⌋+2)²: slowly growing perfect
    /// squares. Ranks are weakly monotone (plateaus) — demo grade.
    DemoSquares,
    /// B_v = Power(R_v) with R_v the next perfect square ≥ R_{v-1}/ε_v²,
    /// ε_v = eps/2^{v+3}. Sized for mean-vs-mean pairing bounds.
    BoundDriven { eps: Q },
    /// B_v = Tensor(inner, v+1); ranks rank(inner)·(v+1).
    TensorLadder { inner: Box<BarrierExpr> },
    /// Double ladder for the limit case: B^n_v = Tensor(W_{n-1}, v+1) where
    /// W_k is the canonical ω^k-uniform family. Chain rank ω^ω.
    DoubleOmega,
}

/// Practical ceiling on materializable block sizes.
const SIZE_CAP: u64 = 1 << 24;

impl ChainLadder {
    /// Size of the bound-driven ladder at level v, if materializable.
    pub fn bound_driven_size(eps: &Q, v: u64) -> Option<u64> {
        let mut r: u64 = 1;
        for lvl in 0..=v {
            // ε_lvl = eps/2^{lvl+3}; need r_next ≥ r/ε², i.e. r·(2^{lvl+3}/eps)².
            let shift = lvl.checked_add(3)?;
            if shift > 40 {
                return None;
            }
            let scale = Q::from_integer(num::BigInt::one() << (shift as usize)) / eps.clone();
            if scale <= Q::from_integer(1.into()) {
                // ε_lvl ≥ 1: a single point already meets the bound.
                continue;
            }
            let need = Q::from_integer(r.into()) * &scale * &scale;
            let need_int = need.ceil().to_integer();
            let need_u = u64::try_from(need_int.magnitude()).ok()?;
            let mut root = need_u.sqrt();
            while root * root < need_u {
                root += 1;
            }
            let next = root.checked_mul(root)?;
            r = next.max(r + 1);
            if r > SIZE_CAP {
                return None;
            }
        }
        Some(r)
    }

    /// The block family at σ-index `idx` (slice `n` only matters for the
    /// double ladder). Unmaterializable levels come back as a family no
    /// desk-scale set can belong to.
    pub fn family_at(&self, n: u32, idx: &BigUint) -> BarrierExpr {
        let idx_u64 = u64::try_from(idx).ok();
        match self {
            ChainLadder::DemoSquares => {
                let v = idx_u64.unwrap_or(u64::MAX - 2);
                let r = (v + 2).ilog2() as u64 + 2;
                BarrierExpr::Power((r * r).min(u32::MAX as u64) as u32)
            }
            ChainLadder::BoundDriven { eps } => {
                match idx_u64.and_then(|v| Self::bound_driven_size(eps, v)) {
                    Some(r) => BarrierExpr::Power(r.min(u32::MAX as u64) as u32),
                    None => BarrierExpr::Power(u32::MAX),
                }
            }
            ChainLadder::TensorLadder { inner } => {
                let v = idx_u64.map(|v| v.saturating_add(1)).unwrap_or(u32::MAX as u64);
                BarrierExpr::Tensor(inner.clone(), v.min(u32::MAX as u64) as u32)
            }
            ChainLadder::DoubleOmega => {
                let v = idx_u64.map(|v| v.saturating_add(1)).unwrap_or(u32::MAX as u64);
                let w = omega_uniform(n.saturating_sub(1).min(8));
                BarrierExpr::Tensor(Box::new(w), v.min(u32::MAX as u64) as u32)
            }
        }
    }

    fn sup_rank(&self) -> Result<Ordinal, BarrierError> {
        match self {
            ChainLadder::DemoSquares | ChainLadder::BoundDriven { .. } => Ok(Ordinal::omega()),
            ChainLadder::TensorLadder { inner } => Ok(inner.rank()?.mul_omega()),
            ChainLadder::DoubleOmega => {
                Ordinal::omega_pow(Ordinal::omega()).map_err(|e| {
                    BarrierError::MalformedDiagonal(e.to_string())
                })
            }
        }
    }
}

/// Parameters of the σ-chain family 𝒞 = {{n}∪s(0)∪…∪s(n-1)} with
/// σ-selected block families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub ladder: ChainLadder,
    pub sigma: SigmaCode,
}

/// Parameters of the Maurey–Rosenthal barrier: block sizes are σ-values
/// drawn from the m-sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MrSpec {
    pub mseq: MSequence,
    pub sigma: SigmaCode,
}

impl MrSpec {
    pub fn certified(eps: Q) -> Result<Self, crate::mseq::MSeqError> {
        Ok(MrSpec { mseq: MSequence::certified(eps)?, sigma: SigmaCode::Canonical })
    }

    pub fn demo() -> Self {
        MrSpec { mseq: MSequence::demo(), sigma: SigmaCode::Compact }
    }

    /// σ-determined size of the next block after `history`.
    pub fn block_size(&self, history: &[FiniteSet]) -> SquareMag {
        match self.sigma {
            SigmaCode::Compact => {
                let overall = history.iter().filter_map(|s| s.max()).max().unwrap();
                self.mseq.least_above(overall as u64).1
            }
            _ => self.mseq.value(&self.sigma.index(history)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum BarrierExpr {
    /// The family {∅}; rank 0.
    Zero,
    /// All k-subsets of the base set; rank k.
    Power(u32),
    /// {s : |s| = f(min s)+1}; rank ω.
    Schreier(GrowthFn),
    /// ℱ⊗n: unions of block n-tuples from ℱ; rank rank(ℱ)·n.
    Tensor(Box<BarrierExpr>, u32),
    /// ℱ⊕𝒢 = {u∪v : u∈𝒢, v∈ℱ, u<v}; rank rank(𝒢)+rank(ℱ) (conjectural).
    Oplus { f: Box<BarrierExpr>, g: Box<BarrierExpr> },
    /// {s : s∖{min s} ∈ child(min s)}; rank = declared limit.
    Diagonal(DiagonalRule),
    /// σ-chain: {n}∪s(0)∪…∪s(n-1), s(i) ∈ B_{σ(s[i])}; rank (sup ladder)·ω.
    SigmaChain(ChainSpec),
    /// Maurey–Rosenthal barrier; rank ω².
    Mr(MrSpec),
    /// ℱ↾X; rank unchanged.
    Restrict(Box<BarrierExpr>, StreamSpec),
    /// Θ″ℱ along the order isomorphism base(ℱ) → target; rank unchanged.
    Transfer(Box<BarrierExpr>, StreamSpec),
    /// Child family minus the listed member sets (front-property fault
    /// injection for validation tests).
    Without(Box<BarrierExpr>, Vec<FiniteSet>),
    /// ⊑-closure of the child family (thinness fault injection).
    PrefixClosure(Box<BarrierExpr>),
}

/// Canonical ω^k-uniform family: W₀ = singletons, W_{k+1} = diagonal of
/// tensor powers of W_k.
pub fn omega_uniform(k: u32) -> BarrierExpr {
    if k == 0 {
        BarrierExpr::Power(1)
    } else {
        BarrierExpr::Diagonal(DiagonalRule::TensorPowers {
            inner: Box::new(omega_uniform(k - 1)),
        })
    }
}

/// The Schreier barrier {s : |s| = min(s)+1}.
pub fn schreier() -> BarrierExpr {
    BarrierExpr::Schreier(GrowthFn::Identity)
}

/// Outcome of an initial-segment search along a stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InitSegOutcome {
    Found(FiniteSet),
    /// Fuel ran out after consuming `consumed` elements; `partial` is the
    /// chain descended so far (truncated for very long walks).
    FuelExhausted { partial: FiniteSet, consumed: u64 },
    /// The descent completed but the set is not a member (possible only for
    /// fault-injected families): the stream has no initial segment.
    NoMember { consumed: FiniteSet },
}

/// Element feed for the structural descent: a fuel-metered iterator with a
/// stack of order-isomorphism pullbacks (one per Transfer node entered).
struct Feed<'a> {
    src: Box<dyn Iterator<Item = u32> + 'a>,
    fuel: u64,
    used: u64,
    log: Vec<u32>,
    maps: Vec<(StreamSpec, StreamSpec)>, // (outer stream, inner base)
    mismatch: bool,
}

impl<'a> Feed<'a> {
    fn new(src: impl Iterator<Item = u32> + 'a, fuel: u64) -> Self {
        Feed { src: Box::new(src), fuel, used: 0, log: Vec::new(), maps: Vec::new(), mismatch: false }
    }

    /// Next element as seen by the current node (after pullbacks).
    fn pull(&mut self) -> Option<u32> {
        if self.used >= self.fuel {
            return None;
        }
        let raw = self.src.next()?;
        self.used += 1;
        if self.log.len() < 1 << 16 {
            self.log.push(raw);
        }
        let mut v = raw;
        for (outer, inner) in &self.maps {
            match outer.index_of(v) {
                Some(i) => v = inner.nth(i),
                None => {
                    self.mismatch = true;
                    return None;
                }
            }
        }
        Some(v)
    }
}

impl BarrierExpr {
    /// The represented infinite set this family lives on.
    pub fn base_stream(&self) -> StreamSpec {
        match self {
            BarrierExpr::Restrict(_, x) => x.clone(),
            BarrierExpr::Transfer(_, y) => y.clone(),
            BarrierExpr::Tensor(b, _) => b.base_stream(),
            BarrierExpr::Oplus { f, .. } => f.base_stream(),
            BarrierExpr::Without(b, _) | BarrierExpr::PrefixClosure(b) => b.base_stream(),
            _ => StreamSpec::tail(0),
        }
    }

    /// Symbolic rank: the α for which the family is α-uniform on its base.
    pub fn rank(&self) -> Result<Ordinal, BarrierError> {
        match self {
            BarrierExpr::Zero => Ok(Ordinal::zero()),
            BarrierExpr::Power(k) => Ok(Ordinal::from_nat(*k)),
            BarrierExpr::Schreier(_) => Ok(Ordinal::omega()),
            BarrierExpr::Tensor(b, n) => Ok(b.rank()?.mul_nat(*n)),
            BarrierExpr::Oplus { f, g } => Ok(g.rank()?.add(&f.rank()?)),
            BarrierExpr::Diagonal(rule) => {
                let limit = rule.limit_rank()?;
                // Coherence with the limit definition: sampled child ranks
                // must strictly increase below the declared limit.
                let mut prev = rule.child(1).rank()?;
                for n in 2..=6u32 {
                    let r = rule.child(n).rank()?;
                    if r <= prev {
                        return Err(BarrierError::MalformedDiagonal(format!(
                            "child rank at {n} does not increase"
                        )));
                    }
                    if r >= limit {
                        return Err(BarrierError::MalformedDiagonal(format!(
                            "child rank at {n} reaches the declared limit"
                        )));
                    }
                    prev = r;
                }
                Ok(limit)
            }
            BarrierExpr::SigmaChain(spec) => Ok(spec.ladder.sup_rank()?.mul_omega()),
            BarrierExpr::Mr(_) => Ok(Ordinal::omega_pow_nat(2)),
            BarrierExpr::Restrict(b, _)
            | BarrierExpr::Transfer(b, _)
            | BarrierExpr::Without(b, _)
            | BarrierExpr::PrefixClosure(b) => b.rank(),
        }
    }

    /// Caveats attached to the symbolic rank, for reports.
    pub fn rank_flags(&self) -> Vec<String> {
        let mut flags = Vec::new();
        self.collect_flags(&mut flags);
        flags
    }

    fn collect_flags(&self, flags: &mut Vec<String>) {
        match self {
            BarrierExpr::Oplus { f, g } => {
                flags.push(
                    "oplus rank add(rank(g),rank(f)) is unverified-symbolic".to_string(),
                );
                f.collect_flags(flags);
                g.collect_flags(flags);
            }
            BarrierExpr::Mr(spec) => {
                flags.push(
                    "mr rank w^2 read off the sigma-determined block sizes; the fixed-family rank formula's hypotheses differ".to_string(),
                );
                if !spec.sigma.is_globally_injective() {
                    flags.push(format!("mr sigma: {}", spec.sigma.describe()));
                }
            }
            BarrierExpr::SigmaChain(spec) => {
                if matches!(spec.ladder, ChainLadder::DemoSquares) {
                    flags.push(
                        "demo ladder: weakly monotone child ranks (plateaus)".to_string(),
                    );
                }
                if !spec.sigma.is_globally_injective() {
                    flags.push(format!("sigmachain sigma: {}", spec.sigma.describe()));
                }
            }
            BarrierExpr::Without(b, _) => {
                flags.push("without node: front property broken by construction".to_string());
                b.collect_flags(flags);
            }
            BarrierExpr::PrefixClosure(b) => {
                flags.push("closure node: family is not thin; rank shown is the child's".to_string());
                b.collect_flags(flags);
            }
            BarrierExpr::Tensor(b, _) => b.collect_flags(flags),
            BarrierExpr::Diagonal(DiagonalRule::TensorPowers { inner }) => {
                inner.collect_flags(flags)
            }
            BarrierExpr::Restrict(b, _) | BarrierExpr::Transfer(b, _) => b.collect_flags(flags),
            _ => {}
        }
    }

    /// Structural descent: consume the unique member of the family that is
    /// an initial segment of the feed. Every constructor consumes exactly
    /// the elements of the member, so the feed log is the member itself.
    fn descend(&self, feed: &mut Feed) -> Result<(), ()> {
        match self {
            BarrierExpr::Zero => Ok(()),
            BarrierExpr::Power(k) => {
                for _ in 0..*k {
                    feed.pull().ok_or(())?;
                }
                Ok(())
            }
            BarrierExpr::Schreier(f) => {
                let m = feed.pull().ok_or(())?;
                for _ in 0..f.eval(m) {
                    feed.pull().ok_or(())?;
                }
                Ok(())
            }
            BarrierExpr::Tensor(b, n) => {
                for _ in 0..*n {
                    b.descend(feed)?;
                }
                Ok(())
            }
            BarrierExpr::Oplus { f, g } => {
                g.descend(feed)?;
                f.descend(feed)
            }
            BarrierExpr::Diagonal(rule) => {
                let n = feed.pull().ok_or(())?;
                rule.child(n).descend(feed)
            }
            BarrierExpr::SigmaChain(spec) => {
                let n = feed.pull().ok_or(())?;
                let mut history = vec![FiniteSet::singleton(n)];
                for _ in 0..n {
                    let idx = spec.sigma.index(&history);
                    let fam = spec.ladder.family_at(n, &idx);
                    let mark = feed.log.len();
                    fam.descend(feed)?;
                    let block = FiniteSet::new(feed.log[mark..].to_vec()).map_err(|_| ())?;
                    history.push(block);
                }
                Ok(())
            }
            BarrierExpr::Mr(spec) => {
                let n = feed.pull().ok_or(())?;
                let mut history = vec![FiniteSet::singleton(n)];
                for _ in 0..n {
                    let size = spec.block_size(&history);
                    let mark = feed.log.len();
                    match size.as_block_size() {
                        Some(sz) => {
                            for _ in 0..sz {
                                feed.pull().ok_or(())?;
                            }
                        }
                        None => {
                            // Block larger than anything materializable:
                            // drain until fuel or the stream gives out.
                            while feed.pull().is_some() {}
                            return Err(());
                        }
                    }
                    let block = FiniteSet::new(feed.log[mark..].to_vec()).map_err(|_| ())?;
                    history.push(block);
                }
                Ok(())
            }
            BarrierExpr::Restrict(b, x) => {
                // Elements fed from outside the restriction are a mismatch.
                let mark = feed.log.len();
                b.descend(feed)?;
                if feed.log[mark..].iter().any(|e| !x.contains(*e)) {
                    feed.mismatch = true;
                    return Err(());
                }
                Ok(())
            }
            BarrierExpr::Transfer(b, y) => {
                feed.maps.push((y.clone(), b.base_stream()));
                let r = b.descend(feed);
                feed.maps.pop();
                r
            }
            BarrierExpr::Without(b, _) => {
                // Membership postcheck happens in the callers; the descent
                // shape is the child's.
                b.descend(feed)
            }
            BarrierExpr::PrefixClosure(_) => {
                // ∅ is always a member of a ⊑-closure of a nonempty family.
                Ok(())
            }
        }
    }

    /// Is `s` a member? Elements outside the base set make this false, not
    /// an error.
    pub fn contains(&self, s: &FiniteSet) -> bool {
        if let BarrierExpr::PrefixClosure(b) = self {
            return b.prefix_extendable(s, 1 << 14);
        }
        if let BarrierExpr::Without(b, removed) = self {
            return b.contains(s) && !removed.iter().any(|r| r == s);
        }
        let mut feed = Feed::new(s.iter(), s.len() as u64 + 1);
        let ok = self.descend(&mut feed).is_ok();
        ok && !feed.mismatch && feed.log.len() == s.len()
    }

    /// Does some member of the family extend `s` as an initial segment
    /// (equivalently, is `s` in the ⊑-closure)? Decided by continuing the
    /// descent along the base set after the elements of `s`; `fuel` bounds
    /// the continuation.
    pub fn prefix_extendable(&self, s: &FiniteSet, fuel: u64) -> bool {
        let base = self.base_stream();
        if !s.iter().all(|e| base.contains(e)) {
            return false;
        }
        let max = s.max();
        let tail = base.iter().filter(move |v| Some(*v) > max);
        let mut feed = Feed::new(s.iter().chain(tail), s.len() as u64 + fuel);
        if self.descend(&mut feed).is_err() || feed.mismatch {
            return false;
        }
        // The member found must actually extend s (a shorter member means
        // s is already past a leaf and extends nothing).
        feed.log.len() >= s.len()
    }

    /// The unique member that is an initial segment of `x`, searched within
    /// `fuel` generated stream elements.
    pub fn initial_segment(&self, x: &StreamSpec, fuel: u64) -> InitSegOutcome {
        self.initial_segment_of_iter(x.iter(), fuel)
    }

    /// Initial segment along an arbitrary increasing element iterator.
    pub fn initial_segment_of_iter(
        &self,
        elems: impl Iterator<Item = u32>,
        fuel: u64,
    ) -> InitSegOutcome {
        // Peel fault-injection wrappers so the postcheck can run.
        if let BarrierExpr::Without(b, removed) = self {
            return match b.initial_segment_of_iter(elems, fuel) {
                InitSegOutcome::Found(s) if removed.iter().any(|r| *r == s) => {
                    InitSegOutcome::NoMember { consumed: s }
                }
                other => other,
            };
        }
        let mut feed = Feed::new(elems, fuel);
        let ok = self.descend(&mut feed).is_ok();
        let consumed = feed.used;
        let set = FiniteSet::new(feed.log.clone()).ok();
        match (ok && !feed.mismatch, set) {
            (true, Some(s)) => InitSegOutcome::Found(s),
            (_, set) => InitSegOutcome::FuelExhausted {
                partial: set.unwrap_or_else(FiniteSet::empty),
                consumed,
            },
        }
    }

    /// Conservative bound m such that members and closure relations of the
    /// truncation to {0..N} behave like the infinite family for every set
    /// with max(s) + m ≤ N. `None` means no certified zone (σ-determined
    /// families, fault-injection nodes).
    pub fn completion_margin(&self, n: u32) -> Option<u64> {
        match self {
            BarrierExpr::Zero => Some(0),
            BarrierExpr::Power(k) => Some(*k as u64),
            BarrierExpr::Schreier(f) => {
                (0..=n as u64 + 1).find(|m| f.eval(n.saturating_sub(*m as u32)) + 1 <= *m)
            }
            BarrierExpr::Tensor(b, k) => {
                b.completion_margin(n).map(|m| m.saturating_mul(*k as u64))
            }
            BarrierExpr::Oplus { f, g } => {
                Some(f.completion_margin(n)?.saturating_add(g.completion_margin(n)?))
            }
            BarrierExpr::Diagonal(rule) => {
                // Need child(min s) to complete within the margin; the worst
                // child index at play is N - m.
                (0..=n as u64 + 1).find(|m| {
                    rule.child(n.saturating_sub(*m as u32))
                        .completion_margin(n)
                        .map(|cm| cm + 1 <= *m)
                        .unwrap_or(false)
                })
            }
            BarrierExpr::SigmaChain(_) | BarrierExpr::Mr(_) => None,
            BarrierExpr::Restrict(b, x) => {
                let gap = x.max_gap_up_to(n) as u64;
                b.completion_margin(n).map(|m| m.saturating_mul(gap.max(1)))
            }
            BarrierExpr::Transfer(b, y) => {
                let gap = y.max_gap_up_to(n) as u64;
                b.completion_margin(n).map(|m| m.saturating_mul(gap.max(1)))
            }
            BarrierExpr::Without(_, _) => None,
            BarrierExpr::PrefixClosure(b) => b.completion_margin(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fset;
    use crate::qinterval::q;

    #[test]
    fn rank_examples() {
        assert_eq!(BarrierExpr::Power(3).rank().unwrap(), Ordinal::from_nat(3u32));
        assert_eq!(schreier().rank().unwrap(), Ordinal::omega());
        assert_eq!(
            BarrierExpr::Tensor(Box::new(schreier()), 2).rank().unwrap(),
            Ordinal::parse("w*2").unwrap()
        );
        assert_eq!(
            BarrierExpr::Mr(MrSpec::demo()).rank().unwrap(),
            Ordinal::parse("w^2").unwrap()
        );
        assert_eq!(omega_uniform(2).rank().unwrap(), Ordinal::parse("w^2").unwrap());
        assert_eq!(omega_uniform(3).rank().unwrap(), Ordinal::parse("w^3").unwrap());
    }

    #[test]
    fn oplus_rank_is_flagged() {
        let e = BarrierExpr::Oplus {
            f: Box::new(schreier()),
            g: Box::new(BarrierExpr::Power(1)),
        };
        // 1 + ω = ω under left absorption
        assert_eq!(e.rank().unwrap(), Ordinal::omega());
        assert!(e.rank_flags().iter().any(|f| f.contains("unverified-symbolic")));
    }

    #[test]
    fn malformed_diagonal_rejected() {
        let bad = BarrierExpr::Diagonal(DiagonalRule::TensorPowers {
            inner: Box::new(BarrierExpr::Zero),
        });
        assert!(bad.rank().is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(schreier().contains(&fset![2, 4, 7]));
        assert!(!schreier().contains(&fset![2, 4]));
        assert!(!schreier().contains(&fset![2, 4, 7, 9]));
        let t = BarrierExpr::Tensor(Box::new(BarrierExpr::Power(1)), 2);
        assert!(t.contains(&fset![3, 5]));
        assert!(!t.contains(&fset![3]));
        assert!(BarrierExpr::Zero.contains(&FiniteSet::empty()));
        assert!(!BarrierExpr::Zero.contains(&fset![0]));
    }

    #[test]
    fn contains_respects_base() {
        let evens = StreamSpec::arithmetic(0, 2).unwrap();
        let r = BarrierExpr::Restrict(Box::new(BarrierExpr::Power(2)), evens);
        assert!(r.contains(&fset![0, 4]));
        assert!(!r.contains(&fset![0, 3]));
    }

    #[test]
    fn transfer_contains() {
        // Power(2) transferred to the odds: members are 2-subsets of odds.
        let odds = StreamSpec::arithmetic(1, 2).unwrap();
        let t = BarrierExpr::Transfer(Box::new(BarrierExpr::Power(2)), odds);
        assert!(t.contains(&fset![1, 5]));
        assert!(!t.contains(&fset![1, 4]));
        // Schreier transferred to odds: size is determined by the pullback
        // position: 5 = odds[2] ⇒ pullback 2 ⇒ size 3.
        let odds = StreamSpec::arithmetic(1, 2).unwrap();
        let t = BarrierExpr::Transfer(Box::new(schreier()), odds);
        assert!(t.contains(&fset![5, 7, 9]));
        assert!(!t.contains(&fset![5, 7]));
    }

    #[test]
    fn initial_segment_examples() {
        let evens = StreamSpec::arithmetic(0, 2).unwrap();
        assert_eq!(
            schreier().initial_segment(&evens, 100),
            InitSegOutcome::Found(fset![0])
        );
        let odds = StreamSpec::arithmetic(1, 2).unwrap();
        assert_eq!(
            schreier().initial_segment(&odds, 100),
            InitSegOutcome::Found(fset![1, 3])
        );
    }

    #[test]
    fn mr_certified_exhausts_small_fuel() {
        let mr = BarrierExpr::Mr(MrSpec::certified(q(1, 2)).unwrap());
        let spec = match &mr {
            BarrierExpr::Mr(s) => s.clone(),
            _ => unreachable!(),
        };
        // first block size after root {1} is certified > 10³
        let first = spec.block_size(&[fset![1]]);
        assert!(first.gt_u64(1000));
        match mr.initial_segment(&StreamSpec::tail(1), 1000) {
            InitSegOutcome::FuelExhausted { consumed, .. } => assert_eq!(consumed, 1000),
            other => panic!("expected fuel exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn mr_demo_membership() {
        let mr = BarrierExpr::Mr(MrSpec::demo());
        // {0} has zero blocks
        assert!(mr.contains(&fset![0]));
        // min 1: one block of size least-m-above-1 = 4
        assert!(mr.contains(&fset![1, 2, 3, 4, 5]));
        assert!(!mr.contains(&fset![1, 2, 3, 4]));
        // min 2: block of 4 then block of least-m-above-max
        let mut v: Vec<u32> = vec![2];
        v.extend(3..7); // first block {3,4,5,6}, max 6 → next size 9
        v.extend(7..16);
        assert!(mr.contains(&FiniteSet::new(v.clone()).unwrap()));
        v.pop();
        assert!(!mr.contains(&FiniteSet::new(v).unwrap()));
    }

    #[test]
    fn diagonal_powers_matches_schreier() {
        let d = BarrierExpr::Diagonal(DiagonalRule::Powers);
        for s in [fset![0], fset![1, 2], fset![2, 4, 7], fset![3, 4, 5, 6]] {
            assert_eq!(d.contains(&s), schreier().contains(&s), "{s}");
        }
        assert_eq!(d.rank().unwrap(), Ordinal::omega());
    }

    #[test]
    fn without_and_closure_nodes() {
        let w = BarrierExpr::Without(Box::new(BarrierExpr::Power(2)), vec![fset![0, 1]]);
        assert!(!w.contains(&fset![0, 1]));
        assert!(w.contains(&fset![0, 2]));
        match w.initial_segment(&StreamSpec::tail(0), 100) {
            InitSegOutcome::NoMember { consumed } => assert_eq!(consumed, fset![0, 1]),
            other => panic!("expected NoMember, got {other:?}"),
        }

        let c = BarrierExpr::PrefixClosure(Box::new(schreier()));
        assert!(c.contains(&fset![1]));
        assert!(c.contains(&fset![1, 2]));
        assert!(!c.contains(&fset![1, 2, 3]));
        assert!(c.contains(&FiniteSet::empty()));
    }

    #[test]
    fn completion_margins() {
        assert_eq!(BarrierExpr::Power(2).completion_margin(12), Some(2));
        // identity Schreier at N=12: smallest m with (12-m)+1 ≤ m is 7
        assert_eq!(schreier().completion_margin(12), Some(7));
        let t = BarrierExpr::Tensor(Box::new(BarrierExpr::Power(1)), 3);
        assert_eq!(t.completion_margin(12), Some(3));
        assert_eq!(BarrierExpr::Mr(MrSpec::demo()).completion_margin(12), None);
    }

    #[test]
    fn sigma_chain_demo_membership() {
        let chain = BarrierExpr::SigmaChain(ChainSpec {
            ladder: ChainLadder::DemoSquares,
            sigma: SigmaCode::Compact,
        });
        // {0} has no blocks
        assert!(chain.contains(&fset![0]));
        // min 1: one block from Power(g(2)) with g(2)=(⌊log₂4⌋+2)²=16
        let mut v: Vec<u32> = vec![1];
        v.extend(2..18);
        assert!(chain.contains(&FiniteSet::new(v.clone()).unwrap()));
        v.pop();
        assert!(!chain.contains(&FiniteSet::new(v).unwrap()));
    }
}
