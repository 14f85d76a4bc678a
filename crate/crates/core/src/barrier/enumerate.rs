//! Bounded enumeration: the restriction of a symbolic family to {0..N},
//! exactly, with combinatorial-explosion guards.

use serde::{Deserialize, Serialize};

use crate::family::FamilyExplicit;
use crate::set::FiniteSet;

use super::{BarrierError, BarrierExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumCaps {
    /// Abort when the output would exceed this many sets.
    pub max_sets: u64,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps { max_sets: 250_000 }
    }
}

/// Result of `enumerate_bounded`: the explicit truncation and the margin
/// within which boundary identities are certified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedEnum {
    pub family: FamilyExplicit,
    pub bound: u32,
    pub margin: Option<u64>,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u64::MAX,
        };
    }
    acc
}

struct Enumerator {
    caps: EnumCaps,
    produced: u64,
}

impl Enumerator {
    fn charge(&mut self, estimate: u64) -> Result<(), BarrierError> {
        if self.produced.saturating_add(estimate) > self.caps.max_sets {
            return Err(BarrierError::TooLarge {
                estimate: self.produced.saturating_add(estimate),
                cap: self.caps.max_sets,
            });
        }
        Ok(())
    }

    fn note(&mut self, count: usize) -> Result<(), BarrierError> {
        self.produced = self.produced.saturating_add(count as u64);
        if self.produced > self.caps.max_sets {
            return Err(BarrierError::TooLarge {
                estimate: self.produced,
                cap: self.caps.max_sets,
            });
        }
        Ok(())
    }

    /// k-subsets of `avail`.
    fn combinations(&mut self, avail: &[u32], k: usize) -> Result<Vec<Vec<u32>>, BarrierError> {
        self.charge(binomial(avail.len() as u64, k as u64))?;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(avail: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            let need = k - cur.len();
            for i in start..avail.len() {
                if avail.len() - i < need {
                    break;
                }
                cur.push(avail[i]);
                rec(avail, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(avail, k, 0, &mut cur, &mut out);
        self.note(out.len())?;
        Ok(out)
    }

    fn enum_in(&mut self, expr: &BarrierExpr, avail: &[u32]) -> Result<Vec<Vec<u32>>, BarrierError> {
        match expr {
            BarrierExpr::Zero => Ok(vec![Vec::new()]),
            BarrierExpr::Power(k) => self.combinations(avail, *k as usize),
            BarrierExpr::Schreier(f) => {
                let mut out = Vec::new();
                for (p, &m) in avail.iter().enumerate() {
                    let need = f.eval(m);
                    if need as usize > avail.len() - p - 1 {
                        continue;
                    }
                    for mut tail in self.combinations(&avail[p + 1..], need as usize)? {
                        let mut s = Vec::with_capacity(need as usize + 1);
                        s.push(m);
                        s.append(&mut tail);
                        out.push(s);
                    }
                }
                Ok(out)
            }
            BarrierExpr::Tensor(b, n) => {
                if *n == 0 {
                    return Ok(vec![Vec::new()]);
                }
                let blocks = self.enum_in(b, avail)?;
                if *n == 1 {
                    return Ok(blocks);
                }
                let mut out = Vec::new();
                for block in blocks {
                    if block.is_empty() {
                        // a thin family containing ∅ is {∅}; the only
                        // tuple is all-∅ with union ∅
                        out.push(Vec::new());
                        continue;
                    }
                    let hi = *block.last().unwrap();
                    let rest_avail: Vec<u32> =
                        avail.iter().copied().filter(|v| *v > hi).collect();
                    let rest = self.enum_in(&BarrierExpr::Tensor(b.clone(), n - 1), &rest_avail)?;
                    for r in rest {
                        let mut s = block.clone();
                        s.extend(r);
                        out.push(s);
                    }
                }
                self.note(0)?;
                Ok(dedup(out))
            }
            BarrierExpr::Oplus { f, g } => {
                let firsts = self.enum_in(g, avail)?;
                let mut out = Vec::new();
                for u in firsts {
                    let rest_avail: Vec<u32> = match u.last() {
                        Some(hi) => avail.iter().copied().filter(|v| v > hi).collect(),
                        None => avail.to_vec(),
                    };
                    for v in self.enum_in(f, &rest_avail)? {
                        let mut s = u.clone();
                        s.extend(v);
                        out.push(s);
                    }
                }
                Ok(dedup(out))
            }
            BarrierExpr::Diagonal(rule) => {
                let mut out = Vec::new();
                for (p, &m) in avail.iter().enumerate() {
                    let child = rule.child(m);
                    for mut tail in self.enum_in(&child, &avail[p + 1..])? {
                        let mut s = Vec::with_capacity(tail.len() + 1);
                        s.push(m);
                        s.append(&mut tail);
                        out.push(s);
                    }
                }
                Ok(out)
            }
            BarrierExpr::SigmaChain(spec) => {
                let mut out = Vec::new();
                for (p, &m) in avail.iter().enumerate() {
                    let history = vec![FiniteSet::singleton(m)];
                    self.chain_rec(spec, m, history, &avail[p + 1..], m as usize, &mut out)?;
                }
                Ok(out)
            }
            BarrierExpr::Mr(spec) => {
                let mut out = Vec::new();
                for (p, &m) in avail.iter().enumerate() {
                    let history = vec![FiniteSet::singleton(m)];
                    self.mr_rec(spec, history, &avail[p + 1..], m as usize, &mut out)?;
                }
                Ok(out)
            }
            BarrierExpr::Restrict(b, x) => {
                let filtered: Vec<u32> =
                    avail.iter().copied().filter(|v| x.contains(*v)).collect();
                self.enum_in(b, &filtered)
            }
            BarrierExpr::Transfer(b, y) => {
                let base = b.base_stream();
                let mut pairs = Vec::new(); // (base element, target element)
                for &v in avail {
                    if let Some(i) = y.index_of(v) {
                        pairs.push((base.nth(i), v));
                    }
                }
                let pulled: Vec<u32> = pairs.iter().map(|(b, _)| *b).collect();
                let results = self.enum_in(b, &pulled)?;
                let push = |e: u32| pairs.iter().find(|(b, _)| *b == e).map(|(_, t)| *t);
                Ok(results
                    .into_iter()
                    .map(|s| s.into_iter().filter_map(push).collect())
                    .collect())
            }
            BarrierExpr::Without(b, removed) => {
                let inner = self.enum_in(b, avail)?;
                Ok(inner
                    .into_iter()
                    .filter(|s| {
                        let set = FiniteSet::new(s.clone()).unwrap();
                        !removed.iter().any(|r| *r == set)
                    })
                    .collect())
            }
            BarrierExpr::PrefixClosure(b) => {
                // DFS over prefix-extendable sets within avail.
                let mut out = Vec::new();
                let mut cur: Vec<u32> = Vec::new();
                self.closure_rec(b, avail, 0, &mut cur, &mut out)?;
                Ok(out)
            }
        }
    }

    fn closure_rec(
        &mut self,
        b: &BarrierExpr,
        avail: &[u32],
        start: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) -> Result<(), BarrierError> {
        let set = FiniteSet::new(cur.clone()).unwrap();
        if !b.prefix_extendable(&set, 1 << 12) {
            return Ok(());
        }
        out.push(cur.clone());
        self.note(1)?;
        for i in start..avail.len() {
            cur.push(avail[i]);
            self.closure_rec(b, avail, i + 1, cur, out)?;
            cur.pop();
        }
        Ok(())
    }

    fn chain_rec(
        &mut self,
        spec: &super::ChainSpec,
        n: u32,
        history: Vec<FiniteSet>,
        avail: &[u32],
        blocks_left: usize,
        out: &mut Vec<Vec<u32>>,
    ) -> Result<(), BarrierError> {
        if blocks_left == 0 {
            let mut s: Vec<u32> = Vec::new();
            for h in &history {
                s.extend(h.iter());
            }
            out.push(s);
            self.note(1)?;
            return Ok(());
        }
        let idx = spec.sigma.index(&history);
        let fam = spec.ladder.family_at(n, &idx);
        for block in self.enum_in(&fam, avail)? {
            if block.is_empty() {
                continue;
            }
            let hi = *block.last().unwrap();
            let rest: Vec<u32> = avail.iter().copied().filter(|v| *v > hi).collect();
            let mut h2 = history.clone();
            h2.push(FiniteSet::new(block).unwrap());
            self.chain_rec(spec, n, h2, &rest, blocks_left - 1, out)?;
        }
        Ok(())
    }

    fn mr_rec(
        &mut self,
        spec: &super::MrSpec,
        history: Vec<FiniteSet>,
        avail: &[u32],
        blocks_left: usize,
        out: &mut Vec<Vec<u32>>,
    ) -> Result<(), BarrierError> {
        if blocks_left == 0 {
            let mut s: Vec<u32> = Vec::new();
            for h in &history {
                s.extend(h.iter());
            }
            out.push(s);
            self.note(1)?;
            return Ok(());
        }
        let size = spec.block_size(&history);
        let sz = match size.as_block_size() {
            Some(sz) if sz as usize <= avail.len() => sz as usize,
            _ => return Ok(()), // block cannot fit below the bound
        };
        for block in self.combinations(avail, sz)? {
            let hi = *block.last().unwrap();
            let rest: Vec<u32> = avail.iter().copied().filter(|v| *v > hi).collect();
            let mut h2 = history.clone();
            h2.push(FiniteSet::new(block).unwrap());
            self.mr_rec(spec, h2, &rest, blocks_left - 1, out)?;
        }
        Ok(())
    }
}

fn dedup(mut v: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    v.sort();
    v.dedup();
    v
}

impl BarrierExpr {
    /// Exactly {s in the family : s ⊆ {0..N}}, canonically ordered,
    /// together with the boundary margin for downstream invariant checks.
    pub fn enumerate_bounded(&self, n: u32, caps: &EnumCaps) -> Result<BoundedEnum, BarrierError> {
        let base = self.base_stream();
        let avail: Vec<u32> = base.iter().take_while(|v| *v <= n).collect();
        let mut e = Enumerator { caps: *caps, produced: 0 };
        let sets = e.enum_in(self, &avail)?;
        let family = FamilyExplicit::new(
            sets.into_iter().map(|v| FiniteSet::new(v).expect("members are increasing")),
        );
        Ok(BoundedEnum { family, bound: n, margin: self.completion_margin(n) })
    }
}

/// Independent brute-force oracle for truncations: all subsets of
/// {0..N} ∩ base filtered by `contains`. Exponential; N ≤ 20 or so.
pub fn brute_force_truncation(expr: &BarrierExpr, n: u32) -> FamilyExplicit {
    assert!(n <= 20, "brute force capped at N = 20");
    let base = expr.base_stream();
    let avail: Vec<u32> = base.iter().take_while(|v| *v <= n).collect();
    let avail = FiniteSet::new(avail).unwrap();
    FamilyExplicit::new(avail.subsets().into_iter().filter(|s| expr.contains(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barrier::{schreier, DiagonalRule, MrSpec};
    use crate::fset;

    #[test]
    fn power_enumeration() {
        let e = BarrierExpr::Power(2)
            .enumerate_bounded(3, &EnumCaps::default())
            .unwrap();
        assert_eq!(e.family.len(), 6);
        assert!(e.family.contains(&fset![0, 3]));
    }

    #[test]
    fn schreier_enumeration_matches_spec_example() {
        let e = schreier().enumerate_bounded(3, &EnumCaps::default()).unwrap();
        let expected = FamilyExplicit::new(vec![fset![0], fset![1, 2], fset![1, 3], fset![2, 3]]);
        // {2,3} has size 2 but min 2, so it is *not* a member; the expected
        // family is exactly three sets.
        assert!(!schreier().contains(&fset![2, 3]));
        let expected = FamilyExplicit::new(
            expected.iter().filter(|s| schreier().contains(s)).cloned(),
        );
        assert_eq!(e.family, expected);
        assert_eq!(e.family.len(), 3);
    }

    #[test]
    fn tensor_enumeration() {
        let t = BarrierExpr::Tensor(Box::new(BarrierExpr::Power(1)), 2);
        let e = t.enumerate_bounded(2, &EnumCaps::default()).unwrap();
        assert_eq!(
            e.family,
            FamilyExplicit::new(vec![fset![0, 1], fset![0, 2], fset![1, 2]])
        );
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        for expr in [
            schreier(),
            BarrierExpr::Power(3),
            BarrierExpr::Tensor(Box::new(BarrierExpr::Power(1)), 3),
            BarrierExpr::Tensor(Box::new(schreier()), 2),
            BarrierExpr::Diagonal(DiagonalRule::Powers),
            BarrierExpr::Mr(MrSpec::demo()),
            BarrierExpr::Oplus {
                f: Box::new(schreier()),
                g: Box::new(BarrierExpr::Power(1)),
            },
        ] {
            let n = 9;
            let fast = expr.enumerate_bounded(n, &EnumCaps::default()).unwrap().family;
            let slow = brute_force_truncation(&expr, n);
            assert_eq!(fast, slow, "{expr:?}");
        }
    }

    #[test]
    fn restricted_enumeration() {
        let evens = crate::stream::StreamSpec::arithmetic(0, 2).unwrap();
        let r = BarrierExpr::Restrict(Box::new(BarrierExpr::Power(2)), evens);
        let e = r.enumerate_bounded(5, &EnumCaps::default()).unwrap();
        assert_eq!(
            e.family,
            FamilyExplicit::new(vec![fset![0, 2], fset![0, 4], fset![2, 4]])
        );
    }

    #[test]
    fn transfer_enumeration() {
        let odds = crate::stream::StreamSpec::arithmetic(1, 2).unwrap();
        let t = BarrierExpr::Transfer(Box::new(schreier()), odds);
        let fast = t.enumerate_bounded(9, &EnumCaps::default()).unwrap().family;
        let slow = brute_force_truncation(&t, 9);
        assert_eq!(fast, slow);
        assert!(fast.contains(&fset![1]));
        assert!(fast.contains(&fset![3, 5]));
    }

    #[test]
    fn explosion_guard_trips() {
        let caps = EnumCaps { max_sets: 100 };
        let err = BarrierExpr::Power(8).enumerate_bounded(30, &caps).unwrap_err();
        match err {
            BarrierError::TooLarge { cap, .. } => assert_eq!(cap, 100),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn closure_enumeration() {
        let c = BarrierExpr::PrefixClosure(Box::new(schreier()));
        let e = c.enumerate_bounded(4, &EnumCaps::default()).unwrap();
        // ⊑-closure of Schreier = {s : |s| ≤ min(s)+1} within the bound,
        // plus every singleton-from-above prefix like {4}.
        assert!(e.family.contains(&FiniteSet::empty()));
        assert!(e.family.contains(&fset![1]));
        assert!(e.family.contains(&fset![1, 2]));
        assert!(!e.family.contains(&fset![1, 2, 3]));
        assert!(e.family.contains(&fset![4]));
        let slow = brute_force_truncation(&c, 4);
        assert_eq!(e.family, slow);
    }
}
