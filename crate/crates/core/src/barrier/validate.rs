//! Sampled front/Sperner validation.
//!
//! The front property of a symbolic family is Π¹₁, so it is only ever
//! *sampled*: seeded pseudorandom streams inside the base set must all have
//! an initial segment, and everything found — plus a bounded enumeration —
//! must be pairwise ⊑- and ⊆-incomparable.

use serde::{Deserialize, Serialize};

use crate::family::FamilyExplicit;
use crate::rng::SplitMix64;
use crate::set::FiniteSet;

use super::{BarrierError, BarrierExpr, EnumCaps, InitSegOutcome};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontViolation {
    pub kind: String,
    pub trial: Option<u64>,
    pub witness: Vec<FiniteSet>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontReport {
    pub trials: u64,
    pub seed: u64,
    pub fuel: u64,
    pub enum_bound: u32,
    pub found: u64,
    pub fuel_exhausted: u64,
    pub no_member: u64,
    pub enumerated: usize,
    pub violations: Vec<FrontViolation>,
    pub pass: bool,
}

/// Walk the base set with seeded index jumps: a pseudorandom infinite
/// subset of the base. Trial 0 is the base itself (gap 1), which keeps the
/// canonical counterexamples reachable.
fn trial_stream<'a>(
    base: &'a crate::stream::StreamSpec,
    rng: SplitMix64,
    trial: u64,
) -> impl Iterator<Item = u32> + 'a {
    let mut rng = rng;
    let mut idx: u64 = 0;
    let mut first = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
        } else {
            idx += if trial == 0 { 1 } else { rng.range(1, 4) };
        }
        if trial != 0 && first {
            idx = rng.below(3);
        }
        Some(base.nth(idx as usize))
    })
}

impl BarrierExpr {
    /// Sampled validation: `trials` seeded streams (plus the canonical
    /// base stream as trial 0), each searched for an initial segment with
    /// `fuel`; all findings and the enumeration to `enum_bound` checked for
    /// pairwise thin/Sperner violations.
    pub fn validate_front(
        &self,
        trials: u64,
        seed: u64,
        fuel: u64,
        enum_bound: u32,
        caps: &EnumCaps,
    ) -> Result<FrontReport, BarrierError> {
        let base = self.base_stream();
        let root = SplitMix64::new(seed);
        let mut found: Vec<FiniteSet> = Vec::new();
        let mut violations = Vec::new();
        let mut fuel_exhausted = 0;
        let mut no_member = 0;

        for trial in 0..trials {
            let rng = root.fork(trial);
            let stream = trial_stream(&base, rng, trial);
            match self.initial_segment_of_iter(stream, fuel) {
                InitSegOutcome::Found(s) => found.push(s),
                InitSegOutcome::FuelExhausted { partial, .. } => {
                    fuel_exhausted += 1;
                    violations.push(FrontViolation {
                        kind: "fuel-exhausted".into(),
                        trial: Some(trial),
                        witness: vec![partial.prefix(16)],
                    });
                }
                InitSegOutcome::NoMember { consumed } => {
                    no_member += 1;
                    violations.push(FrontViolation {
                        kind: "front-violation".into(),
                        trial: Some(trial),
                        witness: vec![consumed],
                    });
                }
            }
        }

        let enumerated = self.enumerate_bounded(enum_bound, caps)?;
        let mut pool = FamilyExplicit::new(
            found.iter().cloned().chain(enumerated.family.iter().cloned()),
        );
        // Uniqueness of sampled segments is the same check: a second
        // comparable member would be a thin violation.
        let report = pool.sperner_thin();
        if let Some((a, b)) = report.witness.clone() {
            let kind = if report.is_thin { "sperner-violation" } else { "thin-violation" };
            violations.push(FrontViolation {
                kind: kind.into(),
                trial: None,
                witness: vec![a, b],
            });
        }
        // Determinism: violations in construction order, pool discarded.
        pool = FamilyExplicit::empty();
        let _ = pool;

        let pass = violations.is_empty();
        Ok(FrontReport {
            trials,
            seed,
            fuel,
            enum_bound,
            found: found.len() as u64,
            fuel_exhausted,
            no_member,
            enumerated: enumerated.family.len(),
            violations,
            pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barrier::schreier;
    use crate::fset;

    #[test]
    fn schreier_validates() {
        let r = schreier()
            .validate_front(50, 42, 10_000, 12, &EnumCaps::default())
            .unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.found, 50);
        assert_eq!(r.fuel_exhausted, 0);
    }

    #[test]
    fn removed_member_breaks_the_front() {
        let broken = BarrierExpr::Without(
            Box::new(BarrierExpr::Power(2)),
            vec![fset![0, 1]],
        );
        let r = broken
            .validate_front(10, 7, 1000, 8, &EnumCaps::default())
            .unwrap();
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.kind == "front-violation"));
    }

    #[test]
    fn closure_breaks_thinness() {
        let closed = BarrierExpr::PrefixClosure(Box::new(schreier()));
        let r = closed
            .validate_front(5, 3, 1000, 6, &EnumCaps::default())
            .unwrap();
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.kind == "thin-violation"));
    }
}
