//! Injective codes on finite block sequences.
//!
//! A σ-code maps a history — a block sequence (s₀, …, s_k) of nonempty
//! finite sets — to a natural number strictly above max s_k. Two flavors:
//!
//! * [`SigmaCode::Canonical`] — fully injective. Each set becomes its
//!   indicator value Σ 2^i, the sequence is folded through the Cantor
//!   pairing, tagged with its length, and paired once more against the
//!   max of the last block. Values explode quickly; they are only ever
//!   compared or used as exponent indices, never enumerated.
//! * [`SigmaCode::Compact`] — desk-scale code: `max(⋃ history) + 1`.
//!   Strictly increasing along any decomposition chain (each block pushes
//!   the max up), hence injective on every chain, but not globally
//!   injective; reports must flag it.
//!
//! The hidden `ModTampered` flavor exists for fault-injection tests only.

use num::{BigUint, One};
use serde::{Deserialize, Serialize};

use crate::set::FiniteSet;

/// Cantor pairing (a,b) ↦ (a+b)(a+b+1)/2 + b, bijective ℕ²→ℕ.
pub fn cantor_pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + BigUint::one())) / BigUint::from(2u32) + b
}

fn indicator_code(s: &FiniteSet) -> BigUint {
    let mut acc = BigUint::default();
    for i in s.iter() {
        acc |= BigUint::one() << (i as usize);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaCode {
    Canonical,
    Compact,
    /// Canonical code reduced mod a small modulus — deliberately
    /// non-injective, for tamper tests.
    #[doc(hidden)]
    ModTampered,
}

impl SigmaCode {
    /// σ(history) ∈ ℕ. History sets must be nonempty and block-ordered;
    /// the result is strictly greater than max of the last set.
    pub fn index(&self, history: &[FiniteSet]) -> BigUint {
        assert!(!history.is_empty(), "sigma of an empty history");
        assert!(
            history.iter().all(|s| !s.is_empty()),
            "history sets must be nonempty"
        );
        let max_last = BigUint::from(history.last().unwrap().max().unwrap());
        match self {
            SigmaCode::Compact => {
                let overall = history.iter().filter_map(|s| s.max()).max().unwrap();
                BigUint::from(overall) + BigUint::one()
            }
            SigmaCode::Canonical => {
                let mut enc = indicator_code(&history[0]);
                for s in &history[1..] {
                    enc = cantor_pair(&enc, &indicator_code(s));
                }
                let tagged = cantor_pair(&BigUint::from(history.len()), &enc);
                cantor_pair(&tagged, &max_last)
            }
            SigmaCode::ModTampered => {
                let honest = SigmaCode::Canonical.index(history);
                let m = BigUint::from(7u32);
                &max_last + BigUint::one() + (honest % m)
            }
        }
    }

    pub fn is_globally_injective(&self) -> bool {
        matches!(self, SigmaCode::Canonical)
    }

    /// Provenance string for reports.
    pub fn describe(&self) -> &'static str {
        match self {
            SigmaCode::Canonical => "canonical (injective)",
            SigmaCode::Compact => "chain-local (demo)",
            SigmaCode::ModTampered => "tampered (fault injection)",
        }
    }
}
