//! Fast-growing sequences of perfect squares with certified pairwise bounds.
//!
//! The certified profile uses m_i = 4^(2^(i+c)) with c chosen so that
//! Σ_{i≠j} min{(m_i/m_j)^{1/2}, (m_j/m_i)^{1/2}} ≤ ε/2, the bound computed
//! analytically in exact rationals (leading terms plus a geometric tail).
//! The demo profile uses m_i = (i+2)², which has no such certificate but
//! keeps every structural search materializable at desk scale.

use num::bigint::BigInt;
use num::{BigRational, BigUint, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qinterval::{Q, QInterval};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum MSeqError {
    #[error("certified profile requires 0 < eps < 1")]
    BadEps,
    #[error("eps too small for the desk-scale certificate search")]
    EpsTooSmall,
}

/// Roots larger than 2^EXACT_ROOT_BITS_CAP are not materialized; weights
/// are then reported as the interval (0, 2^-EXACT_ROOT_BITS_CAP].
pub const EXACT_ROOT_BITS_CAP: u64 = 4096;

/// One value m_i, always a perfect square, possibly too large to hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareMag {
    /// m = root², root materialized.
    Exact { root: BigUint },
    /// m = 4^(2^e) with 2^e > EXACT_ROOT_BITS_CAP; root = 2^(2^e).
    Huge { log2_log2_root: BigUint },
}

impl SquareMag {
    /// m > n?
    pub fn gt_u64(&self, n: u64) -> bool {
        match self {
            SquareMag::Exact { root } => root * root > BigUint::from(n),
            SquareMag::Huge { .. } => true,
        }
    }

    /// m as usize when it is small enough to be a block size we can hold.
    pub fn as_block_size(&self) -> Option<u64> {
        match self {
            SquareMag::Exact { root } => {
                let m = root * root;
                u64::try_from(&m).ok()
            }
            SquareMag::Huge { .. } => None,
        }
    }

    /// Enclosure of 1/√m = 1/root; exact whenever the root is materialized.
    pub fn inv_root(&self) -> QInterval {
        match self {
            SquareMag::Exact { root } => QInterval::exact(BigRational::new(
                BigInt::one(),
                BigInt::from(root.clone()),
            )),
            SquareMag::Huge { .. } => {
                let tiny = BigRational::new(
                    BigInt::one(),
                    BigInt::one() << (EXACT_ROOT_BITS_CAP as usize),
                );
                QInterval::new(Q::zero(), tiny)
            }
        }
    }

    /// Enclosure of 1/m; exact whenever the root is materialized.
    pub fn inv(&self) -> QInterval {
        let r = self.inv_root();
        r.mul(&r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Certified,
    Demo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MSequence {
    pub profile: Profile,
    /// Offset c of the certified profile (m_i = 4^(2^(i+c))).
    pub offset: u32,
    /// Requested ε (certified only).
    pub eps: Option<Q>,
    /// Proven upper bound for the pairwise min-ratio double sum.
    pub cert_bound: Option<Q>,
}

/// 2^(-2^k) as an exact rational. k is capped by callers.
fn inv_pow_pow(k: u32) -> Q {
    BigRational::new(BigInt::one(), BigInt::one() << (1usize << k))
}

/// Rigorous upper bound for Σ_{i≠j} min-ratio terms at offset c:
/// every pair i<j contributes (m_i/m_j)^{1/2} = 2^-(2^{j+c}-2^{i+c}) and the
/// exponent gap is ≥ 2^{c+j-1}, giving Σ ≤ 2·Σ_{j≥1} j·2^(-2^{c+j-1});
/// the term ratio is ≤ 1/2 for c ≥ 1 so the tail after J=3 is ≤ t_3.
fn pairwise_bound(c: u32) -> Q {
    let mut s = Q::zero();
    for j in 1u32..=3 {
        s += Q::from_integer(BigInt::from(j)) * inv_pow_pow(c + j - 1);
    }
    s += Q::from_integer(BigInt::from(3)) * inv_pow_pow(c + 2); // tail
    Q::from_integer(BigInt::from(2)) * s
}

impl MSequence {
    /// Certified profile: smallest c ≥ 3 whose proven bound is ≤ ε/2.
    /// (c ≥ 3 keeps m₀ = 4^(2^3) = 65536 > 10³, so desk-scale fuel always
    /// runs out before a certified block completes.)
    pub fn certified(eps: Q) -> Result<Self, MSeqError> {
        if eps <= Q::zero() || eps >= Q::one() {
            return Err(MSeqError::BadEps);
        }
        let half = &eps / Q::from_integer(BigInt::from(2));
        for c in 3u32..=16 {
            let bound = pairwise_bound(c);
            if bound <= half {
                return Ok(MSequence {
                    profile: Profile::Certified,
                    offset: c,
                    eps: Some(eps),
                    cert_bound: Some(bound),
                });
            }
        }
        Err(MSeqError::EpsTooSmall)
    }

    pub fn demo() -> Self {
        MSequence { profile: Profile::Demo, offset: 0, eps: None, cert_bound: None }
    }

    /// m_i.
    pub fn value(&self, i: &BigUint) -> SquareMag {
        match self.profile {
            Profile::Demo => SquareMag::Exact { root: i + BigUint::from(2u32) },
            Profile::Certified => {
                let e = i + BigUint::from(self.offset);
                // root = 2^(2^e); materialize only when 2^e ≤ cap bits.
                match u64::try_from(&e) {
                    Ok(e64) if e64 < 63 && (1u64 << e64) <= EXACT_ROOT_BITS_CAP => {
                        SquareMag::Exact { root: BigUint::one() << (1usize << e64) }
                    }
                    _ => SquareMag::Huge { log2_log2_root: e },
                }
            }
        }
    }

    /// Least m-value strictly above `x`, with its index.
    pub fn least_above(&self, x: u64) -> (BigUint, SquareMag) {
        match self.profile {
            Profile::Demo => {
                // smallest root r ≥ 2 with r² > x
                let mut r = (x as f64).sqrt() as u64;
                r = r.max(1);
                while r.checked_mul(r).map(|m| m <= x).unwrap_or(false) {
                    r += 1;
                }
                while r >= 3 && (r - 1) * (r - 1) > x {
                    r -= 1;
                }
                let r = r.max(2);
                let i = BigUint::from(r - 2);
                (i.clone(), self.value(&i))
            }
            Profile::Certified => {
                let mut i = BigUint::zero();
                loop {
                    let v = self.value(&i);
                    if v.gt_u64(x) {
                        return (i, v);
                    }
                    i += BigUint::one();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qinterval::q;

    #[test]
    fn demo_values() {
        let m = MSequence::demo();
        let v = m.value(&BigUint::from(0u32));
        assert_eq!(v.as_block_size(), Some(4));
        let v = m.value(&BigUint::from(3u32));
        assert_eq!(v.as_block_size(), Some(25));
        assert_eq!(m.least_above(3).1.as_block_size(), Some(4));
        assert_eq!(m.least_above(4).1.as_block_size(), Some(9));
        assert_eq!(m.least_above(16).1.as_block_size(), Some(25));
        assert_eq!(m.least_above(0).1.as_block_size(), Some(4));
    }

    #[test]
    fn certified_certificate() {
        let m = MSequence::certified(q(1, 2)).unwrap();
        assert!(m.cert_bound.clone().unwrap() <= q(1, 4));
        assert!(m.offset >= 3);
        // m₀ > 10³ by the offset floor
        assert!(m.value(&BigUint::zero()).gt_u64(1000));
        assert_eq!(MSequence::certified(q(0, 1)), Err(MSeqError::BadEps));
        assert_eq!(MSequence::certified(q(5, 1)), Err(MSeqError::BadEps));
    }

    #[test]
    fn certified_weights() {
        let m = MSequence::certified(q(1, 2)).unwrap();
        // small index: exact root
        let v = m.value(&BigUint::zero());
        let w = v.inv_root();
        assert!(w.is_exact());
        // the inverse root at index 0 with c≥3 is ≤ 2^-256
        assert!(w.hi <= BigRational::new(1.into(), num::BigInt::from(2u8).pow(256)));
        // large index: interval bound only
        let v = m.value(&BigUint::from(100u32));
        let w = v.inv_root();
        assert!(!w.is_exact());
        assert!(w.lo.is_zero() && w.hi > Q::zero());
    }

    #[test]
    fn pairwise_bound_decreases() {
        assert!(pairwise_bound(4) < pairwise_bound(3));
        // sanity: c=3 bound below 1/100
        assert!(pairwise_bound(3) < q(1, 100));
    }
}
