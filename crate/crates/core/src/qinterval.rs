//! Rational intervals with certified square roots.
//!
//! Square roots of nonnegative rationals are enclosed by intervals of width
//! ≤ 2^{-precision}, computed with integer square roots only — no floating
//! point anywhere. Perfect squares of rationals come back exact (width 0).

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::integer::Roots;
use num::{BigRational, BigUint, One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn q_from_str(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Closed interval of rationals. `lo == hi` means the value is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QInterval {
    pub lo: Q,
    pub hi: Q,
}

impl QInterval {
    pub fn exact(v: Q) -> Self {
        QInterval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        QInterval::exact(Q::zero())
    }

    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi);
        QInterval { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &QInterval) -> QInterval {
        QInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn scale(&self, c: &Q) -> QInterval {
        if c.is_negative() {
            QInterval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            QInterval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn mul(&self, other: &QInterval) -> QInterval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        QInterval { lo, hi }
    }

    pub fn neg(&self) -> QInterval {
        QInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    /// Interval |·|.
    pub fn abs(&self) -> QInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            QInterval {
                lo: Q::zero(),
                hi: self.hi.clone().max(-self.lo.clone()),
            }
        }
    }

    /// Certainly ≤ bound (the whole interval is).
    pub fn certainly_le(&self, bound: &Q) -> bool {
        self.hi <= *bound
    }

    /// Certainly ≥ bound.
    pub fn certainly_ge(&self, bound: &Q) -> bool {
        self.lo >= *bound
    }

    pub fn contains_value(&self, v: &Q) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    /// Total order by (hi, lo); used only for deterministic tie-breaking.
    pub fn cmp_key(&self, other: &QInterval) -> Ordering {
        self.hi.cmp(&other.hi).then_with(|| self.lo.cmp(&other.lo))
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a QInterval>) -> QInterval {
        let mut acc = QInterval::zero();
        for it in items {
            acc = acc.add(it);
        }
        acc
    }
}

impl fmt::Display for QInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", q_to_string(&self.lo))
        } else {
            write!(f, "[{}, {}]", q_to_string(&self.lo), q_to_string(&self.hi))
        }
    }
}

/// Enclosure of √x for x ≥ 0 with width ≤ 2^{-precision}; exact when x is
/// the square of a rational.
///
/// With x = p/q in lowest terms, √x = √(pq)/q. Let r = ⌊√(pq·4^t)⌋; then
/// r/(q·2^t) ≤ √x ≤ (r+1)/(q·2^t) and the width is 1/(q·2^t) ≤ 2^{-t}.
/// If pq·4^t is a perfect square the bounds coincide.
pub fn sqrt_enclosure(x: &Q, precision: u32) -> QInterval {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return QInterval::zero();
    }
    let p = x.numer().magnitude();
    let qd = x.denom().magnitude();
    let n: BigUint = p * qd;
    let scaled: BigUint = &n << (2 * precision as usize);
    let r = scaled.sqrt();
    let denom = BigInt::from(qd.clone()) << (precision as usize);
    let lo = BigRational::new(BigInt::from(r.clone()), denom.clone());
    if &r * &r == scaled {
        return QInterval::exact(lo);
    }
    let hi = BigRational::new(BigInt::from(r + BigUint::one()), denom);
    QInterval { lo, hi }
}

/// √x exactly when x is a perfect square of a rational, else None.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Q::zero());
    }
    let p = x.numer().magnitude();
    let d = x.denom().magnitude();
    let rp = p.sqrt();
    let rd = d.sqrt();
    if &rp * &rp == *p && &rd * &rd == *d {
        Some(BigRational::new(BigInt::from(rp), BigInt::from(rd)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_squares_are_exact() {
        let r = sqrt_enclosure(&q(1, 4), 20);
        assert!(r.is_exact());
        assert_eq!(r.lo, q(1, 2));
        let r = sqrt_enclosure(&q(9, 16), 5);
        assert_eq!(r.lo, q(3, 4));
        assert_eq!(sqrt_exact(&q(49, 9)), Some(q(7, 3)));
        assert_eq!(sqrt_exact(&q(2, 1)), None);
    }

    #[test]
    fn width_bound_holds() {
        for (n, d) in [(2i64, 1i64), (3, 7), (10, 3), (1, 3)] {
            for t in [4u32, 10, 30] {
                let x = q(n, d);
                let r = sqrt_enclosure(&x, t);
                assert!(r.width() <= q(1, 1 << t.min(62)), "width too large");
                // containment: lo² ≤ x ≤ hi²
                assert!(&r.lo * &r.lo <= x);
                assert!(&r.hi * &r.hi >= x);
            }
        }
    }

    #[test]
    fn interval_arithmetic() {
        let a = QInterval::new(q(1, 2), q(2, 3));
        let b = QInterval::new(q(-1, 3), q(1, 4));
        let s = a.add(&b);
        assert_eq!(s.lo, q(1, 6));
        assert_eq!(s.hi, q(11, 12));
        let m = a.scale(&q(-2, 1));
        assert_eq!(m.lo, q(-4, 3));
        assert_eq!(m.hi, q(-1, 1));
        assert!(a.certainly_le(&q(2, 3)));
        assert!(!a.certainly_le(&q(1, 2)));
    }

    #[test]
    fn rational_string_roundtrip() {
        let x = q(-22, 7);
        assert_eq!(q_from_str(&q_to_string(&x)), Some(x));
        assert_eq!(q_from_str("3"), Some(q(3, 1)));
        assert_eq!(q_from_str("1/0"), None);
    }
}
