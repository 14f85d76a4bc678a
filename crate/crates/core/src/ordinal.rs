//! Exact ordinal arithmetic in Cantor normal form below ε₀.
//!
//! An [`Ordinal`] is a sum `ω^{e₀}·c₀ + ω^{e₁}·c₁ + …` with strictly
//! decreasing exponents (themselves ordinals) and coefficients ≥ 1. The empty
//! sum is 0. Representation is unique, so structural equality is ordinal
//! equality. Exponent nesting is capped (`MAX_EXPONENT_DEPTH`): the ranks
//! produced by the barrier algebra never get anywhere near ε₀, and the cap
//! turns runaway inputs into a clear error instead of unbounded recursion.
//!
//! Text syntax: `w^{E}*c + …` with `w` for ω. Simple natural exponents may
//! drop the braces, exponent 1 may drop the `^`, coefficient 1 drops the
//! `*c`. Examples: `w^2*3 + w + 4`, `w^{w}`, `0`. Printing and parsing
//! round-trip exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::{BigUint, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Maximum exponent nesting accepted by constructors and the parser.
pub const MAX_EXPONENT_DEPTH: usize = 8;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum OrdinalError {
    #[error("exponent nesting deeper than {MAX_EXPONENT_DEPTH}")]
    TooDeep,
    #[error("decompose is undefined for 0")]
    DecomposeZero,
    #[error("ordinal parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}

/// Cantor-normal-form ordinal below ε₀.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ordinal {
    /// `(exponent, coefficient)` pairs, highest exponent first.
    terms: Vec<(Ordinal, BigUint)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from_nat(1u32)
    }

    pub fn from_nat<T: Into<BigUint>>(n: T) -> Self {
        let n: BigUint = n.into();
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(Ordinal::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Ordinal { terms: vec![(Ordinal::one(), BigUint::one())] }
    }

    /// ω^e. Fails only when the exponent is nested too deeply.
    pub fn omega_pow(e: Ordinal) -> Result<Self, OrdinalError> {
        let o = Ordinal { terms: vec![(e, BigUint::one())] };
        o.check_depth()?;
        Ok(o)
    }

    /// ω^k for a natural k; depth is always fine.
    pub fn omega_pow_nat(k: u32) -> Self {
        if k == 0 {
            Ordinal::one()
        } else {
            Ordinal { terms: vec![(Ordinal::from_nat(k), BigUint::one())] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff `self` = ω^β for some β (single term, coefficient 1).
    /// Note 1 = ω⁰ is indecomposable; 0 is not.
    pub fn is_indecomposable(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    /// Natural value when the ordinal is finite.
    pub fn as_nat(&self) -> Option<BigUint> {
        match self.terms.len() {
            0 => Some(BigUint::zero()),
            1 if self.terms[0].0.is_zero() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> &[(Ordinal, BigUint)] {
        &self.terms
    }

    fn depth(&self) -> usize {
        self.terms.iter().map(|(e, _)| 1 + e.depth()).max().unwrap_or(0)
    }

    fn check_depth(&self) -> Result<(), OrdinalError> {
        if self.depth() > MAX_EXPONENT_DEPTH {
            Err(OrdinalError::TooDeep)
        } else {
            Ok(())
        }
    }

    /// Ordinal sum. Non-commutative: terms of `self` strictly below the
    /// leading exponent of `rhs` are absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        if rhs.is_zero() {
            return self.clone();
        }
        let lead = &rhs.terms[0].0;
        let mut terms: Vec<(Ordinal, BigUint)> = self
            .terms
            .iter()
            .filter(|(e, _)| e > lead)
            .cloned()
            .collect();
        let mut rhs_terms = rhs.terms.clone();
        // Merge coefficients when self still carries the leading exponent.
        if let Some((e, c)) = self.terms.iter().find(|(e, _)| e == lead) {
            rhs_terms[0].1 = &rhs_terms[0].1 + c;
            let _ = e;
        }
        terms.extend(rhs_terms);
        Ordinal { terms }
    }

    /// Right multiplication by a natural: `a·n` (so `a·2 = a + a`).
    pub fn mul_nat<T: Into<BigUint>>(&self, n: T) -> Ordinal {
        let n: BigUint = n.into();
        if n.is_zero() || self.is_zero() {
            return Ordinal::zero();
        }
        // a·n = ω^{e₀}·(c₀·n) + (rest of a) for n ≥ 1.
        let mut terms = self.terms.clone();
        terms[0].1 = &terms[0].1 * &n;
        Ordinal { terms }
    }

    /// Splits α ≥ 1 as the pair (γ, n) with γ = ω^β the maximal
    /// indecomposable ordinal ≤ α and γ·n ≤ α < γ·(n+1).
    pub fn decompose(&self) -> Result<(Ordinal, BigUint), OrdinalError> {
        if self.is_zero() {
            return Err(OrdinalError::DecomposeZero);
        }
        let (e0, c0) = &self.terms[0];
        let gamma = Ordinal { terms: vec![(e0.clone(), BigUint::one())] };
        Ok((gamma, c0.clone()))
    }

    /// Fundamental-sequence step for limit ordinals: a strictly increasing
    /// sequence approaching `self`. Used to pick diagonal child ranks.
    /// `self` must be a limit (nonzero, last exponent > 0).
    pub fn fundamental(&self, n: u32) -> Option<Ordinal> {
        let (last_e, last_c) = self.terms.last()?;
        if last_e.is_zero() {
            return None; // successor, not a limit
        }
        let mut prefix = self.clone();
        prefix.terms.pop();
        let reduced = if last_c > &BigUint::one() {
            prefix = prefix.add(&Ordinal {
                terms: vec![(last_e.clone(), last_c - 1u32)],
            });
            Ordinal { terms: vec![(last_e.clone(), BigUint::one())] }
        } else {
            Ordinal { terms: vec![(last_e.clone(), BigUint::one())] }
        };
        // reduced = ω^{last_e}; step down its exponent.
        let e = &reduced.terms[0].0;
        let step = if let Some(pred) = e.predecessor() {
            // ω^{β+1}[n] = ω^β·n
            Ordinal::omega_pow(pred).ok()?.mul_nat(n)
        } else {
            // ω^{λ}[n] = ω^{λ[n]} for limit λ
            Ordinal::omega_pow(e.fundamental(n)?).ok()?
        };
        Some(prefix.add(&step))
    }

    /// Ordinal product with ω on the right: α·ω = ω^{e₀+1} where e₀ is the
    /// leading exponent (0·ω = 0).
    pub fn mul_omega(&self) -> Ordinal {
        match self.terms.first() {
            None => Ordinal::zero(),
            Some((e, _)) => {
                let e1 = e.add(&Ordinal::one());
                Ordinal::omega_pow(e1).expect("depth grows by at most one")
            }
        }
    }

    /// β for `self` = β + 1, when `self` is a successor.
    pub fn predecessor(&self) -> Option<Ordinal> {
        let (last_e, last_c) = self.terms.last()?;
        if !last_e.is_zero() {
            return None;
        }
        let mut o = self.clone();
        if last_c.is_one() {
            o.terms.pop();
        } else {
            o.terms.last_mut().unwrap().1 = last_c - 1u32;
        }
        Some(o)
    }

    /// Parse with the default depth cap.
    pub fn parse(s: &str) -> Result<Self, OrdinalError> {
        s.parse()
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.1.cmp(&b.1) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if e == &Ordinal::one() {
                write!(f, "w")?;
            } else if let Some(n) = e.as_nat() {
                write!(f, "w^{n}")?;
            } else {
                write!(f, "w^{{{e}}}")?;
            }
            if !c.is_one() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, OrdinalError> {
        Err(OrdinalError::Parse { at: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigUint, OrdinalError> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn ordinal(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.pos += 1;
                self.skip_ws();
                let t = self.term()?;
                acc = acc.add(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        self.skip_ws();
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    if self.peek() == Some(b'{') {
                        self.pos += 1;
                        let e = self.ordinal()?;
                        self.skip_ws();
                        if self.peek() != Some(b'}') {
                            return self.err("expected '}'");
                        }
                        self.pos += 1;
                        e
                    } else {
                        Ordinal::from_nat(self.number()?)
                    }
                } else {
                    Ordinal::one()
                };
                let coeff = if self.peek() == Some(b'*') {
                    self.pos += 1;
                    let c = self.number()?;
                    if c.is_zero() {
                        return self.err("coefficient must be >= 1");
                    }
                    c
                } else {
                    BigUint::one()
                };
                Ok(Ordinal { terms: vec![(exp, coeff)] })
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_nat(self.number()?)),
            _ => self.err("expected 'w' or a number"),
        }
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { input: s.as_bytes(), pos: 0 };
        let o = p.ordinal()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        o.check_depth()?;
        Ok(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert!(Ordinal::omega() > Ordinal::from_nat(5u32));
        assert_eq!(ord("w").add(&ord("w")), Ordinal::omega().mul_nat(2u32));
        assert!(ord("w^{w}") > ord("w^3"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(Ordinal::omega().add(&Ordinal::one()), ord("w + 1"));
        assert_eq!(Ordinal::one().add(&Ordinal::omega()), ord("w"));
        assert_eq!(ord("w^2 + w").add(&ord("w^2")), ord("w^2*2"));
    }

    #[test]
    fn mul_nat_examples() {
        assert_eq!(Ordinal::omega().mul_nat(3u32), ord("w*3"));
        let a = ord("w^2 + w*2");
        assert_eq!(a.mul_nat(2u32), ord("w^2*2 + w*2"));
        // repeated-add oracle
        assert_eq!(a.mul_nat(2u32), a.add(&a));
        assert_eq!(Ordinal::zero().mul_nat(5u32), Ordinal::zero());
    }

    #[test]
    fn decompose_examples() {
        let (g, n) = ord("w*3 + 2").decompose().unwrap();
        assert_eq!(g, Ordinal::omega());
        assert_eq!(n, BigUint::from(3u32));
        let (g, n) = ord("w").decompose().unwrap();
        assert_eq!((g, n), (Ordinal::omega(), BigUint::one()));
        let (g, n) = ord("7").decompose().unwrap();
        assert_eq!((g, n), (Ordinal::one(), BigUint::from(7u32)));
        assert_eq!(Ordinal::zero().decompose(), Err(OrdinalError::DecomposeZero));
    }

    #[test]
    fn decompose_postconditions() {
        for s in ["1", "4", "w", "w*5 + 3", "w^2*2 + w + 9", "w^{w}*4 + w^2"] {
            let a = ord(s);
            let (g, n) = a.decompose().unwrap();
            assert!(g.is_indecomposable(), "{s}");
            assert!(g.mul_nat(n.clone()) <= a, "{s}");
            assert!(a < g.mul_nat(n + 1u32), "{s}");
        }
    }

    #[test]
    fn indecomposable() {
        assert!(ord("1").is_indecomposable());
        assert!(ord("w").is_indecomposable());
        assert!(ord("w^{w}").is_indecomposable());
        assert!(!ord("w*2").is_indecomposable());
        assert!(!ord("w + 1").is_indecomposable());
        assert!(!Ordinal::zero().is_indecomposable());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "4", "w", "w*3", "w^2*3 + w + 4", "w^{w}", "w^{w + 1}*2 + w^3 + 1"] {
            let o = ord(s);
            assert_eq!(o.to_string(), s);
            assert_eq!(ord(&o.to_string()), o);
        }
    }

    #[test]
    fn depth_cap() {
        // Build ω^ω^…^ω nine levels deep; parse must reject it.
        let mut s = String::from("w");
        for _ in 0..MAX_EXPONENT_DEPTH {
            s = format!("w^{{{s}}}");
        }
        assert_eq!(Ordinal::parse(&s), Err(OrdinalError::TooDeep));
    }

    #[test]
    fn fundamental_sequences() {
        // ω[n] = n
        assert_eq!(Ordinal::omega().fundamental(3), Some(ord("3")));
        // ω²[n] = ω·n
        assert_eq!(ord("w^2").fundamental(4), Some(ord("w*4")));
        // ω^ω[n] = ω^n
        assert_eq!(ord("w^{w}").fundamental(3), Some(ord("w^3")));
        // ω·2[n] = ω + n
        assert_eq!(ord("w*2").fundamental(5), Some(ord("w + 5")));
        // successors have none
        assert_eq!(ord("w + 1").fundamental(3), None);
    }

    #[test]
    fn fundamental_is_increasing_below() {
        for s in ["w", "w^2", "w^{w}", "w^2*3", "w^{w}*2 + w^2"] {
            let a = ord(s);
            let mut prev = Ordinal::zero();
            for n in 1..6 {
                let f = a.fundamental(n).unwrap();
                assert!(f < a);
                assert!(f >= prev);
                prev = f;
            }
        }
    }
}
