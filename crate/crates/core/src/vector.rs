//! Finitely supported vectors with exact rational coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qinterval::{q_from_str, q_to_string, Q};
use crate::set::FiniteSet;

/// Sparse vector over ℚ indexed by naturals. Zero coordinates are never
/// stored, so equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VectorQ {
    coords: BTreeMap<u32, Q>,
}

impl VectorQ {
    pub fn zero() -> Self {
        VectorQ::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, Q)>) -> Self {
        let mut v = VectorQ::zero();
        for (i, c) in entries {
            v.add_to(i, c);
        }
        v
    }

    pub fn unit(i: u32) -> Self {
        VectorQ::from_entries([(i, Q::from_integer(1.into()))])
    }

    /// Indicator χ_s.
    pub fn indicator(s: &FiniteSet) -> Self {
        VectorQ::from_entries(s.iter().map(|i| (i, Q::from_integer(1.into()))))
    }

    /// c·χ_s.
    pub fn scaled_indicator(s: &FiniteSet, c: &Q) -> Self {
        VectorQ::from_entries(s.iter().map(|i| (i, c.clone())))
    }

    pub fn get(&self, i: u32) -> Q {
        self.coords.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: u32, v: Q) {
        if v.is_zero() {
            self.coords.remove(&i);
        } else {
            self.coords.insert(i, v);
        }
    }

    pub fn add_to(&mut self, i: u32, v: Q) {
        let cur = self.get(i);
        self.set(i, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn support(&self) -> FiniteSet {
        FiniteSet::new(self.coords.keys().copied().collect()).unwrap()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Q)> {
        self.coords.iter().map(|(i, c)| (*i, c))
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &VectorQ) -> VectorQ {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_to(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> VectorQ {
        if c.is_zero() {
            return VectorQ::zero();
        }
        VectorQ {
            coords: self.coords.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn dot(&self, other: &VectorQ) -> Q {
        // Iterate the smaller support.
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Q::zero();
        for (i, c) in small.iter() {
            if let Some(d) = large.coords.get(&i) {
                acc += c * d;
            }
        }
        acc
    }

    /// Σ_{i∈s} x(i), the pairing ⟨x, s⟩ against an indicator.
    pub fn sum_over(&self, s: &FiniteSet) -> Q {
        s.iter().map(|i| self.get(i)).fold(Q::zero(), |a, b| a + b)
    }

    /// Restriction to a set: coordinates outside are dropped.
    pub fn restrict(&self, s: &FiniteSet) -> VectorQ {
        VectorQ {
            coords: self
                .coords
                .iter()
                .filter(|(i, _)| s.contains(**i))
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    /// Restriction to the initial interval [0, m].
    pub fn restrict_interval(&self, m: u32) -> VectorQ {
        VectorQ {
            coords: self
                .coords
                .range(..=m)
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    pub fn linf(&self) -> Q {
        self.coords
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }

    pub fn l1(&self) -> Q {
        self.coords.values().map(|c| c.abs()).fold(Q::zero(), |a, b| a + b)
    }
}

impl fmt::Display for VectorQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, c)) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{}", q_to_string(c))?;
        }
        write!(f, "]")
    }
}

// JSON wire form: {"coords": [[index, "p/q"], ...]}
impl Serialize for VectorQ {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            coords: Vec<(u32, String)>,
            #[serde(skip)]
            _p: std::marker::PhantomData<&'a ()>,
        }
        let coords = self
            .coords
            .iter()
            .map(|(i, c)| (*i, q_to_string(c)))
            .collect();
        Wire { coords, _p: std::marker::PhantomData }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for VectorQ {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            coords: Vec<(u32, String)>,
        }
        let w = Wire::deserialize(de)?;
        let mut v = VectorQ::zero();
        for (i, s) in w.coords {
            let c = q_from_str(&s)
                .ok_or_else(|| D::Error::custom(format!("bad rational `{s}`")))?;
            v.add_to(i, c);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fset;
    use crate::qinterval::q;

    #[test]
    fn basic_ops() {
        let mut x = VectorQ::zero();
        x.set(3, q(1, 2));
        x.set(7, q(-2, 3));
        assert_eq!(x.support(), fset![3, 7]);
        assert_eq!(x.get(7), q(-2, 3));
        assert_eq!(x.linf(), q(2, 3));
        assert_eq!(x.l1(), q(7, 6));
        x.add_to(3, q(-1, 2));
        assert_eq!(x.support(), fset![7]);
    }

    #[test]
    fn dot_and_restrict() {
        let x = VectorQ::from_entries([(0, q(1, 1)), (2, q(3, 1))]);
        let y = VectorQ::from_entries([(2, q(1, 3)), (5, q(9, 1))]);
        assert_eq!(x.dot(&y), q(1, 1));
        assert_eq!(x.restrict(&fset![2, 5]), VectorQ::from_entries([(2, q(3, 1))]));
        assert_eq!(x.restrict_interval(1), VectorQ::from_entries([(0, q(1, 1))]));
        assert_eq!(x.sum_over(&fset![0, 2]), q(4, 1));
    }

    #[test]
    fn json_roundtrip() {
        let x = VectorQ::from_entries([(0, q(1, 1)), (4, q(-5, 7))]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"coords":[[0,"1/1"],[4,"-5/7"]]}"#);
        let back: VectorQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
