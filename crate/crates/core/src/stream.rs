//! Deterministic generators for infinite strictly increasing subsets of ℕ.
//!
//! A [`StreamSpec`] stands in for an infinite set M: it can be walked
//! lazily, asked for membership, and inverted (position of an element).
//! Pseudorandom streams are seeded SplitMix64, so a spec value pins the set.
//!
//! Text syntax: `tail(n)`, `arithmetic(a,d)`, `prefix([a,b,...],n)`,
//! `pseudorandom(seed,maxgap)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::SplitMix64;
use crate::set::FiniteSet;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum StreamError {
    #[error("stream parse error: {0}")]
    Parse(String),
    #[error("prefix must precede the tail start")]
    PrefixOverlapsTail,
    #[error("arithmetic step must be >= 1")]
    ZeroStep,
    #[error("pseudorandom max gap must be >= 1")]
    ZeroGap,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StreamSpec {
    /// All naturals ≥ `start`.
    Tail { start: u32 },
    /// `start, start+step, start+2·step, …`
    Arithmetic { start: u32, step: u32 },
    /// Explicit increasing prefix, then every natural ≥ `tail_from`.
    Prefix { prefix: FiniteSet, tail_from: u32 },
    /// Seeded stream with gaps in `1..=max_gap` drawn from SplitMix64.
    Pseudorandom { seed: u64, max_gap: u32 },
}

impl StreamSpec {
    pub fn tail(start: u32) -> Self {
        StreamSpec::Tail { start }
    }

    pub fn arithmetic(start: u32, step: u32) -> Result<Self, StreamError> {
        if step == 0 {
            return Err(StreamError::ZeroStep);
        }
        Ok(StreamSpec::Arithmetic { start, step })
    }

    pub fn prefix(prefix: FiniteSet, tail_from: u32) -> Result<Self, StreamError> {
        if let Some(mx) = prefix.max() {
            if mx >= tail_from {
                return Err(StreamError::PrefixOverlapsTail);
            }
        }
        Ok(StreamSpec::Prefix { prefix, tail_from })
    }

    pub fn pseudorandom(seed: u64, max_gap: u32) -> Result<Self, StreamError> {
        if max_gap == 0 {
            return Err(StreamError::ZeroGap);
        }
        Ok(StreamSpec::Pseudorandom { seed, max_gap })
    }

    pub fn iter(&self) -> StreamIter {
        StreamIter::new(self.clone())
    }

    pub fn first(&self) -> u32 {
        self.iter().next().expect("streams are infinite")
    }

    /// Membership. Decidable for every kind; pseudorandom streams generate
    /// until they pass `n`.
    pub fn contains(&self, n: u32) -> bool {
        match self {
            StreamSpec::Tail { start } => n >= *start,
            StreamSpec::Arithmetic { start, step } => {
                n >= *start && (n - start) % step == 0
            }
            StreamSpec::Prefix { prefix, tail_from } => {
                n >= *tail_from || prefix.contains(n)
            }
            StreamSpec::Pseudorandom { .. } => {
                for v in self.iter() {
                    if v == n {
                        return true;
                    }
                    if v > n {
                        return false;
                    }
                }
                unreachable!()
            }
        }
    }

    /// Position of `n` in the stream, if present.
    pub fn index_of(&self, n: u32) -> Option<usize> {
        self.iter().take_while(|v| *v <= n).position(|v| v == n)
    }

    pub fn nth(&self, i: usize) -> u32 {
        self.iter().nth(i).expect("streams are infinite")
    }

    /// Elements of the stream that are ≤ `bound`.
    pub fn up_to(&self, bound: u32) -> FiniteSet {
        FiniteSet::new(self.iter().take_while(|v| *v <= bound).collect()).unwrap()
    }

    /// Largest gap between consecutive elements at or below `bound`,
    /// including the leading gap from 0. Used for margin arithmetic.
    pub fn max_gap_up_to(&self, bound: u32) -> u32 {
        match self {
            StreamSpec::Tail { start } => (*start).max(1),
            StreamSpec::Arithmetic { start, step } => (*start).max(*step),
            StreamSpec::Prefix { prefix, tail_from } => {
                let mut prev = 0i64;
                let mut gap = 0i64;
                for v in prefix.iter() {
                    gap = gap.max(v as i64 - prev);
                    prev = v as i64;
                }
                gap = gap.max(*tail_from as i64 - prev);
                (gap.max(1)) as u32
            }
            StreamSpec::Pseudorandom { max_gap, .. } => {
                let mut prev = 0i64;
                let mut gap = 1i64;
                for v in self.iter().take_while(|v| *v <= bound) {
                    gap = gap.max(v as i64 - prev);
                    prev = v as i64;
                }
                gap.max(*max_gap as i64) as u32
            }
        }
    }

    /// Is every element of `self` an element of `other`? Exact for
    /// structured kinds; pseudorandom inclusions are checked on a finite
    /// window and otherwise rejected.
    pub fn subset_of(&self, other: &StreamSpec) -> bool {
        match (self, other) {
            (_, StreamSpec::Tail { start }) => self.first() >= *start,
            (StreamSpec::Tail { .. }, _) => false,
            (
                StreamSpec::Arithmetic { start: a, step: d },
                StreamSpec::Arithmetic { start: b, step: e },
            ) => a >= b && d % e == 0 && (a - b) % e == 0,
            _ => {
                // Conservative finite check: first 512 elements.
                self.iter().take(512).all(|v| other.contains(v))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, StreamError> {
        let t = text.trim();
        let (name, args) = split_call(t).ok_or_else(|| {
            StreamError::Parse(format!("expected kind(args), got `{t}`"))
        })?;
        let nums = |s: &str| -> Result<Vec<u64>, StreamError> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|_| StreamError::Parse(format!("bad number `{p}`")))
                })
                .collect()
        };
        match name {
            "tail" => {
                let v = nums(args)?;
                if v.len() != 1 {
                    return Err(StreamError::Parse("tail(n)".into()));
                }
                Ok(StreamSpec::tail(v[0] as u32))
            }
            "arithmetic" => {
                let v = nums(args)?;
                if v.len() != 2 {
                    return Err(StreamError::Parse("arithmetic(a,d)".into()));
                }
                StreamSpec::arithmetic(v[0] as u32, v[1] as u32)
            }
            "pseudorandom" => {
                let v = nums(args)?;
                if v.len() != 2 {
                    return Err(StreamError::Parse("pseudorandom(seed,maxgap)".into()));
                }
                StreamSpec::pseudorandom(v[0], v[1] as u32)
            }
            "prefix" => {
                // prefix([a,b,...],n)
                let inner = args.trim();
                let close = inner
                    .find(']')
                    .ok_or_else(|| StreamError::Parse("prefix([..],n)".into()))?;
                if !inner.starts_with('[') {
                    return Err(StreamError::Parse("prefix([..],n)".into()));
                }
                let list = &inner[1..close];
                let rest = inner[close + 1..].trim_start_matches(',').trim();
                let elems: Vec<u32> = if list.trim().is_empty() {
                    Vec::new()
                } else {
                    list.split(',')
                        .map(|p| {
                            p.trim().parse::<u32>().map_err(|_| {
                                StreamError::Parse(format!("bad element `{p}`"))
                            })
                        })
                        .collect::<Result<_, _>>()?
                };
                let tail_from: u32 = rest
                    .parse()
                    .map_err(|_| StreamError::Parse("prefix tail start".into()))?;
                let prefix = FiniteSet::new(elems)
                    .map_err(|e| StreamError::Parse(e.to_string()))?;
                StreamSpec::prefix(prefix, tail_from)
            }
            other => Err(StreamError::Parse(format!("unknown stream kind `{other}`"))),
        }
    }
}

pub(crate) fn split_call(t: &str) -> Option<(&str, &str)> {
    let open = t.find('(')?;
    if !t.ends_with(')') {
        return None;
    }
    Some((&t[..open], &t[open + 1..t.len() - 1]))
}

impl std::fmt::Display for StreamSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StreamSpec::Tail { start } => write!(f, "tail({start})"),
            StreamSpec::Arithmetic { start, step } => write!(f, "arithmetic({start},{step})"),
            StreamSpec::Prefix { prefix, tail_from } => {
                let elems: Vec<String> = prefix.iter().map(|e| e.to_string()).collect();
                write!(f, "prefix([{}],{tail_from})", elems.join(","))
            }
            StreamSpec::Pseudorandom { seed, max_gap } => {
                write!(f, "pseudorandom({seed},{max_gap})")
            }
        }
    }
}

pub struct StreamIter {
    spec: StreamSpec,
    pos: usize,
    next: u64,
    rng: Option<SplitMix64>,
}

impl StreamIter {
    fn new(spec: StreamSpec) -> Self {
        let (next, rng) = match &spec {
            StreamSpec::Tail { start } => (*start as u64, None),
            StreamSpec::Arithmetic { start, .. } => (*start as u64, None),
            StreamSpec::Prefix { prefix, tail_from } => {
                let first = prefix.min().map(|m| m as u64).unwrap_or(*tail_from as u64);
                (first, None)
            }
            StreamSpec::Pseudorandom { seed, max_gap } => {
                let mut rng = SplitMix64::new(*seed);
                let first = rng.below(*max_gap as u64);
                (first, Some(rng))
            }
        };
        StreamIter { spec, pos: 0, next, rng }
    }
}

impl Iterator for StreamIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let current = self.next;
        if current > u32::MAX as u64 {
            return None; // practical end of the representable range
        }
        match &self.spec {
            StreamSpec::Tail { .. } => self.next = current + 1,
            StreamSpec::Arithmetic { step, .. } => self.next = current + *step as u64,
            StreamSpec::Prefix { prefix, tail_from } => {
                let within = prefix.as_slice();
                self.next = if self.pos + 1 < within.len() {
                    within[self.pos + 1] as u64
                } else if self.pos + 1 == within.len() {
                    *tail_from as u64
                } else {
                    current + 1
                };
            }
            StreamSpec::Pseudorandom { max_gap, .. } => {
                let g = self.rng.as_mut().unwrap().range(1, *max_gap as u64);
                self.next = current + g;
            }
        }
        self.pos += 1;
        Some(current as u32)
    }
}
