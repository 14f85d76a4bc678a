//! Executable combinatorics of uniform barriers on ℕ and the conditional
//! norms they generate.
//!
//! The crate has five layers:
//!
//! * [`ordinal`] — exact Cantor-normal-form ordinal arithmetic below ε₀,
//!   used for all symbolic ranks.
//! * [`family`] / [`set`] — explicit finite families of finite integer sets
//!   with the full calculus of closures, traces, restrictions, Sperner/thin
//!   checks and tree ranks.
//! * [`barrier`] — a symbolic algebra of uniform families on represented
//!   infinite sets ([`stream::StreamSpec`]): ranks, membership, initial
//!   segments, bounded enumeration, and sampled front validation.
//! * [`means`] — internal mean assignments on barriers with certified
//!   √-pairing bounds, and ladders of such assignments.
//! * [`conspace`] / [`saturation`] — the Maurey–Rosenthal space and its
//!   generalizations with an exact branch-and-bound norm engine, plus the
//!   support-family / ladder-norm / dichotomy machinery that extracts
//!   c₀-like block sequences from explicit compacta.
//!
//! Everything is exact: rationals throughout, interval enclosures for
//! square roots, and a single seed driving every sampled check. The `cli`
//! module exposes each layer as a subcommand of one binary; `repro` runs
//! the whole acceptance suite.

pub mod cli;
pub mod conspace;
pub mod family;
pub mod barrier;
pub mod means;
pub mod mseq;
pub mod ordinal;
pub mod qinterval;
pub mod report;
pub mod repro;
pub mod rng;
pub mod saturation;
pub mod set;
pub mod sigma;
pub mod stream;
pub mod vector;

pub use family::FamilyExplicit;
pub use ordinal::Ordinal;
pub use set::FiniteSet;
pub use stream::StreamSpec;
pub use vector::VectorQ;
