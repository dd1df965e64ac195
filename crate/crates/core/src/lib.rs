//! Exact incidence-algebra computations on F-denominated graded posets.
//!
//! A graded poset is a chain of bipartite layers glued level to level. From
//! it this crate builds the zeta, Möbius, cover, reflexive-cover and [Max]
//! matrices over unbounded integers, the per-level coding matrix of the
//! cobweb Möbius function, and brute-force chain enumerations used to check
//! the closed forms.

pub mod chains;
pub mod error;
pub mod fsequence;
pub mod incidence;
pub mod matrix;
pub mod poset;

pub use chains::{Chain, ChainSet, CountMethod, HyperBoxPoint, DEFAULT_ENUMERATION_CAP};
pub use error::{Error, Result};
pub use fsequence::{AdmissibilityReport, FNomialValue, Sequence, SequenceKind};
pub use incidence::{CodingMatrix, KrotonValue, MobiusMode};
pub use matrix::{BitMatrix, IncidenceMatrix, IntMatrix};
pub use poset::{Block, GradedPoset, NodeRef};
