//! Exact arithmetic for candidate Puiseux pairs of cuspidal plane curves.
//!
//! The crate is `no_std` and only needs `alloc`. It is organised bottom-up:
//!
//! - [`semigroup`]: two-generator numerical semigroups, the counting functions
//!   `R` and `I`, and infimum convolution of gap functions.
//! - [`obstruction`]: the semigroup distribution test for a curve of given
//!   degree and genus, with a lexicographically first violation witness.
//! - [`quadring`]: the ring of integers of `Q(sqrt 5)` and the generalized
//!   Pell equation `x^2 - 5y^2 = n`.
//! - [`families`]: Fibonacci and Lucas numbers, the pair/ring-element
//!   correspondence, unit orbits and Cremona step bookkeeping.
//! - [`classify`]: genus-wise enumeration of candidates, sectors and the
//!   known exceptional families.
//! - [`germs`]: truncated power series used to check local intersection
//!   multiplicities of explicit germs.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod classify;
pub mod error;
pub mod families;
pub mod germs;
pub mod obstruction;
pub mod quadring;
pub mod semigroup;

pub use classify::{EnumerationReport, ExceptionFamily, Sector};
pub use error::{Error, Result};
pub use families::{Candidate, LucasSeq};
pub use germs::{BivariatePoly, GermRecord, PowerSeries};
pub use obstruction::{ObstructionWitness, Side, Verdict};
pub use quadring::{PellDecomposition, QuadInt, Surd};
pub use semigroup::{GapFunction, Semigroup};
