//! Decision procedures and constructions for lattice-ordered groups.
//!
//! * [`term`]: term language, parsing, printing and join-of-meets normal form.
//! * [`freedec`]: word problem of free ℓ-groups via diagrams.
//! * [`perm`]: piecewise-linear order-permutations of ℚ, supports and conjugators.
//! * [`wreath`]: cardinal sums and wreath products over a word-problem oracle.
//! * [`present`]: presentations, meet-string numbering and semi-decision.

pub mod freedec;
pub mod lgroup;
pub mod perm;
pub mod present;
pub mod sample;
pub mod term;
pub mod wreath;

pub use freedec::{decide, Decision, Sign, Verdict};
pub use term::{parse, Alphabet, Generator, LTerm};
