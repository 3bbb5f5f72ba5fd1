//! Lempel-Ziv factorizations (LZ77, LZ-End, C-factorization) together with
//! the period-doubling sequence machinery used to study how many more
//! phrases LZ-End needs than LZ77.
//!
//! The crate is organised bottom-up:
//!
//! * [`seqgen`] builds period-doubling words and the small combinatorial
//!   helpers (hat, rotations, primitivity, occurrence counting).
//! * [`factor`] computes the three factorizations with a direct-scan engine
//!   and a suffix-automaton engine, and decodes/validates the result.
//! * [`theory`] evaluates the closed forms for phrase counts and lengths.
//! * [`lab`] compares measurement against theory and runs the exhaustive
//!   ratio search.
//!
//! Positions are 0-based everywhere in this crate. Anything printed in the
//! 1-based convention is converted at the output boundary.

pub mod error;
pub mod factor;
pub mod lab;
pub mod report;
pub mod seqgen;
pub mod theory;

pub use error::{Error, Result};
pub use factor::{Engine, Factorization, Phrase, Scheme, SourceRef};
pub use report::VerificationReport;
pub use seqgen::{BinaryString, PdSequence};
