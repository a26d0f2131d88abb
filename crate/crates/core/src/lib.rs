//! Executable machinery for nonrepetitive (square-free) sequences.
//!
//! * [`words`]: alphabets, words, square detection, the ternary substitution.
//! * [`list_chooser`]: erase-on-repetition choice from lists, with its lossless log.
//! * [`games`]: the erase-repetition game, the nonrepetitive game and its
//!   backtracking search simulation, with randomized strategies for Ann and
//!   deterministic adversaries.
//! * [`codecs`]: lossless logs for the two games.
//! * [`walks`]: walk enumeration, generating series, discriminants and roots.
//! * [`session`]: interactive game sessions driven one adversary move at a time.

pub mod codecs;
pub mod error;
pub mod games;
pub mod list_chooser;
pub mod session;
pub mod walks;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, Repetition, Symbol, Word};
