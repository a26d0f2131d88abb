//! Alphabets, words and square detection.
//!
//! Symbols are dense integers `0..C`. Textual forms render symbol `k` either
//! as the digit `k + 1` (alphabets of at most nine symbols) or as the letter
//! `'a' + k` (at most 26 symbols). Positions in [`Repetition`] are 1-based.

mod squares;
mod thue;
mod tracker;

pub use squares::{
    all_suffix_squares, first_square_quadratic, has_square_at, is_nonrepetitive,
    is_nonrepetitive_from, min_square_at_least, oracle_min_square, shortest_suffix_square,
};
pub use thue::{thue_substitute, thue_word, THUE_IMAGES};
pub use tracker::SquareTracker;

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Symbol = u8;

/// Largest alphabet with a textual rendering.
pub const MAX_DISPLAY_ALPHABET: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > Symbol::MAX as usize + 1 {
            return Err(Error::InvalidArgument(format!(
                "alphabet size must be in 1..=256, got {size}"
            )));
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.size
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.size).map(|s| s as Symbol)
    }

    pub fn check(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().find(|&&s| !self.contains(s)) {
            Some(&s) => Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                size: self.size,
            }),
            None => Ok(()),
        }
    }

    /// Preferred rendering for words over this alphabet.
    pub fn notation(&self) -> Notation {
        if self.size <= 9 {
            Notation::Digits
        } else {
            Notation::Letters
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Notation {
    /// `1..=9`
    Digits,
    /// `a..=z`
    Letters,
}

impl Notation {
    pub fn render_symbol(self, s: Symbol) -> Option<char> {
        match self {
            Notation::Digits if s < 9 => Some((b'1' + s) as char),
            Notation::Letters if (s as usize) < MAX_DISPLAY_ALPHABET => Some((b'a' + s) as char),
            _ => None,
        }
    }

    pub fn parse_symbol(self, c: char) -> Option<Symbol> {
        match self {
            Notation::Digits if ('1'..='9').contains(&c) => Some(c as u8 - b'1'),
            Notation::Letters if c.is_ascii_lowercase() => Some(c as u8 - b'a'),
            _ => None,
        }
    }

    /// Picks digits when they can express every symbol, else letters.
    pub fn for_symbols(w: &[Symbol]) -> Notation {
        if w.iter().all(|&s| s < 9) {
            Notation::Digits
        } else {
            Notation::Letters
        }
    }
}

/// A finite sequence of symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    /// Parses either notation; the notation is detected from the first symbol.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let notation = match text.chars().next() {
            None => return Ok(Self::new()),
            Some(c) if c.is_ascii_digit() => Notation::Digits,
            Some(_) => Notation::Letters,
        };
        Self::parse_with(text, notation)
    }

    pub fn parse_with(text: &str, notation: Notation) -> Result<Self> {
        text.trim()
            .chars()
            .map(|c| {
                notation.parse_symbol(c).ok_or_else(|| Error::Parse {
                    what: "word",
                    detail: format!("unexpected character {c:?} in {text:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn render(&self, notation: Notation) -> Result<String> {
        self.0
            .iter()
            .map(|&s| {
                notation.render_symbol(s).ok_or(Error::SymbolOutOfRange {
                    symbol: s as usize,
                    size: match notation {
                        Notation::Digits => 9,
                        Notation::Letters => MAX_DISPLAY_ALPHABET,
                    },
                })
            })
            .collect()
    }

    /// Renders with [`Notation::for_symbols`]; symbols beyond `z` are an error.
    pub fn to_text(&self) -> Result<String> {
        self.render(Notation::for_symbols(&self.0))
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Self(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text() {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{:?}", self.0),
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let text = self.to_text().map_err(serde::ser::Error::custom)?;
        serializer.serialize_str(&text)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Word::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Reads a word file: one word per line, blank lines ignored.
pub fn parse_word_lines(text: &str) -> Result<Vec<Word>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(Word::parse)
        .collect()
}

/// A square `xx` with `|x| = half`, ending at 1-based position `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Repetition {
    pub end: usize,
    pub half: usize,
}

impl Repetition {
    /// 1-based position of the first symbol of the square.
    pub fn start(&self) -> usize {
        self.end + 1 - 2 * self.half
    }

    /// The full square `xx` as it appears in `w`.
    pub fn square<'a>(&self, w: &'a [Symbol]) -> &'a [Symbol] {
        &w[self.start() - 1..self.end]
    }

    /// Whether this repetition actually occurs in `w`.
    pub fn holds_in(&self, w: &[Symbol]) -> bool {
        self.half >= 1 && self.end >= 2 * self.half && self.end <= w.len() && {
            let sq = self.square(w);
            sq[..self.half] == sq[self.half..]
        }
    }
}
