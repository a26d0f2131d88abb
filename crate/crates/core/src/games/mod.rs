//! Two-player games on words: Ann extends the word with a randomized
//! strategy, Ben answers with a deterministic one.
//!
//! * Erase-repetition game: whenever a square appears at the end, its second
//!   half is erased and play continues.
//! * Nonrepetitive game: no erasures; the first square of half at least 2 is
//!   a win for Ben.
//! * Search simulation: the nonrepetitive game replayed with backtracking,
//!   erasing each square of half at least 2 as it appears.

mod ann;
mod ben;
mod erase;
mod nonrep;
mod search;

pub use ann::{
    ann_erase_move, ann_nonrep_move, erase_allowed, nonrep_allowed, AnnChooser, RandomAnn,
    ScriptedAnn,
};
pub use ben::{make_ben, Ben, ScriptedTable};
pub use erase::{play_erase_game, EraseOutcome, EraseStatus};
pub use nonrep::{play_nonrep_game, NonrepOutcome, NonrepResult};
pub use search::{
    classify_segments, run_search_simulation, SearchOutcome, SearchStatus, SearchStep,
    SearchTrace, Segment, SegmentCase,
};

use serde::{Deserialize, Serialize};

use crate::words::{Repetition, SquareTracker, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mover {
    Ann,
    Ben,
}

impl Mover {
    /// Ann moves on even lengths (and on odd move numbers).
    pub fn for_length(len: usize) -> Mover {
        if len.is_multiple_of(2) {
            Mover::Ann
        } else {
            Mover::Ben
        }
    }

    pub fn for_move_index(index: usize) -> Mover {
        Mover::for_length(index)
    }
}

/// One move of a real game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveRecord {
    pub mover: Mover,
    pub symbol: Symbol,
    /// Half of the square erased (erase game) or completed (nonrepetitive
    /// game) by this move, 0 if none.
    #[serde(rename = "h")]
    pub erased: usize,
    /// Word length after the move, including its erasure.
    pub height: usize,
}

/// The instrumented course of an erase-repetition game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTrace {
    pub alphabet: usize,
    pub moves: Vec<MoveRecord>,
    pub word: Word,
    #[serde(default)]
    pub multiple_suffix_squares: usize,
}

impl GameTrace {
    pub fn ann_choices(&self) -> Vec<Symbol> {
        self.moves
            .iter()
            .filter(|m| m.mover == Mover::Ann)
            .map(|m| m.symbol)
            .collect()
    }

    pub fn ann_moves(&self) -> usize {
        self.moves.iter().filter(|m| m.mover == Mover::Ann).count()
    }

    pub fn heights(&self) -> Vec<usize> {
        self.moves.iter().map(|m| m.height).collect()
    }
}

/// The word being built, with the square bookkeeping every game shares.
#[derive(Debug, Clone, Default)]
pub(crate) struct Board {
    pub(crate) tracker: SquareTracker,
    pub(crate) multiple_suffix_squares: usize,
}

impl Board {
    /// Appends `s`; returns the shortest square of half `>= h_min` now
    /// ending at the last position, erasing its second half if `erase`.
    pub(crate) fn append(&mut self, s: Symbol, h_min: usize, erase: bool) -> Option<Repetition> {
        self.tracker.push(s);
        let rep = self.tracker.shortest_suffix_square(h_min)?;
        if self.tracker.suffix_squares(h_min).len() > 1 {
            self.multiple_suffix_squares += 1;
        }
        if erase {
            self.tracker.erase(rep);
        }
        Some(rep)
    }

    pub(crate) fn symbols(&self) -> &[Symbol] {
        self.tracker.symbols()
    }

    pub(crate) fn len(&self) -> usize {
        self.tracker.len()
    }
}
