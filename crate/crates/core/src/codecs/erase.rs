use serde::{Deserialize, Serialize};

use super::{check_prefix_sums, undo_step};
use crate::error::{Error, Result};
use crate::games::{erase_allowed, Ben, GameTrace, Mover};
use crate::words::{SquareTracker, Symbol, Word};

/// Length changes of the good moves (moves that did not just complete a
/// square of half 1), the final word, and Ann's move count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ReducedJson", into = "ReducedJson")]
pub struct ReducedGameLog {
    pub diffs: Vec<i64>,
    pub final_word: Word,
    pub ann_moves: usize,
}

#[derive(Serialize, Deserialize)]
struct ReducedJson {
    d: Vec<i64>,
    s: Word,
    m: usize,
}

impl TryFrom<ReducedJson> for ReducedGameLog {
    type Error = Error;

    fn try_from(j: ReducedJson) -> Result<Self> {
        ReducedGameLog::new(j.d, j.s, j.m)
    }
}

impl From<ReducedGameLog> for ReducedJson {
    fn from(l: ReducedGameLog) -> Self {
        Self {
            d: l.diffs,
            s: l.final_word,
            m: l.ann_moves,
        }
    }
}

impl ReducedGameLog {
    /// Checks `|d| <= 2M`, `d_j` in `{1, -3, -4, ..}`, prefix sums `>= 1`,
    /// and that the differences add up to the final length.
    pub fn new(diffs: Vec<i64>, final_word: Word, ann_moves: usize) -> Result<Self> {
        if diffs.len() > 2 * ann_moves {
            return Err(Error::MalformedLog(format!(
                "{} good moves but only {ann_moves} Ann moves",
                diffs.len()
            )));
        }
        if let Some(bad) = diffs.iter().find(|&&d| d != 1 && d > -3) {
            return Err(Error::MalformedLog(format!("difference {bad} not in {{1,-3,-4,..}}")));
        }
        check_prefix_sums(&diffs)?;
        if diffs.iter().sum::<i64>() != final_word.len() as i64 {
            return Err(Error::MalformedLog(
                "differences do not add up to the final length".into(),
            ));
        }
        Ok(Self {
            diffs,
            final_word,
            ann_moves,
        })
    }
}

/// Drops the zero differences of bad moves (Ben repeating the last symbol).
pub fn encode_erase_log(trace: &GameTrace) -> ReducedGameLog {
    let diffs = trace
        .moves
        .iter()
        .map(|m| 1 - m.erased as i64)
        .filter(|&d| d != 0)
        .collect();
    ReducedGameLog {
        diffs,
        final_word: trace.word.clone(),
        ann_moves: trace.ann_moves(),
    }
}

/// Recovers Ann's symbols from a reduced log played against `ben`.
pub fn decode_erase_log(log: &ReducedGameLog, ben: &Ben, alphabet: usize) -> Result<Vec<Symbol>> {
    let log = ReducedGameLog::new(log.diffs.clone(), log.final_word.clone(), log.ann_moves)?;
    let mut word = log.final_word.to_vec();
    let mut good = Vec::with_capacity(log.diffs.len());
    for (j, &d) in log.diffs.iter().enumerate().rev() {
        good.push(undo_step(&mut word, d, j + 1)?);
    }
    if !word.is_empty() {
        return Err(Error::MalformedLog("symbols left before the first move".into()));
    }
    good.reverse();

    let mut board = SquareTracker::new();
    let mut ann = Vec::with_capacity(log.ann_moves);
    let mut next_good = 0;
    let mut mv = 0;
    while next_good < good.len() {
        let mover = Mover::for_move_index(mv);
        mv += 1;
        let expected = good[next_good];
        match mover {
            Mover::Ben => {
                let b = ben.respond(board.symbols(), alphabet);
                if board.last() == Some(b) {
                    continue;
                }
                if b != expected {
                    return Err(Error::BenMismatch {
                        mv,
                        expected: expected as usize,
                        actual: b as usize,
                    });
                }
            }
            Mover::Ann => {
                if !erase_allowed(board.symbols(), alphabet).contains(&expected) {
                    return Err(Error::MalformedLog(format!(
                        "move {mv}: Ann cannot play {expected}"
                    )));
                }
                ann.push(expected);
            }
        }
        let before = board.len() as i64;
        board.push(expected);
        if let Some(rep) = board.shortest_suffix_square(1) {
            board.erase(rep);
        }
        if board.len() as i64 - before != log.diffs[next_good] {
            return Err(Error::MalformedLog(format!(
                "move {mv}: replay changes the length by {} but the log says {}",
                board.len() as i64 - before,
                log.diffs[next_good]
            )));
        }
        next_good += 1;
    }
    if ann.len() != log.ann_moves {
        return Err(Error::MalformedLog(format!(
            "replay has {} Ann moves, the log {}",
            ann.len(),
            log.ann_moves
        )));
    }
    Ok(ann)
}
