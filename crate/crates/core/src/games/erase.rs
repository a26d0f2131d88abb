use serde::{Deserialize, Serialize};

use super::{ann_erase_move, AnnChooser, Ben, Board, GameTrace, MoveRecord, Mover};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EraseStatus {
    AnnReachedN,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EraseOutcome {
    pub status: EraseStatus,
    pub trace: GameTrace,
}

/// Plays until the word reaches `target_n` symbols or `move_budget` moves
/// have been made. Ann moves first; every square ending at the appended
/// position has its second half erased (shortest square first).
pub fn play_erase_game(
    alphabet: usize,
    ann: &mut impl AnnChooser,
    ben: &Ben,
    target_n: usize,
    move_budget: usize,
) -> Result<EraseOutcome> {
    if alphabet == 0 || alphabet > 256 {
        return Err(Error::InvalidArgument(format!("bad alphabet size {alphabet}")));
    }
    let mut board = Board::default();
    let mut moves = Vec::new();
    let mut status = EraseStatus::BudgetExhausted;
    while moves.len() < move_budget {
        let mover = Mover::for_move_index(moves.len());
        let symbol = match mover {
            Mover::Ann => ann_erase_move(board.symbols(), alphabet, ann)?,
            Mover::Ben => ben.respond(board.symbols(), alphabet),
        };
        let erased = board.append(symbol, 1, true).map_or(0, |r| r.half);
        moves.push(MoveRecord {
            mover,
            symbol,
            erased,
            height: board.len(),
        });
        if board.len() >= target_n {
            status = EraseStatus::AnnReachedN;
            break;
        }
    }
    Ok(EraseOutcome {
        status,
        trace: GameTrace {
            alphabet,
            moves,
            word: board.tracker.to_word(),
            multiple_suffix_squares: board.multiple_suffix_squares,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{RandomAnn, ScriptedAnn};
    use crate::words::is_nonrepetitive;

    #[test]
    fn first_move_can_reach_target_one() {
        let out = play_erase_game(8, &mut RandomAnn::seeded(1), &Ben::Mimic, 1, 10).unwrap();
        assert_eq!(out.status, EraseStatus::AnnReachedN);
        assert_eq!(out.trace.moves.len(), 1);
    }

    #[test]
    fn mimic_always_erases_one() {
        let out = play_erase_game(8, &mut RandomAnn::seeded(4), &Ben::Mimic, 100, 10_000).unwrap();
        assert_eq!(out.status, EraseStatus::AnnReachedN);
        for m in &out.trace.moves {
            match m.mover {
                Mover::Ben => assert_eq!(m.erased, 1),
                Mover::Ann => assert_eq!(m.erased, 0),
            }
        }
        assert_eq!(out.trace.word.len(), 100);
        assert!(is_nonrepetitive(&out.trace.word));
    }

    #[test]
    fn scripted_four_moves() {
        let out = play_erase_game(8, &mut ScriptedAnn::new(vec![0, 1]), &Ben::Mimic, 10, 4).unwrap();
        assert_eq!(out.status, EraseStatus::BudgetExhausted);
        assert_eq!(out.trace.heights(), vec![1, 1, 2, 2]);
        assert_eq!(out.trace.word.as_slice(), &[0, 1]);
        assert_eq!(out.trace.ann_choices(), vec![0, 1]);
    }

    #[test]
    fn erasures_skip_halves_two_and_three() {
        for seed in 0..100 {
            for ben in Ben::builtins() {
                let out = play_erase_game(8, &mut RandomAnn::seeded(seed), &ben, 60, 3000).unwrap();
                let mut held = Vec::new();
                for m in &out.trace.moves {
                    if m.mover == Mover::Ann {
                        assert!(!held[held.len().saturating_sub(3)..].contains(&m.symbol));
                    }
                    assert!(m.erased == 0 || m.erased == 1 || m.erased >= 4, "{m:?}");
                    held.push(m.symbol);
                    held.truncate(held.len() - m.erased);
                    assert_eq!(held.len(), m.height);
                }
                assert!(is_nonrepetitive(&held));
            }
        }
    }
}
