use serde::{Deserialize, Serialize};

use super::{ann_nonrep_move, AnnChooser, Ben, Board, MoveRecord, Mover};
use crate::error::{Error, Result};
use crate::words::{Repetition, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "winner", rename_all = "snake_case")]
pub enum NonrepResult {
    AnnWins,
    BenWins { repetition: Repetition },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonrepOutcome {
    pub result: NonrepResult,
    pub word: Word,
    pub moves: Vec<MoveRecord>,
}

/// The real nonrepetitive game: no erasures, and the first square of half
/// at least 2 ends the game in Ben's favour. Squares of half 1 are ignored.
pub fn play_nonrep_game(
    alphabet: usize,
    ann: &mut impl AnnChooser,
    ben: &Ben,
    target_n: usize,
) -> Result<NonrepOutcome> {
    if alphabet == 0 || alphabet > 256 {
        return Err(Error::InvalidArgument(format!("bad alphabet size {alphabet}")));
    }
    let mut board = Board::default();
    let mut moves = Vec::new();
    let mut result = NonrepResult::AnnWins;
    while board.len() < target_n {
        let mover = Mover::for_length(board.len());
        let symbol = match mover {
            Mover::Ann => ann_nonrep_move(board.symbols(), alphabet, ann)?,
            Mover::Ben => ben.respond(board.symbols(), alphabet),
        };
        let rep = board.append(symbol, 2, false);
        moves.push(MoveRecord {
            mover,
            symbol,
            erased: rep.map_or(0, |r| r.half),
            height: board.len(),
        });
        if let Some(repetition) = rep {
            result = NonrepResult::BenWins { repetition };
            break;
        }
    }
    Ok(NonrepOutcome {
        result,
        word: board.tracker.to_word(),
        moves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::RandomAnn;
    use crate::words::is_nonrepetitive_from;

    #[test]
    fn target_one_is_an_ann_win() {
        let out = play_nonrep_game(6, &mut RandomAnn::seeded(0), &Ben::Mimic, 1).unwrap();
        assert_eq!(out.result, NonrepResult::AnnWins);
        assert_eq!(out.word.len(), 1);
    }

    #[test]
    fn six_symbols_block_short_squares() {
        for seed in 0..100 {
            for ben in Ben::builtins() {
                let out = play_nonrep_game(6, &mut RandomAnn::seeded(seed), &ben, 80).unwrap();
                match out.result {
                    NonrepResult::AnnWins => assert!(is_nonrepetitive_from(&out.word, 2)),
                    NonrepResult::BenWins { repetition } => {
                        assert!(repetition.half >= 5);
                        assert!(repetition.holds_in(&out.word));
                    }
                }
            }
        }
    }

    #[test]
    fn three_symbols_lose_to_the_threat_player() {
        let ben = Ben::GreedyThreat { offset: 0 };
        let wins = (0..50)
            .filter(|&seed| {
                let out = play_nonrep_game(3, &mut RandomAnn::seeded(seed), &ben, 40).unwrap();
                matches!(out.result, NonrepResult::BenWins { .. })
            })
            .count();
        assert!(wins > 0);
    }
}
