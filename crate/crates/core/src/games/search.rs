use serde::{Deserialize, Serialize};

use super::{ann_nonrep_move, AnnChooser, Ben, Board, Mover};
use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

/// One step of the backtracking simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchStep {
    pub mover: Mover,
    pub symbol: Symbol,
    /// Half of the square erased after this step, 0 if none.
    #[serde(rename = "h")]
    pub backtrack: usize,
    /// Word length before the step.
    pub height: usize,
}

impl SearchStep {
    pub fn height_after(&self) -> usize {
        self.height + 1 - self.backtrack
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub alphabet: usize,
    pub steps: Vec<SearchStep>,
    /// Number of Ann steps.
    pub weight: usize,
    pub word: Word,
    #[serde(default)]
    pub multiple_suffix_squares: usize,
}

impl SearchTrace {
    pub fn ann_choices(&self) -> Vec<Symbol> {
        self.steps
            .iter()
            .filter(|s| s.mover == Mover::Ann)
            .map(|s| s.symbol)
            .collect()
    }

    /// Longest run of consecutive Ben steps.
    pub fn longest_ben_run(&self) -> usize {
        self.steps
            .split(|s| s.mover == Mover::Ann)
            .map(<[_]>::len)
            .max()
            .unwrap_or(0)
    }

    pub fn backtracks(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.backtrack).filter(|&h| h > 0)
    }

    /// Steps up to and including Ann's last step, and the word held right
    /// after it.
    pub fn through_last_ann_step(&self) -> (&[SearchStep], Word) {
        let cut = self
            .steps
            .iter()
            .rposition(|s| s.mover == Mover::Ann)
            .map_or(0, |i| i + 1);
        let steps = &self.steps[..cut];
        let mut word = Vec::new();
        for s in steps {
            word.push(s.symbol);
            word.truncate(word.len() - s.backtrack);
        }
        (steps, Word::from(word))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    ReachedN,
    WeightExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub trace: SearchTrace,
}

/// Simulates the nonrepetitive game against a fixed `ben`, backtracking over
/// every square of half at least 2: its second half is erased and play
/// resumes with whoever owns the next position (Ann on even lengths).
/// Stops at `target_n` symbols or right after Ann's `ann_move_budget`-th step.
pub fn run_search_simulation(
    alphabet: usize,
    ann: &mut impl AnnChooser,
    ben: &Ben,
    target_n: usize,
    ann_move_budget: usize,
) -> Result<SearchOutcome> {
    if alphabet == 0 || alphabet > 256 {
        return Err(Error::InvalidArgument(format!("bad alphabet size {alphabet}")));
    }
    let mut board = Board::default();
    let mut steps = Vec::new();
    let mut weight = 0;
    let status = loop {
        if board.len() >= target_n {
            break SearchStatus::ReachedN;
        }
        if weight >= ann_move_budget {
            break SearchStatus::WeightExhausted;
        }
        let height = board.len();
        let mover = Mover::for_length(height);
        let symbol = match mover {
            Mover::Ann => {
                weight += 1;
                ann_nonrep_move(board.symbols(), alphabet, ann)?
            }
            Mover::Ben => ben.respond(board.symbols(), alphabet),
        };
        let backtrack = board.append(symbol, 2, true).map_or(0, |r| r.half);
        steps.push(SearchStep {
            mover,
            symbol,
            backtrack,
            height,
        });
    };
    Ok(SearchOutcome {
        status,
        trace: SearchTrace {
            alphabet,
            steps,
            weight,
            word: board.tracker.to_word(),
            multiple_suffix_squares: board.multiple_suffix_squares,
        },
    })
}

/// The ways the height can evolve from one Ann step to the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentCase {
    /// Neither Ann nor Ben repeats: `+1, +1`.
    Clean,
    /// Ann completes an odd square (half >= 5) and moves again.
    AnnOdd,
    /// Ann completes an even square (half >= 6), Ben answers cleanly.
    AnnEven,
    /// Ann is clean, Ben completes an even square (half >= 6).
    BenEven,
    /// Ann is clean, Ben completes an odd square (half >= 5), then a clean Ben step.
    BenOdd,
}

impl SegmentCase {
    /// `0` for [`SegmentCase::Clean`], else the type tag `1..=4`.
    pub fn number(self) -> u8 {
        match self {
            SegmentCase::Clean => 0,
            SegmentCase::AnnOdd => 1,
            SegmentCase::AnnEven => 2,
            SegmentCase::BenEven => 3,
            SegmentCase::BenOdd => 4,
        }
    }

    pub fn from_type(t: u8) -> Option<Self> {
        match t {
            1 => Some(SegmentCase::AnnOdd),
            2 => Some(SegmentCase::AnnEven),
            3 => Some(SegmentCase::BenEven),
            4 => Some(SegmentCase::BenOdd),
            _ => None,
        }
    }

    /// Height before the next Ann step, given the height before this one and
    /// the half of the square involved (ignored for `Clean`).
    pub fn next_height(self, height: usize, half: usize) -> Option<usize> {
        let offset = match self {
            SegmentCase::Clean => return Some(height + 2),
            SegmentCase::AnnOdd => 1,
            SegmentCase::AnnEven | SegmentCase::BenEven => 2,
            SegmentCase::BenOdd => 3,
        };
        (height + offset).checked_sub(half)
    }

    /// Whether a square of this half is possible in this case.
    pub fn admits_half(self, half: usize) -> bool {
        match self {
            SegmentCase::Clean => half == 0,
            SegmentCase::AnnOdd | SegmentCase::BenOdd => half >= 5 && half % 2 == 1,
            SegmentCase::AnnEven | SegmentCase::BenEven => half >= 6 && half.is_multiple_of(2),
        }
    }
}

/// The steps between two consecutive Ann steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    /// Index of the Ann step opening the segment.
    pub start: usize,
    /// Index of the next Ann step.
    pub next: usize,
    pub case: SegmentCase,
    /// Half of the square erased inside the segment, 0 for `Clean`.
    pub half: usize,
}

/// Splits a search trace into Ann-to-Ann segments and names the case of
/// each one. Any pattern outside the five cases is an error, as is a height
/// sequence that does not follow from the recorded backtracks.
pub fn classify_segments(steps: &[SearchStep]) -> Result<Vec<Segment>> {
    for (i, s) in steps.iter().enumerate() {
        if s.mover != Mover::for_length(s.height) {
            return Err(Error::MalformedTrace(format!(
                "step {i}: {:?} moves at height {}",
                s.mover, s.height
            )));
        }
        if s.backtrack > s.height.div_ceil(2) {
            return Err(Error::MalformedTrace(format!(
                "step {i}: backtrack {} at height {}",
                s.backtrack, s.height
            )));
        }
        if let Some(next) = steps.get(i + 1) {
            if next.height != s.height_after() {
                return Err(Error::MalformedTrace(format!(
                    "step {}: height {} does not follow from step {i}",
                    i + 1,
                    next.height
                )));
            }
        }
    }
    let ann: Vec<usize> = steps
        .iter()
        .enumerate()
        .filter(|(_, s)| s.mover == Mover::Ann)
        .map(|(i, _)| i)
        .collect();
    ann.windows(2)
        .map(|pair| {
            let (start, next) = (pair[0], pair[1]);
            let seg = &steps[start..next];
            let bt: Vec<usize> = seg.iter().map(|s| s.backtrack).collect();
            let (case, half) = match bt.as_slice() {
                [h] if *h > 0 => (SegmentCase::AnnOdd, *h),
                [0, 0] => (SegmentCase::Clean, 0),
                [h, 0] if *h > 0 => (SegmentCase::AnnEven, *h),
                [0, h] if *h > 0 => (SegmentCase::BenEven, *h),
                [0, h, 0] if *h > 0 => (SegmentCase::BenOdd, *h),
                _ => {
                    return Err(Error::MalformedTrace(format!(
                        "steps {start}..{next}: backtracks {bt:?} match no case"
                    )))
                }
            };
            if !case.admits_half(half) {
                return Err(Error::MalformedTrace(format!(
                    "steps {start}..{next}: half {half} impossible in case {}",
                    case.number()
                )));
            }
            Ok(Segment {
                start,
                next,
                case,
                half,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::RandomAnn;
    use crate::words::is_nonrepetitive_from;

    #[test]
    fn target_one_needs_one_ann_step() {
        let out = run_search_simulation(6, &mut RandomAnn::seeded(0), &Ben::Mimic, 1, 100).unwrap();
        assert_eq!(out.status, SearchStatus::ReachedN);
        assert_eq!(out.trace.weight, 1);
        assert_eq!(out.trace.steps.len(), 1);
    }

    #[test]
    fn weight_budget_stops_after_ann() {
        let out = run_search_simulation(6, &mut RandomAnn::seeded(2), &Ben::Mimic, 1000, 7).unwrap();
        assert_eq!(out.status, SearchStatus::WeightExhausted);
        assert_eq!(out.trace.weight, 7);
        assert_eq!(out.trace.steps.last().unwrap().mover, Mover::Ann);
    }

    #[test]
    fn simulations_follow_the_case_analysis() {
        for seed in 0..60 {
            for ben in Ben::builtins() {
                let out =
                    run_search_simulation(6, &mut RandomAnn::seeded(seed), &ben, 120, 2000).unwrap();
                let t = &out.trace;
                assert!(t.backtracks().all(|h| h >= 5));
                assert!(t.longest_ben_run() <= 2);
                let segs = classify_segments(&t.steps).unwrap();
                assert_eq!(segs.len() + 1, t.weight);
                for seg in segs {
                    let h = t.steps[seg.start].height;
                    assert_eq!(
                        seg.case.next_height(h, seg.half),
                        Some(t.steps[seg.next].height)
                    );
                }
                assert!(is_nonrepetitive_from(&t.word, 2));
            }
        }
    }

    #[test]
    fn classification_rejects_impossible_patterns() {
        let step = |mover, backtrack, height| SearchStep {
            mover,
            symbol: 0,
            backtrack,
            height,
        };
        // Ben moving three times in a row.
        let steps = [
            step(Mover::Ann, 0, 10),
            step(Mover::Ben, 5, 11),
            step(Mover::Ben, 5, 7),
            step(Mover::Ben, 0, 3),
            step(Mover::Ann, 0, 4),
        ];
        assert!(classify_segments(&steps).is_err());
        // An even square in the odd case.
        let steps = [step(Mover::Ann, 6, 10), step(Mover::Ann, 0, 5)];
        assert!(classify_segments(&steps).is_err());
    }

    #[test]
    fn truncation_to_last_ann_step() {
        let out = run_search_simulation(6, &mut RandomAnn::seeded(8), &Ben::Mimic, 6, 100).unwrap();
        let (steps, word) = out.trace.through_last_ann_step();
        assert_eq!(steps.last().unwrap().mover, Mover::Ann);
        assert_eq!(word.len(), steps.last().unwrap().height_after());
    }
}
