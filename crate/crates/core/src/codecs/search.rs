use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_prefix_sums, undo_step};
use crate::error::{Error, Result};
use crate::games::{classify_segments, Ben, Mover, SearchTrace, SegmentCase};
use crate::words::{SquareTracker, Symbol, Word};

/// Halved height changes between Ann's steps, a type tag for every drop of
/// at least 4, and the word held after Ann's last step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TypedJson", into = "TypedJson")]
pub struct TypedSearchLog {
    pub diffs: Vec<i64>,
    /// 1-based index `j` of `d_j` -> tag in `1..=4`.
    pub types: BTreeMap<usize, u8>,
    pub final_word: Word,
}

#[derive(Serialize, Deserialize)]
struct TypedJson {
    d: Vec<i64>,
    #[serde(default)]
    types: BTreeMap<String, u8>,
    s: Word,
    m: usize,
}

impl TryFrom<TypedJson> for TypedSearchLog {
    type Error = Error;

    fn try_from(j: TypedJson) -> Result<Self> {
        if j.m != j.d.len() {
            return Err(Error::MalformedLog(format!(
                "m = {} but {} differences",
                j.m,
                j.d.len()
            )));
        }
        let types = j
            .types
            .into_iter()
            .map(|(k, t)| {
                k.parse::<usize>()
                    .map(|k| (k, t))
                    .map_err(|_| Error::MalformedLog(format!("bad type index {k:?}")))
            })
            .collect::<Result<_>>()?;
        TypedSearchLog::new(j.d, types, j.s)
    }
}

impl From<TypedSearchLog> for TypedJson {
    fn from(l: TypedSearchLog) -> Self {
        Self {
            m: l.diffs.len(),
            d: l.diffs,
            types: l.types.into_iter().map(|(k, t)| (k.to_string(), t)).collect(),
            s: l.final_word,
        }
    }
}

impl TypedSearchLog {
    /// Checks `d_1 = 1`, `d_j <= 1`, prefix sums `>= 1`, and that a type in
    /// `1..=4` is present exactly for the differences `<= -2`.
    pub fn new(diffs: Vec<i64>, types: BTreeMap<usize, u8>, final_word: Word) -> Result<Self> {
        check_prefix_sums(&diffs)?;
        for (j, &d) in diffs.iter().enumerate() {
            let t = types.get(&(j + 1));
            match (d <= -2, t) {
                (true, Some(1..=4)) | (false, None) => {}
                (true, Some(t)) => {
                    return Err(Error::MalformedLog(format!("d_{} has type {t}", j + 1)))
                }
                (true, None) => {
                    return Err(Error::MalformedLog(format!("d_{} = {d} needs a type", j + 1)))
                }
                (false, Some(_)) => {
                    return Err(Error::MalformedLog(format!("d_{} = {d} cannot carry a type", j + 1)))
                }
            }
        }
        if let Some(&k) = types.keys().find(|&&k| k == 0 || k > diffs.len()) {
            return Err(Error::MalformedLog(format!("type index {k} out of range")));
        }
        Ok(Self {
            diffs,
            types,
            final_word,
        })
    }

    pub fn ann_moves(&self) -> usize {
        self.diffs.len()
    }

    /// Heights before each of Ann's steps: `h'_j = 2 (d_1 + .. + d_j - 1)`.
    pub fn ann_heights(&self) -> Vec<usize> {
        self.diffs
            .iter()
            .scan(0i64, |sum, &d| {
                *sum += d;
                Some(2 * (*sum - 1) as usize)
            })
            .collect()
    }
}

/// Encodes the trace up to Ann's last step.
pub fn encode_search_log(trace: &SearchTrace) -> Result<TypedSearchLog> {
    let (steps, final_word) = trace.through_last_ann_step();
    let segments = classify_segments(steps)?;
    let ann_heights: Vec<i64> = steps
        .iter()
        .filter(|s| s.mover == Mover::Ann)
        .map(|s| s.height as i64)
        .collect();
    let mut diffs = Vec::with_capacity(ann_heights.len());
    let mut types = BTreeMap::new();
    if !ann_heights.is_empty() {
        diffs.push(1);
    }
    for (j, (pair, seg)) in ann_heights.windows(2).zip(&segments).enumerate() {
        let d = (pair[1] - pair[0]) / 2;
        diffs.push(d);
        if d <= -2 {
            types.insert(j + 2, seg.case.number());
        }
    }
    TypedSearchLog::new(diffs, types, final_word)
}

/// Heights before every step of the simulation, followed by the final
/// length; `movers[i]` is who moves at `heights[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightSequence {
    pub heights: Vec<usize>,
    pub movers: Vec<Mover>,
}

impl HeightSequence {
    /// Number of simulation steps (the final length is not a step).
    pub fn steps(&self) -> usize {
        self.heights.len().saturating_sub(1)
    }
}

/// Expands the Ann-step heights of a log into the full height sequence.
pub fn reconstruct_heights(log: &TypedSearchLog) -> Result<HeightSequence> {
    let ann = log.ann_heights();
    let mut heights = Vec::new();
    for (j, pair) in ann.windows(2).enumerate() {
        let (from, to) = (pair[0], pair[1]);
        let d = log.diffs[j + 1];
        let case = match d {
            1 => SegmentCase::Clean,
            -1 => SegmentCase::BenOdd,
            _ => log
                .types
                .get(&(j + 2))
                .and_then(|&t| SegmentCase::from_type(t))
                .ok_or_else(|| Error::MalformedLog(format!("d_{} = {d} has no case", j + 2)))?,
        };
        let offset = match case {
            SegmentCase::Clean => 0,
            SegmentCase::AnnOdd => 1,
            SegmentCase::AnnEven | SegmentCase::BenEven => 2,
            SegmentCase::BenOdd => 3,
        };
        let half = (from + offset).saturating_sub(to);
        if !case.admits_half(half) || case.next_height(from, half) != Some(to) {
            return Err(Error::MalformedLog(format!(
                "d_{}: heights {from} -> {to} give half {half}, impossible in case {}",
                j + 2,
                case.number()
            )));
        }
        let below = |top: usize| {
            top.checked_sub(half).ok_or_else(|| {
                Error::MalformedLog(format!("d_{}: half {half} exceeds height {top}", j + 2))
            })
        };
        match case {
            SegmentCase::Clean => heights.extend([from, from + 1]),
            SegmentCase::AnnOdd => heights.push(from),
            SegmentCase::AnnEven => heights.extend([from, below(from + 1)?]),
            SegmentCase::BenEven => heights.extend([from, from + 1]),
            SegmentCase::BenOdd => heights.extend([from, from + 1, below(from + 2)?]),
        }
    }
    if let Some(&last) = ann.last() {
        heights.push(last);
        let end = log.final_word.len();
        if end != last + 1 && end + 4 > last {
            return Err(Error::MalformedLog(format!(
                "Ann's last step goes from {last} to {end}"
            )));
        }
        heights.push(end);
    } else if !log.final_word.is_empty() {
        return Err(Error::MalformedLog("empty log with a nonempty word".into()));
    }
    let movers = heights.iter().map(|&h| Mover::for_length(h)).collect();
    Ok(HeightSequence { heights, movers })
}

/// Recovers Ann's symbols from a search log produced against `ben`.
pub fn decode_search_log(log: &TypedSearchLog, ben: &Ben, alphabet: usize) -> Result<Vec<Symbol>> {
    let log = TypedSearchLog::new(log.diffs.clone(), log.types.clone(), log.final_word.clone())?;
    let hs = reconstruct_heights(&log)?;
    let h = &hs.heights;
    let mut word = log.final_word.to_vec();
    let mut symbols = Vec::with_capacity(hs.steps());
    for i in (0..hs.steps()).rev() {
        let delta = h[i + 1] as i64 - h[i] as i64;
        symbols.push(undo_step(&mut word, delta, i + 1)?);
        if word.len() != h[i] {
            return Err(Error::MalformedLog(format!(
                "step {}: undo leaves length {} instead of {}",
                i + 1,
                word.len(),
                h[i]
            )));
        }
    }
    symbols.reverse();

    let mut board = SquareTracker::new();
    let mut ann = Vec::with_capacity(log.ann_moves());
    for (i, &s) in symbols.iter().enumerate() {
        match Mover::for_length(board.len()) {
            Mover::Ann => ann.push(s),
            Mover::Ben => {
                let b = ben.respond(board.symbols(), alphabet);
                if b != s {
                    return Err(Error::BenMismatch {
                        mv: i + 1,
                        expected: s as usize,
                        actual: b as usize,
                    });
                }
            }
        }
        board.push(s);
        if let Some(rep) = board.shortest_suffix_square(2) {
            board.erase(rep);
        }
        if board.len() != h[i + 1] {
            return Err(Error::MalformedLog(format!(
                "step {}: replay reaches length {} instead of {}",
                i + 1,
                board.len(),
                h[i + 1]
            )));
        }
    }
    Ok(ann)
}
