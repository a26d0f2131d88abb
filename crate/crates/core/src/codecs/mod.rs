//! Lossless logs for the two games.
//!
//! A log stores how the word length moved plus the final word. Replaying
//! the length changes backwards restores every erased block, and a forward
//! replay against the same deterministic adversary separates Ann's symbols
//! from Ben's.

mod erase;
mod search;

pub use erase::{decode_erase_log, encode_erase_log, ReducedGameLog};
pub use search::{
    decode_search_log, encode_search_log, reconstruct_heights, HeightSequence, TypedSearchLog,
};

use crate::error::{Error, Result};
use crate::words::Symbol;

/// Undoes one step backwards: `delta` is the length change the step caused.
/// Returns the symbol that step appended.
fn undo_step(word: &mut Vec<Symbol>, delta: i64, step: usize) -> Result<Symbol> {
    if delta <= 0 {
        let h = (1 - delta) as usize;
        let l = word.len();
        if h > l {
            return Err(Error::MalformedLog(format!(
                "step {step}: erased half {h} exceeds length {l}"
            )));
        }
        word.extend_from_within(l - h..l);
    } else if delta != 1 {
        return Err(Error::MalformedLog(format!(
            "step {step}: length grew by {delta}"
        )));
    }
    word.pop()
        .ok_or_else(|| Error::MalformedLog(format!("step {step}: nothing left to undo")))
}

fn check_prefix_sums(d: &[i64]) -> Result<()> {
    let mut sum = 0i64;
    for (j, &dj) in d.iter().enumerate() {
        if dj > 1 {
            return Err(Error::MalformedLog(format!("d_{} = {dj} > 1", j + 1)));
        }
        sum += dj;
        if sum < 1 {
            return Err(Error::MalformedLog(format!(
                "prefix sum {sum} < 1 at d_{}",
                j + 1
            )));
        }
    }
    Ok(())
}
