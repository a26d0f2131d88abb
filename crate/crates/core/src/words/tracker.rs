use std::collections::HashMap;

use super::{Repetition, Symbol, Word};

/// Width of the indexed suffix window.
const GRAM: usize = 12;

/// A word that grows and shrinks at its end and answers "which squares end
/// at the last position?" without scanning every half.
///
/// Halves shorter than the window are compared directly. For longer halves
/// the last `GRAM` symbols must reappear ending exactly `h` positions
/// earlier, so the candidates are the earlier occurrences of the current
/// trailing window, kept in an index keyed by the packed window.
#[derive(Debug, Clone, Default)]
pub struct SquareTracker {
    word: Vec<Symbol>,
    // packed window -> increasing list of end offsets (exclusive) where it occurs
    windows: HashMap<u128, Vec<u32>>,
}

fn pack(window: &[Symbol]) -> u128 {
    window
        .iter()
        .fold(0u128, |acc, &s| (acc << 8) | s as u128)
}

impl SquareTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            word: Vec::with_capacity(n),
            windows: HashMap::with_capacity(n),
        }
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Self {
        let mut t = Self::with_capacity(symbols.len());
        for &s in symbols {
            t.push(s);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.word
    }

    pub fn last(&self) -> Option<Symbol> {
        self.word.last().copied()
    }

    pub fn to_word(&self) -> Word {
        Word::from(self.word.as_slice())
    }

    pub fn push(&mut self, s: Symbol) {
        self.word.push(s);
        let end = self.word.len();
        if end >= GRAM {
            let key = pack(&self.word[end - GRAM..]);
            self.windows.entry(key).or_default().push(end as u32);
        }
    }

    pub fn pop(&mut self) -> Option<Symbol> {
        let end = self.word.len();
        if end >= GRAM {
            let key = pack(&self.word[end - GRAM..]);
            if let Some(list) = self.windows.get_mut(&key) {
                let popped = list.pop();
                debug_assert_eq!(popped, Some(end as u32));
                if list.is_empty() {
                    self.windows.remove(&key);
                }
            }
        }
        self.word.pop()
    }

    pub fn truncate(&mut self, len: usize) {
        while self.word.len() > len {
            self.pop();
        }
    }

    /// Removes the second half of `rep`, which must end at the last position.
    pub fn erase(&mut self, rep: Repetition) {
        debug_assert_eq!(rep.end, self.word.len());
        self.truncate(self.word.len() - rep.half);
    }

    fn square_of_half(&self, half: usize) -> bool {
        let n = self.word.len();
        half >= 1 && 2 * half <= n && self.word[n - 2 * half..n - half] == self.word[n - half..]
    }

    /// Halves `>= h_min` of squares ending at the last position, increasing.
    fn suffix_halves(&self, h_min: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.word.len();
        let h_min = h_min.max(1);
        let short = (h_min..GRAM.min(n / 2 + 1)).filter(move |&h| self.square_of_half(h));
        let long = (n >= GRAM)
            .then(|| self.windows.get(&pack(&self.word[n - GRAM..])))
            .flatten()
            .into_iter()
            .flat_map(move |ends| {
                ends.iter()
                    .rev()
                    .map(move |&e| n - e as usize)
                    .skip_while(|&h| h == 0)
                    .take_while(move |&h| 2 * h <= n)
                    .filter(move |&h| h >= h_min.max(GRAM) && self.square_of_half(h))
            });
        short.chain(long)
    }

    pub fn shortest_suffix_square(&self, h_min: usize) -> Option<Repetition> {
        let end = self.word.len();
        self.suffix_halves(h_min)
            .next()
            .map(|half| Repetition { end, half })
    }

    pub fn suffix_squares(&self, h_min: usize) -> Vec<Repetition> {
        let end = self.word.len();
        self.suffix_halves(h_min)
            .map(|half| Repetition { end, half })
            .collect()
    }
}
