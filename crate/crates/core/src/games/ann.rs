use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::words::Symbol;

/// Picks Ann's symbol out of the set her strategy allows.
pub trait AnnChooser {
    fn pick(&mut self, allowed: &[Symbol]) -> Result<Symbol>;
}

/// Uniform choice from the allowed set (sorted ascending).
#[derive(Debug, Clone)]
pub struct RandomAnn<R>(pub R);

impl RandomAnn<ChaCha8Rng> {
    pub fn seeded(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl<R: Rng> AnnChooser for RandomAnn<R> {
    fn pick(&mut self, allowed: &[Symbol]) -> Result<Symbol> {
        if allowed.is_empty() {
            return Err(Error::Degenerate("Ann has no allowed symbol".into()));
        }
        Ok(allowed[self.0.gen_range(0..allowed.len())])
    }
}

/// A fixed stream of symbols; each must be allowed when it is used.
#[derive(Debug, Clone)]
pub struct ScriptedAnn {
    symbols: Vec<Symbol>,
    next: usize,
}

impl ScriptedAnn {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self { symbols, next: 0 }
    }
}

impl AnnChooser for ScriptedAnn {
    fn pick(&mut self, allowed: &[Symbol]) -> Result<Symbol> {
        let s = *self
            .symbols
            .get(self.next)
            .ok_or(Error::ChoicesExhausted(self.next))?;
        self.next += 1;
        if !allowed.contains(&s) {
            return Err(Error::DisallowedSymbol {
                symbol: s as usize,
                allowed: allowed.iter().map(|&a| a as usize).collect(),
            });
        }
        Ok(s)
    }
}

/// Erase game: every symbol not among the last three.
pub fn erase_allowed(w: &[Symbol], alphabet: usize) -> Vec<Symbol> {
    let recent = &w[w.len().saturating_sub(3)..];
    (0..alphabet)
        .map(|s| s as Symbol)
        .filter(|s| !recent.contains(s))
        .collect()
}

/// Nonrepetitive game, with `m = |w| + 1` the position Ann fills:
/// (i) exclude `s[m-2]`; (ii) if `s[m-1] == s[m-4]` exclude `s[m-3]`;
/// (iii) if at most one symbol is excluded so far, also exclude `s[m-4]`.
/// Rules referring to missing positions are skipped.
pub fn nonrep_allowed(w: &[Symbol], alphabet: usize) -> Vec<Symbol> {
    let m = w.len() + 1;
    // 1-based access into w
    let at = |k: usize| (k >= 1 && k < m).then(|| w[k - 1]);
    let back = |d: usize| m.checked_sub(d).and_then(at);
    let mut excluded: Vec<Symbol> = Vec::with_capacity(3);
    if let Some(s) = back(2) {
        excluded.push(s);
    }
    if let (Some(last), Some(s4), Some(s3)) = (back(1), back(4), back(3)) {
        if last == s4 && !excluded.contains(&s3) {
            excluded.push(s3);
        }
    }
    if excluded.len() <= 1 {
        if let Some(s4) = back(4) {
            if !excluded.contains(&s4) {
                excluded.push(s4);
            }
        }
    }
    (0..alphabet)
        .map(|s| s as Symbol)
        .filter(|s| !excluded.contains(s))
        .collect()
}

pub fn ann_erase_move(w: &[Symbol], alphabet: usize, ann: &mut impl AnnChooser) -> Result<Symbol> {
    ann.pick(&erase_allowed(w, alphabet))
}

pub fn ann_nonrep_move(w: &[Symbol], alphabet: usize, ann: &mut impl AnnChooser) -> Result<Symbol> {
    ann.pick(&nonrep_allowed(w, alphabet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn w(s: &str) -> Vec<Symbol> {
        Word::parse(s).unwrap().into_symbols()
    }

    #[test]
    fn erase_exclusions() {
        assert_eq!(erase_allowed(&w("abc"), 8), vec![3, 4, 5, 6, 7]);
        assert_eq!(erase_allowed(&w(""), 8).len(), 8);
        assert_eq!(erase_allowed(&w("aba"), 8), vec![2, 3, 4, 5, 6, 7]);
        assert_eq!(erase_allowed(&w("hgfabc"), 8), vec![3, 4, 5, 6, 7]);
    }

    #[test]
    fn nonrep_rules() {
        // (i) excludes c, (ii) a == a excludes b.
        assert_eq!(nonrep_allowed(&w("abca"), 6), vec![0, 3, 4, 5]);
        assert_eq!(nonrep_allowed(&w(""), 6).len(), 6);
        // (i) excludes c, (iii) excludes a.
        assert_eq!(nonrep_allowed(&w("abcd"), 6), vec![1, 3, 4, 5]);
        // (i) and (ii) exclude the same symbol, so (iii) fires.
        assert_eq!(nonrep_allowed(&w("abba"), 6), vec![2, 3, 4, 5]);
        // Short words: only the rules with existing positions apply.
        assert_eq!(nonrep_allowed(&w("a"), 6).len(), 6);
        assert_eq!(nonrep_allowed(&w("ab"), 6), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn allowed_set_sizes_meet_the_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let len = rng.gen_range(0..12);
            let word: Vec<Symbol> = (0..len).map(|_| rng.gen_range(0..6)).collect();
            assert!(erase_allowed(&word, 8).len() >= 5);
            assert!(nonrep_allowed(&word, 6).len() >= 4);
        }
    }

    #[test]
    fn scripted_choices_are_checked() {
        let mut ann = ScriptedAnn::new(vec![2, 0]);
        assert_eq!(ann_erase_move(&w("ab"), 8, &mut ann), Ok(2));
        assert!(matches!(
            ann_erase_move(&w("ab"), 8, &mut ann),
            Err(Error::DisallowedSymbol { symbol: 0, .. })
        ));
        assert!(matches!(
            ann_erase_move(&w("ab"), 8, &mut ann),
            Err(Error::ChoicesExhausted(2))
        ));
    }

    #[test]
    fn random_choice_is_uniform_over_allowed() {
        let mut ann = RandomAnn::seeded(5);
        let mut counts = [0usize; 8];
        for _ in 0..50_000 {
            counts[ann_erase_move(&w("abc"), 8, &mut ann).unwrap() as usize] += 1;
        }
        assert_eq!(&counts[..3], &[0, 0, 0]);
        for &c in &counts[3..] {
            assert!((c as f64 - 10_000.0).abs() < 500.0, "{counts:?}");
        }
    }
}
