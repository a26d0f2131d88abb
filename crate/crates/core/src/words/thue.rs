use super::{Symbol, Word};
use crate::error::{Error, Result};

/// Images of the square-free-preserving ternary substitution, 0-based
/// (`1 -> 12312`, `2 -> 131232`, `3 -> 1323132` in display form).
pub const THUE_IMAGES: [&[Symbol]; 3] = [
    &[0, 1, 2, 0, 1],
    &[0, 2, 0, 1, 2, 1],
    &[0, 2, 1, 2, 0, 2, 1],
];

pub fn thue_substitute(w: &[Symbol]) -> Result<Word> {
    let mut out = Vec::with_capacity(w.len() * 7);
    for &s in w {
        let image = THUE_IMAGES.get(s as usize).ok_or(Error::SymbolOutOfRange {
            symbol: s as usize,
            size: 3,
        })?;
        out.extend_from_slice(image);
    }
    Ok(Word::from(out))
}

/// Prefix of length `target_len` of the substitution iterated from `1`.
pub fn thue_word(target_len: usize) -> Word {
    let mut w = vec![0];
    while w.len() < target_len {
        w = thue_substitute(&w)
            .expect("iterates stay ternary")
            .into_symbols();
    }
    w.truncate(target_len);
    Word::from(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_nonrepetitive;

    #[test]
    fn substitution_table() {
        let w = |s: &str| Word::parse(s).unwrap();
        assert_eq!(thue_substitute(&w("1")).unwrap(), w("12312"));
        assert_eq!(thue_substitute(&w("")).unwrap(), w(""));
        assert_eq!(thue_substitute(&w("12")).unwrap(), w("12312131232"));
        assert!(thue_substitute(&w("4")).is_err());
    }

    #[test]
    fn generated_prefixes() {
        assert_eq!(thue_word(1).to_text().unwrap(), "1");
        assert_eq!(thue_word(5).to_text().unwrap(), "12312");
        let w = thue_word(1000);
        assert_eq!(w.len(), 1000);
        assert!(is_nonrepetitive(&w));
    }
}
