use proptest::prelude::*;
use thuelab_core::words::{
    first_square_quadratic, is_nonrepetitive, is_nonrepetitive_from, min_square_at_least,
    oracle_min_square, thue_substitute, thue_word, SquareTracker,
};
use thuelab_core::{Symbol, Word};

/// Every word of length `len` over `0..c`, in lexicographic order.
fn all_words(c: usize, len: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let total = c.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = (k % c) as Symbol;
            k /= c;
        }
        w
    })
}

/// Depth-first walk over all words with no square of half `>= h_min`,
/// calling `visit` on each extension attempt `(prefix, extended)`.
fn extend_free(
    c: usize,
    h_min: usize,
    max_len: usize,
    w: &mut Vec<Symbol>,
    visit: &mut impl FnMut(&[Symbol], &[Symbol]),
) {
    if w.len() == max_len {
        return;
    }
    for s in 0..c as Symbol {
        w.push(s);
        visit(&w[..w.len() - 1], w);
        if is_nonrepetitive_from(w, h_min) {
            extend_free(c, h_min, max_len, w, visit);
        }
        w.pop();
    }
}

#[test]
fn every_binary_word_of_length_four_is_repetitive() {
    for w in all_words(2, 4) {
        assert!(!is_nonrepetitive(&w), "{w:?}");
    }
}

#[test]
fn ternary_square_free_counts() {
    // Counted independently of the detectors in this crate.
    let known = [3, 6, 12, 18, 30, 42, 60, 78, 108, 144, 204, 264];
    for (len, &want) in (1..=12).zip(&known) {
        let mut oracle = 0;
        let mut fast = 0;
        for w in all_words(3, len) {
            let a = is_nonrepetitive(&w);
            let b = first_square_quadratic(&w, 1).is_none();
            let c = min_square_at_least(&w, 1).is_none();
            assert!(a == b && b == c, "{w:?}");
            oracle += a as usize;
            fast += b as usize;
        }
        assert_eq!(oracle, want, "length {len}");
        assert_eq!(fast, want, "length {len}");
    }
}

#[test]
fn detectors_agree_exhaustively() {
    for (c, max_len) in [(2, 16), (3, 10)] {
        for len in 0..=max_len {
            for w in all_words(c, len) {
                for h_min in 1..=3 {
                    let want = oracle_min_square(&w, h_min);
                    assert_eq!(first_square_quadratic(&w, h_min), want, "{w:?} h>={h_min}");
                    assert_eq!(min_square_at_least(&w, h_min), want, "{w:?} h>={h_min}");
                }
            }
        }
    }
}

#[test]
fn detectors_agree_on_square_free_extensions_up_to_twenty() {
    let mut checked = 0;
    extend_free(3, 1, 20, &mut Vec::new(), &mut |_, w| {
        assert_eq!(first_square_quadratic(w, 1), oracle_min_square(w, 1), "{w:?}");
        checked += 1;
    });
    assert!(checked > 1000);
}

#[test]
fn new_squares_end_at_the_appended_position() {
    for (c, h_min, max_len) in [(3, 1, 14), (3, 2, 14), (4, 1, 12), (4, 2, 9)] {
        extend_free(c, h_min, max_len, &mut Vec::new(), &mut |_, w| {
            if let Some(rep) = oracle_min_square(w, h_min) {
                assert_eq!(rep.end, w.len(), "{w:?}");
                let tracker = SquareTracker::from_symbols(w);
                assert_eq!(tracker.shortest_suffix_square(h_min), Some(rep));
            }
        });
    }
}

#[test]
fn substitution_preserves_square_freeness() {
    extend_free(3, 1, 10, &mut Vec::new(), &mut |_, w| {
        if is_nonrepetitive(w) {
            let image = thue_substitute(w).unwrap();
            assert!(first_square_quadratic(&image, 1).is_none(), "{w:?}");
        }
    });
}

#[test]
fn thue_prefixes_are_square_free() {
    for len in [0, 1, 2, 17, 500] {
        let w = thue_word(len);
        assert_eq!(w.len(), len);
        assert!(is_nonrepetitive(&w));
    }
    let long = thue_word(3000);
    assert!(thue_word(100).as_slice() == &long[..100]);
}

#[test]
fn worked_examples() {
    let w = Word::parse("1232312").unwrap();
    let rep = oracle_min_square(&w, 1).unwrap();
    assert_eq!(Word::from(rep.square(&w)).to_text().unwrap(), "2323");
    assert!(is_nonrepetitive(&Word::parse("123132123").unwrap()));
}

proptest! {
    #[test]
    fn tracker_matches_oracle(ops in proptest::collection::vec(0u8..5, 0..80), c in 2u8..4) {
        let mut tracker = SquareTracker::new();
        let mut model: Vec<Symbol> = Vec::new();
        for op in ops {
            if op == 4 {
                tracker.pop();
                model.pop();
            } else {
                let s = op % c;
                tracker.push(s);
                model.push(s);
            }
            prop_assert_eq!(tracker.symbols(), model.as_slice());
            let want = (1..=model.len() / 2)
                .find(|&h| model[model.len() - h..] == model[model.len() - 2 * h..model.len() - h]);
            prop_assert_eq!(tracker.shortest_suffix_square(1).map(|r| r.half), want);
        }
    }

    #[test]
    fn quadratic_matches_oracle(w in proptest::collection::vec(0u8..3, 0..60), h_min in 1usize..4) {
        prop_assert_eq!(first_square_quadratic(&w, h_min), oracle_min_square(&w, h_min));
    }

    #[test]
    fn words_round_trip_through_text(w in proptest::collection::vec(0u8..26, 0..40)) {
        let word = Word::from(w.clone());
        let text = word.to_text().unwrap();
        prop_assert_eq!(Word::parse(&text).unwrap().into_symbols(), w);
    }
}
