use super::{Repetition, SquareTracker, Symbol};

/// Whether `w[end-2h .. end-h] == w[end-h .. end]` (1-based `end`).
pub fn has_square_at(w: &[Symbol], end: usize, half: usize) -> bool {
    half >= 1 && end <= w.len() && end >= 2 * half && {
        let (a, b) = (&w[end - 2 * half..end - half], &w[end - half..end]);
        a == b
    }
}

/// Direct scan over every `(end, half)` pair. This is the reference detector
/// that the faster ones are checked against.
pub fn is_nonrepetitive(w: &[Symbol]) -> bool {
    is_nonrepetitive_from(w, 1)
}

/// No square with half at least `h_min` anywhere in `w` (direct scan).
pub fn is_nonrepetitive_from(w: &[Symbol], h_min: usize) -> bool {
    oracle_min_square(w, h_min).is_none()
}

/// Direct-scan version of [`min_square_at_least`]: smallest end, then smallest half.
pub fn oracle_min_square(w: &[Symbol], h_min: usize) -> Option<Repetition> {
    let h_min = h_min.max(1);
    (1..=w.len()).find_map(|end| {
        (h_min..=end / 2)
            .find(|&half| has_square_at(w, end, half))
            .map(|half| Repetition { end, half })
    })
}

/// Among squares of half at least `h_min`, the one with the smallest end,
/// ties broken by the smallest half.
///
/// Runs the incremental [`SquareTracker`] over the prefixes of `w`: the first
/// prefix with a suffix square gives the smallest end.
pub fn min_square_at_least(w: &[Symbol], h_min: usize) -> Option<Repetition> {
    let mut tracker = SquareTracker::with_capacity(w.len());
    for &s in w {
        tracker.push(s);
        if let Some(rep) = tracker.shortest_suffix_square(h_min) {
            return Some(rep);
        }
    }
    None
}

/// O(n²) detector: for each half `h`, a square ends at the first place where
/// `h` consecutive positions satisfy `w[i] == w[i - h]`.
pub fn first_square_quadratic(w: &[Symbol], h_min: usize) -> Option<Repetition> {
    let n = w.len();
    let mut best: Option<Repetition> = None;
    for half in h_min.max(1)..=n / 2 {
        let limit = best.map_or(n, |b| b.end);
        let mut run = 0;
        for i in half..n.min(limit) {
            if w[i] == w[i - half] {
                run += 1;
                if run >= half {
                    let rep = Repetition { end: i + 1, half };
                    if best.is_none_or(|b| (rep.end, rep.half) < (b.end, b.half)) {
                        best = Some(rep);
                    }
                    break;
                }
            } else {
                run = 0;
            }
        }
    }
    best
}

/// The square of smallest half `>= h_min` ending at the last position of `w`.
pub fn shortest_suffix_square(w: &[Symbol], h_min: usize) -> Option<Repetition> {
    let end = w.len();
    (h_min.max(1)..=end / 2)
        .find(|&half| has_square_at(w, end, half))
        .map(|half| Repetition { end, half })
}

/// Every square of half `>= h_min` ending at the last position, by increasing half.
pub fn all_suffix_squares(w: &[Symbol], h_min: usize) -> Vec<Repetition> {
    let end = w.len();
    (h_min.max(1)..=end / 2)
        .filter(|&half| has_square_at(w, end, half))
        .map(|half| Repetition { end, half })
        .collect()
}
