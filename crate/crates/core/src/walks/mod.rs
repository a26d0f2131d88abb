//! Weighted walk families, their generating series, defining polynomials,
//! discriminants and growth rates.
//!
//! A walk of length `m` is a sequence of steps `d_1..d_m`, each taken from a
//! [`StepSystem`] with a positive weight, whose prefix sums stay `>= 1` and
//! whose total is exactly 1. `T_m` is the weighted number of such walks.

mod growth;
mod poly;
mod resultant;
mod roots;
mod series;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use growth::{
    counting_bound_report, growth_report, BoundReport, BoundRow, Comparison, GrowthReport,
};
pub use poly::{BiPoly, IntPoly};
pub use resultant::{discriminant_wrt_t, resultant_wrt_t, Discriminant};
pub use roots::{positive_roots_in_unit_interval, CertifiedRoot, ROOT_BRACKET_WIDTH};
pub use series::{check_defining_polynomial, series_from_equation, PowerSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepSystem {
    /// Every `d <= 1` with weight 1.
    Alg1,
    /// `+1` and every `d <= -3`, weight 1.
    Erase,
    /// `+1` and `-1` with weight 1, every `d <= -2` with weight 4.
    Search,
}

impl StepSystem {
    pub const ALL: [StepSystem; 3] = [StepSystem::Alg1, StepSystem::Erase, StepSystem::Search];

    pub fn name(self) -> &'static str {
        match self {
            StepSystem::Alg1 => "alg1",
            StepSystem::Erase => "erase",
            StepSystem::Search => "search",
        }
    }

    /// Isolated nonpositive steps `(d, weight)` above the tail.
    fn isolated_steps(self) -> &'static [(i64, u32)] {
        match self {
            StepSystem::Search => &[(-1, 1)],
            _ => &[],
        }
    }

    /// `(top, weight)`: every `d <= top` is allowed with this weight.
    fn tail(self) -> (i64, u32) {
        match self {
            StepSystem::Alg1 => (0, 1),
            StepSystem::Erase => (-3, 1),
            StepSystem::Search => (-2, 4),
        }
    }

    /// Weight of step `d`, 0 when the step is not allowed.
    pub fn weight(self, d: i64) -> u32 {
        if d == 1 {
            return 1;
        }
        if let Some(&(_, w)) = self.isolated_steps().iter().find(|&&(s, _)| s == d) {
            return w;
        }
        let (top, w) = self.tail();
        if d <= top {
            w
        } else {
            0
        }
    }

    /// `P(z, t)` with `P(z, t(z)) = 0` for the generating series `t(z)`.
    pub fn defining_polynomial(self) -> BiPoly {
        match self {
            StepSystem::Alg1 => BiPoly::from_terms(&[(1, 1, 0), (-1, 0, 1), (1, 0, 2)]),
            StepSystem::Erase => {
                BiPoly::from_terms(&[(1, 1, 0), (-1, 0, 1), (-1, 1, 1), (1, 0, 2), (1, 1, 4)])
            }
            StepSystem::Search => BiPoly::from_terms(&[
                (1, 1, 0),
                (-1, 0, 1),
                (-1, 1, 1),
                (1, 0, 2),
                (1, 1, 2),
                (3, 1, 3),
            ]),
        }
    }

    /// The discriminant factor whose root in `(0, 1]` is the radius of
    /// convergence, in the form usually quoted.
    pub fn reference_discriminant(self) -> IntPoly {
        match self {
            StepSystem::Alg1 => IntPoly::from_i64s(&[1, -4]),
            StepSystem::Erase => IntPoly::from_i64s(&[-4, -19, 32, -2, 36, 229]),
            StepSystem::Search => IntPoly::from_i64s(&[1, 12, -24, -80, -288]),
        }
    }
}

impl fmt::Display for StepSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StepSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StepSystem::ALL
            .into_iter()
            .find(|sys| sys.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "step system",
                detail: format!("{s:?} is not one of alg1, erase, search"),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WalkCount {
    pub m: usize,
    pub value: BigUint,
}

/// Applies one step of the height DP. `row[h]` is the weighted number of
/// prefixes ending at height `h` (index 0 unused after the first step); the
/// result has one more entry. Suffix sums make the unbounded tail `O(len)`.
fn dp_step<T, F>(sys: StepSystem, row: &[T], zero: T, add: F, scale: impl Fn(&T, u32) -> T) -> Vec<T>
where
    T: Clone,
    F: Fn(&T, &T) -> T,
{
    let len = row.len();
    // suffix[h] = sum of row[j] for j >= h.
    let mut suffix = vec![zero.clone(); len + 1];
    for h in (0..len).rev() {
        suffix[h] = add(&suffix[h + 1], &row[h]);
    }
    let at = |v: &[T], i: i64| -> T {
        if i >= 0 && (i as usize) < v.len() {
            v[i as usize].clone()
        } else {
            zero.clone()
        }
    };
    let (top, tail_w) = sys.tail();
    let mut next = vec![zero.clone(); len + 1];
    for (h, slot) in next.iter_mut().enumerate().skip(1) {
        let hi = h as i64;
        let mut acc = at(row, hi - 1);
        for &(d, w) in sys.isolated_steps() {
            acc = add(&acc, &scale(&at(row, hi - d), w));
        }
        acc = add(&acc, &scale(&at(&suffix, hi - top), tail_w));
        *slot = acc;
    }
    next
}

/// Exact `T_1..T_{m_max}`.
pub fn count_walks(sys: StepSystem, m_max: usize) -> Vec<WalkCount> {
    let mut row = vec![BigUint::from(1u32)];
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        row = dp_step(
            sys,
            &row,
            BigUint::zero(),
            |a, b| a + b,
            |a, w| if w == 1 { a.clone() } else { a * w },
        );
        out.push(WalkCount {
            m,
            value: row[1].clone(),
        });
    }
    out
}

/// `log2 T_m` for `m = 1..=m_max` from a floating DP whose rows are rescaled
/// by their maximum after every step.
#[derive(Debug, Clone, PartialEq)]
pub struct LogWalkTable {
    pub system: StepSystem,
    /// Entry `m - 1` holds `log2 T_m`; `-inf` when `T_m = 0`.
    pub log2_counts: Vec<f64>,
    /// A-priori bound on the relative error of each `T_m` estimate.
    pub relative_error_bound: Vec<f64>,
}

impl LogWalkTable {
    pub fn new(sys: StepSystem, m_max: usize) -> Self {
        let mut row = vec![1.0f64];
        let mut log_scale = 0.0f64;
        let mut err = 0.0f64;
        let mut log2_counts = Vec::with_capacity(m_max);
        let mut relative_error_bound = Vec::with_capacity(m_max);
        for _ in 0..m_max {
            row = dp_step(sys, &row, 0.0, |a, b| a + b, |a, w| a * f64::from(w));
            // Every entry is a sum of at most len + 3 positive terms.
            err += (row.len() as f64 + 4.0) * f64::EPSILON;
            let max = row.iter().cloned().fold(0.0, f64::max);
            if max > 0.0 {
                for x in &mut row {
                    *x /= max;
                }
                log_scale += max.log2();
            }
            let t = row[1];
            log2_counts.push(if t > 0.0 { t.log2() + log_scale } else { f64::NEG_INFINITY });
            relative_error_bound.push(err);
        }
        Self {
            system: sys,
            log2_counts,
            relative_error_bound,
        }
    }

    pub fn m_max(&self) -> usize {
        self.log2_counts.len()
    }

    /// `log2 T_m`, for `1 <= m <= m_max`.
    pub fn log2(&self, m: usize) -> f64 {
        self.log2_counts[m - 1]
    }

    /// `T_{m+1} / T_m`.
    pub fn ratio(&self, m: usize) -> f64 {
        (self.log2(m + 1) - self.log2(m)).exp2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(sys: StepSystem, m: usize) -> Vec<u64> {
        count_walks(sys, m)
            .into_iter()
            .map(|c| u64::try_from(c.value).unwrap())
            .collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(values(StepSystem::Alg1, 4), [1, 1, 2, 5]);
        assert_eq!(values(StepSystem::Erase, 5), [1, 0, 0, 0, 1]);
        assert_eq!(values(StepSystem::Search, 4), [1, 0, 1, 4]);
    }

    #[test]
    fn weights() {
        assert_eq!(StepSystem::Erase.weight(-2), 0);
        assert_eq!(StepSystem::Erase.weight(-3), 1);
        assert_eq!(StepSystem::Search.weight(0), 0);
        assert_eq!(StepSystem::Search.weight(-1), 1);
        assert_eq!(StepSystem::Search.weight(-7), 4);
        assert_eq!(StepSystem::Alg1.weight(0), 1);
        assert_eq!(StepSystem::Alg1.weight(2), 0);
    }

    #[test]
    fn log_table_tracks_exact_counts() {
        for sys in StepSystem::ALL {
            let exact = count_walks(sys, 300);
            let table = LogWalkTable::new(sys, 300);
            for c in &exact {
                if c.value.is_zero() {
                    assert_eq!(table.log2(c.m), f64::NEG_INFINITY);
                    continue;
                }
                let bits = c.value.bits() as i64;
                let shift = (bits - 60).max(0) as usize;
                let top: f64 = u64::try_from(&c.value >> shift).unwrap() as f64;
                let exact_log = top.log2() + shift as f64;
                assert!((table.log2(c.m) - exact_log).abs() < 1e-9, "{sys} m={}", c.m);
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for sys in StepSystem::ALL {
            assert_eq!(sys.name().parse::<StepSystem>().unwrap(), sys);
        }
        assert!("nope".parse::<StepSystem>().is_err());
    }
}
