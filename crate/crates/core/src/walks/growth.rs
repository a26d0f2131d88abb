use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{discriminant_wrt_t, positive_roots_in_unit_interval, CertifiedRoot, LogWalkTable, StepSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub system: StepSystem,
    pub m_max: usize,
    /// `(m, T_{m+1} / T_m)` at ten evenly spaced `m`, ending at `m_max`.
    pub ratios: Vec<(usize, f64)>,
    /// The unique discriminant root in `(0, 1]`, if there is exactly one.
    pub rho: Option<CertifiedRoot>,
    /// `|ratio(m_max) * rho - 1|`.
    pub relative_gap: Option<f64>,
    pub comparisons: Vec<Comparison>,
}

impl GrowthReport {
    pub fn final_ratio(&self) -> f64 {
        self.ratios.last().map_or(f64::NAN, |&(_, r)| r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "system": self.system,
            "m_max": self.m_max,
            "ratios": self.ratios,
            "rho": self.rho.as_ref().map(CertifiedRoot::to_json),
            "inverse_rho": self.rho.as_ref().map(|r| 1.0 / r.value()),
            "relative_gap": self.relative_gap,
            "comparisons": self.comparisons,
        })
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Walk-count growth against the discriminant root. The comparisons are
/// decided on the exact lower end of the root bracket.
pub fn growth_report(sys: StepSystem, m_max: usize) -> Result<GrowthReport> {
    if m_max < 2 {
        return Err(Error::InvalidArgument("m_max must be at least 2".into()));
    }
    let table = LogWalkTable::new(sys, m_max + 1);
    let ratios = (1..=10)
        .map(|i| {
            let m = (m_max * i / 10).max(1);
            (m, table.ratio(m))
        })
        .collect::<Vec<_>>();
    let disc = discriminant_wrt_t(&sys.defining_polynomial())?;
    let mut roots = positive_roots_in_unit_interval(&disc.z_free);
    let rho = (roots.len() == 1).then(|| roots.remove(0));
    let final_ratio = ratios.last().map(|&(_, r)| r).unwrap_or(f64::NAN);
    let relative_gap = rho.as_ref().map(|r| (final_ratio * r.value() - 1.0).abs());
    let mut comparisons = Vec::new();
    if let Some(r) = &rho {
        match sys {
            StepSystem::Erase => comparisons.push(Comparison {
                statement: "rho > 5^(-1/2)".into(),
                holds: &r.lo * &r.lo > rational(1, 5),
            }),
            StepSystem::Search => comparisons.push(Comparison {
                statement: "rho > 1/4".into(),
                holds: r.lo > rational(1, 4),
            }),
            StepSystem::Alg1 => comparisons.push(Comparison {
                statement: "rho = 1/4".into(),
                holds: r.lo == rational(1, 4) && r.hi == r.lo,
            }),
        }
    }
    Ok(GrowthReport {
        system: sys,
        m_max,
        ratios,
        rho,
        relative_gap,
        comparisons,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRow {
    pub m: usize,
    pub lhs_log2: f64,
    pub rhs_log2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub system: StepSystem,
    pub c: usize,
    pub n: usize,
    pub rows: Vec<BoundRow>,
    /// Smallest `M` whose choice count exceeds the number of possible logs.
    pub crossover: Option<usize>,
}

impl BoundReport {
    pub fn at(&self, m: usize) -> Option<&BoundRow> {
        self.rows.get(m.checked_sub(1)?)
    }
}

/// Compares, in bits, the number of random choice streams of length `M`
/// with an upper bound on the number of logs a failing run can produce:
///
/// * `alg1`: `C^M` against `n * T_M * C^n`,
/// * `erase`: `(C - 3)^M` against `2M * n * T_{2M+3} * C^n`,
/// * `search`: `(C - 2)^M` against `n * T_{M+1} * C^n`,
///
/// for `M = 1..=m_max`. `T_k` is replaced by `max_{j <= k} T_j` so that
/// lengths with no walks cannot fake a crossover.
pub fn counting_bound_report(sys: StepSystem, c: usize, n: usize, m_max: usize) -> Result<BoundReport> {
    if n == 0 || m_max == 0 {
        return Err(Error::InvalidArgument("n and the M range must be positive".into()));
    }
    let (choices, index): (usize, fn(usize) -> usize) = match sys {
        StepSystem::Alg1 => (c, |m| m),
        StepSystem::Erase => (c.saturating_sub(3), |m| 2 * m + 3),
        StepSystem::Search => (c.saturating_sub(2), |m| m + 1),
    };
    if choices == 0 {
        return Err(Error::InvalidArgument(format!("C = {c} leaves Ann no choice in {sys}")));
    }
    let table = LogWalkTable::new(sys, index(m_max));
    let mut envelope = Vec::with_capacity(table.m_max());
    let mut best = f64::NEG_INFINITY;
    for k in 1..=table.m_max() {
        best = best.max(table.log2(k));
        envelope.push(best);
    }
    let word_bits = n as f64 * (c as f64).log2() + (n as f64).log2();
    let rows: Vec<BoundRow> = (1..=m_max)
        .map(|m| {
            let mut rhs = word_bits + envelope[index(m) - 1];
            if sys == StepSystem::Erase {
                rhs += (2.0 * m as f64).log2();
            }
            BoundRow {
                m,
                lhs_log2: m as f64 * (choices as f64).log2(),
                rhs_log2: rhs,
            }
        })
        .collect();
    let crossover = rows.iter().find(|r| r.lhs_log2 > r.rhs_log2).map(|r| r.m);
    Ok(BoundReport {
        system: sys,
        c,
        n,
        rows,
        crossover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_matches_roots() {
        for sys in StepSystem::ALL {
            let r = growth_report(sys, 2000).unwrap();
            assert!(r.relative_gap.unwrap() < 0.05, "{sys}: {:?}", r.relative_gap);
            assert!(r.comparisons.iter().all(|c| c.holds), "{sys}");
        }
    }

    #[test]
    fn crossovers_exist_at_n5() {
        for (sys, c) in [(StepSystem::Alg1, 4), (StepSystem::Erase, 8), (StepSystem::Search, 6)] {
            let rep = counting_bound_report(sys, c, 5, 3000).unwrap();
            let m = rep.crossover.unwrap_or_else(|| panic!("{sys}: no crossover"));
            let row = rep.at(m).unwrap();
            assert!(row.lhs_log2 > row.rhs_log2);
            assert!(rep.rows[..m - 1].iter().all(|r| r.lhs_log2 <= r.rhs_log2));
        }
    }

    #[test]
    fn no_choice_is_rejected() {
        assert!(counting_bound_report(StepSystem::Erase, 3, 5, 10).is_err());
        assert!(counting_bound_report(StepSystem::Search, 6, 0, 10).is_err());
    }
}
