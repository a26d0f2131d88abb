//! Choosing a square-free word from lists by random choice with
//! erase-on-repetition, together with the lossless log of a run.
//!
//! At step `j` the chooser holds a square-free prefix `s_1..s_{i-1}`, picks
//! `s_i` from `L_i`, and if a square `xx` now ends at position `i` it deletes
//! the second `x` (the last `h` symbols) and continues from `i - h + 1`. The
//! per-step change of `i` is recorded as `d_j` (`1` without an erasure,
//! `1 - h` otherwise). The pair (differences, final word) determines every
//! random choice of the run.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Notation, Symbol, SquareTracker, Word};

/// Lists `L_1..L_n`; the order inside each list defines choice positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListSystem {
    lists: Vec<Vec<Symbol>>,
}

impl ListSystem {
    pub fn new(lists: Vec<Vec<Symbol>>) -> Result<Self> {
        for (k, list) in lists.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidLists(format!("list {} is empty", k + 1)));
            }
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::InvalidLists(format!(
                    "list {} repeats a symbol",
                    k + 1
                )));
            }
        }
        Ok(Self { lists })
    }

    /// `n` copies of `(0, 1, .., size-1)`.
    pub fn identical(n: usize, size: usize) -> Self {
        let list: Vec<Symbol> = (0..size as Symbol).collect();
        Self {
            lists: vec![list; n],
        }
    }

    /// Each list is a uniform `size`-subset (in random order) of a pool of
    /// `3 * size` symbols.
    pub fn random_pool<R: Rng + ?Sized>(n: usize, size: usize, rng: &mut R) -> Self {
        let pool = 3 * size;
        let lists = (0..n)
            .map(|_| {
                sample(rng, pool, size)
                    .into_iter()
                    .map(|s| s as Symbol)
                    .collect()
            })
            .collect();
        Self { lists }
    }

    /// One list per line, symbols comma-separated. A symbol is a single
    /// lowercase letter or a 1-based decimal number.
    pub fn parse(text: &str) -> Result<Self> {
        let lists = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                line.split(',')
                    .map(|tok| parse_list_symbol(tok.trim()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(lists)
    }

    pub fn to_text(&self) -> String {
        let all: Vec<Symbol> = self.lists.iter().flatten().copied().collect();
        let notation = Notation::for_symbols(&all);
        let mut out = String::new();
        for list in &self.lists {
            let line: Vec<String> = list
                .iter()
                .map(|&s| match notation.render_symbol(s) {
                    Some(c) => c.to_string(),
                    None => (s as usize + 1).to_string(),
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// `L_index`, 1-based.
    pub fn list(&self, index: usize) -> Option<&[Symbol]> {
        index
            .checked_sub(1)
            .and_then(|k| self.lists.get(k))
            .map(Vec::as_slice)
    }

    /// 1-based position of `symbol` in `L_index`.
    pub fn position_of(&self, index: usize, symbol: Symbol) -> Option<usize> {
        self.list(index)?
            .iter()
            .position(|&s| s == symbol)
            .map(|p| p + 1)
    }
}

fn parse_list_symbol(tok: &str) -> Result<Symbol> {
    let err = || Error::Parse {
        what: "list symbol",
        detail: format!("{tok:?}"),
    };
    if let Ok(v) = tok.parse::<usize>() {
        return match v {
            1..=256 => Ok((v - 1) as Symbol),
            _ => Err(err()),
        };
    }
    let mut chars = tok.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Notation::Letters.parse_symbol(c).ok_or_else(err),
        _ => Err(err()),
    }
}

/// Supplies 1-based positions into the list consulted at each step.
pub trait ChoiceSource {
    fn next_position(&mut self, list_len: usize) -> Result<usize>;
}

/// Uniform positions from a seeded generator.
#[derive(Debug, Clone)]
pub struct UniformChoices<R>(pub R);

impl UniformChoices<ChaCha8Rng> {
    pub fn seeded(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl<R: Rng> ChoiceSource for UniformChoices<R> {
    fn next_position(&mut self, list_len: usize) -> Result<usize> {
        Ok(self.0.gen_range(1..=list_len))
    }
}

/// A fixed stream of positions; running out is an error.
#[derive(Debug, Clone)]
pub struct ScriptedChoices {
    positions: Vec<usize>,
    next: usize,
}

impl ScriptedChoices {
    pub fn new(positions: Vec<usize>) -> Self {
        Self { positions, next: 0 }
    }
}

impl ChoiceSource for ScriptedChoices {
    fn next_position(&mut self, list_len: usize) -> Result<usize> {
        let p = *self
            .positions
            .get(self.next)
            .ok_or(Error::ChoicesExhausted(self.next))?;
        self.next += 1;
        if p == 0 || p > list_len {
            return Err(Error::InvalidChoice {
                position: p,
                len: list_len,
            });
        }
        Ok(p)
    }
}

/// Positions `r_1..r_M` chosen during a run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChoiceTrace(pub Vec<usize>);

/// `d_1..d_M` with `d_1 = 1`, `d_j <= 1` and every prefix sum `>= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DifferenceSequence(Vec<i64>);

impl DifferenceSequence {
    pub fn new(d: Vec<i64>) -> Result<Self> {
        if let Some(&first) = d.first() {
            if first != 1 {
                return Err(Error::MalformedLog(format!("d_1 = {first}, expected 1")));
            }
        }
        let mut sum = 0i64;
        for (j, &dj) in d.iter().enumerate() {
            if dj > 1 {
                return Err(Error::MalformedLog(format!("d_{} = {dj} > 1", j + 1)));
            }
            sum += dj;
            if sum < 1 {
                return Err(Error::MalformedLog(format!(
                    "prefix sum {sum} < 1 at step {}",
                    j + 1
                )));
            }
        }
        Ok(Self(d))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// The (differences, final word) pair of a run after `M` steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Alg1LogJson", into = "Alg1LogJson")]
pub struct Alg1Log {
    pub diffs: DifferenceSequence,
    pub final_word: Word,
}

#[derive(Serialize, Deserialize)]
struct Alg1LogJson {
    d: Vec<i64>,
    s: Word,
    m: usize,
}

impl TryFrom<Alg1LogJson> for Alg1Log {
    type Error = Error;

    fn try_from(j: Alg1LogJson) -> Result<Self> {
        if j.m != j.d.len() {
            return Err(Error::MalformedLog(format!(
                "m = {} but {} differences",
                j.m,
                j.d.len()
            )));
        }
        Alg1Log::new(DifferenceSequence::new(j.d)?, j.s)
    }
}

impl From<Alg1Log> for Alg1LogJson {
    fn from(l: Alg1Log) -> Self {
        Self {
            m: l.diffs.len(),
            d: l.diffs.0,
            s: l.final_word,
        }
    }
}

impl Alg1Log {
    pub fn new(diffs: DifferenceSequence, final_word: Word) -> Result<Self> {
        if diffs.total() != final_word.len() as i64 {
            return Err(Error::MalformedLog(format!(
                "differences sum to {} but the word has length {}",
                diffs.total(),
                final_word.len()
            )));
        }
        Ok(Self { diffs, final_word })
    }

    pub fn steps(&self) -> usize {
        self.diffs.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alg1Status {
    Completed,
    BudgetExhausted,
}

/// One iteration of the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alg1Step {
    /// 1-based index `i` of the list consulted.
    pub index: usize,
    /// 1-based position chosen in `L_index`.
    pub position: usize,
    pub symbol: Symbol,
    /// Half of the erased square, 0 if none.
    pub erased: usize,
}

impl Alg1Step {
    pub fn difference(&self) -> i64 {
        1 - self.erased as i64
    }
}

/// Instrumented record of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alg1Run {
    pub status: Alg1Status,
    /// The held prefix after the last step.
    pub word: Word,
    pub steps: Vec<Alg1Step>,
    /// Steps at which more than one square ended at the appended position.
    pub multiple_suffix_squares: usize,
}

impl Alg1Run {
    pub fn steps_used(&self) -> usize {
        self.steps.len()
    }

    pub fn trace(&self) -> ChoiceTrace {
        ChoiceTrace(self.steps.iter().map(|s| s.position).collect())
    }

    pub fn is_completed(&self) -> bool {
        self.status == Alg1Status::Completed
    }
}

/// Runs the chooser for at most `step_budget` steps.
pub fn run_alg1(
    lists: &ListSystem,
    choices: &mut impl ChoiceSource,
    step_budget: usize,
) -> Result<Alg1Run> {
    let n = lists.len();
    let mut held = SquareTracker::with_capacity(n);
    let mut steps = Vec::new();
    let mut multiple = 0;
    while held.len() < n && steps.len() < step_budget {
        let index = held.len() + 1;
        let list = &lists.lists[index - 1];
        let position = choices.next_position(list.len())?;
        let symbol = list[position - 1];
        held.push(symbol);
        let mut erased = 0;
        if let Some(rep) = held.shortest_suffix_square(1) {
            if held.suffix_squares(1).len() > 1 {
                multiple += 1;
            }
            held.erase(rep);
            erased = rep.half;
        }
        debug_assert!(held.shortest_suffix_square(1).is_none());
        steps.push(Alg1Step {
            index,
            position,
            symbol,
            erased,
        });
    }
    let status = if held.len() == n {
        Alg1Status::Completed
    } else {
        Alg1Status::BudgetExhausted
    };
    Ok(Alg1Run {
        status,
        word: held.to_word(),
        steps,
        multiple_suffix_squares: multiple,
    })
}

pub fn encode_alg1_log(run: &Alg1Run) -> Alg1Log {
    let d = run.steps.iter().map(Alg1Step::difference).collect();
    Alg1Log {
        diffs: DifferenceSequence(d),
        final_word: run.word.clone(),
    }
}

/// Recovers `r_1..r_M` from a log by undoing the steps from last to first.
pub fn decode_alg1_log(log: &Alg1Log, lists: &ListSystem) -> Result<ChoiceTrace> {
    let d = DifferenceSequence::new(log.diffs.0.clone())?;
    let mut word: Vec<Symbol> = log.final_word.to_vec();
    let mut r = Vec::with_capacity(d.len());
    for (j, &dj) in d.as_slice().iter().enumerate().rev() {
        if dj <= 0 {
            let h = (1 - dj) as usize;
            let l = word.len();
            if h > l {
                return Err(Error::MalformedLog(format!(
                    "step {}: erased half {h} exceeds held length {l}",
                    j + 1
                )));
            }
            word.extend_from_within(l - h..l);
        }
        let index = word.len();
        let symbol = word.pop().ok_or_else(|| {
            Error::MalformedLog(format!("step {}: nothing left to undo", j + 1))
        })?;
        let position = lists.position_of(index, symbol).ok_or_else(|| {
            Error::MalformedLog(format!(
                "step {}: symbol {} is not in list {index}",
                j + 1,
                symbol as usize + 1
            ))
        })?;
        r.push(position);
    }
    if !word.is_empty() {
        return Err(Error::MalformedLog(format!(
            "{} symbols left after undoing every step",
            word.len()
        )));
    }
    r.reverse();
    Ok(ChoiceTrace(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ListGenerator {
    Identical,
    RandomDisjointPool,
}

impl ListGenerator {
    pub fn name(self) -> &'static str {
        match self {
            ListGenerator::Identical => "identical",
            ListGenerator::RandomDisjointPool => "random-disjoint-pool",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "identical" => Ok(ListGenerator::Identical),
            "random-disjoint-pool" => Ok(ListGenerator::RandomDisjointPool),
            other => Err(Error::InvalidArgument(format!(
                "unknown list generator {other:?}"
            ))),
        }
    }

    pub fn generate<R: Rng + ?Sized>(self, n: usize, size: usize, rng: &mut R) -> ListSystem {
        match self {
            ListGenerator::Identical => ListSystem::identical(n, size),
            ListGenerator::RandomDisjointPool => ListSystem::random_pool(n, size, rng),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatsConfig {
    pub list_size: usize,
    pub ns: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub generator: ListGenerator,
    /// Each run gets `budget_factor * n` steps.
    pub budget_factor: usize,
}

impl StatsConfig {
    pub fn new(list_size: usize, ns: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            list_size,
            ns,
            trials,
            seed,
            generator: ListGenerator::Identical,
            budget_factor: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub n: usize,
    pub trials: usize,
    pub mean_steps: f64,
    pub max_steps: usize,
    pub completed: usize,
}

impl StatsRow {
    pub fn completion_rate(&self) -> f64 {
        self.completed as f64 / self.trials.max(1) as f64
    }

    pub fn steps_per_symbol(&self) -> f64 {
        self.mean_steps / self.n as f64
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StatsReport {
    pub config: StatsConfig,
    /// Runs (over all rows) where a completed word failed the square check.
    pub invalid_words: usize,
    pub multiple_suffix_squares: usize,
    pub rows: Vec<StatsRow>,
}

impl StatsReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,trials,mean_steps,max_steps,completed\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.3},{},{}",
                r.n, r.trials, r.mean_steps, r.max_steps, r.completed
            );
        }
        out
    }
}

/// Runs `trials` seeded runs for every `n` and tabulates step counts.
/// Completed words are re-checked with the full square detector.
pub fn alg1_stats(config: &StatsConfig) -> StatsReport {
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let mut invalid = 0;
    let mut multiple = 0;
    let rows = config
        .ns
        .iter()
        .map(|&n| {
            let mut total = 0usize;
            let mut max_steps = 0usize;
            let mut completed = 0usize;
            for _ in 0..config.trials {
                let mut rng = ChaCha8Rng::seed_from_u64(master.next_u64());
                let lists = config.generator.generate(n, config.list_size, &mut rng);
                let mut choices = UniformChoices(rng);
                let run = run_alg1(&lists, &mut choices, config.budget_factor * n)
                    .expect("uniform choices are always valid");
                total += run.steps_used();
                max_steps = max_steps.max(run.steps_used());
                multiple += run.multiple_suffix_squares;
                if run.is_completed() {
                    completed += 1;
                    if crate::words::min_square_at_least(&run.word, 1).is_some() {
                        invalid += 1;
                    }
                }
            }
            StatsRow {
                n,
                trials: config.trials,
                mean_steps: total as f64 / config.trials.max(1) as f64,
                max_steps,
                completed,
            }
        })
        .collect();
    StatsReport {
        config: config.clone(),
        invalid_words: invalid,
        multiple_suffix_squares: multiple,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_nonrepetitive;

    fn abcd(n: usize) -> ListSystem {
        ListSystem::parse(&"a,b,c,d\n".repeat(n)).unwrap()
    }

    #[test]
    fn single_step_run() {
        let lists = abcd(1);
        let run = run_alg1(&lists, &mut ScriptedChoices::new(vec![3]), 10).unwrap();
        assert!(run.is_completed());
        assert_eq!(run.word.as_slice(), &[2]);
        let log = encode_alg1_log(&run);
        assert_eq!(log.diffs.as_slice(), &[1]);
        assert_eq!(decode_alg1_log(&log, &lists).unwrap(), ChoiceTrace(vec![3]));
    }

    #[test]
    fn hand_traced_erasure() {
        let lists = ListSystem::identical(2, 4);
        let run = run_alg1(&lists, &mut ScriptedChoices::new(vec![1, 1, 2]), 10).unwrap();
        assert!(run.is_completed());
        assert_eq!(run.word.to_text().unwrap(), "12");
        assert_eq!(run.steps.iter().map(|s| s.index).collect::<Vec<_>>(), [1, 2, 2]);
        let log = encode_alg1_log(&run);
        assert_eq!(log.diffs.as_slice(), &[1, 0, 1]);
        assert_eq!(log.final_word.to_text().unwrap(), "12");
        assert_eq!(decode_alg1_log(&log, &lists).unwrap(), ChoiceTrace(vec![1, 1, 2]));
    }

    #[test]
    fn impossible_system_exhausts_budget() {
        let lists = ListSystem::parse("a\na\n").unwrap();
        let run = run_alg1(&lists, &mut UniformChoices::seeded(1), 100).unwrap();
        assert_eq!(run.status, Alg1Status::BudgetExhausted);
        assert_eq!(run.steps_used(), 100);
        assert_eq!(run.word.len(), 1);
        let log = encode_alg1_log(&run);
        assert_eq!(decode_alg1_log(&log, &lists).unwrap(), run.trace());
    }

    #[test]
    fn invalid_scripted_position() {
        let lists = abcd(2);
        assert_eq!(
            run_alg1(&lists, &mut ScriptedChoices::new(vec![5]), 10),
            Err(Error::InvalidChoice { position: 5, len: 4 })
        );
        assert!(matches!(
            run_alg1(&lists, &mut ScriptedChoices::new(vec![1]), 10),
            Err(Error::ChoicesExhausted(1))
        ));
    }

    #[test]
    fn malformed_logs_are_rejected() {
        let lists = ListSystem::identical(2, 4);
        let bad = |d: Vec<i64>, s: &str| {
            DifferenceSequence::new(d).and_then(|d| Alg1Log::new(d, Word::parse(s).unwrap()))
        };
        assert!(bad(vec![0], "").is_err());
        assert!(bad(vec![1, 2], "123").is_err());
        assert!(bad(vec![1, -1], "").is_err());
        assert!(bad(vec![1, 1], "1").is_err());
        // Symbol 5 is not in any list.
        let log = bad(vec![1], "5").unwrap();
        assert!(matches!(
            decode_alg1_log(&log, &lists),
            Err(Error::MalformedLog(_))
        ));
        // Restoring would need position 3 but the system has two lists.
        let log = bad(vec![1, 1, 0], "12").unwrap();
        assert!(decode_alg1_log(&log, &lists).is_err());
    }

    #[test]
    fn every_step_holds_a_square_free_prefix() {
        for seed in 0..50 {
            let lists = ListSystem::random_pool(40, 4, &mut ChaCha8Rng::seed_from_u64(seed));
            let run = run_alg1(&lists, &mut UniformChoices::seeded(seed), 4000).unwrap();
            let mut held: Vec<Symbol> = Vec::new();
            for step in &run.steps {
                assert_eq!(step.index, held.len() + 1);
                held.push(step.symbol);
                held.truncate(held.len() - step.erased);
                assert!(is_nonrepetitive(&held));
            }
            assert_eq!(held, run.word.as_slice());
            assert!(run.is_completed());
            for (i, &s) in run.word.iter().enumerate() {
                assert!(lists.list(i + 1).unwrap().contains(&s));
            }
        }
    }

    #[test]
    fn log_json_shape() {
        let lists = ListSystem::identical(2, 4);
        let run = run_alg1(&lists, &mut ScriptedChoices::new(vec![1, 1, 2]), 10).unwrap();
        let json = serde_json::to_string(&encode_alg1_log(&run)).unwrap();
        assert_eq!(json, r#"{"d":[1,0,1],"s":"12","m":3}"#);
        let back: Alg1Log = serde_json::from_str(&json).unwrap();
        assert_eq!(back, encode_alg1_log(&run));
        assert!(serde_json::from_str::<Alg1Log>(r#"{"d":[1,0,1],"s":"12","m":2}"#).is_err());
    }

    #[test]
    fn list_file_round_trip() {
        let lists = ListSystem::parse("1,2,3\n3,4,12\n").unwrap();
        assert_eq!(lists.list(2).unwrap(), &[2, 3, 11]);
        assert_eq!(ListSystem::parse(&lists.to_text()).unwrap(), lists);
        assert!(ListSystem::parse("a,a\n").is_err());
        assert!(ListSystem::parse("a,,b\n").is_err());
    }

    #[test]
    fn stats_are_deterministic() {
        let cfg = StatsConfig::new(5, vec![50, 100], 5, 9);
        let a = alg1_stats(&cfg);
        let b = alg1_stats(&cfg);
        assert_eq!(a.rows, b.rows);
        assert!(a.rows.iter().all(|r| r.completion_rate() == 1.0));
        assert!(a.to_csv().starts_with("n,trials,mean_steps,max_steps,completed\n50,5,"));
    }
}
