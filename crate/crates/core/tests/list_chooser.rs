use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thuelab_core::list_chooser::{
    alg1_stats, decode_alg1_log, encode_alg1_log, run_alg1, DifferenceSequence, ListGenerator,
    ListSystem, StatsConfig, UniformChoices,
};
use thuelab_core::words::{is_nonrepetitive, oracle_min_square};
use thuelab_core::Symbol;

/// Replays a run step by step with the direct scan, independent of the
/// incremental detector the chooser uses.
fn replay(lists: &ListSystem, seed: u64, budget: usize) {
    let run = run_alg1(lists, &mut UniformChoices::seeded(seed), budget).unwrap();
    let mut held: Vec<Symbol> = Vec::new();
    for step in &run.steps {
        assert_eq!(step.index, held.len() + 1);
        assert_eq!(lists.list(step.index).unwrap()[step.position - 1], step.symbol);
        held.push(step.symbol);
        let suffix = (1..=held.len() / 2)
            .find(|&h| held[held.len() - h..] == held[held.len() - 2 * h..held.len() - h]);
        assert_eq!(suffix.unwrap_or(0), step.erased);
        held.truncate(held.len() - step.erased);
        assert!(oracle_min_square(&held, 1).is_none());
    }
    assert_eq!(held, run.word.as_slice());
}

#[test]
fn runs_keep_the_held_word_square_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..200 {
        let lists = ListSystem::random_pool(40, 4, &mut rng);
        replay(&lists, seed, 4000);
        replay(&ListSystem::identical(40, 3), seed, 300);
    }
}

#[test]
fn stats_complete_within_budget() {
    let report = alg1_stats(&StatsConfig::new(4, vec![50, 200], 20, 9));
    assert_eq!(report.invalid_words, 0);
    for row in &report.rows {
        assert_eq!(row.completed, row.trials);
        assert!(row.steps_per_symbol() >= 1.0 && row.steps_per_symbol() < 5.0);
    }
    let mut pool = StatsConfig::new(4, vec![100], 10, 9);
    pool.generator = ListGenerator::RandomDisjointPool;
    assert_eq!(alg1_stats(&pool).rows[0].completed, 10);
    assert!(report.to_csv().starts_with("n,trials,mean_steps,max_steps,completed\n"));
}

#[test]
fn completed_words_follow_their_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let lists = ListSystem::random_pool(300, 4, &mut rng);
    let run = run_alg1(&lists, &mut UniformChoices::seeded(1), 30_000).unwrap();
    assert!(run.is_completed());
    assert!(is_nonrepetitive(&run.word));
    for (i, &s) in run.word.iter().enumerate() {
        assert!(lists.list(i + 1).unwrap().contains(&s));
    }
}

proptest! {
    #[test]
    fn difference_sequences_validate(d in proptest::collection::vec(-3i64..=1, 1..30)) {
        let mut sum = 0;
        let valid = d[0] == 1 && d.iter().all(|&x| { sum += x; sum >= 1 });
        prop_assert_eq!(DifferenceSequence::new(d).is_ok(), valid);
    }

    #[test]
    fn logs_round_trip(seed in any::<u64>(), n in 1usize..60, size in 2usize..6, budget in 1usize..400) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists = ListSystem::random_pool(n, size, &mut rng);
        let run = run_alg1(&lists, &mut UniformChoices(rng), budget).unwrap();
        let log = encode_alg1_log(&run);
        prop_assert_eq!(log.steps(), run.steps_used());
        prop_assert_eq!(decode_alg1_log(&log, &lists).unwrap(), run.trace());
    }
}
