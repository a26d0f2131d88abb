use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thuelab_core::codecs::{
    decode_erase_log, decode_search_log, encode_erase_log, encode_search_log, reconstruct_heights,
    ReducedGameLog, TypedSearchLog,
};
use thuelab_core::games::{
    play_erase_game, run_search_simulation, AnnChooser, Ben, Mover, RandomAnn,
};
use thuelab_core::list_chooser::{
    decode_alg1_log, encode_alg1_log, run_alg1, Alg1Log, ListSystem, ScriptedChoices,
    UniformChoices,
};
use thuelab_core::{Error, Result, Symbol};

/// Picks `allowed[index]` for a fixed stream of indices.
struct IndexedAnn {
    indices: Vec<usize>,
    next: usize,
}

impl AnnChooser for IndexedAnn {
    fn pick(&mut self, allowed: &[Symbol]) -> Result<Symbol> {
        let i = self.indices[self.next];
        self.next += 1;
        allowed.get(i).copied().ok_or(Error::InvalidChoice {
            position: i,
            len: allowed.len(),
        })
    }
}

fn index_streams(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..base.pow(len as u32)).map(move |mut k| {
        (0..len)
            .map(|_| {
                let d = k % base;
                k /= base;
                d
            })
            .collect()
    })
}

#[test]
fn alg1_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.gen_range(1..120);
        let size = rng.gen_range(2..6);
        let lists = if rng.gen_bool(0.5) {
            ListSystem::identical(n, size)
        } else {
            ListSystem::random_pool(n, size, &mut rng)
        };
        let budget = rng.gen_range(1..20 * n);
        let run = run_alg1(&lists, &mut UniformChoices(ChaCha8Rng::seed_from_u64(rng.gen())), budget)
            .unwrap();
        let log = encode_alg1_log(&run);
        let back: Alg1Log = serde_json::from_str(&serde_json::to_string(&log).unwrap()).unwrap();
        assert_eq!(back, log);
        assert_eq!(decode_alg1_log(&back, &lists).unwrap(), run.trace());
    }
}

#[test]
fn alg1_logs_are_injective() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for lists in [ListSystem::identical(9, 4), ListSystem::random_pool(9, 4, &mut rng)] {
        for m in 1..=8 {
            let mut seen: HashMap<Alg1Log, Vec<usize>> = HashMap::new();
            for stream in index_streams(4, m) {
                let positions: Vec<usize> = stream.iter().map(|i| i + 1).collect();
                let run = run_alg1(&lists, &mut ScriptedChoices::new(positions.clone()), m).unwrap();
                if run.steps_used() < m {
                    continue;
                }
                let log = encode_alg1_log(&run);
                assert_eq!(decode_alg1_log(&log, &lists).unwrap().0, positions);
                if let Some(prev) = seen.insert(log, positions.clone()) {
                    panic!("streams {prev:?} and {positions:?} share a log");
                }
            }
            assert!(!seen.is_empty());
        }
    }
}

#[test]
fn erase_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..1000 {
        let ben = &Ben::builtins()[trial % 4];
        let target = rng.gen_range(1..80);
        let budget = rng.gen_range(1..600);
        let out = play_erase_game(8, &mut RandomAnn::seeded(rng.gen()), ben, target, budget).unwrap();
        let log = encode_erase_log(&out.trace);
        let back: ReducedGameLog =
            serde_json::from_str(&serde_json::to_string(&log).unwrap()).unwrap();
        assert_eq!(back, log);
        assert_eq!(decode_erase_log(&back, ben, 8).unwrap(), out.trace.ann_choices());
    }
}

#[test]
fn erase_logs_are_injective() {
    for ben in Ben::builtins() {
        for m in 1..=4 {
            let mut seen: HashMap<ReducedGameLog, Vec<Symbol>> = HashMap::new();
            for stream in index_streams(8, m) {
                let mut ann = IndexedAnn { indices: stream, next: 0 };
                let Ok(out) = play_erase_game(8, &mut ann, &ben, usize::MAX, 2 * m) else {
                    continue;
                };
                let choices = out.trace.ann_choices();
                assert_eq!(choices.len(), m);
                let log = encode_erase_log(&out.trace);
                assert_eq!(decode_erase_log(&log, &ben, 8).unwrap(), choices);
                if let Some(prev) = seen.insert(log, choices.clone()) {
                    assert_eq!(prev, choices, "{} shares a log", ben.name());
                }
            }
            // 8 * 7 * 6 * 5 openings at most, 5^m once three symbols are held.
            assert!(seen.len() >= 5usize.pow(m as u32));
        }
    }
}

#[test]
fn search_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..1000 {
        let ben = &Ben::builtins()[trial % 4];
        let target = rng.gen_range(1..100);
        let weight = rng.gen_range(1..200);
        let out = run_search_simulation(6, &mut RandomAnn::seeded(rng.gen()), ben, target, weight)
            .unwrap();
        let log = encode_search_log(&out.trace).unwrap();
        let back: TypedSearchLog =
            serde_json::from_str(&serde_json::to_string(&log).unwrap()).unwrap();
        assert_eq!(back, log);
        let (steps, _) = out.trace.through_last_ann_step();
        let heights = reconstruct_heights(&back).unwrap();
        let recorded: Vec<usize> = steps.iter().map(|s| s.height).collect();
        assert_eq!(&heights.heights[..recorded.len()], recorded.as_slice());
        let movers: Vec<Mover> = steps.iter().map(|s| s.mover).collect();
        assert_eq!(&heights.movers[..movers.len()], movers.as_slice());
        assert_eq!(decode_search_log(&back, ben, 6).unwrap(), out.trace.ann_choices());
    }
}

#[test]
fn search_logs_are_injective() {
    for ben in Ben::builtins() {
        for m in 1..=4 {
            let mut seen: HashMap<TypedSearchLog, Vec<Symbol>> = HashMap::new();
            for stream in index_streams(6, m) {
                let mut ann = IndexedAnn { indices: stream, next: 0 };
                let Ok(out) = run_search_simulation(6, &mut ann, &ben, usize::MAX, m) else {
                    continue;
                };
                let choices = out.trace.ann_choices();
                assert_eq!(choices.len(), m);
                let log = encode_search_log(&out.trace).unwrap();
                assert_eq!(decode_search_log(&log, &ben, 6).unwrap(), choices);
                if let Some(prev) = seen.insert(log, choices.clone()) {
                    assert_eq!(prev, choices, "{} shares a log", ben.name());
                }
            }
            assert!(seen.len() >= 4usize.pow(m as u32));
        }
    }
}

#[test]
fn corrupted_logs_fail_cleanly() {
    let out = play_erase_game(8, &mut RandomAnn::seeded(1), &Ben::Cycle { offset: 0 }, 60, 400).unwrap();
    let log = encode_erase_log(&out.trace);
    let mut text: serde_json::Value = serde_json::to_value(&log).unwrap();
    text["m"] = serde_json::json!(0);
    assert!(serde_json::from_value::<ReducedGameLog>(text).is_err());

    let out = run_search_simulation(6, &mut RandomAnn::seeded(2), &Ben::Mimic, 60, 100).unwrap();
    let log = encode_search_log(&out.trace).unwrap();
    let mut v = serde_json::to_value(&log).unwrap();
    v["s"] = serde_json::json!("1");
    match serde_json::from_value::<TypedSearchLog>(v) {
        Err(_) => {}
        Ok(bad) => assert!(decode_search_log(&bad, &Ben::Mimic, 6).is_err()),
    }
}
