use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thuelab_core::codecs::{
    decode_erase_log, decode_search_log, encode_erase_log, encode_search_log, ReducedGameLog,
    TypedSearchLog,
};
use thuelab_core::games::{
    make_ben, play_erase_game, play_nonrep_game, run_search_simulation, Ben, EraseStatus,
    NonrepResult, RandomAnn, SearchStatus,
};
use thuelab_core::list_chooser::{
    alg1_stats, decode_alg1_log, encode_alg1_log, run_alg1, Alg1Log, ListGenerator, ListSystem,
    StatsConfig, UniformChoices,
};
use thuelab_core::session::{GameSession, SessionKind, SessionStatus, SessionTrace};
use thuelab_core::walks::{
    check_defining_polynomial, count_walks, counting_bound_report, discriminant_wrt_t,
    growth_report, positive_roots_in_unit_interval, series_from_equation, BiPoly, IntPoly,
    StepSystem,
};
use thuelab_core::words::{is_nonrepetitive, min_square_at_least, thue_word, Word};

use crate::args::{
    BenArgs, ChooseArgs, CodecCommand, CodecKind, Command, Format, GameArgs, SystemName,
    WalksCommand,
};

/// What a finished command prints and how it exits.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout }
    }

    fn verdict(passed: bool, stdout: String) -> Self {
        Self {
            code: if passed { 0 } else { 1 },
            stdout,
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

impl From<SystemName> for StepSystem {
    fn from(s: SystemName) -> Self {
        match s {
            SystemName::Alg1 => StepSystem::Alg1,
            SystemName::Erase => StepSystem::Erase,
            SystemName::Search => StepSystem::Search,
        }
    }
}

/// Runs every subcommand except `serve`.
pub fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Check { word, format } => check(&word, format),
        Command::Thue { len, verify } => thue(len, verify),
        Command::Choose(args) => choose(&args),
        Command::EraseGame(args) => erase_game(&args),
        Command::NonrepGame(args) => nonrep_game(&args),
        Command::SearchSim(args) => search_sim(&args),
        Command::Codec(cmd) => codec(cmd),
        Command::Walks(cmd) => walks(cmd),
        Command::Serve { .. } => bail!("serve is handled by the binary"),
    }
}

fn check(text: &str, format: Format) -> Result<Outcome> {
    let word = Word::parse(text)?;
    let rep = min_square_at_least(&word, 1);
    let stdout = match (format, rep) {
        (Format::Json, _) => pretty(&json!({
            "word": word,
            "square_free": rep.is_none(),
            "repetition": rep,
            "square": rep.map(|r| Word::from(r.square(&word)).to_string()),
        })),
        (_, Some(r)) => format!(
            "square \"{}\" at end={}, h={}\n",
            Word::from(r.square(&word)),
            r.end,
            r.half
        ),
        (_, None) => "square-free\n".to_string(),
    };
    Ok(Outcome::verdict(rep.is_none(), stdout))
}

fn thue(len: usize, verify: bool) -> Result<Outcome> {
    let w = thue_word(len);
    let mut stdout = format!("{w}\n");
    if verify {
        let good = w.len() == len && is_nonrepetitive(&w);
        stdout.push_str(if good { "verified square-free\n" } else { "VERIFICATION FAILED\n" });
        return Ok(Outcome::verdict(good, stdout));
    }
    Ok(Outcome::ok(stdout))
}

fn choose(args: &ChooseArgs) -> Result<Outcome> {
    if args.stats {
        let mut config = StatsConfig::new(args.list_size, args.n.clone(), args.trials, args.seed.seed);
        config.generator = ListGenerator::from_name(&args.generator)?;
        config.budget_factor = args.budget_factor;
        if args.list_size < 3 {
            bail!("lists need at least 3 entries");
        }
        let report = alg1_stats(&config);
        let stdout = match args.format {
            Format::Csv => report.to_csv(),
            _ => pretty(&json!({
                "report": report,
                "steps_per_symbol": report.rows.iter().map(|r| r.steps_per_symbol()).collect::<Vec<_>>(),
            })),
        };
        return Ok(Outcome::verdict(report.invalid_words == 0, stdout));
    }
    let path = args.lists.as_deref().context("--lists is required")?;
    let lists = ListSystem::parse(&read(path)?)?;
    let budget = args.budget.unwrap_or(100 * lists.len().max(1));
    let run = run_alg1(&lists, &mut UniformChoices::seeded(args.seed.seed), budget)?;
    let log = encode_alg1_log(&run);
    let roundtrip = decode_alg1_log(&log, &lists)? == run.trace();
    let completed = run.is_completed();
    let checked = !completed || is_nonrepetitive(&run.word);
    let stdout = match args.format {
        Format::Text => format!(
            "{} after {} steps: {}\n",
            if completed { "completed" } else { "budget exhausted" },
            run.steps_used(),
            run.word
        ),
        _ => pretty(&json!({
            "status": run.status,
            "n": lists.len(),
            "steps_used": run.steps_used(),
            "word": run.word,
            "steps": run.steps,
            "log": log,
            "log_roundtrip": roundtrip,
            "multiple_suffix_squares": run.multiple_suffix_squares,
        })),
    };
    Ok(Outcome::verdict(completed && roundtrip && checked, stdout))
}

fn ben_from(args: &BenArgs, c: usize) -> Result<Ben> {
    let table;
    let param = match &args.ben_table {
        Some(path) => {
            table = read(path)?;
            Some(table.as_str())
        }
        None => args.ben_param.as_deref(),
    };
    Ok(make_ben(&args.ben, param, c)?)
}

fn erase_game(args: &GameArgs) -> Result<Outcome> {
    let c = args.c.unwrap_or(8);
    let ben = ben_from(&args.ben, c)?;
    let budget = args.budget.unwrap_or(100 * args.n + 100);
    let outcome = play_erase_game(c, &mut RandomAnn::seeded(args.seed.seed), &ben, args.n, budget)?;
    let trace = &outcome.trace;
    let log = encode_erase_log(trace);
    let roundtrip = decode_erase_log(&log, &ben, c)? == trace.ann_choices();
    let reached = outcome.status == EraseStatus::AnnReachedN;
    let stdout = match args.format {
        Format::Text => format!(
            "{:?} after {} moves ({} by Ann): {}\n",
            outcome.status,
            trace.moves.len(),
            trace.ann_moves(),
            trace.word
        ),
        _ => pretty(&json!({
            "game": "erase",
            "c": c,
            "ben": ben.name(),
            "seed": args.seed.seed,
            "target_n": args.n,
            "status": outcome.status,
            "ann_moves": trace.ann_moves(),
            "word": trace.word,
            "moves": trace.moves,
            "log": log,
            "log_roundtrip": roundtrip,
            "multiple_suffix_squares": trace.multiple_suffix_squares,
        })),
    };
    Ok(Outcome::verdict(reached && roundtrip, stdout))
}

fn nonrep_game(args: &GameArgs) -> Result<Outcome> {
    let c = args.c.unwrap_or(6);
    let ben = ben_from(&args.ben, c)?;
    let outcome = play_nonrep_game(c, &mut RandomAnn::seeded(args.seed.seed), &ben, args.n)?;
    let stdout = match args.format {
        Format::Text => match outcome.result {
            NonrepResult::AnnWins => format!("Ann wins: {}\n", outcome.word),
            NonrepResult::BenWins { repetition } => format!(
                "Ben wins at end={}, h={}: {}\n",
                repetition.end, repetition.half, outcome.word
            ),
        },
        _ => pretty(&json!({
            "game": "nonrep",
            "c": c,
            "ben": ben.name(),
            "seed": args.seed.seed,
            "target_n": args.n,
            "result": outcome.result,
            "word": outcome.word,
            "moves": outcome.moves,
        })),
    };
    Ok(Outcome::ok(stdout))
}

fn search_sim(args: &GameArgs) -> Result<Outcome> {
    let c = args.c.unwrap_or(6);
    let ben = ben_from(&args.ben, c)?;
    let budget = args.budget.unwrap_or(100 * args.n + 100);
    let outcome = run_search_simulation(c, &mut RandomAnn::seeded(args.seed.seed), &ben, args.n, budget)?;
    let trace = &outcome.trace;
    let log = encode_search_log(trace)?;
    let roundtrip = decode_search_log(&log, &ben, c)? == trace.ann_choices();
    let reached = outcome.status == SearchStatus::ReachedN;
    let stdout = match args.format {
        Format::Text => format!(
            "{:?} after weight {} ({} steps, longest adversary run {}): {}\n",
            outcome.status,
            trace.weight,
            trace.steps.len(),
            trace.longest_ben_run(),
            trace.word
        ),
        _ => pretty(&json!({
            "game": "search",
            "c": c,
            "ben": ben.name(),
            "seed": args.seed.seed,
            "target_n": args.n,
            "status": outcome.status,
            "weight": trace.weight,
            "word": trace.word,
            "steps": trace.steps,
            "log": log,
            "log_roundtrip": roundtrip,
            "multiple_suffix_squares": trace.multiple_suffix_squares,
        })),
    };
    Ok(Outcome::verdict(reached && roundtrip, stdout))
}

fn codec(cmd: CodecCommand) -> Result<Outcome> {
    match cmd {
        CodecCommand::Fuzz { which, trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.seed);
            let mut ok = 0;
            let mut first_failure = None;
            for trial in 0..trials {
                match fuzz_once(which, &mut rng) {
                    Ok(true) => ok += 1,
                    Ok(false) => {
                        first_failure.get_or_insert_with(|| format!("trial {trial}: mismatch"));
                    }
                    Err(e) => {
                        first_failure.get_or_insert_with(|| format!("trial {trial}: {e}"));
                    }
                }
            }
            let mut stdout = format!("{ok}/{trials} roundtrips ok\n");
            if let Some(f) = first_failure {
                stdout.push_str(&format!("first failure: {f}\n"));
            }
            Ok(Outcome::verdict(ok == trials, stdout))
        }
        CodecCommand::Decode {
            which,
            log,
            lists,
            ben,
            c,
        } => {
            let text = read(&log)?;
            let decoded = match which {
                CodecKind::Alg1 => {
                    let path = lists.context("alg1 logs need --lists")?;
                    let lists = ListSystem::parse(&read(&path)?)?;
                    let log: Alg1Log = serde_json::from_str(&text).context("bad alg1 log")?;
                    decode_alg1_log(&log, &lists).map(|t| json!({ "positions": t }))
                }
                CodecKind::Erase => {
                    let c = c.unwrap_or(8);
                    let log: ReducedGameLog = serde_json::from_str(&text).context("bad erase log")?;
                    decode_erase_log(&log, &ben_from(&ben, c)?, c).map(|s| json!({ "ann_choices": s }))
                }
                CodecKind::Search => {
                    let c = c.unwrap_or(6);
                    let log: TypedSearchLog = serde_json::from_str(&text).context("bad search log")?;
                    decode_search_log(&log, &ben_from(&ben, c)?, c).map(|s| json!({ "ann_choices": s }))
                }
            };
            Ok(match decoded {
                Ok(v) => Outcome::ok(pretty(&v)),
                Err(e) => Outcome::verdict(false, pretty(&json!({ "error": e.to_string() }))),
            })
        }
        CodecCommand::ReplaySession { trace } => replay_session(&read(&trace)?),
    }
}

/// Generates one random run, pushes its log through JSON and decodes it.
fn fuzz_once(which: CodecKind, rng: &mut ChaCha8Rng) -> Result<bool> {
    let sub_seed = rng.gen::<u64>();
    match which {
        CodecKind::Alg1 => {
            let n = rng.gen_range(1..=60);
            let size = rng.gen_range(3..=5);
            let generator = if rng.gen() {
                ListGenerator::Identical
            } else {
                ListGenerator::RandomDisjointPool
            };
            let lists = generator.generate(n, size, rng);
            let budget = rng.gen_range(1..=20 * n);
            let run = run_alg1(&lists, &mut UniformChoices::seeded(sub_seed), budget)?;
            let json = serde_json::to_string(&encode_alg1_log(&run))?;
            let log: Alg1Log = serde_json::from_str(&json)?;
            Ok(decode_alg1_log(&log, &lists)? == run.trace())
        }
        CodecKind::Erase => {
            let c = rng.gen_range(4..=9);
            let ben = random_ben(rng, c);
            let n = rng.gen_range(1..=60);
            let budget = rng.gen_range(1..=400);
            let out = play_erase_game(c, &mut RandomAnn::seeded(sub_seed), &ben, n, budget)?;
            let json = serde_json::to_string(&encode_erase_log(&out.trace))?;
            let log: ReducedGameLog = serde_json::from_str(&json)?;
            Ok(decode_erase_log(&log, &ben, c)? == out.trace.ann_choices())
        }
        CodecKind::Search => {
            let c = rng.gen_range(3..=8);
            let ben = random_ben(rng, c);
            let n = rng.gen_range(1..=60);
            let budget = rng.gen_range(1..=300);
            let out = run_search_simulation(c, &mut RandomAnn::seeded(sub_seed), &ben, n, budget)?;
            let json = serde_json::to_string(&encode_search_log(&out.trace)?)?;
            let log: TypedSearchLog = serde_json::from_str(&json)?;
            Ok(decode_search_log(&log, &ben, c)? == out.trace.ann_choices())
        }
    }
}

fn random_ben(rng: &mut ChaCha8Rng, c: usize) -> Ben {
    match rng.gen_range(0..4) {
        0 => Ben::Mimic,
        1 => Ben::Constant(rng.gen_range(0..c) as u8),
        2 => Ben::Cycle { offset: rng.gen_range(0..c) },
        _ => Ben::GreedyThreat { offset: rng.gen_range(0..c) },
    }
}

/// Replays a session trace move by move, then checks that the adversary's
/// answers form a consistent table and, for erase sessions, that the
/// trace's reduced log decodes back to Ann's choices.
fn replay_session(text: &str) -> Result<Outcome> {
    let trace: SessionTrace = serde_json::from_str(text).context("bad session trace")?;
    let mut session = GameSession::new(trace.config)?;
    let mut replay_error = None;
    for s in trace.ben_moves() {
        if let Err(e) = session.apply_ben(s as usize) {
            replay_error = Some(e.to_string());
            break;
        }
    }
    let replayed = replay_error.is_none() && session.trace() == trace;
    let table = trace.ben_table();
    let mut report = json!({
        "kind": trace.config.kind,
        "status": trace.status,
        "moves": trace.moves.len(),
        "replayed": replayed,
        "replay_error": replay_error,
        "consistent_adversary": table.is_ok(),
    });
    let mut passed = replayed && table.is_ok();
    if let (Ok(table), SessionKind::Erase) = (table, trace.config.kind) {
        let game = trace.game_trace();
        let log = encode_erase_log(&game);
        let decoded = decode_erase_log(&log, &Ben::Table(table), trace.config.alphabet)
            .is_ok_and(|a| a == game.ann_choices());
        report["log"] = serde_json::to_value(&log)?;
        report["log_decodes"] = json!(decoded);
        passed &= decoded;
    }
    if trace.status == SessionStatus::Live {
        report["note"] = json!("session still live");
    }
    Ok(Outcome::verdict(passed, pretty(&report)))
}

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).with_context(|| format!("{what} is not valid JSON"))
}

fn walks(cmd: WalksCommand) -> Result<Outcome> {
    match cmd {
        WalksCommand::Count { system, m, format } => {
            let counts = count_walks(system.into(), m);
            let stdout = match format {
                Format::Json => pretty(&json!(counts
                    .iter()
                    .map(|c| json!({ "m": c.m, "t": c.value.to_string() }))
                    .collect::<Vec<_>>())),
                _ => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["m", "T_m"])?;
                    for c in &counts {
                        w.write_record([c.m.to_string(), c.value.to_string()])?;
                    }
                    String::from_utf8(w.into_inner()?)?
                }
            };
            Ok(Outcome::ok(stdout))
        }
        WalksCommand::Series { system, order } => {
            let sys: StepSystem = system.into();
            let series = series_from_equation(sys, order);
            let poly = sys.defining_polynomial();
            let verified = check_defining_polynomial(&poly, &series, order)?;
            let counts_match = count_walks(sys, order)
                .iter()
                .all(|c| series.coeff(c.m).to_string() == c.value.to_string());
            Ok(Outcome::verdict(
                verified && counts_match,
                pretty(&json!({
                    "system": sys,
                    "order": order,
                    "series": series.to_string(),
                    "coefficients": series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "polynomial": poly.to_string(),
                    "polynomial_coefficients": poly.to_json(),
                    "polynomial_vanishes": verified,
                    "matches_walk_counts": counts_match,
                })),
            ))
        }
        WalksCommand::Disc { system, poly } => {
            let (p, reference) = match (poly, system) {
                (Some(text), _) => (BiPoly::from_json(&parse_json(&text, "--poly")?)?, None),
                (None, Some(s)) => {
                    let s: StepSystem = s.into();
                    (s.defining_polynomial(), Some(s.reference_discriminant()))
                }
                (None, None) => bail!("give --sys or --poly"),
            };
            let d = discriminant_wrt_t(&p)?;
            let matches = reference.as_ref().map(|r| d.z_free.is_scalar_multiple_of(r));
            Ok(Outcome::verdict(
                matches != Some(false),
                pretty(&json!({
                    "polynomial": p.to_string(),
                    "discriminant": d.to_json(),
                    "z_free": d.z_free.to_string(),
                    "matches_reference": matches,
                })),
            ))
        }
        WalksCommand::Roots { system, poly } => {
            let (p, expect_one) = match (poly, system) {
                (Some(text), _) => (IntPoly::from_json(&parse_json(&text, "--poly")?)?, false),
                (None, Some(s)) => (discriminant_wrt_t(&StepSystem::from(s).defining_polynomial())?.z_free, true),
                (None, None) => bail!("give --sys or --poly"),
            };
            let roots = positive_roots_in_unit_interval(&p);
            Ok(Outcome::verdict(
                !expect_one || roots.len() == 1,
                pretty(&json!({
                    "polynomial": p.to_string(),
                    "roots": roots.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                })),
            ))
        }
        WalksCommand::Growth { system, m } => {
            let report = growth_report(system.into(), m)?;
            let holds = report.rho.is_some() && report.comparisons.iter().all(|c| c.holds);
            Ok(Outcome::verdict(holds, pretty(&report.to_json())))
        }
        WalksCommand::Bound {
            system,
            c,
            n,
            m_max,
            format,
        } => {
            let report = counting_bound_report(system.into(), c, n, m_max)?;
            let stdout = match format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["m", "lhs_log2", "rhs_log2"])?;
                    for r in &report.rows {
                        w.write_record([r.m.to_string(), r.lhs_log2.to_string(), r.rhs_log2.to_string()])?;
                    }
                    String::from_utf8(w.into_inner()?)?
                }
                _ => {
                    // Only the rows next to the crossover are worth printing.
                    let centre = report.crossover.unwrap_or(report.rows.len());
                    let window: Vec<_> = report
                        .rows
                        .iter()
                        .filter(|r| r.m + 5 >= centre && r.m <= centre + 5)
                        .collect();
                    pretty(&json!({
                        "system": report.system,
                        "c": report.c,
                        "n": report.n,
                        "m_max": m_max,
                        "crossover": report.crossover,
                        "rows_near_crossover": window,
                    }))
                }
            };
            Ok(Outcome::verdict(report.crossover.is_some(), stdout))
        }
    }
}
