//! Command-line interface to the group-testing library.
//!
//! Every command prints a JSON report to stdout unless `--out` redirects
//! the artifact to a file. Exit codes: 0 for a clean pass, 2 when the
//! requested analysis completed with a negative verdict (a bound violated,
//! a verification or construction failure, an infeasible budget), 1 for
//! usage, parse, I/O, and work-cap errors. Item and pool indices are
//! 1-based on the command line and in JSON.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gt_core::adaptive::{
    choose_strategy, hwang_test_target, hwang_yes_bound, measure_max_yes, staged_test_bound,
    OracleSession, Runner, Strategy,
};
use gt_core::bounds::{evaluate, BoundQuery, Theorem};
use gt_core::config::Caps;
use gt_core::designs::{build_explicit, default_z, sample_design, sampler_failure_bound, SamplerConfig};
use gt_core::harness::{rows_to_csv, rows_to_json, sweep, RowVerdict, SweepSpec};
use gt_core::model::{DefectiveSet, Design, ResponseVector};
use gt_core::pipeline::{decode_cover, decode_separable, run_two_stage, verify_for_two_stage};
use gt_core::verify::{is_pd_cover_free, is_separable, is_union_bounded, lym_diagnostic, Mode};
use gt_core::Error;

#[derive(Parser)]
#[command(name = "gt", version, about = "Group testing under a budget on positive responses")]
struct Cli {
    /// Config file with work caps, one key=value per line.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed-form bound on tests or positive responses.
    Bounds(BoundsArgs),
    /// Choose, replay, or measure an adaptive strategy.
    Adaptive(AdaptiveArgs),
    /// Create and check non-adaptive designs.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Decode a response vector of a non-adaptive design.
    Nonadaptive(NonadaptiveArgs),
    /// Run the two-stage pipeline on a verified design.
    Twostage(TwostageArgs),
    /// Sweep a strategy grid and emit conformance rows.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct BoundsArgs {
    /// Bound identifier; see --list.
    #[arg(long)]
    theorem: Option<String>,
    /// List all bound identifiers.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AdaptiveArgs {
    /// Number of items.
    #[arg(long)]
    n: u64,
    /// Bound on the number of defectives.
    #[arg(long)]
    d: u64,
    /// Test budget.
    #[arg(long)]
    t: u64,
    /// Positive-response budget to check against, if any.
    #[arg(long)]
    y: Option<u64>,
    /// Force a strategy (individual, staged, hwang) instead of choosing.
    #[arg(long)]
    strategy: Option<String>,
    /// Stage count, required with --strategy staged.
    #[arg(long)]
    f: Option<u32>,
    /// Replay one hidden set, comma-separated 1-based items; empty for none.
    #[arg(long)]
    hidden: Option<String>,
    /// Measure by sampling instead of exhaustively: seed,samples.
    #[arg(long, value_name = "SEED,SAMPLES")]
    sampled: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DesignCmd {
    /// Sample a random design, verifying every draw before acceptance.
    GenRandom(GenRandomArgs),
    /// Build a design deterministically from a distance-checked code.
    GenExplicit(GenExplicitArgs),
    /// Verify a design file against declared or given parameters.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenRandomArgs {
    /// Number of pools.
    #[arg(long)]
    t: u64,
    /// Number of items.
    #[arg(long)]
    n: u64,
    /// Defective bound the design must support.
    #[arg(long)]
    d: u64,
    /// Surplus parameter of the cover-freeness target.
    #[arg(long, default_value_t = 1)]
    p: u64,
    /// Weight bound on every union of d columns.
    #[arg(long)]
    s: u64,
    /// Per-entry zero probability; defaults to the analytical value.
    #[arg(long)]
    z: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Attempt budget; defaults to the configured cap.
    #[arg(long)]
    max_attempts: Option<u32>,
    /// Write the accepted design file here; otherwise it is inlined.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenExplicitArgs {
    /// Defective bound.
    #[arg(long)]
    d: u64,
    /// Field size, a prime power with q >= 2d + 2.
    #[arg(long)]
    q: u64,
    /// Code length; the design has m*q pools.
    #[arg(long)]
    m: usize,
    /// Write the design file here; otherwise it is inlined.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Design file to verify.
    #[arg(long, value_name = "FILE")]
    file: PathBuf,
    /// Defective bound; defaults to the file's declaration.
    #[arg(long)]
    d: Option<u64>,
    /// Surplus parameter; defaults to the declaration, then 1.
    #[arg(long)]
    p: Option<u64>,
    /// Union weight bound; defaults to the declaration when present.
    #[arg(long)]
    s: Option<u64>,
    /// Also check separability for this candidate-set size.
    #[arg(long)]
    separable: Option<u64>,
    /// Include the antichain diagnostic.
    #[arg(long)]
    lym: bool,
    /// Verify by sampling instead of exhaustively: seed,samples.
    #[arg(long, value_name = "SEED,SAMPLES")]
    sampled: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NonadaptiveArgs {
    /// Design file.
    #[arg(long, value_name = "FILE")]
    file: PathBuf,
    /// Simulate the response of this hidden set, 1-based; empty for none.
    #[arg(long)]
    hidden: Option<String>,
    /// Explicit response bits, pool 1 first, e.g. 0110.
    #[arg(long)]
    response: Option<String>,
    /// Decoder: cover or separable.
    #[arg(long, default_value = "cover")]
    decoder: String,
    /// Candidate-set size bound for the separable decoder.
    #[arg(long)]
    d: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TwostageArgs {
    /// Design file with a d/p/s declaration.
    #[arg(long, value_name = "FILE")]
    file: PathBuf,
    /// Hidden set, comma-separated 1-based items; empty for none.
    #[arg(long, default_value = "")]
    hidden: String,
    /// Verify the design by sampling instead of exhaustively: seed,samples.
    #[arg(long, value_name = "SEED,SAMPLES")]
    sampled: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated item counts.
    #[arg(long)]
    n: String,
    /// Comma-separated defective bounds.
    #[arg(long)]
    d: String,
    /// Comma-separated test budgets.
    #[arg(long)]
    t: String,
    /// Measure rows by sampling instead of exhaustively: seed,samples.
    #[arg(long, value_name = "SEED,SAMPLES")]
    sampled: Option<String>,
    /// Output format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Worker threads; overrides the configured value.
    #[arg(long)]
    workers: Option<usize>,
    /// Write the artifact here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let caps = load_caps(&cli.config)?;
    match cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Adaptive(args) => cmd_adaptive(args, &caps),
        Command::Design(DesignCmd::GenRandom(args)) => cmd_gen_random(args, &caps),
        Command::Design(DesignCmd::GenExplicit(args)) => cmd_gen_explicit(args, &caps),
        Command::Design(DesignCmd::Verify(args)) => cmd_verify(args, &caps),
        Command::Nonadaptive(args) => cmd_nonadaptive(args, &caps),
        Command::Twostage(args) => cmd_twostage(args, &caps),
        Command::Sweep(args) => cmd_sweep(args, &caps),
    }
}

fn load_caps(config: &Option<PathBuf>) -> anyhow::Result<Caps> {
    match config {
        None => Ok(Caps::default()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            Ok(Caps::from_config_text(&text)?)
        }
    }
}

fn emit(value: &serde_json::Value, out: &Option<PathBuf>) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Map analysis outcomes that are negative verdicts rather than usage
/// errors to a structured report and exit code 2.
fn verdict_or_bail(err: Error, out: &Option<PathBuf>) -> anyhow::Result<i32> {
    let kind = match &err {
        Error::VerificationFailed(_) => "verification-failed",
        Error::SamplerExhausted { .. } => "sampler-exhausted",
        Error::ConstructionFailure(_) => "construction-failure",
        Error::Infeasible(_) => "infeasible",
        _ => return Err(err.into()),
    };
    emit(&json!({ "status": "failed", "kind": kind, "error": err.to_string() }), out)?;
    Ok(2)
}

fn up(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

/// Parse a comma-separated list; an empty string is an empty grid axis.
fn parse_u64_list(raw: &str, what: &str) -> anyhow::Result<Vec<u64>> {
    if raw.trim().is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| anyhow!("invalid {what} value {:?}", tok.trim()))
        })
        .collect()
}

fn parse_hidden(raw: &str, n: usize) -> anyhow::Result<DefectiveSet> {
    if raw.trim().is_empty() {
        return Ok(DefectiveSet::empty());
    }
    let mut items = Vec::new();
    for tok in raw.split(',') {
        let v: usize = tok
            .trim()
            .parse()
            .map_err(|_| anyhow!("invalid item index {:?}", tok.trim()))?;
        if v == 0 {
            bail!("item indices are 1-based; 0 is not an item");
        }
        items.push(v - 1);
    }
    Ok(DefectiveSet::new(items, n)?)
}

fn parse_mode(sampled: &Option<String>) -> anyhow::Result<Mode> {
    match sampled {
        None => Ok(Mode::Auto),
        Some(raw) => {
            let (seed, samples) = raw
                .split_once(',')
                .ok_or_else(|| anyhow!("--sampled takes seed,samples"))?;
            Ok(Mode::Sampled {
                seed: seed.trim().parse().map_err(|_| anyhow!("invalid seed {seed:?}"))?,
                samples: samples.trim().parse().map_err(|_| anyhow!("invalid sample count {samples:?}"))?,
            })
        }
    }
}

fn parse_response(raw: &str, t: usize) -> anyhow::Result<ResponseVector> {
    if raw.len() != t {
        bail!("response has {} bits, design has {t} pools", raw.len());
    }
    let mut bits = gt_core::bits::BitVec::zeros(t);
    for (i, ch) in raw.bytes().enumerate() {
        match ch {
            b'0' => {}
            b'1' => bits.set(i, true),
            other => bail!("invalid response character {:?}", other as char),
        }
    }
    Ok(ResponseVector(bits))
}

fn load_design(path: &PathBuf) -> anyhow::Result<Design> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Design::parse_text(&text)?)
}

fn cmd_bounds(args: BoundsArgs) -> anyhow::Result<i32> {
    if args.list {
        emit(&json!({ "theorems": Theorem::all_ids() }), &args.out)?;
        return Ok(0);
    }
    let id = args.theorem.ok_or_else(|| anyhow!("--theorem is required unless --list is given"))?;
    let theorem: Theorem = id.parse()?;
    let query = BoundQuery { n: args.n, d: args.d, t: args.t, y: args.y, p: args.p, s: args.s };
    match evaluate(theorem, &query) {
        Ok(report) => {
            emit(&serde_json::to_value(&report)?, &args.out)?;
            Ok(0)
        }
        Err(err) => verdict_or_bail(err, &args.out),
    }
}

fn strategy_bounds(n: u64, d: u64, strategy: Strategy) -> (u64, u64) {
    match strategy {
        Strategy::Individual => (n, d),
        Strategy::Staged { f } => (staged_test_bound(n, d, f), u64::from(f) * d),
        Strategy::Hwang => (hwang_test_target(n, d), hwang_yes_bound(n, d)),
    }
}

fn cmd_adaptive(args: AdaptiveArgs, caps: &Caps) -> anyhow::Result<i32> {
    if args.n < 1 || args.d < 1 || args.d > args.n {
        bail!("adaptive needs 1 <= d <= n, got n={} d={}", args.n, args.d);
    }
    let strategy = match args.strategy.as_deref() {
        None => match choose_strategy(args.n, args.d, args.t) {
            Ok(s) => s,
            Err(err) => return verdict_or_bail(err, &args.out),
        },
        Some("individual") => Strategy::Individual,
        Some("hwang") => Strategy::Hwang,
        Some("staged") => Strategy::Staged {
            f: args.f.ok_or_else(|| anyhow!("--f is required with --strategy staged"))?,
        },
        Some(other) => bail!("unknown strategy {other:?}; use individual, staged, or hwang"),
    };

    if let Some(raw) = &args.hidden {
        let hidden = parse_hidden(raw, args.n as usize)?;
        let runner = Runner::prepare(args.n, args.d, strategy)?;
        let mut session = OracleSession::new(args.n as usize, hidden.clone());
        let answered = runner.run(&mut session);
        let transcript = session.into_transcript();
        let tests = transcript.tests() as u64;
        let yes = transcript.yes_count() as u64;
        let ok_correct = answered == hidden;
        let ok_tests = tests <= args.t;
        let ok_yes = args.y.map(|y| yes <= y);
        let ok = ok_correct && ok_tests && ok_yes.unwrap_or(true);
        let entries: Vec<serde_json::Value> = transcript
            .entries()
            .iter()
            .map(|e| json!({ "pool": up(&e.pool), "positive": e.positive }))
            .collect();
        emit(
            &json!({
                "n": args.n, "d": args.d, "t": args.t, "y": args.y,
                "strategy": strategy.id(), "f": strategy.staged_f(),
                "hidden": up(hidden.items()),
                "answered": up(answered.items()),
                "tests": tests, "yes": yes,
                "transcript": entries,
                "ok_correct": ok_correct, "ok_tests": ok_tests, "ok_yes": ok_yes,
                "ok": ok,
            }),
            &args.out,
        )?;
        return Ok(if ok { 0 } else { 2 });
    }

    let mode = parse_mode(&args.sampled)?;
    let report = match measure_max_yes(args.n as usize, args.d, strategy, mode, caps) {
        Ok(r) => r,
        Err(err) => return verdict_or_bail(err, &args.out),
    };
    let (test_bound, yes_bound) = strategy_bounds(args.n, args.d, strategy);
    let ok_budget_tests = report.max_tests <= args.t;
    let ok_budget_yes = args.y.map(|y| report.max_yes <= y);
    let ok_test_bound = report.max_tests <= test_bound;
    let ok_yes_bound = report.max_yes <= yes_bound;
    let ok_correct = report.failures == 0;
    let ok = ok_budget_tests
        && ok_budget_yes.unwrap_or(true)
        && ok_test_bound
        && ok_yes_bound
        && ok_correct;
    emit(
        &json!({
            "n": args.n, "d": args.d, "t": args.t, "y": args.y,
            "strategy": strategy.id(), "f": strategy.staged_f(),
            "test_bound": test_bound, "yes_bound": yes_bound,
            "report": report,
            "ok_budget_tests": ok_budget_tests, "ok_budget_yes": ok_budget_yes,
            "ok_test_bound": ok_test_bound, "ok_yes_bound": ok_yes_bound,
            "ok_correct": ok_correct,
            "ok": ok,
        }),
        &args.out,
    )?;
    Ok(if ok { 0 } else { 2 })
}

fn cmd_gen_random(args: GenRandomArgs, caps: &Caps) -> anyhow::Result<i32> {
    if args.t < 1 || args.n < 1 || args.d < 1 || args.p < 1 || args.s < 1 {
        bail!("gen-random needs t, n, d, p, s all at least 1");
    }
    if args.s > args.t {
        bail!("weight bound s={} cannot exceed the pool count t={}", args.s, args.t);
    }
    if args.n < args.d + args.p {
        bail!("gen-random needs n >= d + p, got n={} d={} p={}", args.n, args.d, args.p);
    }
    let cfg = SamplerConfig {
        t: args.t as usize,
        n: args.n as usize,
        d: args.d,
        p: args.p,
        s: args.s,
        z: args.z,
        seed: args.seed,
        max_attempts: args.max_attempts.unwrap_or(caps.sampler_max_attempts),
    };
    let z_used = args.z.unwrap_or_else(|| default_z(args.t, args.s, args.d, args.p));
    let failure_bound = sampler_failure_bound(args.t, args.s, args.d, args.p, args.n);
    match sample_design(&cfg, caps) {
        Ok(outcome) => {
            let text = outcome.design.to_text();
            if let Some(path) = &args.out {
                fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(
                &json!({
                    "status": "ok",
                    "t": args.t, "n": args.n, "d": args.d, "p": args.p, "s": args.s,
                    "z": z_used, "failure_bound": failure_bound,
                    "seed": args.seed, "attempts": outcome.attempts,
                    "reports": outcome.reports,
                    "design": args.out.is_none().then_some(&text),
                    "written": args.out.as_ref().map(|p| p.display().to_string()),
                }),
                &None,
            )?;
            Ok(0)
        }
        Err(err) => verdict_or_bail(err, &None),
    }
}

fn cmd_gen_explicit(args: GenExplicitArgs, caps: &Caps) -> anyhow::Result<i32> {
    match build_explicit(args.d, args.q, args.m, caps) {
        Ok(out) => {
            let text = out.design.to_text();
            if let Some(path) = &args.out {
                fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(
                &json!({
                    "status": "ok",
                    "q": args.q, "m": args.m,
                    "k": out.code.k(), "dist": out.code.min_dist(),
                    "lambda": out.lambda,
                    "n": out.design.n(), "t": out.design.t(), "s": out.s,
                    "min_union": out.min_union,
                    "reports": out.reports,
                    "design": args.out.is_none().then_some(&text),
                    "written": args.out.as_ref().map(|p| p.display().to_string()),
                }),
                &None,
            )?;
            Ok(0)
        }
        Err(err) => verdict_or_bail(err, &None),
    }
}

fn cmd_verify(args: VerifyArgs, caps: &Caps) -> anyhow::Result<i32> {
    let design = load_design(&args.file)?;
    let meta = design.meta();
    let d = args
        .d
        .or(meta.map(|m| m.d))
        .ok_or_else(|| anyhow!("the file declares no parameters; pass --d"))?;
    let p = args.p.or(meta.map(|m| m.p)).unwrap_or(1);
    let s = args.s.or(meta.map(|m| m.s));
    let mode = parse_mode(&args.sampled)?;
    let mut reports = vec![is_pd_cover_free(&design, p, d, mode, caps)?];
    if let Some(s) = s {
        reports.push(is_union_bounded(&design, d, s, mode, caps)?);
    }
    if let Some(sep) = args.separable {
        reports.push(is_separable(&design, sep, mode, caps)?);
    }
    let lym = args.lym.then(|| lym_diagnostic(&design));
    let holds = reports.iter().all(|r| r.holds);
    emit(
        &json!({
            "file": args.file.display().to_string(),
            "n": design.n(), "pools": design.t(),
            "d": d, "p": p, "s": s,
            "reports": reports,
            "lym": lym,
            "holds": holds,
        }),
        &args.out,
    )?;
    Ok(if holds { 0 } else { 2 })
}

fn cmd_nonadaptive(args: NonadaptiveArgs, caps: &Caps) -> anyhow::Result<i32> {
    let design = load_design(&args.file)?;
    let (response, hidden) = match (&args.hidden, &args.response) {
        (Some(raw), None) => {
            let set = parse_hidden(raw, design.n())?;
            (design.respond(&set), Some(set))
        }
        (None, Some(raw)) => (parse_response(raw, design.t())?, None),
        _ => bail!("pass exactly one of --hidden or --response"),
    };
    let response_text: String = (0..design.t())
        .map(|i| if response.get(i) { '1' } else { '0' })
        .collect();
    let base = json!({
        "file": args.file.display().to_string(),
        "n": design.n(), "pools": design.t(),
        "hidden": hidden.as_ref().map(|h| up(h.items())),
        "response": response_text,
        "yes_count": response.yes_count(),
        "decoder": args.decoder,
    });
    let mut payload = base;
    match args.decoder.as_str() {
        "cover" => {
            let candidates = decode_cover(&design, &response);
            payload["candidates"] = json!(up(&candidates));
            emit(&payload, &args.out)?;
            Ok(0)
        }
        "separable" => {
            let d = args
                .d
                .or(design.meta().map(|m| m.d))
                .ok_or_else(|| anyhow!("the separable decoder needs --d or a declaration in the file"))?;
            match decode_separable(&design, d, &response, caps) {
                Ok(set) => {
                    payload["decoded"] = json!(up(set.items()));
                    emit(&payload, &args.out)?;
                    Ok(0)
                }
                Err(err) => verdict_or_bail(err, &args.out),
            }
        }
        other => bail!("unknown decoder {other:?}; use cover or separable"),
    }
}

fn cmd_twostage(args: TwostageArgs, caps: &Caps) -> anyhow::Result<i32> {
    let design = load_design(&args.file)?;
    let n = design.n();
    let mode = parse_mode(&args.sampled)?;
    let vc = match verify_for_two_stage(design, mode, caps) {
        Ok(vc) => vc,
        Err(err) => return verdict_or_bail(err, &args.out),
    };
    let hidden = parse_hidden(&args.hidden, n)?;
    let (outcome, _) = run_two_stage(&vc, &hidden)?;
    let within_promise = (hidden.len() as u64) <= vc.d();
    let candidate_bound = vc.p() + vc.d() - 1;
    let yes_bound = vc.s() + vc.d();
    let ok_confirmed = outcome.confirmed == hidden.items();
    let ok_candidates = !within_promise || outcome.candidates.len() as u64 <= candidate_bound;
    let ok_yes = !within_promise || outcome.total_yes() <= yes_bound;
    let ok = ok_confirmed && ok_candidates && ok_yes;
    emit(
        &json!({
            "file": args.file.display().to_string(),
            "n": n, "pools": vc.design().t(),
            "d": vc.d(), "p": vc.p(), "s": vc.s(),
            "hidden": up(hidden.items()),
            "within_promise": within_promise,
            "candidate_bound": candidate_bound,
            "yes_bound": yes_bound,
            "outcome": outcome,
            "ok_confirmed": ok_confirmed,
            "ok_candidates": ok_candidates,
            "ok_yes": ok_yes,
            "ok": ok,
        }),
        &args.out,
    )?;
    Ok(if ok { 0 } else { 2 })
}

fn cmd_sweep(args: SweepArgs, caps: &Caps) -> anyhow::Result<i32> {
    let spec = SweepSpec {
        n_values: parse_u64_list(&args.n, "n")?,
        d_values: parse_u64_list(&args.d, "d")?,
        t_values: parse_u64_list(&args.t, "t")?,
        mode: parse_mode(&args.sampled)?,
    };
    let mut caps = caps.clone();
    if let Some(workers) = args.workers {
        caps.workers = workers;
    }
    let rows = sweep(&spec, &caps);
    let artifact = match args.format.as_str() {
        "csv" => rows_to_csv(&rows),
        "json" => rows_to_json(&rows),
        other => bail!("unknown format {other:?}; use json or csv"),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, artifact).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{artifact}"),
    }
    let any_fail = rows.iter().any(|r| r.ok == RowVerdict::Fail);
    Ok(if any_fail { 2 } else { 0 })
}
