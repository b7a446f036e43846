//! `ptpc`: exact minimum-weight codeword analysis for pre-transformed polar
//! codes (plain polar, Reed-Muller profiles, PAC convolutions, random and
//! explicit upper-triangular pre-transforms).

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use ptpc::bounds::{
    classify_cosets, dmin_statement, lb_locked_cosets, lb_rm_closed_form, union_bound_fer,
};
use ptpc::code_model::{CodeSpec, PacPolynomial, PreTransform};
use ptpc::enumerator::{count_min_weight_with, EnumerationOptions, EnumerationStats};
use ptpc::oracle::{brute_force_spectrum, OracleError, DEFAULT_DIMENSION_LIMIT};
use ptpc::polysearch::{search_with, SearchError, SearchOptions};
use report::{
    BoundsSection, CodeEcho, CosetRow, EnsembleSection, FerPoint, RankedRow, RunReport,
    SearchSection, StatsSection, TransformEcho, VerifySection, WideInt,
};

#[derive(Parser)]
#[command(
    name = "ptpc",
    version,
    about = "Minimum-weight codeword analysis for pre-transformed polar codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the minimum-weight codewords of one code exactly
    Count(CountArgs),
    /// Profile-level distance statements, count lower bounds, and union-bound
    /// frame error rate estimates
    Bounds(BoundsArgs),
    /// Cross-check the tree enumeration against exhaustive search
    Verify(VerifyArgs),
    /// Exhaustively search convolution polynomials for the smallest count
    Search(SearchArgs),
    /// Count statistics over an ensemble of seeded random pre-transforms
    RandomEnsemble(EnsembleArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ProfileSource {
    /// Reed-Muller rate profile of order R at block length 2^N
    #[arg(long, num_args = 2, value_names = ["R", "N"])]
    rm: Option<Vec<u32>>,
    /// Rate profile file: header n=<bits>, one information index per line
    #[arg(long, value_name = "FILE")]
    profile: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TransformSource {
    /// Identity pre-transform (plain polar or Reed-Muller code)
    #[arg(long)]
    identity: bool,
    /// Convolution polynomial in octal, with or without the _8 suffix
    #[arg(long, value_name = "OCTAL")]
    pac: Option<String>,
    /// Seeded random upper-triangular pre-transform
    #[arg(long, value_name = "SEED")]
    random_seed: Option<u64>,
    /// Explicit pre-transform file: header n=<bits>, then <row>: <col> <col> ...
    #[arg(long, value_name = "FILE")]
    transform: Option<PathBuf>,
}

#[derive(Args)]
struct RunControl {
    /// Worker threads (default: all cores); 1 gives the sequential reference
    /// run with reproducible counters
    #[arg(long, value_name = "T")]
    threads: Option<usize>,
    /// Disable the locked-coset and plain-code shortcuts so the counters
    /// reflect the full tree walk
    #[arg(long)]
    no_shortcircuit: bool,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    profile: ProfileSource,
    #[command(flatten)]
    transform: TransformSource,
    #[command(flatten)]
    run: RunControl,
    /// Include the per-coset count table in the report and summary
    #[arg(long)]
    per_coset: bool,
    /// Write the machine-readable run report to this path
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the per-coset count table to this path as CSV
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    profile: ProfileSource,
    /// Weight spectrum file for the union bound: one <weight> <count> pair
    /// per line
    #[arg(long, value_name = "FILE", requires = "ebn0_db")]
    spectrum: Option<PathBuf>,
    /// Eb/N0 sweep in dB: START:END:STEP or a comma-separated list
    #[arg(long, value_name = "SWEEP", requires = "spectrum")]
    ebn0_db: Option<String>,
    /// Write the machine-readable run report to this path
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the frame error rate sweep to this path as CSV
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    profile: ProfileSource,
    #[command(flatten)]
    transform: TransformSource,
    #[command(flatten)]
    run: RunControl,
    /// Include the per-coset count table in the report and summary
    #[arg(long)]
    per_coset: bool,
    /// Write the machine-readable run report to this path
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the exhaustive weight spectrum to this path as CSV
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    profile: ProfileSource,
    /// Inclusive cap on the convolution polynomial degree
    #[arg(long, value_name = "Q")]
    max_degree: u32,
    /// How many ranked candidates to keep
    #[arg(long, value_name = "M", default_value_t = 10)]
    top: usize,
    /// Abort candidates once they provably exceed the incumbent; the winner
    /// is unaffected but dominated candidates may drop from the ranking
    #[arg(long)]
    early_abort: bool,
    #[command(flatten)]
    run: RunControl,
    /// Write the machine-readable run report to this path
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the ranked candidate table to this path as CSV
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct EnsembleArgs {
    #[command(flatten)]
    profile: ProfileSource,
    /// Number of random pre-transforms to draw
    #[arg(long, value_name = "M")]
    trials: u64,
    /// Base seed; trial t uses seed base + t
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    run: RunControl,
    /// Write the machine-readable run report to this path
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the per-trial count table to this path as CSV
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

/// Failure classes and their exit codes: usage errors exit 2, unreadable or
/// malformed files exit 3. A verification mismatch exits 1 without being an
/// error (the report still prints).
enum CliError {
    Usage(String),
    File(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Search(args) => cmd_search(args),
        Command::RandomEnsemble(args) => cmd_random_ensemble(args),
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::File(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_spec(source: &ProfileSource) -> Result<(CodeSpec, String), CliError> {
    if let Some(rm) = &source.rm {
        let (r, n) = (rm[0], rm[1]);
        let spec = CodeSpec::rm_profile(r, n)
            .map_err(|e| CliError::Usage(format!("--rm {r} {n}: {e}")))?;
        Ok((spec, format!("rm({r},{n})")))
    } else {
        let path = source.profile.as_ref().expect("profile group is required");
        let shown = path.display();
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::File(format!("--profile {shown}: {e}")))?;
        let spec = CodeSpec::from_profile_text(&text)
            .map_err(|e| CliError::File(format!("--profile {shown}: {e}")))?;
        Ok((spec, format!("file:{shown}")))
    }
}

fn load_transform(
    source: &TransformSource,
    spec: &CodeSpec,
) -> Result<(PreTransform, TransformEcho), CliError> {
    if source.identity {
        let echo = TransformEcho {
            kind: "identity".to_string(),
            polynomial: None,
            seed: None,
            file: None,
        };
        return Ok((PreTransform::identity(spec.n()), echo));
    }
    if let Some(octal) = &source.pac {
        let poly = PacPolynomial::from_octal(octal)
            .map_err(|e| CliError::Usage(format!("--pac {octal}: {e}")))?;
        let transform = PreTransform::pac_transform(spec, poly)
            .map_err(|e| CliError::Usage(format!("--pac {octal}: {e}")))?;
        let echo = TransformEcho {
            kind: "convolution".to_string(),
            polynomial: Some(poly.to_octal_string()),
            seed: None,
            file: None,
        };
        return Ok((transform, echo));
    }
    if let Some(seed) = source.random_seed {
        let echo = TransformEcho {
            kind: "random".to_string(),
            polynomial: None,
            seed: Some(seed),
            file: None,
        };
        return Ok((PreTransform::random_transform(spec, seed), echo));
    }
    let path = source
        .transform
        .as_ref()
        .expect("transform group is required");
    let shown = path.display();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::File(format!("--transform {shown}: {e}")))?;
    let transform = PreTransform::from_transform_text(&text)
        .map_err(|e| CliError::File(format!("--transform {shown}: {e}")))?;
    if transform.n() != spec.n() {
        return Err(CliError::File(format!(
            "--transform {shown}: transform is over n = {} but the profile has n = {}",
            transform.n(),
            spec.n()
        )));
    }
    let echo = TransformEcho {
        kind: "explicit".to_string(),
        polynomial: None,
        seed: None,
        file: Some(shown.to_string()),
    };
    Ok((transform, echo))
}

fn enumeration_options(run: &RunControl) -> Result<EnumerationOptions, CliError> {
    if run.threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".to_string()));
    }
    Ok(EnumerationOptions {
        shortcircuit: !run.no_shortcircuit,
        threads: run.threads,
    })
}

fn code_echo(spec: &CodeSpec, origin: String) -> CodeEcho {
    CodeEcho {
        n: spec.n(),
        block_len: spec.block_len(),
        k: spec.dimension(),
        rate: spec.rate(),
        profile_origin: origin,
    }
}

fn stats_section(stats: &EnumerationStats) -> StatsSection {
    StatsSection {
        visited_subtrees: stats.visited_subtrees,
        message_updates: stats.message_updates,
        pretransform_checks: stats.pretransform_checks,
    }
}

fn coset_rows(per_coset: &[(u32, BigUint)]) -> Vec<CosetRow> {
    per_coset
        .iter()
        .map(|(leader, count)| CosetRow {
            leader: *leader,
            count: WideInt::from(count),
        })
        .collect()
}

fn coset_csv(per_coset: &[(u32, BigUint)]) -> String {
    let rows: Vec<Vec<String>> = per_coset
        .iter()
        .map(|(leader, count)| vec![leader.to_string(), count.to_string()])
        .collect();
    report::render_csv("leader,count", &rows)
}

fn print_header(code: &CodeEcho, transform: Option<&TransformEcho>) {
    println!(
        "code: n={} (N={}), K={}, R={:.3}, profile {}",
        code.n, code.block_len, code.k, code.rate, code.profile_origin
    );
    if let Some(echo) = transform {
        let detail = echo
            .polynomial
            .clone()
            .or_else(|| echo.seed.map(|s| format!("seed {s}")))
            .or_else(|| echo.file.clone())
            .map(|d| format!(" {d}"))
            .unwrap_or_default();
        println!("transform: {}{detail}", echo.kind);
    }
}

fn print_count_lines(wmin: u64, awmin: &BigUint, dmin_exceeds_wmin: bool) {
    println!("wmin = {wmin}");
    if dmin_exceeds_wmin {
        println!("Awmin = 0: no codeword attains weight {wmin}, the minimum distance exceeds it");
    } else {
        println!("Awmin = {awmin}");
    }
}

fn print_stats_line(stats: &EnumerationStats, elapsed: f64) {
    println!(
        "stats: {} subtrees visited, {} message updates, {} parity checks",
        stats.visited_subtrees, stats.message_updates, stats.pretransform_checks
    );
    println!("elapsed {elapsed:.3} s");
}

fn write_outputs(
    json: Option<(&PathBuf, &RunReport)>,
    csv: Option<(&PathBuf, &str)>,
) -> Result<(), CliError> {
    if let Some((path, content)) = csv {
        report::write_output("--csv", path, content).map_err(CliError::File)?;
    }
    if let Some((path, rep)) = json {
        report::write_output("--json", path, &rep.to_json()).map_err(CliError::File)?;
    }
    Ok(())
}

fn cmd_count(args: CountArgs) -> Result<ExitCode, CliError> {
    let (spec, origin) = load_spec(&args.profile)?;
    let (transform, echo) = load_transform(&args.transform, &spec)?;
    let options = enumeration_options(&args.run)?;

    let started = Instant::now();
    let result = count_min_weight_with(&spec, &transform, &options)
        .map_err(|e| CliError::File(format!("pre-transform rejected: {e}")))?;
    let elapsed = started.elapsed().as_secs_f64();

    let mut rep = RunReport::new(code_echo(&spec, origin));
    rep.transform = Some(echo);
    rep.wmin = Some(result.wmin);
    rep.awmin = Some(result.awmin.to_string());
    rep.dmin_exceeds_wmin = Some(result.dmin_exceeds_wmin);
    if args.per_coset {
        rep.per_coset = Some(coset_rows(&result.per_coset));
    }
    rep.stats = Some(stats_section(&result.stats));
    rep.wall_clock_seconds = elapsed;

    let csv = args.csv.as_ref().map(|p| (p, coset_csv(&result.per_coset)));
    write_outputs(
        args.json.as_ref().map(|p| (p, &rep)),
        csv.as_ref().map(|(p, c)| (*p, c.as_str())),
    )?;

    print_header(&rep.code, rep.transform.as_ref());
    print_count_lines(result.wmin, &result.awmin, result.dmin_exceeds_wmin);
    if args.per_coset {
        for (leader, count) in &result.per_coset {
            println!("coset {leader}: {count}");
        }
    }
    print_stats_line(&result.stats, elapsed);
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(args: BoundsArgs) -> Result<ExitCode, CliError> {
    let (spec, origin) = load_spec(&args.profile)?;
    if args.csv.is_some() && args.spectrum.is_none() {
        return Err(CliError::Usage(
            "--csv for bounds writes the frame error rate sweep; pass --spectrum and --ebn0-db"
                .to_string(),
        ));
    }

    let started = Instant::now();
    let statement = dmin_statement(&spec);
    let classification = classify_cosets(&spec);
    let locked_bound = lb_locked_cosets(&spec);
    let closed_form = args.profile.rm.as_ref().map(|rm| lb_rm_closed_form(rm[0]));

    let fer = match (&args.spectrum, &args.ebn0_db) {
        (Some(path), Some(sweep)) => {
            let shown = path.display();
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::File(format!("--spectrum {shown}: {e}")))?;
            let slice = report::parse_spectrum_text(&text)
                .map_err(|e| CliError::File(format!("--spectrum {shown}: {e}")))?;
            let points = report::parse_ebn0_sweep(sweep)
                .map_err(|e| CliError::Usage(format!("--ebn0-db: {e}")))?;
            let curve: Vec<FerPoint> = points
                .iter()
                .map(|&db| FerPoint {
                    ebn0_db: db,
                    fer_upper_bound: union_bound_fer(&slice, spec.rate(), db),
                })
                .collect();
            Some(curve)
        }
        _ => None,
    };
    let elapsed = started.elapsed().as_secs_f64();

    let mut rep = RunReport::new(code_echo(&spec, origin));
    rep.wmin = Some(statement.wmin);
    rep.bounds = Some(BoundsSection {
        wmin: statement.wmin,
        dmin_guaranteed_exact: statement.guaranteed_exact,
        locked_cosets: classification.non_pre_transformable.len(),
        reducible_cosets: classification.pre_transformable.len(),
        lb_locked_cosets: locked_bound.to_string(),
        lb_closed_form: closed_form.as_ref().map(|c| c.to_string()),
        fer: fer.as_ref().map(|points| {
            points
                .iter()
                .map(|p| FerPoint {
                    ebn0_db: p.ebn0_db,
                    fer_upper_bound: p.fer_upper_bound,
                })
                .collect()
        }),
    });
    rep.wall_clock_seconds = elapsed;

    let csv = fer.as_ref().map(|points| {
        let rows: Vec<Vec<String>> = points
            .iter()
            .map(|p| vec![p.ebn0_db.to_string(), format!("{:e}", p.fer_upper_bound)])
            .collect();
        report::render_csv("ebn0_db,fer_upper_bound", &rows)
    });
    write_outputs(
        args.json.as_ref().map(|p| (p, &rep)),
        args.csv.as_ref().zip(csv.as_deref()),
    )?;

    print_header(&rep.code, None);
    if statement.guaranteed_exact {
        println!(
            "wmin = {}: the profile is decreasing, so the minimum distance is exactly {} for \
             every unit-diagonal upper-triangular pre-transform",
            statement.wmin, statement.wmin
        );
    } else {
        println!(
            "wmin = {}: lower bound on the minimum distance (profile is not decreasing)",
            statement.wmin
        );
    }
    println!(
        "cosets: {} locked, {} reducible by a pre-transform",
        classification.non_pre_transformable.len(),
        classification.pre_transformable.len()
    );
    println!("count lower bound from locked cosets: {locked_bound}");
    if let Some(cf) = &closed_form {
        println!("closed-form count lower bound for the profile order: {cf}");
    }
    if let Some(points) = &fer {
        for p in points {
            println!(
                "Eb/N0 {:.3} dB: FER <= {:e}",
                p.ebn0_db, p.fer_upper_bound
            );
        }
    }
    println!("elapsed {elapsed:.3} s");
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let (spec, origin) = load_spec(&args.profile)?;
    let (transform, echo) = load_transform(&args.transform, &spec)?;
    let options = enumeration_options(&args.run)?;

    let started = Instant::now();
    let result = count_min_weight_with(&spec, &transform, &options)
        .map_err(|e| CliError::File(format!("pre-transform rejected: {e}")))?;
    let oracle = brute_force_spectrum(&spec, &transform, DEFAULT_DIMENSION_LIMIT).map_err(
        |e| match e {
            OracleError::DimensionTooLarge { .. } | OracleError::BlockTooLarge { .. } => {
                CliError::Usage(format!("verify cannot exhaust this code: {e}"))
            }
            other => CliError::File(format!("exhaustive check failed: {other}")),
        },
    )?;
    let elapsed = started.elapsed().as_secs_f64();

    let agree = if result.dmin_exceeds_wmin {
        oracle.dmin > result.wmin
    } else {
        oracle.dmin == result.wmin && oracle.a_dmin == result.awmin
    };

    let mut rep = RunReport::new(code_echo(&spec, origin));
    rep.transform = Some(echo);
    rep.wmin = Some(result.wmin);
    rep.awmin = Some(result.awmin.to_string());
    rep.dmin_exceeds_wmin = Some(result.dmin_exceeds_wmin);
    if args.per_coset {
        rep.per_coset = Some(coset_rows(&result.per_coset));
    }
    rep.verify = Some(VerifySection {
        enumerator_wmin: result.wmin,
        enumerator_awmin: result.awmin.to_string(),
        oracle_dmin: oracle.dmin,
        oracle_count_at_dmin: oracle.a_dmin.to_string(),
        agree,
    });
    rep.stats = Some(stats_section(&result.stats));
    rep.wall_clock_seconds = elapsed;

    let csv = args.csv.as_ref().map(|p| {
        let rows: Vec<Vec<String>> = oracle
            .spectrum
            .entries()
            .iter()
            .map(|(w, c)| vec![w.to_string(), c.to_string()])
            .collect();
        (p, report::render_csv("weight,count", &rows))
    });
    write_outputs(
        args.json.as_ref().map(|p| (p, &rep)),
        csv.as_ref().map(|(p, c)| (*p, c.as_str())),
    )?;

    print_header(&rep.code, rep.transform.as_ref());
    print_count_lines(result.wmin, &result.awmin, result.dmin_exceeds_wmin);
    if args.per_coset {
        for (leader, count) in &result.per_coset {
            println!("coset {leader}: {count}");
        }
    }
    println!(
        "oracle: dmin = {}, count at dmin = {}",
        oracle.dmin, oracle.a_dmin
    );
    println!("agreement: {}", if agree { "yes" } else { "NO" });
    print_stats_line(&result.stats, elapsed);
    if agree {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode, CliError> {
    let (spec, origin) = load_spec(&args.profile)?;
    if args.top == 0 {
        return Err(CliError::Usage("--top must be at least 1".to_string()));
    }
    let enumeration = enumeration_options(&args.run)?;
    let options = SearchOptions {
        max_degree: args.max_degree,
        top: args.top,
        early_abort: args.early_abort,
        enumeration,
    };

    let started = Instant::now();
    let outcome = search_with(&spec, &options).map_err(|e| match e {
        SearchError::DegreeCapOutOfRange { .. } => {
            CliError::Usage(format!("--max-degree {}: {e}", args.max_degree))
        }
        SearchError::Model(inner) => CliError::File(format!("search failed: {inner}")),
    })?;
    let elapsed = started.elapsed().as_secs_f64();

    let ranked: Vec<RankedRow> = outcome
        .ranked
        .iter()
        .map(|score| RankedRow {
            polynomial: score.polynomial.to_octal_string(),
            degree: score.polynomial.degree(),
            awmin: score.awmin.to_string(),
        })
        .collect();

    let mut rep = RunReport::new(code_echo(&spec, origin));
    rep.wmin = Some(dmin_statement(&spec).wmin);
    rep.awmin = Some(outcome.best_awmin.to_string());
    rep.search = Some(SearchSection {
        max_degree: outcome.max_degree,
        candidates: 1u64 << outcome.max_degree,
        best_polynomial: outcome.best_polynomial.to_octal_string(),
        best_degree: outcome.best_polynomial.degree(),
        best_awmin: outcome.best_awmin.to_string(),
        ties: outcome.ties_considered,
        ranked,
    });
    rep.wall_clock_seconds = elapsed;

    let csv = args.csv.as_ref().map(|p| {
        let rows: Vec<Vec<String>> = outcome
            .ranked
            .iter()
            .map(|score| {
                vec![
                    score.polynomial.to_octal_string(),
                    score.polynomial.degree().to_string(),
                    score.awmin.to_string(),
                ]
            })
            .collect();
        (p, report::render_csv("polynomial,degree,awmin", &rows))
    });
    write_outputs(
        args.json.as_ref().map(|p| (p, &rep)),
        csv.as_ref().map(|(p, c)| (*p, c.as_str())),
    )?;

    print_header(&rep.code, None);
    println!(
        "searched {} polynomials of degree <= {}",
        1u64 << outcome.max_degree,
        outcome.max_degree
    );
    println!(
        "best: {} (degree {}), Awmin = {}, {} tie(s) at the minimum",
        outcome.best_polynomial.to_octal_string(),
        outcome.best_polynomial.degree(),
        outcome.best_awmin,
        outcome.ties_considered
    );
    for (rank, score) in outcome.ranked.iter().enumerate() {
        println!(
            "  {:>2}. {} (degree {}) -> {}",
            rank + 1,
            score.polynomial.to_octal_string(),
            score.polynomial.degree(),
            score.awmin
        );
    }
    println!("elapsed {elapsed:.3} s");
    Ok(ExitCode::SUCCESS)
}

fn cmd_random_ensemble(args: EnsembleArgs) -> Result<ExitCode, CliError> {
    let (spec, origin) = load_spec(&args.profile)?;
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".to_string()));
    }
    let options = enumeration_options(&args.run)?;

    let started = Instant::now();
    let mut rows: Vec<(u64, u64, BigUint)> = Vec::with_capacity(args.trials as usize);
    let mut stats = EnumerationStats::default();
    let mut wmin = 0u64;
    for t in 0..args.trials {
        let seed = args.seed.wrapping_add(t);
        let transform = PreTransform::random_transform(&spec, seed);
        let result = count_min_weight_with(&spec, &transform, &options)
            .map_err(|e| CliError::File(format!("pre-transform rejected: {e}")))?;
        wmin = result.wmin;
        stats += result.stats;
        rows.push((t, seed, result.awmin));
    }
    let elapsed = started.elapsed().as_secs_f64();

    let min = rows.iter().map(|(_, _, a)| a).min().expect("trials >= 1");
    let max = rows.iter().map(|(_, _, a)| a).max().expect("trials >= 1");
    let sum: BigUint = rows.iter().map(|(_, _, a)| a).sum();
    let mean = sum.to_f64().unwrap_or(f64::INFINITY) / args.trials as f64;

    let mut rep = RunReport::new(code_echo(&spec, origin));
    rep.transform = Some(TransformEcho {
        kind: "random".to_string(),
        polynomial: None,
        seed: Some(args.seed),
        file: None,
    });
    rep.wmin = Some(wmin);
    rep.ensemble = Some(EnsembleSection {
        trials: args.trials,
        base_seed: args.seed,
        min_awmin: WideInt::from(min),
        mean_awmin: mean,
        max_awmin: WideInt::from(max),
    });
    rep.stats = Some(stats_section(&stats));
    rep.wall_clock_seconds = elapsed;

    let csv = args.csv.as_ref().map(|p| {
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|(t, seed, awmin)| vec![t.to_string(), seed.to_string(), awmin.to_string()])
            .collect();
        (p, report::render_csv("trial,seed,awmin", &table))
    });
    write_outputs(
        args.json.as_ref().map(|p| (p, &rep)),
        csv.as_ref().map(|(p, c)| (*p, c.as_str())),
    )?;

    print_header(&rep.code, rep.transform.as_ref());
    println!(
        "{} random pre-transforms from base seed {}",
        args.trials, args.seed
    );
    println!("wmin = {wmin}");
    println!("Awmin: min {min} / mean {mean:.2} / max {max}");
    println!("elapsed {elapsed:.3} s");
    Ok(ExitCode::SUCCESS)
}
