//! Command-line front end.
//!
//! Exit status contract: 0 success, 1 domain failure (validation or
//! evaluation findings), 2 environment failure (I/O, configuration,
//! usage).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::WorkbenchConfig;
use crate::corpus::{self, CorpusLabel};
use crate::dot::{to_dot, DotError, DotOptions};
use crate::eval::{
    aggregate_ratings, cosine_embedding, cosine_tf, display_2dp, emit_report, grade_of,
    ingest_ratings, kendalls_tau, Measure, ReportFormat, ScoreRow, ScoreTable, TauError,
};
use crate::model::{Diagnostic, SafetyCase};
use crate::pipeline::{
    run_experiment, Experiment, ExperimentConfig, HttpCompletionClient, ReplayClient, SystemBrief,
};
use crate::prose::{parse_lenient, parse_strict, serialize, ProseDocument};
use crate::validate::{validate_with, ValidateOptions};

#[derive(Parser)]
#[command(
    name = "gsn-workbench",
    version,
    about = "Parse, check, render, generate, and score GSN safety cases"
)]
struct Cli {
    /// Configuration file (defaults to ./workbench.toml when present).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a structured-prose file and run all checks.
    Validate {
        path: PathBuf,
        /// Exit non-zero on warnings too.
        #[arg(long)]
        strict_warnings: bool,
        /// Accept more than one root goal.
        #[arg(long)]
        allow_multiple_roots: bool,
    },
    /// Render a structured-prose file as a DOT graph.
    Render {
        path: PathBuf,
        /// Label wrap width in characters (0 disables wrapping).
        #[arg(long, value_name = "N")]
        wrap: Option<usize>,
        /// Render even when the case has validation errors.
        #[arg(long)]
        force: bool,
        /// Output file (stdout when omitted).
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Run one generation experiment and write its manifest and rounds.
    Generate {
        /// Bundled brief to use (xray | ml-tnr).
        #[arg(long, value_name = "LABEL", conflicts_with = "brief")]
        case: Option<String>,
        /// TOML file with a custom system brief.
        #[arg(long, value_name = "FILE")]
        brief: Option<PathBuf>,
        /// Experiment number (1..=4).
        #[arg(long, value_name = "N")]
        experiment: u8,
        /// Rounds to run.
        #[arg(long, default_value_t = 4, value_name = "N")]
        k: u32,
        /// Completion endpoint to use.
        #[arg(long, value_enum, default_value_t = ClientChoice::Replay)]
        client: ClientChoice,
        /// Replay fixture directory (overrides config).
        #[arg(long, value_name = "DIR")]
        replay_dir: Option<PathBuf>,
        /// Output directory (overrides config).
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        /// Run label used in file names (defaults to the case label or
        /// brief file stem).
        #[arg(long, value_name = "LABEL")]
        seed_label: Option<String>,
    },
    /// Score generated cases and ratings; emit report tables.
    Evaluate {
        /// Directory of generated `*.expE.roundR.gsn.txt` files.
        #[arg(long, value_name = "DIR", requires = "truth")]
        generated: Option<PathBuf>,
        /// Ground truth: corpus label or a structured-prose file.
        #[arg(long, value_name = "LABEL|FILE")]
        truth: Option<String>,
        /// Ratings CSV (case,experiment,round,rater,measure,score).
        #[arg(long, value_name = "FILE")]
        ratings: Option<PathBuf>,
        /// Document vectorizer for cosine similarity.
        #[arg(long, value_enum, default_value_t = VectorizerChoice::Tf)]
        vectorizer: VectorizerChoice,
        /// Per-question scores CSV (assessor,round,question,score).
        #[arg(long, value_name = "FILE")]
        rq1_scores: Option<PathBuf>,
        /// Report format: markdown or csv.
        #[arg(long, default_value = "markdown", value_name = "FMT")]
        format: String,
        /// Report output file (stdout when omitted).
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Kendall's tau between two comma-separated score lists.
    Tau {
        #[arg(long, value_name = "LIST")]
        a: String,
        #[arg(long, value_name = "LIST")]
        b: String,
    },
    /// Inspect or export the bundled reference cases.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// List the bundled cases.
    List,
    /// Write a bundled case as structured prose.
    Export {
        /// map-system | xray | ml-tnr
        label: String,
        /// Output file (defaults to `<label>.gsn.txt`).
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClientChoice {
    Replay,
    Live,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VectorizerChoice {
    Tf,
    Embed,
}

/// A command failure carrying its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn env(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

/// Parses arguments, runs the selected command, and returns the process
/// exit status.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let config = match WorkbenchConfig::load_or_default(cli.config.as_deref()) {
        Ok(config) => config,
        Err(error) => {
            eprintln!("error: {error}");
            return 2;
        }
    };
    let result = match cli.command {
        Command::Validate {
            path,
            strict_warnings,
            allow_multiple_roots,
        } => cmd_validate(&path, strict_warnings, allow_multiple_roots, &config),
        Command::Render {
            path,
            wrap,
            force,
            output,
        } => cmd_render(&path, wrap, force, output.as_deref(), &config),
        Command::Generate {
            case,
            brief,
            experiment,
            k,
            client,
            replay_dir,
            out,
            seed_label,
        } => cmd_generate(
            case.as_deref(),
            brief.as_deref(),
            experiment,
            k,
            client,
            replay_dir,
            out,
            seed_label,
            &config,
        ),
        Command::Evaluate {
            generated,
            truth,
            ratings,
            vectorizer,
            rq1_scores,
            format,
            output,
        } => cmd_evaluate(
            generated.as_deref(),
            truth.as_deref(),
            ratings.as_deref(),
            vectorizer,
            rq1_scores.as_deref(),
            &format,
            output.as_deref(),
            &config,
        ),
        Command::Tau { a, b } => cmd_tau(&a, &b),
        Command::Corpus { command } => match command {
            CorpusCommand::List => cmd_corpus_list(),
            CorpusCommand::Export { label, output } => {
                cmd_corpus_export(&label, output.as_deref())
            }
        },
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::env(format!("cannot read {}: {e}", path.display())))
}

fn write_text(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::env(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_case_file(path: &Path) -> Result<Result<SafetyCase, Vec<Diagnostic>>, Failure> {
    let text = read_file(path)?;
    let outcome = parse_strict(&ProseDocument::from_text(text));
    Ok(match outcome.case {
        Some(case) => Ok(case),
        None => Err(outcome.diagnostics),
    })
}

fn print_diagnostics(diagnostics: &[Diagnostic]) {
    for diagnostic in diagnostics {
        println!("{diagnostic}");
    }
}

fn cmd_validate(
    path: &Path,
    strict_warnings: bool,
    allow_multiple_roots: bool,
    config: &WorkbenchConfig,
) -> Result<i32, Failure> {
    let case = match parse_case_file(path)? {
        Ok(case) => case,
        Err(diagnostics) => {
            print_diagnostics(&diagnostics);
            println!("{}: parse failed", path.display());
            return Ok(1);
        }
    };
    let options = ValidateOptions {
        allow_multiple_roots: allow_multiple_roots || config.validator.allow_multiple_roots,
    };
    let diagnostics = validate_with(&case, &options);
    print_diagnostics(&diagnostics);
    let errors = diagnostics.iter().filter(|d| d.is_error()).count();
    let warnings = diagnostics.len() - errors;
    println!(
        "{}: {} error(s), {} warning(s)",
        path.display(),
        errors,
        warnings
    );
    let failed = errors > 0 || (strict_warnings && warnings > 0);
    Ok(if failed { 1 } else { 0 })
}

fn cmd_render(
    path: &Path,
    wrap: Option<usize>,
    force: bool,
    output: Option<&Path>,
    config: &WorkbenchConfig,
) -> Result<i32, Failure> {
    let case = match parse_case_file(path)? {
        Ok(case) => case,
        Err(diagnostics) => {
            print_diagnostics(&diagnostics);
            return Ok(1);
        }
    };
    let options = DotOptions {
        wrap: wrap.unwrap_or(config.render.wrap),
        force,
    };
    match to_dot(&case, &options) {
        Ok(dot) => {
            write_text(output, dot.as_str())?;
            Ok(0)
        }
        Err(DotError::InvalidCase(diagnostics)) => {
            print_diagnostics(&diagnostics);
            eprintln!("refusing to render an invalid case (use --force to override)");
            Ok(1)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    case: Option<&str>,
    brief_path: Option<&Path>,
    experiment: u8,
    k: u32,
    client: ClientChoice,
    replay_dir: Option<PathBuf>,
    out: Option<PathBuf>,
    seed_label: Option<String>,
    config: &WorkbenchConfig,
) -> Result<i32, Failure> {
    let experiment = Experiment::new(experiment).map_err(|e| Failure::env(e.to_string()))?;
    let (brief, default_label) = match (case, brief_path) {
        (Some(label), None) => {
            let label: CorpusLabel = label.parse().map_err(Failure::env)?;
            let corpus_case = corpus::by_label(label);
            let brief = corpus_case.brief.ok_or_else(|| {
                Failure::env(format!(
                    "bundled case `{label}` has no system brief; use --brief with a brief file"
                ))
            })?;
            (brief, label.as_str().to_string())
        }
        (None, Some(path)) => {
            let text = read_file(path)?;
            let brief = SystemBrief::from_toml_str(&text)
                .map_err(|e| Failure::env(format!("{}: {e}", path.display())))?;
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("custom")
                .to_string();
            (brief, stem)
        }
        _ => {
            return Err(Failure::env(
                "exactly one of --case or --brief is required",
            ))
        }
    };
    let seed_label = seed_label.unwrap_or(default_label);

    let mut experiment_config = ExperimentConfig::standard(experiment, brief, &seed_label);
    experiment_config.rounds_k = k;
    experiment_config
        .validate()
        .map_err(|e| Failure::env(e.to_string()))?;

    let manifest = match client {
        ClientChoice::Replay => {
            let dir = replay_dir.unwrap_or_else(|| config.paths.replay_dir.clone());
            let replay = ReplayClient::new(dir, &seed_label, experiment);
            run_experiment(&experiment_config, &replay)
        }
        ClientChoice::Live => {
            let http = HttpCompletionClient::new(
                &config.llm.endpoint_url,
                &config.llm.model,
                config.llm.wire,
                config.llm.params.clone(),
            )
            .map_err(|e| Failure::env(e.to_string()))?;
            run_experiment(&experiment_config, &http)
        }
    }
    .map_err(|e| Failure::env(e.to_string()))?;

    let out_dir = out.unwrap_or_else(|| config.paths.out_dir.clone());
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| Failure::env(format!("cannot create {}: {e}", out_dir.display())))?;

    let manifest_path = out_dir.join(format!(
        "{seed_label}.exp{}.manifest.json",
        experiment.number()
    ));
    std::fs::write(&manifest_path, manifest.to_json())
        .map_err(|e| Failure::env(format!("cannot write {}: {e}", manifest_path.display())))?;

    for record in &manifest.rounds {
        match &record.response {
            Some(response) => {
                let outcome = parse_lenient(response);
                let case = outcome.case.expect("lenient parse always yields a case");
                let round_path = out_dir.join(format!(
                    "{seed_label}.exp{}.round{}.gsn.txt",
                    experiment.number(),
                    record.round
                ));
                let prose = serialize(&case).map_err(|e| {
                    Failure::env(format!("cannot serialize round {}: {e}", record.round))
                })?;
                std::fs::write(&round_path, prose.as_str()).map_err(|e| {
                    Failure::env(format!("cannot write {}: {e}", round_path.display()))
                })?;
                println!(
                    "round {}: {} element(s), {} relationship(s) -> {}",
                    record.round,
                    case.elements().len(),
                    case.relationships().len(),
                    round_path.display()
                );
            }
            None => println!(
                "round {}: error: {}",
                record.round,
                record.error.as_deref().unwrap_or("unknown")
            ),
        }
    }
    println!("manifest: {}", manifest_path.display());
    Ok(if manifest.has_round_errors() { 1 } else { 0 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_evaluate(
    generated: Option<&Path>,
    truth: Option<&str>,
    ratings: Option<&Path>,
    vectorizer: VectorizerChoice,
    rq1_scores: Option<&Path>,
    format: &str,
    output: Option<&Path>,
    config: &WorkbenchConfig,
) -> Result<i32, Failure> {
    let format: ReportFormat = format.parse().map_err(Failure::env)?;
    let mut tables: Vec<ScoreTable> = Vec::new();

    if let Some(dir) = generated {
        let truth = truth.expect("clap enforces --truth with --generated");
        tables.push(cosine_table(dir, truth, vectorizer, config)?);
    }

    if let Some(path) = ratings {
        let records = ingest_ratings(path).map_err(|e| match e {
            crate::eval::IngestError::Io { .. } => Failure::env(e.to_string()),
            crate::eval::IngestError::Format(_) => Failure::domain(e.to_string()),
        })?;
        for measure in [Measure::GroundTruth, Measure::Reasonability] {
            if records.iter().any(|r| r.measure == measure) {
                let table = aggregate_ratings(&records, measure)
                    .map_err(|e| Failure::domain(e.to_string()))?;
                tables.push(table);
            }
        }
    }

    if let Some(path) = rq1_scores {
        tables.extend(rq1_tables(path)?);
    }

    if tables.is_empty() {
        return Err(Failure::env(
            "nothing to evaluate: pass --generated with --truth, --ratings, or --rq1-scores",
        ));
    }

    write_text(output, &emit_report(&tables, format))?;
    Ok(0)
}

/// Resolves the ground truth to (label, prose text).
fn resolve_truth(truth: &str) -> Result<(String, String), Failure> {
    if let Ok(label) = truth.parse::<CorpusLabel>() {
        let prose = serialize(&corpus::by_label(label).case)
            .expect("bundled corpus serializes");
        return Ok((label.as_str().to_string(), prose.as_str().to_string()));
    }
    let path = Path::new(truth);
    let text = read_file(path)?;
    let outcome = parse_strict(&ProseDocument::from_text(text.clone()));
    if outcome.case.is_none() {
        print_diagnostics(&outcome.diagnostics);
        return Err(Failure::domain(format!(
            "ground-truth file {} does not parse",
            path.display()
        )));
    }
    Ok(("custom".to_string(), text))
}

fn cosine_table(
    dir: &Path,
    truth: &str,
    vectorizer: VectorizerChoice,
    config: &WorkbenchConfig,
) -> Result<ScoreTable, Failure> {
    let (label, truth_text) = resolve_truth(truth)?;

    let round_file =
        regex::Regex::new(r"\.exp([1-4])\.round(\d+)\.gsn\.txt$").expect("fixed pattern");
    let mut rounds: Vec<(u8, u32, PathBuf)> = Vec::new();
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Failure::env(format!("cannot read {}: {e}", dir.display())))?;
    for entry in entries {
        let entry = entry.map_err(|e| Failure::env(e.to_string()))?;
        let name = entry.file_name();
        let Some(name) = name.to_str() else { continue };
        if let Some(caps) = round_file.captures(name) {
            let experiment: u8 = caps[1].parse().expect("single digit");
            let round: u32 = caps[2].parse().map_err(|_| {
                Failure::env(format!("round number out of range in `{name}`"))
            })?;
            rounds.push((experiment, round, entry.path()));
        }
    }
    if rounds.is_empty() {
        return Err(Failure::domain(format!(
            "no `*.expE.roundR.gsn.txt` files found in {}",
            dir.display()
        )));
    }
    rounds.sort();

    let provider = match vectorizer {
        VectorizerChoice::Tf => None,
        VectorizerChoice::Embed => Some(
            crate::eval::HttpEmbeddingProvider::new(&config.embedding.endpoint_url)
                .map_err(|e| Failure::env(e.to_string()))?,
        ),
    };

    let mut by_experiment: BTreeMap<u8, Vec<f64>> = BTreeMap::new();
    for (experiment, _round, path) in &rounds {
        let text = read_file(path)?;
        let score = match &provider {
            None => cosine_tf(&text, &truth_text),
            Some(p) => cosine_embedding(&text, &truth_text, p),
        }
        .map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
        by_experiment.entry(*experiment).or_default().push(score);
    }

    let columns: Vec<String> = by_experiment.keys().map(|e| format!("Exp-{e}")).collect();
    let cells: Vec<f64> = by_experiment
        .values()
        .map(|scores| scores.iter().sum::<f64>() / scores.len() as f64)
        .collect();
    let title = format!(
        "Average cosine similarity scores ({} vectorizer)",
        match vectorizer {
            VectorizerChoice::Tf => "term-frequency",
            VectorizerChoice::Embed => "embedding",
        }
    );
    ScoreTable::from_cells(&title, "Safety case", columns, vec![ScoreRow { label, cells }])
        .map_err(|e| Failure::domain(e.to_string()))
}

/// Builds the inter-rater tau table and the per-assessor score table
/// from a long-format CSV: `assessor,round,question,score`.
fn rq1_tables(path: &Path) -> Result<Vec<ScoreTable>, Failure> {
    const HEADER: &str = "assessor,round,question,score";
    let text = read_file(path)?;
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == HEADER => {}
        other => {
            return Err(Failure::domain(format!(
                "bad header in {}: expected `{HEADER}`, found `{}`",
                path.display(),
                other.map(|(_, l)| l.trim()).unwrap_or("")
            )))
        }
    }

    // (assessor, round) -> question -> score
    let mut scores: BTreeMap<(String, u32), BTreeMap<String, f64>> = BTreeMap::new();
    for (index, raw) in lines {
        let line_no = index + 1;
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Failure::domain(format!(
                "{} line {line_no}: expected 4 fields",
                path.display()
            )));
        }
        let round: u32 = fields[1].parse().map_err(|_| {
            Failure::domain(format!("{} line {line_no}: bad round", path.display()))
        })?;
        let score: f64 = fields[3].parse().map_err(|_| {
            Failure::domain(format!("{} line {line_no}: bad score", path.display()))
        })?;
        if !score.is_finite() {
            return Err(Failure::domain(format!(
                "{} line {line_no}: bad score",
                path.display()
            )));
        }
        scores
            .entry((fields[0].to_string(), round))
            .or_default()
            .insert(fields[2].to_string(), score);
    }

    let assessors: Vec<String> = {
        let mut names: Vec<String> = scores.keys().map(|(a, _)| a.clone()).collect();
        names.dedup();
        names
    };
    if assessors.len() != 2 {
        return Err(Failure::domain(format!(
            "inter-rater agreement needs exactly 2 assessors, found {}",
            assessors.len()
        )));
    }
    let rounds: Vec<u32> = {
        let mut rounds: Vec<u32> = scores.keys().map(|(_, r)| *r).collect();
        rounds.sort_unstable();
        rounds.dedup();
        rounds
    };

    let mut taus: Vec<f64> = Vec::new();
    let mut assessor_cells: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for &round in &rounds {
        let mut vectors: Vec<Vec<f64>> = Vec::new();
        for assessor in &assessors {
            let per_question = scores.get(&(assessor.clone(), round)).ok_or_else(|| {
                Failure::domain(format!("assessor `{assessor}` has no scores for round {round}"))
            })?;
            assessor_cells
                .entry(assessor.clone())
                .or_default()
                .push(per_question.values().sum::<f64>() / per_question.len() as f64);
            vectors.push(per_question.values().copied().collect());
        }
        let questions: Vec<&BTreeMap<String, f64>> = assessors
            .iter()
            .map(|a| &scores[&(a.clone(), round)])
            .collect();
        if questions[0].keys().ne(questions[1].keys()) {
            return Err(Failure::domain(format!(
                "round {round}: the two assessors scored different question sets"
            )));
        }
        let tau = kendalls_tau(&vectors[0], &vectors[1]).map_err(|e| match e {
            TauError::AllPairsTied => Failure::domain(format!(
                "round {round}: tau is undefined (every question pair is tied)"
            )),
            other => Failure::domain(format!("round {round}: {other}")),
        })?;
        taus.push(tau);
    }

    let columns: Vec<String> = rounds.iter().map(|r| format!("R{r}")).collect();
    let tau_table = ScoreTable::from_cells(
        "Inter-rater agreement (Kendall's tau)",
        "Measure",
        columns.clone(),
        vec![ScoreRow {
            label: "tau".to_string(),
            cells: taus,
        }],
    )
    .map_err(|e| Failure::domain(e.to_string()))?;

    let rows: Vec<ScoreRow> = assessors
        .iter()
        .map(|assessor| ScoreRow {
            label: assessor.clone(),
            cells: assessor_cells[assessor].clone(),
        })
        .collect();
    let mut score_table =
        ScoreTable::from_cells("Average scores per assessor", "Assessor", columns, rows)
            .map_err(|e| Failure::domain(e.to_string()))?
            .with_integer_interpretation();
    let combined = score_table
        .rows
        .iter()
        .map(|row| score_table.row_avg(row))
        .sum::<f64>()
        / score_table.rows.len() as f64;
    let grade = grade_of(combined).map_err(|e| Failure::domain(e.to_string()))?;
    score_table.push_footnote(format!(
        "Combined average {} corresponds to grade {grade}.",
        display_2dp(combined)
    ));
    Ok(vec![tau_table, score_table])
}

fn cmd_tau(a: &str, b: &str) -> Result<i32, Failure> {
    let parse_list = |name: &str, text: &str| -> Result<Vec<f64>, Failure> {
        text.split([',', ' '])
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Failure::env(format!("--{name}: `{t}` is not a number")))
            })
            .collect()
    };
    let a = parse_list("a", a)?;
    let b = parse_list("b", b)?;
    match kendalls_tau(&a, &b) {
        Ok(tau) => {
            println!("tau = {tau:.4}");
            Ok(0)
        }
        Err(TauError::AllPairsTied) => {
            eprintln!("tau is undefined: every pair is tied");
            Ok(1)
        }
        Err(error) => Err(Failure::env(error.to_string())),
    }
}

fn cmd_corpus_list() -> Result<i32, Failure> {
    for corpus_case in corpus::all() {
        println!(
            "{:<12} {} ({} elements, {} relationships)",
            corpus_case.label.as_str(),
            corpus_case.case.title(),
            corpus_case.case.elements().len(),
            corpus_case.case.relationships().len()
        );
    }
    Ok(0)
}

fn cmd_corpus_export(label: &str, output: Option<&Path>) -> Result<i32, Failure> {
    let label: CorpusLabel = label.parse().map_err(Failure::env)?;
    let prose = serialize(&corpus::by_label(label).case).expect("bundled corpus serializes");
    let default = PathBuf::from(format!("{label}.gsn.txt"));
    let path = output.unwrap_or(&default);
    std::fs::write(path, prose.as_str())
        .map_err(|e| Failure::env(format!("cannot write {}: {e}", path.display())))?;
    println!("{}", path.display());
    Ok(0)
}
