//! `ontoqg` command-line front-end.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or parse error,
//! 3 write error.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use ontoqg_core::config::Settings;
use ontoqg_core::ingest::{build_knowledge_base, IngestOptions, Warning};
use ontoqg_core::metrics::{
    evaluate_all, normalize_profiles, MetricReport, MetricsConfig, SfDenominator,
};
use ontoqg_core::qgen::{self, parse_strategies, QGenConfig, Strategy};
use ontoqg_core::rdf::{parse_document, Syntax};
use ontoqg_core::report::{Comparison, EvaluateDocument};
use ontoqg_core::KnowledgeBase;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_WRITE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ontoqg",
    version,
    about = "Evaluate ontologies for question generation and generate question banks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the nine fitness metrics for each input.
    Evaluate(RunArgs),
    /// Generate a question bank from one input.
    Generate(RunArgs),
    /// Side-by-side metric table for two or more inputs.
    Compare(RunArgs),
}

impl Command {
    fn args(&self) -> &RunArgs {
        match self {
            Command::Evaluate(a) | Command::Generate(a) | Command::Compare(a) => a,
        }
    }

    fn kind(&self) -> CommandKind {
        match self {
            Command::Evaluate(_) => CommandKind::Evaluate,
            Command::Generate(_) => CommandKind::Generate,
            Command::Compare(_) => CommandKind::Compare,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Evaluate,
    Generate,
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SfArg {
    Populated,
    All,
}

impl From<SfArg> for SfDenominator {
    fn from(a: SfArg) -> Self {
        match a {
            SfArg::Populated => SfDenominator::Populated,
            SfArg::All => SfDenominator::All,
        }
    }
}

/// Flags shared by every subcommand. Flags override the config file.
#[derive(Debug, Clone, Default, PartialEq, Eq, Args)]
pub struct RunArgs {
    /// Ontology files (.ttl or .nt).
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Output format; `text` for evaluate and compare, `json` for generate
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout; run metadata goes to
    /// `<out>.meta.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add normalized profiles to `evaluate` output.
    #[arg(long)]
    pub normalize: bool,
    /// Comma-separated strategy names, or `all`.
    #[arg(long, value_delimiter = ',')]
    pub strategies: Option<Vec<String>>,
    /// Most distractors per MCQ (default 3)
    #[arg(long)]
    pub max_distractors: Option<usize>,
    /// Most multi-entity questions per instance (default 3)
    #[arg(long)]
    pub pair_cap: Option<usize>,
    /// SF denominator: populated classes (default) or all classes
    #[arg(long, value_enum)]
    pub sf_denominator: Option<SfArg>,
    /// Count instances of a subclass as members of its ancestors.
    #[arg(long)]
    pub inferred_membership: bool,
    /// Also generate annotation questions from comments on individuals.
    #[arg(long)]
    pub instance_comments: bool,
    /// TOML config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub input_paths: Vec<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub normalize: bool,
    pub strategies: BTreeSet<Strategy>,
    pub max_distractors: usize,
    pub pair_cap: usize,
    #[serde(serialize_with = "ser_sf")]
    pub sf_denominator: SfDenominator,
    pub inferred_membership: bool,
    pub instance_comments: bool,
    #[serde(skip)]
    pub fragments: Vec<ontoqg_core::metrics::FragmentKind>,
}

fn ser_sf<S: serde::Serializer>(d: &SfDenominator, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match d {
        SfDenominator::Populated => "populated",
        SfDenominator::All => "all",
    })
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(Vec<String>),
    Write(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Write(_) => EXIT_WRITE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Input(ms) => {
                for (n, m) in ms.iter().enumerate() {
                    if n > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "error: {m}")?;
                }
                Ok(())
            }
            CliError::Write(m) => write!(f, "error: {m}"),
        }
    }
}

impl RunConfig {
    pub fn resolve(kind: CommandKind, args: &RunArgs) -> Result<RunConfig, CliError> {
        let settings = match &args.config {
            Some(path) => Settings::from_path(path).map_err(|e| CliError::Usage(e.to_string()))?,
            None => Settings::default(),
        };
        let default_format = match kind {
            CommandKind::Generate => Format::Json,
            CommandKind::Evaluate | CommandKind::Compare => Format::Text,
        };
        let strategies = match &args.strategies {
            Some(names) => parse_strategies(names).map_err(|e| CliError::Usage(e.to_string()))?,
            None => settings.qgen.strategies.clone(),
        };
        let config = RunConfig {
            input_paths: args.inputs.clone(),
            output_path: args.out.clone(),
            format: args.format.unwrap_or(default_format),
            normalize: args.normalize,
            strategies,
            max_distractors: args
                .max_distractors
                .unwrap_or(settings.qgen.max_distractors),
            pair_cap: args.pair_cap.unwrap_or(settings.qgen.pair_cap),
            sf_denominator: args
                .sf_denominator
                .map(Into::into)
                .unwrap_or(settings.metrics.sf_denominator),
            inferred_membership: args.inferred_membership || settings.ingest.inferred_membership,
            instance_comments: args.instance_comments || settings.qgen.instance_comments,
            fragments: settings.metrics.fragments.clone(),
        };
        config.validate(kind)?;
        Ok(config)
    }

    fn validate(&self, kind: CommandKind) -> Result<(), CliError> {
        if self.input_paths.is_empty() {
            return Err(CliError::Usage(
                "at least one input file is required".into(),
            ));
        }
        if self.max_distractors < 1 {
            return Err(CliError::Usage(
                "invalid parameter: --max-distractors must be at least 1".into(),
            ));
        }
        if self.pair_cap < 1 {
            return Err(CliError::Usage(
                "invalid parameter: --pair-cap must be at least 1".into(),
            ));
        }
        match kind {
            CommandKind::Compare if self.input_paths.len() < 2 => {
                Err(CliError::Usage("compare needs at least two inputs".into()))
            }
            CommandKind::Generate if self.input_paths.len() != 1 => {
                Err(CliError::Usage("generate takes exactly one input".into()))
            }
            _ => Ok(()),
        }
    }

    /// Command-line flags that reproduce this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .input_paths
            .iter()
            .map(|p| p.display().to_string())
            .collect();
        let format = match self.format {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        };
        out.extend(["--format".to_string(), format.to_string()]);
        if let Some(p) = &self.output_path {
            out.extend(["--out".to_string(), p.display().to_string()]);
        }
        if self.normalize {
            out.push("--normalize".into());
        }
        let names: Vec<&str> = self.strategies.iter().map(|s| s.as_str()).collect();
        if !names.is_empty() {
            out.extend(["--strategies".to_string(), names.join(",")]);
        }
        out.extend([
            "--max-distractors".to_string(),
            self.max_distractors.to_string(),
        ]);
        out.extend(["--pair-cap".to_string(), self.pair_cap.to_string()]);
        let sf = match self.sf_denominator {
            SfDenominator::Populated => "populated",
            SfDenominator::All => "all",
        };
        out.extend(["--sf-denominator".to_string(), sf.to_string()]);
        if self.inferred_membership {
            out.push("--inferred-membership".into());
        }
        if self.instance_comments {
            out.push("--instance-comments".into());
        }
        out
    }

    pub fn metrics(&self) -> MetricsConfig {
        MetricsConfig {
            fragments: self.fragments.clone(),
            sf_denominator: self.sf_denominator,
        }
    }

    pub fn qgen(&self) -> QGenConfig {
        QGenConfig {
            strategies: self.strategies.clone(),
            max_distractors: self.max_distractors,
            pair_cap: self.pair_cap,
            instance_comments: self.instance_comments,
        }
    }

    fn ingest(&self) -> IngestOptions {
        IngestOptions {
            inferred_membership: self.inferred_membership,
        }
    }
}

/// One parsed and ingested input.
pub struct Loaded {
    pub id: String,
    pub kb: KnowledgeBase,
    pub warnings: Vec<Warning>,
}

/// File stem used as the ontology id in reports.
pub fn ontology_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn load(path: &Path, options: &IngestOptions) -> Result<Loaded, String> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => format!("{}: file not found", path.display()),
        _ => format!("{}: {e}", path.display()),
    })?;
    let set = parse_document(&text, Syntax::from_path(path))
        .map_err(|e| format!("{}:{e}", path.display()))?;
    let ingested =
        build_knowledge_base(&set, options).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Loaded {
        id: ontology_id(path),
        kb: ingested.kb,
        warnings: ingested.warnings,
    })
}

/// Loads every input in parallel; results keep input order.
fn load_all(config: &RunConfig) -> Result<Vec<Loaded>, CliError> {
    let options = config.ingest();
    let results: Vec<Result<Loaded, String>> = config
        .input_paths
        .par_iter()
        .map(|p| load(p, &options))
        .collect();
    let mut loaded = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(l) => loaded.push(l),
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(loaded)
    } else {
        Err(CliError::Input(errors))
    }
}

fn evaluate_loaded(loaded: &[Loaded], config: &RunConfig) -> Vec<MetricReport> {
    let metrics = config.metrics();
    loaded
        .par_iter()
        .map(|l| evaluate_all(&l.kb, &l.id, &metrics))
        .collect()
}

/// Report body plus an optional summary meant for humans.
struct Output {
    body: String,
    summary: Option<String>,
}

fn cmd_evaluate(config: &RunConfig, loaded: &[Loaded]) -> Output {
    let reports = evaluate_loaded(loaded, config);
    let normalized = if config.normalize {
        Some(normalize_profiles(&reports).expect("at least one report"))
    } else {
        None
    };
    let doc = EvaluateDocument::new(reports, normalized);
    let body = match config.format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
        Format::Text => doc.to_text(),
    };
    Output {
        body,
        summary: None,
    }
}

fn cmd_compare(config: &RunConfig, loaded: &[Loaded]) -> Output {
    let reports = evaluate_loaded(loaded, config);
    let normalized = normalize_profiles(&reports).expect("at least two reports");
    let cmp = Comparison::new(&reports, &normalized);
    let body = match config.format {
        Format::Json => cmp.to_json(),
        Format::Csv => cmp.to_csv(),
        Format::Text => cmp.to_text(),
    };
    Output {
        body,
        summary: None,
    }
}

fn cmd_generate(config: &RunConfig, loaded: &[Loaded]) -> Result<Output, CliError> {
    let kb = &loaded[0].kb;
    let questions =
        qgen::generate_all(kb, &config.qgen()).map_err(|e| CliError::Usage(e.to_string()))?;
    let body = match config.format {
        Format::Json => qgen::to_jsonl(&questions),
        Format::Csv => qgen::to_csv(&questions),
        Format::Text => qgen::render_text(&questions),
    };
    let summary = format!("{}\n{}", loaded[0].id, qgen::render_summary(&questions));
    Ok(Output {
        body,
        summary: Some(summary),
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    command: CommandKind,
    generated_at_unix: u64,
    config: &'a RunConfig,
    warnings: Vec<String>,
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Write(format!("{}: {e}", path.display())))
}

fn execute(
    command: &Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let kind = command.kind();
    let config = RunConfig::resolve(kind, command.args())?;
    let loaded = load_all(&config)?;
    let mut warnings = Vec::new();
    for l in &loaded {
        for w in &l.warnings {
            warnings.push(format!("{}: {w}", l.id));
        }
    }
    for w in &warnings {
        let _ = writeln!(stderr, "{w}");
    }
    let output = match kind {
        CommandKind::Evaluate => cmd_evaluate(&config, &loaded),
        CommandKind::Compare => cmd_compare(&config, &loaded),
        CommandKind::Generate => cmd_generate(&config, &loaded)?,
    };
    let write_err = |e: std::io::Error| CliError::Write(format!("stdout: {e}"));
    match &config.output_path {
        Some(path) => {
            write_file(path, &output.body)?;
            let meta = Sidecar {
                tool: "ontoqg",
                version: env!("CARGO_PKG_VERSION"),
                command: kind,
                generated_at_unix: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
                config: &config,
                warnings,
            };
            let mut json = serde_json::to_string_pretty(&meta).expect("sidecar serialises");
            json.push('\n');
            write_file(&sidecar_path(path), &json)?;
            if let Some(summary) = &output.summary {
                stdout.write_all(summary.as_bytes()).map_err(write_err)?;
            }
        }
        None => {
            stdout
                .write_all(output.body.as_bytes())
                .map_err(write_err)?;
            if let Some(summary) = &output.summary {
                let _ = stderr.write_all(summary.as_bytes());
            }
        }
    }
    stdout.flush().map_err(write_err)?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(argv: &[&str]) -> (CommandKind, RunArgs) {
        let cli = Cli::try_parse_from(argv).unwrap();
        (cli.command.kind(), cli.command.args().clone())
    }

    #[test]
    fn run_config_round_trips_through_flags() {
        let config = RunConfig {
            input_paths: vec!["a.ttl".into(), "b.nt".into()],
            output_path: Some("out.csv".into()),
            format: Format::Csv,
            normalize: true,
            strategies: [Strategy::Mcq, Strategy::MultiEntity].into_iter().collect(),
            max_distractors: 4,
            pair_cap: 7,
            sf_denominator: SfDenominator::All,
            inferred_membership: true,
            instance_comments: true,
            fragments: ontoqg_core::metrics::FragmentKind::ALL.to_vec(),
        };
        let mut argv = vec!["ontoqg".to_string(), "evaluate".to_string()];
        argv.extend(config.to_args());
        let (kind, args) = parse(&argv.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(RunConfig::resolve(kind, &args).unwrap(), config);
    }

    #[test]
    fn defaults_round_trip() {
        let (kind, args) = parse(&["ontoqg", "generate", "x.ttl"]);
        let config = RunConfig::resolve(kind, &args).unwrap();
        assert_eq!(config.format, Format::Json);
        assert_eq!(config.strategies.len(), 6);
        let mut argv = vec!["ontoqg".to_string(), "generate".to_string()];
        argv.extend(config.to_args());
        let (kind, args) = parse(&argv.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(RunConfig::resolve(kind, &args).unwrap(), config);
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.toml");
        std::fs::write(&cfg, "mcq.max_distractors = 5\nsf.denominator = \"all\"\n").unwrap();
        let cfg = cfg.display().to_string();
        let (kind, args) = parse(&[
            "ontoqg",
            "evaluate",
            "x.ttl",
            "--config",
            &cfg,
            "--max-distractors",
            "2",
        ]);
        let config = RunConfig::resolve(kind, &args).unwrap();
        assert_eq!(config.max_distractors, 2);
        assert_eq!(config.sf_denominator, SfDenominator::All);
    }

    #[test]
    fn usage_errors() {
        let cases: [&[&str]; 5] = [
            &["ontoqg", "compare", "a.ttl"],
            &["ontoqg", "generate", "a.ttl", "b.ttl"],
            &["ontoqg", "generate", "a.ttl", "--max-distractors", "0"],
            &["ontoqg", "generate", "a.ttl", "--strategies", "quiz"],
            &["ontoqg", "evaluate", "a.ttl", "--pair-cap", "0"],
        ];
        for argv in cases {
            let (kind, args) = parse(argv);
            let err = RunConfig::resolve(kind, &args).unwrap_err();
            assert_eq!(err.exit_code(), EXIT_USAGE, "{argv:?}");
        }
    }

    #[test]
    fn sidecar_sits_next_to_output() {
        assert_eq!(
            sidecar_path(Path::new("dir/r.json")),
            PathBuf::from("dir/r.json.meta.json")
        );
    }
}
