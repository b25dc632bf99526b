//! The `homconn` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use homconn_core::process::{default_m_cap, hitting_times, run_process};
use homconn_core::{choose, Complex, ModelKind};

use crate::error::{LabError, Result};
use crate::experiment::{lm_compare, lm_csv, run_experiment, write_outputs, ExperimentConfig};
use crate::format::{parse_complex, serialize_complex, trace_csv};
use crate::report::{analyze, HittingTimesJson};

#[derive(Debug, Parser)]
#[command(
    name = "homconn",
    version,
    about = "Homological connectivity of random 2-complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a complex and write it in the complex file format.
    Gen(GenArgs),
    /// Report homology and obstructions of a complex file as JSON.
    Analyze(AnalyzeArgs),
    /// Run the random process, writing hitting times and optionally the trace.
    Process(ProcessArgs),
    /// Monte Carlo hitting-time experiment over many seeds.
    Experiment(ExperimentArgs),
    /// Compare Linial–Meshulam and downward-closure thresholds.
    LmCompare(LmCompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Binomial,
    Uniform,
    Lm,
    LmUniform,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value = "binomial")]
    pub model: Model,
    #[arg(long, conflicts_with = "m")]
    pub p: Option<f64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    /// Read the faces over the complete graph on `[n]`.
    #[arg(long)]
    pub full_skeleton: bool,
    /// Search for a smallest bad support of at most this many edges.
    #[arg(long, value_name = "K_MAX")]
    pub min_support: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProcessArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub m_cap: Option<u64>,
    /// Write the per-step trace CSV here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Hitting-times JSON destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// JSON configuration file; excludes the other flags.
    #[arg(long, conflicts_with_all = ["n", "trials", "seed", "m_cap", "out_dir", "workers", "lm_compare"])]
    pub config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u32>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub m_cap: Option<u64>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub lm_compare: bool,
}

#[derive(Debug, Args)]
pub struct LmCompareArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Also write the per-trial thresholds as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// 1 for usage errors, 2 for everything else.
pub fn exit_code(e: &LabError) -> i32 {
    match e {
        LabError::Usage(_) => 1,
        _ => 2,
    }
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| LabError::io(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| LabError::io("<stdout>", e)),
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn model_kind(model: Model, p: Option<f64>, m: Option<u64>) -> Result<ModelKind> {
    let need_p = |p: Option<f64>| {
        p.ok_or_else(|| LabError::Usage(format!("--model {model:?} needs --p").to_lowercase()))
    };
    let need_m = |m: Option<u64>| {
        m.ok_or_else(|| LabError::Usage(format!("--model {model:?} needs --m").to_lowercase()))
    };
    if p.is_some() && m.is_some() {
        return Err(LabError::Usage("--p and --m are mutually exclusive".into()));
    }
    Ok(match model {
        Model::Binomial => ModelKind::Binomial(need_p(p)?),
        Model::Lm => ModelKind::LinialMeshulam(need_p(p)?),
        Model::Uniform => ModelKind::Uniform(need_m(m)?),
        Model::LmUniform => ModelKind::LinialMeshulamUniform(need_m(m)?),
    })
}

fn gen(args: &GenArgs, stdout: &mut dyn Write) -> Result<()> {
    let kind = model_kind(args.model, args.p, args.m)?;
    if args.n == 0 {
        return Err(LabError::Usage("--n must be positive".into()));
    }
    kind.validate(args.n)
        .map_err(|e| LabError::Usage(e.to_string()))?;
    let c = Complex::generate(args.n, kind, args.seed)?;
    emit(args.out.as_deref(), stdout, &serialize_complex(&c))
}

fn analyze_cmd(args: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&args.file).map_err(|e| LabError::io(&args.file, e))?;
    let c = parse_complex(&text, args.full_skeleton)?;
    let report = analyze(&c, args.min_support)?;
    emit(args.out.as_deref(), stdout, &json(&report)?)
}

fn process_cmd(args: &ProcessArgs, stdout: &mut dyn Write) -> Result<()> {
    if args.n < 3 {
        return Err(LabError::Usage("--n must be at least 3".into()));
    }
    let total = choose(u64::from(args.n), 3);
    let cap = args.m_cap.unwrap_or_else(|| default_m_cap(args.n));
    if cap > total {
        return Err(LabError::Usage(format!(
            "--m-cap {cap} exceeds C(n,3) = {total}"
        )));
    }
    let trace = run_process(args.n, args.seed, cap)?;
    if let Some(path) = &args.trace {
        fs::write(path, trace_csv(&trace)).map_err(|e| LabError::io(path, e))?;
    }
    let times = HittingTimesJson::from(&hitting_times(&trace));
    emit(args.out.as_deref(), stdout, &json(&times)?)
}

pub fn experiment_config(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        return serde_json::from_str(&text)
            .map_err(|e| LabError::Usage(format!("{}: {e}", path.display())));
    }
    let trials = args
        .trials
        .ok_or_else(|| LabError::Usage("--trials is required without --config".into()))?;
    Ok(ExperimentConfig {
        n_list: args.n.clone(),
        trials,
        master_seed: args.seed.unwrap_or(0),
        m_cap: args.m_cap,
        out_dir: args.out_dir.clone().unwrap_or_else(|| PathBuf::from("out")),
        workers: args.workers,
        lm_compare: args.lm_compare,
    })
}

fn experiment_cmd(args: &ExperimentArgs, stdout: &mut dyn Write) -> Result<()> {
    let config = experiment_config(args)?;
    let outcome = run_experiment(&config)?;
    write_outputs(&config, &outcome)?;
    emit(None, stdout, &json(&outcome.report)?)
}

fn lm_compare_cmd(args: &LmCompareArgs, stdout: &mut dyn Write) -> Result<()> {
    if args.n < 3 {
        return Err(LabError::Usage("--n must be at least 3".into()));
    }
    if args.trials == 0 {
        return Err(LabError::Usage("--trials must be at least 1".into()));
    }
    let (trials, report) = lm_compare(args.n, args.trials, args.seed, args.workers)?;
    if let Some(path) = &args.csv {
        fs::write(path, lm_csv(&trials)).map_err(|e| LabError::io(path, e))?;
    }
    emit(args.out.as_deref(), stdout, &json(&report)?)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Gen(a) => gen(a, stdout),
        Command::Analyze(a) => analyze_cmd(a, stdout),
        Command::Process(a) => process_cmd(a, stdout),
        Command::Experiment(a) => experiment_cmd(a, stdout),
        Command::LmCompare(a) => lm_compare_cmd(a, stdout),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("homconn").chain(args.iter().copied()))
    }

    #[test]
    fn p_and_m_conflict() {
        assert!(parse(&["gen", "--n", "5", "--p", "0.5", "--m", "3"]).is_err());
        assert!(model_kind(Model::Binomial, Some(0.5), Some(3)).is_err());
    }

    #[test]
    fn model_needs_its_parameter() {
        assert!(matches!(
            model_kind(Model::Uniform, Some(0.5), None),
            Err(LabError::Usage(_))
        ));
        assert!(matches!(
            model_kind(Model::Lm, None, None),
            Err(LabError::Usage(_))
        ));
        assert_eq!(
            model_kind(Model::LmUniform, None, Some(4)).unwrap(),
            ModelKind::LinialMeshulamUniform(4)
        );
    }

    #[test]
    fn config_excludes_flags() {
        assert!(parse(&["experiment", "--config", "c.json", "--trials", "3"]).is_err());
        let cli = parse(&["experiment", "--n", "20,40", "--trials", "3"]).unwrap();
        let Command::Experiment(a) = cli.command else {
            panic!()
        };
        let c = experiment_config(&a).unwrap();
        assert_eq!(c.n_list, vec![20, 40]);
        assert_eq!(c.trials, 3);
    }

    #[test]
    fn gen_writes_to_stdout() {
        let cli = parse(&["gen", "--n", "3", "--p", "1", "--seed", "7"]).unwrap();
        let mut buf = Vec::new();
        run(&cli, &mut buf).unwrap();
        assert_eq!(buf, b"3 1\n1 2 3\n");
    }
}
