// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line frontend.
//!
//! [`parse_and_dispatch`] is the whole program minus process plumbing: it
//! takes argv and stdin and returns the exit code with the bytes destined
//! for stdout and stderr. Exit codes are 0 on success, 1 on usage errors
//! and 2 on data or model errors. Failures print one line of the form
//! `error=<name> message="<text>"`.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{self, AccuracyBound, BoundInputs, BoundKind};
use crate::error::Error;
use crate::hypothesis::{HypothesisPair, PairKind};
use crate::mechanisms::PrivacyParams;
use crate::offline::{detect_offline, NoiseMode};
use crate::online::{detect_online, OnlineConfig};
use crate::simulation::{
    self, empirical_threshold_range, format_sig6, Family, OfflineScenario, OnlineScenario, ScenarioId,
};

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

#[derive(Parser, Debug)]
#[command(name = "dpcpd", version, about = "Differentially private change-point detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate a single change point in a fixed dataset.
    DetectOffline(DetectOfflineArgs),
    /// Scan a stream and localize the first detected change.
    DetectOnline(DetectOnlineArgs),
    /// Evaluate a closed-form accuracy bound or threshold range.
    Bounds(BoundsArgs),
    /// Search for online thresholds by simulation.
    ThresholdRange(ThresholdRangeArgs),
    /// Write offline accuracy curves to CSV.
    SimulateOffline(SimulateOfflineArgs),
    /// Write online accuracy curves to CSV.
    SimulateOnline(SimulateOnlineArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModelName {
    Bernoulli,
    Gaussian,
}

impl From<ModelName> for Family {
    fn from(m: ModelName) -> Self {
        match m {
            ModelName::Bernoulli => Family::Bernoulli,
            ModelName::Gaussian => Family::Gaussian,
        }
    }
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    #[arg(long, allow_hyphen_values = true)]
    p0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu1: Option<f64>,
}

#[derive(Args, Debug)]
struct OptionalModelArgs {
    #[arg(long, value_enum)]
    model: Option<ModelName>,
    #[arg(long, allow_hyphen_values = true)]
    p0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu1: Option<f64>,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Read observations from a file instead of stdin.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DetectOfflineArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args, Debug)]
struct DetectOnlineArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: f64,
    /// Tail probability for the relaxed sensitivity; 0 uses the exact one.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long)]
    window: usize,
    #[arg(long, allow_hyphen_values = true)]
    threshold: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BoundName {
    OfflineMle,
    OfflinePrivate,
    RelaxedMle,
    RelaxedPrivate,
    OnlineAlpha,
    OnlineThreshold,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(value_enum)]
    kind: BoundName,
    /// Sensitivity; derived from the model when omitted.
    #[arg(long = "A")]
    a: Option<f64>,
    /// Minimum KL divergence; derived from the model when omitted.
    #[arg(long = "C")]
    c: Option<f64>,
    /// Mixture divergence; derived from the model when omitted.
    #[arg(long = "CM")]
    c_m: Option<f64>,
    #[arg(long)]
    beta: f64,
    #[arg(long, value_parser = parse_epsilon, default_value = "inf")]
    epsilon: f64,
    /// Tail probability used to derive `A` from a model.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "k-star")]
    k_star: Option<usize>,
    #[command(flatten)]
    model: OptionalModelArgs,
}

#[derive(Args, Debug)]
struct ThresholdRangeArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long)]
    n: usize,
    #[arg(long = "k-star")]
    k_star: usize,
    #[arg(long = "fa-rate", default_value_t = 0.1)]
    fa_rate: f64,
    #[arg(long = "miss-rate", default_value_t = 0.1)]
    miss_rate: f64,
    #[arg(long, default_value_t = 10_000)]
    realizations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ScenarioName {
    A,
    B,
    C,
}

impl From<ScenarioName> for ScenarioId {
    fn from(s: ScenarioName) -> Self {
        match s {
            ScenarioName::A => ScenarioId::A,
            ScenarioName::B => ScenarioId::B,
            ScenarioName::C => ScenarioId::C,
        }
    }
}

#[derive(Args, Debug)]
struct SimulateOfflineArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    #[arg(long, value_enum, ignore_case = true)]
    scenario: ScenarioName,
    #[arg(long, value_parser = parse_epsilon, value_delimiter = ',', default_value = "0.1,0.5,1,inf")]
    epsilons: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 200)]
    n: usize,
    #[arg(long = "k-star", default_value_t = 100)]
    k_star: usize,
    /// Defaults to 0 for Bernoulli and 0.05 for Gaussian models.
    #[arg(long = "tail-delta")]
    tail_delta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SimulateOnlineArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    #[arg(long, value_enum, ignore_case = true)]
    scenario: ScenarioName,
    #[arg(long, value_parser = parse_epsilon, value_delimiter = ',', default_value = "0.5,1,inf")]
    epsilons: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 700)]
    window: usize,
    #[arg(long = "k-star", default_value_t = 5000)]
    k_star: usize,
    /// Defaults to 220 for Bernoulli and 100 for Gaussian models.
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<f64>,
    /// Defaults to `k-star + window`.
    #[arg(long = "max-len")]
    max_len: Option<usize>,
    #[arg(long = "tail-delta")]
    tail_delta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    let v = match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "+inf" => f64::INFINITY,
        t => t.parse::<f64>().map_err(|e| format!("{e}"))?,
    };
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("epsilon must be positive or inf, got {s}"))
    }
}

enum Failure {
    Usage(String),
    Data { name: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data { name: e.name(), message: e.to_string() }
    }
}

fn io_failure(context: &str, e: std::io::Error) -> Failure {
    Failure::Data { name: "io", message: format!("{context}: {e}") }
}

fn escape(msg: &str) -> String {
    msg.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', " ")
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn parse_and_dispatch<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: rendered.into_bytes(), stderr: Vec::new() }
                }
                _ => {
                    let first = rendered
                        .lines()
                        .next()
                        .unwrap_or("invalid usage")
                        .trim_start_matches("error: ")
                        .to_string();
                    Outcome { code: 1, stdout: Vec::new(), stderr: usage_line(&first) }
                }
            };
        }
    };
    let mut stdout = String::new();
    match dispatch(cli.command, stdin, &mut stdout) {
        Ok(()) => Outcome { code: 0, stdout: stdout.into_bytes(), stderr: Vec::new() },
        Err(Failure::Usage(m)) => Outcome { code: 1, stdout: Vec::new(), stderr: usage_line(&m) },
        Err(Failure::Data { name, message }) => Outcome {
            code: 2,
            stdout: Vec::new(),
            stderr: format!("error={name} message=\"{}\"\n", escape(&message)).into_bytes(),
        },
    }
}

fn usage_line(msg: &str) -> Vec<u8> {
    format!("error=usage message=\"{}\"\n", escape(msg)).into_bytes()
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut String) -> Result<(), Failure> {
    match cmd {
        Command::DetectOffline(a) => cmd_detect_offline(a, stdin, out),
        Command::DetectOnline(a) => cmd_detect_online(a, stdin, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::ThresholdRange(a) => cmd_threshold_range(a, out),
        Command::SimulateOffline(a) => cmd_simulate_offline(a, out),
        Command::SimulateOnline(a) => cmd_simulate_online(a, out),
    }
}

fn build_pair(
    model: ModelName,
    p0: Option<f64>,
    p1: Option<f64>,
    mu0: Option<f64>,
    mu1: Option<f64>,
) -> Result<HypothesisPair, Failure> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--model {} requires --{flag}", model_label(model))))
    };
    let pair = match model {
        ModelName::Bernoulli => HypothesisPair::bernoulli(need(p0, "p0")?, need(p1, "p1")?)?,
        ModelName::Gaussian => HypothesisPair::gaussian(need(mu0, "mu0")?, need(mu1, "mu1")?)?,
    };
    Ok(pair)
}

fn model_label(m: ModelName) -> &'static str {
    match m {
        ModelName::Bernoulli => "bernoulli",
        ModelName::Gaussian => "gaussian",
    }
}

impl ModelArgs {
    fn pair(&self) -> Result<HypothesisPair, Failure> {
        build_pair(self.model, self.p0, self.p1, self.mu0, self.mu1)
    }
}

impl OptionalModelArgs {
    fn pair(&self) -> Result<Option<HypothesisPair>, Failure> {
        match self.model {
            None => Ok(None),
            Some(m) => build_pair(m, self.p0, self.p1, self.mu0, self.mu1).map(Some),
        }
    }
}

/// Reads newline-delimited observations, skipping blank lines.
fn read_observations(
    input: &InputArgs,
    stdin: &mut dyn Read,
    pair: &HypothesisPair,
) -> Result<Vec<f64>, Failure> {
    let text = match &input.input {
        Some(path) => fs::read_to_string(path).map_err(|e| io_failure(&path.display().to_string(), e))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| io_failure("stdin", e))?;
            s
        }
    };
    let bernoulli = matches!(pair.kind(), PairKind::Bernoulli { .. });
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let v: f64 = t
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Failure::Data {
                name: "invalid-input",
                message: format!("line {lineno}: cannot parse {t:?} as a finite number"),
            })?;
        if bernoulli && v != 0.0 && v != 1.0 {
            return Err(Failure::Data {
                name: "invalid-observation",
                message: format!("line {lineno}: Bernoulli observations must be 0 or 1, got {t}"),
            });
        }
        values.push(v);
    }
    Ok(values)
}

fn cmd_detect_offline(a: DetectOfflineArgs, stdin: &mut dyn Read, out: &mut String) -> Result<(), Failure> {
    let pair = a.model.pair()?;
    let privacy = PrivacyParams::new(a.epsilon, a.delta)?;
    if privacy.is_private() {
        pair.sensitivity(a.delta)?;
    }
    let data = read_observations(&a.input, stdin, &pair)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let r = detect_offline(&pair, &data, privacy, &mut rng)?;
    let mode = match r.mode {
        NoiseMode::BoundedSensitivity => "bounded-sensitivity",
        NoiseMode::TailBound => "tail-bound",
    };
    out.push_str(&format!("k_tilde={} noise_scale={} mode={mode}\n", r.k_tilde, format_sig6(r.noise_scale)));
    Ok(())
}

fn cmd_detect_online(a: DetectOnlineArgs, stdin: &mut dyn Read, out: &mut String) -> Result<(), Failure> {
    let pair = a.model.pair()?;
    let config = OnlineConfig::new(a.window, a.threshold, a.epsilon, a.delta)?;
    if config.half_privacy().is_private() {
        pair.sensitivity(a.delta)?;
    }
    let data = read_observations(&a.input, stdin, &pair)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let r = detect_online(&pair, data, &config, &mut rng)?;
    match r.alarm {
        Some(al) => out.push_str(&format!(
            "alarm_time={} window_start={} k_tilde={} consumed={}\n",
            al.time, al.window_start, al.k_tilde, r.consumed
        )),
        None => out.push_str(&format!("no_alarm=true consumed={}\n", r.consumed)),
    }
    Ok(())
}

fn cmd_bounds(a: BoundsArgs, out: &mut String) -> Result<(), Failure> {
    let pair = a.model.pair()?;
    let missing = |flag: &str| Failure::Usage(format!("bounds requires --{flag} or a model to derive it from"));
    let sens = || -> Result<f64, Failure> {
        match (a.a, &pair) {
            (Some(v), _) => Ok(v),
            (None, Some(p)) => Ok(p.sensitivity(a.delta)?),
            (None, None) => Err(missing("A")),
        }
    };
    let c = || -> Result<f64, Failure> {
        match (a.c, &pair) {
            (Some(v), _) => Ok(v),
            (None, Some(p)) => Ok(p.kl_constants()?.c),
            (None, None) => Err(missing("C")),
        }
    };
    let c_m = || -> Result<f64, Failure> {
        match (a.c_m, &pair) {
            (Some(v), _) => Ok(v),
            (None, Some(p)) => Ok(p.kl_constants()?.c_m),
            (None, None) => Err(missing("CM")),
        }
    };
    let window = || a.n.ok_or_else(|| Failure::Usage(format!("{:?} requires --n", a.kind)));
    let alpha_of = |kind: BoundKind, a_val: f64, div: f64, window: usize| -> Result<f64, Failure> {
        let inputs = BoundInputs { a: a_val, divergence: div, beta: a.beta, epsilon: a.epsilon, window };
        Ok(AccuracyBound::compute(kind, inputs)?.alpha)
    };
    let alpha = match a.kind {
        BoundName::OfflineMle => alpha_of(BoundKind::MleBounded, sens()?, c()?, 0)?,
        BoundName::OfflinePrivate => alpha_of(BoundKind::PrivateBounded, sens()?, c()?, 0)?,
        BoundName::RelaxedMle => alpha_of(BoundKind::MleRelaxed, f64::NAN, c_m()?, 0)?,
        BoundName::RelaxedPrivate => alpha_of(BoundKind::PrivateRelaxed, sens()?, c_m()?, 0)?,
        BoundName::OnlineAlpha => alpha_of(BoundKind::Online, sens()?, c()?, window()?)?,
        BoundName::OnlineThreshold => {
            let k_star = a.k_star.ok_or_else(|| Failure::Usage("online-threshold requires --k-star".into()))?;
            let r = bounds::online_threshold_range(sens()?, c()?, window()?, k_star, a.beta, a.epsilon)?;
            push_range(out, r.t_low, r.t_high, r.feasible);
            return Ok(());
        }
    };
    out.push_str(&format!("alpha={}\n", format_sig6(alpha)));
    Ok(())
}

fn push_range(out: &mut String, lo: f64, hi: f64, feasible: bool) {
    out.push_str(&format!("t_low={}\nt_high={}\nfeasible={feasible}\n", format_sig6(lo), format_sig6(hi)));
}

fn cmd_threshold_range(a: ThresholdRangeArgs, out: &mut String) -> Result<(), Failure> {
    let pair = a.model.pair()?;
    let privacy = PrivacyParams::new(a.epsilon, a.delta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let r = empirical_threshold_range(&pair, privacy, a.n, a.k_star, a.fa_rate, a.miss_rate, a.realizations, &mut rng)?;
    push_range(out, r.t_low, r.t_high, r.feasible);
    Ok(())
}

fn write_csv(path: &PathBuf, bytes: Vec<u8>) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| io_failure(&path.display().to_string(), e))
}

fn cmd_simulate_offline(a: SimulateOfflineArgs, out: &mut String) -> Result<(), Failure> {
    let mut s = OfflineScenario::preset(a.model.into(), a.scenario.into());
    s.epsilons = a.epsilons;
    s.trials = a.trials;
    s.n = a.n;
    s.k_star = a.k_star;
    s.master_seed = a.seed;
    if let Some(d) = a.tail_delta {
        s.tail_delta = d;
    }
    let curves = simulation::run_offline(&s)?;
    let mut buf = Vec::new();
    simulation::write_offline_csv(&curves, &mut buf).map_err(|e| io_failure("csv", e))?;
    let rows = curves.iter().map(|c| c.alphas.len()).sum::<usize>();
    write_csv(&a.out, buf)?;
    out.push_str(&format!("scenario={} trials={} rows={rows}\n", s.label, s.trials));
    Ok(())
}

fn cmd_simulate_online(a: SimulateOnlineArgs, out: &mut String) -> Result<(), Failure> {
    let mut s = OnlineScenario::preset(a.model.into(), a.scenario.into());
    s.epsilons = a.epsilons;
    s.trials = a.trials;
    s.window_n = a.window;
    s.k_star = a.k_star;
    s.master_seed = a.seed;
    s.max_stream_len = a.max_len.unwrap_or(a.k_star + a.window);
    if let Some(t) = a.threshold {
        s.threshold = t;
    }
    if let Some(d) = a.tail_delta {
        s.tail_delta = d;
    }
    let reports = simulation::run_online(&s)?;
    let mut buf = Vec::new();
    simulation::write_online_csv(&reports, &mut buf).map_err(|e| io_failure("csv", e))?;
    write_csv(&a.out, buf)?;
    for r in &reports {
        out.push_str(&format!(
            "scenario={} epsilon={} trials={} no_alarm={} correct_window={}\n",
            s.label,
            format_sig6(r.epsilon),
            r.trials,
            r.no_alarm,
            r.correct_window
        ));
    }
    Ok(())
}
