//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage and input errors, 3 when the
//! numerical machinery fails (degenerate data, failed fits, ...).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::compare::{vuong, Favored};
use crate::distributions::{Family, ModelSpec};
use crate::error::{Error, Result};
use crate::experiments::{
    bootstrap_vuong_study, mean_crosscheck, mixture_study, plausibility_table, scale_ci_study, shape_table,
    simulation_study, MixtureSpec, SubjectFixture, SUBJECTS_2006,
};
use crate::fitting::{fit, FitConfig};
use crate::gof::{ks_p_value, RefitMode, DEFAULT_EPSILON};
use crate::io::report::{fmt_opt, fmt_sig, Format, Report, ReportHeader, ReportRow};
use crate::io::{emit_plot_data, ingest, RawCountFile, DEFAULT_OFFSET};
use crate::resampling::{bootstrap_study, ResampleSize, StudySummary};
use crate::sample::CitationSample;
use crate::seed;

/// Environment variable read for the master seed when `--seed` is absent.
pub const SEED_ENV: &str = "CITEDIST_SEED";

const FIXTURE_SOURCE: &str = "simulated from the embedded 2006 subject fixture";

#[derive(Debug, Parser)]
#[command(name = "citedist", version, about = "Fit and compare discretised lognormal and hooked power law models of citation counts")]
pub struct Cli {
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, env = SEED_ENV)]
    pub seed: Option<u64>,

    /// Report format.
    #[arg(long, global = true, default_value = "tsv")]
    pub format: FormatArg,

    /// Added to every raw count when reading input files.
    #[arg(long, global = true, default_value_t = DEFAULT_OFFSET)]
    pub offset: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Tsv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tsv => Format::Tsv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistArg {
    Lognormal,
    Hooked,
    Both,
}

impl DistArg {
    fn families(self) -> Vec<Family> {
        match self {
            DistArg::Lognormal => vec![Family::Lognormal],
            DistArg::Hooked => vec![Family::Hooked],
            DistArg::Both => Family::ALL.to_vec(),
        }
    }

    fn single(self) -> Result<Family> {
        match self {
            DistArg::Lognormal => Ok(Family::Lognormal),
            DistArg::Hooked => Ok(Family::Hooked),
            DistArg::Both => Err(Error::Parameter("choose one of lognormal or hooked for --dist".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    Mu,
    Sigma,
    Alpha,
    B,
    Mean,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum-likelihood fits.
    Fit {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "both")]
        dist: DistArg,
    },
    /// Kolmogorov-Smirnov test with a Monte-Carlo p-value.
    Gof {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "both")]
        dist: DistArg,
        #[arg(long, default_value_t = 199)]
        nsim: usize,
        /// Refit every simulated sample before computing its statistic.
        #[arg(long)]
        refit: bool,
    },
    /// Vuong test of the fitted hooked law against the fitted lognormal.
    Vuong {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Bootstrap interval of a fitted parameter or of the sample mean.
    Bootstrap {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "sigma")]
        stat: StatArg,
        #[arg(long, default_value_t = 50)]
        reps: usize,
        /// Resample size; the source size when absent.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Draw counts from a model and print them one per line, minus the offset.
    Simulate(SimulateArgs),
    /// Table-level studies.
    #[command(subcommand)]
    Study(Study),
    /// CSV of empirical and fitted CDFs for plotting.
    Plot {
        file: PathBuf,
        #[arg(long, default_value = "lognormal")]
        dist: DistArg,
    },
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value = "lognormal")]
    pub dist: DistArg,
    /// Take parameters from a fixture subject.
    #[arg(long)]
    pub subject: Option<String>,
    /// First parameter: μ or α.
    #[arg(long, allow_hyphen_values = true)]
    pub p1: Option<f64>,
    /// Second parameter: σ or B.
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long, short = 'n', default_value_t = 1000)]
    pub size: usize,
}

/// Options shared by studies that run on files or on the fixture.
#[derive(Debug, Args)]
pub struct StudyInput {
    /// Count files; without any, samples are simulated from the fixture.
    pub files: Vec<PathBuf>,
    /// Generator family for fixture simulations.
    #[arg(long, default_value = "lognormal")]
    pub dist: DistArg,
    /// Restrict the fixture to these subjects.
    #[arg(long = "subject")]
    pub subjects: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Study {
    /// KS plausibility of both families per subject.
    Plausibility {
        #[command(flatten)]
        input: StudyInput,
        #[arg(long, default_value_t = 199)]
        nsim: usize,
    },
    /// Replicated Vuong comparisons: bootstrap on files, simulation on the fixture.
    Vuong {
        #[command(flatten)]
        input: StudyInput,
        #[arg(long, default_value_t = 50)]
        reps: usize,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Bootstrap intervals of the lognormal scale parameter.
    Scale {
        #[command(flatten)]
        input: StudyInput,
        #[arg(long, default_value_t = 50)]
        reps: usize,
        #[arg(long, default_value_t = 500)]
        size: usize,
    },
    /// Bottom/middle/top comparison against both fits.
    Shape {
        #[command(flatten)]
        input: StudyInput,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Lognormal fit quality on a two-component mixture versus a pure sample.
    Mixture {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        mu1: f64,
        #[arg(long, default_value_t = 3.5, allow_hyphen_values = true)]
        mu2: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Weight of the first component.
        #[arg(long, default_value_t = 0.5)]
        weight: f64,
        #[arg(long, short = 'n', default_value_t = 10_000)]
        size: usize,
        #[arg(long, default_value_t = 50)]
        reps: usize,
    },
    /// Closed-form means averaged over the fixture.
    Means,
}

/// Parses `args` and runs the command, writing reports to `out` and the
/// seed line and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let master = cli.seed.unwrap_or_else(rand::random::<u64>);
    let _ = writeln!(err, "master seed: {master}");
    match execute(&cli, master, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        3
    } else {
        2
    }
}

fn read_samples(files: &[PathBuf], offset: u64) -> Result<Vec<CitationSample>> {
    files
        .iter()
        .map(|p| ingest(&RawCountFile::read(p, None)?, offset))
        .collect()
}

fn files_source(files: &[PathBuf]) -> String {
    let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    format!("files: {}", names.join(", "))
}

fn fixture_rows(names: &[String]) -> Result<Vec<(usize, SubjectFixture)>> {
    if names.is_empty() {
        return Ok(SUBJECTS_2006.iter().copied().enumerate().collect());
    }
    names
        .iter()
        .map(|name| {
            SUBJECTS_2006
                .iter()
                .position(|s| s.name.eq_ignore_ascii_case(name))
                .map(|i| (i, SUBJECTS_2006[i]))
                .ok_or_else(|| Error::Parameter(format!("unknown subject '{name}'")))
        })
        .collect()
}

fn fixture_model(subject: &SubjectFixture, family: Family) -> Result<ModelSpec> {
    match family {
        Family::Lognormal => subject.lognormal(),
        Family::Hooked => subject.hooked(),
    }
}

/// Samples from the files, or one simulated sample per fixture subject with
/// the subject's own size.
fn study_samples(input: &StudyInput, offset: u64, master: u64) -> Result<(Vec<CitationSample>, String)> {
    if !input.files.is_empty() {
        return Ok((read_samples(&input.files, offset)?, files_source(&input.files)));
    }
    let family = input.dist.single()?;
    let samples = fixture_rows(&input.subjects)?
        .into_iter()
        .map(|(i, s)| {
            let model = fixture_model(&s, family)?;
            Ok(model
                .sample(s.n, seed::derive(master, seed::tag::SUBJECT, i as u64))
                .with_label(s.name))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((samples, format!("{FIXTURE_SOURCE} ({family} generator)")))
}

fn emit<R: ReportRow>(header: ReportHeader, rows: Vec<R>, format: Format, out: &mut dyn Write) -> Result<()> {
    Report::new(header, rows).write(format, out)
}

fn execute(cli: &Cli, master: u64, out: &mut dyn Write) -> Result<()> {
    let format: Format = cli.format.into();
    let config = FitConfig::default();
    match &cli.command {
        Command::Fit { files, dist } => {
            let samples = read_samples(files, cli.offset)?;
            let mut rows = Vec::new();
            for s in &samples {
                for family in dist.families() {
                    let f = fit(family, s, &config)?;
                    let (p1, p2) = f.model.param_pair();
                    rows.push(FitRow {
                        subject: s.label().to_string(),
                        n: s.len(),
                        family,
                        p1,
                        p2,
                        log_likelihood: f.log_likelihood,
                        status: f.status.to_string(),
                    });
                }
            }
            emit(ReportHeader::new("maximum-likelihood fits", files_source(files)), rows, format, out)
        }
        Command::Gof { files, dist, nsim, refit } => {
            let samples = read_samples(files, cli.offset)?;
            let mode = if *refit { RefitMode::Refit } else { RefitMode::FixedParams };
            let mut rows = Vec::new();
            for (i, s) in samples.iter().enumerate() {
                for (k, family) in dist.families().into_iter().enumerate() {
                    let seed = seed::derive(master, seed::tag::SUBJECT, (2 * i + k) as u64);
                    let g = ks_p_value(family, s, *nsim, seed, mode, &config)?;
                    let (p1, p2) = g.model.param_pair();
                    rows.push(GofRow {
                        subject: s.label().to_string(),
                        family,
                        p1,
                        p2,
                        ks: g.ks_stat,
                        p_value: g.p_value,
                        n_sim: g.n_sim,
                        status: g.fit_status.to_string(),
                    });
                }
            }
            let header = ReportHeader::new("Kolmogorov-Smirnov tests", files_source(files))
                .seed(master)
                .n_sim(*nsim);
            emit(header, rows, format, out)
        }
        Command::Vuong { files } => {
            let samples = read_samples(files, cli.offset)?;
            let mut rows = Vec::new();
            for s in &samples {
                let hooked = fit(Family::Hooked, s, &config)?;
                let lognormal = fit(Family::Lognormal, s, &config)?;
                let v = vuong(&hooked.model, &lognormal.model, s)?;
                rows.push(VuongRow {
                    subject: s.label().to_string(),
                    n: s.len(),
                    z: v.z,
                    p_value: v.p_two_sided,
                    favoured: match v.favored {
                        Favored::ModelA => "hooked",
                        Favored::ModelB => "lognormal",
                        Favored::Neither => "neither",
                    }
                    .to_string(),
                });
            }
            emit(ReportHeader::new("Vuong tests (positive z favours hooked)", files_source(files)), rows, format, out)
        }
        Command::Bootstrap { files, stat, reps, size } => {
            let samples = read_samples(files, cli.offset)?;
            let size = size.map_or(ResampleSize::SameSize, ResampleSize::Fixed);
            let mut rows = Vec::new();
            for (i, s) in samples.iter().enumerate() {
                let seed = seed::derive(master, seed::tag::SUBJECT, i as u64);
                let (name, summary) = bootstrap_stat(s, *stat, *reps, size, seed, &config)?;
                rows.push(BootstrapRow::new(s, name, &summary));
            }
            let header = ReportHeader::new("bootstrap intervals", files_source(files))
                .seed(master)
                .reps(*reps);
            emit(header, rows, format, out)
        }
        Command::Simulate(args) => {
            let family = args.dist.single()?;
            let model = match (&args.subject, args.p1, args.p2) {
                (Some(name), None, None) => {
                    let (_, s) = fixture_rows(std::slice::from_ref(name))?[0];
                    fixture_model(&s, family)?
                }
                (None, Some(p1), Some(p2)) => ModelSpec::from_family(family, p1, p2)?,
                _ => return Err(Error::Parameter("give either --subject or both --p1 and --p2".into())),
            };
            let sample = model.sample(args.size, seed::derive(master, seed::tag::SIMULATION, 0));
            for &c in sample.counts() {
                writeln!(out, "{}", c.saturating_sub(cli.offset))?;
            }
            Ok(())
        }
        Command::Plot { file, dist } => {
            let sample = ingest(&RawCountFile::read(file, None)?, cli.offset)?;
            let f = fit(dist.single()?, &sample, &config)?;
            emit_plot_data(&f.model, &sample, out)
        }
        Command::Study(study) => run_study(study, cli, master, format, &config, out),
    }
}

fn run_study(study: &Study, cli: &Cli, master: u64, format: Format, config: &FitConfig, out: &mut dyn Write) -> Result<()> {
    match study {
        Study::Plausibility { input, nsim } => {
            let (samples, source) = study_samples(input, cli.offset, master)?;
            let rows = plausibility_table(&samples, *nsim, master, config)?;
            let header = ReportHeader::new("KS plausibility", source).seed(master).n_sim(*nsim);
            emit(header, rows, format, out)
        }
        Study::Vuong { input, reps, size } => {
            let mut rows = Vec::new();
            let source = if input.files.is_empty() {
                let family = input.dist.single()?;
                for (i, s) in fixture_rows(&input.subjects)? {
                    let n = size.unwrap_or(s.n);
                    let seed = seed::derive(master, seed::tag::SUBJECT, i as u64);
                    let study = simulation_study(&fixture_model(&s, family)?, n, *reps, seed, config)?;
                    rows.push(study.row(s.name));
                }
                format!("{FIXTURE_SOURCE} ({family} generator)")
            } else {
                let samples = read_samples(&input.files, cli.offset)?;
                let size = size.map_or(ResampleSize::SameSize, ResampleSize::Fixed);
                for (i, s) in samples.iter().enumerate() {
                    let seed = seed::derive(master, seed::tag::SUBJECT, i as u64);
                    rows.push(bootstrap_vuong_study(s, *reps, size, seed, config)?.row(s.label()));
                }
                files_source(&input.files)
            };
            let header = ReportHeader::new("Vuong z intervals (positive favours hooked)", source)
                .seed(master)
                .reps(*reps);
            emit(header, rows, format, out)
        }
        Study::Scale { input, reps, size } => {
            let (samples, source) = study_samples(input, cli.offset, master)?;
            let rows = scale_ci_study(&samples, *reps, ResampleSize::Fixed(*size), master, config)?;
            let header = ReportHeader::new("lognormal scale intervals", source).seed(master).reps(*reps);
            emit(header, rows, format, out)
        }
        Study::Shape { input, epsilon } => {
            let (samples, source) = study_samples(input, cli.offset, master)?;
            let table = shape_table(&samples, *epsilon, config)?;
            let header = ReportHeader::new(format!("CDF shape comparison (epsilon {epsilon})"), source).seed(master);
            emit(header, table.lines(), format, out)
        }
        Study::Mixture { mu1, mu2, sigma, weight, size, reps } => {
            let first = ModelSpec::lognormal(*mu1, *sigma)?;
            let second = ModelSpec::lognormal(*mu2, *sigma)?;
            let pure_mu = weight * mu1 + (1.0 - weight) * mu2;
            let pure = ModelSpec::lognormal(pure_mu, *sigma)?;
            let spec = MixtureSpec::pair(first, second, *weight)?;
            let result = mixture_study(&spec, &pure, Family::Lognormal, *size, *reps, master, config)?;
            let ks = |pick: fn(&crate::experiments::MixtureTrial) -> f64| {
                StudySummary::from_outcomes("ks", result.trials.iter().map(|t| t.as_ref().map(pick)).collect())
                    .ok()
                    .map(|s| s.median)
            };
            let row = MixtureRow {
                mixture: format!("{weight}×Ln({mu1}, {sigma}) + {}×Ln({mu2}, {sigma})", 1.0 - weight),
                pure: format!("Ln({pure_mu}, {sigma})"),
                n: *size,
                trials: *reps,
                mixture_worse: result.worse_count(),
                failed: result.failed(),
                median_mixture_ks: ks(|t| t.mixture_ks),
                median_pure_ks: ks(|t| t.pure_ks),
            };
            let header = ReportHeader::new("mixture impurity", "simulated lognormal mixtures")
                .seed(master)
                .reps(*reps);
            emit(header, vec![row], format, out)
        }
        Study::Means => {
            let table = mean_crosscheck(&SUBJECTS_2006).table();
            emit(ReportHeader::new("closed-form means", "embedded 2006 subject fixture"), table, format, out)
        }
    }
}

fn bootstrap_stat(
    sample: &CitationSample,
    stat: StatArg,
    reps: usize,
    size: ResampleSize,
    seed: u64,
    config: &FitConfig,
) -> Result<(&'static str, StudySummary)> {
    let param = |family: Family, second: bool| {
        move |s: &CitationSample| {
            let (a, b) = fit(family, s, config)?.model.param_pair();
            Ok(if second { b } else { a })
        }
    };
    let summary = match stat {
        StatArg::Mu => bootstrap_study(sample, reps, size, "mu", param(Family::Lognormal, false), seed),
        StatArg::Sigma => bootstrap_study(sample, reps, size, "sigma", param(Family::Lognormal, true), seed),
        StatArg::Alpha => bootstrap_study(sample, reps, size, "alpha", param(Family::Hooked, false), seed),
        StatArg::B => bootstrap_study(sample, reps, size, "b", param(Family::Hooked, true), seed),
        StatArg::Mean => bootstrap_study(sample, reps, size, "mean", |s| s.mean().ok_or(Error::EmptySample), seed),
    }?;
    let name = match stat {
        StatArg::Mu => "mu",
        StatArg::Sigma => "sigma",
        StatArg::Alpha => "alpha",
        StatArg::B => "b",
        StatArg::Mean => "mean",
    };
    Ok((name, summary))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRow {
    pub subject: String,
    pub n: usize,
    pub family: Family,
    /// μ or α.
    pub p1: f64,
    /// σ or B.
    pub p2: f64,
    pub log_likelihood: f64,
    pub status: String,
}

impl ReportRow for FitRow {
    const COLUMNS: &'static [&'static str] = &["Subject", "N", "Family", "μ or α", "σ or B", "Log-likelihood", "Status"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.subject.clone(),
            self.n.to_string(),
            self.family.to_string(),
            fmt_sig(self.p1),
            fmt_sig(self.p2),
            fmt_sig(self.log_likelihood),
            self.status.clone(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofRow {
    pub subject: String,
    pub family: Family,
    pub p1: f64,
    pub p2: f64,
    pub ks: f64,
    pub p_value: f64,
    pub n_sim: usize,
    pub status: String,
}

impl ReportRow for GofRow {
    const COLUMNS: &'static [&'static str] = &["Subject", "Family", "μ or α", "σ or B", "KS", "KS p", "Simulations", "Status"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.subject.clone(),
            self.family.to_string(),
            fmt_sig(self.p1),
            fmt_sig(self.p2),
            fmt_sig(self.ks),
            fmt_sig(self.p_value),
            self.n_sim.to_string(),
            self.status.clone(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VuongRow {
    pub subject: String,
    pub n: usize,
    pub z: f64,
    pub p_value: f64,
    pub favoured: String,
}

impl ReportRow for VuongRow {
    const COLUMNS: &'static [&'static str] = &["Subject", "N", "Vuong z", "p", "Favoured"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.subject.clone(),
            self.n.to_string(),
            fmt_sig(self.z),
            fmt_sig(self.p_value),
            self.favoured.clone(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapRow {
    pub subject: String,
    pub statistic: String,
    pub lo95: f64,
    pub median: f64,
    pub hi95: f64,
    pub reps: usize,
    pub failed: usize,
}

impl BootstrapRow {
    fn new(sample: &CitationSample, statistic: &str, s: &StudySummary) -> Self {
        Self {
            subject: sample.label().to_string(),
            statistic: statistic.to_string(),
            lo95: s.lo95,
            median: s.median,
            hi95: s.hi95,
            reps: s.reps,
            failed: s.failed,
        }
    }
}

impl ReportRow for BootstrapRow {
    const COLUMNS: &'static [&'static str] = &["Subject", "Statistic", "Lower 95% limit", "Median", "Upper 95% limit", "Reps", "Failed"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.subject.clone(),
            self.statistic.clone(),
            fmt_sig(self.lo95),
            fmt_sig(self.median),
            fmt_sig(self.hi95),
            self.reps.to_string(),
            self.failed.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureRow {
    pub mixture: String,
    pub pure: String,
    pub n: usize,
    pub trials: usize,
    pub mixture_worse: usize,
    pub failed: usize,
    pub median_mixture_ks: Option<f64>,
    pub median_pure_ks: Option<f64>,
}

impl ReportRow for MixtureRow {
    const COLUMNS: &'static [&'static str] = &[
        "Mixture",
        "Pure",
        "N",
        "Trials",
        "Mixture KS larger",
        "Failed",
        "Median mixture KS",
        "Median pure KS",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            self.mixture.clone(),
            self.pure.clone(),
            self.n.to_string(),
            self.trials.to_string(),
            self.mixture_worse.to_string(),
            self.failed.to_string(),
            fmt_opt(self.median_mixture_ks),
            fmt_opt(self.median_pure_ks),
        ]
    }
}
