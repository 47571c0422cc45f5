//! Batch runner behind the `fuzzy-monopole` binary.
//!
//! `run` executes one or all suites and writes, into the output directory:
//! one `<suite>.jsonl` per suite, `summary.json`, `metadata.json` (the only
//! file with a timestamp), and spectra/cutoff tables as CSV and/or JSON.
//! Everything except `metadata.json` is a pure function of the config.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{self, commutative_limit_table, cutoff_study, hydrogen, spectrum, EigenOptions};
use crate::symbolic::{
    check_flux, check_magnetic_field, check_string_pole, check_vector_potential, IdentitySuite, MonopoleCharges,
    PointwiseReport,
};
use crate::verify::{
    params, verify_angular_momentum, verify_casimir, verify_central_element, verify_coordinate_algebra,
    verify_hermiticity, verify_monopole_commutator, verify_su22_closure, verify_velocity_routes, AlgebraReport,
    CheckOptions, NormKind, Residual, DEFAULT_TOLERANCE,
};

#[derive(Debug, Parser)]
#[command(name = "fuzzy-monopole", version, about = "Monopole sectors on C² and on the fuzzy space R³_λ")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run checks and write reports.
    Run(RunArgs),
    /// Print the checks of a suite and what each one asserts.
    Describe {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Flags of `run`. Each one overrides the same key of `--config`.
#[derive(Debug, Default, Args)]
pub struct RunArgs {
    /// Flat `key = value` file; lists are comma-separated.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// algebra | monopole | su22 | commutative | spectrum | cutoff | all
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub n_max: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub kappa: Option<Vec<i32>>,
    /// Coulomb coupling of the spectrum suite.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Sample points of the commutative suite.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Gauss–Legendre order of the flux quadrature.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// json | csv, comma-separated for both.
    #[arg(long, value_delimiter = ',')]
    pub format: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Algebra,
    Monopole,
    Su22,
    Commutative,
    Spectrum,
    Cutoff,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Algebra, Suite::Monopole, Suite::Su22, Suite::Commutative, Suite::Spectrum, Suite::Cutoff];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Monopole => "monopole",
            Suite::Su22 => "su22",
            Suite::Commutative => "commutative",
            Suite::Spectrum => "spectrum",
            Suite::Cutoff => "cutoff",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        if self == Suite::All {
            Self::EACH.to_vec()
        } else {
            vec![self]
        }
    }

    fn default_n_max(self) -> Vec<usize> {
        match self {
            Suite::Algebra => vec![6, 8, 10],
            Suite::Su22 => vec![8],
            Suite::Spectrum => vec![40],
            Suite::Cutoff => vec![10, 20, 40],
            _ => vec![10],
        }
    }

    fn default_lambda(self) -> Vec<f64> {
        match self {
            Suite::Algebra => vec![0.5, 1.0, 2.0],
            Suite::Spectrum => vec![0.4, 0.3, 0.2],
            Suite::Cutoff => vec![1.0, 2.0],
            _ => vec![1.0],
        }
    }

    fn default_kappa(self) -> Vec<i32> {
        match self {
            Suite::Algebra => vec![-1, 0, 1],
            Suite::Monopole => vec![-2, -1, 0, 1, 2],
            Suite::Su22 => vec![0, 1],
            Suite::Commutative => vec![1, 2, 3],
            _ => vec![0],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(config_error("format", format!("expected json or csv, got `{other}`"))),
        }
    }
}

fn config_error(field: &str, reason: impl Into<String>) -> Error {
    Error::Config { field: field.into(), reason: reason.into() }
}

/// Resolved configuration. Empty grids fall back to per-suite defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub n_max: Option<Vec<usize>>,
    pub lambda: Option<Vec<f64>>,
    pub kappa: Option<Vec<i32>>,
    pub q: f64,
    pub points: usize,
    pub seed: u64,
    pub order: usize,
    pub out: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            n_max: None,
            lambda: None,
            kappa: None,
            q: 1.0,
            points: 100,
            seed: 0,
            order: crate::symbolic::FLUX_ORDER,
            out: PathBuf::from("reports"),
            formats: vec![Format::Json, Format::Csv],
        }
    }
}

fn parse_list<T: FromStr>(field: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| config_error(field, format!("`{s}`: {e}"))))
        .collect()
}

fn parse_one<T: FromStr>(field: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.trim().parse::<T>().map_err(|e| config_error(field, format!("`{}`: {e}", value.trim())))
}

impl RunConfig {
    /// Applies `key = value` lines. `#` starts a comment; `_` and `-` are
    /// interchangeable in keys.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_error("config", format!("line {}: expected `key = value`", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            match key.as_str() {
                "suite" => self.suite = value.parse()?,
                "n-max" => self.n_max = Some(parse_list("n-max", value)?),
                "lambda" => self.lambda = Some(parse_list("lambda", value)?),
                "kappa" => self.kappa = Some(parse_list("kappa", value)?),
                "q" => self.q = parse_one("q", value)?,
                "points" => self.points = parse_one("points", value)?,
                "seed" => self.seed = parse_one("seed", value)?,
                "order" => self.order = parse_one("order", value)?,
                "out" => self.out = PathBuf::from(value.trim()),
                "format" => self.formats = parse_list("format", value)?,
                other => return Err(config_error(other, "unknown key")),
            }
        }
        Ok(())
    }

    /// Config file first, then flags on top.
    pub fn from_args(args: &RunArgs) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &args.config {
            let text = fs::read_to_string(path)
                .map_err(|e| config_error("config", format!("{}: {e}", path.display())))?;
            cfg.apply_config_text(&text)?;
        }
        if let Some(s) = &args.suite {
            cfg.suite = s.parse()?;
        }
        if let Some(v) = &args.n_max {
            cfg.n_max = Some(v.clone());
        }
        if let Some(v) = &args.lambda {
            cfg.lambda = Some(v.clone());
        }
        if let Some(v) = &args.kappa {
            cfg.kappa = Some(v.clone());
        }
        if let Some(v) = args.q {
            cfg.q = v;
        }
        if let Some(v) = args.points {
            cfg.points = v;
        }
        if let Some(v) = args.seed {
            cfg.seed = v;
        }
        if let Some(v) = args.order {
            cfg.order = v;
        }
        if let Some(v) = &args.out {
            cfg.out = v.clone();
        }
        if let Some(v) = &args.format {
            cfg.formats = v.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let nonempty = |field: &str, empty: bool| if empty { Err(config_error(field, "empty list")) } else { Ok(()) };
        if let Some(v) = &self.n_max {
            nonempty("n-max", v.is_empty())?;
            if v.contains(&0) {
                return Err(config_error("n-max", "cutoffs must be positive"));
            }
        }
        if let Some(v) = &self.lambda {
            nonempty("lambda", v.is_empty())?;
            if v.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
                return Err(config_error("lambda", "values must be positive and finite"));
            }
        }
        if let Some(v) = &self.kappa {
            nonempty("kappa", v.is_empty())?;
        }
        if !self.q.is_finite() {
            return Err(config_error("q", "must be finite"));
        }
        if self.points == 0 {
            return Err(config_error("points", "must be positive"));
        }
        if self.order == 0 {
            return Err(config_error("order", "must be positive"));
        }
        nonempty("format", self.formats.is_empty())
    }

    fn n_max_for(&self, s: Suite) -> Vec<usize> {
        self.n_max.clone().unwrap_or_else(|| s.default_n_max())
    }

    fn lambda_for(&self, s: Suite) -> Vec<f64> {
        self.lambda.clone().unwrap_or_else(|| s.default_lambda())
    }

    fn kappa_for(&self, s: Suite) -> Vec<i32> {
        self.kappa.clone().unwrap_or_else(|| s.default_kappa())
    }
}

/// One JSON-lines record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Record {
    Algebra(AlgebraReport),
    Pointwise(PointwiseReport),
}

impl Record {
    pub fn pass(&self) -> bool {
        match self {
            Record::Algebra(r) => r.pass,
            Record::Pointwise(r) => r.pass,
        }
    }

    pub fn certifies(&self) -> bool {
        match self {
            Record::Algebra(r) => r.certifies,
            Record::Pointwise(r) => r.certifies,
        }
    }

    fn json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Per-suite tallies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub records: usize,
    pub certifying: usize,
    pub failed: usize,
    pub exploratory_failed: usize,
    pub pass: bool,
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: bool,
    pub suites: Vec<SuiteSummary>,
}

/// Records plus side tables of one suite.
#[derive(Debug, Default)]
struct SuiteOutput {
    records: Vec<Record>,
    /// `(file name, contents)`
    files: Vec<(String, String)>,
}

fn failing(identity: &str, p: crate::verify::Params, err: &Error) -> AlgebraReport {
    let mut r = AlgebraReport::new(
        identity,
        vec![],
        p,
        0,
        NormKind::Frobenius,
        Residual { residual: f64::INFINITY, scale: 0.0 },
        DEFAULT_TOLERANCE,
    );
    r.pass = false;
    r.with_note(format!("not evaluated: {err}"))
}

fn run_algebra(cfg: &RunConfig) -> Result<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let opts = CheckOptions::default();
    for &n in &cfg.n_max_for(Suite::Algebra) {
        for &lambda in &cfg.lambda_for(Suite::Algebra) {
            out.records.extend(verify_coordinate_algebra(n, lambda)?.into_iter().map(Record::Algebra));
            out.records.push(Record::Algebra(verify_casimir(n, lambda)?));
            for &kappa in &cfg.kappa_for(Suite::Algebra) {
                let checks = [
                    verify_angular_momentum(n, lambda, kappa, opts),
                    verify_velocity_routes(n, lambda, kappa, CheckOptions { depth: Some(2), ..opts }),
                    verify_hermiticity(n, lambda, kappa, CheckOptions { depth: Some(2), ..opts }),
                ];
                for c in checks {
                    match c {
                        Ok(reps) => out.records.extend(reps.into_iter().map(Record::Algebra)),
                        Err(e) => out.records.push(Record::Algebra(failing(
                            "algebra",
                            params(n, Some(lambda), Some(kappa)),
                            &e,
                        ))),
                    }
                }
            }
        }
    }
    Ok(out)
}

fn run_monopole(cfg: &RunConfig) -> Result<SuiteOutput> {
    let mut out = SuiteOutput::default();
    for &n in &cfg.n_max_for(Suite::Monopole) {
        for &lambda in &cfg.lambda_for(Suite::Monopole) {
            for &kappa in &cfg.kappa_for(Suite::Monopole) {
                match verify_monopole_commutator(kappa, lambda, n, CheckOptions::default()) {
                    Ok(check) => {
                        for mut r in check.reports {
                            if r.ordering.as_deref() != Some(check.selected.name()) {
                                r = r.exploratory();
                                r.note = Some(match r.note.take() {
                                    Some(n) => format!("alternative ordering; {n}"),
                                    None => "alternative ordering".into(),
                                });
                            }
                            out.records.push(Record::Algebra(r));
                        }
                    }
                    Err(e) => out.records.push(Record::Algebra(failing(
                        "monopole_commutator",
                        params(n, Some(lambda), Some(kappa)),
                        &e,
                    ))),
                }
            }
        }
    }
    Ok(out)
}

fn run_su22(cfg: &RunConfig) -> Result<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let mut tables = Vec::new();
    for &n in &cfg.n_max_for(Suite::Su22) {
        for &kappa in &cfg.kappa_for(Suite::Su22) {
            match verify_su22_closure(kappa, n, CheckOptions::default()) {
                Ok(c) => {
                    out.records.push(Record::Algebra(c.report.clone()));
                    tables.push(c);
                }
                Err(e) => out.records.push(Record::Algebra(failing("su22_closure", params(n, None, Some(kappa)), &e))),
            }
            out.records.push(Record::Algebra(verify_central_element(kappa, n)?));
        }
    }
    if cfg.formats.contains(&Format::Json) {
        out.files.push(("su22_structure.json".into(), serde_json::to_string_pretty(&tables)? + "\n"));
    }
    Ok(out)
}

fn run_commutative(cfg: &RunConfig) -> Result<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let kappas: Vec<i64> = cfg.kappa_for(Suite::Commutative).iter().map(|&k| k as i64).collect();
    let suite = IdentitySuite::new(cfg.points, cfg.seed);
    out.records.extend(suite.run(&kappas)?.into_iter().map(Record::Pointwise));

    let mut field_kappas = vec![0i64];
    field_kappas.extend(kappas.iter().copied().filter(|&k| k != 0));
    for &kappa in &field_kappas {
        let mut deltas = vec![0, kappa, -kappa];
        deltas.dedup();
        for delta in deltas {
            let c = MonopoleCharges::new(kappa, delta);
            out.records.push(Record::Pointwise(check_vector_potential(c, &suite.points, cfg.seed)?));
            out.records.push(Record::Pointwise(check_magnetic_field(c, &suite.points, cfg.seed)?));
        }
        for radius in [1.0, 7.0] {
            out.records.push(Record::Pointwise(check_flux(MonopoleCharges::new(kappa, 0), radius, cfg.order)?));
        }
        if kappa != 0 {
            for delta in [kappa, -kappa] {
                out.records.push(Record::Pointwise(check_string_pole(MonopoleCharges::new(kappa, delta), 1.0, 1e-7)?));
            }
        }
    }
    Ok(out)
}

/// Relative tolerances against the radial oracle, per level.
pub const ORACLE_TOLERANCES: [f64; 2] = [0.05, 0.10];
/// Levels computed per spectrum.
pub const SPECTRUM_LEVELS: usize = 6;
/// Tolerance of the `κ' → −κ'` comparison.
pub const MIRROR_TOLERANCE: f64 = 1e-10;

fn run_spectrum(cfg: &RunConfig) -> Result<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let opts = EigenOptions { seed: cfg.seed, ..Default::default() };
    let lambdas = cfg.lambda_for(Suite::Spectrum);
    let mut tables = Vec::new();
    for &n in &cfg.n_max_for(Suite::Spectrum) {
        for &kappa in &cfg.kappa_for(Suite::Spectrum) {
            let table = commutative_limit_table(cfg.q, &lambdas, n, SPECTRUM_LEVELS, kappa, &opts)?;
            if kappa == 0 && cfg.q > 0.0 {
                let oracle = hydrogen::lowest_with_multiplicity(cfg.q, ORACLE_TOLERANCES.len(), Default::default())?;
                for (level, (&reference, &tol)) in oracle.iter().zip(&ORACLE_TOLERANCES).enumerate() {
                    let ex = &table.extrapolated[level];
                    let p = params(n, None, Some(kappa));
                    let operands = vec![format!("level {level}"), "radial oracle".into()];
                    let rep = match ex.value {
                        Some(v) => AlgebraReport::relative(
                            "coulomb_limit",
                            operands,
                            p,
                            Residual { residual: (v - reference).abs(), scale: reference.abs() },
                            tol,
                        )
                        .with_note(format!(
                            "extrapolated {v:.6} vs {reference:.6} over lambda {:?}{}",
                            ex.lambdas_used,
                            if ex.used_unconverged { " (includes unconverged points)" } else { "" }
                        )),
                        None => failing(
                            "coulomb_limit",
                            p,
                            &Error::InvalidArgument("fewer than two lambda values".into()),
                        ),
                    };
                    out.records.push(Record::Algebra(rep));
                }
            }
            if kappa != 0 {
                let first = &table.tables[0];
                let mirror = spectrum(cfg.q, first.lambda, -kappa, n, SPECTRUM_LEVELS, &opts)?;
                let residual = first
                    .eigenvalues
                    .iter()
                    .zip(&mirror.eigenvalues)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                let scale = first.eigenvalues.iter().map(|e| e.abs()).fold(0.0, f64::max);
                out.records.push(Record::Algebra(AlgebraReport::new(
                    "spectrum_mirror",
                    vec![format!("kappa {kappa}"), format!("kappa {}", -kappa)],
                    params(n, Some(first.lambda), Some(kappa)),
                    0,
                    NormKind::MaxAbs,
                    Residual { residual, scale },
                    MIRROR_TOLERANCE,
                )));
            }
            tables.push(table);
        }
    }
    if cfg.formats.contains(&Format::Csv) {
        let mut csv = String::from(spectra::SpectrumTable::CSV_HEADER);
        csv.push('\n');
        for t in tables.iter().flat_map(|l| &l.tables) {
            csv.push_str(&t.csv_rows());
        }
        out.files.push(("spectra.csv".into(), csv));
    }
    if cfg.formats.contains(&Format::Json) {
        out.files.push(("spectra.json".into(), serde_json::to_string_pretty(&tables)? + "\n"));
    }
    Ok(out)
}

/// Allowed relative deviation of the `λ⁻²` scaling ratio.
pub const CUTOFF_RATIO_TOLERANCE: f64 = 0.25;

fn run_cutoff(cfg: &RunConfig) -> Result<SuiteOutput> {
    let mut out = SuiteOutput::default();
    let opts = EigenOptions { seed: cfg.seed, ..Default::default() };
    let n_list = cfg.n_max_for(Suite::Cutoff);
    let studies: Vec<_> =
        cfg.lambda_for(Suite::Cutoff).iter().map(|&l| cutoff_study(l, &n_list, &opts)).collect::<Result<_>>()?;
    let n_top = *n_list.iter().max().expect("validated");
    for s in &studies {
        let mut r = AlgebraReport::relative(
            "cutoff_saturation",
            vec!["E_max".into()],
            params(n_top, Some(s.lambda), Some(0)),
            Residual { residual: s.last_relative_change.unwrap_or(f64::INFINITY), scale: 1.0 },
            spectra::SATURATION_THRESHOLD,
        )
        .with_note(format!("lambda^2 E_max = {:.6}", s.scaled_e_max))
        .exploratory();
        r.pass = s.saturated;
        out.records.push(Record::Algebra(r));
    }
    for pair in studies.windows(2) {
        let ratio = pair[0].scaled_e_max / pair[1].scaled_e_max;
        out.records.push(Record::Algebra(
            AlgebraReport::relative(
                "cutoff_scaling",
                vec![format!("lambda {}", pair[0].lambda), format!("lambda {}", pair[1].lambda)],
                params(n_top, None, Some(0)),
                Residual { residual: (ratio - 1.0).abs(), scale: 1.0 },
                CUTOFF_RATIO_TOLERANCE,
            )
            .with_note(format!("ratio of lambda^2 E_max = {ratio:.6}"))
            .exploratory(),
        ));
    }
    if cfg.formats.contains(&Format::Csv) {
        let mut csv = String::from("lambda,N,e_min,e_max\n");
        for s in &studies {
            for p in &s.points {
                writeln!(csv, "{},{},{:.12e},{:.12e}", s.lambda, p.n_max, p.e_min, p.e_max).expect("string write");
            }
        }
        out.files.push(("cutoff.csv".into(), csv));
    }
    if cfg.formats.contains(&Format::Json) {
        out.files.push(("cutoff.json".into(), serde_json::to_string_pretty(&studies)? + "\n"));
    }
    Ok(out)
}

fn run_suite(s: Suite, cfg: &RunConfig) -> Result<SuiteOutput> {
    match s {
        Suite::Algebra => run_algebra(cfg),
        Suite::Monopole => run_monopole(cfg),
        Suite::Su22 => run_su22(cfg),
        Suite::Commutative => run_commutative(cfg),
        Suite::Spectrum => run_spectrum(cfg),
        Suite::Cutoff => run_cutoff(cfg),
        Suite::All => unreachable!("expanded by members()"),
    }
}

#[derive(Serialize)]
struct Metadata<'a> {
    generated_unix_seconds: u64,
    package_version: &'static str,
    config: &'a RunConfig,
}

/// Runs the configured suites and writes every output file.
pub fn run(cfg: &RunConfig) -> Result<Summary> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out)?;
    let mut suites = Vec::new();
    for s in cfg.suite.members() {
        let output = run_suite(s, cfg)?;
        let mut lines = String::new();
        for r in &output.records {
            lines.push_str(&r.json_line());
            lines.push('\n');
        }
        fs::write(cfg.out.join(format!("{}.jsonl", s.name())), lines)?;
        for (name, contents) in &output.files {
            fs::write(cfg.out.join(name), contents)?;
        }
        let certifying = output.records.iter().filter(|r| r.certifies()).count();
        let failed = output.records.iter().filter(|r| r.certifies() && !r.pass()).count();
        let exploratory_failed = output.records.iter().filter(|r| !r.certifies() && !r.pass()).count();
        suites.push(SuiteSummary {
            suite: s,
            records: output.records.len(),
            certifying,
            failed,
            exploratory_failed,
            pass: failed == 0,
        });
    }
    let summary = Summary { pass: suites.iter().all(|s| s.pass), suites };
    fs::write(cfg.out.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    let meta = Metadata {
        generated_unix_seconds: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        package_version: env!("CARGO_PKG_VERSION"),
        config: cfg,
    };
    fs::write(cfg.out.join("metadata.json"), serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(summary)
}

/// Output files whose bytes depend only on the config.
pub fn deterministic_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<PathBuf>>>()?
        .into_iter()
        .filter(|p| p.file_name().is_some_and(|n| n != "metadata.json"))
        .collect();
    files.sort();
    Ok(files)
}

const CATALOG: &[(Suite, &[(&str, &str)])] = &[
    (
        Suite::Algebra,
        &[
            ("coordinate_algebra", "[x_i, x_j] = 2i lambda eps_ijk x_k, x_i = lambda a+ sigma^i a on the truncated Fock space"),
            ("casimir", "x_1^2 + x_2^2 + x_3^2 = r^2 - lambda^2, r = lambda (N + 1)"),
            ("angular_momentum_algebra", "[L_i, L_j] = i eps_ijk L_k with L_i = (1/2 lambda)[x_i, .]"),
            ("vector_operator", "[L_i, X_j] = i eps_ijk X_k"),
            ("velocity_routes", "i[H0, X_i] = -(i/2) r^-1 sigma^i_ab (a+_a Psi a_b - a_b Psi a+_a), interior depth 2"),
            ("weighted_hermiticity", "(Phi, A Psi) = (A Phi, Psi) under 4 pi lambda^2 Tr[Phi+ r Psi] for H0, X_i, r, L_i"),
        ],
    ),
    (
        Suite::Monopole,
        &[(
            "monopole_commutator",
            "[V_i, V_j] = i(-kappa'/2) eps_ijk X_k (r(r^2 - lambda^2))^-1 on the interior; both operator orders reported",
        )],
    ),
    (
        Suite::Su22,
        &[
            ("su22_closure", "[S_A, S_B] lies in the span of the fifteen quadratic generators and C, by least squares"),
            ("central_element", "(C + 2) = kappa' on the whole sector, C = L_N - R_(N+2)"),
        ],
    ),
    (
        Suite::Commutative,
        &[
            ("laplacian_of_function_of_x", "(1/r) {z*_a, {z_a, Phi(x)}} = d_i d_i Phi at seeded points"),
            ("velocity_on_function_of_x", "V_j Phi(x) = -i d_j Phi, V_j = -(i/2r) sigma^j_ab (z*_a d/dz*_b + z_b d/dz_a)"),
            ("cross_product_velocity", "eps_ijk x_j V_k Phi xi = (L_i + (kappa/2) x_i / r) Phi xi, L_i = (i/2){x_i, .}"),
            ("velocity_commutator_monopole", "[V_i, V_j] Phi xi = i (kappa/2) eps_ijk (x_k / r^3) Phi xi"),
            ("vector_potential", "A = (V xi)/xi has A_r = A_theta = 0, A_phi = (delta + kappa cos theta)/(2 r sin theta)"),
            ("magnetic_field", "finite-difference curl A = -(kappa/2) x / r^3"),
            ("magnetic_flux", "sphere flux of curl A = -2 pi kappa at radii 1 and 7"),
            ("dirac_string_pole", "|A_phi| diverges at theta = 0 for delta = kappa and at theta = pi for delta = -kappa"),
        ],
    ),
    (
        Suite::Spectrum,
        &[
            ("coulomb_limit", "lowest levels of H0 - q W extrapolated to lambda = 0 against a radial finite-difference oracle"),
            ("spectrum_mirror", "spectra at kappa' and -kappa' coincide"),
        ],
    ),
    (
        Suite::Cutoff,
        &[
            ("cutoff_saturation", "largest free eigenvalue settles as N_max grows (exploratory)"),
            ("cutoff_scaling", "lambda^2 E_max agrees across lambda values (exploratory)"),
        ],
    ),
];

/// Catalog text for one suite or all of them.
pub fn describe(suite: &str) -> Result<String> {
    let s: Suite = suite.parse()?;
    let mut out = String::new();
    for member in s.members() {
        let (_, checks) = CATALOG.iter().find(|(x, _)| *x == member).expect("every suite is cataloged");
        writeln!(out, "{}:", member.name()).expect("string write");
        for (name, formula) in *checks {
            writeln!(out, "  {name:<30} {formula}").expect("string write");
        }
    }
    Ok(out)
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Describe { suite } => describe(&suite).map(|text| {
            print!("{text}");
            0
        }),
        Command::Run(args) => RunConfig::from_args(&args).and_then(|cfg| run(&cfg)).map(|summary| {
            for s in &summary.suites {
                println!(
                    "{:<12} {:>4} records, {:>3} failed{}",
                    s.suite.name(),
                    s.records,
                    s.failed,
                    if s.exploratory_failed > 0 {
                        format!(" ({} exploratory)", s.exploratory_failed)
                    } else {
                        String::new()
                    }
                );
            }
            println!("overall: {}", if summary.pass { "PASS" } else { "FAIL" });
            i32::from(!summary.pass)
        }),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        2
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse_and_reject_unknown() {
        assert_eq!("SU22".parse::<Suite>().unwrap(), Suite::Su22);
        assert!(matches!("bogus".parse::<Suite>(), Err(Error::UnknownSuite(_))));
        assert!(describe("bogus").is_err());
        let all = describe("all").unwrap();
        for s in Suite::EACH {
            assert!(all.contains(&format!("{}:", s.name())));
        }
    }

    #[test]
    fn config_text_and_flag_override() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_text("# grid\nsuite = algebra\nn_max = 6, 8\nkappa = -1,0\nformat = csv\n").unwrap();
        assert_eq!(cfg.suite, Suite::Algebra);
        assert_eq!(cfg.n_max, Some(vec![6, 8]));
        assert_eq!(cfg.kappa, Some(vec![-1, 0]));
        assert_eq!(cfg.formats, vec![Format::Csv]);
        let err = cfg.apply_config_text("lambda = 1, x").unwrap_err();
        assert!(matches!(err, Error::Config { ref field, .. } if field == "lambda"));
        let err = cfg.apply_config_text("colour = red").unwrap_err();
        assert!(matches!(err, Error::Config { ref field, .. } if field == "colour"));
    }

    #[test]
    fn validation_names_the_field() {
        let cfg = RunConfig { lambda: Some(vec![-1.0]), ..Default::default() };
        assert!(matches!(cfg.validate(), Err(Error::Config { ref field, .. }) if field == "lambda"));
        let cfg = RunConfig { n_max: Some(vec![]), ..Default::default() };
        assert!(matches!(cfg.validate(), Err(Error::Config { ref field, .. }) if field == "n-max"));
    }

    #[test]
    fn negative_kappa_flag_parses() {
        let cli = Cli::try_parse_from(["fuzzy-monopole", "run", "--kappa", "-2,-1,0", "--suite", "monopole"]).unwrap();
        let Command::Run(args) = cli.command else { panic!("expected run") };
        assert_eq!(args.kappa, Some(vec![-2, -1, 0]));
    }
}
