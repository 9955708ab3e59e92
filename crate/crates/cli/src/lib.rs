//! Command-line front end for the `ginicor` library.
//!
//! Exit codes: 0 success, 1 usage or invalid parameter, 2 malformed data,
//! 3 numerically degenerate input, 4 unreadable file, 5 unknown column.

pub mod args;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use ginicor::datasets::IRIS_CSV;
use ginicor::dist_cor::DistanceReport;
use ginicor::inference::TestStatistic;
use ginicor::oracles::{exp_mixture_corrs, normal_location_corrs, normal_scale_gcor};
use ginicor::simulate::{
    coverage_experiment, power_experiment, timing_benchmark, CoverageOptions, ExperimentResult, PowerOptions,
    TimingOptions,
};
use ginicor::{
    dcov_plugin, dcov_unbiased, gcor, jackknife_ci, pearson_r2, permutation_test, power_at, read_csv_named,
    screen_features, screen_features_timed, Alpha, ColumnSelector, ErrorCategory, EstimatorKind, LabeledDataset,
};
use serde_json::{json, Value};

use args::{Bundled, Cli, Command, DataArgs, Flavor, OracleCommand, SimArgs, SimCommand};
use output::Report;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<ginicor::Error> for Failure {
    fn from(e: ginicor::Error) -> Self {
        let (code, tag) = match (&e, e.category()) {
            (ginicor::Error::Io(_), _) => (4, "io"),
            (ginicor::Error::UnknownColumn(_), _) => (5, "data"),
            (_, ErrorCategory::Usage) => (1, "usage"),
            (_, ErrorCategory::Data) => (2, "data"),
            (_, ErrorCategory::Numeric) => (3, "numeric"),
        };
        Failure {
            code,
            message: format!("error [{tag}]: {e}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: format!("error [usage]: {}", msg.into()),
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Parses `argv` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli, err) {
        Ok(report) => {
            let text = report.render(cli.format);
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text),
                None => out.write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error [io]: cannot write report: {e}");
                    4
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, err: &mut (dyn Write + Send)) -> Outcome<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| usage(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(&cli.command, err))
}

fn dispatch(command: &Command, err: &mut (dyn Write + Send)) -> Outcome<Report> {
    match command {
        Command::Gcor(a) => {
            let data = Loaded::from_args(&a.data)?;
            let (alpha, kind) = (alpha(a.alpha.alpha)?, kind(&a.kind.kind)?);
            let r = gcor(&data.ds, alpha, kind)?;
            let mut inputs = data.inputs();
            inputs["alpha"] = json!(alpha.value());
            inputs["kind"] = json!(kind);
            Ok(Report::new("gcor", inputs, r))
        }
        Command::Dcor(a) => {
            let data = Loaded::from_args(&a.data)?;
            let alpha = alpha(a.alpha.alpha)?;
            let r: DistanceReport = match a.flavor {
                Flavor::Unbiased => dcov_unbiased(&data.ds, alpha)?,
                Flavor::Plugin => dcov_plugin(&data.ds, alpha)?,
            };
            let mut inputs = data.inputs();
            inputs["alpha"] = json!(alpha.value());
            Ok(Report::new("dcor", inputs, r))
        }
        Command::R2(a) => {
            let data = Loaded::from_args(a)?;
            let r2 = pearson_r2(&data.ds)?;
            Ok(Report::new("r2", data.inputs(), json!({ "r2": r2 })))
        }
        Command::Ci(a) => {
            let data = Loaded::from_args(&a.data)?;
            let (alpha, kind) = (alpha(a.alpha.alpha)?, kind(&a.kind.kind)?);
            let ci = jackknife_ci(&data.ds, alpha, kind, a.level)?;
            let mut inputs = data.inputs();
            inputs["alpha"] = json!(alpha.value());
            inputs["kind"] = json!(kind);
            inputs["level"] = json!(a.level);
            Ok(Report::new("ci", inputs, ci))
        }
        Command::Test(a) => {
            let data = Loaded::from_args(&a.data)?;
            let alpha = alpha(a.alpha.alpha)?;
            let statistic: TestStatistic = a.statistic.parse()?;
            let seed = resolve_seed(a.seed, err);
            let t = permutation_test(&data.ds, alpha, statistic, a.m, a.gamma, seed)?;
            let mut result = json!({
                "statistic": statistic.to_string(),
                "observed": t.observed,
                "p_value": t.p_value,
                "critical_value": t.critical_value,
                "rejects": t.rejects(),
                "replicates": t.replicates,
            });
            if let Some(rho0) = a.power_at {
                let TestStatistic::Gcor(k) = statistic else {
                    return Err(usage("--power-at needs a Gini correlation statistic"));
                };
                let se = jackknife_ci(&data.ds, alpha, k, 0.95)?.se;
                result["power"] = json!({ "rho0": rho0, "se": se, "power": power_at(rho0, t.critical_value, se)? });
            }
            let mut inputs = data.inputs();
            inputs["alpha"] = json!(alpha.value());
            inputs["statistic"] = json!(statistic.to_string());
            inputs["m"] = json!(a.m);
            inputs["gamma"] = json!(a.gamma);
            inputs["seed"] = json!(seed);
            Ok(Report::new("test", inputs, result))
        }
        Command::Screen(a) => {
            let data = Loaded::from_args(&a.data)?;
            let alpha = alpha(a.alpha.alpha)?;
            let top = a.top.unwrap_or(data.ds.dim());
            let timed = alpha == Alpha::ONE;
            let ranked = if timed {
                screen_features_timed(&data.ds, top, alpha)?
            } else {
                screen_features(&data.ds, top, alpha)?
            };
            let rows: Vec<Value> = ranked
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let mut row = json!({
                        "rank": i + 1,
                        "feature": data.names[f.feature],
                        "index": f.feature,
                        "estimate": f.estimate,
                        "degenerate": f.degenerate,
                    });
                    if let Some(s) = f.seconds {
                        row["seconds"] = json!(s);
                    }
                    row
                })
                .collect();
            let mut inputs = data.inputs();
            inputs["alpha"] = json!(alpha.value());
            inputs["top"] = json!(top);
            Ok(Report::new("screen", inputs, rows))
        }
        Command::Oracle(o) => oracle(o),
        Command::Sim(s) => simulate(s, err),
    }
}

fn alpha(v: f64) -> Outcome<Alpha> {
    Ok(Alpha::new(v)?)
}

fn kind(s: &str) -> Outcome<EstimatorKind> {
    Ok(s.parse()?)
}

fn resolve_seed(seed: Option<u64>, err: &mut (dyn Write + Send)) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        let _ = writeln!(err, "seed: {s}");
        s
    })
}

struct Loaded {
    ds: LabeledDataset,
    names: Vec<String>,
    source: String,
    label: String,
}

impl Loaded {
    fn from_args(a: &DataArgs) -> Outcome<Loaded> {
        let features: Vec<ColumnSelector> = a.features.iter().map(|f| f.parse().expect("infallible")).collect();
        let (ds, names, source, label) = match (&a.data, a.dataset) {
            (_, Some(Bundled::Iris)) => {
                let label = a.label.clone().unwrap_or_else(|| "Species".into());
                let (ds, names) = read_csv_named(IRIS_CSV.as_bytes(), &label.parse().expect("infallible"), &features)?;
                (ds, names, "iris (bundled)".to_string(), label)
            }
            (Some(path), None) => {
                let label = a
                    .label
                    .clone()
                    .ok_or_else(|| usage("--label is required with --data"))?;
                let file = std::fs::File::open(path)
                    .map_err(|e| Failure::from(ginicor::Error::Io(e)))
                    .map_err(|f| Failure {
                        message: format!("{} ({})", f.message, path.display()),
                        ..f
                    })?;
                let (ds, names) = read_csv_named(file, &label.parse().expect("infallible"), &features)?;
                (ds, names, path.display().to_string(), label)
            }
            (None, None) => return Err(usage("one of --data or --dataset is required")),
        };
        Ok(Loaded {
            ds,
            names,
            source,
            label,
        })
    }

    fn inputs(&self) -> Value {
        json!({
            "data": self.source,
            "label": self.label,
            "features": self.names,
            "n": self.ds.n(),
            "d": self.ds.dim(),
            "levels": self.ds.levels(),
        })
    }
}

fn oracle(o: &OracleCommand) -> Outcome<Report> {
    Ok(match *o {
        OracleCommand::Exp { p, theta, beta } => Report::new(
            "oracle exp",
            json!({ "p": p, "theta": theta, "beta": beta }),
            exp_mixture_corrs(p, theta, beta)?,
        ),
        OracleCommand::NormalLocation { p, a } => Report::new(
            "oracle normal-location",
            json!({ "p": p, "a": a }),
            normal_location_corrs(p, a)?,
        ),
        OracleCommand::NormalScale { p, r } => Report::new(
            "oracle normal-scale",
            json!({ "p": p, "r": r }),
            json!({ "rho_g": normal_scale_gcor(p, r)? }),
        ),
    })
}

fn simulate(s: &SimCommand, err: &mut (dyn Write + Send)) -> Outcome<Report> {
    let (name, a): (&str, &SimArgs) = match s {
        SimCommand::Coverage(a) => ("sim coverage", a),
        SimCommand::Power(a) => ("sim power", a),
        SimCommand::Timing(a) => ("sim timing", a),
    };
    let (inputs, result) = match s {
        SimCommand::Coverage(_) => {
            let cfg: config::CoverageConfig = config::load(&a.config)?;
            let seed = resolve_seed(a.seed.or(cfg.seed), err);
            let opts = CoverageOptions {
                n: cfg.n,
                level: cfg.level,
                reps: cfg.reps,
                alpha: alpha(cfg.alpha)?,
                kind: cfg.kind,
                seed,
                include_dcor: cfg.include_dcor,
            };
            let spec = cfg.design.spec()?;
            let result = coverage_experiment(&spec, &opts)?;
            (json!({ "options": opts, "design": spec }), result)
        }
        SimCommand::Power(_) => {
            let cfg: config::PowerConfig = config::load(&a.config)?;
            let seed = resolve_seed(a.seed.or(cfg.seed), err);
            let opts = PowerOptions {
                n: cfg.n,
                permutations: cfg.permutations,
                gamma: cfg.gamma,
                reps: cfg.reps,
                seed,
            };
            let designs = cfg.designs()?;
            let stats = cfg.statistics()?;
            let result = power_experiment(&designs, &stats, &opts)?;
            let stat_names: Vec<String> = stats.iter().map(|s| s.to_string()).collect();
            (json!({ "options": opts, "statistics": stat_names }), result)
        }
        SimCommand::Timing(_) => {
            let cfg: config::TimingConfig = config::load(&a.config)?;
            let seed = resolve_seed(a.seed.or(cfg.seed), err);
            let opts = TimingOptions {
                d_values: cfg.d_values,
                n_values: cfg.n_values,
                reps: cfg.reps,
                seed,
                include_dcov: cfg.include_dcov,
            };
            let result = timing_benchmark(&opts)?;
            (json!({ "options": opts }), result)
        }
    };
    let mut inputs = inputs;
    inputs["config"] = json!(a.config.display().to_string());
    inputs["seed"] = json!(result.seed);
    Ok(experiment_report(name, inputs, &result))
}

fn experiment_report(name: &str, inputs: Value, r: &ExperimentResult) -> Report {
    let rows: Vec<Vec<Value>> = r
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| serde_json::to_value(c).expect("cell serializes"))
                .collect()
        })
        .collect();
    let objects: Vec<Value> = rows
        .iter()
        .map(|row| Value::Object(r.columns.iter().cloned().zip(row.iter().cloned()).collect()))
        .collect();
    let result = json!({ "design": r.design, "reps": r.reps, "columns": r.columns, "rows": objects });
    Report::new(name, inputs, result).with_table(r.columns.clone(), rows)
}
