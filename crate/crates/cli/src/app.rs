use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::Parser;
use walk_core::analysis::{detect_drops, first_drop_scan, transparency_grid, FirstDrop, DEFAULT_SCAN_STEPS, DROP_TOL};
use walk_core::models::line::SpinWindow;
use walk_core::models::tree::{TreeSolver, DEFAULT_DIMENSION_CAP};
use walk_core::{EntropySeries, ModelParams, ModelRegistry};

use crate::args::{parse_window, Cli, Command, CommonArgs, Format, ScanCommand, Solver};
use crate::config::ConfigFile;
use crate::csv::{format_significant, scan_csv, series_csv};
use crate::error::{CliError, EXIT_OK};
use crate::svg::{render_series_svg, render_svg, Curve, Plot};

pub const DIM_CAP_ENV: &str = "WALK_DIM_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Line,
    Tree,
    Lattice,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Line => "line",
            ModelKind::Tree => "tree",
            ModelKind::Lattice => "lattice",
        }
    }

    fn default_steps(self) -> usize {
        match self {
            ModelKind::Line => 60,
            ModelKind::Tree => 10,
            ModelKind::Lattice => 40,
        }
    }
}

/// Where data goes. `path == None` means summary only.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Format,
}

impl Output {
    fn to_stdout(&self) -> bool {
        self.path.as_deref() == Some(Path::new("-"))
    }
}

/// One model, one or more parameter points.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelKind,
    pub runs: Vec<ModelParams>,
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRequest {
    pub t_min: f64,
    pub t_max: f64,
    pub t_step: f64,
    pub steps: usize,
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Request {
    Run(RunConfig),
    Scan(ScanRequest),
}

#[derive(Debug)]
pub enum Parsed {
    /// `--help` or `--version` text, printed with exit status 0.
    Info(String),
    Request(Request),
}

fn one_line(e: &clap::Error) -> String {
    let text = e.render().to_string();
    let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments").trim();
    line.strip_prefix("error: ").unwrap_or(line).to_string()
}

pub fn parse_args<I, T>(argv: I) -> Result<Parsed, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(Parsed::Info(e.render().to_string()))
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            return Err(CliError::Usage("missing subcommand; try --help".into()))
        }
        Err(e) => return Err(CliError::Usage(one_line(&e))),
    };
    resolve(cli.command).map(Parsed::Request)
}

fn load_config(common: &CommonArgs) -> Result<ConfigFile, CliError> {
    common.config.as_deref().map(ConfigFile::load).transpose().map(Option::unwrap_or_default)
}

fn resolve_output(common: &CommonArgs, file: &ConfigFile) -> Result<Output, CliError> {
    let path = common.out.clone().or(file.get::<PathBuf>("out")?);
    let format = match common.format {
        Some(f) => f,
        None => match file.raw("format") {
            Some(v) => <Format as clap::ValueEnum>::from_str(v, true)
                .map_err(|_| CliError::Usage(format!("config key 'format': invalid value '{v}'")))?,
            None => match path.as_ref().and_then(|p| p.extension()) {
                Some(ext) if ext.eq_ignore_ascii_case("svg") => Format::Svg,
                _ => Format::Csv,
            },
        },
    };
    Ok(Output { path, format })
}

fn check_model_key(file: &ConfigFile, model: &str) -> Result<(), CliError> {
    match file.raw("model") {
        Some(m) if m != model => Err(CliError::Usage(format!("config file is for model '{m}', not '{model}'"))),
        _ => Ok(()),
    }
}

fn or_file<T: std::str::FromStr>(flag: Vec<T>, file: &ConfigFile, key: &str, default: T) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    if !flag.is_empty() {
        return Ok(flag);
    }
    let from_file = file.get_list(key)?;
    Ok(if from_file.is_empty() { vec![default] } else { from_file })
}

fn dimension_cap() -> Result<usize, CliError> {
    match std::env::var(DIM_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| CliError::Usage(format!("{DIM_CAP_ENV}: expected a positive integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_DIMENSION_CAP),
    }
}

const COMMON_KEYS: [&str; 4] = ["model", "steps", "out", "format"];

fn keys(extra: &[&'static str]) -> Vec<&'static str> {
    COMMON_KEYS.iter().chain(extra).copied().collect()
}

fn resolve(command: Command) -> Result<Request, CliError> {
    let base = ModelParams::default();
    match command {
        Command::Line(a) => {
            let file = load_config(&a.common)?;
            file.restrict(&keys(&["T", "spins"]), "line")?;
            check_model_key(&file, "line")?;
            let ts = or_file(a.transparency, &file, "T", base.transparency)?;
            let windows = if a.spins.is_empty() {
                match file.raw("spins") {
                    Some(v) => v.split(',').map(|s| parse_window(s.trim()).map_err(CliError::Usage)).collect::<Result<_, _>>()?,
                    None => vec![SpinWindow::All],
                }
            } else {
                a.spins
            };
            let steps = a.common.steps.or(file.get("steps")?).unwrap_or(ModelKind::Line.default_steps());
            let mut runs = Vec::new();
            for &transparency in &ts {
                for &window in &windows {
                    runs.push(ModelParams { transparency, window, steps, ..base.clone() });
                }
            }
            Ok(Request::Run(RunConfig { model: ModelKind::Line, runs, output: resolve_output(&a.common, &file)? }))
        }
        Command::Tree(a) => {
            let file = load_config(&a.common)?;
            file.restrict(&keys(&["T", "beta", "Z", "solver"]), "tree")?;
            check_model_key(&file, "tree")?;
            let ts = or_file(a.transparency, &file, "T", base.transparency)?;
            let betas = or_file(a.beta, &file, "beta", base.beta)?;
            let outputs = a.outputs.or(file.get("Z")?).unwrap_or(base.outputs);
            let solver = match a.solver {
                Some(s) => s,
                None => match file.raw("solver") {
                    Some(v) => <Solver as clap::ValueEnum>::from_str(v, true)
                        .map_err(|_| CliError::Usage(format!("config key 'solver': invalid value '{v}'")))?,
                    None => Solver::Hierarchical,
                },
            };
            let tree_solver = match solver {
                Solver::Hierarchical => TreeSolver::Hierarchical,
                Solver::Dense => TreeSolver::Dense { cap: dimension_cap()? },
            };
            let steps = a.common.steps.or(file.get("steps")?).unwrap_or(ModelKind::Tree.default_steps());
            let mut runs = Vec::new();
            for &transparency in &ts {
                for &beta in &betas {
                    runs.push(ModelParams { transparency, beta, outputs, steps, tree_solver, ..base.clone() });
                }
            }
            Ok(Request::Run(RunConfig { model: ModelKind::Tree, runs, output: resolve_output(&a.common, &file)? }))
        }
        Command::Lattice(a) => {
            let file = load_config(&a.common)?;
            file.restrict(&keys(&["T", "beta"]), "lattice")?;
            check_model_key(&file, "lattice")?;
            let ts = or_file(a.transparency, &file, "T", base.transparency)?;
            let betas = or_file(a.beta, &file, "beta", base.beta)?;
            let steps = a.common.steps.or(file.get("steps")?).unwrap_or(ModelKind::Lattice.default_steps());
            let mut runs = Vec::new();
            for &transparency in &ts {
                for &beta in &betas {
                    runs.push(ModelParams { transparency, beta, steps, ..base.clone() });
                }
            }
            Ok(Request::Run(RunConfig { model: ModelKind::Lattice, runs, output: resolve_output(&a.common, &file)? }))
        }
        Command::Scan(ScanCommand::FirstDrop(a)) => {
            let file = load_config(&a.common)?;
            file.restrict(&["steps", "out", "format", "T-min", "T-max", "T-step"], "scan first-drop")?;
            let t_min = a.t_min.or(file.get("T-min")?).unwrap_or(0.3);
            let t_max = a.t_max.or(file.get("T-max")?).unwrap_or(0.85);
            let t_step = a.t_step.or(file.get("T-step")?).unwrap_or(0.01);
            if !(0.0..=1.0).contains(&t_min) || !(0.0..=1.0).contains(&t_max) {
                return Err(CliError::Usage(format!("transparency range {t_min}..{t_max} outside [0, 1]")));
            }
            let steps = a.common.steps.or(file.get("steps")?).unwrap_or(DEFAULT_SCAN_STEPS);
            Ok(Request::Scan(ScanRequest { t_min, t_max, t_step, steps, output: resolve_output(&a.common, &file)? }))
        }
    }
}

fn summary_line(series: &EntropySeries) -> Result<String, CliError> {
    let last = series.last().unwrap_or(0.0);
    let drops = if series.len() >= 2 { detect_drops(&series.values, DROP_TOL)? } else { Vec::new() };
    let drops = if drops.is_empty() {
        "none".to_string()
    } else {
        drops.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    };
    let zero = if series.max_abs() < 1e-12 { " (identically zero)" } else { "" };
    Ok(format!("{}: final entropy {}{zero}; drops {drops}", series.meta, format_significant(last)))
}

fn emit(output: &Output, body: String, stdout: &mut dyn Write) -> Result<(), CliError> {
    let Some(path) = &output.path else { return Ok(()) };
    let io = |source| CliError::Io { path: path.clone(), source };
    if output.to_stdout() {
        stdout.write_all(body.as_bytes()).map_err(io)
    } else {
        std::fs::write(path, body).map_err(io)
    }
}

fn scan_plot(points: &[FirstDrop]) -> Plot {
    let curve = Curve {
        label: "first drop".into(),
        points: points.iter().filter_map(|p| p.first_drop.map(|d| (p.transparency, d as f64))).collect(),
    };
    Plot { x_label: "transparency T".into(), y_label: "first drop step".into(), curves: vec![curve] }
}

/// Runs a request. Summary lines go to `stdout`, or to `stderr` when the
/// data itself is written to stdout.
pub fn execute(request: &Request, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let (output, summaries, body) = match request {
        Request::Run(cfg) => {
            let registry = ModelRegistry::with_builtin();
            let series =
                cfg.runs.iter().map(|p| registry.run(cfg.model.name(), p)).collect::<Result<Vec<_>, _>>()?;
            let summaries = series.iter().map(summary_line).collect::<Result<Vec<_>, _>>()?;
            let body = match (cfg.output.format, cfg.output.path.is_some()) {
                (_, false) => String::new(),
                (Format::Csv, true) if series.len() != 1 => {
                    return Err(CliError::Usage("csv output holds one series; use --format svg for several".into()))
                }
                (Format::Csv, true) => series_csv(&series[0]),
                (Format::Svg, true) => render_series_svg(&series)?,
            };
            (&cfg.output, summaries, body)
        }
        Request::Scan(req) => {
            let grid = transparency_grid(req.t_min, req.t_max, req.t_step)?;
            let points = first_drop_scan(&grid, req.steps)?;
            let with_drop = points.iter().filter(|p| p.first_drop.is_some()).count();
            let summary = format!(
                "first-drop scan T={}..{} step {} steps={}: {} points, {} with a drop",
                req.t_min,
                req.t_max,
                req.t_step,
                req.steps,
                points.len(),
                with_drop
            );
            let body = match (req.output.format, req.output.path.is_some()) {
                (_, false) => String::new(),
                (Format::Csv, true) => scan_csv(&points),
                (Format::Svg, true) => render_svg(&scan_plot(&points))?,
            };
            (&req.output, vec![summary], body)
        }
    };
    emit(output, body, stdout)?;
    let sink: &mut dyn Write = if output.to_stdout() { stderr } else { stdout };
    for line in summaries {
        writeln!(sink, "{line}").map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
    }
    Ok(())
}

/// Full command-line entry point; returns the process exit status.
pub fn run_main<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_args(argv).and_then(|parsed| match parsed {
        Parsed::Info(text) => {
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
        Parsed::Request(req) => execute(&req, stdout, stderr),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "walk: {e}");
            e.exit_code()
        }
    }
}
