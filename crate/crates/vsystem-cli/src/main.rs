//! `vsys`: command-line front end for the V-system coherence library.
//!
//! Subcommands cover the full workflow: `steady` solves for the stationary
//! state and its derived ratios, `evolve` integrates the master equation and
//! emits the sampled trajectory, `sweep` evaluates observables over 1-D or
//! 2-D parameter grids, `transport` inspects the two-bath model and its
//! reduction to the one-bath system, and `figures` exports the standard
//! panels as CSV.
//!
//! Conventions shared by every subcommand:
//!
//! * all rates and splittings are in units of `gamma_a` (which defaults
//!   to 1), matching the library;
//! * parameters come from flags, falling back to an optional `key = value`
//!   config file (`--config`), falling back to built-in defaults;
//! * numeric output uses the shortest decimal that round-trips, so tables
//!   are byte-stable and diffable across runs and thread counts;
//! * exit codes: 0 success, 1 integration failure, 2 invalid parameters,
//!   3 singular generator (no unique steady state), 4 I/O failure.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vsystem::dynamics::{propagate, slowest_timescale, PropagateOptions, TimeSeries};
use vsystem::observables::relative_intensity_difference;
use vsystem::steadystate::{c_ratio, canonical_population, solve_linear, steady_state};
use vsystem::sweep::{
    figure_driver, run_sweep, run_sweep_serial, Axis, AxisParam, FigureId, Observable, Spacing,
    SweepGrid,
};
use vsystem::transport::{build_transport_generator, heat_flux, TwoBathParams};
use vsystem::{Basis, DensityState, Generator, VParams};

#[derive(Parser)]
#[command(
    name = "vsys",
    version,
    about = "Steady-state and transient coherences of an incoherently driven V-system",
    long_about = "Solve, propagate, sweep, and export the dynamics of a three-level \
                  V-system driven by polarized incoherent light, plus the equivalent \
                  two-bath transport model.  All rates are in units of gamma_a."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the stationary state and its derived ratios.
    Steady(SteadyArgs),
    /// Integrate the master equation and emit the sampled trajectory.
    Evolve(EvolveArgs),
    /// Evaluate observables over a 1-D or 2-D parameter grid.
    Sweep(SweepArgs),
    /// Inspect the two-bath transport model and its one-bath reduction.
    Transport(TransportArgs),
    /// Export the standard figure panels as CSV files.
    Figures(FiguresArgs),
}

/// Model parameters accepted by every subcommand.  Flags override the config
/// file, which overrides the defaults (`gamma_a = 1`, `gamma_b = gamma_a`,
/// `nbar = 1`, `delta = 1`, `gamma_rel = gamma_d = 0`).
#[derive(Args, Clone)]
struct ParamArgs {
    /// Mean thermal occupation of the drive at the transition frequency.
    #[arg(long)]
    nbar: Option<f64>,
    /// Excited-state splitting.
    #[arg(long)]
    delta: Option<f64>,
    /// Radiative decay rate of level a (the unit of every other rate).
    #[arg(long)]
    gamma_a: Option<f64>,
    /// Radiative decay rate of level b (defaults to gamma_a).
    #[arg(long)]
    gamma_b: Option<f64>,
    /// Nonradiative population relaxation rate.
    #[arg(long)]
    gamma_rel: Option<f64>,
    /// Pure dephasing rate of the excited-state coherence.
    #[arg(long)]
    gamma_d: Option<f64>,
    /// File of `key = value` lines supplying any of the parameter flags;
    /// explicit flags win.  Keys: nbar, delta, gamma_a, gamma_b, gamma_rel,
    /// gamma_d.  `#` starts a comment.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<VParams, CliError> {
        let file = match &self.config {
            Some(path) => load_config(path)?,
            None => HashMap::new(),
        };
        let pick = |flag: Option<f64>, key: &str| flag.or_else(|| file.get(key).copied());
        let gamma_a = pick(self.gamma_a, "gamma_a").unwrap_or(1.0);
        let gamma_b = pick(self.gamma_b, "gamma_b").unwrap_or(gamma_a);
        let nbar = pick(self.nbar, "nbar").unwrap_or(1.0);
        let delta = pick(self.delta, "delta").unwrap_or(1.0);
        let gamma_rel = pick(self.gamma_rel, "gamma_rel").unwrap_or(0.0);
        let gamma_d = pick(self.gamma_d, "gamma_d").unwrap_or(0.0);
        Ok(VParams::new(
            gamma_a, gamma_b, nbar, delta, gamma_rel, gamma_d,
        )?)
    }
}

#[derive(Args)]
struct SteadyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Integration horizon in units of 1/gamma_a; defaults to 40 times the
    /// slowest relaxation timescale (long enough to reach the steady state).
    #[arg(long)]
    t_end: Option<f64>,
    /// Number of uniformly spaced output samples.
    #[arg(long, default_value_t = 401)]
    n_points: usize,
    /// Relative integration tolerance.
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Absolute integration tolerance.
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Axis spec `param:min:max:spacing:count`, e.g. `nbar:1e-3:1e3:log:61`;
    /// repeat the flag for a 2-D grid (the last axis varies fastest).
    /// Params: nbar, delta, gamma_d, gamma_rel.  Spacing: linear or log.
    #[arg(long = "axis", value_name = "SPEC", required = true)]
    axes: Vec<String>,
    /// Comma-separated observables: rho_aa, re_ab, im_ab, c_ratio,
    /// rel_intensity_diff, flux (default: all of them).
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    observables: Vec<String>,
    /// Force the sequential evaluation path (results are byte-identical to
    /// the data-parallel default; RAYON_NUM_THREADS controls that pool).
    #[arg(long)]
    serial: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TransportArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Frequency of the lower excited level; the upper one sits at
    /// eps_b + delta and the qubit-qubit coupling is g = delta/2.
    #[arg(long, default_value_t = 100.0)]
    eps_b: f64,
    /// Print the maximum elementwise deviation between the two-bath
    /// generator and the reduced one-bath generator instead of the steady
    /// transport record.
    #[arg(long)]
    check_equivalence: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FiguresArgs {
    /// Panel id (fig2a..fig2d, fig3a..fig3c, fig4a..fig4c, fig5, fig6) or
    /// `all`.
    #[arg(long, default_value = "all")]
    id: String,
    /// Directory receiving the CSV panels (created if missing).
    #[arg(long, value_name = "DIR", default_value = "figures")]
    outdir: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// `key = value` lines (steady and transport records only).
    Text,
    /// Metadata line, header line, then rows.
    Csv,
    /// One JSON object.
    Json,
}

/// CLI-level error: wraps model errors and adds config/plumbing failures,
/// mapping every case onto the documented exit codes.
enum CliError {
    Model(vsystem::Error),
    Config(String),
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Model(vsystem::Error::SingularGenerator { .. }) => 3,
            CliError::Model(vsystem::Error::Io(_)) | CliError::Io(_) => 4,
            CliError::Model(vsystem::Error::StepFailure { .. }) => 1,
            CliError::Model(_) | CliError::Config(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<vsystem::Error> for CliError {
    fn from(e: vsystem::Error) -> Self {
        CliError::Model(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vsys: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Steady(args) => cmd_steady(args),
        Command::Evolve(args) => cmd_evolve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Transport(args) => cmd_transport(args),
        Command::Figures(args) => cmd_figures(args),
    }
}

/// Loads a `key = value` parameter file.  An unreadable file is an I/O
/// failure; malformed content or unknown keys are parameter errors.
fn load_config(path: &Path) -> Result<HashMap<String, f64>, CliError> {
    const KEYS: [&str; 6] = [
        "nbar",
        "delta",
        "gamma_a",
        "gamma_b",
        "gamma_rel",
        "gamma_d",
    ];
    let text = fs::read_to_string(path).map_err(|e| io_at(path, e))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at =
            |msg: String| CliError::Config(format!("{}:{}: {msg}", path.display(), lineno + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| at("expected `key = value`".into()))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(at(format!(
                "unknown parameter `{key}` (expected one of {KEYS:?})"
            )));
        }
        let value: f64 = value.trim().parse().map_err(|_| {
            at(format!(
                "`{key}` needs a numeric value, got `{}`",
                value.trim()
            ))
        })?;
        map.insert(key.to_string(), value);
    }
    Ok(map)
}

/// Tags an I/O error with the path it came from.
fn io_at(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(std::io::Error::new(
        e.kind(),
        format!("{}: {e}", path.display()),
    ))
}

/// Writes `text` to the requested file, or stdout when no file was given.
fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| io_at(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ParamsRecord {
    gamma_a: f64,
    gamma_b: f64,
    nbar: f64,
    delta: f64,
    gamma_rel: f64,
    gamma_d: f64,
}

impl From<&VParams> for ParamsRecord {
    fn from(p: &VParams) -> Self {
        ParamsRecord {
            gamma_a: p.gamma_a(),
            gamma_b: p.gamma_b(),
            nbar: p.nbar(),
            delta: p.delta(),
            gamma_rel: p.gamma_rel(),
            gamma_d: p.gamma_d(),
        }
    }
}

impl ParamsRecord {
    /// `key=value` pairs for CSV metadata lines.
    fn meta(&self) -> String {
        format!(
            "gamma_a={},gamma_b={},nbar={},delta={},gamma_rel={},gamma_d={}",
            self.gamma_a, self.gamma_b, self.nbar, self.delta, self.gamma_rel, self.gamma_d
        )
    }

    /// `key = value` lines for the text format.
    fn text(&self) -> String {
        format!(
            "gamma_a = {}\ngamma_b = {}\nnbar = {}\ndelta = {}\ngamma_rel = {}\ngamma_d = {}\n",
            self.gamma_a, self.gamma_b, self.nbar, self.delta, self.gamma_rel, self.gamma_d
        )
    }
}

#[derive(Serialize)]
struct SteadyRecord {
    params: ParamsRecord,
    rho_aa: f64,
    rho_bb: f64,
    re_ab: f64,
    im_ab: f64,
    rho_gg: f64,
    c_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    canonical_rho_aa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_intensity_diff: Option<f64>,
    method: String,
    residual: f64,
}

fn cmd_steady(args: SteadyArgs) -> Result<(), CliError> {
    let params = args.params.resolve()?;
    let ss = steady_state(&params)?;
    // Exit 0 promises a physical record.
    ss.density_state().check(DensityState::DEFAULT_TOL)?;
    let symmetric = params.is_symmetric();
    let record = SteadyRecord {
        params: ParamsRecord::from(&params),
        rho_aa: ss.rho_aa,
        rho_bb: ss.rho_bb,
        re_ab: ss.re_ab,
        im_ab: ss.im_ab,
        rho_gg: ss.rho_gg,
        c_ratio: if symmetric {
            c_ratio(&params)?
        } else {
            ss.coherence_ratio()
        },
        canonical_rho_aa: if symmetric {
            Some(canonical_population(&params)?)
        } else {
            None
        },
        rel_intensity_diff: if symmetric {
            Some(relative_intensity_difference(&params)?)
        } else {
            None
        },
        method: ss.method.to_string(),
        residual: ss.residual,
    };

    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let text =
        match args.format {
            Format::Text => {
                let mut s = record.params.text();
                let _ =
                    write!(
                s,
                "rho_aa = {}\nrho_bb = {}\nre_ab = {}\nim_ab = {}\nrho_gg = {}\nc_ratio = {}\n",
                record.rho_aa, record.rho_bb, record.re_ab, record.im_ab, record.rho_gg,
                record.c_ratio
            );
                if let Some(v) = record.canonical_rho_aa {
                    let _ = writeln!(s, "canonical_rho_aa = {v}");
                }
                if let Some(v) = record.rel_intensity_diff {
                    let _ = writeln!(s, "rel_intensity_diff = {v}");
                }
                let _ = writeln!(
                    s,
                    "method = {}\nresidual = {}",
                    record.method, record.residual
                );
                s
            }
            Format::Csv => format!(
                "# {}\n\
             rho_aa,rho_bb,re_ab,im_ab,rho_gg,c_ratio,canonical_rho_aa,rel_intensity_diff,\
             method,residual\n\
             {},{},{},{},{},{},{},{},{},{}\n",
                record.params.meta(),
                record.rho_aa,
                record.rho_bb,
                record.re_ab,
                record.im_ab,
                record.rho_gg,
                record.c_ratio,
                opt(record.canonical_rho_aa),
                opt(record.rel_intensity_diff),
                record.method,
                record.residual,
            ),
            Format::Json => to_json(&record)?,
        };
    emit(&text, args.output.as_deref())
}

fn basis_name(basis: Basis) -> &'static str {
    match basis {
        Basis::SymmetricReduced => "symmetric-reduced",
        Basis::GeneralTraceEliminated => "general-trace-eliminated",
        Basis::CoherenceFree => "coherence-free",
    }
}

#[derive(Serialize)]
struct Sample {
    t: f64,
    rho_gg: f64,
    rho_aa: f64,
    rho_bb: f64,
    re_ab: f64,
    im_ab: f64,
}

#[derive(Serialize)]
struct EvolveRecord {
    params: ParamsRecord,
    basis: &'static str,
    t_end: f64,
    n_points: usize,
    rel_tol: f64,
    abs_tol: f64,
    accepted_steps: u64,
    rejected_steps: u64,
    final_residual: f64,
    samples: Vec<Sample>,
}

fn cmd_evolve(args: EvolveArgs) -> Result<(), CliError> {
    if args.format == Format::Text {
        return Err(CliError::Config(
            "trajectories are tabular; use --format csv or json".into(),
        ));
    }
    let params = args.params.resolve()?;
    let gen = if params.is_symmetric() {
        Generator::symmetric(&params)?
    } else {
        Generator::general(&params)?
    };
    let t_end = match args.t_end {
        Some(t) => t,
        None => 40.0 * slowest_timescale(&gen),
    };
    let opts = PropagateOptions {
        rel_tol: args.rel_tol,
        abs_tol: args.abs_tol,
        n_points: args.n_points,
    };
    let series = propagate(&gen, &DensityState::ground(), t_end, &opts)?;
    let record = evolve_record(&params, &series, t_end, &opts);

    let text = match args.format {
        Format::Csv => {
            let mut s = format!(
                "# {},basis={},t_end={},n_points={},rel_tol={},abs_tol={}\n\
                 t,rho_gg,rho_aa,rho_bb,re_ab,im_ab\n",
                record.params.meta(),
                record.basis,
                record.t_end,
                record.n_points,
                record.rel_tol,
                record.abs_tol
            );
            for p in &record.samples {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    p.t, p.rho_gg, p.rho_aa, p.rho_bb, p.re_ab, p.im_ab
                );
            }
            s
        }
        Format::Json => to_json(&record)?,
        Format::Text => unreachable!("rejected above"),
    };
    emit(&text, args.output.as_deref())
}

fn evolve_record(
    params: &VParams,
    series: &TimeSeries,
    t_end: f64,
    opts: &PropagateOptions,
) -> EvolveRecord {
    let samples = series
        .times()
        .iter()
        .zip(series.states())
        .map(|(&t, st)| Sample {
            t,
            rho_gg: st.rho_gg,
            rho_aa: st.rho_aa,
            rho_bb: st.rho_bb,
            re_ab: st.re_ab,
            im_ab: st.im_ab,
        })
        .collect();
    EvolveRecord {
        params: ParamsRecord::from(params),
        basis: basis_name(series.generator().basis()),
        t_end,
        n_points: opts.n_points,
        rel_tol: opts.rel_tol,
        abs_tol: opts.abs_tol,
        accepted_steps: series.accepted_steps(),
        rejected_steps: series.rejected_steps(),
        final_residual: series.final_residual(),
        samples,
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.format == Format::Text {
        return Err(CliError::Config(
            "grids are tabular; use --format csv or json".into(),
        ));
    }
    let params = args.params.resolve()?;
    if args.axes.len() > 2 {
        return Err(CliError::Config(format!(
            "at most 2 axes are supported, got {}",
            args.axes.len()
        )));
    }
    let axes: Vec<Axis> = args
        .axes
        .iter()
        .map(|s| parse_axis(s))
        .collect::<Result<_, _>>()?;
    let observables: Vec<Observable> = if args.observables.is_empty() {
        Observable::all().to_vec()
    } else {
        args.observables
            .iter()
            .map(|name| Observable::from_str(name.trim()).map_err(CliError::Model))
            .collect::<Result<_, _>>()?
    };
    let grid = if args.serial {
        run_sweep_serial(&params, &axes, &observables)?
    } else {
        run_sweep(&params, &axes, &observables)?
    };
    let text = match args.format {
        Format::Csv => grid.to_csv(),
        Format::Json => to_json(&sweep_record(&grid))?,
        Format::Text => unreachable!("rejected above"),
    };
    emit(&text, args.output.as_deref())
}

/// Parses an axis spec of the form `param:min:max:spacing:count`.
fn parse_axis(spec: &str) -> Result<Axis, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 5 {
        return Err(CliError::Config(format!(
            "axis spec `{spec}` must be `param:min:max:spacing:count`"
        )));
    }
    let bad = |what: &str| CliError::Config(format!("axis spec `{spec}`: invalid {what}"));
    let param = AxisParam::from_str(parts[0]).map_err(CliError::Model)?;
    let min: f64 = parts[1].parse().map_err(|_| bad("min"))?;
    let max: f64 = parts[2].parse().map_err(|_| bad("max"))?;
    let spacing = Spacing::from_str(parts[3]).map_err(CliError::Model)?;
    let count: usize = parts[4].parse().map_err(|_| bad("count"))?;
    Ok(Axis::new(param, min, max, spacing, count)?)
}

#[derive(Serialize)]
struct AxisRecord {
    param: &'static str,
    values: Vec<f64>,
}

#[derive(Serialize)]
struct SweepRecord {
    params: ParamsRecord,
    axes: Vec<AxisRecord>,
    observables: Vec<&'static str>,
    /// Row-major over the grid (last axis fastest), one inner array of
    /// observable values per grid point.
    values: Vec<Vec<f64>>,
}

fn sweep_record(grid: &SweepGrid) -> SweepRecord {
    let n_obs = grid.observables().len();
    SweepRecord {
        params: ParamsRecord::from(grid.base()),
        axes: grid
            .axes()
            .iter()
            .map(|a| AxisRecord {
                param: a.param().name(),
                values: a.values(),
            })
            .collect(),
        observables: grid.observables().iter().map(|o| o.name()).collect(),
        values: (0..grid.n_points())
            .map(|p| (0..n_obs).map(|o| grid.value_at(p, o)).collect())
            .collect(),
    }
}

#[derive(Serialize)]
struct TransportRecord {
    eps_a: f64,
    eps_b: f64,
    g: f64,
    nbar_l: f64,
    nbar_r: f64,
    gamma_l_aa: f64,
    gamma_l_bb: f64,
    gamma_r_aa: f64,
    gamma_r_bb: f64,
    f_l: f64,
    f_r: f64,
    rho_aa: f64,
    rho_bb: f64,
    re_ab: f64,
    im_ab: f64,
    rho_gg: f64,
    heat_flux: f64,
    residual: f64,
}

#[derive(Serialize)]
struct EquivalenceRecord {
    params: ParamsRecord,
    eps_b: f64,
    g: f64,
    max_generator_deviation: f64,
}

fn cmd_transport(args: TransportArgs) -> Result<(), CliError> {
    let params = args.params.resolve()?;
    let tp = TwoBathParams::from_vsystem(&params, args.eps_b)?;
    let tg = build_transport_generator(&tp)?;

    if args.check_equivalence {
        let vg = Generator::general(&params)?;
        let mut dev = 0.0f64;
        for (a, b) in tg.a_matrix().iter().zip(vg.a_matrix().iter()) {
            dev = dev.max((a - b).abs());
        }
        for (a, b) in tg.drive().iter().zip(vg.drive().iter()) {
            dev = dev.max((a - b).abs());
        }
        let record = EquivalenceRecord {
            params: ParamsRecord::from(&params),
            eps_b: tp.eps_b,
            g: tp.g,
            max_generator_deviation: dev,
        };
        let text = match args.format {
            Format::Text => format!(
                "{}eps_b = {}\ng = {}\nmax_generator_deviation = {}\n",
                record.params.text(),
                record.eps_b,
                record.g,
                record.max_generator_deviation
            ),
            Format::Csv => format!(
                "# {}\neps_b,g,max_generator_deviation\n{},{},{}\n",
                record.params.meta(),
                record.eps_b,
                record.g,
                record.max_generator_deviation
            ),
            Format::Json => to_json(&record)?,
        };
        return emit(&text, args.output.as_deref());
    }

    let ss = solve_linear(&tg)?;
    ss.density_state().check(DensityState::DEFAULT_TOL)?;
    let record = TransportRecord {
        eps_a: tp.eps_a,
        eps_b: tp.eps_b,
        g: tp.g,
        nbar_l: tp.nbar_l,
        nbar_r: tp.nbar_r,
        gamma_l_aa: tp.gamma_l_aa,
        gamma_l_bb: tp.gamma_l_bb,
        gamma_r_aa: tp.gamma_r_aa,
        gamma_r_bb: tp.gamma_r_bb,
        f_l: tp.f_l,
        f_r: tp.f_r,
        rho_aa: ss.rho_aa,
        rho_bb: ss.rho_bb,
        re_ab: ss.re_ab,
        im_ab: ss.im_ab,
        rho_gg: ss.rho_gg,
        heat_flux: heat_flux(&ss.density_state(), tp.g),
        residual: ss.residual,
    };
    let text = match args.format {
        Format::Text => format!(
            "eps_a = {}\neps_b = {}\ng = {}\nnbar_l = {}\nnbar_r = {}\n\
             gamma_l_aa = {}\ngamma_l_bb = {}\ngamma_r_aa = {}\ngamma_r_bb = {}\n\
             f_l = {}\nf_r = {}\n\
             rho_aa = {}\nrho_bb = {}\nre_ab = {}\nim_ab = {}\nrho_gg = {}\n\
             heat_flux = {}\nresidual = {}\n",
            record.eps_a,
            record.eps_b,
            record.g,
            record.nbar_l,
            record.nbar_r,
            record.gamma_l_aa,
            record.gamma_l_bb,
            record.gamma_r_aa,
            record.gamma_r_bb,
            record.f_l,
            record.f_r,
            record.rho_aa,
            record.rho_bb,
            record.re_ab,
            record.im_ab,
            record.rho_gg,
            record.heat_flux,
            record.residual,
        ),
        Format::Csv => format!(
            "# eps_a={},eps_b={},g={},nbar_l={},nbar_r={},gamma_l_aa={},gamma_l_bb={},\
             gamma_r_aa={},gamma_r_bb={},f_l={},f_r={}\n\
             rho_aa,rho_bb,re_ab,im_ab,rho_gg,heat_flux,residual\n\
             {},{},{},{},{},{},{}\n",
            record.eps_a,
            record.eps_b,
            record.g,
            record.nbar_l,
            record.nbar_r,
            record.gamma_l_aa,
            record.gamma_l_bb,
            record.gamma_r_aa,
            record.gamma_r_bb,
            record.f_l,
            record.f_r,
            record.rho_aa,
            record.rho_bb,
            record.re_ab,
            record.im_ab,
            record.rho_gg,
            record.heat_flux,
            record.residual,
        ),
        Format::Json => to_json(&record)?,
    };
    emit(&text, args.output.as_deref())
}

fn cmd_figures(args: FiguresArgs) -> Result<(), CliError> {
    let ids: Vec<FigureId> = if args.id == "all" {
        FigureId::all().to_vec()
    } else {
        vec![FigureId::from_str(&args.id)?]
    };
    for id in ids {
        for path in figure_driver(id, &args.outdir)? {
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(record: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(record)
        .map_err(|e| CliError::Config(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}
