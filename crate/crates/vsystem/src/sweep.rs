//! Parameter-grid evaluation and canned publication-style tables.
//!
//! A sweep takes a base parameter set, a list of axes (each one parameter
//! swept over a linear or logarithmic grid), and a list of observables, and
//! evaluates every point of the cartesian product through the steady-state
//! machinery: the exact closed form where the decay rates are symmetric, the
//! 4-dim linear solve otherwise.  Grid points are independent, so with the
//! `parallel` feature they are evaluated by rayon; assembly is always in
//! deterministic row-major order (last axis fastest) and the serial and
//! parallel paths produce byte-identical tables.
//!
//! [`figure_driver`] bakes in the parameter sets behind the standard result
//! panels: transient population/coherence traces with their stationary
//! values, coherence scans over occupancy and splitting, dephasing scans
//! showing the optimal-decoherence ridge, coherence-to-population ratios,
//! and transient fluorescence-ratio traces against the interference-free
//! reference.  Each panel lands in one CSV file whose first line records the
//! generating parameters.
//!
//! CSV format: line 1 is `# key=value,...` metadata, line 2 the column
//! headers, then one row per grid point or time sample.  Numbers print in
//! shortest round-trip form so tables are stable regression anchors.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dynamics::{propagate, PropagateOptions};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::observables::{
    coherence_free_reference, fluorescence_ratio, relative_intensity_difference,
};
use crate::params::{DensityState, VParams};
use crate::steadystate::{c_ratio, closed_form, solve_linear, SteadyState};
use crate::transport::heat_flux;

/// Parameter a sweep axis runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisParam {
    Nbar,
    Delta,
    GammaD,
    GammaRel,
}

impl AxisParam {
    pub fn name(&self) -> &'static str {
        match self {
            AxisParam::Nbar => "nbar",
            AxisParam::Delta => "delta",
            AxisParam::GammaD => "gamma_d",
            AxisParam::GammaRel => "gamma_rel",
        }
    }

    fn apply(&self, base: &VParams, value: f64) -> Result<VParams> {
        match self {
            AxisParam::Nbar => base.with_nbar(value),
            AxisParam::Delta => base.with_delta(value),
            AxisParam::GammaD => base.with_gamma_d(value),
            AxisParam::GammaRel => base.with_gamma_rel(value),
        }
    }
}

impl FromStr for AxisParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nbar" => Ok(AxisParam::Nbar),
            "delta" => Ok(AxisParam::Delta),
            "gamma_d" => Ok(AxisParam::GammaD),
            "gamma_rel" => Ok(AxisParam::GammaRel),
            other => Err(Error::UnknownAxis {
                name: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for AxisParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Node spacing of an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl fmt::Display for Spacing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        })
    }
}

impl FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(Error::ConfigMismatch {
                reason: format!("axis spacing must be `linear` or `log`, got `{other}`"),
            }),
        }
    }
}

/// One sweep dimension.  A single-point axis pins the parameter at `min`,
/// reproducing a plain steady-state call.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    param: AxisParam,
    min: f64,
    max: f64,
    spacing: Spacing,
    count: usize,
}

impl Axis {
    pub fn new(
        param: AxisParam,
        min: f64,
        max: f64,
        spacing: Spacing,
        count: usize,
    ) -> Result<Self> {
        if count == 0 {
            return Err(Error::ConfigMismatch {
                reason: format!("axis `{param}` needs at least one point"),
            });
        }
        if !min.is_finite() || !max.is_finite() || min > max {
            return Err(Error::ConfigMismatch {
                reason: format!(
                    "axis `{param}` needs finite bounds with min <= max, got [{min}, {max}]"
                ),
            });
        }
        if spacing == Spacing::Log && min <= 0.0 {
            return Err(Error::ConfigMismatch {
                reason: format!("log axis `{param}` needs positive bounds, got min = {min}"),
            });
        }
        Ok(Axis {
            param,
            min,
            max,
            spacing,
            count,
        })
    }

    /// Occupancy over the standard plotted range, `[1e-3, 1e3]` log-61.
    pub fn default_nbar() -> Self {
        Axis::new(AxisParam::Nbar, 1e-3, 1e3, Spacing::Log, 61).expect("valid axis")
    }

    /// Splitting over the standard plotted range, `[1e-2, 1e2]` log-61.
    pub fn default_delta() -> Self {
        Axis::new(AxisParam::Delta, 1e-2, 1e2, Spacing::Log, 61).expect("valid axis")
    }

    /// Dephasing over the standard plotted range, `[0, 20]` linear-81.
    pub fn default_gamma_d() -> Self {
        Axis::new(AxisParam::GammaD, 0.0, 20.0, Spacing::Linear, 81).expect("valid axis")
    }

    pub fn param(&self) -> AxisParam {
        self.param
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Grid nodes, endpoints exact.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    self.min
                } else if i == self.count - 1 {
                    self.max
                } else {
                    match self.spacing {
                        Spacing::Linear => self.min + (self.max - self.min) * i as f64 / n,
                        Spacing::Log => {
                            let (lo, hi) = (self.min.log10(), self.max.log10());
                            10f64.powf(lo + (hi - lo) * i as f64 / n)
                        }
                    }
                }
            })
            .collect()
    }
}

/// Quantity recorded at every grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    RhoAa,
    ReAb,
    ImAb,
    CRatio,
    RelIntensityDiff,
    Flux,
}

impl Observable {
    pub fn name(&self) -> &'static str {
        match self {
            Observable::RhoAa => "rho_aa",
            Observable::ReAb => "re_ab",
            Observable::ImAb => "im_ab",
            Observable::CRatio => "c_ratio",
            Observable::RelIntensityDiff => "rel_intensity_diff",
            Observable::Flux => "flux",
        }
    }

    /// All registered observables in canonical order.
    pub fn all() -> [Observable; 6] {
        [
            Observable::RhoAa,
            Observable::ReAb,
            Observable::ImAb,
            Observable::CRatio,
            Observable::RelIntensityDiff,
            Observable::Flux,
        ]
    }

    fn evaluate(&self, params: &VParams, ss: &SteadyState) -> Result<f64> {
        Ok(match self {
            Observable::RhoAa => ss.rho_aa,
            Observable::ReAb => ss.re_ab,
            Observable::ImAb => ss.im_ab,
            // The rational form is exact and finite even at zero pump; for
            // asymmetric decay the state ratio is the only definition.
            Observable::CRatio => {
                if params.is_symmetric() {
                    c_ratio(params)?
                } else {
                    ss.coherence_ratio()
                }
            }
            Observable::RelIntensityDiff => relative_intensity_difference(params)?,
            // Transport flux of the equivalent two-qubit system, hopping
            // g = Δ/2: J = 4g·Im ρ_ab = 2Δ·Im ρ_ab.
            Observable::Flux => heat_flux(&ss.density_state(), 0.5 * params.delta()),
        })
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho_aa" => Ok(Observable::RhoAa),
            "re_ab" => Ok(Observable::ReAb),
            "im_ab" => Ok(Observable::ImAb),
            "c_ratio" => Ok(Observable::CRatio),
            "rel_intensity_diff" => Ok(Observable::RelIntensityDiff),
            "flux" => Ok(Observable::Flux),
            other => Err(Error::UnknownObservable {
                name: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluated sweep: base parameters, axes, observables, and the value table
/// in row-major order over the axis product (last axis fastest), observables
/// contiguous per point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    base: VParams,
    axes: Vec<Axis>,
    observables: Vec<Observable>,
    axis_values: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl SweepGrid {
    pub fn base(&self) -> &VParams {
        &self.base
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn observables(&self) -> &[Observable] {
        &self.observables
    }

    /// Number of grid points (product of axis counts).
    pub fn n_points(&self) -> usize {
        self.axes.iter().map(Axis::count).product()
    }

    /// Flat value table, length `n_points * observables.len()`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value of one observable at one flat point index.
    pub fn value_at(&self, point: usize, observable: usize) -> f64 {
        self.values[point * self.observables.len() + observable]
    }

    /// Axis node values of the flat point index, last axis fastest.
    pub fn point_coords(&self, point: usize) -> Vec<f64> {
        let mut rem = point;
        let mut coords = vec![0.0; self.axes.len()];
        for i in (0..self.axes.len()).rev() {
            let n = self.axes[i].count();
            coords[i] = self.axis_values[i][rem % n];
            rem /= n;
        }
        coords
    }

    /// Renders the grid as CSV (metadata line, header line, one row per
    /// point with axis coordinates followed by observable values).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", meta_pairs(&self.base)));
        let headers: Vec<&str> = self
            .axes
            .iter()
            .map(|a| a.param().name())
            .chain(self.observables.iter().map(Observable::name))
            .collect();
        out.push_str(&headers.join(","));
        out.push('\n');
        let n_obs = self.observables.len();
        for point in 0..self.n_points() {
            let coords = self.point_coords(point);
            let mut cells: Vec<String> = coords.iter().map(|v| format!("{v}")).collect();
            for j in 0..n_obs {
                cells.push(format!("{}", self.value_at(point, j)));
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut file = fs::File::create(path)?;
        file.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}

fn meta_pairs(params: &VParams) -> String {
    format!(
        "gamma_a={},gamma_b={},nbar={},delta={},gamma_rel={},gamma_d={}",
        params.gamma_a(),
        params.gamma_b(),
        params.nbar(),
        params.delta(),
        params.gamma_rel(),
        params.gamma_d()
    )
}

/// Steady state and observables at one fully specified parameter point.
fn evaluate_point(params: &VParams, observables: &[Observable]) -> Result<Vec<f64>> {
    let ss = if params.is_symmetric() {
        closed_form(params)?
    } else {
        solve_linear(&Generator::general(params)?)?
    };
    observables
        .iter()
        .map(|o| o.evaluate(params, &ss))
        .collect()
}

fn point_params(
    base: &VParams,
    axes: &[Axis],
    axis_values: &[Vec<f64>],
    point: usize,
) -> Result<VParams> {
    let mut rem = point;
    let mut params = base.clone();
    for i in (0..axes.len()).rev() {
        let n = axes[i].count();
        params = axes[i].param().apply(&params, axis_values[i][rem % n])?;
        rem /= n;
    }
    Ok(params)
}

fn assemble(
    base: &VParams,
    axes: &[Axis],
    observables: &[Observable],
    rows: Vec<Vec<f64>>,
) -> SweepGrid {
    SweepGrid {
        base: base.clone(),
        axes: axes.to_vec(),
        observables: observables.to_vec(),
        axis_values: axes.iter().map(Axis::values).collect(),
        values: rows.into_iter().flatten().collect(),
    }
}

fn check_sweep_inputs(axes: &[Axis], observables: &[Observable]) -> Result<()> {
    if axes.is_empty() {
        return Err(Error::ConfigMismatch {
            reason: "sweep needs at least one axis".into(),
        });
    }
    if observables.is_empty() {
        return Err(Error::ConfigMismatch {
            reason: "sweep needs at least one observable".into(),
        });
    }
    Ok(())
}

/// Evaluates the full grid sequentially.  Always available; the reference
/// implementation the parallel path must agree with byte for byte.
pub fn run_sweep_serial(
    base: &VParams,
    axes: &[Axis],
    observables: &[Observable],
) -> Result<SweepGrid> {
    check_sweep_inputs(axes, observables)?;
    let base = base.clone().validate()?;
    let axis_values: Vec<Vec<f64>> = axes.iter().map(Axis::values).collect();
    let total: usize = axes.iter().map(Axis::count).product();
    let rows = (0..total)
        .map(|point| {
            let params = point_params(&base, axes, &axis_values, point)?;
            evaluate_point(&params, observables)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(&base, axes, observables, rows))
}

/// Evaluates the full grid, in parallel when the `parallel` feature is
/// enabled.  Points are pure and independent; assembly order is by flat
/// index, so the output is identical to [`run_sweep_serial`].
pub fn run_sweep(base: &VParams, axes: &[Axis], observables: &[Observable]) -> Result<SweepGrid> {
    #[cfg(feature = "parallel")]
    {
        check_sweep_inputs(axes, observables)?;
        let base = base.clone().validate()?;
        let axis_values: Vec<Vec<f64>> = axes.iter().map(Axis::values).collect();
        let total: usize = axes.iter().map(Axis::count).product();
        let rows = (0..total)
            .into_par_iter()
            .map(|point| {
                let params = point_params(&base, axes, &axis_values, point)?;
                evaluate_point(&params, observables)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(assemble(&base, axes, observables, rows))
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sweep_serial(base, axes, observables)
    }
}

/// Identifiers of the canned result panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig5,
    Fig6,
}

impl FigureId {
    pub fn all() -> [FigureId; 12] {
        [
            FigureId::Fig2a,
            FigureId::Fig2b,
            FigureId::Fig2c,
            FigureId::Fig2d,
            FigureId::Fig3a,
            FigureId::Fig3b,
            FigureId::Fig3c,
            FigureId::Fig4a,
            FigureId::Fig4b,
            FigureId::Fig4c,
            FigureId::Fig5,
            FigureId::Fig6,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig2c => "fig2c",
            FigureId::Fig2d => "fig2d",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig3c => "fig3c",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig4c => "fig4c",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::all()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownFigure {
                name: s.to_string(),
            })
    }
}

/// Transient panel: trajectory columns plus constant stationary columns.
fn write_transient_panel(
    path: &Path,
    nbar: f64,
    delta: f64,
    t_end: f64,
    n_points: usize,
) -> Result<()> {
    let params = VParams::symmetric(nbar, delta)?;
    let gen = Generator::symmetric(&params)?;
    let opts = PropagateOptions {
        n_points,
        ..Default::default()
    };
    let series = propagate(&gen, &DensityState::ground(), t_end, &opts)?;
    let ss = closed_form(&params)?;
    let mut out = String::new();
    out.push_str(&format!(
        "# {},t_end={t_end},n_points={n_points}\n",
        meta_pairs(&params)
    ));
    out.push_str("t,rho_aa,re_ab,im_ab,ss_rho_aa,ss_re_ab,ss_im_ab\n");
    for (t, s) in series.times().iter().zip(series.states()) {
        out.push_str(&format!(
            "{t},{},{},{},{},{},{}\n",
            s.rho_aa, s.re_ab, s.im_ab, ss.rho_aa, ss.re_ab, ss.im_ab
        ));
    }
    fs::File::create(path)?.write_all(out.as_bytes())?;
    Ok(())
}

/// Fluorescence-ratio panel: polarized over interference-free reference.
fn write_ratio_panel(
    path: &Path,
    nbar: f64,
    delta: f64,
    t_end: f64,
    n_points: usize,
) -> Result<()> {
    let params = VParams::symmetric(nbar, delta)?;
    let gen = Generator::symmetric(&params)?;
    let opts = PropagateOptions {
        n_points,
        ..Default::default()
    };
    let ground = DensityState::ground();
    let polarized = propagate(&gen, &ground, t_end, &opts)?;
    let reference = coherence_free_reference(&params, &ground, t_end, &opts, false)?;
    let ratio = fluorescence_ratio(&polarized, &reference)?;
    let ss_ratio = 1.0 - closed_form(&params)?.re_ab;
    let mut out = String::new();
    out.push_str(&format!(
        "# {},t_end={t_end},n_points={n_points}\n",
        meta_pairs(&params)
    ));
    out.push_str("t,intensity_ratio,ss_intensity_ratio\n");
    for (t, r) in polarized.times().iter().zip(&ratio) {
        out.push_str(&format!("{t},{r},{ss_ratio}\n"));
    }
    fs::File::create(path)?.write_all(out.as_bytes())?;
    Ok(())
}

fn sweep_panel(
    path: &Path,
    base: &VParams,
    axes: &[Axis],
    observables: &[Observable],
) -> Result<()> {
    run_sweep(base, axes, observables)?.write_csv(path)
}

/// Writes the CSV tables of one canned panel set into `outdir` (created if
/// missing) and returns the paths.  Time axes are in units of inverse decay
/// rate; each file starts with a metadata line of its generating parameters.
pub fn figure_driver(id: FigureId, outdir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(outdir)?;
    let file = |name: &str| outdir.join(format!("{name}.csv"));
    let log_axis = |param, min, max, count| Axis::new(param, min, max, Spacing::Log, count);
    let mut written = Vec::new();
    match id {
        // Transient population/coherence traces with stationary dashed lines.
        FigureId::Fig2a => {
            write_transient_panel(&file("fig2a"), 1e-3, 0.1, 60.0, 2001)?;
            written.push(file("fig2a"));
        }
        FigureId::Fig2b => {
            write_transient_panel(&file("fig2b"), 1e-3, 10.0, 60.0, 2001)?;
            written.push(file("fig2b"));
        }
        FigureId::Fig2c => {
            write_transient_panel(&file("fig2c"), 1e3, 1e2, 0.05, 2001)?;
            written.push(file("fig2c"));
        }
        FigureId::Fig2d => {
            write_transient_panel(&file("fig2d"), 1e2, 2e2, 0.5, 2001)?;
            written.push(file("fig2d"));
        }
        // Stationary coherence vs occupancy at three splittings.
        FigureId::Fig3a => {
            let base = VParams::symmetric(1.0, 1.0)?;
            let axes = [
                log_axis(AxisParam::Delta, 0.1, 10.0, 3)?,
                Axis::default_nbar(),
            ];
            sweep_panel(&file("fig3a"), &base, &axes, &[Observable::ReAb])?;
            written.push(file("fig3a"));
        }
        // Stationary coherence vs splitting at three occupancies.
        FigureId::Fig3b => {
            let base = VParams::symmetric(1.0, 1.0)?;
            let axes = [
                log_axis(AxisParam::Nbar, 1e-2, 1e2, 3)?,
                Axis::default_delta(),
            ];
            sweep_panel(&file("fig3b"), &base, &axes, &[Observable::ReAb])?;
            written.push(file("fig3b"));
        }
        // Full (occupancy, splitting) contour table.
        FigureId::Fig3c => {
            let base = VParams::symmetric(1.0, 1.0)?;
            let axes = [Axis::default_nbar(), Axis::default_delta()];
            sweep_panel(&file("fig3c"), &base, &axes, &[Observable::ReAb])?;
            written.push(file("fig3c"));
        }
        // Dephasing scans: coherence over (splitting, gamma_d) at weak and
        // strong pumping, then over (gamma_d, occupancy) at fixed splitting.
        FigureId::Fig4a => {
            let base = VParams::symmetric(0.01, 1.0)?;
            let axes = [Axis::default_delta(), Axis::default_gamma_d()];
            sweep_panel(&file("fig4a"), &base, &axes, &[Observable::ReAb])?;
            written.push(file("fig4a"));
        }
        FigureId::Fig4b => {
            let base = VParams::symmetric(100.0, 1.0)?;
            let axes = [Axis::default_delta(), Axis::default_gamma_d()];
            sweep_panel(&file("fig4b"), &base, &axes, &[Observable::ReAb])?;
            written.push(file("fig4b"));
        }
        FigureId::Fig4c => {
            let base = VParams::symmetric(1.0, 10.0)?;
            let axes = [Axis::default_gamma_d(), Axis::default_nbar()];
            sweep_panel(&file("fig4c"), &base, &axes, &[Observable::ReAb])?;
            written.push(file("fig4c"));
        }
        // Coherence-to-population ratio vs dephasing; a maximum appears only
        // when Δ − r − γ > 0 (panels a and b), otherwise the decay is
        // monotone (panels c and d).
        FigureId::Fig5 => {
            let panels: [(&str, f64, f64); 4] = [
                ("fig5a", 0.01, 10.0),
                ("fig5b", 100.0, 110.0),
                ("fig5c", 0.01, 0.1),
                ("fig5d", 100.0, 0.5),
            ];
            for (name, nbar, delta) in panels {
                let base = VParams::symmetric(nbar, delta)?;
                sweep_panel(
                    &file(name),
                    &base,
                    &[Axis::default_gamma_d()],
                    &[Observable::CRatio, Observable::ReAb],
                )?;
                written.push(file(name));
            }
        }
        // Transient fluorescence-intensity ratios against the
        // interference-free reference.
        FigureId::Fig6 => {
            let panels: [(&str, f64, f64, f64, usize); 4] = [
                ("fig6a", 1e-2, 0.1, 1000.0, 1001),
                ("fig6b", 1e-2, 10.0, 15.0, 1501),
                ("fig6c", 1e3, 10.0, 0.05, 1001),
                ("fig6d", 10.0, 1e2, 2.0, 2001),
            ];
            for (name, nbar, delta, t_end, n_points) in panels {
                write_ratio_panel(&file(name), nbar, delta, t_end, n_points)?;
                written.push(file(name));
            }
        }
    }
    Ok(written)
}
