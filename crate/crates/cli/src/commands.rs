// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use maser::analytics::{analytic_report, effective_rates};
use maser::model::SystemParams;
use maser::observables::{wigner, WignerGrid, WignerSpec};
use maser::optimizer::{
    multi_start, optimize_power, FreeParam, FreeVariable, NelderMeadOptions, OptProblem, OptResult,
};
use maser::quantum::{ptrace, RESERVOIR};
use maser::scenarios::{
    coupling_sweep, direct_pump_scan, fig2, point_a, spectroscopy, threshold_scan, truncation_check,
    variant_comparison, CouplingSpec, DirectPumpSpec, DriveCurve, Fig2Spec, SpectroscopySpec, SweepResult,
    ThresholdSpec, TruncationCheck, VariantSpec,
};
use maser::simulation::{evolve_from_ground, solve_steady};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::output::{header, OutputDir};
use crate::{CliError, Command, GlobalArgs, EXIT_SOLVER, EXIT_TRUNCATION};

/// Exit code and one-line status of a finished command.
struct Outcome {
    code: u8,
    status: String,
}

impl Outcome {
    fn ok() -> Self {
        Self { code: 0, status: "ok".into() }
    }

    fn truncation(flagged: bool) -> Self {
        if flagged {
            Self { code: EXIT_TRUNCATION, status: "truncation saturation: <N> moved by more than 2% at n_r + 10".into() }
        } else {
            Self::ok()
        }
    }

    fn from_sweeps<'a>(sweeps: impl IntoIterator<Item = &'a SweepResult>) -> Self {
        let mut failed = 0;
        let mut total = 0;
        let mut flagged = false;
        for s in sweeps {
            failed += s.failures();
            total += s.points.len();
            flagged |= s.truncation_flagged();
        }
        if failed > 0 {
            Self { code: EXIT_SOLVER, status: format!("solver failure at {failed} of {total} points") }
        } else {
            Self::truncation(flagged)
        }
    }
}

#[derive(Serialize)]
struct Report<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    config: &'a C,
    result: &'a R,
}

fn name(cmd: Command) -> &'static str {
    match cmd {
        Command::Evolve => "evolve",
        Command::Steady => "steady",
        Command::Spectroscopy => "spectroscopy",
        Command::CouplingSweep => "coupling-sweep",
        Command::ThresholdScan => "threshold-scan",
        Command::Wigner => "wigner",
        Command::Optimize => "optimize",
        Command::AnalyticReport => "analytic-report",
        Command::AppendixB => "appendix-b",
        Command::AppendixC => "appendix-c",
    }
}

pub fn run(cmd: Command, g: &GlobalArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let mut out = OutputDir::create(&g.out)?;
    let result = match cmd {
        Command::Evolve => evolve(g, &mut out),
        Command::Steady => steady(g, &mut out),
        Command::Spectroscopy => run_spectroscopy(g, &mut out),
        Command::CouplingSweep => run_coupling(g, &mut out),
        Command::ThresholdScan => run_threshold(g, &mut out),
        Command::Wigner => run_wigner(g, &mut out),
        Command::Optimize => optimize(g, &mut out),
        Command::AnalyticReport => analytic(g, &mut out),
        Command::AppendixB => appendix_b(g, &mut out),
        Command::AppendixC => appendix_c(g, &mut out),
    };
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(o) => {
            out.finish(name(cmd), o.code as i32, &o.status, seconds)?;
            eprintln!("maser {}: {} ({:.1} s, {})", name(cmd), o.status, seconds, g.out.display());
            Ok(o.code)
        }
        Err(e) => {
            out.finish(name(cmd), e.code() as i32, &e.to_string(), seconds)?;
            Err(e)
        }
    }
}

fn load<S: Serialize + DeserializeOwned + Default>(g: &GlobalArgs) -> Result<RunConfig<S>, CliError> {
    RunConfig::load(g.config.as_deref())
}

/// Device for single-device commands: `--n-reservoir`, then `--fast`
/// (`n_r <= 25`).
fn device(g: &GlobalArgs, cfg: &RunConfig<impl Serialize + DeserializeOwned + Default>) -> Result<SystemParams, CliError> {
    let mut p = cfg.params(SystemParams::paper_optimum(60))?;
    if let Some(n) = g.n_reservoir {
        p.dims.n_r = n;
    }
    if g.fast {
        p.dims.n_r = p.dims.n_r.min(25);
    }
    p.validate()?;
    Ok(p)
}

fn write_config<S: Serialize + DeserializeOwned + Default + Clone>(
    out: &mut OutputDir,
    cfg: &RunConfig<S>,
    params: &SystemParams,
) -> Result<RunConfig<S>, CliError> {
    let resolved = cfg.resolved(params);
    out.text("config.toml", "toml", "fully resolved configuration; rerun with --config", &resolved.to_toml()?)?;
    Ok(resolved)
}

fn sweep_csv(out: &mut OutputDir, file: &str, description: &str, sweep: &SweepResult) -> Result<(), CliError> {
    let mut cols: Vec<String> = sweep.axes.iter().map(|a| format!("{}_{}", a.name, a.unit.to_lowercase())).collect();
    cols.extend(
        ["mean_n", "fano", "dbm", "p_g", "p_e", "residual", "relative_residual", "iterations", "seconds", "failed"]
            .map(String::from),
    );
    let rows: Vec<Vec<Option<f64>>> = sweep
        .points
        .iter()
        .map(|p| {
            let mut r: Vec<Option<f64>> = p.coords.iter().map(|&c| Some(c)).collect();
            r.extend([
                p.mean_n,
                p.fano,
                p.dbm,
                p.p_g,
                p.p_e,
                p.residual,
                p.relative_residual,
                p.iterations.map(|i| i as f64),
                Some(p.seconds),
                Some(if p.error.is_some() { 1.0 } else { 0.0 }),
            ]);
            r
        })
        .collect();
    out.csv(file, description, &cols, &rows)
}

fn fock_csv(out: &mut OutputDir, file: &str, description: &str, probs: &[f64]) -> Result<(), CliError> {
    let rows: Vec<Vec<Option<f64>>> = probs.iter().enumerate().map(|(n, &p)| vec![Some(n as f64), Some(p)]).collect();
    out.csv(file, description, &header(&["n", "probability"]), &rows)
}

/// Fock distributions of a drive curve, one column per drive.
fn fock_table(out: &mut OutputDir, file: &str, curve: &DriveCurve) -> Result<(), CliError> {
    let drives = curve.drives();
    let mut cols = vec!["n".to_string()];
    cols.extend(drives.iter().map(|d| format!("drive_{d}")));
    let len = curve.sweep.points.iter().filter_map(|p| p.fock.as_ref().map(Vec::len)).max().unwrap_or(0);
    let rows: Vec<Vec<Option<f64>>> = (0..len)
        .map(|n| {
            let mut r = vec![Some(n as f64)];
            r.extend(curve.sweep.points.iter().map(|p| p.fock.as_ref().and_then(|f| f.get(n).copied())));
            r
        })
        .collect();
    out.csv(file, &format!("reservoir Fock distributions for {} (columns: drive in MHz)", curve.name), &cols, &rows)
}

fn wigner_csv(out: &mut OutputDir, stem: &str, w: &WignerGrid) -> Result<(), CliError> {
    let mut cols = vec!["p\\x".to_string()];
    cols.extend(w.x.iter().map(|x| x.to_string()));
    let rows: Vec<Vec<Option<f64>>> = w
        .p
        .iter()
        .zip(&w.values)
        .map(|(p, row)| std::iter::once(Some(*p)).chain(row.iter().map(|v| Some(*v))).collect())
        .collect();
    out.csv(&format!("{stem}.csv"), "Wigner function W(x, p); rows p, columns x", &cols, &rows)?;
    let radial: Vec<Vec<Option<f64>>> =
        w.radii.iter().zip(&w.radial_profile).map(|(r, v)| vec![Some(*r), Some(*v)]).collect();
    out.csv(&format!("{stem}_radial.csv"), "angle-averaged Wigner function", &header(&["r", "w"]), &radial)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveScenario {
    pub t_end: f64,
    pub samples: usize,
    /// Runs the three-panel population study instead of a single device.
    pub fig2: Option<Fig2Spec>,
}

impl Default for EvolveScenario {
    fn default() -> Self {
        Self { t_end: 2.0, samples: 201, fig2: None }
    }
}

fn evolve(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let mut cfg: RunConfig<EvolveScenario> = load(g)?;
    if let Some(mut spec) = cfg.scenario.fig2.take() {
        if let Some(n) = g.n_reservoir {
            spec.n_r = n;
        }
        if g.fast {
            spec = spec.fast();
        }
        cfg.scenario.fig2 = Some(spec.clone());
        let r = fig2(&spec, cfg.evolve)?;
        let resolved = write_config(out, &cfg, &r.panels[0].params)?;
        out.json("fig2.json", "three-panel transmon populations", &Report { command: "evolve", config: &resolved, result: &r })?;
        for p in &r.panels {
            populations_csv(out, &format!("fig2_{}.csv", p.label), &p.evolution)?;
        }
        return Ok(Outcome::ok());
    }
    let p = device(g, &cfg)?;
    let s = &cfg.scenario;
    if !(s.t_end > 0.0) || s.samples < 2 {
        return Err(CliError::Config("evolve needs t_end > 0 and samples >= 2".into()));
    }
    let times: Vec<f64> = (0..s.samples).map(|i| s.t_end * i as f64 / (s.samples - 1) as f64).collect();
    let r = evolve_from_ground(&p, &times, cfg.evolve)?;
    let resolved = write_config(out, &cfg, &p)?;
    out.json("evolution.json", "transient from the ground state", &Report { command: "evolve", config: &resolved, result: &r })?;
    populations_csv(out, "evolution.csv", &r)?;
    Ok(Outcome::ok())
}

fn populations_csv(out: &mut OutputDir, file: &str, r: &maser::dynamics::EvolutionResult) -> Result<(), CliError> {
    let rows: Vec<Vec<Option<f64>>> = (0..r.times.len())
        .map(|i| {
            vec![
                Some(r.times[i]),
                Some(r.p_g[i]),
                Some(r.p_e[i]),
                Some(r.p_f[i]),
                Some(r.p_rest[i]),
                Some(r.mean_n[i]),
                r.fano[i],
                Some(r.trace[i]),
            ]
        })
        .collect();
    out.csv(
        file,
        "populations against time (us)",
        &header(&["t", "p_g", "p_e", "p_f", "p_rest", "mean_n", "fano", "trace"]),
        &rows,
    )
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Empty {}

#[derive(Serialize)]
struct SteadyReport {
    steady: maser::simulation::SteadyStateResult,
    analytic: Option<maser::analytics::EffectiveRates>,
    truncation: Option<TruncationCheck>,
}

fn steady(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let cfg: RunConfig<Empty> = load(g)?;
    let p = device(g, &cfg)?;
    let r = solve_steady(&p, &cfg.solver)?;
    let truncation = cfg.sweep.check_truncation.then(|| truncation_check(0, &p, r.mean_n(), &cfg.solver));
    let flagged = truncation.as_ref().is_some_and(|t| t.flagged);
    let report = SteadyReport { analytic: effective_rates(&p).ok(), truncation, steady: r };
    let resolved = write_config(out, &cfg, &p)?;
    out.json("steady.json", "steady-state observables", &Report { command: "steady", config: &resolved, result: &report })?;
    fock_csv(out, "fock.csv", "reservoir Fock distribution", &report.steady.photons.fock_probs)?;
    Ok(Outcome::truncation(flagged))
}

#[derive(Serialize)]
struct WignerReport {
    mean_n: f64,
    fano: Option<f64>,
    radial_maxima: usize,
    integral: f64,
    grid: WignerGrid,
}

fn run_wigner(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let mut cfg: RunConfig<WignerSpec> = load(g)?;
    if g.fast {
        cfg.scenario.points = cfg.scenario.points.min(101);
    }
    let p = device(g, &cfg)?;
    let r = solve_steady(&p, &cfg.solver)?;
    let w = wigner(&ptrace(&r.rho_ss, RESERVOIR)?, cfg.scenario)?;
    let report = WignerReport { mean_n: r.mean_n(), fano: r.fano(), radial_maxima: w.radial_maxima(), integral: w.integral(), grid: w };
    let resolved = write_config(out, &cfg, &p)?;
    out.json("wigner.json", "steady reservoir Wigner function", &Report { command: "wigner", config: &resolved, result: &report })?;
    wigner_csv(out, "wigner", &report.grid)?;
    fock_csv(out, "fock.csv", "reservoir Fock distribution", &r.photons.fock_probs)?;
    Ok(Outcome::ok())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizeScenario {
    pub free: Vec<FreeVariable>,
    pub nelder_mead: NelderMeadOptions,
    /// Start points in free-variable order; empty starts at the device.
    pub starts: Vec<Vec<f64>>,
}

impl Default for OptimizeScenario {
    fn default() -> Self {
        let v = |param, lower, upper| FreeVariable { param, lower, upper };
        Self {
            free: vec![
                v(FreeParam::GR, 1.0, 20.0),
                v(FreeParam::GA, 2.0, 40.0),
                v(FreeParam::KappaR, 0.05, 2.0),
                v(FreeParam::KappaA, 20.0, 300.0),
                v(FreeParam::OmegaD, -20.0, 20.0),
            ],
            nelder_mead: NelderMeadOptions::default(),
            starts: Vec::new(),
        }
    }
}

#[derive(Serialize)]
struct OptimizeReport {
    best: Option<usize>,
    runs: Vec<Result<OptResult, String>>,
}

fn optimize(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let cfg: RunConfig<OptimizeScenario> = load(g)?;
    let p = device(g, &cfg)?;
    let problem = OptProblem {
        base: p.clone(),
        free: cfg.scenario.free.clone(),
        steady: cfg.solver,
        nelder_mead: cfg.scenario.nelder_mead,
    };
    problem.validate()?;
    let runs: Vec<Result<OptResult, String>> = if cfg.scenario.starts.is_empty() {
        vec![optimize_power(&problem).map_err(|e| e.to_string())]
    } else {
        multi_start(&problem, &cfg.scenario.starts).into_iter().map(|r| r.map_err(|e| e.to_string())).collect()
    };
    let best = runs
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.as_ref().ok().map(|r| (i, r.watts)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i);
    let report = OptimizeReport { best, runs };
    let resolved = write_config(out, &cfg, &p)?;
    out.json("optimize.json", "Nelder-Mead power optimization", &Report { command: "optimize", config: &resolved, result: &report })?;
    let Some(b) = best else {
        return Ok(Outcome { code: EXIT_SOLVER, status: "every optimizer run failed".into() });
    };
    let Ok(best) = &report.runs[b] else { unreachable!() };
    let mut cols = vec!["iteration".to_string(), "best_f".into(), "spread".into()];
    cols.extend(best.free.iter().map(|v| format!("{:?}", v.param).to_lowercase()));
    let rows: Vec<Vec<Option<f64>>> = best
        .history
        .iter()
        .map(|s| {
            let mut r = vec![Some(s.iteration as f64), Some(s.best_f), Some(s.spread)];
            r.extend(s.best_x.iter().map(|x| Some(*x)));
            r
        })
        .collect();
    out.csv("history.csv", "simplex history of the best run (f = -P in aW)", &cols, &rows)?;
    out.text("optimum.toml", "toml", "device at the optimum", &maser::model::DeviceConfig::from_params(&best.params).to_toml()?)?;
    if best.saturated {
        return Ok(Outcome {
            code: EXIT_TRUNCATION,
            status: format!(
                "truncation saturation: <N> = {:.2} exceeds 80% of n_r; rerun with --n-reservoir {}",
                best.mean_n,
                best.suggested_n_r.unwrap_or(0)
            ),
        });
    }
    Ok(Outcome::ok())
}

fn analytic(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let cfg: RunConfig<Empty> = load(g)?;
    let p = device(g, &cfg)?;
    let r = analytic_report(&p)?;
    let resolved = write_config(out, &cfg, &p)?;
    out.json("analytic.json", "analytic dressed-state model", &Report { command: "analytic-report", config: &resolved, result: &r })?;
    for s in &r.spectra {
        let rows: Vec<Vec<Option<f64>>> = s
            .rows
            .iter()
            .map(|row| {
                vec![Some(row.n as f64), Some(row.delta_ge), Some(row.delta_gef), Some(row.theta), Some(row.pump_detuning), Some(row.pump_detuning_mhz)]
            })
            .collect();
        let file = format!("spectrum_{}.csv", format!("{:?}", s.coupling).to_lowercase());
        out.csv(&file, "dressed splittings (rad/us) against reservoir photon number", &header(&["n", "delta_ge", "delta_gef", "theta", "pump_detuning", "pump_detuning_mhz"]), &rows)?;
    }
    Ok(Outcome::ok())
}

fn run_spectroscopy(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let mut cfg: RunConfig<SpectroscopySpec> = load(g)?;
    let base = cfg.params(point_a(30))?;
    if let Some(n) = g.n_reservoir {
        cfg.scenario.n_r = n;
    }
    if g.fast {
        cfg.scenario = cfg.scenario.clone().fast();
    }
    let r = spectroscopy(&base, &cfg.scenario, &cfg.sweep_options())?;
    let resolved = write_config(out, &cfg, &r.params)?;
    out.json("spectroscopy.json", "reservoir population against drive offset", &Report { command: "spectroscopy", config: &resolved, result: &r })?;
    let mut cols = header(&["drive_offset_mhz", "mean_n_steady", "fano_steady"]);
    cols.extend(cfg.scenario.sample_times.iter().map(|t| format!("mean_n_t{t}")));
    let rows: Vec<Vec<Option<f64>>> = r
        .steady
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut row = vec![Some(p.coords[0]), p.mean_n, p.fano];
            let tr = r.transients.get(i);
            row.extend((0..cfg.scenario.sample_times.len()).map(|k| tr.and_then(|t| t.mean_n.get(k).copied())));
            row
        })
        .collect();
    out.csv("spectroscopy.csv", "steady and transient <N> against drive offset", &cols, &rows)?;
    sweep_csv(out, "steady_points.csv", "steady-state sweep points", &r.steady)?;
    let mut o = Outcome::from_sweeps([&r.steady]);
    if o.code == 0 && r.transients.iter().any(|t| t.error.is_some()) {
        o = Outcome { code: EXIT_SOLVER, status: "transient solver failure".into() };
    }
    Ok(o)
}

fn run_coupling(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let mut cfg: RunConfig<CouplingSpec> = load(g)?;
    let base = cfg.params(SystemParams::coupling_point(8.0, 8.0, 20.0, 40))?;
    if let Some(n) = g.n_reservoir {
        cfg.scenario.n_r = n;
    }
    if g.fast {
        cfg.scenario = cfg.scenario.clone().fast();
    }
    let r = coupling_sweep(&base, &cfg.scenario, &cfg.sweep_options());
    let resolved = write_config(out, &cfg, &base.clone().with_n_r(cfg.scenario.n_r))?;
    out.json("coupling.json", "coupling-plane sweep", &Report { command: "coupling-sweep", config: &resolved, result: &r })?;
    sweep_csv(out, "points.csv", "one row per (g_r, g_a) point", &r.sweep)?;
    for (file, map, what) in [("mean_n.csv", &r.mean_n, "<N>"), ("log10_fano.csv", &r.log10_fano, "log10 F")] {
        let mut cols = vec!["g_r\\g_a".to_string()];
        cols.extend(cfg.scenario.g_a_mhz.iter().map(|x| x.to_string()));
        let rows: Vec<Vec<Option<f64>>> = cfg
            .scenario
            .g_r_mhz
            .iter()
            .zip(map)
            .map(|(gr, row)| std::iter::once(Some(*gr)).chain(row.iter().cloned()).collect())
            .collect();
        out.csv(file, &format!("{what} map; rows g_r (MHz), columns g_a (MHz)"), &cols, &rows)?;
    }
    Ok(Outcome::from_sweeps([&r.sweep]))
}

fn run_threshold(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let mut cfg: RunConfig<ThresholdSpec> = load(g)?;
    let base = cfg.params(SystemParams::coupling_point(8.0, 15.0, 20.0, 45))?;
    if let Some(n) = g.n_reservoir {
        cfg.scenario.n_r = n;
    }
    if g.fast {
        cfg.scenario = cfg.scenario.clone().fast();
    }
    let r = threshold_scan(&base, &cfg.scenario, &cfg.sweep_options())?;
    let resolved = write_config(out, &cfg, &r.base)?;
    out.json("threshold.json", "drive scans at the named coupling points", &Report { command: "threshold-scan", config: &resolved, result: &r })?;
    for c in &r.curves {
        sweep_csv(out, &format!("curve_{}.csv", c.name), &format!("point {} against drive (MHz)", c.name), &c.sweep)?;
        fock_table(out, &format!("fock_{}.csv", c.name), c)?;
    }
    for d in &r.details {
        let stem = format!("{}_{}", d.point, d.drive_mhz);
        fock_csv(out, &format!("fock_{stem}.csv"), "reservoir Fock distribution", &d.fock)?;
        wigner_csv(out, &format!("wigner_{stem}"), &d.wigner)?;
    }
    Ok(Outcome::from_sweeps(r.curves.iter().map(|c| &c.sweep)))
}

fn appendix_b(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let mut cfg: RunConfig<VariantSpec> = load(g)?;
    let base = cfg.params(SystemParams::coupling_point(8.0, 11.0, 20.0, 45))?;
    if let Some(n) = g.n_reservoir {
        cfg.scenario.n_r = n;
    }
    if g.fast {
        cfg.scenario = cfg.scenario.clone().fast();
    }
    let r = variant_comparison(&base, &cfg.scenario, &cfg.sweep_options());
    let resolved = write_config(out, &cfg, &base.clone().with_n_r(cfg.scenario.n_r))?;
    out.json("appendix_b.json", "standard and unity-lowering variants", &Report { command: "appendix-b", config: &resolved, result: &r })?;
    for c in [&r.standard, &r.unity_lowering] {
        sweep_csv(out, &format!("{}.csv", c.name), &format!("{} variant against drive (MHz)", c.name), &c.sweep)?;
        fock_table(out, &format!("fock_{}.csv", c.name), c)?;
    }
    Ok(Outcome::from_sweeps([&r.standard.sweep, &r.unity_lowering.sweep]))
}

fn appendix_c(g: &GlobalArgs, out: &mut OutputDir) -> Result<Outcome, CliError> {
    let mut cfg: RunConfig<DirectPumpSpec> = load(g)?;
    let base = cfg.params(SystemParams::coupling_point(8.0, 0.0, 80.0, 20))?;
    if let Some(n) = g.n_reservoir {
        cfg.scenario.n_r = n;
    }
    if g.fast {
        cfg.scenario = cfg.scenario.clone().fast();
    }
    let r = direct_pump_scan(&base, &cfg.scenario, &cfg.sweep_options());
    let resolved = write_config(out, &cfg, &r.base)?;
    out.json("appendix_c.json", "two-level direct pumping against detuning", &Report { command: "appendix-c", config: &resolved, result: &r })?;
    sweep_csv(out, "appendix_c.csv", "one row per (drive, detuning) point, MHz", &r.sweep)?;
    Ok(Outcome::from_sweeps([&r.sweep]))
}
