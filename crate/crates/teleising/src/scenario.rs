//! Named desk-scale experiments over the teleportation machinery: config
//! parsing, seeded sweeps, and structured CSV/JSON output.
//!
//! Each scenario maps a protocol regime onto tables and fits: the marginal,
//! disguised-marginal and relevant measurement bases, the two-axis
//! cancellation surface, typical-outcome sampling, the outcome-averaged
//! ensembles, counting statistics, and the single-qubit closed-form check.
//! Outputs are deterministic for a fixed config and seed: reruns produce
//! byte-identical CSV bodies, and timing lives only in the manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::{fit_log_coefficient, fit_power_law};
use crate::gaussian;
use crate::ising;
use crate::mixed;
use crate::protocol::{
    closed_form_penultimate, decode, deform, run_bruteforce, DeformTerm, OutcomeSampler,
    OutcomeString, ProtocolSpec,
};
use crate::state::{Statevector, UnitVector3};
use crate::strange;

/// Documented key = value schema for experiment config files.
pub const CONFIG_SCHEMA: &str = "\
Experiment config: UTF-8 text, one `key = value` per line, `#` starts a
comment. Lists are comma separated. Unknown keys are rejected.

  scenario       required; one of relevant-z, marginal-x, disguised-y,
                 cancellation-xy, typical, mixed-state, fcs, single-qubit
  l              chain length or list of lengths (scenario default if absent)
  alpha          deformation strength grid; for cancellation-xy this is the
                 uniform-x grid
  alpha_y        staggered-y strength grid (cancellation-xy only)
  u              entangler strength grid in (0, pi/2) (single-qubit, typical)
  seed           64-bit integer for all sampling; default 7
  samples        Monte Carlo sample count (typical); default 100000
  out            output directory; default runs/<scenario>
  threads        worker thread count; 0 keeps the library default
  max_memory_gb  dense density-matrix memory gate; default 4.0

Scenario defaults:
  relevant-z       l = 12;            alpha = 3, 4
  marginal-x       thermodynamic;     alpha = 0, 0.25, 0.5, 1
  disguised-y      l = 16;            alpha = 0.05 .. 0.40 step 0.05
  cancellation-xy  l = 12;            alpha = -0.2 .. 0.8 step 0.1,
                                      alpha_y = 0, 0.2, 0.4, 0.6, 0.8
  typical          l = 6;             u = 0.7
  mixed-state      l = 6, 8, 10, 12;  alpha = 0, 0.5, 1, 1.5
  fcs              l = 10, 12, 14, 16, 18
  single-qubit     u = 0.2, 0.4, 0.6, 0.785398, 1.0, 1.2, 1.4
";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    RelevantZ,
    MarginalX,
    DisguisedY,
    CancellationXy,
    Typical,
    MixedState,
    Fcs,
    SingleQubit,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::RelevantZ,
        Scenario::MarginalX,
        Scenario::DisguisedY,
        Scenario::CancellationXy,
        Scenario::Typical,
        Scenario::MixedState,
        Scenario::Fcs,
        Scenario::SingleQubit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::RelevantZ => "relevant-z",
            Scenario::MarginalX => "marginal-x",
            Scenario::DisguisedY => "disguised-y",
            Scenario::CancellationXy => "cancellation-xy",
            Scenario::Typical => "typical",
            Scenario::MixedState => "mixed-state",
            Scenario::Fcs => "fcs",
            Scenario::SingleQubit => "single-qubit",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown scenario '{}'; expected one of {}",
                    name,
                    Self::ALL.map(Scenario::name).join(", ")
                ))
            })
    }
}

/// A fully resolved experiment description. Build it from a config file via
/// `parse`, then apply CLI overrides before `run_scenario`.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub ls: Vec<usize>,
    pub alphas: Vec<f64>,
    pub alpha_ys: Vec<f64>,
    pub us: Vec<f64>,
    pub seed: u64,
    pub samples: usize,
    pub out_dir: PathBuf,
    pub threads: usize,
    pub max_memory_gb: f64,
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| Error::Config(format!("cannot parse '{}' in key '{}'", tok, key)))
        })
        .collect()
}

impl ExperimentConfig {
    /// Parses config text. Missing grids are filled with scenario defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut scenario = None;
        let mut ls = Vec::new();
        let mut alphas = Vec::new();
        let mut alpha_ys = Vec::new();
        let mut us = Vec::new();
        let mut seed = 7_u64;
        let mut samples = 100_000_usize;
        let mut out_dir = None;
        let mut threads = 0_usize;
        let mut max_memory_gb = 4.0_f64;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected 'key = value'", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "scenario" => scenario = Some(Scenario::parse(value)?),
                "l" => ls = parse_list(key, value)?,
                "alpha" => alphas = parse_list(key, value)?,
                "alpha_y" => alpha_ys = parse_list(key, value)?,
                "u" => us = parse_list(key, value)?,
                "seed" => {
                    seed = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad seed '{}'", value)))?
                }
                "samples" => {
                    samples = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad samples '{}'", value)))?
                }
                "out" => out_dir = Some(PathBuf::from(value)),
                "threads" => {
                    threads = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad threads '{}'", value)))?
                }
                "max_memory_gb" => {
                    max_memory_gb = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad max_memory_gb '{}'", value)))?
                }
                other => {
                    return Err(Error::Config(format!(
                        "unknown key '{}'; run with --print-schema for the format",
                        other
                    )))
                }
            }
        }
        let scenario =
            scenario.ok_or_else(|| Error::Config("config is missing 'scenario'".into()))?;
        let mut cfg = Self {
            scenario,
            ls,
            alphas,
            alpha_ys,
            us,
            seed,
            samples,
            out_dir: out_dir
                .unwrap_or_else(|| PathBuf::from("runs").join(scenario.name())),
            threads,
            max_memory_gb,
        };
        cfg.apply_defaults();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn apply_defaults(&mut self) {
        let frac_pi_4 = std::f64::consts::FRAC_PI_4;
        match self.scenario {
            Scenario::RelevantZ => {
                if self.ls.is_empty() {
                    self.ls = vec![12];
                }
                if self.alphas.is_empty() {
                    self.alphas = vec![3.0, 4.0];
                }
            }
            Scenario::MarginalX => {
                if self.alphas.is_empty() {
                    self.alphas = vec![0.0, 0.25, 0.5, 1.0];
                }
            }
            Scenario::DisguisedY => {
                if self.ls.is_empty() {
                    self.ls = vec![16];
                }
                if self.alphas.is_empty() {
                    self.alphas = vec![0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4];
                }
            }
            Scenario::CancellationXy => {
                if self.ls.is_empty() {
                    self.ls = vec![12];
                }
                if self.alphas.is_empty() {
                    self.alphas = vec![-0.2, -0.1, 0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8];
                }
                if self.alpha_ys.is_empty() {
                    self.alpha_ys = vec![0.0, 0.2, 0.4, 0.6, 0.8];
                }
            }
            Scenario::Typical => {
                if self.ls.is_empty() {
                    self.ls = vec![6];
                }
                if self.us.is_empty() {
                    self.us = vec![0.7];
                }
            }
            Scenario::MixedState => {
                if self.ls.is_empty() {
                    self.ls = vec![6, 8, 10, 12];
                }
                if self.alphas.is_empty() {
                    self.alphas = vec![0.0, 0.5, 1.0, 1.5];
                }
            }
            Scenario::Fcs => {
                if self.ls.is_empty() {
                    self.ls = vec![10, 12, 14, 16, 18];
                }
                if self.alphas.is_empty() {
                    self.alphas = vec![0.5];
                }
            }
            Scenario::SingleQubit => {
                if self.us.is_empty() {
                    self.us = vec![0.2, 0.4, 0.6, frac_pi_4, 1.0, 1.2, 1.4];
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.scenario {
            Scenario::CancellationXy => {
                if self.alphas.is_empty() || self.alpha_ys.is_empty() {
                    return Err(Error::Config(
                        "cancellation-xy needs non-empty alpha and alpha_y grids".into(),
                    ));
                }
            }
            Scenario::Typical => {
                if self.samples == 0 {
                    return Err(Error::Config("typical needs samples > 0".into()));
                }
                if self.us.iter().any(|&u| u <= 0.0 || u >= std::f64::consts::FRAC_PI_2) {
                    return Err(Error::Config("u must lie strictly inside (0, pi/2)".into()));
                }
            }
            Scenario::SingleQubit => {
                if self.us.is_empty() {
                    return Err(Error::Config("single-qubit needs a u grid".into()));
                }
            }
            Scenario::Fcs | Scenario::MixedState => {
                if self.ls.len() < 2 {
                    return Err(Error::Config(
                        "length fits need at least two chain lengths".into(),
                    ));
                }
            }
            _ => {}
        }
        if matches!(self.scenario, Scenario::DisguisedY | Scenario::CancellationXy)
            && self.ls.iter().any(|l| l % 2 == 1)
        {
            return Err(Error::Config(
                "staggered outcomes need even chain lengths".into(),
            ));
        }
        if self.ls.is_empty() && !matches!(self.scenario, Scenario::MarginalX | Scenario::SingleQubit)
        {
            return Err(Error::Config("empty length grid".into()));
        }
        Ok(())
    }

    /// Resolved settings as ordered key-value pairs, echoed into the manifest
    /// so a run can be reproduced from its artifacts alone.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let join_f =
            |v: &[f64]| v.iter().map(|x| format!("{}", x)).collect::<Vec<_>>().join(",");
        let mut map = BTreeMap::new();
        map.insert("scenario".into(), self.scenario.name().into());
        map.insert(
            "l".into(),
            self.ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","),
        );
        map.insert("alpha".into(), join_f(&self.alphas));
        map.insert("alpha_y".into(), join_f(&self.alpha_ys));
        map.insert("u".into(), join_f(&self.us));
        map.insert("seed".into(), self.seed.to_string());
        map.insert("samples".into(), self.samples.to_string());
        map.insert("out".into(), self.out_dir.display().to_string());
        map.insert("threads".into(), self.threads.to_string());
        map.insert("max_memory_gb".into(), format!("{}", self.max_memory_gb));
        map
    }
}

/// One fitted quantity with its uncertainty, fit window, and verdict against
/// the expected value. No fit leaves the crate without a window and error.
#[derive(Clone, Debug, Serialize)]
pub struct FitRecord {
    pub name: String,
    pub value: f64,
    pub stderr: f64,
    pub window: String,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl FitRecord {
    fn new(name: &str, value: f64, stderr: f64, window: String, expected: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            stderr,
            window,
            expected,
            tolerance: tol,
            pass: (value - expected).abs() <= tol,
        }
    }
}

/// A scalar deviation with a bound: pass iff value <= bound.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CheckRecord {
    fn new(name: String, value: f64, bound: f64) -> Self {
        Self {
            name,
            value,
            bound,
            pass: value <= bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub scenario: String,
    pub fits: Vec<FitRecord>,
    pub checks: Vec<CheckRecord>,
    pub all_pass: bool,
}

#[derive(Clone, Debug)]
struct CsvTable {
    name: String,
    comments: Vec<String>,
    header: String,
    rows: Vec<String>,
}

impl CsvTable {
    fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.header);
        out.push('\n');
        for r in &self.rows {
            out.push_str(r);
            out.push('\n');
        }
        out
    }
}

#[derive(Default)]
struct ScenarioOutput {
    tables: Vec<CsvTable>,
    fits: Vec<FitRecord>,
    checks: Vec<CheckRecord>,
}

/// Paths and verdicts of a completed run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub csv_paths: Vec<PathBuf>,
    pub summary_path: PathBuf,
    pub manifest_path: PathBuf,
    pub summary: RunSummary,
}

#[derive(Serialize)]
struct Manifest {
    scenario: String,
    format_version: u32,
    seed: u64,
    package_version: String,
    config: BTreeMap<String, String>,
    csv_columns: BTreeMap<String, String>,
    elapsed_seconds: f64,
}

/// Runs one scenario end to end: compute, then write CSV tables, a JSON
/// summary, and a manifest into the config's output directory.
pub fn run_scenario(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let started = Instant::now();
    let output = match config.scenario {
        Scenario::RelevantZ => relevant_z(config)?,
        Scenario::MarginalX => marginal_x(config)?,
        Scenario::DisguisedY => disguised_y(config)?,
        Scenario::CancellationXy => cancellation_xy(config)?,
        Scenario::Typical => typical(config)?,
        Scenario::MixedState => mixed_state(config)?,
        Scenario::Fcs => fcs(config)?,
        Scenario::SingleQubit => single_qubit(config)?,
    };
    let all_pass = output.fits.iter().all(|f| f.pass) && output.checks.iter().all(|c| c.pass);
    let summary = RunSummary {
        scenario: config.scenario.name().into(),
        fits: output.fits,
        checks: output.checks,
        all_pass,
    };

    std::fs::create_dir_all(&config.out_dir)?;
    let mut csv_paths = Vec::new();
    let mut csv_columns = BTreeMap::new();
    for table in &output.tables {
        let path = config.out_dir.join(format!("{}.csv", table.name));
        std::fs::write(&path, table.render())?;
        csv_columns.insert(format!("{}.csv", table.name), table.header.clone());
        csv_paths.push(path);
    }
    let summary_path = config.out_dir.join("summary.json");
    std::fs::write(
        &summary_path,
        serde_json::to_string_pretty(&summary).expect("summary serializes"),
    )?;
    let manifest = Manifest {
        scenario: config.scenario.name().into(),
        format_version: 1,
        seed: config.seed,
        package_version: env!("CARGO_PKG_VERSION").into(),
        config: config.echo(),
        csv_columns,
        elapsed_seconds: started.elapsed().as_secs_f64(),
    };
    let manifest_path = config.out_dir.join("manifest.json");
    std::fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )?;
    Ok(RunReport {
        out_dir: config.out_dir.clone(),
        csv_paths,
        summary_path,
        manifest_path,
        summary,
    })
}

fn fmt(x: f64) -> String {
    format!("{:.12e}", x)
}

fn derived_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Effective central charge of a dense periodic state from entanglement
/// growth over contiguous blocks, fitted against the chord length.
fn dense_c_eff(state: &Statevector, l: usize) -> Result<(f64, f64)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for ell in 2..=l / 2 {
        let region: Vec<usize> = (0..ell).collect();
        ys.push(state.renyi_entropy(&region, 1.0)?);
        xs.push((l as f64 / std::f64::consts::PI)
            * (std::f64::consts::PI * ell as f64 / l as f64).sin());
    }
    let (slope, _, stderr) = fit_log_coefficient(&xs, &ys)?;
    Ok((3.0 * slope, 3.0 * stderr))
}

/// The generalized two-axis deformation e^{a_x sum_j X_j / 2} combined with
/// the staggered e^{a_y sum_j (-1)^j Y_j / 2}; site terms commute, so one
/// per-site axis tilted in the x-y plane realizes the joint exponential.
fn two_axis_state(psi: &Statevector, l: usize, ax: f64, ay: f64) -> Result<Statevector> {
    let strength = (ax * ax + ay * ay).sqrt();
    if strength < 1e-14 {
        return Ok(psi.clone());
    }
    let axes: Vec<UnitVector3> = (0..l)
        .map(|j| {
            let sy = if j % 2 == 0 { ay } else { -ay };
            UnitVector3::new(ax, sy, 0.0)
        })
        .collect::<Result<_>>()?;
    let term = DeformTerm {
        alpha: -strength,
        axes,
        signs: vec![1; l],
    };
    deform(psi, &[term])
}

fn single_qubit(cfg: &ExperimentConfig) -> Result<ScenarioOutput> {
    let mut rng = derived_rng(cfg.seed, 0);
    let mut amps = Vec::with_capacity(2);
    for _ in 0..2 {
        amps.push(num_complex::Complex64::new(
            rng.gen::<f64>() - 0.5,
            rng.gen::<f64>() - 0.5,
        ));
    }
    let mut psi = Statevector::from_amplitudes(amps)?;
    psi.set_log_norm(0.0);

    let z = UnitVector3::z_axis();
    let mut rows = Vec::new();
    let mut max_prob_dev = 0.0_f64;
    let mut max_pen_infid = 0.0_f64;
    let mut max_dec_infid = 0.0_f64;
    let mut max_sum_dev = 0.0_f64;
    for &u in &cfg.us {
        for b in [1_i8, -1] {
            let mut spec = ProtocolSpec::new(1, u, z);
            spec.bob_signs = vec![b];
            let mut prob_sum = 0.0;
            for a in [1_i8, -1] {
                let outcome = OutcomeString::from_signs(vec![a])?;
                let (brute, p_brute) = run_bruteforce(&psi, &spec, &outcome)?;
                let (pen, norm_const) = closed_form_penultimate(&psi, &spec, &outcome)?;
                let p_closed = norm_const * u.sin() * u.cos();
                prob_sum += p_closed;
                let pen_infid = 1.0 - pen.fidelity(&brute);
                let decoded = decode(&pen, &spec, &outcome)?;
                let target = deform(
                    &psi,
                    &[DeformTerm {
                        alpha: spec.alpha(),
                        axes: vec![z],
                        signs: vec![a],
                    }],
                )?;
                let dec_infid = 1.0 - decoded.fidelity(&target);
                max_prob_dev = max_prob_dev.max((p_closed - p_brute).abs());
                max_pen_infid = max_pen_infid.max(pen_infid);
                max_dec_infid = max_dec_infid.max(dec_infid);
                rows.push(format!(
                    "{},{},{},{},{},{},{}",
                    fmt(u),
                    a,
                    b,
                    fmt(p_closed),
                    fmt((p_closed - p_brute).abs()),
                    fmt(pen_infid),
                    fmt(dec_infid)
                ));
            }
            max_sum_dev = max_sum_dev.max((prob_sum - 1.0).abs());
        }
    }
    Ok(ScenarioOutput {
        tables: vec![CsvTable {
            name: "single_qubit_closed_form".into(),
            comments: vec![
                "one teleported qubit, z measurement basis".into(),
                format!("seed = {}", cfg.seed),
            ],
            header: "u,outcome,bob_sign,probability,prob_route_dev,penultimate_infidelity,\
                     decode_infidelity"
                .into(),
            rows,
        }],
        fits: Vec::new(),
        checks: vec![
            CheckRecord::new("single_qubit_prob_route_dev".into(), max_prob_dev, 1e-10),
            CheckRecord::new("single_qubit_penultimate_infidelity".into(), max_pen_infid, 1e-10),
            CheckRecord::new("single_qubit_decode_infidelity".into(), max_dec_infid, 1e-10),
            CheckRecord::new("single_qubit_outcome_sum_dev".into(), max_sum_dev, 1e-12),
        ],
    })
}

fn relevant_z(cfg: &ExperimentConfig) -> Result<ScenarioOutput> {
    let l = *cfg.ls.iter().max().unwrap();
    let psi = ising::critical_ground_state(l, true)?;
    let z = UnitVector3::z_axis();
    let x = UnitVector3::x_axis();
    let signs = vec![1_i8; l];
    let mut corr_rows = Vec::new();
    let mut s2_rows = Vec::new();
    let mut checks = Vec::new();
    for &alpha in &cfg.alphas {
        let u = (-alpha).exp().atan();
        let spec = ProtocolSpec::from_alpha(l, alpha, z);
        let outcome = OutcomeString::uniform(l, 1);
        let (pen, _) = closed_form_penultimate(&psi, &spec, &outcome)?;
        let table = strange::strange_correlators(&psi, &signs, z)?;

        let pairs: Vec<(usize, usize)> = (2..=5).map(|d| ((l - d) / 2, (l - d) / 2 + d)).collect();
        let pert = strange::perturbative_correlators(&table, u, &pairs)?;
        let mut worst_rel = 0.0_f64;
        for (t, &(i, j)) in pairs.iter().enumerate() {
            let raw = pen.expectation_pauli_string(&[(i, x), (j, x)]).re;
            let xi = pen.expectation_pauli_string(&[(i, x)]).re;
            let xj = pen.expectation_pauli_string(&[(j, x)]).re;
            let ed = raw - xi * xj;
            let formula = pert.perp_connected[t];
            let v = table.v(i, j);
            let rel = (ed - formula).abs() / formula.abs().max(1e-300);
            worst_rel = worst_rel.max(rel);
            corr_rows.push(format!(
                "{},{},{},{},{},{},{},{}",
                fmt(alpha),
                i,
                j,
                j - i,
                fmt(ed),
                fmt(formula),
                fmt(u * u * v.re),
                fmt(rel)
            ));
        }
        checks.push(CheckRecord::new(
            format!("relevant_z_xx_rel_dev_alpha{}", alpha),
            worst_rel,
            0.10,
        ));

        let mut s2_by_ell = Vec::new();
        for ell in 3..=l / 2 {
            let region: Vec<usize> = (0..ell).collect();
            let ed = pen.renyi_entropy(&region, 2.0)?;
            let formula = strange::renyi2_perturbative(&table, &region, u)?;
            s2_by_ell.push((ell, ed));
            s2_rows.push(format!(
                "{},{},{},{},{}",
                fmt(alpha),
                ell,
                fmt(ed),
                fmt(formula),
                fmt((ed - formula).abs() / formula.abs().max(1e-300))
            ));
        }
        if alpha >= 3.5 {
            let half: Vec<usize> = (0..l / 2).collect();
            let ed = pen.renyi_entropy(&half, 2.0)?;
            let formula = strange::renyi2_perturbative(&table, &half, u)?;
            checks.push(CheckRecord::new(
                format!("relevant_z_s2_rel_dev_alpha{}", alpha),
                (ed - formula).abs() / formula.abs(),
                0.10,
            ));
            let window: Vec<f64> = s2_by_ell
                .iter()
                .filter(|(ell, _)| (4..=6).contains(ell))
                .map(|&(_, s)| s)
                .collect();
            let (lo, hi) = window
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| {
                    (lo.min(s), hi.max(s))
                });
            checks.push(CheckRecord::new(
                format!("relevant_z_s2_area_law_variation_alpha{}", alpha),
                (hi - lo) / hi,
                0.05,
            ));
        }
    }
    Ok(ScenarioOutput {
        tables: vec![
            CsvTable {
                name: "relevant_z_xx_connected".into(),
                comments: vec![format!("l = {}, uniform outcome, z measurement basis", l)],
                header: "alpha,i,j,separation,xx_ed,xx_perturbative,u2_v,rel_dev".into(),
                rows: corr_rows,
            },
            CsvTable {
                name: "relevant_z_renyi2".into(),
                comments: vec![format!("l = {}, blocks anchored at site 0", l)],
                header: "alpha,ell,s2_ed,s2_perturbative,rel_dev".into(),
                rows: s2_rows,
            },
        ],
        fits: Vec::new(),
        checks,
    })
}

fn marginal_x(cfg: &ExperimentConfig) -> Result<ScenarioOutput> {
    let ells: Vec<usize> = (1..=7).map(|k| 40 * k + 20).collect();
    let seps: Vec<usize> = vec![8, 12, 16, 24, 32, 48, 64];
    struct PerAlpha {
        alpha: f64,
        entropies: Vec<f64>,
        table: gaussian::CorrelatorTable,
    }
    let per_alpha: Vec<PerAlpha> = cfg
        .alphas
        .par_iter()
        .map(|&alpha| -> Result<PerAlpha> {
            let mut entropies = Vec::with_capacity(ells.len());
            for &ell in &ells {
                let cm = gaussian::correlation_matrix(
                    gaussian::CorrelationSource::Thermodynamic { alpha },
                    ell,
                )?;
                entropies.push(gaussian::entropies_from_correlation(&cm, &[1.0])?[0]);
            }
            let table = gaussian::marginal_correlators(alpha, &seps)?;
            Ok(PerAlpha {
                alpha,
                entropies,
                table,
            })
        })
        .collect::<Result<_>>()?;

    let mut entropy_rows = Vec::new();
    let mut corr_rows = Vec::new();
    let mut fits = Vec::new();
    let ell_window = format!("ell in {:?}", ells);
    let sep_window = format!("separations {:?}", seps);
    for pa in &per_alpha {
        for (k, &ell) in ells.iter().enumerate() {
            entropy_rows.push(format!("{},{},{}", fmt(pa.alpha), ell, fmt(pa.entropies[k])));
        }
        for (k, &d) in seps.iter().enumerate() {
            corr_rows.push(format!(
                "{},{},{},{},{}",
                fmt(pa.alpha),
                d,
                fmt(pa.table.xx_connected[k]),
                fmt(pa.table.yy[k]),
                fmt(pa.table.zz[k])
            ));
        }
        let xs: Vec<f64> = ells.iter().map(|&e| e as f64).collect();
        let (slope, _, stderr) = fit_log_coefficient(&xs, &pa.entropies)?;
        let closed = gaussian::c_eff1_closed(pa.alpha);
        fits.push(FitRecord::new(
            &format!("marginal_x_c_eff1_alpha{}", pa.alpha),
            3.0 * slope,
            3.0 * stderr,
            ell_window.clone(),
            closed,
            0.02 * closed,
        ));

        let sep_f: Vec<f64> = seps.iter().map(|&d| d as f64).collect();
        let (dz_th, dy_th) = gaussian::fisher_hartwig_exponents(pa.alpha);
        let zz_fit = fit_power_law(&sep_f, &pa.table.zz)?;
        fits.push(FitRecord::new(
            &format!("marginal_x_delta_z_alpha{}", pa.alpha),
            -zz_fit.exponent / 2.0,
            0.0,
            sep_window.clone(),
            dz_th,
            0.05 * dz_th,
        ));
        let yy_fit = fit_power_law(&sep_f, &pa.table.yy)?;
        fits.push(FitRecord::new(
            &format!("marginal_x_delta_y_alpha{}", pa.alpha),
            -yy_fit.exponent / 2.0,
            0.0,
            sep_window.clone(),
            dy_th,
            0.05 * dy_th,
        ));
        // XX_c carries a pure 1/d^2 tail; its amplitude tracks sech^2(2 alpha)
        let amp_th = 1.0 / (2.0 * pa.alpha).cosh().powi(2) / std::f64::consts::PI.powi(2);
        let amp: f64 = pa
            .table
            .xx_connected
            .iter()
            .zip(&seps)
            .rev()
            .take(3)
            .map(|(&xx, &d)| xx.abs() * (d * d) as f64)
            .sum::<f64>()
            / 3.0;
        fits.push(FitRecord::new(
            &format!("marginal_x_xx_amplitude_alpha{}", pa.alpha),
            amp,
            0.0,
            "largest three separations".into(),
            amp_th,
            0.05 * amp_th,
        ));
    }
    Ok(ScenarioOutput {
        tables: vec![
            CsvTable {
                name: "marginal_x_entropy".into(),
                comments: vec!["thermodynamic-limit interval entropies".into()],
                header: "alpha,ell,s1".into(),
                rows: entropy_rows,
            },
            CsvTable {
                name: "marginal_x_correlators".into(),
                comments: vec!["thermodynamic-limit two-point functions".into()],
                header: "alpha,separation,xx_connected,yy,zz".into(),
                rows: corr_rows,
            },
        ],
        fits,
        checks: Vec::new(),
    })
}

fn disguised_y(cfg: &ExperimentConfig) -> Result<ScenarioOutput> {
    let l = *cfg.ls.iter().max().unwrap();
    let psi = ising::critical_ground_state(l, true)?;
    let z = UnitVector3::z_axis();
    let y = UnitVector3::y_axis();
    let sep = 6;
    let (i, j) = ((l - sep) / 2, (l - sep) / 2 + sep);
    let pristine = psi.expectation_pauli_string(&[(i, z), (j, z)]).re;
    let mut rows = Vec::new();
    let mut devs = Vec::new();
    for &alpha in &cfg.alphas {
        let spec = ProtocolSpec::from_alpha(l, alpha, y);
        let outcome = OutcomeString::neel(l, 1);
        let (pen, _) = closed_form_penultimate(&psi, &spec, &outcome)?;
        let state = decode(&pen, &spec, &outcome)?;
        let zz = state.expectation_pauli_string(&[(i, z), (j, z)]).re;
        let dev = (zz - pristine).abs();
        let (c_eff, _) = dense_c_eff(&state, l)?;
        devs.push(dev);
        rows.push(format!(
            "{},{},{},{},{}",
            fmt(alpha),
            fmt(zz),
            fmt(pristine),
            fmt(dev),
            fmt(c_eff)
        ));
    }
    let ln_devs: Vec<f64> = devs.iter().map(|d| d.ln()).collect();
    let (p, _, stderr) = fit_log_coefficient(&cfg.alphas, &ln_devs)?;
    let window = format!(
        "alpha in [{}, {}], separation {}",
        cfg.alphas.first().unwrap(),
        cfg.alphas.last().unwrap(),
        sep
    );
    Ok(ScenarioOutput {
        tables: vec![CsvTable {
            name: "disguised_y_zz_deviation".into(),
            comments: vec![format!(
                "l = {}, staggered outcome, y measurement basis, sites {} and {}",
                l, i, j
            )],
            header: "alpha,zz,zz_pristine,deviation,c_eff".into(),
            rows,
        }],
        fits: vec![FitRecord::new(
            "disguised_y_zz_deviation_power",
            p,
            stderr,
            window,
            2.0,
            0.4,
        )],
        checks: Vec::new(),
    })
}

fn cancellation_xy(cfg: &ExperimentConfig) -> Result<ScenarioOutput> {
    let l = *cfg.ls.iter().max().unwrap();
    let psi = ising::critical_ground_state(l, true)?;
    let grid: Vec<(f64, f64)> = cfg
        .alpha_ys
        .iter()
        .flat_map(|&ay| cfg.alphas.iter().map(move |&ax| (ax, ay)))
        .collect();
    let c_effs: Vec<f64> = grid
        .par_iter()
        .map(|&(ax, ay)| -> Result<f64> {
            let state = two_axis_state(&psi, l, ax, ay)?;
            Ok(dense_c_eff(&state, l)?.0)
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for (chunk, &ay) in c_effs.chunks(cfg.alphas.len()).zip(&cfg.alpha_ys) {
        let mut ridge_dev = f64::INFINITY;
        let mut row_min = f64::INFINITY;
        for (&c, &ax) in chunk.iter().zip(&cfg.alphas) {
            ridge_dev = ridge_dev.min((c - 0.5).abs());
            row_min = row_min.min(c);
            rows.push(format!(
                "{},{},{},{}",
                fmt(ax),
                fmt(ay),
                fmt(ay * ay),
                fmt(c)
            ));
        }
        checks.push(CheckRecord::new(
            format!("cancellation_ridge_dev_ay{}", ay),
            ridge_dev,
            0.025,
        ));
        checks.push(CheckRecord::new(
            format!("cancellation_off_ridge_min_ay{}", ay),
            row_min,
            0.45,
        ));
    }
    Ok(ScenarioOutput {
        tables: vec![CsvTable {
            name: "cancellation_xy_c_eff".into(),
            comments: vec![format!(
                "l = {}, uniform x with staggered y deformation, chord-fitted entropy growth",
                l
            )],
            header: "alpha_x,alpha_y,alpha_y_sq,c_eff".into(),
            rows,
        }],
        fits: Vec::new(),
        checks,
    })
}

fn typical(cfg: &ExperimentConfig) -> Result<ScenarioOutput> {
    let l = cfg.ls[0];
    let u = cfg.us[0];
    let x = UnitVector3::x_axis();
    let psi = ising::critical_ground_state(l, true)?;
    let spec = ProtocolSpec::new(l, u, x);
    let sampler = OutcomeSampler::prepare(&psi, &spec)?;
    let mut rng = derived_rng(cfg.seed, 1);

    let n = cfg.samples;
    let mut bit_sum = vec![0.0_f64; l];
    let mut pair_sum = vec![0.0_f64; l * l];
    let mut max_sampler_dev = 0.0_f64;
    for k in 0..n {
        let sampled = sampler.sample(&mut rng)?;
        // spot-check the reported probability against the closed form
        if k < 64 {
            let (_, norm_const) = closed_form_penultimate(&psi, &spec, &sampled.outcome)?;
            let p_closed = norm_const * (u.sin() * u.cos()).powi(l as i32);
            max_sampler_dev = max_sampler_dev.max((sampled.probability - p_closed).abs());
        }
        for jsite in 0..l {
            let aj = sampled.outcome.sign(jsite) as f64;
            bit_sum[jsite] += aj;
            for ksite in jsite + 1..l {
                pair_sum[jsite * l + ksite] += aj * (sampled.outcome.sign(ksite) as f64);
            }
        }
    }

    let c2 = (2.0 * u).cos();
    let nf = n as f64;
    let mut bit_rows = Vec::new();
    let mut pair_rows = Vec::new();
    let mut worst_bit_z = 0.0_f64;
    let mut worst_pair_z = 0.0_f64;
    for jsite in 0..l {
        let mean = bit_sum[jsite] / nf;
        let expected = c2 * psi.expectation_pauli_string(&[(jsite, x)]).re;
        let sigma = ((1.0 - mean * mean).max(1e-12) / nf).sqrt();
        let zscore = (mean - expected).abs() / sigma;
        worst_bit_z = worst_bit_z.max(zscore);
        bit_rows.push(format!(
            "{},{},{},{}",
            jsite,
            fmt(mean),
            fmt(expected),
            fmt(zscore)
        ));
    }
    for jsite in 0..l {
        for ksite in jsite + 1..l {
            let prod_mean = pair_sum[jsite * l + ksite] / nf;
            let conn = prod_mean - (bit_sum[jsite] / nf) * (bit_sum[ksite] / nf);
            let raw = psi
                .expectation_pauli_string(&[(jsite, x), (ksite, x)])
                .re;
            let xi = psi.expectation_pauli_string(&[(jsite, x)]).re;
            let xk = psi.expectation_pauli_string(&[(ksite, x)]).re;
            let expected = c2 * c2 * (raw - xi * xk);
            let sigma = ((1.0 - prod_mean * prod_mean).max(1e-12) / nf).sqrt();
            let zscore = (conn - expected).abs() / sigma;
            worst_pair_z = worst_pair_z.max(zscore);
            pair_rows.push(format!(
                "{},{},{},{},{}",
                jsite,
                ksite,
                fmt(conn),
                fmt(expected),
                fmt(zscore)
            ));
        }
    }

    // exhaustive dual-route probability table on a short chain
    let l4 = 4;
    let psi4 = ising::critical_ground_state(l4, true)?;
    let spec4 = ProtocolSpec::new(l4, u, x);
    let mut prob_rows = Vec::new();
    let mut max_prob_dev = 0.0_f64;
    let mut prob_total = 0.0;
    for idx in 0..(1usize << l4) {
        let outcome = OutcomeString::from_index(idx, l4);
        let (_, norm_const) = closed_form_penultimate(&psi4, &spec4, &outcome)?;
        let p_closed = norm_const * (u.sin() * u.cos()).powi(l4 as i32);
        let (_, p_brute) = run_bruteforce(&psi4, &spec4, &outcome)?;
        let dev = (p_closed - p_brute).abs();
        max_prob_dev = max_prob_dev.max(dev);
        prob_total += p_closed;
        let pattern: String = outcome
            .signs()
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        prob_rows.push(format!(
            "{},{},{},{}",
            pattern,
            fmt(p_closed),
            fmt(p_brute),
            fmt(dev)
        ));
    }

    Ok(ScenarioOutput {
        tables: vec![
            CsvTable {
                name: "typical_bit_means".into(),
                comments: vec![
                    format!("l = {}, u = {}, x measurement basis", l, u),
                    format!("samples = {}, seed = {}", n, cfg.seed),
                ],
                header: "site,mean_sampled,mean_expected,z_score".into(),
                rows: bit_rows,
            },
            CsvTable {
                name: "typical_bit_pairs".into(),
                comments: vec![format!("connected outcome-bit correlations, {} samples", n)],
                header: "site_j,site_k,connected_sampled,connected_expected,z_score".into(),
                rows: pair_rows,
            },
            CsvTable {
                name: "typical_outcome_probabilities".into(),
                comments: vec![format!("exhaustive dual-route check, l = {}", l4)],
                header: "outcome,p_closed_form,p_bruteforce,abs_dev".into(),
                rows: prob_rows,
            },
        ],
        fits: Vec::new(),
        checks: vec![
            CheckRecord::new("typical_bit_mean_max_z".into(), worst_bit_z, 4.0),
            CheckRecord::new("typical_bit_pair_max_z".into(), worst_pair_z, 4.0),
            CheckRecord::new("typical_sampler_prob_dev".into(), max_sampler_dev, 1e-10),
            CheckRecord::new("typical_exhaustive_prob_dev".into(), max_prob_dev, 1e-10),
            CheckRecord::new(
                "typical_exhaustive_prob_sum_dev".into(),
                (prob_total - 1.0).abs(),
                1e-10,
            ),
        ],
    })
}

/// Three dense buffers back the negativity pipeline; the gate guards the
/// peak resident set, not the matrix alone.
fn dense_bytes(l: usize) -> f64 {
    3.0 * 16.0 * (1_u64 << (2 * l)) as f64
}

fn mixed_state(cfg: &ExperimentConfig) -> Result<ScenarioOutput> {
    let l_max = *cfg.ls.iter().max().unwrap();
    let budget = cfg.max_memory_gb * 1e9;
    if dense_bytes(l_max) > budget {
        return Err(Error::Config(format!(
            "memory gate exceeded: l = {} needs {:.2} GB of dense workspace, gate is {} GB",
            l_max,
            dense_bytes(l_max) / 1e9,
            cfg.max_memory_gb
        )));
    }

    let mut neg_rows = Vec::new();
    let mut fit_rows = Vec::new();
    let mut fits = Vec::new();
    let mut checks = Vec::new();
    let window = format!("l in {:?}", cfg.ls);
    for (basis_name, axis) in [("z", UnitVector3::z_axis()), ("x", UnitVector3::x_axis())] {
        let scan = mixed::negativity_scan(axis, &cfg.ls, &cfg.alphas)?;
        for p in &scan.points {
            neg_rows.push(format!(
                "{},{},{},{}",
                basis_name,
                p.l,
                fmt(p.alpha),
                fmt(p.negativity)
            ));
        }
        let mut prev = f64::INFINITY;
        let mut worst_increase = 0.0_f64;
        for f in &scan.fits {
            fit_rows.push(format!(
                "{},{},{},{}",
                basis_name,
                fmt(f.alpha),
                fmt(f.c_eff),
                fmt(f.c_eff_stderr)
            ));
            if f.alpha == 0.0 {
                // the perfect-protocol growth coefficient sits in [0.4, 0.7]
                fits.push(FitRecord::new(
                    &format!("mixed_negativity_c_eff_{}_alpha0", basis_name),
                    f.c_eff,
                    f.c_eff_stderr,
                    window.clone(),
                    0.55,
                    0.15,
                ));
            }
            if basis_name == "x" {
                worst_increase = worst_increase.max(f.c_eff - prev);
            }
            prev = f.c_eff;
            if basis_name == "z" && (f.alpha - 1.0).abs() < 1e-12 {
                checks.push(CheckRecord::new(
                    "mixed_negativity_z_alpha1_c_eff".into(),
                    f.c_eff,
                    0.1,
                ));
            }
        }
        if basis_name == "x" {
            checks.push(CheckRecord::new(
                "mixed_negativity_x_monotone_violation".into(),
                worst_increase,
                0.02,
            ));
        }
    }

    // damping identities on a short chain across random frames
    let l_id = 6;
    let psi = ising::critical_ground_state(l_id, true)?;
    let mut rng = derived_rng(cfg.seed, 2);
    let mut id_rows = Vec::new();
    let mut worst_dev = 0.0_f64;
    for trial in 0..10 {
        let u = 0.05 + rng.gen::<f64>() * (std::f64::consts::FRAC_PI_2 - 0.1);
        let theta = (1.0_f64 - 2.0 * rng.gen::<f64>()).acos();
        let phi = rng.gen::<f64>() * std::f64::consts::TAU;
        let protocol = ProtocolSpec::new(l_id, u, UnitVector3::from_polar(theta, phi));
        let rho = mixed::assemble(&psi, &mixed::MixedEnsembleSpec::decoded(protocol.clone()))?;
        let len = 1 + rng.gen_range(0..3_usize);
        let mut sites: Vec<usize> = (0..l_id).collect();
        for k in 0..len {
            let pick = k + rng.gen_range(0..(l_id - k));
            sites.swap(k, pick);
        }
        sites.truncate(len);
        sites.sort_unstable();
        let s = (2.0 * u).sin();
        let frames = protocol.frames();
        for (class, label, power) in [
            (mixed::AxisClass::Axis, "axis", 0_i32),
            (mixed::AxisClass::Perp, "perp", len as i32),
            (mixed::AxisClass::Cross, "cross", len as i32),
        ] {
            let got = mixed::mixed_correlator(&rho, &protocol, &sites, class)?;
            let ops: Vec<(usize, UnitVector3)> = sites
                .iter()
                .map(|&jsite| mixed::class_axis(&frames[jsite], class).map(|ax| (jsite, ax)))
                .collect::<Result<_>>()?;
            let want = s.powi(power) * psi.expectation_pauli_string(&ops).re;
            let dev = (got - want).abs();
            worst_dev = worst_dev.max(dev);
            id_rows.push(format!(
                "{},{},{},{},{},{},{},{}",
                trial,
                fmt(u),
                fmt(theta),
                fmt(phi),
                label,
                len,
                fmt(got),
                fmt(dev)
            ));
        }
    }
    checks.push(CheckRecord::new(
        "mixed_damping_identity_dev".into(),
        worst_dev,
        1e-12,
    ));

    Ok(ScenarioOutput {
        tables: vec![
            CsvTable {
                name: "mixed_state_negativity".into(),
                comments: vec!["half-chain log negativity of the decoded ensemble".into()],
                header: "basis,l,alpha,negativity".into(),
                rows: neg_rows,
            },
            CsvTable {
                name: "mixed_state_negativity_fits".into(),
                comments: vec![format!("growth coefficient fits over l in {:?}", cfg.ls)],
                header: "basis,alpha,c_eff,c_eff_stderr".into(),
                rows: fit_rows,
            },
            CsvTable {
                name: "mixed_state_identities".into(),
                comments: vec![format!("l = {}, seeded random frames and strings", l_id)],
                header: "trial,u,theta,phi,class,string_len,measured,abs_dev".into(),
                rows: id_rows,
            },
        ],
        fits,
        checks,
    })
}

fn fcs(cfg: &ExperimentConfig) -> Result<ScenarioOutput> {
    let z = UnitVector3::z_axis();
    let x = UnitVector3::x_axis();
    let modify_alpha = cfg.alphas[0];
    let mut moment_rows = Vec::new();
    let mut dist_rows = Vec::new();
    let mut var_z = Vec::new();
    let mut var_x = Vec::new();
    let mut width_worst = 0.0_f64;
    let mut shifts: BTreeMap<usize, f64> = BTreeMap::new();
    let l_max = *cfg.ls.iter().max().unwrap();
    for &l in &cfg.ls {
        let psi = ising::critical_ground_state(l, true)?;
        for (basis_name, axis) in [("z", z), ("x", x)] {
            let dist = ising::FcsDistribution::from_state(&psi, axis);
            let var = dist.var_m();
            let modified = dist.modified(modify_alpha);
            let shift = modified.peak_f() - dist.peak_f();
            if basis_name == "z" {
                var_z.push(var);
                let width_ratio =
                    (var / ising::scaling_function_variance()).sqrt() / ising::fcs_width(l);
                width_worst = width_worst.max((width_ratio - 1.0).abs());
                moment_rows.push(format!(
                    "{},{},{},{},{},{}",
                    l,
                    basis_name,
                    fmt(var),
                    fmt(width_ratio),
                    fmt(dist.peak_f()),
                    fmt(shift)
                ));
            } else {
                var_x.push(var);
                shifts.insert(l, shift);
                // the width prefactor law is a z-basis statement; leave blank
                moment_rows.push(format!(
                    "{},{},{},,{},{}",
                    l,
                    basis_name,
                    fmt(var),
                    fmt(dist.peak_f()),
                    fmt(shift)
                ));
            }
            if l == l_max {
                for (k, p) in dist.probs().into_iter().enumerate() {
                    dist_rows.push(format!(
                        "{},{},{},{}",
                        l,
                        basis_name,
                        fmt(dist.m_value(k)),
                        fmt(p)
                    ));
                }
            }
        }
    }
    let ls_f: Vec<f64> = cfg.ls.iter().map(|&l| l as f64).collect();
    let window = format!("l in {:?}", cfg.ls);
    let zfit = fit_power_law(&ls_f, &var_z)?;
    let xfit = fit_power_law(&ls_f, &var_x)?;
    let fits = vec![
        FitRecord::new(
            "fcs_variance_exponent_z",
            zfit.exponent,
            0.0,
            window.clone(),
            1.75,
            0.175,
        ),
        FitRecord::new("fcs_variance_exponent_x", xfit.exponent, 0.0, window, 1.0, 0.10),
    ];
    let mut checks = vec![CheckRecord::new(
        "fcs_width_prefactor_rel_dev".into(),
        width_worst,
        0.15,
    )];
    if let (Some(&s14), Some(&s18)) = (shifts.get(&14), shifts.get(&18)) {
        checks.push(CheckRecord::new(
            "fcs_modified_peak_shift_rel_dev".into(),
            (s14 - s18).abs() / s18.abs().max(1e-300),
            0.15,
        ));
    }
    Ok(ScenarioOutput {
        tables: vec![
            CsvTable {
                name: "fcs_moments".into(),
                comments: vec![format!(
                    "magnetization counting statistics; modified distributions use alpha = {}",
                    modify_alpha
                )],
                header: "l,basis,var_m,width_ratio,peak_f,peak_shift_modified".into(),
                rows: moment_rows,
            },
            CsvTable {
                name: "fcs_distribution".into(),
                comments: vec![format!("full histogram at l = {}", l_max)],
                header: "l,basis,m,probability".into(),
                rows: dist_rows,
            },
        ],
        fits,
        checks,
    })
}
