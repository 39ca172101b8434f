//! Command surface of the `spin-brach` binary.
//!
//! Every subcommand builds a [`Report`] that renders as JSON or CSV. Values are
//! rounded to `--precision` significant digits before serialization, so output
//! is byte-identical across runs and re-parses to exactly the printed numbers.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 target not reachable,
//! 1 when the output file cannot be written.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spin_brach::{
    evolution, manifold_radius, metric_tensor_closed, metric_tensor_numeric, optimal_transfer, spin_operators,
    sweep_tilt, transfer_with_tilt, Complex64, FieldSpec, HalfInt, OperatorMatrix, TransferProblem, TransferSolution,
};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "spin-brach",
    version,
    about = "Rotational-manifold geometry and minimal-time transfer for spin-s systems"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Metric scale γ.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = positive)]
    pub gamma: f64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Significant digits in printed numbers.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(4..=17))]
    pub precision: u32,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Read input angles in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Spin matrices Sx, Sy, Sz in the descending-m basis.
    #[command(allow_negative_numbers = true)]
    Operators {
        #[arg(long, allow_hyphen_values = true)]
        s: HalfInt,
    },
    /// Fubini-Study metric of a rotational manifold, numeric next to closed form.
    #[command(allow_negative_numbers = true)]
    Metric {
        #[arg(long, allow_hyphen_values = true)]
        s: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        m: HalfInt,
        /// Polar angle [default: π/2].
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
    },
    /// Trace of |m⟩ evolving under H = ω S·n′.
    #[command(allow_negative_numbers = true)]
    Evolve {
        #[arg(long, allow_hyphen_values = true)]
        s: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        m: HalfInt,
        #[arg(long)]
        field_theta: f64,
        #[arg(long, default_value_t = 0.0)]
        field_phi: f64,
        #[arg(long)]
        omega: f64,
        /// Final time.
        #[arg(long)]
        t: f64,
        /// Rows, evenly spaced on [0, t]; 1 gives the single row at t.
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
    },
    /// Transfer from |m⟩ to the manifold point (θ_f, φ_f); optimal unless a tilt is given.
    #[command(allow_negative_numbers = true)]
    Brach {
        #[arg(long, allow_hyphen_values = true)]
        s: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        m: HalfInt,
        #[arg(long)]
        theta_f: f64,
        #[arg(long, default_value_t = 0.0)]
        phi_f: f64,
        #[arg(long)]
        omega: f64,
        /// Field tilt θ′; must satisfy sinθ′ ≥ sin(θ_f/2).
        #[arg(long)]
        field_theta: Option<f64>,
    },
    /// Transfer time, speed and path length over reachable tilts up to π/2.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        s: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        m: HalfInt,
        #[arg(long)]
        theta_f: f64,
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
}

fn positive(text: &str) -> Result<f64, String> {
    let value: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("must be a positive finite number, got {value}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Invalid(String),
    Infeasible(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) | CliError::Infeasible(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<spin_brach::Error> for CliError {
    fn from(err: spin_brach::Error) -> Self {
        if err.is_infeasible() {
            CliError::Infeasible(err.to_string())
        } else {
            CliError::Invalid(err.to_string())
        }
    }
}

/// Rounds to a fixed number of significant digits; -0 prints as 0.
#[derive(Clone, Copy, Debug)]
pub struct Rounder(u32);

impl Rounder {
    pub fn new(precision: u32) -> Self {
        Rounder(precision.clamp(1, 17))
    }

    pub fn round(self, x: f64) -> f64 {
        if !x.is_finite() {
            return x;
        }
        let y: f64 = format!("{:.*e}", self.0 as usize - 1, x)
            .parse()
            .expect("formatted float parses");
        // adding +0 turns -0 into +0
        y + 0.0
    }

    fn num(self, x: f64) -> Value {
        json!(self.round(x))
    }

    fn cell(self, x: f64) -> String {
        format!("{:?}", self.round(x))
    }

    fn complex(self, z: Complex64) -> Value {
        json!([self.round(z.re), self.round(z.im)])
    }
}

/// Header plus rows of already formatted cells.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// A command result, renderable in either format.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub table: Table,
    pub natural: Format,
}

impl Report {
    pub fn render(&self, format: Option<Format>) -> Result<String, CliError> {
        match format.unwrap_or(self.natural) {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::Io(e.to_string()))?;
                text.push('\n');
                Ok(text)
            }
            Format::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Io(e.to_string());
                writer.write_record(&self.table.headers).map_err(io)?;
                for row in &self.table.rows {
                    writer.write_record(row).map_err(io)?;
                }
                let bytes = writer.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}

/// Runs the parsed command and renders it in the requested format.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    run(cli)?.render(cli.config.format)
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = &cli.config;
    let r = Rounder::new(cfg.precision);
    let angle = |x: f64| if cfg.degrees { x.to_radians() } else { x };
    match cli.command.clone() {
        Command::Operators { s } => operators(s, r),
        Command::Metric { s, m, theta, phi } => metric(s, m, theta.map_or(FRAC_PI_2, angle), angle(phi), cfg.gamma, r),
        Command::Evolve {
            s,
            m,
            field_theta,
            field_phi,
            omega,
            t,
            steps,
        } => {
            let field = FieldSpec::new(omega, angle(field_theta), angle(field_phi))?;
            evolve(s, m, &field, t, steps as usize, r)
        }
        Command::Brach {
            s,
            m,
            theta_f,
            phi_f,
            omega,
            field_theta,
        } => {
            let problem = TransferProblem::new(s, m, angle(theta_f), angle(phi_f), omega, cfg.gamma)?;
            let solution = match field_theta {
                Some(tilt) => transfer_with_tilt(&problem, angle(tilt))?,
                None => optimal_transfer(&problem)?,
            };
            Ok(brach(&solution, r))
        }
        Command::Sweep {
            s,
            m,
            theta_f,
            omega,
            grid,
        } => {
            let problem = TransferProblem::new(s, m, angle(theta_f), 0.0, omega, cfg.gamma)?;
            sweep(&problem, grid, r)
        }
    }
}

fn matrix_json(op: &OperatorMatrix, r: Rounder) -> Value {
    Value::Array(
        op.row_iter()
            .map(|row| Value::Array(row.iter().map(|&z| r.complex(z)).collect()))
            .collect(),
    )
}

fn operators(s: HalfInt, r: Rounder) -> Result<Report, CliError> {
    let ops = spin_operators(s)?;
    let named = [("sx", &ops.sx), ("sy", &ops.sy), ("sz", &ops.sz)];
    let mut table = Table {
        headers: ["operator", "row", "col", "re", "im"].map(String::from).to_vec(),
        rows: Vec::new(),
    };
    for (name, op) in named {
        for i in 0..op.nrows() {
            for j in 0..op.ncols() {
                let z = op[(i, j)];
                table.rows.push(vec![
                    name.to_string(),
                    i.to_string(),
                    j.to_string(),
                    r.cell(z.re),
                    r.cell(z.im),
                ]);
            }
        }
    }
    let json = json!({
        "s": s.value(),
        "sx": matrix_json(&ops.sx, r),
        "sy": matrix_json(&ops.sy, r),
        "sz": matrix_json(&ops.sz, r),
    });
    Ok(Report {
        json,
        table,
        natural: Format::Json,
    })
}

fn metric(s: HalfInt, m: HalfInt, theta: f64, phi: f64, gamma: f64, r: Rounder) -> Result<Report, CliError> {
    let numeric = metric_tensor_numeric(s, m, theta, phi, gamma)?;
    let closed = metric_tensor_closed(s, m, theta, gamma)?;
    let radius = manifold_radius(s, m, gamma)?;
    let dev = numeric.max_abs_dev(&closed);
    let json = json!({
        "g_tt": r.num(numeric.g_tt),
        "g_tp": r.num(numeric.g_tp),
        "g_pp": r.num(numeric.g_pp),
        "closed_form": {
            "g_tt": r.num(closed.g_tt),
            "g_tp": r.num(closed.g_tp),
            "g_pp": r.num(closed.g_pp),
        },
        "max_abs_dev": r.num(dev),
        "radius": r.num(radius),
    });
    let headers = [
        "g_tt",
        "g_tp",
        "g_pp",
        "closed_g_tt",
        "closed_g_tp",
        "closed_g_pp",
        "max_abs_dev",
        "radius",
    ];
    let row = [
        numeric.g_tt,
        numeric.g_tp,
        numeric.g_pp,
        closed.g_tt,
        closed.g_tp,
        closed.g_pp,
        dev,
        radius,
    ];
    Ok(Report {
        json,
        table: Table {
            headers: headers.map(String::from).to_vec(),
            rows: vec![row.iter().map(|&x| r.cell(x)).collect()],
        },
        natural: Format::Json,
    })
}

/// Sample times: `[t]` for one step, otherwise t·k/(steps−1).
pub fn sample_times(t: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![t],
        n => (0..n)
            .map(|k| if k == n - 1 { t } else { t * k as f64 / (n - 1) as f64 })
            .collect(),
    }
}

fn evolve(s: HalfInt, m: HalfInt, field: &FieldSpec, t: f64, steps: usize, r: Rounder) -> Result<Report, CliError> {
    let samples = evolution::trace(s, m, field, &sample_times(t, steps))?;
    let dim = samples.first().map_or(0, |x| x.state.dim());
    let mut headers = vec!["t".to_string()];
    for k in 0..dim {
        headers.push(format!("re_{k}"));
        headers.push(format!("im_{k}"));
    }
    headers.extend(["predicted_theta", "predicted_phi", "residency_fidelity", "phase_beta"].map(String::from));
    let mut rows = Vec::with_capacity(samples.len());
    let mut json_rows = Vec::with_capacity(samples.len());
    for sample in &samples {
        let amps = sample.state.amplitudes();
        let mut row = vec![r.cell(sample.t)];
        for z in amps.iter() {
            row.push(r.cell(z.re));
            row.push(r.cell(z.im));
        }
        for x in [
            sample.predicted_theta,
            sample.predicted_phi,
            sample.residency_fidelity,
            sample.phase_beta,
        ] {
            row.push(r.cell(x));
        }
        rows.push(row);
        json_rows.push(json!({
            "t": r.num(sample.t),
            "amplitudes": amps.iter().map(|&z| r.complex(z)).collect::<Vec<_>>(),
            "predicted_theta": r.num(sample.predicted_theta),
            "predicted_phi": r.num(sample.predicted_phi),
            "residency_fidelity": r.num(sample.residency_fidelity),
            "phase_beta": r.num(sample.phase_beta),
        }));
    }
    Ok(Report {
        json: Value::Array(json_rows),
        table: Table { headers, rows },
        natural: Format::Csv,
    })
}

fn brach(solution: &TransferSolution, r: Rounder) -> Report {
    let field = solution.field;
    let json = json!({
        "field": {
            "theta": r.num(field.theta()),
            "phi": r.num(field.phi()),
            "omega": r.num(field.omega()),
        },
        "time": r.num(solution.time),
        "path_length": r.num(solution.path_length),
        "speed": r.num(solution.speed),
        "arc_angle": r.num(solution.arc_angle),
        "circle_radius": r.num(solution.circle_radius),
    });
    let headers = [
        "field_theta",
        "field_phi",
        "omega",
        "time",
        "path_length",
        "speed",
        "arc_angle",
        "circle_radius",
    ];
    let row = [
        field.theta(),
        field.phi(),
        field.omega(),
        solution.time,
        solution.path_length,
        solution.speed,
        solution.arc_angle,
        solution.circle_radius,
    ];
    Report {
        json,
        table: Table {
            headers: headers.map(String::from).to_vec(),
            rows: vec![row.iter().map(|&x| r.cell(x)).collect()],
        },
        natural: Format::Json,
    }
}

fn sweep(problem: &TransferProblem, grid: usize, r: Rounder) -> Result<Report, CliError> {
    let samples = sweep_tilt(problem, grid)?;
    let headers = ["theta_prime", "time", "speed", "path_length"]
        .map(String::from)
        .to_vec();
    let rows = samples
        .iter()
        .map(|x| {
            [x.theta_prime, x.time, x.speed, x.path_length]
                .iter()
                .map(|&v| r.cell(v))
                .collect()
        })
        .collect();
    let json = Value::Array(
        samples
            .iter()
            .map(|x| {
                json!({
                    "theta_prime": r.num(x.theta_prime),
                    "time": r.num(x.time),
                    "speed": r.num(x.speed),
                    "path_length": r.num(x.path_length),
                })
            })
            .collect(),
    );
    Ok(Report {
        json,
        table: Table { headers, rows },
        natural: Format::Csv,
    })
}
