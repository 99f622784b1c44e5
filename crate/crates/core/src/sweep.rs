//! Parameter sweeps over pure Schmidt and Werner inputs, and their CSV form.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;

use crate::cloners::{machine_fidelity, Machine, MachinePreset};
use crate::correlations::{correlation_report, DiscordBranch};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{DensityOperator, PureState};
use crate::states::{as_x_state, pure_to_density, werner_to_density, PureSchmidtState, WernerState};

pub const DEFAULT_GRID_POINTS: usize = 201;

pub const CSV_HEADER: &str = "parameter,fidelity,concurrence,eof,discord,discord_branch";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InputFamily {
    /// `α|00⟩ + β|11⟩`, parameter `α² ∈ [0, 1]`.
    Pure,
    /// Werner states, parameter `x ∈ [−1, 1]`.
    Werner,
}

impl InputFamily {
    pub fn name(self) -> &'static str {
        match self {
            InputFamily::Pure => "pure",
            InputFamily::Werner => "werner",
        }
    }

    /// The `i`-th of `n` evenly spaced parameter values, endpoints included.
    pub fn grid_value(self, i: usize, n: usize) -> f64 {
        let f = i as f64 / (n - 1) as f64;
        match self {
            InputFamily::Pure => f,
            InputFamily::Werner => -1.0 + 2.0 * f,
        }
    }
}

impl fmt::Display for InputFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InputFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure" => Ok(InputFamily::Pure),
            "werner" => Ok(InputFamily::Werner),
            other => Err(Error::OutOfRange(format!("unknown input family '{other}' (expected pure or werner)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub machine: MachinePreset,
    pub family: InputFamily,
    pub grid_points: usize,
}

impl SweepConfig {
    pub fn new(machine: MachinePreset, family: InputFamily, grid_points: usize) -> Result<Self> {
        if grid_points < 2 {
            return Err(Error::OutOfRange(format!("a sweep needs at least 2 grid points, got {grid_points}")));
        }
        Ok(Self { machine, family, grid_points })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub parameter: f64,
    pub fidelity: f64,
    pub concurrence: f64,
    pub eof: f64,
    pub discord: f64,
    pub discord_branch: DiscordBranch,
}

/// Weights of a state on the Bell basis `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻`.
pub fn bell_weights(rho: &DensityOperator) -> Result<[f64; 4]> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit state, got dimension {}", rho.dim())));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |v: [f64; 4]| v.map(|x| Complex64::new(x * s, 0.0)).to_vec();
    let basis = [c([1.0, 0.0, 0.0, 1.0]), c([1.0, 0.0, 0.0, -1.0]), c([0.0, 1.0, 1.0, 0.0]), c([0.0, 1.0, -1.0, 0.0])];
    Ok(basis.map(|v| {
        let psi = PureState::new(v).expect("Bell vectors are normalized");
        let rv = rho.matrix().apply(psi.amplitudes());
        psi.amplitudes().iter().zip(&rv).map(|(a, b)| (a.conj() * b).re).sum::<f64>().max(0.0)
    }))
}

/// Fidelity between a Werner input and the machine output. Both are
/// diagonal in the Bell basis, so the Uhlmann fidelity reduces to
/// `(Σ √(pᵢ qᵢ))²` over the Bell weights.
pub fn werner_fidelity(machine: &Machine, w: &WernerState) -> Result<f64> {
    let input = werner_to_density(w);
    let output = machine.apply(&input)?;
    let p = bell_weights(&input)?;
    let q = bell_weights(&output)?;
    let overlap: f64 = p.iter().zip(&q).map(|(a, b)| (a * b).sqrt()).sum();
    Ok((overlap * overlap).clamp(0.0, 1.0))
}

/// Machine output for one grid point.
pub fn sweep_output(machine: &Machine, family: InputFamily, parameter: f64) -> Result<DensityOperator> {
    match family {
        InputFamily::Pure => machine.apply(&pure_to_density(&PureSchmidtState::from_alpha_sq(parameter)?)),
        InputFamily::Werner => machine.apply(&werner_to_density(&WernerState::new(parameter)?)),
    }
}

fn sweep_row(machine: &Machine, family: InputFamily, parameter: f64) -> Result<CurveRow> {
    let output = sweep_output(machine, family, parameter)?;
    let report = correlation_report(&as_x_state(&output)?);
    let fidelity = match family {
        InputFamily::Pure => machine_fidelity(*machine, &PureSchmidtState::from_alpha_sq(parameter)?)?,
        InputFamily::Werner => werner_fidelity(machine, &WernerState::new(parameter)?)?,
    };
    Ok(CurveRow {
        parameter,
        fidelity,
        concurrence: report.concurrence,
        eof: report.eof,
        discord: report.discord,
        discord_branch: report.branch,
    })
}

/// One row per grid point, in parameter order.
pub fn run_sweep(config: &SweepConfig, exec: Execution) -> Result<Vec<CurveRow>> {
    let machine = config.machine.machine();
    let n = config.grid_points;
    exec.map_indices(n, |i| sweep_row(&machine, config.family, config.family.grid_value(i, n))).into_iter().collect()
}

/// `printf("%.9g")`-style formatting: 9 significant digits, trailing zeros
/// removed, exponent form outside `[1e-5, 1e9)`, and `-0` printed as `0`.
pub fn format_g9(x: f64) -> String {
    const DIGITS: i32 = 9;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    let out = if !(-5..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    } else {
        trim(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x))
    };
    if out == "-0" {
        "0".to_string()
    } else {
        out
    }
}

pub fn write_csv<W: Write>(rows: &[CurveRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_g9(r.parameter),
            format_g9(r.fidelity),
            format_g9(r.concurrence),
            format_g9(r.eof),
            format_g9(r.discord),
            r.discord_branch
        )?;
    }
    out.flush()
}
