//! Verification suites: published constants, oracle equivalence and optima.
//!
//! Each check records what it compares, the reference it came from, the
//! expected and measured values and the tolerance. A check can also be
//! *flagged*: a documented closed form disagrees with its oracle. Flags are
//! reported but do not fail the suite; the oracle value is the one used.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::channels::{channel_fidelity, one_pauli, two_pauli};
use crate::cloners::{
    apply_local_cloner, average_fidelity, full_unitary_clone_pairs, full_unitary_oracle, machine_fidelity,
    single_qubit_fidelity, MachinePreset,
};
use crate::correlations::{
    bell_diag_concurrence, bell_diag_concurrence_closed, bell_diag_discord_closed, concurrence_wootters, concurrence_x,
    discord_oracle_with, discord_x, werner_concurrence_closed, werner_discord_closed, OracleSettings,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::DensityOperator;
use crate::optimize::{grid_search_face, solve_constrained, verify_c_zero, Objective, OptimizationProblem};
use crate::random::{random_coefficients, random_pure, random_x_state, rng};
use crate::states::{as_x_state, bloch_decompose, pure_to_density, PureSchmidtState, WernerState};
use crate::sweep::{sweep_output, InputFamily, DEFAULT_GRID_POINTS};

/// Tolerance for comparisons against published, rounded values.
pub const PUBLISHED_TOLERANCE: f64 = 5e-3;
/// Tolerance for comparisons against exact closed forms.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-9;

const SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Constants,
    Oracles,
    Optima,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Constants => "constants",
            Suite::Oracles => "oracles",
            Suite::Optima => "optima",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constants" => Ok(Suite::Constants),
            "oracles" => Ok(Suite::Oracles),
            "optima" => Ok(Suite::Optima),
            "all" => Ok(Suite::All),
            other => {
                Err(Error::OutOfRange(format!("unknown suite '{other}' (expected constants, oracles, optima or all)")))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A closed form disagrees with its oracle; recorded, not a failure.
    Flagged,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Flagged => "FLAG",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub description: String,
    /// Where the expected value comes from.
    pub reference: String,
    pub machine: Option<MachinePreset>,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
}

impl Check {
    fn compare(
        name: &str,
        description: &str,
        reference: &str,
        machine: Option<MachinePreset>,
        expected: f64,
        actual: f64,
        tolerance: f64,
    ) -> Self {
        let ok = actual.is_finite() && (actual - expected).abs() <= tolerance;
        Self {
            name: name.to_string(),
            description: description.to_string(),
            reference: reference.to_string(),
            machine,
            expected,
            actual,
            tolerance,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        }
    }

    /// Passes when `actual ≤ bound` (`expected` holds the bound, deviation
    /// checks use `0` here and put the bound in `tolerance`).
    fn at_most(
        name: &str,
        description: &str,
        reference: &str,
        machine: Option<MachinePreset>,
        actual: f64,
        bound: f64,
    ) -> Self {
        Self::compare(name, description, reference, machine, 0.0, actual, bound)
    }

    fn truth(name: &str, description: &str, reference: &str, machine: Option<MachinePreset>, holds: bool) -> Self {
        Self::compare(name, description, reference, machine, 1.0, if holds { 1.0 } else { 0.0 }, 0.0)
    }

    /// Downgrades a failure to a flag.
    fn flag_on_mismatch(mut self) -> Self {
        if self.status == CheckStatus::Fail {
            self.status = CheckStatus::Flagged;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub machine: Option<MachinePreset>,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    /// True when no check failed; flags do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let scope = self.machine.map(|m| format!(" (machine {m})")).unwrap_or_default();
        let _ = writeln!(out, "verify {}{scope}", self.suite.name());
        for c in &self.checks {
            let _ = writeln!(out, "{} {}", c.status, c.name);
            let _ = writeln!(out, "     {} (tol {:.0e})", c.description, c.tolerance);
            let _ = writeln!(
                out,
                "     reference: {}; expected {:.9}, actual {:.9}, |diff| {:.3e}",
                c.reference,
                c.expected,
                c.actual,
                (c.actual - c.expected).abs()
            );
        }
        let _ = writeln!(
            out,
            "{} checks: {} passed, {} failed, {} flagged",
            self.checks.len(),
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::Flagged)
        );
        out
    }
}

/// Runs a suite. With `machine` set, only checks about that machine are
/// kept.
pub fn run_suite(suite: Suite, machine: Option<MachinePreset>, exec: Execution) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Constants | Suite::All) {
        checks.extend(constants()?);
    }
    if matches!(suite, Suite::Oracles | Suite::All) {
        checks.extend(oracles(exec)?);
    }
    if matches!(suite, Suite::Optima | Suite::All) {
        checks.extend(optima(exec)?);
    }
    if let Some(m) = machine {
        checks.retain(|c| c.machine == Some(m));
    }
    Ok(VerifyReport { suite, machine, checks })
}

fn alpha_grid(n: usize) -> impl Iterator<Item = PureSchmidtState> {
    (0..n).map(move |i| PureSchmidtState::from_alpha_sq(i as f64 / (n - 1) as f64).expect("grid in [0, 1]"))
}

fn constants() -> Result<Vec<Check>> {
    use MachinePreset::*;
    let mut checks = Vec::new();
    let bh = LocalBh.coefficients().expect("local preset");

    let mut r = rng(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let psi = random_pure(&mut r, 2);
        let b = crate::states::qubit_bloch_vector(&psi.projector())?;
        worst = worst.max((single_qubit_fidelity(&bh, b)? - 5.0 / 6.0).abs());
    }
    checks.push(Check::at_most(
        "local-bh-single-qubit",
        "local-bh single-qubit fidelity is 5/6 on 200 random pure states (max deviation)",
        "closed form 5/6",
        Some(LocalBh),
        worst,
        CLOSED_FORM_TOLERANCE,
    ));

    let avg_bh = average_fidelity(LocalBh)?;
    checks.push(Check::compare(
        "local-bh-average-exact",
        "local-bh average fidelity vs 67/108",
        "closed form 67/108",
        Some(LocalBh),
        67.0 / 108.0,
        avg_bh,
        CLOSED_FORM_TOLERANCE,
    ));
    checks.push(Check::compare(
        "local-bh-average-published",
        "local-bh average fidelity 67/108 vs 0.62",
        "published 0.62",
        Some(LocalBh),
        0.62,
        avg_bh,
        PUBLISHED_TOLERANCE,
    ));
    checks.push(Check::compare(
        "local-bh-midpoint",
        "local-bh fidelity at alpha^2 = 1/2 vs 21/36",
        "closed form 21/36",
        Some(LocalBh),
        21.0 / 36.0,
        machine_fidelity(LocalBh, &PureSchmidtState::from_alpha_sq(0.5)?)?,
        1e-12,
    ));

    let nonlocal: Vec<f64> = alpha_grid(101).map(|s| machine_fidelity(NonlocalBh, &s)).collect::<Result<_>>()?;
    let dev = nonlocal.iter().map(|f| (f - 0.7).abs()).fold(0.0, f64::max);
    checks.push(Check::at_most(
        "nonlocal-bh-constant",
        "nonlocal-bh fidelity is 0.7 on a 101-point alpha^2 grid (max deviation)",
        "published 0.7",
        Some(NonlocalBh),
        dev,
        CLOSED_FORM_TOLERANCE,
    ));

    let uni: Vec<f64> = alpha_grid(101).map(|s| machine_fidelity(Universal, &s)).collect::<Result<_>>()?;
    let mean = uni.iter().sum::<f64>() / uni.len() as f64;
    let variance = uni.iter().map(|f| (f - mean) * (f - mean)).sum::<f64>() / uni.len() as f64;
    checks.push(Check::compare(
        "universal-fidelity",
        "universal fidelity mean over a 101-point alpha^2 grid vs 9/16",
        "closed form 9/16",
        Some(Universal),
        9.0 / 16.0,
        mean,
        CLOSED_FORM_TOLERANCE,
    ));
    checks.push(Check::at_most(
        "universal-variance",
        "universal fidelity variance over a 101-point alpha^2 grid",
        "state independence",
        Some(Universal),
        variance,
        1e-20,
    ));

    let avg_one = average_fidelity(OnePauliLike)?;
    checks.push(Check::compare(
        "one-pauli-like-average-exact",
        "one-pauli-like average fidelity vs 2/3",
        "closed form 2/3",
        Some(OnePauliLike),
        2.0 / 3.0,
        avg_one,
        CLOSED_FORM_TOLERANCE,
    ));
    checks.push(Check::compare(
        "one-pauli-like-average-published",
        "one-pauli-like average fidelity 2/3 vs 0.66 (printed value is 2/3 truncated, 6.7e-3 away)",
        "published 0.66",
        Some(OnePauliLike),
        0.66,
        avg_one,
        PUBLISHED_TOLERANCE,
    ));

    let two = TwoPauliLike.coefficients().expect("local preset");
    let (a2, b2) = (two.a_abs().powi(2), two.b_abs().powi(2));
    let w = a2 + b2;
    let avg_two = average_fidelity(TwoPauliLike)?;
    checks.push(Check::compare(
        "two-pauli-like-average-exact",
        "two-pauli-like average fidelity vs w^2 - a^2(1 - 4b^2)/3",
        "closed form",
        Some(TwoPauliLike),
        w * w - a2 * (1.0 - 4.0 * b2) / 3.0,
        avg_two,
        CLOSED_FORM_TOLERANCE,
    ));
    checks.push(Check::compare(
        "two-pauli-like-average-published",
        "two-pauli-like average fidelity vs 0.604",
        "published 0.604",
        Some(TwoPauliLike),
        0.604,
        avg_two,
        PUBLISHED_TOLERANCE,
    ));
    checks.push(Check::compare(
        "two-pauli-like-fidelity-at-zero",
        "two-pauli-like fidelity at alpha = 0 vs 5.205/8",
        "published 5.205/8",
        Some(TwoPauliLike),
        5.205 / 8.0,
        machine_fidelity(TwoPauliLike, &PureSchmidtState::from_alpha_sq(0.0)?)?,
        PUBLISHED_TOLERANCE,
    ));

    // Output entries of the two-pauli-like machine on alpha|00> + beta|11>.
    let at_zero = as_x_state(&apply_local_cloner(&two, &pure_to_density(&PureSchmidtState::from_alpha_sq(0.0)?))?)?;
    let at_half_state = PureSchmidtState::from_alpha_sq(0.5)?;
    let at_half = as_x_state(&apply_local_cloner(&two, &pure_to_density(&at_half_state))?)?;
    let entries = [
        ("two-pauli-like-entry-0.6510", "rho_11 coefficient of alpha^2 (rho_44 at alpha = 0)", 0.6510, at_zero.rho44),
        (
            "two-pauli-like-entry-0.0337",
            "rho_11 coefficient of beta^2 (rho_11 at alpha = 0); unit trace forces b^4 = 0.0373",
            0.0337,
            at_zero.rho11,
        ),
        ("two-pauli-like-entry-0.1558", "|01><01| and |10><10| weight", 0.1558, at_zero.rho22),
        (
            "two-pauli-like-entry-0.4741",
            "coherence coefficient rho_14 / (alpha beta)",
            0.4741,
            at_half.rho14 / (at_half_state.alpha() * at_half_state.beta()),
        ),
    ];
    for (name, desc, published, actual) in entries {
        checks.push(Check::compare(
            name,
            desc,
            &format!("published {published}"),
            Some(TwoPauliLike),
            published,
            actual,
            5e-4,
        ));
    }

    // The state-dependent machines reproduce their Pauli-channel fidelities.
    let s_two = (8.0 * w * w - 3.0) / 5.0;
    let mut dev_two: f64 = 0.0;
    let mut dev_one: f64 = 0.0;
    for s in alpha_grid(101) {
        dev_two = dev_two.max((machine_fidelity(TwoPauliLike, &s)? - channel_fidelity(&two_pauli(s_two)?, &s)?).abs());
        dev_one = dev_one.max((machine_fidelity(OnePauliLike, &s)? - channel_fidelity(&one_pauli(0.25)?, &s)?).abs());
    }
    checks.push(Check::at_most(
        "two-pauli-like-vs-channel",
        "two-pauli-like fidelity equals the two-Pauli channel fidelity at s = (8w^2 - 3)/5",
        "channel closed form",
        Some(TwoPauliLike),
        dev_two,
        1e-12,
    ));
    checks.push(Check::at_most(
        "one-pauli-like-vs-channel",
        "one-pauli-like fidelity equals the one-Pauli channel fidelity at s = 1/4",
        "channel closed form",
        Some(OnePauliLike),
        dev_one,
        1e-12,
    ));
    Ok(checks)
}

const FIGURE_MACHINES: [MachinePreset; 4] =
    [MachinePreset::LocalBh, MachinePreset::NonlocalBh, MachinePreset::TwoPauliLike, MachinePreset::Universal];

fn oracles(exec: Execution) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let local_presets: Vec<MachinePreset> =
        MachinePreset::ALL.into_iter().filter(|p| p.coefficients().is_some()).collect();

    // Bloch-space cloner vs explicit six-qubit unitary.
    for &preset in &local_presets {
        let m = preset.coefficients().expect("local preset");
        let mut r = rng(SEED ^ preset as u64);
        let mut worst: f64 = 0.0;
        let mut asym: f64 = 0.0;
        for _ in 0..25 {
            let s = crate::random::random_schmidt(&mut r);
            let fast = apply_local_cloner(&m, &pure_to_density(&s))?;
            worst = worst.max(fast.matrix().max_abs_diff(full_unitary_oracle(&m, &s)?.matrix()));
            let (p1, p2) = full_unitary_clone_pairs(&m, &s)?;
            asym = asym.max(p1.matrix().max_abs_diff(p2.matrix()));
        }
        checks.push(Check::at_most(
            &format!("{preset}-bloch-vs-unitary"),
            &format!("{preset}: Bloch-map output vs six-qubit unitary on 25 random alpha (max entry deviation)"),
            "full-unitary oracle",
            Some(preset),
            worst,
            1e-10,
        ));
        checks.push(Check::at_most(
            &format!("{preset}-clone-pair-symmetry"),
            &format!("{preset}: both clone pairs of the unitary output coincide"),
            "symmetric machine",
            Some(preset),
            asym,
            1e-12,
        ));
    }
    let mut r = rng(SEED + 1);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let m = random_coefficients(&mut r);
        let s = crate::random::random_schmidt(&mut r);
        let fast = apply_local_cloner(&m, &pure_to_density(&s))?;
        worst = worst.max(fast.matrix().max_abs_diff(full_unitary_oracle(&m, &s)?.matrix()));
    }
    checks.push(Check::at_most(
        "random-bloch-vs-unitary",
        "Bloch-map output vs six-qubit unitary on 100 random (coefficients, alpha) pairs",
        "full-unitary oracle",
        None,
        worst,
        1e-10,
    ));

    // Closed-form correlations vs brute force on random X-states.
    let mut r = rng(SEED + 2);
    let xs: Vec<_> = (0..500).map(|_| random_x_state(&mut r)).collect();
    let conc_dev = exec
        .map_slice(&xs, |x| concurrence_wootters(&x.to_density()).map(|c| (c - concurrence_x(x)).abs()))
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    checks.push(Check::at_most(
        "x-state-concurrence",
        "X-state concurrence formula vs Wootters eigenvalues on 500 random X-states",
        "Wootters oracle",
        None,
        conc_dev,
        1e-10,
    ));
    let settings = OracleSettings { execution: Execution::Sequential, ..OracleSettings::default() };
    let discord_dev = |states: &[DensityOperator]| -> Result<f64> {
        Ok(exec
            .map_slice(states, |rho| -> Result<f64> {
                let closed = discord_x(&as_x_state(rho)?).0;
                Ok((discord_oracle_with(rho, &settings)? - closed).abs())
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max))
    };
    let random_states: Vec<DensityOperator> = xs.iter().take(200).map(|x| x.to_density()).collect();
    checks.push(Check::at_most(
        "x-state-discord",
        "X-state discord formula vs projective-measurement minimization on 200 random X-states",
        "measurement oracle",
        None,
        discord_dev(&random_states)?,
        1e-5,
    ));
    for preset in MachinePreset::ALL {
        let machine = preset.machine();
        for family in [InputFamily::Pure, InputFamily::Werner] {
            let n = DEFAULT_GRID_POINTS;
            let outputs: Vec<DensityOperator> =
                (0..n).map(|i| sweep_output(&machine, family, family.grid_value(i, n))).collect::<Result<_>>()?;
            checks.push(Check::at_most(
                &format!("{preset}-{family}-sweep-discord"),
                &format!("{preset}: discord formula vs measurement oracle on the {n}-point {family} sweep"),
                "measurement oracle",
                Some(preset),
                discord_dev(&outputs)?,
                1e-5,
            ));
        }
    }

    // Werner-input closed forms vs the general routes.
    let xs_grid: Vec<f64> =
        (0..DEFAULT_GRID_POINTS).map(|i| InputFamily::Werner.grid_value(i, DEFAULT_GRID_POINTS)).collect();
    for preset in FIGURE_MACHINES {
        let machine = preset.machine();
        let mut discord_diff: f64 = 0.0;
        let mut literal_diff: f64 = 0.0;
        let mut exact_diff: f64 = 0.0;
        for &x in &xs_grid {
            let out = machine.apply(&crate::states::werner_to_density(&WernerState::new(x)?))?;
            let t = bloch_decompose(&out)?.correlation;
            let (t1, t3) = (t[0][0], t[2][2]);
            let xstate = as_x_state(&out)?;
            let wootters = concurrence_wootters(&out)?;
            let isotropic = matches!(preset, MachinePreset::LocalBh | MachinePreset::NonlocalBh);
            let (closed_discord, literal) = if isotropic {
                (werner_discord_closed(t1)?, werner_concurrence_closed(t1))
            } else {
                (bell_diag_discord_closed(t1, t3)?, bell_diag_concurrence_closed(t1, t3))
            };
            discord_diff = discord_diff.max((closed_discord - discord_x(&xstate).0).abs());
            literal_diff = literal_diff.max((literal - wootters).abs());
            if !isotropic {
                exact_diff = exact_diff.max((bell_diag_concurrence(t1, t3)? - wootters).abs());
            }
        }
        let form = if matches!(preset, MachinePreset::LocalBh | MachinePreset::NonlocalBh) {
            "isotropic Werner"
        } else {
            "anisotropic Bell-diagonal"
        };
        checks.push(Check::at_most(
            &format!("{preset}-werner-discord-closed"),
            &format!("{preset}: {form} discord closed form vs X-state formula on the Werner sweep"),
            "X-state formula",
            Some(preset),
            discord_diff,
            1e-10,
        ));
        checks.push(
            Check::at_most(
                &format!("{preset}-werner-concurrence-literal"),
                &format!(
                    "{preset}: {form} concurrence expression evaluated literally vs Wootters on the Werner sweep \
                     (a FLAG marks a mistyped form; the Wootters value is used)"
                ),
                "Wootters oracle",
                Some(preset),
                literal_diff,
                1e-10,
            )
            .flag_on_mismatch(),
        );
        if !matches!(preset, MachinePreset::LocalBh | MachinePreset::NonlocalBh) {
            checks.push(Check::at_most(
                &format!("{preset}-werner-concurrence-exact"),
                &format!("{preset}: exact Bell-diagonal concurrence max(0, 2 lambda_max - 1) vs Wootters"),
                "Wootters oracle",
                Some(preset),
                exact_diff,
                1e-10,
            ));
        }
    }

    let bell = crate::states::XState::new(0.5, 0.0, 0.0, 0.5, 0.5, 0.0)?.to_density();
    checks.push(Check::compare(
        "bell-discord",
        "discord of a Bell state via the measurement oracle",
        "maximally entangled",
        None,
        1.0,
        discord_oracle_with(&bell, &settings)?,
        1e-7,
    ));
    checks.push(Check::compare(
        "mixed-discord",
        "discord of I/4 via the measurement oracle",
        "product state",
        None,
        0.0,
        discord_oracle_with(&DensityOperator::maximally_mixed(4), &settings)?,
        1e-9,
    ));
    Ok(checks)
}

fn optima(exec: Execution) -> Result<Vec<Check>> {
    use MachinePreset::{TwoPauliLike, Universal};
    let mut checks = Vec::new();

    let a = solve_constrained(&OptimizationProblem::universal())?;
    checks.push(Check::compare(
        "universal-a-squared",
        "optimal a^2 for the fidelity problem",
        "published |a| = 1/sqrt(2)",
        Some(Universal),
        0.5,
        a.u_star,
        1e-12,
    ));
    checks.push(Check::compare(
        "universal-b-squared",
        "optimal b^2 for the fidelity problem",
        "published |b| = 1/2",
        Some(Universal),
        0.25,
        a.v_star,
        1e-12,
    ));
    checks.push(Check::compare(
        "universal-objective",
        "optimal fidelity",
        "closed form 9/16",
        Some(Universal),
        9.0 / 16.0,
        a.objective_value,
        1e-12,
    ));
    let rejected = a.candidates.iter().find(|c| c.v > a.v_star).map(|c| c.objective_value).unwrap_or(f64::NAN);
    checks.push(Check::compare(
        "universal-rejected-root",
        "fidelity at the rejected root (a, b^2) = (0, 1/2)",
        "closed form 1/4",
        Some(Universal),
        0.25,
        rejected,
        1e-12,
    ));
    let residual = a.constraint_residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    checks.push(Check::at_most(
        "universal-residuals",
        "constraint residuals at the fidelity optimum",
        "exact roots",
        Some(Universal),
        residual,
        1e-12,
    ));
    let grid = grid_search_face(&OptimizationProblem::universal(), 1e-4, 1e-6, exec)?;
    checks.push(Check::compare(
        "universal-grid",
        "grid search (step 1e-4) optimum objective vs closed form",
        "grid search",
        Some(Universal),
        a.objective_value,
        grid.objective_value,
        1e-3,
    ));
    let cz = verify_c_zero(&OptimizationProblem::universal(), 5e-3, exec)?;
    checks.push(Check::truth(
        "universal-c-zero",
        "full-simplex grid (step 5e-3) maximum lies on the c = 0 face",
        "published |c| = 0",
        Some(Universal),
        cz.holds,
    ));
    let zero_mu = solve_constrained(&OptimizationProblem::new(Objective::FidelitySq, 0.0)?)?;
    checks.push(Check::compare(
        "universal-mu-zero",
        "optimal fidelity with the overlap parameter forced to 0",
        "coupling forces a^2 + b^2 = 1/2",
        Some(Universal),
        0.25,
        zero_mu.objective_value,
        1e-12,
    ));
    let preset_fidelity = machine_fidelity(Universal, &PureSchmidtState::from_alpha_sq(0.3)?)?;
    checks.push(Check::compare(
        "universal-preset-consistency",
        "universal preset fidelity equals the optimizer's objective",
        "optimizer",
        Some(Universal),
        a.objective_value,
        preset_fidelity,
        1e-14,
    ));

    let b = solve_constrained(&OptimizationProblem::two_pauli_like())?;
    let sqrt79 = 79f64.sqrt();
    checks.push(Check::compare(
        "two-pauli-like-a-squared",
        "optimal a^2 for the s-parameter problem",
        "published (4 + sqrt 79)/21",
        Some(TwoPauliLike),
        (4.0 + sqrt79) / 21.0,
        b.u_star,
        CLOSED_FORM_TOLERANCE,
    ));
    checks.push(Check::compare(
        "two-pauli-like-b-squared",
        "optimal b^2 for the s-parameter problem",
        "published (17 - sqrt 79)/42",
        Some(TwoPauliLike),
        (17.0 - sqrt79) / 42.0,
        b.v_star,
        CLOSED_FORM_TOLERANCE,
    ));
    let preset = TwoPauliLike.coefficients().expect("local preset");
    checks.push(Check::compare(
        "two-pauli-like-preset",
        "preset a^2 equals the optimizer's a^2",
        "optimizer",
        Some(TwoPauliLike),
        b.u_star,
        preset.a_abs().powi(2),
        1e-12,
    ));
    let s = b.objective_value;
    checks.push(Check::compare(
        "two-pauli-like-3+5s",
        "3 + 5s at the optimum vs 5.205",
        "published 5.205",
        Some(TwoPauliLike),
        5.205,
        3.0 + 5.0 * s,
        PUBLISHED_TOLERANCE,
    ));
    checks.push(Check::compare(
        "two-pauli-like-4(1-s)",
        "4(1 - s) at the optimum vs 2.236",
        "published 2.236",
        Some(TwoPauliLike),
        2.236,
        4.0 * (1.0 - s),
        PUBLISHED_TOLERANCE,
    ));
    let residual = b.constraint_residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    checks.push(Check::at_most(
        "two-pauli-like-residuals",
        "constraint residuals at the s-parameter optimum",
        "exact roots",
        Some(TwoPauliLike),
        residual,
        1e-12,
    ));
    let grid = grid_search_face(&OptimizationProblem::two_pauli_like(), 1e-4, 1e-6, exec)?;
    checks.push(Check::compare(
        "two-pauli-like-grid",
        "grid search (step 1e-4) optimum objective vs closed form",
        "grid search",
        Some(TwoPauliLike),
        s,
        grid.objective_value,
        1e-3,
    ));
    let cz = verify_c_zero(&OptimizationProblem::two_pauli_like(), 5e-3, exec)?;
    checks.push(Check::truth(
        "two-pauli-like-c-zero",
        "full-simplex grid (step 5e-3) maximum lies on the c = 0 face",
        "published |c| = 0",
        Some(TwoPauliLike),
        cz.holds,
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optima_suite_passes() {
        let report = run_suite(Suite::Optima, None, Execution::Sequential).unwrap();
        assert!(report.passed(), "{}", report.render());
        assert!(report.checks.len() >= 15);
    }

    #[test]
    fn constants_report_lists_published_comparison() {
        let report = run_suite(Suite::Constants, None, Execution::Sequential).unwrap();
        let text = report.render();
        assert!(text.contains("local-bh average fidelity 67/108 vs 0.62 (tol 5e-3)"));
        let failed: Vec<&str> =
            report.checks.iter().filter(|c| c.status == CheckStatus::Fail).map(|c| c.name.as_str()).collect();
        // Two printed values cannot be matched: see the check descriptions.
        assert_eq!(failed, ["one-pauli-like-average-published", "two-pauli-like-entry-0.0337"]);
    }

    #[test]
    fn machine_filter_keeps_only_that_machine() {
        let report = run_suite(Suite::Optima, Some(MachinePreset::Universal), Execution::Sequential).unwrap();
        assert!(!report.checks.is_empty());
        assert!(report.checks.iter().all(|c| c.machine == Some(MachinePreset::Universal)));
        let none = run_suite(Suite::Optima, Some(MachinePreset::LocalBh), Execution::Sequential).unwrap();
        assert!(none.checks.is_empty() && none.passed());
    }

    #[test]
    fn suite_names_parse() {
        for s in [Suite::Constants, Suite::Oracles, Suite::Optima, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
