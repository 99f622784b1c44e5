//! Constrained maximization of cloner fidelity over the machine coefficients.
//!
//! Variables are `u = a²`, `v = b²` and `c²`, tied by `u + 2v + c² = 1`, plus
//! a coupling constraint between `w = u + v` and the ancilla-overlap
//! parameter `μ`. On the `c = 0` face the coupling is a quadratic in `v`,
//! which [`solve_constrained`] solves exactly. [`grid_search_face`] and
//! [`verify_c_zero`] check that answer by brute force.
//!
//! On the grids an exact equality cannot be hit, so a point counts as
//! feasible when some overlap `μ' ∈ [0, μ]` satisfies the coupling to within
//! the tolerance. This is the same as requiring
//! `−tol ≤ lhs(w) ≤ k·u·v·μ + tol`.

use crate::cloners::MU_MAX;
use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// `F = w²`, coupled by `2w − 1 = u·v·μ`.
    FidelitySq,
    /// `s = (8w² − 3)/5`, coupled by `(8w² − 28)/5 + 8w = 4·u·v·μ`.
    SParam,
}

impl Objective {
    pub fn value(self, w: f64) -> f64 {
        match self {
            Objective::FidelitySq => w * w,
            Objective::SParam => (8.0 * w * w - 3.0) / 5.0,
        }
    }

    /// Left-hand side of the coupling constraint.
    fn coupling_lhs(self, w: f64) -> f64 {
        match self {
            Objective::FidelitySq => 2.0 * w - 1.0,
            Objective::SParam => (8.0 * w * w - 28.0) / 5.0 + 8.0 * w,
        }
    }

    /// Factor `k` in `lhs = k·u·v·μ`.
    fn coupling_factor(self) -> f64 {
        match self {
            Objective::FidelitySq => 1.0,
            Objective::SParam => 4.0,
        }
    }

    /// Coefficients `(A, B, C)` of `A v² + B v + C = 0` after substituting
    /// `c = 0`, `u = 1 − 2v`, `w = 1 − v`.
    fn face_quadratic(self, mu: f64) -> (f64, f64, f64) {
        match self {
            Objective::FidelitySq => (2.0 * mu, -(2.0 + mu), 1.0),
            Objective::SParam => (8.0 + 40.0 * mu, -(56.0 + 20.0 * mu), 20.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationProblem {
    objective: Objective,
    mu: f64,
}

impl OptimizationProblem {
    pub fn new(objective: Objective, mu: f64) -> Result<Self> {
        if !(0.0..=MU_MAX).contains(&mu) {
            return Err(Error::OutOfRange(format!("mu must lie in [0, {MU_MAX}], got {mu}")));
        }
        Ok(Self { objective, mu })
    }

    /// Fidelity of the universal machine at the maximal overlap `μ = 4`.
    pub fn universal() -> Self {
        Self { objective: Objective::FidelitySq, mu: MU_MAX }
    }

    /// Channel parameter `s` of the two-Pauli-like machine at `μ = 4`.
    pub fn two_pauli_like() -> Self {
        Self { objective: Objective::SParam, mu: MU_MAX }
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `[u + 2v + c² − 1, lhs(w) − k·u·v·μ]`.
    pub fn residuals(&self, u: f64, v: f64, c_sq: f64) -> [f64; 2] {
        let w = u + v;
        [u + 2.0 * v + c_sq - 1.0, self.objective.coupling_lhs(w) - self.objective.coupling_factor() * u * v * self.mu]
    }

    /// True when some `μ' ∈ [0, μ]` satisfies the coupling within `tol`.
    pub fn relaxed_feasible(&self, u: f64, v: f64, tol: f64) -> bool {
        let lhs = self.objective.coupling_lhs(u + v);
        lhs >= -tol && lhs <= self.objective.coupling_factor() * u * v * self.mu + tol
    }
}

/// A root of the face quadratic and the objective there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub u: f64,
    pub v: f64,
    pub objective_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub u_star: f64,
    pub v_star: f64,
    pub c_star: f64,
    pub objective_value: f64,
    /// Normalization and coupling residuals at the optimum.
    pub constraint_residuals: Vec<f64>,
    /// Every feasible root, including the optimum.
    pub candidates: Vec<Candidate>,
}

/// Real roots of `a x² + b x + c = 0`, ascending, using the cancellation-free
/// form of the quadratic formula.
fn real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = if q == 0.0 { vec![0.0] } else { vec![q / a, c / q] };
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

/// Exact optimum on the `c = 0` face. Roots outside `v ∈ [0, 1/2]` are
/// discarded; among equal objective values the smallest `v` wins.
pub fn solve_constrained(problem: &OptimizationProblem) -> Result<OptimizationResult> {
    let (a, b, c) = problem.objective.face_quadratic(problem.mu);
    let candidates: Vec<Candidate> = real_roots(a, b, c)
        .into_iter()
        .filter(|v| (-1e-15..=0.5 + 1e-15).contains(v))
        .map(|v| {
            let v = v.clamp(0.0, 0.5);
            let u = 1.0 - 2.0 * v;
            Candidate { u, v, objective_value: problem.objective.value(u + v) }
        })
        .collect();
    let best = candidates
        .iter()
        .copied()
        .reduce(|x, y| if y.objective_value > x.objective_value { y } else { x })
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "no root of the coupling constraint lies in v in [0, 1/2] at mu = {}",
                problem.mu
            ))
        })?;
    Ok(OptimizationResult {
        u_star: best.u,
        v_star: best.v,
        c_star: 0.0,
        objective_value: best.objective_value,
        constraint_residuals: problem.residuals(best.u, best.v, 0.0).to_vec(),
        candidates,
    })
}

/// Best grid point found by a brute-force search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptimum {
    pub u: f64,
    pub v: f64,
    pub c_sq: f64,
    pub objective_value: f64,
    /// Number of grid points accepted as feasible.
    pub feasible_points: usize,
}

/// Picks the larger objective; ties go to the smaller `c²`, then smaller `v`.
fn better(x: GridOptimum, y: GridOptimum) -> GridOptimum {
    let key = |g: &GridOptimum| (g.objective_value, -g.c_sq, -g.v);
    let (kx, ky) = (key(&x), key(&y));
    let ord = kx.0.total_cmp(&ky.0).then(kx.1.total_cmp(&ky.1)).then(kx.2.total_cmp(&ky.2));
    let mut pick = if ord.is_lt() { y } else { x };
    pick.feasible_points = x.feasible_points + y.feasible_points;
    pick
}

/// Searches `v = j·step`, `u = 1 − 2v` on the `c = 0` face.
pub fn grid_search_face(problem: &OptimizationProblem, step: f64, tol: f64, exec: Execution) -> Result<GridOptimum> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::OutOfRange(format!("grid step must lie in (0, 1/2], got {step}")));
    }
    let n = (0.5 / step).round() as usize;
    exec.reduce_indices(
        n + 1,
        |j| {
            let v = (j as f64 * step).min(0.5);
            let u = 1.0 - 2.0 * v;
            problem.relaxed_feasible(u, v, tol).then(|| GridOptimum {
                u,
                v,
                c_sq: 0.0,
                objective_value: problem.objective.value(u + v),
                feasible_points: 1,
            })
        },
        better,
    )
    .ok_or_else(|| Error::Infeasible(format!("no feasible grid point at step {step}")))
}

/// Outcome of the full-simplex search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CZeroDiagnostics {
    /// True when the overall maximizer lies on the `c = 0` face.
    pub holds: bool,
    pub step: f64,
    pub overall: Option<GridOptimum>,
    pub face: Option<GridOptimum>,
}

/// Grid over `(a², b², c²)` on the simplex `a² + 2b² + c² = 1`, checking that
/// the objective maximum is attained with `c = 0`.
pub fn verify_c_zero(problem: &OptimizationProblem, step: f64, exec: Execution) -> Result<CZeroDiagnostics> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::OutOfRange(format!("grid step must lie in (0, 1/2], got {step}")));
    }
    const TOL: f64 = 1e-6;
    let n = (1.0 / step).round() as usize;
    let half = n / 2;
    // Integer indices keep c² = (n − i − 2j)·step exact on the face.
    let overall = exec.reduce_indices(
        (n + 1) * (half + 1),
        |k| {
            let (i, j) = (k / (half + 1), k % (half + 1));
            let rest = n as i64 - i as i64 - 2 * j as i64;
            if rest < 0 {
                return None;
            }
            let (u, v) = (i as f64 * step, j as f64 * step);
            problem.relaxed_feasible(u, v, TOL).then(|| GridOptimum {
                u,
                v,
                c_sq: rest as f64 * step,
                objective_value: problem.objective.value(u + v),
                feasible_points: 1,
            })
        },
        better,
    );
    let face = exec.reduce_indices(
        half + 1,
        |j| {
            let i = n - 2 * j;
            let (u, v) = (i as f64 * step, j as f64 * step);
            problem.relaxed_feasible(u, v, TOL).then(|| GridOptimum {
                u,
                v,
                c_sq: 0.0,
                objective_value: problem.objective.value(u + v),
                feasible_points: 1,
            })
        },
        better,
    );
    let holds = matches!(overall, Some(g) if g.c_sq == 0.0);
    Ok(CZeroDiagnostics { holds, step, overall, face })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_optimum_and_rejected_root() {
        let r = solve_constrained(&OptimizationProblem::universal()).unwrap();
        assert!((r.u_star - 0.5).abs() < 1e-15 && (r.v_star - 0.25).abs() < 1e-15);
        assert!((r.objective_value - 9.0 / 16.0).abs() < 1e-15);
        assert_eq!(r.candidates.len(), 2);
        let rejected = r.candidates.iter().find(|c| c.v > 0.3).unwrap();
        assert!(rejected.u.abs() < 1e-15 && (rejected.objective_value - 0.25).abs() < 1e-15);
        assert!(r.constraint_residuals.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn two_pauli_like_optimum() {
        let r = solve_constrained(&OptimizationProblem::two_pauli_like()).unwrap();
        let sqrt79 = 79f64.sqrt();
        assert!((r.u_star - (4.0 + sqrt79) / 21.0).abs() < 1e-12);
        assert!((r.v_star - (17.0 - sqrt79) / 42.0).abs() < 1e-12);
        assert!((r.objective_value - 0.441_641_4).abs() < 1e-7);
        assert_eq!(r.candidates.len(), 1);
        assert!(r.constraint_residuals.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn vanishing_overlap_forces_quarter() {
        let p = OptimizationProblem::new(Objective::FidelitySq, 0.0).unwrap();
        let r = solve_constrained(&p).unwrap();
        assert!((r.v_star - 0.5).abs() < 1e-15);
        assert!((r.objective_value - 0.25).abs() < 1e-15);
        let g = verify_c_zero(&p, 5e-3, Execution::Sequential).unwrap();
        assert!(g.overall.unwrap().objective_value <= 0.25 + 1e-12);
    }

    #[test]
    fn grid_agrees_with_closed_form() {
        for p in [OptimizationProblem::universal(), OptimizationProblem::two_pauli_like()] {
            let exact = solve_constrained(&p).unwrap();
            let g = grid_search_face(&p, 1e-4, 1e-6, Execution::Sequential).unwrap();
            assert!((g.v - exact.v_star).abs() <= 1e-4 + 1e-12);
            assert!((g.objective_value - exact.objective_value).abs() <= 1e-3);
        }
    }

    #[test]
    fn maximum_on_c_zero_face() {
        for p in [OptimizationProblem::universal(), OptimizationProblem::two_pauli_like()] {
            let d = verify_c_zero(&p, 5e-3, Execution::Sequential).unwrap();
            assert!(d.holds, "{d:?}");
        }
    }

    #[test]
    fn validation() {
        assert!(OptimizationProblem::new(Objective::SParam, 4.5).is_err());
        assert!(OptimizationProblem::new(Objective::SParam, -0.1).is_err());
        assert!(grid_search_face(&OptimizationProblem::universal(), 0.0, 1e-6, Execution::Sequential).is_err());
    }

    #[test]
    fn quadratic_roots() {
        assert_eq!(real_roots(1.0, -3.0, 2.0), vec![1.0, 2.0]);
        assert_eq!(real_roots(0.0, -2.0, 1.0), vec![0.5]);
        assert!(real_roots(1.0, 0.0, 1.0).is_empty());
    }
}
