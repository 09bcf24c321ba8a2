//! Cooperation indicators.
//!
//! The central quantity is the cooperation gap N(gamma): the
//! strategy-space integral of the Nash-gap advantage of the
//! quantum-quantum profile over the defect-defect profile,
//!
//! ```text
//! N(gamma) = pi^2/16 [ (1 + 3 cos 2 gamma)(a - b) + (5 - cos 2 gamma)(c - d) ]
//! ```
//!
//! Its integral over gamma in [0, pi/2] collapses to a pure payoff
//! expression, `n_value = pi^3/32 [a - b + 5(c - d)]`, the primary
//! cooperation indicator, and its zero `gamma_star` marks the
//! entanglement at which the quantum equilibrium's advantage takes over.
//! Both have independent numerical routes (quadrature, bisection) used
//! for cross-validation. The classical baselines `delta_lower` and
//! `delta_star` are repeated-game bounds on the discount factor.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::equilibria::{gamma1_barrier, gamma2_barrier, Barrier, StrategyGrid, DEFAULT_TOL_GAMMA};
use crate::error::{Error, Result};
use crate::payoff::PayoffMatrix;
use crate::protocol::{game_payoff, Entanglement, StrategyParams};
use crate::quadrature::GaussLegendre;

/// Nodes per axis for the strategy-space double integral.
pub const GAP_QUADRATURE_NODES: usize = 64;
/// Nodes for integrals along the gamma axis.
pub const GAMMA_QUADRATURE_NODES: usize = 128;

/// The six cooperation indicators of one game.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IndicatorSet {
    pub delta_lower: f64,
    pub delta_star: f64,
    pub gamma2: Barrier,
    pub gamma1: Barrier,
    /// Zero of the cooperation gap; `None` when the gap has no zero on
    /// [0, pi/2] (cannot happen for a valid dilemma, but the field keeps
    /// the case explicit rather than clamped).
    pub gamma_star: Option<f64>,
    pub n_value: f64,
}

/// Standard repeated-game lower bound on discount factors,
/// `(b - c) / (b - d)`.
pub fn delta_lower(payoff: &PayoffMatrix) -> f64 {
    (payoff.b() - payoff.c()) / (payoff.b() - payoff.d())
}

/// Sucker's-payoff-adjusted bound, `(b - a - c + d) / (b - a)`.
pub fn delta_star(payoff: &PayoffMatrix) -> f64 {
    (payoff.b() - payoff.a() - payoff.c() + payoff.d()) / (payoff.b() - payoff.a())
}

/// Closed form of the cooperation gap N(gamma).
pub fn cooperation_gap(payoff: &PayoffMatrix, gamma: Entanglement) -> f64 {
    let cos2g = (2.0 * gamma.gamma()).cos();
    let ab = payoff.a() - payoff.b();
    let cd = payoff.c() - payoff.d();
    PI * PI / 16.0 * ((1.0 + 3.0 * cos2g) * ab + (5.0 - cos2g) * cd)
}

/// The cooperation gap evaluated from its definition: the double
/// integral over deviations (theta, phi) of
/// `[$_A(Q,Q) - $_A(U,Q)] - [$_A(D,D) - $_A(U,D)]`,
/// by Gauss-Legendre quadrature with `nodes` points per axis.
///
/// Agrees with [`cooperation_gap`] to machine precision; kept as an
/// independent route for cross-validation.
pub fn cooperation_gap_quadrature(payoff: &PayoffMatrix, gamma: Entanglement, nodes: usize) -> f64 {
    let rule = GaussLegendre::new(nodes);
    let q = StrategyParams::QUANTUM;
    let d = StrategyParams::DEFECT;
    let at_qq = game_payoff(payoff, q, q, gamma).payoff_a;
    let at_dd = game_payoff(payoff, d, d, gamma).payoff_a;
    rule.integrate(0.0, PI, |theta| {
        rule.integrate(0.0, FRAC_PI_2, |phi| {
            let dev = StrategyParams::new(theta, phi).expect("quadrature node in domain");
            let vs_q = game_payoff(payoff, dev, q, gamma).payoff_a;
            let vs_d = game_payoff(payoff, dev, d, gamma).payoff_a;
            (at_qq - vs_q) - (at_dd - vs_d)
        })
    })
}

/// The integrated indicator `pi^3/32 [a - b + 5(c - d)]`, the gamma
/// integral of the cooperation gap. Larger values predict more
/// cooperation.
pub fn n_value(payoff: &PayoffMatrix) -> f64 {
    PI.powi(3) / 32.0 * (payoff.a() - payoff.b() + 5.0 * (payoff.c() - payoff.d()))
}

/// The zero of the cooperation gap:
/// `gamma_star = pi/2 - 1/2 arccos((a - b + 5(c - d)) / (3(a - b) - c + d))`.
///
/// Errors with [`Error::NoGapRoot`] when the arccos argument leaves
/// [-1, 1], i.e. the gap has no zero on [0, pi/2]; the error carries the
/// gap's constant sign. For matrices satisfying the dilemma inequalities
/// the root always exists.
pub fn gamma_star(payoff: &PayoffMatrix) -> Result<Entanglement> {
    let ab = payoff.a() - payoff.b();
    let cd = payoff.c() - payoff.d();
    let x = (ab + 5.0 * cd) / (3.0 * ab - cd);
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::NoGapRoot {
            sign: cooperation_gap(payoff, Entanglement::ZERO).signum(),
        });
    }
    let gamma = (FRAC_PI_2 - 0.5 * x.acos()).clamp(0.0, FRAC_PI_2);
    Entanglement::new(gamma)
}

/// All six indicators of one game. The barriers gamma1/gamma2 come from
/// bisection with the given deviation grid and tolerance; everything
/// else is closed-form.
pub fn indicator_set_with(
    payoff: &PayoffMatrix,
    grid: &StrategyGrid,
    tol_gamma: f64,
) -> Result<IndicatorSet> {
    let gamma1 = gamma1_barrier(payoff, grid, tol_gamma)?;
    let gamma2 = gamma2_barrier(payoff, grid, tol_gamma)?;
    let gamma_star = match gamma_star(payoff) {
        Ok(g) => Some(g.gamma()),
        Err(Error::NoGapRoot { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(IndicatorSet {
        delta_lower: delta_lower(payoff),
        delta_star: delta_star(payoff),
        gamma2,
        gamma1,
        gamma_star,
        n_value: n_value(payoff),
    })
}

/// [`indicator_set_with`] at the default grid and barrier tolerance.
pub fn indicator_set(payoff: &PayoffMatrix) -> Result<IndicatorSet> {
    indicator_set_with(payoff, &StrategyGrid::default(), DEFAULT_TOL_GAMMA)
}
