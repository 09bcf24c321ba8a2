//! Best-response search over the strategy manifold, Nash and dominance
//! certification, and the entanglement barriers at which the
//! defect-defect equilibrium dissolves (gamma1) and the quantum-quantum
//! equilibrium appears (gamma2).

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kron, mat4_vec, Mat2, Mat4, Vec4, ONE, ZERO};
use crate::payoff::PayoffMatrix;
use crate::protocol::{
    disentangler, entangler, game_payoff, strategy_matrix, Entanglement, StrategyMatrix,
    StrategyParams,
};
use crate::roots::bisect_predicate;

/// Unilateral-improvement tolerance for Nash certification, in game units.
pub const DEFAULT_NASH_TOL: f64 = 1e-6;
/// Bracket width at which barrier bisection stops, in radians.
pub const DEFAULT_TOL_GAMMA: f64 = 1e-5;
/// Refinement stops once a full sweep improves the payoff by less than this.
const REFINE_TOL: f64 = 1e-10;
/// Evenly spaced gamma values probed before bisecting a barrier, to verify
/// that the Nash status flips exactly once.
const GUARD_POINTS: usize = 64;

/// Uniform grid over [0, pi] x [0, pi/2], endpoints included.
///
/// Strategy matrices are precomputed once so deviation scans do not pay
/// for trigonometry per evaluation.
#[derive(Debug, Clone)]
pub struct StrategyGrid {
    n_theta: usize,
    n_phi: usize,
    points: Vec<StrategyParams>,
    matrices: Vec<StrategyMatrix>,
}

impl StrategyGrid {
    /// 1-degree spacing in both angles.
    pub const DEFAULT_N_THETA: usize = 181;
    pub const DEFAULT_N_PHI: usize = 91;

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 {
            return Err(Error::ParameterRange {
                name: "n_theta",
                value: n_theta as f64,
                min: 2.0,
                max: f64::INFINITY,
            });
        }
        if n_phi < 2 {
            return Err(Error::ParameterRange {
                name: "n_phi",
                value: n_phi as f64,
                min: 2.0,
                max: f64::INFINITY,
            });
        }
        let mut points = Vec::with_capacity(n_theta * n_phi);
        for i in 0..n_theta {
            let theta = std::f64::consts::PI * i as f64 / (n_theta - 1) as f64;
            for j in 0..n_phi {
                let phi = FRAC_PI_2 * j as f64 / (n_phi - 1) as f64;
                points.push(StrategyParams::new(theta, phi).expect("grid point in domain"));
            }
        }
        let matrices = points.iter().map(|&p| strategy_matrix(p)).collect();
        Ok(Self {
            n_theta,
            n_phi,
            points,
            matrices,
        })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn points(&self) -> &[StrategyParams] {
        &self.points
    }

    pub fn theta_step(&self) -> f64 {
        std::f64::consts::PI / (self.n_theta - 1) as f64
    }

    pub fn phi_step(&self) -> f64 {
        FRAC_PI_2 / (self.n_phi - 1) as f64
    }
}

impl Default for StrategyGrid {
    fn default() -> Self {
        Self::new(Self::DEFAULT_N_THETA, Self::DEFAULT_N_PHI).expect("default grid sizes")
    }
}

/// The property a certificate testifies about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquilibriumKind {
    Nash,
    Dominant,
}

/// Outcome of a deviation scan for one profile.
///
/// `epsilon` is the largest unilateral improvement found over all tested
/// deviations; a value at or below the caller's tolerance certifies the
/// property at grid-plus-refinement resolution.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EquilibriumCertificate {
    pub profile: (StrategyParams, StrategyParams),
    pub kind: EquilibriumKind,
    pub epsilon: f64,
    pub gamma: Entanglement,
    pub certified: bool,
}

/// Maximizer and value of a deviation scan.
#[derive(Debug, Clone, Copy)]
pub struct BestResponse {
    pub strategy: StrategyParams,
    pub payoff: f64,
}

/// Location of an entanglement barrier. When the Nash status never flips
/// on [0, pi/2], `gamma` holds the pi/2 sentinel and `crossed` is false.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Barrier {
    pub gamma: f64,
    pub crossed: bool,
}

/// Precomputed per-gamma state for repeated payoff evaluation.
struct GammaContext {
    psi0: Vec4,
    j_dagger: Mat4,
}

impl GammaContext {
    fn new(gamma: Entanglement) -> Self {
        let j = entangler(gamma);
        let initial: Vec4 = [ONE, ZERO, ZERO, ZERO];
        Self {
            psi0: mat4_vec(&j, &initial),
            j_dagger: disentangler(gamma),
        }
    }

    /// Row-player payoff of (ua, ub) through the full pipeline.
    fn payoff_a(&self, payoff: &PayoffMatrix, ua: &Mat2, ub: &Mat2) -> f64 {
        let local = kron(ua, ub);
        let psi = mat4_vec(&self.j_dagger, &mat4_vec(&local, &self.psi0));
        payoff.c() * psi[0].norm_sqr()
            + payoff.a() * psi[1].norm_sqr()
            + payoff.b() * psi[2].norm_sqr()
            + payoff.d() * psi[3].norm_sqr()
    }
}

/// Golden-section maximization on [lo, hi]; assumes the slice through the
/// grid optimum is unimodal on this bracket.
fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > 1e-12 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Deviation maximizing the responder's payoff against `opponent` at
/// entanglement `gamma`: a full grid scan followed by coordinate-wise
/// golden-section refinement confined to one grid cell around the best
/// grid point. Ties on the grid resolve to the lowest (theta, phi).
pub fn best_response(
    payoff: &PayoffMatrix,
    opponent: StrategyParams,
    gamma: Entanglement,
    grid: &StrategyGrid,
) -> BestResponse {
    let ctx = GammaContext::new(gamma);
    let opp = strategy_matrix(opponent);

    let mut best_idx = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (idx, mat) in grid.matrices.iter().enumerate() {
        let v = ctx.payoff_a(payoff, mat.entries(), opp.entries());
        if v > best_val {
            best_val = v;
            best_idx = idx;
        }
    }

    let start = grid.points[best_idx];
    let mut theta = start.theta();
    let mut phi = start.phi();
    let mut value = best_val;
    let eval = |th: f64, ph: f64| {
        let u = strategy_matrix(StrategyParams::new(th, ph).expect("refinement stays in domain"));
        ctx.payoff_a(payoff, u.entries(), opp.entries())
    };

    let h_theta = grid.theta_step();
    let h_phi = grid.phi_step();
    for _ in 0..50 {
        let before = value;
        let (t, vt) = golden_max(
            |th| eval(th, phi),
            (theta - h_theta).max(0.0),
            (theta + h_theta).min(std::f64::consts::PI),
        );
        if vt > value {
            theta = t;
            value = vt;
        }
        let (p, vp) = golden_max(
            |ph| eval(theta, ph),
            (phi - h_phi).max(0.0),
            (phi + h_phi).min(FRAC_PI_2),
        );
        if vp > value {
            phi = p;
            value = vp;
        }
        if value - before < REFINE_TOL {
            break;
        }
    }

    BestResponse {
        strategy: StrategyParams::new(theta, phi).expect("refined point in domain"),
        payoff: value,
    }
}

/// Tests the profile against all unilateral deviations of either player.
/// `epsilon` is the larger of the two players' best improvements;
/// `certified` means `epsilon <= tol`.
pub fn is_nash(
    payoff: &PayoffMatrix,
    profile: (StrategyParams, StrategyParams),
    gamma: Entanglement,
    grid: &StrategyGrid,
    tol: f64,
) -> EquilibriumCertificate {
    let (ua, ub) = profile;
    let base = game_payoff(payoff, ua, ub, gamma);
    let epsilon = if ua == ub {
        // symmetric profile in a symmetric game: both players face the
        // same deviation problem
        best_response(payoff, ub, gamma, grid).payoff - base.payoff_a
    } else {
        let dev_a = best_response(payoff, ub, gamma, grid).payoff - base.payoff_a;
        let dev_b = best_response(payoff, ua, gamma, grid).payoff - base.payoff_b;
        dev_a.max(dev_b)
    };
    EquilibriumCertificate {
        profile,
        kind: EquilibriumKind::Nash,
        epsilon,
        gamma,
        certified: epsilon <= tol,
    }
}

/// Tests whether `strategy` is dominant: a best response against every
/// opponent grid point. Quadratic in the grid size, so pass a coarse grid.
pub fn is_dominant(
    payoff: &PayoffMatrix,
    strategy: StrategyParams,
    gamma: Entanglement,
    grid: &StrategyGrid,
    tol: f64,
) -> EquilibriumCertificate {
    let ctx = GammaContext::new(gamma);
    let own = strategy_matrix(strategy);
    let mut epsilon = f64::NEG_INFINITY;
    for (opp_params, opp_mat) in grid.points.iter().zip(&grid.matrices) {
        let held = ctx.payoff_a(payoff, own.entries(), opp_mat.entries());
        let br = best_response(payoff, *opp_params, gamma, grid);
        epsilon = epsilon.max(br.payoff - held);
    }
    EquilibriumCertificate {
        profile: (strategy, strategy),
        kind: EquilibriumKind::Dominant,
        epsilon,
        gamma,
        certified: epsilon <= tol,
    }
}

/// Named strategies scanned by [`nash_scan`].
pub const NAMED_STRATEGIES: [(&str, StrategyParams); 3] = [
    ("C", StrategyParams::COOPERATE),
    ("D", StrategyParams::DEFECT),
    ("Q", StrategyParams::QUANTUM),
];

/// Nash certificates for all nine profiles of the named strategies
/// {C, D, Q} x {C, D, Q} at a fixed entanglement.
pub fn nash_scan(
    payoff: &PayoffMatrix,
    gamma: Entanglement,
    grid: &StrategyGrid,
    tol: f64,
) -> Vec<EquilibriumCertificate> {
    let mut out = Vec::with_capacity(9);
    for (_, ua) in NAMED_STRATEGIES {
        for (_, ub) in NAMED_STRATEGIES {
            out.push(is_nash(payoff, (ua, ub), gamma, grid, tol));
        }
    }
    out
}

fn locate_barrier(
    payoff: &PayoffMatrix,
    grid: &StrategyGrid,
    tol_gamma: f64,
    profile: (StrategyParams, StrategyParams),
    profile_name: &'static str,
    nash_at_zero: bool,
) -> Result<Barrier> {
    let status = |gamma: f64| {
        is_nash(
            payoff,
            profile,
            Entanglement::new(gamma).expect("gamma within domain"),
            grid,
            DEFAULT_NASH_TOL,
        )
        .certified
    };

    // Monotone bracketing holds for every valid dilemma; a violation
    // indicates a broken deviation search, not bad input.
    assert_eq!(
        status(0.0),
        nash_at_zero,
        "nash status of {profile_name} at gamma = 0 contradicts the classical game"
    );

    // guard scan: the status must flip at most once along gamma
    let step = FRAC_PI_2 / (GUARD_POINTS - 1) as f64;
    let statuses: Vec<bool> = (0..GUARD_POINTS).map(|i| status(step * i as f64)).collect();
    let flips = statuses.windows(2).filter(|w| w[0] != w[1]).count();
    if flips > 1 {
        return Err(Error::NonMonotoneBarrier {
            profile: profile_name,
        });
    }
    if flips == 0 {
        return Ok(Barrier {
            gamma: FRAC_PI_2,
            crossed: false,
        });
    }

    let first_flipped = statuses
        .windows(2)
        .position(|w| w[0] != w[1])
        .expect("one flip exists")
        + 1;
    let lo = step * (first_flipped - 1) as f64;
    let hi = step * first_flipped as f64;
    let gamma = bisect_predicate(status, lo, hi, tol_gamma);
    Ok(Barrier {
        gamma,
        crossed: true,
    })
}

/// Smallest gamma at which the classical defect-defect equilibrium stops
/// being Nash, located by bisection to within `tol_gamma`.
pub fn gamma1_barrier(
    payoff: &PayoffMatrix,
    grid: &StrategyGrid,
    tol_gamma: f64,
) -> Result<Barrier> {
    locate_barrier(
        payoff,
        grid,
        tol_gamma,
        (StrategyParams::DEFECT, StrategyParams::DEFECT),
        "(D,D)",
        true,
    )
}

/// Smallest gamma at which the quantum-quantum profile becomes Nash.
pub fn gamma2_barrier(
    payoff: &PayoffMatrix,
    grid: &StrategyGrid,
    tol_gamma: f64,
) -> Result<Barrier> {
    locate_barrier(
        payoff,
        grid,
        tol_gamma,
        (StrategyParams::QUANTUM, StrategyParams::QUANTUM),
        "(Q,Q)",
        false,
    )
}
