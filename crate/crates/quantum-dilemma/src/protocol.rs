//! The Eisert two-player protocol: entangle, apply local strategies,
//! disentangle, measure.
//!
//! Both players start in |C>. An entangling operator J(gamma) acts on
//! |CC>, each player applies a local unitary U(theta, phi), the inverse
//! of J undoes the entanglement, and the four joint outcomes
//! (CC, CD, DC, DD) are read off as squared amplitude magnitudes.
//!
//! Basis convention: the joint basis vectors are the signed vectors
//! |CC> = (1,0,0,0), |CD> = (0,-1,0,0), |DC> = (0,0,-1,0),
//! |DD> = (0,0,0,1), i.e. the single-player basis is |C> = (1,0),
//! |D> = (0,-1). Probabilities are insensitive to the signs, but
//! amplitude-level assertions in tests fix this convention. Player A is
//! the left (most significant) tensor factor.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, kron, mat4_vec, Mat2, Mat4, Vec4, ONE, ZERO};
use crate::payoff::{PayoffMatrix, PayoffPair};

/// Norm tolerance enforced when constructing a [`QuantumState`].
pub const STATE_NORM_TOL: f64 = 1e-12;
/// Norm tolerance accepted by [`outcome_distribution`].
pub const DISTRIBUTION_NORM_TOL: f64 = 1e-10;

/// A point (theta, phi) on the two-parameter strategy manifold,
/// theta in [0, pi], phi in [0, pi/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrategyParams {
    theta: f64,
    phi: f64,
}

impl StrategyParams {
    /// Classical cooperation: U(0, 0) is the identity.
    pub const COOPERATE: Self = Self {
        theta: 0.0,
        phi: 0.0,
    };
    /// Classical defection: U(pi, 0).
    pub const DEFECT: Self = Self {
        theta: PI,
        phi: 0.0,
    };
    /// The quantum strategy U(0, pi/2) = diag(i, -i).
    pub const QUANTUM: Self = Self {
        theta: 0.0,
        phi: FRAC_PI_2,
    };

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::ParameterRange {
                name: "theta",
                value: theta,
                min: 0.0,
                max: PI,
            });
        }
        if !(0.0..=FRAC_PI_2).contains(&phi) {
            return Err(Error::ParameterRange {
                name: "phi",
                value: phi,
                min: 0.0,
                max: FRAC_PI_2,
            });
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Entanglement strength gamma in [0, pi/2]; gamma = 0 recovers the
/// classical game, gamma = pi/2 is maximal entanglement.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Entanglement(f64);

impl Entanglement {
    pub const ZERO: Self = Self(0.0);
    pub const MAX: Self = Self(FRAC_PI_2);

    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&gamma) {
            return Err(Error::ParameterRange {
                name: "gamma",
                value: gamma,
                min: 0.0,
                max: FRAC_PI_2,
            });
        }
        Ok(Self(gamma))
    }

    pub fn gamma(&self) -> f64 {
        self.0
    }
}

/// A player's 2x2 unitary strategy matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyMatrix {
    entries: Mat2,
}

impl StrategyMatrix {
    pub fn entries(&self) -> &Mat2 {
        &self.entries
    }

    /// Largest entry-wise deviation of `U† U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect2(&self.entries)
    }
}

/// The four measurable joint outcomes, in basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Cc,
    Cd,
    Dc,
    Dd,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::Cc, Outcome::Cd, Outcome::Dc, Outcome::Dd];

    fn index(self) -> usize {
        match self {
            Outcome::Cc => 0,
            Outcome::Cd => 1,
            Outcome::Dc => 2,
            Outcome::Dd => 3,
        }
    }

    /// Basis sign: |CD> and |DC> carry a -1 component.
    fn sign(self) -> f64 {
        match self {
            Outcome::Cc | Outcome::Dd => 1.0,
            Outcome::Cd | Outcome::Dc => -1.0,
        }
    }
}

/// A normalized two-player state, amplitudes over (|CC>,|CD>,|DC>,|DD>).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec4,
}

impl QuantumState {
    /// Validates the norm to within [`STATE_NORM_TOL`].
    pub fn new(amplitudes: Vec4) -> Result<Self> {
        let norm = linalg::norm4(&amplitudes);
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidState {
                norm,
                tol: STATE_NORM_TOL,
            });
        }
        Ok(Self { amplitudes })
    }

    /// Wraps raw amplitudes without checking the norm. Intended for
    /// constructing test vectors and basis states by hand.
    pub fn new_unchecked(amplitudes: Vec4) -> Self {
        Self { amplitudes }
    }

    /// The signed basis vector of one joint outcome.
    pub fn basis_state(outcome: Outcome) -> Self {
        let mut amplitudes = [ZERO; 4];
        amplitudes[outcome.index()] = Complex64::new(outcome.sign(), 0.0);
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &Vec4 {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        linalg::norm4(&self.amplitudes)
    }
}

/// Joint probabilities of the four outcomes; sums to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    pub p_cc: f64,
    pub p_cd: f64,
    pub p_dc: f64,
    pub p_dd: f64,
}

impl OutcomeDistribution {
    pub fn sum(&self) -> f64 {
        self.p_cc + self.p_cd + self.p_dc + self.p_dd
    }
}

/// The strategy unitary
/// `U(theta, phi) = [[e^{i phi} cos(theta/2), sin(theta/2)],
/// [-sin(theta/2), e^{-i phi} cos(theta/2)]]`.
///
/// U(0,0) is cooperation, U(pi,0) defection and U(0,pi/2) the quantum
/// strategy.
pub fn strategy_matrix(params: StrategyParams) -> StrategyMatrix {
    let (half_sin, half_cos) = (params.theta / 2.0).sin_cos();
    let phase = Complex64::from_polar(1.0, params.phi);
    StrategyMatrix {
        entries: [
            [phase * half_cos, Complex64::new(half_sin, 0.0)],
            [Complex64::new(-half_sin, 0.0), phase.conj() * half_cos],
        ],
    }
}

/// The entangling operator
/// `J(gamma) = exp(i gamma/2 (D (x) D))
///           = cos(gamma/2) I + i sin(gamma/2) (D (x) D)`,
/// written out as the explicit 4x4 matrix. `J(0)` is the identity.
pub fn entangler(gamma: Entanglement) -> Mat4 {
    let c = Complex64::new((gamma.gamma() / 2.0).cos(), 0.0);
    let is = Complex64::new(0.0, (gamma.gamma() / 2.0).sin());
    // D (x) D is the anti-diagonal (1, -1, -1, 1).
    [
        [c, ZERO, ZERO, is],
        [ZERO, c, -is, ZERO],
        [ZERO, -is, c, ZERO],
        [is, ZERO, ZERO, c],
    ]
}

/// `J†(gamma)`, the disentangling operator applied before measurement.
pub fn disentangler(gamma: Entanglement) -> Mat4 {
    linalg::dagger4(&entangler(gamma))
}

/// The state prior to detection:
/// `|psi_f> = J† (U_A (x) U_B) J |CC>`.
pub fn final_state(ua: StrategyParams, ub: StrategyParams, gamma: Entanglement) -> QuantumState {
    let j = entangler(gamma);
    let mut psi: Vec4 = [ONE, ZERO, ZERO, ZERO];
    psi = mat4_vec(&j, &psi);
    let local = kron(strategy_matrix(ua).entries(), strategy_matrix(ub).entries());
    psi = mat4_vec(&local, &psi);
    psi = mat4_vec(&linalg::dagger4(&j), &psi);
    QuantumState { amplitudes: psi }
}

/// Outcome probabilities `P_ss' = |<ss'|psi>|^2` against the signed basis.
///
/// Rejects states whose norm is off by more than
/// [`DISTRIBUTION_NORM_TOL`].
pub fn outcome_distribution(state: &QuantumState) -> Result<OutcomeDistribution> {
    let norm = state.norm();
    if (norm - 1.0).abs() > DISTRIBUTION_NORM_TOL {
        return Err(Error::InvalidState {
            norm,
            tol: DISTRIBUTION_NORM_TOL,
        });
    }
    let p = |o: Outcome| {
        let bra = Complex64::new(o.sign(), 0.0);
        (bra * state.amplitudes[o.index()]).norm_sqr()
    };
    Ok(OutcomeDistribution {
        p_cc: p(Outcome::Cc),
        p_cd: p(Outcome::Cd),
        p_dc: p(Outcome::Dc),
        p_dd: p(Outcome::Dd),
    })
}

/// Expected payoffs:
/// `$_A = c P_CC + a P_CD + b P_DC + d P_DD` and
/// `$_B = c P_CC + b P_CD + a P_DC + d P_DD`.
pub fn expected_payoffs(payoff: &PayoffMatrix, dist: &OutcomeDistribution) -> PayoffPair {
    PayoffPair {
        payoff_a: payoff.c() * dist.p_cc
            + payoff.a() * dist.p_cd
            + payoff.b() * dist.p_dc
            + payoff.d() * dist.p_dd,
        payoff_b: payoff.c() * dist.p_cc
            + payoff.b() * dist.p_cd
            + payoff.a() * dist.p_dc
            + payoff.d() * dist.p_dd,
    }
}

/// Full pipeline: payoffs of the profile (ua, ub) at entanglement gamma.
pub fn game_payoff(
    payoff: &PayoffMatrix,
    ua: StrategyParams,
    ub: StrategyParams,
    gamma: Entanglement,
) -> PayoffPair {
    let state = final_state(ua, ub, gamma);
    let dist = outcome_distribution(&state).expect("unitary pipeline preserves the norm");
    expected_payoffs(payoff, &dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn blonski_1() -> PayoffMatrix {
        PayoffMatrix::new(70.0, 100.0, 90.0, 80.0).unwrap()
    }

    #[test]
    fn named_strategy_matrices() {
        // C = identity
        let c = strategy_matrix(StrategyParams::COOPERATE);
        assert_eq!(c.entries()[0][0], ONE);
        assert_eq!(c.entries()[0][1], ZERO);
        assert_eq!(c.entries()[1][0], ZERO);
        assert_eq!(c.entries()[1][1], ONE);

        // D = [[0,1],[-1,0]]
        let d = strategy_matrix(StrategyParams::DEFECT);
        assert_abs_diff_eq!(d.entries()[0][0].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.entries()[0][1].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.entries()[1][0].re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.entries()[1][1].norm(), 0.0, epsilon = 1e-15);

        // Q = [[i,0],[0,-i]]
        let q = strategy_matrix(StrategyParams::QUANTUM);
        assert_abs_diff_eq!(q.entries()[0][0].im, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.entries()[1][1].im, -1.0, epsilon = 1e-15);
        assert_eq!(q.entries()[0][1], ZERO);
        assert_eq!(q.entries()[1][0], ZERO);
    }

    #[test]
    fn strategy_params_domain() {
        assert!(StrategyParams::new(-0.1, 0.0).is_err());
        assert!(StrategyParams::new(PI + 0.1, 0.0).is_err());
        assert!(StrategyParams::new(0.0, FRAC_PI_2 + 0.1).is_err());
        assert!(StrategyParams::new(PI, FRAC_PI_2).is_ok());
    }

    #[test]
    fn entangler_at_zero_is_identity_exactly() {
        let j = entangler(Entanglement::ZERO);
        for (i, row) in j.iter().enumerate() {
            for (k, entry) in row.iter().enumerate() {
                let expect = if i == k { ONE } else { ZERO };
                assert_eq!(*entry, expect);
            }
        }
    }

    #[test]
    fn entangler_at_max_has_sqrt_half_pattern() {
        let j = entangler(Entanglement::MAX);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(j[0][0].re, h, epsilon = 1e-15);
        assert_abs_diff_eq!(j[0][3].im, h, epsilon = 1e-15);
        assert_abs_diff_eq!(j[1][2].im, -h, epsilon = 1e-15);
        assert_abs_diff_eq!(j[2][1].im, -h, epsilon = 1e-15);
        assert_abs_diff_eq!(j[3][0].im, h, epsilon = 1e-15);
        assert_eq!(j[0][1], ZERO);
        assert_eq!(j[3][2], ZERO);
    }

    #[test]
    fn entangler_is_unitary() {
        for i in 0..=20 {
            let gamma = Entanglement::new(FRAC_PI_2 * i as f64 / 20.0).unwrap();
            assert!(linalg::unitarity_defect4(&entangler(gamma)) < 1e-12);
        }
    }

    #[test]
    fn entanglement_domain() {
        assert!(Entanglement::new(-0.01).is_err());
        assert!(Entanglement::new(FRAC_PI_2 + 0.01).is_err());
    }

    #[test]
    fn mutual_cooperation_is_cc_for_any_gamma() {
        for gamma in [0.0, 0.3, 1.0, FRAC_PI_2] {
            let psi = final_state(
                StrategyParams::COOPERATE,
                StrategyParams::COOPERATE,
                Entanglement::new(gamma).unwrap(),
            );
            assert_abs_diff_eq!(psi.amplitudes()[0].re, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(psi.amplitudes()[0].im, 0.0, epsilon = 1e-12);
            for i in 1..4 {
                assert_abs_diff_eq!(psi.amplitudes()[i].norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn unentangled_mutual_defection_is_dd() {
        let psi = final_state(
            StrategyParams::DEFECT,
            StrategyParams::DEFECT,
            Entanglement::ZERO,
        );
        let mags: Vec<f64> = psi.amplitudes().iter().map(|c| c.norm()).collect();
        assert_abs_diff_eq!(mags[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mags[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mags[2], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mags[3], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn quantum_pair_at_full_entanglement_yields_cc() {
        // Frozen from an independent high-precision evaluation of the
        // pipeline: the final amplitude vector is (-1, 0, 0, 0).
        let psi = final_state(
            StrategyParams::QUANTUM,
            StrategyParams::QUANTUM,
            Entanglement::MAX,
        );
        assert_abs_diff_eq!(psi.amplitudes()[0].re, -1.0, epsilon = 1e-12);
        let dist = outcome_distribution(&psi).unwrap();
        assert_abs_diff_eq!(dist.p_cc, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn distribution_of_basis_states() {
        let cc = QuantumState::basis_state(Outcome::Cc);
        let d = outcome_distribution(&cc).unwrap();
        assert_eq!((d.p_cc, d.p_cd, d.p_dc, d.p_dd), (1.0, 0.0, 0.0, 0.0));

        // the sign of |CD> = (0,-1,0,0) vanishes under the modulus
        let cd = QuantumState::basis_state(Outcome::Cd);
        assert_eq!(cd.amplitudes()[1], Complex64::new(-1.0, 0.0));
        let d = outcome_distribution(&cd).unwrap();
        assert_eq!(d.p_cd, 1.0);
    }

    #[test]
    fn distribution_of_equal_superposition() {
        let half = Complex64::new(0.5, 0.0);
        let psi = QuantumState::new([half, half, half, half]).unwrap();
        let d = outcome_distribution(&psi).unwrap();
        for p in [d.p_cc, d.p_cd, d.p_dc, d.p_dd] {
            assert_abs_diff_eq!(p, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn distribution_rejects_denormalized_state() {
        let psi = QuantumState::new_unchecked([Complex64::new(2.0, 0.0), ZERO, ZERO, ZERO]);
        assert!(matches!(
            outcome_distribution(&psi),
            Err(Error::InvalidState { .. })
        ));
        assert!(QuantumState::new(*psi.amplitudes()).is_err());
    }

    #[test]
    fn expected_payoffs_reads_the_matrix() {
        let p = blonski_1();
        let certain_cc = OutcomeDistribution {
            p_cc: 1.0,
            p_cd: 0.0,
            p_dc: 0.0,
            p_dd: 0.0,
        };
        let pay = expected_payoffs(&p, &certain_cc);
        assert_eq!((pay.payoff_a, pay.payoff_b), (90.0, 90.0));

        let certain_dd = OutcomeDistribution {
            p_cc: 0.0,
            p_cd: 0.0,
            p_dc: 0.0,
            p_dd: 1.0,
        };
        let pay = expected_payoffs(&p, &certain_dd);
        assert_eq!((pay.payoff_a, pay.payoff_b), (80.0, 80.0));

        // on (C,D) the row player takes the sucker's payoff
        let certain_cd = OutcomeDistribution {
            p_cc: 0.0,
            p_cd: 1.0,
            p_dc: 0.0,
            p_dd: 0.0,
        };
        let pay = expected_payoffs(&p, &certain_cd);
        assert_eq!((pay.payoff_a, pay.payoff_b), (70.0, 100.0));
    }

    #[test]
    fn game_payoff_named_profiles() {
        let p = blonski_1();
        for gamma in [Entanglement::ZERO, Entanglement::new(0.7).unwrap()] {
            let pay = game_payoff(
                &p,
                StrategyParams::COOPERATE,
                StrategyParams::COOPERATE,
                gamma,
            );
            assert_abs_diff_eq!(pay.payoff_a, 90.0, epsilon = 1e-10);
            assert_abs_diff_eq!(pay.payoff_b, 90.0, epsilon = 1e-10);
        }

        let pay = game_payoff(
            &p,
            StrategyParams::DEFECT,
            StrategyParams::DEFECT,
            Entanglement::ZERO,
        );
        assert_abs_diff_eq!(pay.payoff_a, 80.0, epsilon = 1e-10);

        let pay = game_payoff(
            &p,
            StrategyParams::QUANTUM,
            StrategyParams::QUANTUM,
            Entanglement::MAX,
        );
        assert_abs_diff_eq!(pay.payoff_a, 90.0, epsilon = 1e-10);
        assert_abs_diff_eq!(pay.payoff_b, 90.0, epsilon = 1e-10);
    }
}
