//! Prisoner's dilemma payoff matrices.

use serde::Serialize;

use crate::error::{Error, Result};

/// Symmetric 2x2 prisoner's dilemma payoffs.
///
/// Row player receives, by joint outcome: `c` on (C,C), `a` on (C,D),
/// `b` on (D,C) and `d` on (D,D). A valid dilemma satisfies the strict
/// inequalities `b > c > d > a` and `2c > a + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl PayoffMatrix {
    /// Validates the dilemma inequalities; the error names the first
    /// violated one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        for v in [a, b, c, d] {
            if !v.is_finite() {
                return Err(Error::Constraint("payoffs must be finite"));
            }
        }
        if b <= c {
            return Err(Error::Constraint("b > c violated"));
        }
        if c <= d {
            return Err(Error::Constraint("c > d violated"));
        }
        if d <= a {
            return Err(Error::Constraint("d > a violated"));
        }
        if 2.0 * c <= a + b {
            return Err(Error::Constraint("2c > a + b violated"));
        }
        Ok(Self { a, b, c, d })
    }

    /// Sucker's payoff (cooperate against a defector).
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Temptation payoff (defect against a cooperator).
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Reward for mutual cooperation.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Punishment for mutual defection.
    pub fn d(&self) -> f64 {
        self.d
    }
}

/// Expected payoffs of the two players for one strategy profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffPair {
    pub payoff_a: f64,
    pub payoff_b: f64,
}

impl PayoffPair {
    /// The same pair seen from the other player's side.
    pub fn swapped(&self) -> Self {
        Self {
            payoff_a: self.payoff_b,
            payoff_b: self.payoff_a,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_bundled_games() {
        assert!(PayoffMatrix::new(70.0, 100.0, 90.0, 80.0).is_ok());
        assert!(PayoffMatrix::new(12.0, 50.0, 48.0, 25.0).is_ok());
    }

    #[test]
    fn names_the_violated_inequality() {
        let err = PayoffMatrix::new(1.0, 2.0, 3.0, 4.0).unwrap_err();
        assert_eq!(err.to_string(), "payoff constraint: b > c violated");

        let err = PayoffMatrix::new(1.0, 5.0, 4.0, 4.0).unwrap_err();
        assert_eq!(err.to_string(), "payoff constraint: c > d violated");

        let err = PayoffMatrix::new(3.0, 5.0, 4.0, 3.0).unwrap_err();
        assert_eq!(err.to_string(), "payoff constraint: d > a violated");

        // ordering fine but mutual cooperation not socially optimal
        let err = PayoffMatrix::new(0.0, 10.0, 4.0, 2.0).unwrap_err();
        assert_eq!(err.to_string(), "payoff constraint: 2c > a + b violated");
    }

    #[test]
    fn rejects_non_finite() {
        assert!(PayoffMatrix::new(f64::NAN, 100.0, 90.0, 80.0).is_err());
        assert!(PayoffMatrix::new(0.0, f64::INFINITY, 90.0, 80.0).is_err());
    }
}
