//! Figure data series: indicator sweeps along one payoff parameter and
//! cooperation-versus-indicator scatter points.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dataset::{Experiment, GameRecord};
use crate::error::{Error, Result};
use crate::indicators::{delta_star, gamma_star, n_value};
use crate::payoff::PayoffMatrix;

/// Which payoff parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PayoffParam {
    A,
    B,
    C,
    D,
}

impl fmt::Display for PayoffParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PayoffParam::A => "a",
            PayoffParam::B => "b",
            PayoffParam::C => "c",
            PayoffParam::D => "d",
        };
        f.write_str(s)
    }
}

impl FromStr for PayoffParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(PayoffParam::A),
            "b" => Ok(PayoffParam::B),
            "c" => Ok(PayoffParam::C),
            "d" => Ok(PayoffParam::D),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("unknown payoff parameter '{s}' (expected a, b, c or d)"),
            }),
        }
    }
}

/// One sweep row. Points where the payoffs do not form a valid dilemma
/// are emitted with the violated constraint, never silently dropped.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepRow {
    Point {
        value: f64,
        delta_star: f64,
        gamma_star: f64,
        n_value: f64,
    },
    Skipped {
        value: f64,
        reason: String,
    },
}

/// Sweeps `param` over `from..=to` in steps of `step`, holding the other
/// three payoffs at `base` = (a, b, c, d). Each valid point carries
/// `delta_star`, `gamma_star` and `n_value`.
///
/// Errors when the step is not positive, the range is empty, or no point
/// in the range forms a valid dilemma.
pub fn sweep_series(
    param: PayoffParam,
    from: f64,
    to: f64,
    step: f64,
    base: (f64, f64, f64, f64),
) -> Result<Vec<SweepRow>> {
    // negated so a NaN step is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(step > 0.0) {
        return Err(Error::ParameterRange {
            name: "step",
            value: step,
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    if to < from {
        return Err(Error::ParameterRange {
            name: "to",
            value: to,
            min: from,
            max: f64::INFINITY,
        });
    }

    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    let mut rows = Vec::with_capacity(count);
    let mut any_valid = false;
    for i in 0..count {
        let value = from + step * i as f64;
        let (mut a, mut b, mut c, mut d) = base;
        match param {
            PayoffParam::A => a = value,
            PayoffParam::B => b = value,
            PayoffParam::C => c = value,
            PayoffParam::D => d = value,
        }
        match PayoffMatrix::new(a, b, c, d) {
            Ok(m) => match gamma_star(&m) {
                Ok(root) => {
                    any_valid = true;
                    rows.push(SweepRow::Point {
                        value,
                        delta_star: delta_star(&m),
                        gamma_star: root.gamma(),
                        n_value: n_value(&m),
                    });
                }
                Err(e) => rows.push(SweepRow::Skipped {
                    value,
                    reason: e.to_string(),
                }),
            },
            Err(e) => rows.push(SweepRow::Skipped {
                value,
                reason: e.to_string(),
            }),
        }
    }
    if !any_valid {
        return Err(Error::Constraint("sweep range contains no valid dilemma"));
    }
    Ok(rows)
}

/// One scatter point: observed cooperation against the integrated
/// indicator.
#[derive(Debug, Clone, Serialize)]
pub struct ScatterPoint {
    pub experiment: Experiment,
    pub game_id: String,
    pub n_value: f64,
    pub cp: f64,
}

/// Per-experiment count of pairs on which `cp` and `n_value` order
/// oppositely.
pub type InversionCounts = Vec<(Experiment, usize)>;

/// Scatter series plus inversion counts (0 means the observed
/// cooperation increases with the indicator).
pub fn scatter_series(records: &[GameRecord]) -> Result<(Vec<ScatterPoint>, InversionCounts)> {
    if records.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut experiments: Vec<Experiment> = Vec::new();
    for r in records {
        if !experiments.contains(&r.experiment) {
            experiments.push(r.experiment);
        }
    }

    let mut points = Vec::with_capacity(records.len());
    let mut inversions = Vec::with_capacity(experiments.len());
    for &exp in &experiments {
        let mut group: Vec<ScatterPoint> = records
            .iter()
            .filter(|r| r.experiment == exp)
            .map(|r| ScatterPoint {
                experiment: exp,
                game_id: r.game_id.clone(),
                n_value: n_value(&r.payoff),
                cp: r.cp,
            })
            .collect();
        // ties in n_value order by cp so the emitted series stays monotone
        group.sort_by(|x, y| {
            x.n_value
                .partial_cmp(&y.n_value)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| x.cp.partial_cmp(&y.cp).unwrap_or(std::cmp::Ordering::Equal))
                .then_with(|| x.game_id.cmp(&y.game_id))
        });

        let mut count = 0usize;
        for i in 0..group.len() {
            for j in (i + 1)..group.len() {
                let dn = group[i].n_value - group[j].n_value;
                let dcp = group[i].cp - group[j].cp;
                if dn * dcp < 0.0 {
                    count += 1;
                }
            }
        }
        inversions.push((exp, count));
        points.extend(group);
    }
    Ok((points, inversions))
}
