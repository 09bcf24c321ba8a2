//! Cooperation ranking: the four-level quantum comparison scheme, the
//! classical discount-factor baselines, and concordance against observed
//! ranks.

use serde::Serialize;

use crate::dataset::GameRecord;
use crate::equilibria::StrategyGrid;
use crate::error::{Error, Result};
use crate::indicators::{indicator_set_with, IndicatorSet};

/// The indicator that decided a pairwise comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionLevel {
    /// Level 1: larger integrated indicator.
    NValue,
    /// Level 2: smaller zero of the cooperation gap.
    GammaStar,
    /// Level 3: smaller dissolution barrier of the defect-defect
    /// equilibrium.
    Gamma1,
    /// Level 4: smaller appearance barrier of the quantum-quantum
    /// equilibrium. The tie-break direction (smaller = more cooperative,
    /// by analogy with gamma1) is recorded here so it can be audited.
    Gamma2,
    /// Classical baseline: smaller standard bound.
    DeltaLower,
    /// Classical baseline: smaller adjusted bound.
    DeltaStar,
}

/// Predicted relation between two games.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoopOrdering {
    MoreCooperative,
    LessCooperative,
    Indistinguishable,
}

impl CoopOrdering {
    fn flipped(self) -> Self {
        match self {
            CoopOrdering::MoreCooperative => CoopOrdering::LessCooperative,
            CoopOrdering::LessCooperative => CoopOrdering::MoreCooperative,
            CoopOrdering::Indistinguishable => CoopOrdering::Indistinguishable,
        }
    }
}

/// A pairwise prediction together with the level that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub ordering: CoopOrdering,
    pub decided_at: Option<DecisionLevel>,
}

/// Tie tolerances per indicator. Tight enough that only genuinely
/// coincident values tie.
#[derive(Debug, Clone, Copy)]
pub struct CompareTolerances {
    pub tol_n: f64,
    pub tol_gamma: f64,
    pub tol_delta: f64,
}

impl Default for CompareTolerances {
    fn default() -> Self {
        Self {
            tol_n: 0.005,
            tol_gamma: 0.0005,
            tol_delta: 0.0005,
        }
    }
}

fn decide(more: bool, level: DecisionLevel) -> Comparison {
    Comparison {
        ordering: if more {
            CoopOrdering::MoreCooperative
        } else {
            CoopOrdering::LessCooperative
        },
        decided_at: Some(level),
    }
}

/// Predicts which of two games cooperates more, lexicographically:
/// (1) larger `n_value`; (2) smaller `gamma_star`; (3) smaller `gamma1`;
/// (4) smaller `gamma2`. Returns `Indistinguishable` when all four levels
/// tie at the given tolerances.
///
/// Comparing games from different experiments is possible but not
/// authoritative: besides payoffs and the continuation probability,
/// unmodelled experimental conditions shift cooperation levels, which is
/// why the ranking functions keep experiments separate.
pub fn compare_games(x: &IndicatorSet, y: &IndicatorSet, tol: &CompareTolerances) -> Comparison {
    if (x.n_value - y.n_value).abs() > tol.tol_n {
        return decide(x.n_value > y.n_value, DecisionLevel::NValue);
    }
    if let (Some(gx), Some(gy)) = (x.gamma_star, y.gamma_star) {
        if (gx - gy).abs() > tol.tol_gamma {
            return decide(gx < gy, DecisionLevel::GammaStar);
        }
    }
    if (x.gamma1.gamma - y.gamma1.gamma).abs() > tol.tol_gamma {
        return decide(x.gamma1.gamma < y.gamma1.gamma, DecisionLevel::Gamma1);
    }
    if (x.gamma2.gamma - y.gamma2.gamma).abs() > tol.tol_gamma {
        return decide(x.gamma2.gamma < y.gamma2.gamma, DecisionLevel::Gamma2);
    }
    Comparison {
        ordering: CoopOrdering::Indistinguishable,
        decided_at: None,
    }
}

/// Classical baseline indicator choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalIndicator {
    DeltaLower,
    DeltaStar,
}

/// Baseline comparison: a smaller discount-factor bound means cooperation
/// is sustainable for more discount factors, so it predicts more
/// cooperation.
pub fn compare_classical(
    x: &IndicatorSet,
    y: &IndicatorSet,
    indicator: ClassicalIndicator,
    tol: &CompareTolerances,
) -> Comparison {
    let (vx, vy, level) = match indicator {
        ClassicalIndicator::DeltaLower => (x.delta_lower, y.delta_lower, DecisionLevel::DeltaLower),
        ClassicalIndicator::DeltaStar => (x.delta_star, y.delta_star, DecisionLevel::DeltaStar),
    };
    if (vx - vy).abs() > tol.tol_delta {
        decide(vx < vy, level)
    } else {
        Comparison {
            ordering: CoopOrdering::Indistinguishable,
            decided_at: None,
        }
    }
}

/// Ranking scheme used by a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankingScheme {
    Quantum,
    Classical(ClassicalIndicator),
}

/// One game inside a ranking report.
#[derive(Debug, Clone, Serialize)]
pub struct RankedGame {
    pub game_id: String,
    pub cp: f64,
    pub observed_rank: u32,
    /// 1 = predicted most cooperative; indistinguishable games share a
    /// rank (competition style).
    pub predicted_rank: u32,
    pub indicators: IndicatorSet,
}

/// The decision for one adjacent pair of the predicted order.
#[derive(Debug, Clone, Serialize)]
pub struct TieBreakStep {
    /// Predicted at least as cooperative as `second`.
    pub first: String,
    pub second: String,
    /// `None` when the pair is indistinguishable.
    pub decided_at: Option<DecisionLevel>,
}

/// Predicted-versus-observed ranking of one experiment.
#[derive(Debug, Clone, Serialize)]
pub struct RankingReport {
    pub scheme: RankingScheme,
    /// In predicted order, most cooperative first.
    pub games: Vec<RankedGame>,
    pub trace: Vec<TieBreakStep>,
    /// (concordant - discordant) / total pairs, in [-1, 1];
    /// `None` for fewer than two games.
    pub concordance: Option<f64>,
}

impl RankingReport {
    /// Game ids in predicted order, most cooperative first.
    pub fn predicted_order(&self) -> Vec<&str> {
        self.games.iter().map(|g| g.game_id.as_str()).collect()
    }
}

/// Verifies that the pairwise relation is a preorder on this set:
/// strict preferences chain transitively and ties are consistent.
#[allow(clippy::needless_range_loop)] // the [j][i] mirror access wants indices
fn check_consistency(rel: &[Vec<CoopOrdering>]) -> Result<()> {
    use CoopOrdering::*;
    let n = rel.len();
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] != rel[j][i].flipped() {
                return Err(Error::IntransitiveComparison);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let ij = rel[i][j];
                let jk = rel[j][k];
                let ik = rel[i][k];
                let want_more = matches!(
                    (ij, jk),
                    (MoreCooperative, MoreCooperative)
                        | (MoreCooperative, Indistinguishable)
                        | (Indistinguishable, MoreCooperative)
                );
                if want_more && ik != MoreCooperative {
                    return Err(Error::IntransitiveComparison);
                }
                if ij == Indistinguishable && jk == Indistinguishable && ik != Indistinguishable {
                    return Err(Error::IntransitiveComparison);
                }
            }
        }
    }
    Ok(())
}

fn build_report<F>(
    records: &[GameRecord],
    sets: &[IndicatorSet],
    scheme: RankingScheme,
    compare: F,
) -> Result<RankingReport>
where
    F: Fn(&IndicatorSet, &IndicatorSet) -> Comparison,
{
    if records.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if records
        .iter()
        .any(|r| r.experiment != records[0].experiment)
    {
        return Err(Error::MixedExperiments);
    }

    let n = records.len();
    let rel: Vec<Vec<CoopOrdering>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CoopOrdering::Indistinguishable
                    } else {
                        compare(&sets[i], &sets[j]).ordering
                    }
                })
                .collect()
        })
        .collect();
    check_consistency(&rel)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| match rel[i][j] {
        CoopOrdering::MoreCooperative => std::cmp::Ordering::Less,
        CoopOrdering::LessCooperative => std::cmp::Ordering::Greater,
        CoopOrdering::Indistinguishable => i.cmp(&j),
    });

    // competition ranks: tied games share the rank of the first of them
    let mut predicted = vec![0u32; n];
    for (pos, &idx) in order.iter().enumerate() {
        predicted[idx] = if pos > 0 && rel[idx][order[pos - 1]] == CoopOrdering::Indistinguishable {
            predicted[order[pos - 1]]
        } else {
            pos as u32 + 1
        };
    }

    let games: Vec<RankedGame> = order
        .iter()
        .map(|&idx| RankedGame {
            game_id: records[idx].game_id.clone(),
            cp: records[idx].cp,
            observed_rank: records[idx].observed_rank,
            predicted_rank: predicted[idx],
            indicators: sets[idx],
        })
        .collect();

    let trace: Vec<TieBreakStep> = order
        .windows(2)
        .map(|pair| TieBreakStep {
            first: records[pair[0]].game_id.clone(),
            second: records[pair[1]].game_id.clone(),
            decided_at: compare(&sets[pair[0]], &sets[pair[1]]).decided_at,
        })
        .collect();

    let concordance = if n < 2 {
        None
    } else {
        let mut net = 0i64;
        for i in 0..n {
            for j in (i + 1)..n {
                let observed_more = records[i].observed_rank < records[j].observed_rank;
                match rel[i][j] {
                    CoopOrdering::MoreCooperative => net += if observed_more { 1 } else { -1 },
                    CoopOrdering::LessCooperative => net += if observed_more { -1 } else { 1 },
                    CoopOrdering::Indistinguishable => {}
                }
            }
        }
        let total = (n * (n - 1) / 2) as f64;
        Some(net as f64 / total)
    };

    Ok(RankingReport {
        scheme,
        games,
        trace,
        concordance,
    })
}

/// Quantum four-level ranking using precomputed indicator sets
/// (parallel to `records`).
pub fn rank_with_sets(
    records: &[GameRecord],
    sets: &[IndicatorSet],
    tol: &CompareTolerances,
) -> Result<RankingReport> {
    build_report(records, sets, RankingScheme::Quantum, |x, y| {
        compare_games(x, y, tol)
    })
}

/// Classical baseline ranking using precomputed indicator sets.
pub fn classical_rank_with_sets(
    records: &[GameRecord],
    sets: &[IndicatorSet],
    indicator: ClassicalIndicator,
    tol: &CompareTolerances,
) -> Result<RankingReport> {
    build_report(
        records,
        sets,
        RankingScheme::Classical(indicator),
        |x, y| compare_classical(x, y, indicator, tol),
    )
}

fn compute_sets(
    records: &[GameRecord],
    grid: &StrategyGrid,
    tol_gamma: f64,
) -> Result<Vec<IndicatorSet>> {
    records
        .iter()
        .map(|r| indicator_set_with(&r.payoff, grid, tol_gamma))
        .collect()
}

/// Ranks one experiment with the quantum scheme, computing indicators at
/// the given grid and barrier tolerance.
pub fn rank_experiment_with(
    records: &[GameRecord],
    tol: &CompareTolerances,
    grid: &StrategyGrid,
    tol_gamma: f64,
) -> Result<RankingReport> {
    let sets = compute_sets(records, grid, tol_gamma)?;
    rank_with_sets(records, &sets, tol)
}

/// [`rank_experiment_with`] at default grid, tolerances and scheme.
pub fn rank_experiment(records: &[GameRecord], tol: &CompareTolerances) -> Result<RankingReport> {
    rank_experiment_with(
        records,
        tol,
        &StrategyGrid::default(),
        crate::equilibria::DEFAULT_TOL_GAMMA,
    )
}

/// Ranks one experiment by a classical discount-factor bound, ascending.
pub fn classical_rank_experiment(
    records: &[GameRecord],
    indicator: ClassicalIndicator,
) -> Result<RankingReport> {
    let grid = StrategyGrid::default();
    let sets = compute_sets(records, &grid, crate::equilibria::DEFAULT_TOL_GAMMA)?;
    classical_rank_with_sets(records, &sets, indicator, &CompareTolerances::default())
}
