//! Table assembly, reference regression values, and rendering to text,
//! CSV and JSON.
//!
//! Rounding policy: text and CSV round the way the reference table is
//! printed (three decimals for the delta and gamma columns, two for
//! `n_value`); JSON carries full precision plus a `rounded` block.
//! Rounding happens only here, never inside computations.

use serde::Serialize;
use serde_json::json;

use crate::dataset::{Experiment, GameRecord};
use crate::equilibria::StrategyGrid;
use crate::error::Result;
use crate::indicators::{indicator_set_with, IndicatorSet};
use crate::ranking::{
    classical_rank_with_sets, rank_with_sets, ClassicalIndicator, CompareTolerances, DecisionLevel,
    RankingReport,
};
use crate::series::{ScatterPoint, SweepRow};

/// Absolute tolerance on the delta and gamma columns of the reference
/// comparison.
pub const CHECK_TOL_DELTA: f64 = 0.001;
pub const CHECK_TOL_GAMMA: f64 = 0.001;
/// Absolute tolerance on the `n_value` column.
pub const CHECK_TOL_N: f64 = 0.01;

/// Expected indicator values of the bundled games, used by check mode:
/// (game_id, delta_lower, delta_star, gamma2, gamma1, gamma_star, n_value).
///
/// The delta columns are the closed forms evaluated on the bundled
/// payoffs, rounded to three decimals; gammas and n_value likewise.
pub const REFERENCE_INDICATORS: [(&str, f64, f64, f64, f64, f64, f64); 9] = [
    ("blonski-1", 0.5, 0.667, 0.615, 0.615, 0.685, 19.38),
    ("blonski-2", 0.5, 0.9, 0.322, 1.107, 0.866, -48.45),
    ("blonski-3", 0.667, 0.8, 0.685, 0.685, 0.785, 0.0),
    ("blonski-4", 0.333, 0.8, 0.322, 0.991, 0.785, 0.0),
    ("blonski-5", 0.429, 0.667, 0.524, 0.702, 0.685, 77.52),
    ("blonski-6", 0.455, 0.571, 0.641, 0.481, 0.615, 155.03),
    ("dalbo-1", 0.72, 0.816, 0.759, 0.625, 0.798, -2.91),
    ("dalbo-2", 0.4, 0.605, 0.539, 0.625, 0.64, 35.85),
    ("dalbo-3", 0.08, 0.395, 0.231, 0.625, 0.487, 74.61),
];

fn round_to(x: f64, decimals: i32) -> f64 {
    let factor = 10f64.powi(decimals);
    (x * factor).round() / factor
}

/// One table row: the game's data plus its computed indicators.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub game_id: String,
    pub experiment: Experiment,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub cp: f64,
    pub observed_rank: u32,
    pub indicators: IndicatorSet,
}

impl TableRow {
    /// Indicator values with the reference-table rounding applied.
    pub fn rounded(&self) -> serde_json::Value {
        json!({
            "delta_lower": round_to(self.indicators.delta_lower, 3),
            "delta_star": round_to(self.indicators.delta_star, 3),
            "gamma2": round_to(self.indicators.gamma2.gamma, 3),
            "gamma1": round_to(self.indicators.gamma1.gamma, 3),
            "gamma_star": self.indicators.gamma_star.map(|g| round_to(g, 3)),
            "n_value": round_to(self.indicators.n_value, 2),
        })
    }
}

/// The full per-game table plus the quantum ranking and both classical
/// baselines, per experiment.
#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub rankings: Vec<ExperimentRankings>,
}

/// All three ranking schemes applied to one experiment.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentRankings {
    pub experiment: Experiment,
    pub quantum: RankingReport,
    pub classical_delta_star: RankingReport,
    pub classical_delta_lower: RankingReport,
}

/// Computes indicators for every record and ranks each experiment under
/// the quantum scheme and both classical baselines.
pub fn table_report(
    records: &[GameRecord],
    grid: &StrategyGrid,
    tol_gamma: f64,
    tols: &CompareTolerances,
) -> Result<TableReport> {
    let sets: Vec<IndicatorSet> = records
        .iter()
        .map(|r| indicator_set_with(&r.payoff, grid, tol_gamma))
        .collect::<Result<_>>()?;

    let rows: Vec<TableRow> = records
        .iter()
        .zip(&sets)
        .map(|(r, set)| TableRow {
            game_id: r.game_id.clone(),
            experiment: r.experiment,
            a: r.payoff.a(),
            b: r.payoff.b(),
            c: r.payoff.c(),
            d: r.payoff.d(),
            cp: r.cp,
            observed_rank: r.observed_rank,
            indicators: *set,
        })
        .collect();

    let mut experiments: Vec<Experiment> = Vec::new();
    for r in records {
        if !experiments.contains(&r.experiment) {
            experiments.push(r.experiment);
        }
    }
    let mut rankings = Vec::with_capacity(experiments.len());
    for exp in experiments {
        let idx: Vec<usize> = (0..records.len())
            .filter(|&i| records[i].experiment == exp)
            .collect();
        let group_records: Vec<GameRecord> = idx.iter().map(|&i| records[i].clone()).collect();
        let group_sets: Vec<IndicatorSet> = idx.iter().map(|&i| sets[i]).collect();
        rankings.push(ExperimentRankings {
            experiment: exp,
            quantum: rank_with_sets(&group_records, &group_sets, tols)?,
            classical_delta_star: classical_rank_with_sets(
                &group_records,
                &group_sets,
                ClassicalIndicator::DeltaStar,
                tols,
            )?,
            classical_delta_lower: classical_rank_with_sets(
                &group_records,
                &group_sets,
                ClassicalIndicator::DeltaLower,
                tols,
            )?,
        });
    }
    Ok(TableReport { rows, rankings })
}

/// One out-of-tolerance cell found by check mode.
#[derive(Debug, Clone, Serialize)]
pub struct CellMismatch {
    pub game_id: String,
    pub column: &'static str,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
}

/// Compares computed rows against [`REFERENCE_INDICATORS`] by game id.
/// Returns `(cells_checked, mismatches)`. Rows without a reference entry
/// are ignored; games listed in the reference but absent from `rows`
/// count as mismatches of every cell.
pub fn check_against_reference(rows: &[TableRow]) -> (usize, Vec<CellMismatch>) {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (id, dl, ds, g2, g1, gs, n) in REFERENCE_INDICATORS {
        let Some(row) = rows.iter().find(|r| r.game_id == id) else {
            for column in [
                "delta_lower",
                "delta_star",
                "gamma2",
                "gamma1",
                "gamma_star",
                "n_value",
            ] {
                mismatches.push(CellMismatch {
                    game_id: id.to_owned(),
                    column,
                    computed: f64::NAN,
                    expected: f64::NAN,
                    tolerance: 0.0,
                });
            }
            continue;
        };
        let set = &row.indicators;
        let cells: [(&'static str, f64, f64, f64); 6] = [
            ("delta_lower", set.delta_lower, dl, CHECK_TOL_DELTA),
            ("delta_star", set.delta_star, ds, CHECK_TOL_DELTA),
            ("gamma2", set.gamma2.gamma, g2, CHECK_TOL_GAMMA),
            ("gamma1", set.gamma1.gamma, g1, CHECK_TOL_GAMMA),
            (
                "gamma_star",
                set.gamma_star.unwrap_or(f64::NAN),
                gs,
                CHECK_TOL_GAMMA,
            ),
            ("n_value", set.n_value, n, CHECK_TOL_N),
        ];
        for (column, computed, expected, tolerance) in cells {
            checked += 1;
            // negated so a NaN cell (e.g. a missing root) counts as a
            // mismatch rather than slipping through
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !((computed - expected).abs() <= tolerance) {
                mismatches.push(CellMismatch {
                    game_id: id.to_owned(),
                    column,
                    computed,
                    expected,
                    tolerance,
                });
            }
        }
    }
    (checked, mismatches)
}

fn level_name(level: Option<DecisionLevel>) -> &'static str {
    match level {
        Some(DecisionLevel::NValue) => "n_value",
        Some(DecisionLevel::GammaStar) => "gamma_star",
        Some(DecisionLevel::Gamma1) => "gamma1",
        Some(DecisionLevel::Gamma2) => "gamma2",
        Some(DecisionLevel::DeltaLower) => "delta_lower",
        Some(DecisionLevel::DeltaStar) => "delta_star",
        None => "tie",
    }
}

fn gamma_display(gamma: f64, degrees: bool) -> f64 {
    if degrees {
        gamma.to_degrees()
    } else {
        gamma
    }
}

fn ranking_text(out: &mut String, label: &str, report: &RankingReport) {
    out.push_str(&format!("  {label}:\n    predicted order:"));
    for g in &report.games {
        out.push_str(&format!(" {}", g.game_id));
    }
    out.push('\n');
    match report.concordance {
        Some(c) => out.push_str(&format!("    concordance: {c:.3}\n")),
        None => out.push_str("    concordance: undefined (single game)\n"),
    }
    if !report.trace.is_empty() {
        out.push_str("    decisions:");
        for step in &report.trace {
            out.push_str(&format!(
                " {}>{} [{}]",
                step.first,
                step.second,
                level_name(step.decided_at)
            ));
        }
        out.push('\n');
    }
}

/// Aligned text rendering with reference rounding. `degrees` converts the
/// gamma columns (and relabels them); inputs are always radians.
pub fn render_text(report: &TableReport, degrees: bool) -> String {
    let gamma_suffix = if degrees { " [deg]" } else { "" };
    let mut out = String::new();
    out.push_str(&format!(
        "{:<12} {:<10} {:>6} {:>6} {:>6} {:>6} {:>6} {:>5} {:>8} {:>8} {:>8} {:>8} {:>10} {:>9}\n",
        "game",
        "experiment",
        "a",
        "b",
        "c",
        "d",
        "cp",
        "rank",
        "d_lower",
        "d_star",
        format!("gamma2{gamma_suffix}"),
        format!("gamma1{gamma_suffix}"),
        format!("gamma_star{gamma_suffix}"),
        "n_value",
    ));
    for row in &report.rows {
        let set = &row.indicators;
        let gs = match set.gamma_star {
            Some(g) => format!("{:.3}", gamma_display(g, degrees)),
            None => "none".to_owned(),
        };
        out.push_str(&format!(
            "{:<12} {:<10} {:>6} {:>6} {:>6} {:>6} {:>6.1} {:>5} {:>8.3} {:>8.3} {:>8.3} {:>8.3} {:>10} {:>9.2}\n",
            row.game_id,
            row.experiment.to_string(),
            row.a,
            row.b,
            row.c,
            row.d,
            row.cp,
            row.observed_rank,
            set.delta_lower,
            set.delta_star,
            gamma_display(set.gamma2.gamma, degrees),
            gamma_display(set.gamma1.gamma, degrees),
            gs,
            set.n_value,
        ));
    }
    for rankings in &report.rankings {
        out.push_str(&format!(
            "\nrankings for experiment '{}':\n",
            rankings.experiment
        ));
        ranking_text(
            &mut out,
            "quantum (n_value, gamma_star, gamma1, gamma2)",
            &rankings.quantum,
        );
        ranking_text(
            &mut out,
            "classical delta_star ascending",
            &rankings.classical_delta_star,
        );
        ranking_text(
            &mut out,
            "classical delta_lower ascending",
            &rankings.classical_delta_lower,
        );
    }
    out
}

/// CSV rendering of the table with reference rounding.
pub fn render_csv(report: &TableReport) -> String {
    let mut out = String::from(
        "game_id,experiment,a,b,c,d,cp,observed_rank,delta_lower,delta_star,gamma2,gamma1,gamma_star,n_value\n",
    );
    for row in &report.rows {
        let set = &row.indicators;
        let gs = match set.gamma_star {
            Some(g) => format!("{:.3}", g),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{:.3},{:.3},{:.3},{:.3},{},{:.2}\n",
            row.game_id,
            row.experiment,
            row.a,
            row.b,
            row.c,
            row.d,
            row.cp,
            row.observed_rank,
            set.delta_lower,
            set.delta_star,
            set.gamma2.gamma,
            set.gamma1.gamma,
            gs,
            set.n_value,
        ));
    }
    out
}

/// JSON rendering: full precision per game plus a `rounded` block.
pub fn render_json(report: &TableReport) -> serde_json::Value {
    json!({
        "games": report.rows.iter().map(|row| json!({
            "game_id": row.game_id,
            "experiment": row.experiment,
            "payoff": {"a": row.a, "b": row.b, "c": row.c, "d": row.d},
            "cp": row.cp,
            "observed_rank": row.observed_rank,
            "indicators": row.indicators,
            "rounded": row.rounded(),
        })).collect::<Vec<_>>(),
        "rankings": report.rankings,
    })
}

/// Sweep rows as CSV, full precision. Skipped points become comment
/// lines so they remain visible without breaking the column schema.
pub fn sweep_csv(param: crate::series::PayoffParam, rows: &[SweepRow]) -> String {
    let mut out = format!("{param},delta_star,gamma_star,n_value\n");
    for row in rows {
        match row {
            SweepRow::Point {
                value,
                delta_star,
                gamma_star,
                n_value,
            } => out.push_str(&format!("{value},{delta_star},{gamma_star},{n_value}\n")),
            SweepRow::Skipped { value, reason } => {
                out.push_str(&format!("# skipped {param}={value}: {reason}\n"))
            }
        }
    }
    out
}

/// Scatter points as CSV with a trailing inversion-count comment.
pub fn scatter_csv(points: &[ScatterPoint], inversions: &[(Experiment, usize)]) -> String {
    let mut out = String::from("experiment,game_id,n_value,cp\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            p.experiment, p.game_id, p.n_value, p.cp
        ));
    }
    out.push_str("# inversions:");
    for (exp, count) in inversions {
        out.push_str(&format!(" {exp}={count}"));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::builtin_datasets;
    use crate::equilibria::DEFAULT_TOL_GAMMA;

    fn small_report() -> TableReport {
        table_report(
            &builtin_datasets(),
            &StrategyGrid::new(61, 31).unwrap(),
            DEFAULT_TOL_GAMMA,
            &CompareTolerances::default(),
        )
        .unwrap()
    }

    #[test]
    fn reference_check_passes_on_bundled_data() {
        let report = small_report();
        let (checked, mismatches) = check_against_reference(&report.rows);
        assert_eq!(checked, 54);
        assert!(mismatches.is_empty(), "{mismatches:?}");
    }

    #[test]
    fn reference_check_flags_a_perturbed_cell() {
        let mut report = small_report();
        report.rows[0].indicators.n_value += 0.5;
        let (_, mismatches) = check_against_reference(&report.rows);
        assert_eq!(mismatches.len(), 1);
        assert_eq!(mismatches[0].column, "n_value");
        assert_eq!(mismatches[0].game_id, "blonski-1");
    }

    #[test]
    fn reference_check_flags_missing_games() {
        let report = small_report();
        let (_, mismatches) = check_against_reference(&report.rows[..3]);
        assert_eq!(mismatches.len(), 6 * 6);
    }

    #[test]
    fn csv_rendering_uses_reference_rounding() {
        let report = small_report();
        let csv = render_csv(&report);
        let b2 = csv.lines().find(|l| l.starts_with("blonski-2")).unwrap();
        assert!(b2.ends_with(",-48.45"), "{b2}");
        assert!(b2.contains(",0.322,"));
    }

    #[test]
    fn text_rendering_mentions_rankings_and_degrees() {
        let report = small_report();
        let text = render_text(&report, false);
        assert!(text.contains("blonski-6"));
        assert!(text.contains("concordance: 1.000"));
        let deg = render_text(&report, true);
        assert!(deg.contains("[deg]"));
        // 0.615 rad is about 35.26 degrees
        assert!(deg.contains("35.2") || deg.contains("35.3"), "{deg}");
    }

    #[test]
    fn json_rendering_has_full_precision_and_rounded_block() {
        let report = small_report();
        let value = render_json(&report);
        let games = value["games"].as_array().unwrap();
        assert_eq!(games.len(), 9);
        let first = &games[0];
        assert_eq!(first["rounded"]["delta_lower"], 0.5);
        // full-precision n_value for blonski-1 is 20 pi^3 / 32
        let n = first["indicators"]["n_value"].as_f64().unwrap();
        assert!((n - 20.0 * std::f64::consts::PI.powi(3) / 32.0).abs() < 1e-12);
    }
}
