//! Reproduce the full indicator table for the bundled experimental
//! datasets, rank both experiments and verify every cell against the
//! expected values.
//!
//! ```bash
//! cargo run --example results_table
//! ```

use quantum_dilemma::dataset::builtin_datasets;
use quantum_dilemma::equilibria::{StrategyGrid, DEFAULT_TOL_GAMMA};
use quantum_dilemma::ranking::CompareTolerances;
use quantum_dilemma::report::{check_against_reference, render_text, table_report};

fn main() -> quantum_dilemma::Result<()> {
    let records = builtin_datasets();
    let report = table_report(
        &records,
        &StrategyGrid::default(),
        DEFAULT_TOL_GAMMA,
        &CompareTolerances::default(),
    )?;
    print!("{}", render_text(&report, false));

    let (checked, mismatches) = check_against_reference(&report.rows);
    if mismatches.is_empty() {
        println!("\nregression check: all {checked} cells within tolerance");
    } else {
        println!("\nregression check: {} mismatches", mismatches.len());
        for m in mismatches {
            println!(
                "  {} {}: computed {:.4}, expected {:.4}",
                m.game_id, m.column, m.computed, m.expected
            );
        }
    }
    Ok(())
}
