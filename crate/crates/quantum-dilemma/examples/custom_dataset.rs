//! Build a custom experiment, write it in the dataset CSV format, read
//! it back and rank it.
//!
//! ```bash
//! cargo run --example custom_dataset
//! ```

use quantum_dilemma::dataset::{read_csv, write_csv, Experiment, GameRecord};
use quantum_dilemma::ranking::{rank_experiment, CompareTolerances};
use quantum_dilemma::PayoffMatrix;

fn main() -> quantum_dilemma::Result<()> {
    // three hypothetical games with the same temptation and punishment
    // but increasingly generous rewards
    let games = [("mild", 60.0), ("fair", 75.0), ("generous", 88.0)];
    let records: Vec<GameRecord> = games
        .iter()
        .enumerate()
        .map(|(i, (name, c))| {
            Ok(GameRecord {
                game_id: (*name).to_owned(),
                experiment: Experiment::Custom,
                payoff: PayoffMatrix::new(10.0, 100.0, *c, 40.0)?,
                // a made-up observation: cooperation grows with the reward
                cp: 10.0 + 8.0 * i as f64,
                observed_rank: (games.len() - i) as u32,
                delta_continuation: 0.75,
            })
        })
        .collect::<quantum_dilemma::Result<_>>()?;

    let mut csv = Vec::new();
    write_csv(&mut csv, &records)?;
    println!("dataset file:\n{}", String::from_utf8_lossy(&csv));

    let parsed = read_csv(csv.as_slice())?;
    let report = rank_experiment(&parsed, &CompareTolerances::default())?;
    println!("predicted cooperation order (most cooperative first):");
    for g in &report.games {
        println!(
            "  {:<9} predicted rank {} observed rank {}  n_value {:8.2}",
            g.game_id, g.predicted_rank, g.observed_rank, g.indicators.n_value
        );
    }
    if let Some(c) = report.concordance {
        println!("concordance with the observed ranks: {c:.3}");
    }
    Ok(())
}
