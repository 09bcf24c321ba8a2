//! Emit the two figure data series as CSV: the indicator sweep along the
//! reward parameter c (holding a=12, b=50, d=25) and the cooperation
//! percentage against n_value for the bundled games.
//!
//! ```bash
//! cargo run --example figure_data
//! ```

use quantum_dilemma::dataset::builtin_datasets;
use quantum_dilemma::report::{scatter_csv, sweep_csv};
use quantum_dilemma::series::{scatter_series, sweep_series, PayoffParam};

fn main() -> quantum_dilemma::Result<()> {
    println!("# gamma_star and delta_star as functions of c (a=12, b=50, d=25)");
    let rows = sweep_series(PayoffParam::C, 26.0, 49.0, 0.5, (12.0, 50.0, 0.0, 25.0))?;
    print!("{}", sweep_csv(PayoffParam::C, &rows));

    println!();
    println!("# observed cooperation percentage vs n_value");
    let (points, inversions) = scatter_series(&builtin_datasets())?;
    print!("{}", scatter_csv(&points, &inversions));
    Ok(())
}
