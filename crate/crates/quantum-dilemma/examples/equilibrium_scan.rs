//! Scan the named strategy profiles for Nash equilibria at several
//! entanglement levels, then locate the two barriers by bisection.
//!
//! ```bash
//! cargo run --example equilibrium_scan
//! ```

use quantum_dilemma::equilibria::{
    gamma1_barrier, gamma2_barrier, nash_scan, StrategyGrid, DEFAULT_NASH_TOL, DEFAULT_TOL_GAMMA,
    NAMED_STRATEGIES,
};
use quantum_dilemma::{Entanglement, PayoffMatrix};

fn main() -> quantum_dilemma::Result<()> {
    let game = PayoffMatrix::new(70.0, 100.0, 90.0, 80.0)?;
    let grid = StrategyGrid::default();

    for gamma in [0.0, 0.4, 0.7, std::f64::consts::FRAC_PI_2] {
        let gamma = Entanglement::new(gamma)?;
        println!("gamma = {:.4}", gamma.gamma());
        let certs = nash_scan(&game, gamma, &grid, DEFAULT_NASH_TOL);
        let mut labels = NAMED_STRATEGIES
            .iter()
            .flat_map(|(na, _)| NAMED_STRATEGIES.iter().map(move |(nb, _)| (*na, *nb)));
        for cert in &certs {
            let (na, nb) = labels.next().expect("nine profiles");
            println!(
                "  ({na},{nb})  epsilon = {:>12.6}  {}",
                cert.epsilon,
                if cert.certified { "nash" } else { "" }
            );
        }
        println!();
    }

    // between the barriers neither (D,D) nor (Q,Q) is an equilibrium
    let g1 = gamma1_barrier(&game, &grid, DEFAULT_TOL_GAMMA)?;
    let g2 = gamma2_barrier(&game, &grid, DEFAULT_TOL_GAMMA)?;
    println!("(D,D) dissolves at gamma1 = {:.4}", g1.gamma);
    println!("(Q,Q) appears at  gamma2 = {:.4}", g2.gamma);
    Ok(())
}
