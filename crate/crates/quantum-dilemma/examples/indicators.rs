//! Compute the six cooperation indicators of one game and cross-check
//! the cooperation gap's closed form against its defining integral.
//!
//! ```bash
//! cargo run --example indicators -- 70 100 90 80
//! ```
//! (defaults to that matrix when no arguments are given)

use quantum_dilemma::indicators::{
    cooperation_gap, cooperation_gap_quadrature, indicator_set, GAP_QUADRATURE_NODES,
};
use quantum_dilemma::{Entanglement, PayoffMatrix};

fn main() -> quantum_dilemma::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("payoffs are numbers"))
        .collect();
    let game = match args.as_slice() {
        [a, b, c, d] => PayoffMatrix::new(*a, *b, *c, *d)?,
        _ => PayoffMatrix::new(70.0, 100.0, 90.0, 80.0)?,
    };

    let set = indicator_set(&game)?;
    println!(
        "payoffs: a={} b={} c={} d={}",
        game.a(),
        game.b(),
        game.c(),
        game.d()
    );
    println!("delta_lower = {:.3}", set.delta_lower);
    println!("delta_star  = {:.3}", set.delta_star);
    println!(
        "gamma2      = {:.3}  (quantum-quantum equilibrium appears)",
        set.gamma2.gamma
    );
    println!(
        "gamma1      = {:.3}  (defect-defect equilibrium dissolves)",
        set.gamma1.gamma
    );
    match set.gamma_star {
        Some(g) => println!("gamma_star  = {g:.3}  (cooperation gap changes sign)"),
        None => println!("gamma_star  = none"),
    }
    println!("n_value     = {:.2}", set.n_value);

    println!("\ncooperation gap along gamma (closed form vs quadrature):");
    for k in 0..=6 {
        let gamma = Entanglement::new(std::f64::consts::FRAC_PI_2 * k as f64 / 6.0)?;
        let closed = cooperation_gap(&game, gamma);
        let quad = cooperation_gap_quadrature(&game, gamma, GAP_QUADRATURE_NODES);
        println!(
            "  gamma = {:.4}  closed = {closed:>10.4}  quadrature = {quad:>10.4}  |diff| = {:.2e}",
            gamma.gamma(),
            (closed - quad).abs()
        );
    }
    Ok(())
}
