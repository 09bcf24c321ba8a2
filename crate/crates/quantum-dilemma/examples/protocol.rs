//! Walk through the protocol pipeline for the named strategies:
//! entangle, apply local unitaries, disentangle, measure.
//!
//! ```bash
//! cargo run --example protocol
//! ```

use quantum_dilemma::{
    expected_payoffs, final_state, outcome_distribution, Entanglement, PayoffMatrix, StrategyParams,
};

fn main() -> quantum_dilemma::Result<()> {
    let game = PayoffMatrix::new(70.0, 100.0, 90.0, 80.0)?;
    let profiles = [
        (
            "C vs C",
            StrategyParams::COOPERATE,
            StrategyParams::COOPERATE,
        ),
        ("C vs D", StrategyParams::COOPERATE, StrategyParams::DEFECT),
        ("D vs D", StrategyParams::DEFECT, StrategyParams::DEFECT),
        ("Q vs D", StrategyParams::QUANTUM, StrategyParams::DEFECT),
        ("Q vs Q", StrategyParams::QUANTUM, StrategyParams::QUANTUM),
    ];

    for gamma in [0.0, 0.5, std::f64::consts::FRAC_PI_2] {
        let gamma = Entanglement::new(gamma)?;
        println!("entanglement gamma = {:.4}", gamma.gamma());
        for (label, ua, ub) in profiles {
            let state = final_state(ua, ub, gamma);
            let dist = outcome_distribution(&state)?;
            let pay = expected_payoffs(&game, &dist);
            println!(
                "  {label}:  P(CC)={:.3} P(CD)={:.3} P(DC)={:.3} P(DD)={:.3}  payoffs ({:.2}, {:.2})",
                dist.p_cc, dist.p_cd, dist.p_dc, dist.p_dd, pay.payoff_a, pay.payoff_b
            );
        }
        println!();
    }

    // the defector's classical edge disappears as entanglement grows:
    // against Q, playing D wins the temptation payoff only at gamma = 0
    println!("payoff of D against Q as entanglement rises:");
    for k in 0..=8 {
        let gamma = Entanglement::new(std::f64::consts::FRAC_PI_2 * k as f64 / 8.0)?;
        let state = final_state(StrategyParams::DEFECT, StrategyParams::QUANTUM, gamma);
        let pay = expected_payoffs(&game, &outcome_distribution(&state)?);
        println!(
            "  gamma = {:.4}  payoff_A = {:.2}",
            gamma.gamma(),
            pay.payoff_a
        );
    }
    Ok(())
}
