//! Payoff dominance versus risk dominance in the adoption stag hunt.
//!
//! Two operators decide whether to adopt a new architecture (A) or hold out
//! (D). Adoption pays beta - gamma only if the other side also adopts;
//! adopting alone costs gamma. Everyone-adopts and everyone-holds-out are
//! both strict equilibria: the first is better for both, but whether it is
//! *safer* — risk dominant — depends on how the benefit compares to twice
//! the cost.
//!
//! ```text
//! cargo run --example stag_hunt_risk
//! ```

use coopnet::adoption::stag_hunt_game;
use coopnet::game::{RiskWinner, DEFAULT_BUDGET};
use coopnet::{AdoptionParams, Real};

fn main() -> coopnet::Result<()> {
    let gamma = Real::int(4);
    println!("gamma = {gamma} per player; scanning the adoption benefit beta\n");
    for beta in 5..=12 {
        let params = AdoptionParams::uniform(2, Real::int(beta), gamma.clone())?;
        let game = stag_hunt_game(&params);
        let report = game.enumerate_pure_nash(DEFAULT_BUDGET)?;
        let [adopt, hold_out] = report.equilibria.as_slice() else {
            unreachable!("the stag hunt has exactly two pure equilibria");
        };
        let risk = game.risk_dominance_2p(&adopt.profile, &hold_out.profile)?;
        println!(
            "beta = {beta:2}: equilibria {} ({} each) and {} (0 each); \
             loss products {} vs {}; risk-dominant: {}",
            game.render_profile(&adopt.profile),
            adopt.payoffs[0],
            game.render_profile(&hold_out.profile),
            risk.nash_products[0],
            risk.nash_products[1],
            match risk.winner {
                RiskWinner::First => game.render_profile(&adopt.profile),
                RiskWinner::Second => game.render_profile(&hold_out.profile),
                RiskWinner::Tie => "tie".to_string(),
            }
        );
    }
    println!(
        "\nAdoption is always payoff-dominant, but it only becomes risk-dominant\n\
         once beta - gamma exceeds gamma, i.e. beta > 2 * gamma = 8: coordination\n\
         on the better architecture is rational yet fragile below that line."
    );
    Ok(())
}
