//! Insurance dissolves the coordination trap.
//!
//! Holding out is safe in the stag hunt because lone adopters eat the cost.
//! Add a third choice B — adopt *and* buy insurance for a premium epsilon,
//! receiving delta if adoption fails — and the trap disappears: B strictly
//! dominates holding out, and once nobody holds out, plain adoption beats
//! paying the premium. The unique equilibrium is universal uninsured
//! adoption, where the insurer collects nothing and pays nothing.
//!
//! ```text
//! cargo run --example insurance_rollout
//! ```

use coopnet::adoption::{insurance_game, insurer_ledger};
use coopnet::dynamics::{run_dynamics, DynamicsConfig};
use coopnet::game::DEFAULT_BUDGET;
use coopnet::{AdoptionParams, InsuranceParams, Real};

fn main() -> coopnet::Result<()> {
    let n = 3;
    let params = AdoptionParams::uniform(n, Real::int(10), Real::int(4))?;
    // Premium 1 for full coverage: delta equals the adoption benefit.
    let insurance = InsuranceParams::covering(&params, vec![Real::int(1); n])?;
    let game = insurance_game(&params, &insurance)?;

    let report = game.enumerate_pure_nash(DEFAULT_BUDGET)?;
    println!("Equilibria of the insured adoption game ({n} players):");
    for eq in &report.equilibria {
        println!(
            "  {} payoffs ({})",
            game.render_profile(&eq.profile),
            eq.payoffs
                .iter()
                .map(Real::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        );
    }

    // Why it is unique, at one concrete profile per step:
    let d_vs_b = |profile: &[&str], player: usize| -> coopnet::Result<(Real, Real)> {
        let at = game.profile(profile)?;
        let payoff = game.payoff_one(&at, player)?;
        let switched = at.with_choice(player, 1); // B
        Ok((payoff, game.payoff_one(&switched, player)?))
    };
    let (holding, insured) = d_vs_b(&["D", "D", "D"], 0)?;
    println!(
        "\n1. Insured adoption dominates holding out: at (D, D, D) player 0\n\
         \x20  gets {holding} from D but {insured} from B (delta - gamma - epsilon > 0)."
    );
    let everyone_b = game.profile(&["B", "B", "B"])?;
    let b_payoff = game.payoff_one(&everyone_b, 0)?;
    let a_payoff = game.payoff_one(&everyone_b.with_choice(0, 0), 0)?;
    println!(
        "2. Once nobody holds out, adoption succeeds, so the premium is waste:\n\
         \x20  at (B, B, B) player 0 gets {b_payoff}, switching to A gets {a_payoff}."
    );
    println!("3. Hence every best-response path drains into universal adoption:");

    let start = game.profile(&["D", "D", "D"])?;
    let path = run_dynamics(&game, &start, &DynamicsConfig::default())?;
    for (update, profile) in path.updates.iter().zip(path.profiles.iter().skip(1)) {
        println!(
            "   player {} switches {} -> {}, reaching {}",
            update.player,
            game.label(update.player, update.from),
            game.label(update.player, update.to),
            game.render_profile(profile)
        );
    }

    let terminal = path.terminal_profile();
    let ledger = insurer_ledger(&game, &insurance, terminal)?;
    println!(
        "\nAt the terminal {} the insurer books premiums {}, reimbursements {}, net {}:\n\
         coverage did all its work off the equilibrium path.",
        game.render_profile(terminal),
        ledger.premiums,
        ledger.reimbursements,
        ledger.net
    );
    Ok(())
}
