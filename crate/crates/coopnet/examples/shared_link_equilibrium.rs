//! The one-shot dilemma on a shared link.
//!
//! Two flows cross a bottleneck. Each either restrains itself (C) or floods
//! (D). A lone flooder grabs most of the link, but mutual flooding collapses
//! throughput for everyone — and flooding is nonetheless the unique
//! equilibrium of the one-shot game. Run with:
//!
//! ```text
//! cargo run --example shared_link_equilibrium
//! ```

use coopnet::game::DEFAULT_BUDGET;
use coopnet::PdSchedule;

fn main() -> coopnet::Result<()> {
    let schedule = PdSchedule::fig1();
    let game = schedule.stage_game();

    println!("Stage game for {} flows:", game.n_players());
    for profile in game.profiles() {
        let payoffs = game.payoff(&profile)?;
        println!(
            "  {} -> ({}, {})",
            game.render_profile(&profile),
            payoffs[0],
            payoffs[1]
        );
    }

    let report = game.enumerate_pure_nash(DEFAULT_BUDGET)?;
    println!("\nPure Nash equilibria ({} found):", report.equilibria.len());
    for eq in &report.equilibria {
        println!(
            "  {} with payoffs ({}, {}){}",
            game.render_profile(&eq.profile),
            eq.payoffs[0],
            eq.payoffs[1],
            if eq.strict { ", strict" } else { "" }
        );
    }

    // The dilemma in one line: the unique equilibrium is Pareto-dominated by
    // mutual restraint, which is not an equilibrium.
    let restrained = game.profile(&["C", "C"])?;
    let flooded = &report.equilibria[0].profile;
    println!(
        "\nMutual restraint {} pays ({}, {}) yet each flow gains by flooding;",
        game.render_profile(&restrained),
        game.payoff(&restrained)?[0],
        game.payoff(&restrained)?[1],
    );
    println!(
        "the unique equilibrium {} leaves both far worse off.",
        game.render_profile(flooded)
    );
    Ok(())
}
