//! Which equilibrium do adaptive players actually reach?
//!
//! Best-response dynamics: players revise one at a time, switching only when
//! a strictly better reply exists. Starting points partition into basins of
//! attraction, and counting basin sizes — exhaustively for small games,
//! by seeded Monte Carlo for large ones — gives an empirical selection
//! criterion to compare against risk dominance.
//!
//! ```text
//! cargo run --example basin_census
//! ```

use coopnet::adoption::stag_hunt_game;
use coopnet::dynamics::{
    basin_census, compare_prediction, CensusMode, DynamicsConfig, TerminalKind, UpdateOrder,
};
use coopnet::game::DEFAULT_BUDGET;
use coopnet::{AdoptionParams, Real};

fn main() -> coopnet::Result<()> {
    // A 6-player stag hunt is small enough to census exhaustively.
    let params = AdoptionParams::uniform(6, Real::int(10), Real::int(4))?;
    let game = stag_hunt_game(&params);
    let config = DynamicsConfig::default();
    let census = basin_census(&game, &config, CensusMode::Exhaustive, DEFAULT_BUDGET)?;
    println!("Exhaustive census over {} starting profiles:", census.total_runs);
    for ((profile, kind), count) in &census.tallies {
        assert_eq!(*kind, TerminalKind::Nash, "the stag hunt has no cycles");
        println!("  {} <- {count} starts", game.render_profile(profile));
    }

    // Randomized revision order, sampled starts: same tallies shape, and the
    // seed makes every number reproducible.
    let mc_config = DynamicsConfig {
        order: UpdateOrder::Random,
        seed: 7,
        ..DynamicsConfig::default()
    };
    let mode = CensusMode::MonteCarlo { samples: 2000 };
    let census_mc = basin_census(&game, &mc_config, mode, DEFAULT_BUDGET)?;
    println!("\nMonte Carlo census, {} sampled starts (seed 7):", census_mc.total_runs);
    for ((profile, _), count) in &census_mc.tallies {
        println!(
            "  {} <- {count} runs ({:.1}%)",
            game.render_profile(profile),
            100.0 * *count as f64 / census_mc.total_runs as f64
        );
    }
    let rerun = basin_census(&game, &mc_config, mode, DEFAULT_BUDGET)?;
    assert_eq!(rerun.tallies, census_mc.tallies);
    println!("A rerun with the same seed reproduces the census exactly.");

    // With two players the basin counts can be read against risk dominance.
    let small = stag_hunt_game(&AdoptionParams::uniform(2, Real::int(10), Real::int(4))?);
    let small_census = basin_census(
        &small,
        &DynamicsConfig::default(),
        CensusMode::Exhaustive,
        DEFAULT_BUDGET,
    )?;
    let prediction = compare_prediction(&small, &small_census, DEFAULT_BUDGET)?;
    println!(
        "\n2-player check: loss products {} vs {}, basins {} vs {}, agreement: {}",
        prediction.risk.nash_products[0],
        prediction.risk.nash_products[1],
        prediction.basin_counts[0],
        prediction.basin_counts[1],
        prediction.agree
    );
    Ok(())
}
