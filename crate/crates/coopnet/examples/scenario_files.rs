//! Driving analyses from JSON scenario files.
//!
//! Everything the `coopnet` binary does is available as a library call: parse
//! a scenario, pick an analysis, and get back a text report plus CSV tables.
//! Numbers written as integers or "p/q" strings stay exact all the way
//! through; decimals flow through as floating point.
//!
//! ```text
//! cargo run --example scenario_files
//! ```

use coopnet::scenario::{run_scenario, Analysis, RunOptions, Scenario};

const SCENARIO: &str = r#"{
  "kind": "insurance",
  "analysis": "dynamics",
  "n_players": 3,
  "beta": 10,
  "gamma": 4,
  "epsilon": 1,
  "initial": ["D", "D", "D"]
}"#;

fn main() -> coopnet::Result<()> {
    let scenario = Scenario::parse(SCENARIO, None)?;
    let analysis = scenario.analysis_or(None)?;
    let report = run_scenario(&scenario, analysis, &RunOptions::default())?;

    println!("--- text report ---");
    print!("{}", report.text);

    for table in &report.tables {
        println!("--- {} ---", table.name);
        print!("{}", table.csv);
    }

    // The same scenario can be re-run under a different analysis: a census
    // of every starting profile instead of one trajectory.
    let census = run_scenario(&scenario, Analysis::Census, &RunOptions::default())?;
    println!("--- census of the same game ---");
    print!("{}", census.text);
    Ok(())
}
