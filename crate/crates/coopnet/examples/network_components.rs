//! Adoption value that grows with the connected mass of adopters.
//!
//! On an interaction graph, an adopter's benefit scales with the size of its
//! *component* of adopters — beta * (size / N)^p — so the same choice is
//! worth more inside a large connected cluster than in a fragmented one.
//! This example parses a small topology from edge-list text, shows how
//! payoffs shift as a bridge node adopts, and enumerates the equilibria.
//!
//! ```text
//! cargo run --example network_components
//! ```

use coopnet::adoption::component_adoption_game;
use coopnet::game::DEFAULT_BUDGET;
use coopnet::{AdoptionParams, Graph, Real};

const TOPOLOGY: &str = "\
# Two triangles joined through the 2-3 bridge.
nodes 6
0 1
0 2
1 2
2 3
3 4
3 5
4 5
";

fn main() -> coopnet::Result<()> {
    let graph = Graph::parse_edge_list(TOPOLOGY)?;
    println!(
        "Parsed {} nodes and {} edges.",
        graph.n_nodes(),
        graph.edges().len()
    );

    let n = graph.n_nodes();
    let params = AdoptionParams::uniform(n, Real::int(30), Real::int(2))?;
    let game = component_adoption_game(&graph, &params, 2)?;

    // Both triangles adopt but the bridge node 3 holds out (D): node 2's
    // cluster is only the left triangle.
    let split = game.profile(&["A", "A", "A", "D", "A", "A"])?;
    let joined = split.with_choice(3, 0);
    println!("\nWith the bridge holding out, {}:", game.render_profile(&split));
    for node in [0, 2, 4] {
        println!("  node {node} earns {}", game.payoff_one(&split, node)?);
    }
    println!("Once the bridge adopts, {}:", game.render_profile(&joined));
    for node in [0, 2, 3, 4] {
        println!("  node {node} earns {}", game.payoff_one(&joined, node)?);
    }
    println!("One switch more than doubles every adopter's component share.");

    let report = game.enumerate_pure_nash(DEFAULT_BUDGET)?;
    println!(
        "\n{} pure equilibria over {} profiles:",
        report.equilibria.len(),
        report.search_space_size
    );
    for eq in &report.equilibria {
        println!("  {}", game.render_profile(&eq.profile));
    }
    if let Some(best) = report.unique_pareto_dominant() {
        println!(
            "Pareto-dominant: {} with payoff {} per node.",
            game.render_profile(&best.profile),
            best.payoffs[0]
        );
    }
    Ok(())
}
