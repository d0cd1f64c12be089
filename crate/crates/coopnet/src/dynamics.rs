//! Asynchronous best-response dynamics and basin censuses.
//!
//! One player moves at a time and only ever to a strict improvement; a
//! player already best-responding keeps its strategy, and among improving
//! moves the lowest strategy index wins. Updates follow either a fixed
//! round-robin or a seeded random order, so every run is reproducible. A
//! run ends at a Nash profile, on revisiting a (profile, mover) pair, or
//! when the step budget runs out.
//!
//! A basin census replays the dynamics from every profile (or from sampled
//! ones) and tallies where they land, which is how the risk-dominance
//! prediction gets confronted with actual basin sizes in
//! [`compare_prediction`].

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Equilibrium, Profile, RiskDominance, StrategicGame};

/// Which player moves next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateOrder {
    /// Round-robin 0, 1, ..., N-1, repeating.
    Fixed,
    /// A fresh seeded permutation of the players each round.
    Random,
}

#[derive(Clone, Copy, Debug)]
pub struct DynamicsConfig {
    pub order: UpdateOrder,
    /// Budget on best-response evaluations (visits), not just applied moves.
    pub max_steps: usize,
    /// Seeds the permutation stream when `order` is random.
    pub seed: u64,
}

impl Default for DynamicsConfig {
    fn default() -> DynamicsConfig {
        DynamicsConfig {
            order: UpdateOrder::Fixed,
            max_steps: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TerminalKind {
    /// Every player is best-responding at the final profile.
    Nash,
    /// A (profile, mover) pair came up a second time.
    Cycle,
    /// `max_steps` evaluations elapsed first.
    BudgetExhausted,
}

/// One applied move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Update {
    /// Index into the run's visit sequence at which the move happened.
    pub step: usize,
    pub player: usize,
    pub from: usize,
    pub to: usize,
}

/// A single run of the dynamics.
#[derive(Clone, Debug)]
pub struct DynamicsPath {
    /// The initial profile followed by the profile after each applied move.
    pub profiles: Vec<Profile>,
    pub updates: Vec<Update>,
    pub terminal_kind: TerminalKind,
    pub updates_applied: usize,
}

impl DynamicsPath {
    pub fn terminal_profile(&self) -> &Profile {
        self.profiles.last().expect("paths hold at least the start")
    }
}

/// Run the dynamics from `initial` under a private generator seeded from
/// `config.seed`.
pub fn run_dynamics(
    game: &StrategicGame,
    initial: &Profile,
    config: &DynamicsConfig,
) -> Result<DynamicsPath> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    run_dynamics_with_rng(game, initial, config, &mut rng)
}

/// As [`run_dynamics`], but drawing any random order from the caller's
/// generator; the census uses this to give every run its own stream.
fn run_dynamics_with_rng(
    game: &StrategicGame,
    initial: &Profile,
    config: &DynamicsConfig,
    rng: &mut ChaCha8Rng,
) -> Result<DynamicsPath> {
    if config.max_steps == 0 {
        return Err(Error::Param("max_steps must be at least 1".into()));
    }
    game.payoff(initial)?; // validates the profile
    let n = game.n_players();
    let mut profile = initial.clone();
    let mut profiles = vec![profile.clone()];
    let mut updates: Vec<Update> = Vec::new();
    // (profile, mover) -> number of updates applied when first seen. A
    // revisit after further updates is a genuine cycle; a revisit with no
    // intervening update just re-confirms a settled player (random orders
    // can repeat a player across a round boundary) and is skipped.
    let mut visited: HashMap<(Profile, usize), usize> = HashMap::new();
    // Players confirmed best-responding since the last applied move.
    let mut settled = vec![false; n];
    let mut settled_count = 0;
    let mut round: Vec<usize> = (0..n).collect();
    if config.order == UpdateOrder::Random {
        round.shuffle(rng);
    }
    let mut round_pos = 0;
    let mut steps = 0;
    let terminal_kind = loop {
        if settled_count == n {
            break TerminalKind::Nash;
        }
        if steps == config.max_steps {
            break TerminalKind::BudgetExhausted;
        }
        if round_pos == n {
            round_pos = 0;
            if config.order == UpdateOrder::Random {
                round.shuffle(rng);
            }
        }
        let player = round[round_pos];
        round_pos += 1;
        match visited.get(&(profile.clone(), player)) {
            Some(&seen_at) if seen_at < updates.len() => break TerminalKind::Cycle,
            Some(_) => continue,
            None => {
                visited.insert((profile.clone(), player), updates.len());
            }
        }
        steps += 1;
        let responses = game.best_responses(&profile, player)?;
        let current = profile.choice(player);
        if responses.contains(&current) {
            if !settled[player] {
                settled[player] = true;
                settled_count += 1;
            }
        } else {
            let target = responses[0];
            updates.push(Update {
                step: steps - 1,
                player,
                from: current,
                to: target,
            });
            profile = profile.with_choice(player, target);
            profiles.push(profile.clone());
            settled.fill(false);
            settled_count = 0;
        }
    };
    let updates_applied = updates.len();
    Ok(DynamicsPath {
        profiles,
        updates,
        terminal_kind,
        updates_applied,
    })
}

/// How a census picks its starting profiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    /// Every profile once, in lexicographic order.
    Exhaustive,
    /// Uniformly sampled starting profiles.
    MonteCarlo { samples: u64 },
}

/// Tallies of where the dynamics settle.
#[derive(Clone, Debug)]
pub struct CensusResult {
    /// (terminal profile, how the run ended) -> number of runs.
    pub tallies: BTreeMap<(Profile, TerminalKind), u64>,
    pub total_runs: u64,
    pub mode: CensusMode,
}

impl CensusResult {
    /// Runs that ended at `profile` as a Nash point.
    pub fn nash_count(&self, profile: &Profile) -> u64 {
        self.tallies
            .get(&(profile.clone(), TerminalKind::Nash))
            .copied()
            .unwrap_or(0)
    }
}

/// Replay the dynamics from many starting profiles and tally the terminals.
///
/// Run `r` draws its randomness (starting profile in Monte Carlo mode, any
/// random update order) from a generator derived from `(config.seed, r)`,
/// so results are identical no matter how runs are scheduled. Exhaustive
/// mode refuses when the profile space exceeds `budget`.
pub fn basin_census(
    game: &StrategicGame,
    config: &DynamicsConfig,
    mode: CensusMode,
    budget: u64,
) -> Result<CensusResult> {
    let mut tallies: BTreeMap<(Profile, TerminalKind), u64> = BTreeMap::new();
    let run_rng = |run: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(run.wrapping_add(1));
        rng
    };
    let total_runs = match mode {
        CensusMode::Exhaustive => {
            let size = game.search_space_size();
            if size > budget as u128 {
                return Err(Error::BudgetExceeded {
                    required: size,
                    budget,
                });
            }
            let mut run = 0u64;
            for initial in game.profiles() {
                let mut rng = run_rng(run);
                let path = run_dynamics_with_rng(game, &initial, config, &mut rng)?;
                *tallies
                    .entry((path.terminal_profile().clone(), path.terminal_kind))
                    .or_insert(0) += 1;
                run += 1;
            }
            run
        }
        CensusMode::MonteCarlo { samples } => {
            if samples == 0 {
                return Err(Error::Param("a census needs at least one sample".into()));
            }
            for run in 0..samples {
                let mut rng = run_rng(run);
                let initial = Profile::new(
                    (0..game.n_players())
                        .map(|p| rng.gen_range(0..game.n_strategies(p)))
                        .collect(),
                );
                let path = run_dynamics_with_rng(game, &initial, config, &mut rng)?;
                *tallies
                    .entry((path.terminal_profile().clone(), path.terminal_kind))
                    .or_insert(0) += 1;
            }
            samples
        }
    };
    Ok(CensusResult {
        tallies,
        total_runs,
        mode,
    })
}

/// Risk dominance confronted with basin sizes.
#[derive(Clone, Debug)]
pub struct PredictionReport {
    /// The two strict equilibria, in lexicographic order.
    pub equilibria: [Equilibrium; 2],
    pub risk: RiskDominance,
    /// Census runs ending at each equilibrium.
    pub basin_counts: [u64; 2],
    /// True when the risk-dominant equilibrium has the weakly larger basin;
    /// vacuously true on a risk tie.
    pub agree: bool,
}

/// For a 2-player game with exactly two strict pure equilibria, compare the
/// risk-dominance prediction against census basin sizes.
pub fn compare_prediction(
    game: &StrategicGame,
    census: &CensusResult,
    budget: u64,
) -> Result<PredictionReport> {
    if game.n_players() != 2 {
        return Err(Error::Precondition(format!(
            "prediction comparison is defined for 2-player games, got {}",
            game.n_players()
        )));
    }
    let report = game.enumerate_pure_nash(budget)?;
    let strict: Vec<&Equilibrium> = report.equilibria.iter().filter(|e| e.strict).collect();
    let [a, b] = strict.as_slice() else {
        return Err(Error::Precondition(format!(
            "prediction comparison needs exactly two strict equilibria, found {}",
            strict.len()
        )));
    };
    let risk = game.risk_dominance_2p(&a.profile, &b.profile)?;
    let counts = [census.nash_count(&a.profile), census.nash_count(&b.profile)];
    let agree = match risk.winner {
        crate::game::RiskWinner::First => counts[0] >= counts[1],
        crate::game::RiskWinner::Second => counts[1] >= counts[0],
        crate::game::RiskWinner::Tie => true,
    };
    Ok(PredictionReport {
        equilibria: [(*a).clone(), (*b).clone()],
        risk,
        basin_counts: counts,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adoption::{
        insurance_game, stag_hunt_game, AdoptionParams, InsuranceParams,
    };
    use crate::game::{RiskWinner, DEFAULT_BUDGET};
    use crate::real::Real;

    fn stag(n: usize, beta: i64) -> StrategicGame {
        stag_hunt_game(&AdoptionParams::uniform(n, Real::int(beta), Real::int(4)).unwrap())
    }

    fn insured(n: usize) -> StrategicGame {
        let params = AdoptionParams::uniform(n, Real::int(10), Real::int(4)).unwrap();
        let ins = InsuranceParams::covering(&params, vec![Real::int(1); n]).unwrap();
        insurance_game(&params, &ins).unwrap()
    }

    #[test]
    fn a_nash_start_stays_put() {
        let g = stag(2, 10);
        let all_d = g.profile(&["D", "D"]).unwrap();
        let path = run_dynamics(&g, &all_d, &DynamicsConfig::default()).unwrap();
        assert_eq!(path.terminal_kind, TerminalKind::Nash);
        assert_eq!(path.updates_applied, 0);
        assert_eq!(path.profiles, vec![all_d]);
    }

    #[test]
    fn a_lone_holdout_gets_pulled_in() {
        let g = stag(2, 10);
        let start = g.profile(&["D", "A"]).unwrap();
        let path = run_dynamics(&g, &start, &DynamicsConfig::default()).unwrap();
        assert_eq!(path.terminal_kind, TerminalKind::Nash);
        assert_eq!(g.render_profile(path.terminal_profile()), "(A, A)");
        assert_eq!(path.updates_applied, 1);
    }

    #[test]
    fn the_insured_rollout_goes_d_to_b_to_a() {
        // From everyone holding out: a two-hop migration per player, first
        // into the insured contract, then dropping the premium.
        let g = insured(3);
        let start = g.profile(&["D", "D", "D"]).unwrap();
        let path = run_dynamics(&g, &start, &DynamicsConfig::default()).unwrap();
        assert_eq!(path.terminal_kind, TerminalKind::Nash);
        let rendered: Vec<String> = path
            .profiles
            .iter()
            .map(|p| g.render_profile(p))
            .collect();
        assert_eq!(
            rendered,
            vec![
                "(D, D, D)",
                "(B, D, D)",
                "(B, B, D)",
                "(B, B, A)",
                "(A, B, A)",
                "(A, A, A)",
            ]
        );
        // Every applied move strictly improves the mover.
        for (w, u) in path.profiles.windows(2).zip(&path.updates) {
            let before = g.payoff_one(&w[0], u.player).unwrap();
            let after = g.payoff_one(&w[1], u.player).unwrap();
            assert!(after.gt_eps(&before));
        }
    }

    #[test]
    fn random_order_is_reproducible_and_reaches_the_same_equilibrium() {
        let g = insured(4);
        let start = g.profile(&["D", "D", "D", "D"]).unwrap();
        let config = DynamicsConfig {
            order: UpdateOrder::Random,
            seed: 314,
            ..DynamicsConfig::default()
        };
        let a = run_dynamics(&g, &start, &config).unwrap();
        let b = run_dynamics(&g, &start, &config).unwrap();
        assert_eq!(a.profiles, b.profiles);
        assert_eq!(a.terminal_kind, TerminalKind::Nash);
        assert_eq!(
            g.render_profile(a.terminal_profile()),
            "(A, A, A, A)"
        );
        let other_seed = DynamicsConfig {
            seed: 59,
            ..config
        };
        let c = run_dynamics(&g, &start, &other_seed).unwrap();
        assert_eq!(c.terminal_kind, TerminalKind::Nash);
        assert_eq!(g.render_profile(c.terminal_profile()), "(A, A, A, A)");
    }

    #[test]
    fn matching_pennies_dynamics_cycle() {
        let g = StrategicGame::from_table(
            vec![
                vec!["H".into(), "T".into()],
                vec!["H".into(), "T".into()],
            ],
            vec![
                vec![Real::int(1), Real::int(-1)],
                vec![Real::int(-1), Real::int(1)],
                vec![Real::int(-1), Real::int(1)],
                vec![Real::int(1), Real::int(-1)],
            ],
        )
        .unwrap();
        let start = g.profile(&["H", "H"]).unwrap();
        let path = run_dynamics(&g, &start, &DynamicsConfig::default()).unwrap();
        assert_eq!(path.terminal_kind, TerminalKind::Cycle);
        assert!(path.updates_applied > 0);
    }

    #[test]
    fn a_tiny_budget_reports_exhaustion() {
        let g = insured(3);
        let start = g.profile(&["D", "D", "D"]).unwrap();
        let config = DynamicsConfig {
            max_steps: 2,
            ..DynamicsConfig::default()
        };
        let path = run_dynamics(&g, &start, &config).unwrap();
        assert_eq!(path.terminal_kind, TerminalKind::BudgetExhausted);
        assert!(matches!(
            run_dynamics(&g, &start, &DynamicsConfig { max_steps: 0, ..DynamicsConfig::default() }),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn exhaustive_census_of_the_stag_hunt_splits_evenly() {
        let g = stag(2, 10);
        let census = basin_census(
            &g,
            &DynamicsConfig::default(),
            CensusMode::Exhaustive,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(census.total_runs, 4);
        let all_a = g.profile(&["A", "A"]).unwrap();
        let all_d = g.profile(&["D", "D"]).unwrap();
        assert_eq!(census.nash_count(&all_a), 2);
        assert_eq!(census.nash_count(&all_d), 2);
    }

    #[test]
    fn exhaustive_census_of_the_insured_game_funnels_everything_to_adoption() {
        let g = insured(2);
        let census = basin_census(
            &g,
            &DynamicsConfig::default(),
            CensusMode::Exhaustive,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(census.total_runs, 9);
        let all_a = g.profile(&["A", "A"]).unwrap();
        assert_eq!(census.nash_count(&all_a), 9);
        assert_eq!(census.tallies.len(), 1);
    }

    #[test]
    fn census_respects_the_budget() {
        let g = insured(2);
        assert!(matches!(
            basin_census(&g, &DynamicsConfig::default(), CensusMode::Exhaustive, 8),
            Err(Error::BudgetExceeded {
                required: 9,
                budget: 8
            })
        ));
    }

    #[test]
    fn monte_carlo_census_is_seed_deterministic() {
        let g = stag(3, 10);
        let config = DynamicsConfig {
            order: UpdateOrder::Random,
            seed: 7,
            ..DynamicsConfig::default()
        };
        let mode = CensusMode::MonteCarlo { samples: 64 };
        let a = basin_census(&g, &config, mode, DEFAULT_BUDGET).unwrap();
        let b = basin_census(&g, &config, mode, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.tallies, b.tallies);
        assert_eq!(a.total_runs, 64);
        let other = basin_census(
            &g,
            &DynamicsConfig { seed: 8, ..config },
            mode,
            DEFAULT_BUDGET,
        )
        .unwrap();
        // A different seed may move tallies, but the support stays within
        // the two equilibria.
        for (p, kind) in other.tallies.keys() {
            assert_eq!(*kind, TerminalKind::Nash);
            assert!(g.is_pure_nash(p).unwrap());
        }
    }

    #[test]
    fn prediction_matches_basins_on_either_side_of_the_flip() {
        for (beta, expected) in [(10, RiskWinner::First), (6, RiskWinner::Second)] {
            let g = stag(2, beta);
            let census = basin_census(
                &g,
                &DynamicsConfig::default(),
                CensusMode::Exhaustive,
                DEFAULT_BUDGET,
            )
            .unwrap();
            let report = compare_prediction(&g, &census, DEFAULT_BUDGET).unwrap();
            assert_eq!(report.risk.winner, expected);
            assert!(report.agree, "beta = {beta}: {report:?}");
        }
        // At the boundary the products tie and agreement is vacuous.
        let g = stag(2, 8);
        let census = basin_census(
            &g,
            &DynamicsConfig::default(),
            CensusMode::Exhaustive,
            DEFAULT_BUDGET,
        )
        .unwrap();
        let report = compare_prediction(&g, &census, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.risk.winner, RiskWinner::Tie);
        assert!(report.agree);
    }

    #[test]
    fn prediction_rejects_games_without_two_strict_equilibria() {
        let g = insured(2);
        let census = basin_census(
            &g,
            &DynamicsConfig::default(),
            CensusMode::Exhaustive,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(matches!(
            compare_prediction(&g, &census, DEFAULT_BUDGET),
            Err(Error::Precondition(_))
        ));
    }
}
