//! Technology-adoption games, with and without adoption insurance.
//!
//! Player `i` weighs a benefit `beta_i` of a new technology that only
//! materializes when adoption succeeds against a sunk switching cost
//! `gamma_i`. In the plain stag hunt adoption succeeds for a player exactly
//! when nobody else holds out; that game has two equilibria, and the good
//! one is fragile. The insurance variant adds a third strategy: adopt under
//! an insurance contract that charges a premium `epsilon_i` and pays
//! `delta_i` if adoption fails, which removes the bad equilibrium entirely.
//! The component variant plays the stag hunt on a graph, scaling the benefit
//! by the relative size of the player's adopter component.

use rand::Rng;

use crate::error::{Error, Result};
use crate::game::{Profile, StrategicGame};
use crate::real::Real;
use crate::topology::Graph;

pub const ADOPT_LABEL: &str = "A";
pub const INSURE_LABEL: &str = "B";
pub const HOLD_OUT_LABEL: &str = "D";

/// Strategy indices in adoption games ("A", then "B" where present, then "D").
pub const ADOPT: usize = 0;
/// Only in insurance games.
pub const INSURE: usize = 1;

fn positive(name: &str, player: usize, value: &Real) -> Result<()> {
    if value.gt_eps(&Real::zero()) {
        Ok(())
    } else {
        Err(Error::Param(format!(
            "{name} for player {player} must be positive, got {value}"
        )))
    }
}

/// Per-player adoption benefits and switching costs.
///
/// Requires `gamma_i > 0` (switching really costs something) and
/// `beta_i - gamma_i > 0` (successful adoption really pays).
#[derive(Clone, Debug)]
pub struct AdoptionParams {
    beta: Vec<Real>,
    gamma: Vec<Real>,
}

impl AdoptionParams {
    pub fn per_player(beta: Vec<Real>, gamma: Vec<Real>) -> Result<AdoptionParams> {
        if beta.len() != gamma.len() || beta.is_empty() {
            return Err(Error::Param(format!(
                "need matching non-empty benefit/cost lists, got {} and {}",
                beta.len(),
                gamma.len()
            )));
        }
        for i in 0..beta.len() {
            positive("switching cost gamma", i, &gamma[i])?;
            positive("net adoption benefit beta - gamma", i, &(&beta[i] - &gamma[i]))?;
        }
        Ok(AdoptionParams { beta, gamma })
    }

    pub fn uniform(n_players: usize, beta: Real, gamma: Real) -> Result<AdoptionParams> {
        AdoptionParams::per_player(vec![beta; n_players], vec![gamma; n_players])
    }

    pub fn n_players(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self, player: usize) -> &Real {
        &self.beta[player]
    }

    pub fn gamma(&self, player: usize) -> &Real {
        &self.gamma[player]
    }

    /// Random valid integer parameters, for experiments and tests.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, n_players: usize) -> AdoptionParams {
        let mut beta = Vec::with_capacity(n_players);
        let mut gamma = Vec::with_capacity(n_players);
        for _ in 0..n_players {
            let g: i64 = rng.gen_range(1..=10);
            beta.push(Real::int(g + rng.gen_range(1..=10)));
            gamma.push(Real::int(g));
        }
        AdoptionParams::per_player(beta, gamma).expect("sampled parameters are valid")
    }
}

/// Per-player insurance contracts: premium `epsilon_i`, compensation
/// `delta_i` paid when adoption fails.
///
/// Requires `epsilon_i > 0` and `delta_i - gamma_i - epsilon_i > 0`: the
/// compensation must beat the cost of switching plus the premium, otherwise
/// insured adoption cannot outdo holding out and the mechanism loses its
/// grip.
#[derive(Clone, Debug)]
pub struct InsuranceParams {
    epsilon: Vec<Real>,
    delta: Vec<Real>,
    /// True when every `delta_i` equals `beta_i`, i.e. the contract covers
    /// the full adoption benefit rather than some other negotiated amount.
    covers_benefit: bool,
}

impl InsuranceParams {
    pub fn new(
        adoption: &AdoptionParams,
        epsilon: Vec<Real>,
        delta: Vec<Real>,
    ) -> Result<InsuranceParams> {
        let n = adoption.n_players();
        if epsilon.len() != n || delta.len() != n {
            return Err(Error::Param(format!(
                "need {n} premiums and compensations, got {} and {}",
                epsilon.len(),
                delta.len()
            )));
        }
        for i in 0..n {
            positive("premium epsilon", i, &epsilon[i])?;
            positive(
                "net compensation delta - gamma - epsilon",
                i,
                &(&(&delta[i] - adoption.gamma(i)) - &epsilon[i]),
            )?;
        }
        let covers_benefit = (0..n).all(|i| delta[i] == *adoption.beta(i));
        Ok(InsuranceParams {
            epsilon,
            delta,
            covers_benefit,
        })
    }

    /// Contracts that compensate the full adoption benefit: `delta_i = beta_i`.
    pub fn covering(adoption: &AdoptionParams, epsilon: Vec<Real>) -> Result<InsuranceParams> {
        let delta = (0..adoption.n_players())
            .map(|i| adoption.beta(i).clone())
            .collect();
        InsuranceParams::new(adoption, epsilon, delta)
    }

    pub fn n_players(&self) -> usize {
        self.epsilon.len()
    }

    pub fn epsilon(&self, player: usize) -> &Real {
        &self.epsilon[player]
    }

    pub fn delta(&self, player: usize) -> &Real {
        &self.delta[player]
    }

    pub fn covers_benefit(&self) -> bool {
        self.covers_benefit
    }

    /// Random valid integer contracts for the given adoption parameters.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, adoption: &AdoptionParams) -> InsuranceParams {
        let n = adoption.n_players();
        let mut epsilon = Vec::with_capacity(n);
        let mut delta = Vec::with_capacity(n);
        for i in 0..n {
            let e = Real::int(rng.gen_range(1..=5));
            let floor = &(adoption.gamma(i) + &e) + &Real::int(rng.gen_range(1..=10));
            epsilon.push(e);
            delta.push(floor);
        }
        InsuranceParams::new(adoption, epsilon, delta).expect("sampled contracts are valid")
    }
}

/// For player `i`, adoption succeeds when no *other* player holds out;
/// insured adopters count as adopters.
fn adoption_succeeds(choices: &[usize], me: usize, hold_out: usize) -> bool {
    choices
        .iter()
        .enumerate()
        .all(|(j, &c)| j == me || c != hold_out)
}

/// The adoption stag hunt: everyone picks adopt (`A`) or hold out (`D`).
///
/// Adopters net `beta_i - gamma_i` when every other player adopts and
/// `-gamma_i` otherwise; holding out is free.
pub fn stag_hunt_game(params: &AdoptionParams) -> StrategicGame {
    let beta = params.beta.clone();
    let gamma = params.gamma.clone();
    let strategies = vec![
        vec![ADOPT_LABEL.to_string(), HOLD_OUT_LABEL.to_string()];
        params.n_players()
    ];
    let hold_out = 1;
    StrategicGame::from_rule(strategies, move |choices| {
        choices
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if c != ADOPT {
                    Real::zero()
                } else if adoption_succeeds(choices, i, hold_out) {
                    &beta[i] - &gamma[i]
                } else {
                    -&gamma[i]
                }
            })
            .collect()
    })
    .expect("stag hunt strategies are well-formed")
}

/// The insured adoption game: adopt (`A`), adopt insured (`B`), or hold out
/// (`D`). Insured adopters pay the premium on top of the switching cost and
/// receive the compensation when adoption fails; they count as adopters for
/// everyone else's success.
pub fn insurance_game(
    params: &AdoptionParams,
    insurance: &InsuranceParams,
) -> Result<StrategicGame> {
    let n = params.n_players();
    if insurance.n_players() != n {
        return Err(Error::Param(format!(
            "{n} players but {} insurance contracts",
            insurance.n_players()
        )));
    }
    // Revalidate the cross constraint in case the contracts were built
    // against different adoption parameters.
    for i in 0..n {
        positive(
            "net compensation delta - gamma - epsilon",
            i,
            &(&(insurance.delta(i) - params.gamma(i)) - insurance.epsilon(i)),
        )?;
    }
    let beta = params.beta.clone();
    let gamma = params.gamma.clone();
    let epsilon = insurance.epsilon.clone();
    let delta = insurance.delta.clone();
    let strategies = vec![
        vec![
            ADOPT_LABEL.to_string(),
            INSURE_LABEL.to_string(),
            HOLD_OUT_LABEL.to_string(),
        ];
        n
    ];
    let hold_out = 2;
    Ok(StrategicGame::from_rule(strategies, move |choices| {
        choices
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let success = adoption_succeeds(choices, i, hold_out);
                match (c, success) {
                    (self::ADOPT, true) => &beta[i] - &gamma[i],
                    (self::ADOPT, false) => -&gamma[i],
                    (self::INSURE, true) => &(&beta[i] - &gamma[i]) - &epsilon[i],
                    (self::INSURE, false) => &(&delta[i] - &gamma[i]) - &epsilon[i],
                    _ => Real::zero(),
                }
            })
            .collect()
    })
    .expect("insurance strategies are well-formed"))
}

/// The stag hunt on a graph: an adopter's benefit scales with the relative
/// size of its adopter component, `beta_i * (c_i / N)^exponent - gamma_i`,
/// holding out stays free. One player per node; `exponent >= 1` sharpens
/// how much a technology needs critical mass.
pub fn component_adoption_game(
    graph: &Graph,
    params: &AdoptionParams,
    exponent: u32,
) -> Result<StrategicGame> {
    let n = params.n_players();
    if graph.n_nodes() != n {
        return Err(Error::Param(format!(
            "graph has {} nodes but there are {n} players",
            graph.n_nodes()
        )));
    }
    if exponent == 0 {
        return Err(Error::Param("component exponent must be at least 1".into()));
    }
    let graph = graph.clone();
    let beta = params.beta.clone();
    let gamma = params.gamma.clone();
    let strategies = vec![
        vec![ADOPT_LABEL.to_string(), HOLD_OUT_LABEL.to_string()];
        n
    ];
    Ok(StrategicGame::from_rule(strategies, move |choices| {
        let adopters: Vec<usize> = (0..n).filter(|&i| choices[i] == ADOPT).collect();
        let components = graph
            .adopter_components(&adopters)
            .expect("players are nodes");
        choices
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if c != ADOPT {
                    return Real::zero();
                }
                let (_, size) = components[&i];
                let share = Real::ratio(size as i64, n as i64).pow(exponent);
                &(&beta[i] * &share) - &gamma[i]
            })
            .collect()
    })
    .expect("component game strategies are well-formed"))
}

/// The insurer's books at one profile of an insurance game.
#[derive(Clone, Debug, PartialEq)]
pub struct LedgerResult {
    /// Sum of premiums over insured adopters.
    pub premiums: Real,
    /// Sum of compensations over insured adopters whose adoption failed.
    pub reimbursements: Real,
    /// `premiums - reimbursements`.
    pub net: Real,
}

/// Tally the insurer's position at `profile` in a game with an `A`/`B`/`D`
/// strategy set per player.
pub fn insurer_ledger(
    game: &StrategicGame,
    insurance: &InsuranceParams,
    profile: &Profile,
) -> Result<LedgerResult> {
    let n = game.n_players();
    if insurance.n_players() != n {
        return Err(Error::Param(format!(
            "{n} players but {} insurance contracts",
            insurance.n_players()
        )));
    }
    let mut insured = Vec::new();
    let mut hold_out = Vec::new();
    for player in 0..n {
        let find = |label: &str| {
            game.strategy_labels(player)
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| {
                    Error::Precondition(format!(
                        "player {player} has no `{label}` strategy; not an insurance game"
                    ))
                })
        };
        insured.push(find(INSURE_LABEL)?);
        hold_out.push(find(HOLD_OUT_LABEL)?);
    }
    game.payoff(profile)?; // validates the profile against the game
    let mut premiums = Real::zero();
    let mut reimbursements = Real::zero();
    for (i, &choice) in profile.choices().iter().enumerate() {
        if choice != insured[i] {
            continue;
        }
        premiums = &premiums + insurance.epsilon(i);
        let failed = profile
            .choices()
            .iter()
            .enumerate()
            .any(|(j, &c)| j != i && c == hold_out[j]);
        if failed {
            reimbursements = &reimbursements + insurance.delta(i);
        }
    }
    let net = &premiums - &reimbursements;
    Ok(LedgerResult {
        premiums,
        reimbursements,
        net,
    })
}
