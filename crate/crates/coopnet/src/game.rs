//! Finite strategic-form games and pure-equilibrium analysis.
//!
//! A [`StrategicGame`] is a player-indexed family of finite strategy sets
//! together with a payoff function. Payoffs can be tabulated explicitly or
//! given as a rule evaluated on demand, which keeps large symmetric games
//! cheap to build. All equilibrium operations work on pure [`Profile`]s and
//! enumerate lexicographically with player 0 most significant, so reports
//! are deterministic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::real::Real;

/// Default cap on the number of profiles an exhaustive pass may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A pure strategy profile: one strategy index per player.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile(Vec<usize>);

impl Profile {
    pub fn new(choices: Vec<usize>) -> Profile {
        Profile(choices)
    }

    /// Every player plays the same strategy index.
    pub fn uniform(n_players: usize, choice: usize) -> Profile {
        Profile(vec![choice; n_players])
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn choice(&self, player: usize) -> usize {
        self.0[player]
    }

    /// Copy of this profile with one player's choice replaced.
    pub fn with_choice(&self, player: usize, choice: usize) -> Profile {
        let mut c = self.0.clone();
        c[player] = choice;
        Profile(c)
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile{:?}", self.0)
    }
}

type PayoffRule = Arc<dyn Fn(&[usize]) -> Vec<Real> + Send + Sync>;

#[derive(Clone)]
enum Payoffs {
    /// Rows in lexicographic profile order, one payoff per player per row.
    Table(Arc<Vec<Vec<Real>>>),
    /// Evaluated on demand from the strategy indices.
    Rule(PayoffRule),
}

/// A finite game in strategic form.
#[derive(Clone)]
pub struct StrategicGame {
    strategies: Vec<Vec<String>>,
    payoffs: Payoffs,
}

impl fmt::Debug for StrategicGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StrategicGame")
            .field("strategies", &self.strategies)
            .finish_non_exhaustive()
    }
}

fn validate_strategies(strategies: &[Vec<String>]) -> Result<()> {
    if strategies.is_empty() {
        return Err(Error::Param("a game needs at least one player".into()));
    }
    for (player, set) in strategies.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::Param(format!(
                "player {player} has an empty strategy set"
            )));
        }
        for (i, label) in set.iter().enumerate() {
            if set[..i].contains(label) {
                return Err(Error::Param(format!(
                    "player {player} lists strategy label `{label}` twice"
                )));
            }
        }
    }
    Ok(())
}

impl StrategicGame {
    /// Build a game from an explicit payoff table.
    ///
    /// `table` must hold one row per profile in lexicographic order (player 0
    /// most significant), each row carrying one payoff per player.
    pub fn from_table(strategies: Vec<Vec<String>>, table: Vec<Vec<Real>>) -> Result<StrategicGame> {
        validate_strategies(&strategies)?;
        let n = strategies.len();
        let size: u128 = strategies.iter().map(|s| s.len() as u128).product();
        if table.len() as u128 != size {
            return Err(Error::Param(format!(
                "payoff table has {} rows but the game has {size} profiles",
                table.len()
            )));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::Param(format!(
                    "payoff row has {} entries but the game has {n} players",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::Param(format!("non-finite payoff {bad:?}")));
            }
        }
        Ok(StrategicGame {
            strategies,
            payoffs: Payoffs::Table(Arc::new(table)),
        })
    }

    /// Build a game whose payoffs are computed on demand.
    ///
    /// The rule must return one finite payoff per player for every profile;
    /// violations are programming errors and panic at evaluation time.
    pub fn from_rule(
        strategies: Vec<Vec<String>>,
        rule: impl Fn(&[usize]) -> Vec<Real> + Send + Sync + 'static,
    ) -> Result<StrategicGame> {
        validate_strategies(&strategies)?;
        Ok(StrategicGame {
            strategies,
            payoffs: Payoffs::Rule(Arc::new(rule)),
        })
    }

    pub fn n_players(&self) -> usize {
        self.strategies.len()
    }

    pub fn n_strategies(&self, player: usize) -> usize {
        self.strategies[player].len()
    }

    pub fn strategy_labels(&self, player: usize) -> &[String] {
        &self.strategies[player]
    }

    pub fn label(&self, player: usize, strategy: usize) -> &str {
        &self.strategies[player][strategy]
    }

    /// Number of pure profiles.
    pub fn search_space_size(&self) -> u128 {
        self.strategies.iter().map(|s| s.len() as u128).product()
    }

    /// Resolve one strategy label per player into a profile.
    pub fn profile(&self, labels: &[&str]) -> Result<Profile> {
        if labels.len() != self.n_players() {
            return Err(Error::ProfileLength {
                expected: self.n_players(),
                got: labels.len(),
            });
        }
        let mut choices = Vec::with_capacity(labels.len());
        for (player, label) in labels.iter().enumerate() {
            let idx = self.strategies[player]
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::UnknownLabel {
                    player,
                    label: (*label).to_string(),
                })?;
            choices.push(idx);
        }
        Ok(Profile(choices))
    }

    /// Render a profile with the game's labels, e.g. `(C, D)`.
    pub fn render_profile(&self, profile: &Profile) -> String {
        let labels: Vec<&str> = profile
            .choices()
            .iter()
            .enumerate()
            .map(|(p, &s)| self.label(p, s))
            .collect();
        format!("({})", labels.join(", "))
    }

    fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.len() != self.n_players() {
            return Err(Error::ProfileLength {
                expected: self.n_players(),
                got: profile.len(),
            });
        }
        for (player, &choice) in profile.choices().iter().enumerate() {
            if choice >= self.n_strategies(player) {
                return Err(Error::StrategyIndex {
                    player,
                    index: choice,
                    n_strategies: self.n_strategies(player),
                });
            }
        }
        Ok(())
    }

    fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.n_players() {
            return Err(Error::PlayerIndex {
                player,
                n_players: self.n_players(),
            });
        }
        Ok(())
    }

    fn flat_index(&self, profile: &Profile) -> usize {
        let mut idx = 0;
        for (player, &choice) in profile.choices().iter().enumerate() {
            idx = idx * self.n_strategies(player) + choice;
        }
        idx
    }

    fn eval(&self, profile: &Profile) -> Vec<Real> {
        match &self.payoffs {
            Payoffs::Table(t) => t[self.flat_index(profile)].clone(),
            Payoffs::Rule(r) => {
                let row = r(profile.choices());
                assert_eq!(
                    row.len(),
                    self.n_players(),
                    "payoff rule returned a row of the wrong length"
                );
                assert!(
                    row.iter().all(|v| v.is_finite()),
                    "payoff rule returned a non-finite value"
                );
                row
            }
        }
    }

    /// Payoff vector at a profile, one entry per player.
    pub fn payoff(&self, profile: &Profile) -> Result<Vec<Real>> {
        self.check_profile(profile)?;
        Ok(self.eval(profile))
    }

    /// One player's payoff at a profile.
    pub fn payoff_one(&self, profile: &Profile, player: usize) -> Result<Real> {
        self.check_player(player)?;
        self.check_profile(profile)?;
        Ok(self.eval(profile).swap_remove(player))
    }

    /// Strategy indices of `player` that maximize its payoff against the
    /// rest of the profile, in ascending order. Ties within tolerance are
    /// all reported.
    pub fn best_responses(&self, profile: &Profile, player: usize) -> Result<Vec<usize>> {
        self.check_player(player)?;
        self.check_profile(profile)?;
        let values: Vec<Real> = (0..self.n_strategies(player))
            .map(|s| self.eval(&profile.with_choice(player, s)).swap_remove(player))
            .collect();
        let mut best = &values[0];
        for v in &values[1..] {
            if v.gt_eps(best) {
                best = v;
            }
        }
        let best = best.clone();
        Ok((0..values.len()).filter(|&s| values[s].eq_eps(&best)).collect())
    }

    /// True iff every player's current choice is among its best responses.
    pub fn is_pure_nash(&self, profile: &Profile) -> Result<bool> {
        for player in 0..self.n_players() {
            if !self
                .best_responses(profile, player)?
                .contains(&profile.choice(player))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff every player's current choice is its unique best response.
    pub fn is_strict_pure_nash(&self, profile: &Profile) -> Result<bool> {
        for player in 0..self.n_players() {
            if self.best_responses(profile, player)? != [profile.choice(player)] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Iterate every profile in lexicographic order.
    pub fn profiles(&self) -> Profiles<'_> {
        Profiles {
            sizes: &self.strategies,
            next: Some(vec![0; self.strategies.len()]),
        }
    }

    /// Enumerate all pure Nash equilibria.
    ///
    /// Refuses (with the required size) if the profile space exceeds
    /// `budget`; [`DEFAULT_BUDGET`] is the conventional cap.
    pub fn enumerate_pure_nash(&self, budget: u64) -> Result<EquilibriumReport> {
        let size = self.search_space_size();
        if size > budget as u128 {
            return Err(Error::BudgetExceeded {
                required: size,
                budget,
            });
        }
        let mut equilibria = Vec::new();
        for profile in self.profiles() {
            if self.is_pure_nash(&profile)? {
                let strict = self.is_strict_pure_nash(&profile)?;
                let payoffs = self.eval(&profile);
                equilibria.push(Equilibrium {
                    profile,
                    payoffs,
                    strict,
                });
            }
        }
        let pareto_dominant = (0..equilibria.len())
            .filter(|&i| {
                equilibria.iter().enumerate().all(|(j, other)| {
                    j == i
                        || pareto_compare(&other.payoffs, &equilibria[i].payoffs)
                            != ParetoRelation::FirstDominates
                })
            })
            .collect();
        Ok(EquilibriumReport {
            equilibria,
            pareto_dominant,
            search_space_size: size,
        })
    }

    /// How the payoff vectors of two profiles compare player-by-player.
    pub fn pareto_relation(&self, a: &Profile, b: &Profile) -> Result<ParetoRelation> {
        let ua = self.payoff(a)?;
        let ub = self.payoff(b)?;
        Ok(pareto_compare(&ua, &ub))
    }

    /// Risk dominance between two strict pure equilibria of a 2-player game,
    /// by comparing the products of the players' unilateral deviation losses.
    pub fn risk_dominance_2p(&self, a: &Profile, b: &Profile) -> Result<RiskDominance> {
        if self.n_players() != 2 {
            return Err(Error::Precondition(format!(
                "risk dominance is defined here for 2-player games, got {}",
                self.n_players()
            )));
        }
        self.check_profile(a)?;
        self.check_profile(b)?;
        if a == b {
            return Err(Error::Precondition(
                "risk dominance needs two distinct equilibria".into(),
            ));
        }
        for (name, p) in [("first", a), ("second", b)] {
            if !self.is_strict_pure_nash(p)? {
                return Err(Error::Precondition(format!(
                    "{name} profile {} is not a strict pure equilibrium",
                    self.render_profile(p)
                )));
            }
        }
        let product = |own: &Profile, other: &Profile| -> Real {
            let mut prod = Real::one();
            for player in 0..2 {
                let stay = self.eval(own).swap_remove(player);
                let leave = self
                    .eval(&own.with_choice(player, other.choice(player)))
                    .swap_remove(player);
                prod = &prod * &(&stay - &leave);
            }
            prod
        };
        let nash_products = [product(a, b), product(b, a)];
        let winner = match nash_products[0].cmp_eps(&nash_products[1]) {
            std::cmp::Ordering::Greater => RiskWinner::First,
            std::cmp::Ordering::Less => RiskWinner::Second,
            std::cmp::Ordering::Equal => RiskWinner::Tie,
        };
        Ok(RiskDominance {
            nash_products,
            winner,
        })
    }
}

/// Compare two payoff vectors of equal length.
pub fn pareto_compare(a: &[Real], b: &[Real]) -> ParetoRelation {
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        match x.cmp_eps(y) {
            std::cmp::Ordering::Greater => a_better = true,
            std::cmp::Ordering::Less => b_better = true,
            std::cmp::Ordering::Equal => {}
        }
    }
    match (a_better, b_better) {
        (true, false) => ParetoRelation::FirstDominates,
        (false, true) => ParetoRelation::SecondDominates,
        (false, false) => ParetoRelation::Equal,
        (true, true) => ParetoRelation::Incomparable,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParetoRelation {
    FirstDominates,
    SecondDominates,
    Equal,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RiskWinner {
    First,
    Second,
    Tie,
}

/// Outcome of [`StrategicGame::risk_dominance_2p`].
#[derive(Clone, Debug)]
pub struct RiskDominance {
    /// Product of unilateral deviation losses at each equilibrium.
    pub nash_products: [Real; 2],
    pub winner: RiskWinner,
}

/// One pure equilibrium found by enumeration.
#[derive(Clone, Debug)]
pub struct Equilibrium {
    pub profile: Profile,
    pub payoffs: Vec<Real>,
    /// True when every player's choice is its unique best response.
    pub strict: bool,
}

/// Result of [`StrategicGame::enumerate_pure_nash`].
#[derive(Clone, Debug)]
pub struct EquilibriumReport {
    /// Equilibria in lexicographic profile order.
    pub equilibria: Vec<Equilibrium>,
    /// Indices into `equilibria` that no other equilibrium Pareto-dominates.
    pub pareto_dominant: Vec<usize>,
    pub search_space_size: u128,
}

impl EquilibriumReport {
    /// The single Pareto-dominant equilibrium, if there is exactly one.
    pub fn unique_pareto_dominant(&self) -> Option<&Equilibrium> {
        match self.pareto_dominant.as_slice() {
            [i] => Some(&self.equilibria[*i]),
            _ => None,
        }
    }
}

/// Lexicographic profile iterator; player 0 is most significant.
pub struct Profiles<'a> {
    sizes: &'a [Vec<String>],
    next: Option<Vec<usize>>,
}

impl Iterator for Profiles<'_> {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut advanced = false;
        for player in (0..succ.len()).rev() {
            if succ[player] + 1 < self.sizes[player].len() {
                succ[player] += 1;
                succ[player + 1..].iter_mut().for_each(|c| *c = 0);
                advanced = true;
                break;
            }
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(Profile(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(sets: &[&[&str]]) -> Vec<Vec<String>> {
        sets.iter()
            .map(|s| s.iter().map(|l| l.to_string()).collect())
            .collect()
    }

    /// Two flows sharing a link: C restrains, D floods.
    fn shared_link() -> StrategicGame {
        StrategicGame::from_table(
            labels(&[&["C", "D"], &["C", "D"]]),
            vec![
                vec![Real::int(50), Real::int(50)],
                vec![Real::int(10), Real::int(90)],
                vec![Real::int(90), Real::int(10)],
                vec![Real::int(15), Real::int(15)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn payoffs_follow_the_table() {
        let g = shared_link();
        let cc = g.profile(&["C", "C"]).unwrap();
        let dd = g.profile(&["D", "D"]).unwrap();
        let cd = g.profile(&["C", "D"]).unwrap();
        assert_eq!(g.payoff(&cc).unwrap(), vec![Real::int(50), Real::int(50)]);
        assert_eq!(g.payoff(&dd).unwrap(), vec![Real::int(15), Real::int(15)]);
        assert_eq!(g.payoff(&cd).unwrap(), vec![Real::int(10), Real::int(90)]);
        assert_eq!(g.payoff_one(&cd, 1).unwrap(), Real::int(90));
    }

    #[test]
    fn one_player_game_is_fine() {
        let g = StrategicGame::from_table(labels(&[&["X"]]), vec![vec![Real::zero()]]).unwrap();
        let p = g.profile(&["X"]).unwrap();
        assert_eq!(g.payoff(&p).unwrap(), vec![Real::zero()]);
        assert!(g.is_pure_nash(&p).unwrap());
    }

    #[test]
    fn unknown_labels_name_the_player() {
        let g = shared_link();
        match g.profile(&["C", "X"]) {
            Err(Error::UnknownLabel { player, label }) => {
                assert_eq!(player, 1);
                assert_eq!(label, "X");
            }
            other => panic!("expected UnknownLabel, got {other:?}"),
        }
    }

    #[test]
    fn table_shape_is_validated() {
        assert!(StrategicGame::from_table(labels(&[&["C", "D"]]), vec![vec![Real::int(1)]]).is_err());
        assert!(StrategicGame::from_table(
            labels(&[&["C", "D"]]),
            vec![vec![Real::int(1), Real::int(2)], vec![Real::int(3)]],
        )
        .is_err());
        assert!(StrategicGame::from_table(
            labels(&[&["C", "C"]]),
            vec![vec![Real::int(1)], vec![Real::int(2)]],
        )
        .is_err());
        assert!(StrategicGame::from_table(
            labels(&[&["C"]]),
            vec![vec![Real::Approx(f64::INFINITY)]],
        )
        .is_err());
    }

    #[test]
    fn best_responses_on_the_shared_link() {
        let g = shared_link();
        let cc = g.profile(&["C", "C"]).unwrap();
        // Against a restrained flow, flooding pays 90 over 50.
        assert_eq!(g.best_responses(&cc, 0).unwrap(), vec![1]);
        let dd = g.profile(&["D", "D"]).unwrap();
        assert_eq!(g.best_responses(&dd, 0).unwrap(), vec![1]);
    }

    #[test]
    fn best_responses_report_ties() {
        let g = StrategicGame::from_table(
            labels(&[&["a", "b"], &["x"]]),
            vec![vec![Real::int(3), Real::int(0)], vec![Real::int(3), Real::int(0)]],
        )
        .unwrap();
        let p = g.profile(&["a", "x"]).unwrap();
        assert_eq!(g.best_responses(&p, 0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn nash_filter_and_best_response_containment_agree() {
        // Direct deviation scan, written independently of best_responses.
        fn survives_filter(g: &StrategicGame, p: &Profile) -> bool {
            for player in 0..g.n_players() {
                let here = g.payoff_one(p, player).unwrap();
                for s in 0..g.n_strategies(player) {
                    let there = g.payoff_one(&p.with_choice(player, s), player).unwrap();
                    if there.gt_eps(&here) {
                        return false;
                    }
                }
            }
            true
        }
        let g = shared_link();
        for p in g.profiles() {
            assert_eq!(g.is_pure_nash(&p).unwrap(), survives_filter(&g, &p));
        }
        let dd = g.profile(&["D", "D"]).unwrap();
        assert!(g.is_pure_nash(&dd).unwrap());
        assert!(!g.is_pure_nash(&g.profile(&["C", "C"]).unwrap()).unwrap());
    }

    #[test]
    fn enumeration_is_lexicographic_and_finds_the_flood_equilibrium() {
        let g = shared_link();
        let report = g.enumerate_pure_nash(DEFAULT_BUDGET).unwrap();
        assert_eq!(report.search_space_size, 4);
        assert_eq!(report.equilibria.len(), 1);
        let eq = &report.equilibria[0];
        assert_eq!(g.render_profile(&eq.profile), "(D, D)");
        assert!(eq.strict);
        assert_eq!(report.pareto_dominant, vec![0]);
    }

    #[test]
    fn enumeration_respects_the_budget() {
        let g = shared_link();
        match g.enumerate_pure_nash(3) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 4);
                assert_eq!(budget, 3);
            }
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
        assert!(g.enumerate_pure_nash(4).is_ok());
    }

    #[test]
    fn weak_equilibria_are_flagged() {
        let g = StrategicGame::from_table(
            labels(&[&["a", "b"]]),
            vec![vec![Real::int(1)], vec![Real::int(1)]],
        )
        .unwrap();
        let report = g.enumerate_pure_nash(DEFAULT_BUDGET).unwrap();
        assert_eq!(report.equilibria.len(), 2);
        assert!(report.equilibria.iter().all(|e| !e.strict));
        // Both tie, so both are undominated.
        assert_eq!(report.pareto_dominant, vec![0, 1]);
    }

    #[test]
    fn pareto_relations_cover_all_four_cases() {
        assert_eq!(
            pareto_compare(&[Real::int(6), Real::int(6)], &[Real::int(0), Real::int(0)]),
            ParetoRelation::FirstDominates
        );
        assert_eq!(
            pareto_compare(&[Real::int(0), Real::int(0)], &[Real::int(6), Real::int(0)]),
            ParetoRelation::SecondDominates
        );
        assert_eq!(
            pareto_compare(&[Real::int(2)], &[Real::int(2)]),
            ParetoRelation::Equal
        );
        assert_eq!(
            pareto_compare(&[Real::int(-4), Real::int(0)], &[Real::int(0), Real::int(-4)]),
            ParetoRelation::Incomparable
        );
    }

    /// Uniform 2-player assurance game: adopt together or stay out.
    fn assurance(beta: i64, gamma: i64) -> StrategicGame {
        let (b, g) = (Real::int(beta), Real::int(gamma));
        let adopt_alone = &Real::zero() - &g;
        let adopt_both = &b - &g;
        StrategicGame::from_table(
            vec![vec!["A".into(), "D".into()], vec!["A".into(), "D".into()]],
            vec![
                vec![adopt_both.clone(), adopt_both.clone()],
                vec![adopt_alone.clone(), Real::zero()],
                vec![Real::zero(), adopt_alone.clone()],
                vec![Real::zero(), Real::zero()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn risk_dominance_products_match_hand_computation() {
        let g = assurance(10, 4);
        let aa = g.profile(&["A", "A"]).unwrap();
        let dd = g.profile(&["D", "D"]).unwrap();
        let rd = g.risk_dominance_2p(&aa, &dd).unwrap();
        // Deviation losses: 6 each at (A,A), 4 each at (D,D).
        assert_eq!(rd.nash_products[0], Real::int(36));
        assert_eq!(rd.nash_products[1], Real::int(16));
        assert_eq!(rd.winner, RiskWinner::First);

        let g = assurance(6, 4);
        let rd = g
            .risk_dominance_2p(
                &g.profile(&["A", "A"]).unwrap(),
                &g.profile(&["D", "D"]).unwrap(),
            )
            .unwrap();
        assert_eq!(rd.nash_products[0], Real::int(4));
        assert_eq!(rd.nash_products[1], Real::int(16));
        assert_eq!(rd.winner, RiskWinner::Second);

        let g = assurance(8, 4);
        let rd = g
            .risk_dominance_2p(
                &g.profile(&["A", "A"]).unwrap(),
                &g.profile(&["D", "D"]).unwrap(),
            )
            .unwrap();
        assert_eq!(rd.winner, RiskWinner::Tie);
    }

    #[test]
    fn risk_dominance_rejects_bad_inputs() {
        let g = assurance(10, 4);
        let aa = g.profile(&["A", "A"]).unwrap();
        let ad = g.profile(&["A", "D"]).unwrap();
        assert!(matches!(
            g.risk_dominance_2p(&aa, &aa),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            g.risk_dominance_2p(&aa, &ad),
            Err(Error::Precondition(_))
        ));
        let g3 = StrategicGame::from_rule(
            labels(&[&["A", "D"], &["A", "D"], &["A", "D"]]),
            |_| vec![Real::zero(), Real::zero(), Real::zero()],
        )
        .unwrap();
        let p = Profile::uniform(3, 0);
        assert!(matches!(
            g3.risk_dominance_2p(&p, &p.with_choice(0, 1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn profile_iterator_is_lexicographic() {
        let g = StrategicGame::from_rule(labels(&[&["a", "b"], &["x", "y", "z"]]), |c| {
            vec![Real::int(c[0] as i64), Real::int(c[1] as i64)]
        })
        .unwrap();
        let seen: Vec<Vec<usize>> = g.profiles().map(|p| p.choices().to_vec()).collect();
        assert_eq!(
            seen,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2],
            ]
        );
    }
}
