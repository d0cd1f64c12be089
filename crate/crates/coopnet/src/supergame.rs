//! Discounted supergames played by finite-state machines.
//!
//! A [`Supergame`] repeats a stage game infinitely; player `i` weighs the
//! period-`t` stage payoff by `alpha_i^t` for a discount factor strictly
//! between 0 and 1. Strategies are finite-state [`StrategyMachine`]s, so
//! every joint play eventually enters a cycle; discounted values are
//! computed in closed form from the lead-in and the cycle rather than by
//! truncation, and stay exact when the discounts and payoffs are exact.
//!
//! On top of the generic machinery sit the conditional-cooperation tools for
//! [`PdSchedule`] stage games: the threshold discount factor above which
//! permanent defection stops paying, a bisection cross-check for it, and an
//! equilibrium verdict for the profile where everyone plays threshold
//! tit-for-tat.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::game::{Profile, StrategicGame};
use crate::real::Real;
use crate::schedule::{PdSchedule, COOPERATE, COOPERATE_LABEL, DEFECT, DEFECT_LABEL};

/// A finite-state machine playing one seat of a repeated game.
///
/// The machine emits the strategy index `emit[state]` each period, observes
/// the full joint profile, and moves to `next(state, profile)`. `next` must
/// return a state below `n_states` for every observable profile.
type Transition = Arc<dyn Fn(usize, &[usize]) -> usize + Send + Sync>;

#[derive(Clone)]
pub struct StrategyMachine {
    name: String,
    n_states: usize,
    initial: usize,
    emit: Vec<usize>,
    next: Transition,
}

impl std::fmt::Debug for StrategyMachine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StrategyMachine")
            .field("name", &self.name)
            .field("n_states", &self.n_states)
            .field("initial", &self.initial)
            .field("emit", &self.emit)
            .finish_non_exhaustive()
    }
}

impl StrategyMachine {
    pub fn new(
        name: impl Into<String>,
        n_states: usize,
        initial: usize,
        emit: Vec<usize>,
        next: impl Fn(usize, &[usize]) -> usize + Send + Sync + 'static,
    ) -> StrategyMachine {
        assert!(n_states >= 1, "a machine needs at least one state");
        assert!(initial < n_states, "initial state out of range");
        assert_eq!(emit.len(), n_states, "one emitted action per state");
        StrategyMachine {
            name: name.into(),
            n_states,
            initial,
            emit,
            next: Arc::new(next),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn initial_state(&self) -> usize {
        self.initial
    }

    /// Strategy index emitted in `state`.
    pub fn action(&self, state: usize) -> usize {
        self.emit[state]
    }

    /// Successor state after observing a joint profile.
    pub fn next_state(&self, state: usize, profile: &[usize]) -> usize {
        let next = (self.next)(state, profile);
        assert!(
            next < self.n_states,
            "machine `{}` transitioned to state {next} of {}",
            self.name,
            self.n_states
        );
        next
    }

    /// Plays one fixed strategy index forever.
    pub fn constant(action: usize, label: &str) -> StrategyMachine {
        StrategyMachine::new(format!("always-{label}"), 1, 0, vec![action], |_, _| 0)
    }

    /// Cooperates forever in a schedule stage game.
    pub fn always_cooperate() -> StrategyMachine {
        StrategyMachine::constant(COOPERATE, COOPERATE_LABEL)
    }

    /// Defects forever in a schedule stage game.
    pub fn always_defect() -> StrategyMachine {
        StrategyMachine::constant(DEFECT, DEFECT_LABEL)
    }

    /// Threshold tit-for-tat for seat `me` of an `n_players` stage game:
    /// cooperate in period 0, then cooperate exactly when at least
    /// `threshold` of the *other* players cooperated last period.
    pub fn tit_for_tat(threshold: usize, n_players: usize, me: usize) -> Result<StrategyMachine> {
        if me >= n_players {
            return Err(Error::PlayerIndex {
                player: me,
                n_players,
            });
        }
        if threshold + 1 > n_players {
            return Err(Error::Param(format!(
                "tit-for-tat threshold {threshold} cannot exceed the {} other players",
                n_players - 1
            )));
        }
        Ok(StrategyMachine::new(
            format!("tit-for-tat({threshold})"),
            2,
            0,
            vec![COOPERATE, DEFECT],
            move |_, profile| {
                let others = profile
                    .iter()
                    .enumerate()
                    .filter(|&(j, &a)| j != me && a == COOPERATE)
                    .count();
                if others >= threshold {
                    0
                } else {
                    1
                }
            },
        ))
    }

    /// Cooperates for `delay` periods, then defects forever.
    pub fn delayed_defection(delay: usize) -> StrategyMachine {
        if delay == 0 {
            return StrategyMachine::always_defect();
        }
        let mut emit = vec![COOPERATE; delay];
        emit.push(DEFECT);
        StrategyMachine::new(
            format!("defect-from({delay})"),
            delay + 1,
            0,
            emit,
            move |state, _| (state + 1).min(delay),
        )
    }

    /// Defects for `burst` periods, then switches to the threshold
    /// tit-for-tat rule. With `burst = 1` this is the classic
    /// defect-once-then-forgive probe.
    pub fn defect_burst_then_tit_for_tat(
        burst: usize,
        threshold: usize,
        n_players: usize,
        me: usize,
    ) -> Result<StrategyMachine> {
        if burst == 0 {
            return StrategyMachine::tit_for_tat(threshold, n_players, me);
        }
        if me >= n_players {
            return Err(Error::PlayerIndex {
                player: me,
                n_players,
            });
        }
        if threshold + 1 > n_players {
            return Err(Error::Param(format!(
                "tit-for-tat threshold {threshold} cannot exceed the {} other players",
                n_players - 1
            )));
        }
        // States 0..burst-1 run out the burst; burst and burst+1 are the
        // cooperate/defect states of the tit-for-tat rule.
        let mut emit = vec![DEFECT; burst];
        emit.push(COOPERATE);
        emit.push(DEFECT);
        Ok(StrategyMachine::new(
            format!("defect({burst})-then-tit-for-tat({threshold})"),
            burst + 2,
            0,
            emit,
            move |state, profile| {
                if state + 1 < burst {
                    return state + 1;
                }
                let others = profile
                    .iter()
                    .enumerate()
                    .filter(|&(j, &a)| j != me && a == COOPERATE)
                    .count();
                if others >= threshold {
                    burst
                } else {
                    burst + 1
                }
            },
        ))
    }
}

/// The profile where every seat plays tit-for-tat with threshold `N - 1`:
/// cooperate as long as everyone else did.
pub fn conditional_cooperation_profile(n_players: usize) -> Vec<StrategyMachine> {
    (0..n_players)
        .map(|me| {
            StrategyMachine::tit_for_tat(n_players - 1, n_players, me)
                .expect("threshold N-1 is always admissible")
        })
        .collect()
}

/// A finite trace of machine play.
#[derive(Clone, Debug)]
pub struct PlayTrace {
    /// Joint profile emitted each period.
    pub profiles: Vec<Profile>,
    /// Joint machine states at the start of each period.
    pub machine_states: Vec<Vec<usize>>,
    /// Periods before play enters its cycle.
    pub lead_in: usize,
    /// Length of the cycle play settles into.
    pub cycle_len: usize,
}

/// Lead-in and cycle data underlying every value computation.
struct Unrolled {
    /// Emitted profiles for periods `0 .. lead_in + cycle_len`.
    profiles: Vec<Vec<usize>>,
    states: Vec<Vec<usize>>,
    lead_in: usize,
    cycle_len: usize,
}

impl Unrolled {
    fn period_index(&self, t: usize) -> usize {
        if t < self.lead_in + self.cycle_len {
            t
        } else {
            self.lead_in + (t - self.lead_in) % self.cycle_len
        }
    }
}

/// An infinitely repeated stage game with per-player exponential discounting.
#[derive(Clone, Debug)]
pub struct Supergame {
    stage: StrategicGame,
    discounts: Vec<Real>,
}

impl Supergame {
    /// Discount factors must lie strictly inside (0, 1), one per player.
    pub fn new(stage: StrategicGame, discounts: Vec<Real>) -> Result<Supergame> {
        if discounts.len() != stage.n_players() {
            return Err(Error::Param(format!(
                "{} discount factors for {} players",
                discounts.len(),
                stage.n_players()
            )));
        }
        for (i, a) in discounts.iter().enumerate() {
            if !(a.gt_eps(&Real::zero()) && a.lt_eps(&Real::one())) {
                return Err(Error::Param(format!(
                    "discount factor {a} for player {i} must lie strictly inside (0, 1)"
                )));
            }
        }
        Ok(Supergame { stage, discounts })
    }

    /// Same discount factor for every player.
    pub fn uniform(stage: StrategicGame, alpha: Real) -> Result<Supergame> {
        let n = stage.n_players();
        Supergame::new(stage, vec![alpha; n])
    }

    /// Repeat a schedule's stage game.
    pub fn from_schedule(schedule: &PdSchedule, discounts: Vec<Real>) -> Result<Supergame> {
        Supergame::new(schedule.stage_game(), discounts)
    }

    pub fn stage(&self) -> &StrategicGame {
        &self.stage
    }

    pub fn discounts(&self) -> &[Real] {
        &self.discounts
    }

    fn check_machines(&self, machines: &[StrategyMachine]) -> Result<()> {
        if machines.len() != self.stage.n_players() {
            return Err(Error::Precondition(format!(
                "{} machines for {} players",
                machines.len(),
                self.stage.n_players()
            )));
        }
        for (i, m) in machines.iter().enumerate() {
            if let Some(&bad) = m.emit.iter().find(|&&a| a >= self.stage.n_strategies(i)) {
                return Err(Error::Precondition(format!(
                    "machine `{}` emits strategy index {bad}, but player {i} has only {} strategies",
                    m.name(),
                    self.stage.n_strategies(i)
                )));
            }
        }
        Ok(())
    }

    /// Run the machines until their joint state repeats. Deterministic play
    /// makes this exhaustive: the returned data covers every period that can
    /// ever occur.
    fn unroll(&self, machines: &[StrategyMachine]) -> Unrolled {
        let mut states: Vec<Vec<usize>> = vec![machines.iter().map(|m| m.initial).collect()];
        let mut profiles: Vec<Vec<usize>> = Vec::new();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        seen.insert(states[0].clone(), 0);
        loop {
            let t = profiles.len();
            let current = &states[t];
            let profile: Vec<usize> = machines
                .iter()
                .zip(current)
                .map(|(m, &s)| m.action(s))
                .collect();
            let next: Vec<usize> = machines
                .iter()
                .zip(current)
                .map(|(m, &s)| m.next_state(s, &profile))
                .collect();
            profiles.push(profile);
            if let Some(&first) = seen.get(&next) {
                return Unrolled {
                    profiles,
                    states,
                    lead_in: first,
                    cycle_len: t + 1 - first,
                };
            }
            seen.insert(next.clone(), t + 1);
            states.push(next);
        }
    }

    /// Play out `horizon` periods and report the eventual cycle structure.
    pub fn simulate(&self, machines: &[StrategyMachine], horizon: usize) -> Result<PlayTrace> {
        self.check_machines(machines)?;
        let unrolled = self.unroll(machines);
        let profiles = (0..horizon)
            .map(|t| Profile::new(unrolled.profiles[unrolled.period_index(t)].clone()))
            .collect();
        let machine_states = (0..horizon)
            .map(|t| unrolled.states[unrolled.period_index(t)].clone())
            .collect();
        Ok(PlayTrace {
            profiles,
            machine_states,
            lead_in: unrolled.lead_in,
            cycle_len: unrolled.cycle_len,
        })
    }

    fn stage_value(&self, unrolled: &Unrolled, t: usize, player: usize) -> Real {
        let profile = Profile::new(unrolled.profiles[unrolled.period_index(t)].clone());
        self.stage
            .payoff_one(&profile, player)
            .expect("unrolled profiles are valid")
    }

    /// Exact discounted value of the infinite play for one player.
    ///
    /// With lead-in `L`, cycle length `c`, and discount `a`, this is
    /// `sum_{t<L} a^t v_t  +  a^L * (sum_{j<c} a^j v_{L+j}) / (1 - a^c)`.
    pub fn discounted_value(&self, machines: &[StrategyMachine], player: usize) -> Result<Real> {
        if player >= self.stage.n_players() {
            return Err(Error::PlayerIndex {
                player,
                n_players: self.stage.n_players(),
            });
        }
        self.check_machines(machines)?;
        let unrolled = self.unroll(machines);
        let alpha = &self.discounts[player];
        let mut lead = Real::zero();
        let mut pow = Real::one();
        for t in 0..unrolled.lead_in {
            lead = &lead + &(&pow * &self.stage_value(&unrolled, t, player));
            pow = &pow * alpha;
        }
        // `pow` is now alpha^lead_in.
        let mut cycle = Real::zero();
        let mut cycle_pow = Real::one();
        for j in 0..unrolled.cycle_len {
            cycle = &cycle
                + &(&cycle_pow * &self.stage_value(&unrolled, unrolled.lead_in + j, player));
            cycle_pow = &cycle_pow * alpha;
        }
        // `cycle_pow` is now alpha^cycle_len, strictly inside (0, 1).
        let tail = &(&pow * &cycle) / &(&Real::one() - &cycle_pow);
        Ok(&lead + &tail)
    }

    /// Discounted value for every player.
    pub fn discounted_values(&self, machines: &[StrategyMachine]) -> Result<Vec<Real>> {
        (0..self.stage.n_players())
            .map(|i| self.discounted_value(machines, i))
            .collect()
    }

    /// Partial sum of the first `horizon` discounted stage payoffs; a
    /// diagnostic foil for [`Supergame::discounted_value`]. The truncation
    /// error is at most `Vmax * a^horizon / (1 - a)` for `Vmax` the largest
    /// stage payoff magnitude.
    pub fn truncated_value(
        &self,
        machines: &[StrategyMachine],
        player: usize,
        horizon: usize,
    ) -> Result<Real> {
        if player >= self.stage.n_players() {
            return Err(Error::PlayerIndex {
                player,
                n_players: self.stage.n_players(),
            });
        }
        self.check_machines(machines)?;
        let unrolled = self.unroll(machines);
        let alpha = &self.discounts[player];
        let mut sum = Real::zero();
        let mut pow = Real::one();
        for t in 0..horizon {
            sum = &sum + &(&pow * &self.stage_value(&unrolled, t, player));
            pow = &pow * alpha;
        }
        Ok(sum)
    }

    /// Can any single player gain by swapping its machine for one of the
    /// deviation machines? Deviations sharing the incumbent machine's name
    /// are skipped, so checking an all-defect profile against a deviation
    /// set containing always-defect is not vacuously weak.
    pub fn check_equilibrium(
        &self,
        machines: &[StrategyMachine],
        deviations: &[Deviation],
    ) -> Result<EquilibriumVerdict> {
        self.check_machines(machines)?;
        let n = self.stage.n_players();
        let values = self.discounted_values(machines)?;
        let mut best: Option<BindingDeviation> = None;
        for player in 0..n {
            for deviation in deviations {
                let machine = deviation.build(n, player)?;
                if machine.name() == machines[player].name() {
                    continue;
                }
                let mut replaced = machines.to_vec();
                replaced[player] = machine;
                let value = self.discounted_value(&replaced, player)?;
                let gain = &value - &values[player];
                let improves = match &best {
                    Some(b) => gain.gt_eps(&b.gain),
                    None => true,
                };
                if improves {
                    best = Some(BindingDeviation {
                        player,
                        machine: replaced[player].name().to_string(),
                        value,
                        gain,
                    });
                }
            }
        }
        let zero = Real::zero();
        let (is_equilibrium, weak, binding_deviation) = match best {
            Some(b) if b.gain.gt_eps(&zero) => (false, false, Some(b)),
            Some(b) if b.gain.eq_eps(&zero) => (true, true, Some(b)),
            _ => (true, false, None),
        };
        Ok(EquilibriumVerdict {
            is_equilibrium,
            weak,
            values,
            binding_deviation,
        })
    }
}

/// A deviation machine template, instantiated per seat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deviation {
    /// Defect from period 0 on.
    AlwaysDefect,
    /// Cooperate for the given number of periods, then defect forever.
    DefectFrom(usize),
    /// Defect for the given number of periods, then play threshold
    /// tit-for-tat. Against tit-for-tat opponents in a 2-player game this
    /// probe induces alternating exploitation, so it is deliberately not in
    /// the standard set; see [`Deviation::extended`].
    DefectBurst(usize),
}

impl Deviation {
    /// The standard deviation family: permanent defection starting at each
    /// of periods 0 through 5. Against conditional cooperators every later
    /// start discounts the same one-shot temptation by another factor of
    /// alpha, so always-defect is the binding member.
    pub fn standard() -> Vec<Deviation> {
        let mut set = vec![Deviation::AlwaysDefect];
        set.extend((1..=5).map(Deviation::DefectFrom));
        set
    }

    /// The standard family plus defect-then-return probes of length 1
    /// through 5.
    pub fn extended() -> Vec<Deviation> {
        let mut set = Deviation::standard();
        set.extend((1..=5).map(Deviation::DefectBurst));
        set
    }

    fn build(&self, n_players: usize, me: usize) -> Result<StrategyMachine> {
        match self {
            Deviation::AlwaysDefect => Ok(StrategyMachine::always_defect()),
            Deviation::DefectFrom(delay) => Ok(StrategyMachine::delayed_defection(*delay)),
            Deviation::DefectBurst(burst) => StrategyMachine::defect_burst_then_tit_for_tat(
                *burst,
                n_players - 1,
                n_players,
                me,
            ),
        }
    }
}

/// The deviation that decides (or comes closest to deciding) a verdict.
#[derive(Clone, Debug)]
pub struct BindingDeviation {
    pub player: usize,
    pub machine: String,
    /// The deviating player's discounted value.
    pub value: Real,
    /// `value` minus the player's value in the checked profile. Positive
    /// exactly when the verdict is "not an equilibrium".
    pub gain: Real,
}

/// Outcome of a machine-profile equilibrium check.
#[derive(Clone, Debug)]
pub struct EquilibriumVerdict {
    pub is_equilibrium: bool,
    /// True when the profile is an equilibrium but some deviation ties it.
    pub weak: bool,
    /// Discounted value per player in the checked profile.
    pub values: Vec<Real>,
    /// Highest-gain deviation when one gains or ties; `None` when every
    /// deviation strictly loses.
    pub binding_deviation: Option<BindingDeviation>,
}

/// Discount threshold above which permanent defection stops paying against
/// conditional cooperators: `(g[N-1] - f[N-1]) / (g[N-1] - g[0])`. The
/// schedule assumptions place it strictly inside (0, 1). Exact for exact
/// schedules.
pub fn cooperation_threshold(schedule: &PdSchedule) -> Real {
    let top = schedule.n_players() - 1;
    let g_top = schedule.g(top);
    &(g_top - schedule.f(top)) / &(g_top - schedule.g(0))
}

/// Locate the critical discount factor by bisecting the always-defect gain,
/// independent of the closed form: the gain is strictly decreasing in alpha,
/// positive near 0 and negative near 1. Accurate to about 1e-10.
pub fn critical_discount_numeric(schedule: &PdSchedule) -> f64 {
    let n = schedule.n_players();
    let stage = schedule.stage_game();
    let machines = conditional_cooperation_profile(n);
    let mut deviated = machines.clone();
    deviated[0] = StrategyMachine::always_defect();
    let gain = |alpha: f64| -> f64 {
        let sg = Supergame::new(stage.clone(), vec![Real::Approx(alpha); n])
            .expect("bisection stays strictly inside (0, 1)");
        let coop = sg.discounted_value(&machines, 0).unwrap().to_f64();
        let defect = sg.discounted_value(&deviated, 0).unwrap().to_f64();
        defect - coop
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if gain(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Verdict for the profile where every player runs threshold tit-for-tat,
/// under the given per-player discounts and deviation family.
pub fn check_conditional_cooperation(
    schedule: &PdSchedule,
    discounts: &[Real],
    deviations: &[Deviation],
) -> Result<EquilibriumVerdict> {
    let supergame = Supergame::from_schedule(schedule, discounts.to_vec())?;
    let machines = conditional_cooperation_profile(schedule.n_players());
    supergame.check_equilibrium(&machines, deviations)
}
