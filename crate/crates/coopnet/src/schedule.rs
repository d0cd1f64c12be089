//! Symmetric cooperate/defect payoff schedules for a congestible resource.
//!
//! N users share a resource (the motivating case is flows sharing a link:
//! cooperators restrain their sending rate, defectors flood). A schedule
//! assigns `f[k]` to a cooperator and `g[k]` to a defector when `k` of the
//! *other* players cooperate. Three standing assumptions make the stage game
//! a dilemma:
//!
//! 1. defection pays against any fixed field: `g[k] > f[k]` for every `k`;
//! 2. full cooperation beats full defection: `f[N-1] > g[0]`;
//! 3. a defector prefers company that cooperates: `g[k] > g[0]` for `k > 0`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::game::StrategicGame;
use crate::real::Real;

/// Strategy index of cooperation in every schedule-built stage game.
pub const COOPERATE: usize = 0;
/// Strategy index of defection in every schedule-built stage game.
pub const DEFECT: usize = 1;

pub const COOPERATE_LABEL: &str = "C";
pub const DEFECT_LABEL: &str = "D";

/// Which standing assumption a candidate schedule violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleAssumption {
    /// `g[k] > f[k]` for every cooperator count `k`.
    DefectionDominates,
    /// `f[N-1] > g[0]`.
    CooperationEfficient,
    /// `g[k] > g[0]` for every `k > 0`.
    CongestionHurtsDefectors,
}

/// One failed assumption, with the index it fails at.
#[derive(Clone, Debug)]
pub struct ScheduleViolation {
    pub assumption: ScheduleAssumption,
    pub index: usize,
    pub message: String,
}

/// A validated payoff schedule for `N = f.len()` players.
#[derive(Clone, Debug)]
pub struct PdSchedule {
    f: Vec<Real>,
    g: Vec<Real>,
}

impl PdSchedule {
    /// Validate and wrap a candidate schedule.
    pub fn new(f: Vec<Real>, g: Vec<Real>) -> Result<PdSchedule> {
        let violations = PdSchedule::validate(&f, &g)?;
        if !violations.is_empty() {
            let detail: Vec<&str> = violations.iter().map(|v| v.message.as_str()).collect();
            return Err(Error::Schedule(detail.join("; ")));
        }
        Ok(PdSchedule { f, g })
    }

    /// List every assumption a candidate violates (empty means valid).
    ///
    /// Shape problems (mismatched lengths, fewer than two players, non-finite
    /// entries) are errors rather than violations.
    pub fn validate(f: &[Real], g: &[Real]) -> Result<Vec<ScheduleViolation>> {
        if f.len() != g.len() {
            return Err(Error::Param(format!(
                "schedule lengths differ: {} cooperator entries, {} defector entries",
                f.len(),
                g.len()
            )));
        }
        if f.len() < 2 {
            return Err(Error::Param(format!(
                "a schedule needs at least 2 players, got {}",
                f.len()
            )));
        }
        if let Some(bad) = f.iter().chain(g).find(|v| !v.is_finite()) {
            return Err(Error::Param(format!("non-finite schedule entry {bad:?}")));
        }
        let n = f.len();
        let mut violations = Vec::new();
        for k in 0..n {
            if !g[k].gt_eps(&f[k]) {
                violations.push(ScheduleViolation {
                    assumption: ScheduleAssumption::DefectionDominates,
                    index: k,
                    message: format!("g[{k}] = {} must exceed f[{k}] = {}", g[k], f[k]),
                });
            }
        }
        if !f[n - 1].gt_eps(&g[0]) {
            violations.push(ScheduleViolation {
                assumption: ScheduleAssumption::CooperationEfficient,
                index: n - 1,
                message: format!(
                    "full cooperation f[{}] = {} must exceed full defection g[0] = {}",
                    n - 1,
                    f[n - 1],
                    g[0]
                ),
            });
        }
        for k in 1..n {
            if !g[k].gt_eps(&g[0]) {
                violations.push(ScheduleViolation {
                    assumption: ScheduleAssumption::CongestionHurtsDefectors,
                    index: k,
                    message: format!("g[{k}] = {} must exceed g[0] = {}", g[k], g[0]),
                });
            }
        }
        Ok(violations)
    }

    pub fn n_players(&self) -> usize {
        self.f.len()
    }

    /// Cooperator payoff with `k` cooperating opponents.
    pub fn f(&self, k: usize) -> &Real {
        &self.f[k]
    }

    /// Defector payoff with `k` cooperating opponents.
    pub fn g(&self, k: usize) -> &Real {
        &self.g[k]
    }

    /// The stage game: every player picks `C` or `D`, payoffs read off the
    /// schedule by counting cooperators among the other players.
    pub fn stage_game(&self) -> StrategicGame {
        let n = self.n_players();
        let f = self.f.clone();
        let g = self.g.clone();
        let strategies = vec![
            vec![COOPERATE_LABEL.to_string(), DEFECT_LABEL.to_string()];
            n
        ];
        StrategicGame::from_rule(strategies, move |choices| {
            let cooperators = choices.iter().filter(|&&c| c == COOPERATE).count();
            choices
                .iter()
                .map(|&c| {
                    if c == COOPERATE {
                        f[cooperators - 1].clone()
                    } else {
                        g[cooperators].clone()
                    }
                })
                .collect()
        })
        .expect("schedule stage game is well-formed")
    }

    /// The bundled two-flow shared-link example: a 100-unit link, where a
    /// restrained flow asks 25 units and a flood asks 100. With both
    /// restrained each nets 50; a lone flood nets 90 against 10; mutual
    /// flooding nets 15 each.
    pub fn fig1() -> PdSchedule {
        PdSchedule::new(
            vec![Real::int(10), Real::int(50)],
            vec![Real::int(15), Real::int(90)],
        )
        .expect("the shared-link schedule is valid")
    }

    /// Sample a uniformly random valid integer schedule, useful for
    /// randomized experiments and tests.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, n_players: usize) -> PdSchedule {
        assert!(n_players >= 2, "a schedule needs at least 2 players");
        let n = n_players;
        let g0: i64 = rng.gen_range(1..=20);
        let f_top = g0 + rng.gen_range(1..=10);
        let g_top = f_top + rng.gen_range(1..=10);
        let mut f = vec![Real::zero(); n];
        let mut g = vec![Real::zero(); n];
        g[0] = Real::int(g0);
        f[0] = Real::int(g0 - rng.gen_range(1..=10));
        f[n - 1] = Real::int(f_top);
        g[n - 1] = Real::int(g_top);
        for k in 1..n - 1 {
            let gk = g0 + rng.gen_range(1..=15);
            g[k] = Real::int(gk);
            f[k] = Real::int(gk - rng.gen_range(1..=10));
        }
        PdSchedule::new(f, g).expect("sampled schedule satisfies the assumptions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::DEFAULT_BUDGET;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn the_shared_link_schedule_is_valid() {
        let s = PdSchedule::fig1();
        assert_eq!(s.n_players(), 2);
        assert_eq!(*s.f(1), Real::int(50));
        assert_eq!(*s.g(0), Real::int(15));
    }

    #[test]
    fn violations_name_the_assumption_and_index() {
        // g[0] below f[0] breaks assumption 1 at k = 0.
        let v = PdSchedule::validate(
            &[Real::int(10), Real::int(50)],
            &[Real::int(5), Real::int(90)],
        )
        .unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].assumption, ScheduleAssumption::DefectionDominates);
        assert_eq!(v[0].index, 0);

        // Full cooperation worse than full defection breaks assumption 2.
        let v = PdSchedule::validate(
            &[Real::int(10), Real::int(12)],
            &[Real::int(15), Real::int(90)],
        )
        .unwrap();
        assert!(v
            .iter()
            .any(|x| x.assumption == ScheduleAssumption::CooperationEfficient));

        // A defector indifferent to company breaks assumption 3.
        let v = PdSchedule::validate(
            &[Real::int(1), Real::int(5), Real::int(20)],
            &[Real::int(15), Real::int(15), Real::int(30)],
        )
        .unwrap();
        assert!(v
            .iter()
            .any(|x| x.assumption == ScheduleAssumption::CongestionHurtsDefectors
                && x.index == 1));

        assert!(PdSchedule::new(
            vec![Real::int(10), Real::int(12)],
            vec![Real::int(15), Real::int(90)],
        )
        .is_err());
    }

    #[test]
    fn shape_problems_are_errors_not_violations() {
        assert!(matches!(
            PdSchedule::validate(&[Real::int(1)], &[Real::int(2), Real::int(3)]),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            PdSchedule::validate(&[Real::int(1)], &[Real::int(2)]),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn stage_game_reads_the_schedule_by_opponent_count() {
        let s = PdSchedule::fig1();
        let g = s.stage_game();
        let table: Vec<(String, Vec<Real>)> = g
            .profiles()
            .map(|p| (g.render_profile(&p), g.payoff(&p).unwrap()))
            .collect();
        assert_eq!(
            table,
            vec![
                ("(C, C)".into(), vec![Real::int(50), Real::int(50)]),
                ("(C, D)".into(), vec![Real::int(10), Real::int(90)]),
                ("(D, C)".into(), vec![Real::int(90), Real::int(10)]),
                ("(D, D)".into(), vec![Real::int(15), Real::int(15)]),
            ]
        );
    }

    #[test]
    fn three_player_stage_payoffs_count_other_cooperators() {
        let s = PdSchedule::new(
            vec![Real::int(0), Real::int(4), Real::int(8)],
            vec![Real::int(1), Real::int(6), Real::int(12)],
        )
        .unwrap();
        let g = s.stage_game();
        let p = g.profile(&["C", "C", "D"]).unwrap();
        // Each cooperator sees one cooperating opponent; the defector sees two.
        assert_eq!(
            g.payoff(&p).unwrap(),
            vec![Real::int(4), Real::int(4), Real::int(12)]
        );
    }

    #[test]
    fn the_stage_game_has_exactly_the_all_defect_equilibrium() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let n = rng.gen_range(2..=4);
            let s = PdSchedule::sample(&mut rng, n);
            let g = s.stage_game();
            let report = g.enumerate_pure_nash(DEFAULT_BUDGET).unwrap();
            assert_eq!(report.equilibria.len(), 1, "schedule {s:?}");
            assert_eq!(
                report.equilibria[0].profile.choices(),
                vec![DEFECT; n],
                "schedule {s:?}"
            );
            assert!(report.equilibria[0].strict);
        }
    }

    #[test]
    fn sampled_schedules_are_valid_by_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let n = rng.gen_range(2..=6);
            let s = PdSchedule::sample(&mut rng, n);
            assert!(PdSchedule::validate(&s.f, &s.g).unwrap().is_empty());
        }
    }
}
