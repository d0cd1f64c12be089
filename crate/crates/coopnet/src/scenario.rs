//! JSON scenario files and the analyses that run on them.
//!
//! A scenario names a game (`kind` plus its parameters) and usually an
//! `analysis`. Numeric fields accept a bare integer (exact), a decimal
//! (approximate), or a string like `"8/15"` (exact rational); scalar fields
//! broadcast to every player, arrays give per-player values. The binary's
//! subcommands select or override the analysis and render the resulting
//! [`ScenarioReport`] as text or CSV.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::adoption::{
    component_adoption_game, insurance_game, insurer_ledger, stag_hunt_game, AdoptionParams,
    InsuranceParams,
};
use crate::dynamics::{
    basin_census, compare_prediction, run_dynamics, CensusMode, CensusResult, DynamicsConfig,
    TerminalKind, UpdateOrder,
};
use crate::error::{Error, Result};
use crate::game::{Profile, RiskWinner, StrategicGame, DEFAULT_BUDGET};
use crate::real::Real;
use crate::schedule::PdSchedule;
use crate::supergame::{
    check_conditional_cooperation, cooperation_threshold, critical_discount_numeric, Deviation,
};
use crate::topology::Graph;

/// A number as it appears in a scenario file.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum NumIn {
    Int(i64),
    Float(f64),
    Str(String),
}

impl NumIn {
    fn to_real(&self, field: &str) -> Result<Real> {
        let value = match self {
            NumIn::Int(n) => Real::int(*n),
            NumIn::Float(x) => Real::Approx(*x),
            NumIn::Str(s) => s.parse()?,
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Scenario(format!("`{field}` must be finite")))
        }
    }

    fn from_real(value: &Real) -> NumIn {
        match value {
            Real::Exact(_) => NumIn::Str(value.to_string()),
            Real::Approx(x) => NumIn::Float(*x),
        }
    }
}

/// A scalar broadcast to every player, or one value per player.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ScalarOrVec {
    One(NumIn),
    Many(Vec<NumIn>),
}

impl ScalarOrVec {
    fn expand(&self, n: usize, field: &str) -> Result<Vec<Real>> {
        match self {
            ScalarOrVec::One(v) => Ok(vec![v.to_real(field)?; n]),
            ScalarOrVec::Many(vs) => {
                if vs.len() != n {
                    return Err(Error::Scenario(format!(
                        "`{field}` lists {} values for {n} players",
                        vs.len()
                    )));
                }
                vs.iter().map(|v| v.to_real(field)).collect()
            }
        }
    }

    fn declared_len(&self) -> Option<usize> {
        match self {
            ScalarOrVec::One(_) => None,
            ScalarOrVec::Many(vs) => Some(vs.len()),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DynamicsIn {
    update_order: Option<String>,
    max_steps: Option<usize>,
    seed: Option<u64>,
    samples: Option<u64>,
    exhaustive: Option<bool>,
}

/// The raw shape of a scenario file; see [`Scenario`] for the resolved form.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    kind: String,
    analysis: Option<String>,
    n_players: Option<usize>,
    f: Option<Vec<NumIn>>,
    g: Option<Vec<NumIn>>,
    alpha: Option<ScalarOrVec>,
    beta: Option<ScalarOrVec>,
    gamma: Option<ScalarOrVec>,
    epsilon: Option<ScalarOrVec>,
    delta: Option<ScalarOrVec>,
    exponent: Option<u32>,
    graph_file: Option<String>,
    initial: Option<Vec<String>>,
    deviations: Option<String>,
    #[serde(default)]
    dynamics: DynamicsIn,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<ScenarioFile> {
        Ok(serde_json::from_str(text)?)
    }

    /// Overwrite one named scalar parameter, the hook the sweep runs on.
    pub fn with_param(&self, param: &str, value: &Real) -> Result<ScenarioFile> {
        let mut file = self.clone();
        let scalar = Some(ScalarOrVec::One(NumIn::from_real(value)));
        match param {
            "alpha" => file.alpha = scalar,
            "beta" => file.beta = scalar,
            "gamma" => file.gamma = scalar,
            "epsilon" => file.epsilon = scalar,
            "delta" => file.delta = scalar,
            "exponent" => {
                let as_int = value
                    .as_exact()
                    .filter(|r| r.is_integer())
                    .and_then(|r| u32::try_from(r.to_integer()).ok())
                    .filter(|&e| e >= 1);
                file.exponent = Some(as_int.ok_or_else(|| {
                    Error::Scenario(format!("`exponent` must be a positive integer, got {value}"))
                })?);
            }
            other => {
                return Err(Error::Scenario(format!(
                    "unknown sweep parameter `{other}` \
                     (expected alpha, beta, gamma, epsilon, delta, or exponent)"
                )))
            }
        }
        Ok(file)
    }
}

/// The game a scenario describes.
#[derive(Clone, Debug)]
pub enum GameSpec {
    PdStage(PdSchedule),
    PdSupergame {
        schedule: PdSchedule,
        discounts: Vec<Real>,
    },
    StagHunt(AdoptionParams),
    Insurance(AdoptionParams, InsuranceParams),
    ComponentAdoption {
        graph: Graph,
        params: AdoptionParams,
        exponent: u32,
    },
}

impl GameSpec {
    /// The strategic-form game to analyze; for a supergame this is its stage
    /// game.
    pub fn build(&self) -> Result<StrategicGame> {
        match self {
            GameSpec::PdStage(s) | GameSpec::PdSupergame { schedule: s, .. } => {
                Ok(s.stage_game())
            }
            GameSpec::StagHunt(p) => Ok(stag_hunt_game(p)),
            GameSpec::Insurance(p, ins) => insurance_game(p, ins),
            GameSpec::ComponentAdoption {
                graph,
                params,
                exponent,
            } => component_adoption_game(graph, params, *exponent),
        }
    }

    fn describe(&self) -> String {
        fn list(values: &[Real]) -> String {
            let first = &values[0];
            if values.iter().all(|v| v == first) {
                format!("{first} (uniform)")
            } else {
                format!(
                    "[{}]",
                    values.iter().map(Real::to_string).collect::<Vec<_>>().join(", ")
                )
            }
        }
        fn schedule_line(s: &PdSchedule) -> String {
            let n = s.n_players();
            let fs: Vec<String> = (0..n).map(|k| s.f(k).to_string()).collect();
            let gs: Vec<String> = (0..n).map(|k| s.g(k).to_string()).collect();
            format!("N = {n}, f = [{}], g = [{}]", fs.join(", "), gs.join(", "))
        }
        fn adoption_line(p: &AdoptionParams) -> String {
            let n = p.n_players();
            let beta: Vec<Real> = (0..n).map(|i| p.beta(i).clone()).collect();
            let gamma: Vec<Real> = (0..n).map(|i| p.gamma(i).clone()).collect();
            format!("N = {n}, beta = {}, gamma = {}", list(&beta), list(&gamma))
        }
        match self {
            GameSpec::PdStage(s) => {
                format!("Shared-resource stage game: {}", schedule_line(s))
            }
            GameSpec::PdSupergame { schedule, discounts } => format!(
                "Discounted shared-resource supergame: {}, alpha = {}",
                schedule_line(schedule),
                list(discounts)
            ),
            GameSpec::StagHunt(p) => format!("Adoption stag hunt: {}", adoption_line(p)),
            GameSpec::Insurance(p, ins) => {
                let n = ins.n_players();
                let eps: Vec<Real> = (0..n).map(|i| ins.epsilon(i).clone()).collect();
                let del: Vec<Real> = (0..n).map(|i| ins.delta(i).clone()).collect();
                format!(
                    "Insured adoption game: {}, epsilon = {}, delta = {}{}",
                    adoption_line(p),
                    list(&eps),
                    list(&del),
                    if ins.covers_benefit() {
                        " (covers the full benefit)"
                    } else {
                        ""
                    }
                )
            }
            GameSpec::ComponentAdoption {
                graph,
                params,
                exponent,
            } => format!(
                "Component adoption game on {} nodes, {} edges: {}, exponent = {exponent}",
                graph.n_nodes(),
                graph.edges().len(),
                adoption_line(params)
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Analysis {
    Nash,
    SupergameCheck,
    Dynamics,
    Census,
    Risk,
}

impl Analysis {
    fn parse(name: &str) -> Result<Analysis> {
        match name {
            "nash" => Ok(Analysis::Nash),
            "supergame_check" => Ok(Analysis::SupergameCheck),
            "dynamics" => Ok(Analysis::Dynamics),
            "census" => Ok(Analysis::Census),
            "risk" => Ok(Analysis::Risk),
            other => Err(Error::Scenario(format!(
                "unknown analysis `{other}` \
                 (expected nash, supergame_check, dynamics, census, or risk)"
            ))),
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Analysis::Nash => "nash",
            Analysis::SupergameCheck => "supergame_check",
            Analysis::Dynamics => "dynamics",
            Analysis::Census => "census",
            Analysis::Risk => "risk",
        };
        f.write_str(name)
    }
}

/// A fully resolved scenario: parameters validated, graph loaded.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub game: GameSpec,
    pub analysis: Option<Analysis>,
    /// Starting profile for dynamics, as labels; defaults to everyone
    /// playing their last-listed strategy (the status quo: nobody adopts).
    pub initial: Option<Vec<String>>,
    pub deviations: Vec<Deviation>,
    pub deviations_name: String,
    pub dynamics: DynamicsConfig,
    pub samples: Option<u64>,
    pub exhaustive: Option<bool>,
}

impl Scenario {
    /// Parse and resolve scenario text. `base_dir` anchors relative
    /// `graph_file` references (usually the scenario file's directory).
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Scenario> {
        Scenario::resolve(&ScenarioFile::parse(text)?, base_dir)
    }

    pub fn resolve(file: &ScenarioFile, base_dir: Option<&Path>) -> Result<Scenario> {
        let missing =
            |field: &str| Error::Scenario(format!("kind `{}` needs `{field}`", file.kind));
        let schedule = |file: &ScenarioFile| -> Result<PdSchedule> {
            let f = file.f.as_ref().ok_or_else(|| missing("f"))?;
            let g = file.g.as_ref().ok_or_else(|| missing("g"))?;
            let f: Vec<Real> = f.iter().map(|v| v.to_real("f")).collect::<Result<_>>()?;
            let g: Vec<Real> = g.iter().map(|v| v.to_real("g")).collect::<Result<_>>()?;
            PdSchedule::new(f, g)
        };
        let adoption = |file: &ScenarioFile, n: usize| -> Result<AdoptionParams> {
            let beta = file.beta.as_ref().ok_or_else(|| missing("beta"))?;
            let gamma = file.gamma.as_ref().ok_or_else(|| missing("gamma"))?;
            AdoptionParams::per_player(beta.expand(n, "beta")?, gamma.expand(n, "gamma")?)
        };
        // Player count: explicit, or inferred from any per-player array.
        let inferred_n = || -> Result<usize> {
            file.n_players
                .or_else(|| file.beta.as_ref().and_then(ScalarOrVec::declared_len))
                .or_else(|| file.gamma.as_ref().and_then(ScalarOrVec::declared_len))
                .ok_or_else(|| missing("n_players"))
        };
        let game = match file.kind.as_str() {
            "pd_stage" => GameSpec::PdStage(schedule(file)?),
            "pd_supergame" => {
                let s = schedule(file)?;
                let alpha = file.alpha.as_ref().ok_or_else(|| missing("alpha"))?;
                let discounts = alpha.expand(s.n_players(), "alpha")?;
                GameSpec::PdSupergame {
                    schedule: s,
                    discounts,
                }
            }
            "stag_hunt" => GameSpec::StagHunt(adoption(file, inferred_n()?)?),
            "insurance" => {
                let params = adoption(file, inferred_n()?)?;
                let n = params.n_players();
                let epsilon = file
                    .epsilon
                    .as_ref()
                    .ok_or_else(|| missing("epsilon"))?
                    .expand(n, "epsilon")?;
                let ins = match &file.delta {
                    Some(delta) => {
                        InsuranceParams::new(&params, epsilon, delta.expand(n, "delta")?)?
                    }
                    None => InsuranceParams::covering(&params, epsilon)?,
                };
                GameSpec::Insurance(params, ins)
            }
            "component_adoption" => {
                let name = file
                    .graph_file
                    .as_ref()
                    .ok_or_else(|| missing("graph_file"))?;
                let path: PathBuf = match base_dir {
                    Some(dir) => dir.join(name),
                    None => PathBuf::from(name),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::Scenario(format!("cannot read graph file {}: {e}", path.display()))
                })?;
                let graph = Graph::parse_edge_list(&text)?;
                let params = adoption(file, graph.n_nodes())?;
                GameSpec::ComponentAdoption {
                    graph,
                    params,
                    exponent: file.exponent.unwrap_or(2),
                }
            }
            other => {
                return Err(Error::Scenario(format!(
                    "unknown kind `{other}` (expected pd_stage, pd_supergame, \
                     stag_hunt, insurance, or component_adoption)"
                )))
            }
        };
        let analysis = file.analysis.as_deref().map(Analysis::parse).transpose()?;
        if analysis == Some(Analysis::SupergameCheck)
            && !matches!(game, GameSpec::PdSupergame { .. })
        {
            return Err(Error::Scenario(
                "analysis `supergame_check` needs kind `pd_supergame`".into(),
            ));
        }
        let (deviations, deviations_name) = match file.deviations.as_deref() {
            None | Some("standard") => (Deviation::standard(), "standard".to_string()),
            Some("extended") => (Deviation::extended(), "extended".to_string()),
            Some(other) => {
                return Err(Error::Scenario(format!(
                    "unknown deviation family `{other}` (expected standard or extended)"
                )))
            }
        };
        let order = match file.dynamics.update_order.as_deref() {
            None | Some("fixed") => UpdateOrder::Fixed,
            Some("random") => UpdateOrder::Random,
            Some(other) => {
                return Err(Error::Scenario(format!(
                    "unknown update order `{other}` (expected fixed or random)"
                )))
            }
        };
        let defaults = DynamicsConfig::default();
        Ok(Scenario {
            game,
            analysis,
            initial: file.initial.clone(),
            deviations,
            deviations_name,
            dynamics: DynamicsConfig {
                order,
                max_steps: file.dynamics.max_steps.unwrap_or(defaults.max_steps),
                seed: file.dynamics.seed.unwrap_or(defaults.seed),
            },
            samples: file.dynamics.samples,
            exhaustive: file.dynamics.exhaustive,
        })
    }

    /// The analysis to run, preferring the caller's override.
    pub fn analysis_or(&self, requested: Option<Analysis>) -> Result<Analysis> {
        requested.or(self.analysis).ok_or_else(|| {
            Error::Scenario("no analysis requested and none named in the scenario".into())
        })
    }
}

/// Knobs the CLI flags control.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Cap on exhaustive passes (equilibrium enumeration, censuses).
    pub budget: u64,
    /// Overrides the scenario's dynamics seed.
    pub seed: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            budget: DEFAULT_BUDGET,
            seed: None,
        }
    }
}

/// One rendered CSV artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub csv: String,
}

/// Everything an analysis produced: a human-readable report and CSV tables.
#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub text: String,
    pub tables: Vec<Table>,
}

fn csv_table(name: &str, header: &str, rows: Vec<Vec<String>>) -> Table {
    let mut csv = String::from(header);
    csv.push('\n');
    for row in rows {
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    Table {
        name: name.to_string(),
        csv,
    }
}

/// Space-joined labels, the profile format used inside CSV fields.
fn plain_profile(game: &StrategicGame, profile: &Profile) -> String {
    profile
        .choices()
        .iter()
        .enumerate()
        .map(|(p, &s)| game.label(p, s))
        .collect::<Vec<_>>()
        .join(" ")
}

fn payoff_list(payoffs: &[Real]) -> String {
    format!(
        "({})",
        payoffs.iter().map(Real::to_string).collect::<Vec<_>>().join(", ")
    )
}

fn terminal_label(game: &StrategicGame, profile: &Profile, kind: TerminalKind) -> String {
    let plain = plain_profile(game, profile);
    match kind {
        TerminalKind::Nash => plain,
        TerminalKind::Cycle => format!("{plain} [cycle]"),
        TerminalKind::BudgetExhausted => format!("{plain} [budget]"),
    }
}

fn census_mode(scenario: &Scenario) -> CensusMode {
    match (scenario.exhaustive, scenario.samples) {
        (Some(true), _) | (None, None) | (Some(false), None) => CensusMode::Exhaustive,
        (_, Some(samples)) => CensusMode::MonteCarlo { samples },
    }
}

fn dynamics_config(scenario: &Scenario, opts: &RunOptions) -> DynamicsConfig {
    DynamicsConfig {
        seed: opts.seed.unwrap_or(scenario.dynamics.seed),
        ..scenario.dynamics
    }
}

fn initial_profile(game: &StrategicGame, scenario: &Scenario) -> Result<Profile> {
    match &scenario.initial {
        Some(labels) => {
            let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
            game.profile(&labels)
        }
        None => Ok(Profile::new(
            (0..game.n_players())
                .map(|p| game.n_strategies(p) - 1)
                .collect(),
        )),
    }
}

/// Run one analysis over a resolved scenario.
pub fn run_scenario(
    scenario: &Scenario,
    analysis: Analysis,
    opts: &RunOptions,
) -> Result<ScenarioReport> {
    match analysis {
        Analysis::Nash => run_nash(scenario, opts),
        Analysis::SupergameCheck => run_supergame_check(scenario),
        Analysis::Dynamics => run_dynamics_analysis(scenario, opts),
        Analysis::Census => run_census(scenario, opts),
        Analysis::Risk => run_risk(scenario, opts),
    }
}

fn run_nash(scenario: &Scenario, opts: &RunOptions) -> Result<ScenarioReport> {
    let game = scenario.game.build()?;
    let report = game.enumerate_pure_nash(opts.budget)?;
    let mut text = String::new();
    text.push_str(&scenario.game.describe());
    text.push('\n');
    text.push_str(&format!("Profiles: {}\n", report.search_space_size));
    if report.search_space_size <= 64 {
        text.push_str("Payoff table:\n");
        for p in game.profiles() {
            text.push_str(&format!(
                "  {} -> {}\n",
                game.render_profile(&p),
                payoff_list(&game.payoff(&p)?)
            ));
        }
    }
    text.push_str(&format!("Pure Nash equilibria: {}\n", report.equilibria.len()));
    for (i, eq) in report.equilibria.iter().enumerate() {
        text.push_str(&format!(
            "  {} payoffs {} {}{}\n",
            game.render_profile(&eq.profile),
            payoff_list(&eq.payoffs),
            if eq.strict { "strict" } else { "weak" },
            if report.pareto_dominant.contains(&i) {
                ", Pareto-undominated"
            } else {
                ""
            }
        ));
    }
    if let Some(best) = report.unique_pareto_dominant() {
        text.push_str(&format!(
            "Pareto-dominant equilibrium: {}\n",
            game.render_profile(&best.profile)
        ));
    }
    if let GameSpec::Insurance(_, ins) = &scenario.game {
        for eq in &report.equilibria {
            let ledger = insurer_ledger(&game, ins, &eq.profile)?;
            text.push_str(&format!(
                "Insurer ledger at {}: premiums {}, reimbursements {}, net {}\n",
                game.render_profile(&eq.profile),
                ledger.premiums,
                ledger.reimbursements,
                ledger.net
            ));
        }
    }
    let rows = report
        .equilibria
        .iter()
        .enumerate()
        .map(|(i, eq)| {
            vec![
                plain_profile(&game, &eq.profile),
                eq.strict.to_string(),
                report.pareto_dominant.contains(&i).to_string(),
                eq.payoffs
                    .iter()
                    .map(Real::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            ]
        })
        .collect();
    Ok(ScenarioReport {
        text,
        tables: vec![csv_table(
            "equilibria.csv",
            "profile,strict,pareto_undominated,payoffs",
            rows,
        )],
    })
}

fn run_supergame_check(scenario: &Scenario) -> Result<ScenarioReport> {
    let GameSpec::PdSupergame { schedule, discounts } = &scenario.game else {
        return Err(Error::Scenario(
            "analysis `supergame_check` needs kind `pd_supergame`".into(),
        ));
    };
    let verdict = check_conditional_cooperation(schedule, discounts, &scenario.deviations)?;
    let threshold = cooperation_threshold(schedule);
    let numeric = critical_discount_numeric(schedule);
    let mut text = String::new();
    text.push_str(&scenario.game.describe());
    text.push('\n');
    text.push_str(&format!(
        "Profile under test: every player runs tit-for-tat({})\n",
        schedule.n_players() - 1
    ));
    text.push_str(&format!("Deviation family: {}\n", scenario.deviations_name));
    text.push_str(&format!(
        "Cooperation threshold: {threshold} (closed form), {numeric:.9} (bisection)\n"
    ));
    text.push_str(&format!(
        "Per-player values: {}\n",
        verdict
            .values
            .iter()
            .map(Real::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let verdict_word = match (verdict.is_equilibrium, verdict.weak) {
        (true, false) => "equilibrium",
        (true, true) => "equilibrium (weak)",
        _ => "not an equilibrium",
    };
    text.push_str(&format!("Verdict: {verdict_word}\n"));
    let (b_player, b_machine, b_value, b_gain) = match &verdict.binding_deviation {
        Some(b) => {
            text.push_str(&format!(
                "Binding deviation: player {} -> {}, value {}, gain {}\n",
                b.player, b.machine, b.value, b.gain
            ));
            (
                b.player.to_string(),
                b.machine.clone(),
                b.value.to_string(),
                b.gain.to_string(),
            )
        }
        None => {
            text.push_str("Binding deviation: none (every deviation strictly loses)\n");
            (String::new(), String::new(), String::new(), String::new())
        }
    };
    let row = vec![
        discounts
            .iter()
            .map(Real::to_string)
            .collect::<Vec<_>>()
            .join(" "),
        threshold.to_string(),
        format!("{numeric:.9}"),
        verdict.is_equilibrium.to_string(),
        verdict.weak.to_string(),
        b_player,
        b_machine,
        b_value,
        b_gain,
        verdict
            .values
            .iter()
            .map(Real::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    ];
    Ok(ScenarioReport {
        text,
        tables: vec![csv_table(
            "supergame.csv",
            "alpha,threshold,threshold_bisection,equilibrium,weak,\
             binding_player,binding_machine,binding_value,binding_gain,values",
            vec![row],
        )],
    })
}

fn run_dynamics_analysis(scenario: &Scenario, opts: &RunOptions) -> Result<ScenarioReport> {
    let game = scenario.game.build()?;
    let initial = initial_profile(&game, scenario)?;
    let config = dynamics_config(scenario, opts);
    let path = run_dynamics(&game, &initial, &config)?;
    let mut text = String::new();
    text.push_str(&scenario.game.describe());
    text.push('\n');
    text.push_str(&format!(
        "Best-response dynamics: {} order, max {} steps, seed {}\n",
        match config.order {
            UpdateOrder::Fixed => "fixed",
            UpdateOrder::Random => "random",
        },
        config.max_steps,
        config.seed
    ));
    text.push_str(&format!("Start: {}\n", game.render_profile(&initial)));
    for (update, after) in path.updates.iter().zip(path.profiles.iter().skip(1)) {
        text.push_str(&format!(
            "  player {}: {} -> {} giving {}\n",
            update.player,
            game.label(update.player, update.from),
            game.label(update.player, update.to),
            game.render_profile(after)
        ));
    }
    text.push_str(&format!(
        "Terminal: {} [{}] after {} updates\n",
        game.render_profile(path.terminal_profile()),
        match path.terminal_kind {
            TerminalKind::Nash => "nash",
            TerminalKind::Cycle => "cycle",
            TerminalKind::BudgetExhausted => "budget exhausted",
        },
        path.updates_applied
    ));
    let rows = path
        .updates
        .iter()
        .zip(path.profiles.iter().skip(1))
        .map(|(u, after)| {
            vec![
                u.step.to_string(),
                u.player.to_string(),
                game.label(u.player, u.from).to_string(),
                game.label(u.player, u.to).to_string(),
                plain_profile(&game, after),
            ]
        })
        .collect();
    Ok(ScenarioReport {
        text,
        tables: vec![csv_table(
            "path.csv",
            "step,player,from,to,profile",
            rows,
        )],
    })
}

fn census_tables(game: &StrategicGame, census: &CensusResult) -> (String, Table) {
    let mut lines = String::new();
    let mut rows = Vec::new();
    for ((profile, kind), count) in &census.tallies {
        let fraction = *count as f64 / census.total_runs as f64;
        let suffix = match kind {
            TerminalKind::Nash => "",
            TerminalKind::Cycle => " [cycle]",
            TerminalKind::BudgetExhausted => " [budget]",
        };
        lines.push_str(&format!(
            "  {}{suffix}: {count} runs (fraction {fraction})\n",
            game.render_profile(profile)
        ));
        rows.push(vec![
            terminal_label(game, profile, *kind),
            count.to_string(),
            fraction.to_string(),
        ]);
    }
    (
        lines,
        csv_table("census.csv", "terminal_profile,count,fraction", rows),
    )
}

fn run_census(scenario: &Scenario, opts: &RunOptions) -> Result<ScenarioReport> {
    let game = scenario.game.build()?;
    let config = dynamics_config(scenario, opts);
    let mode = census_mode(scenario);
    let census = basin_census(&game, &config, mode, opts.budget)?;
    let mut text = String::new();
    text.push_str(&scenario.game.describe());
    text.push('\n');
    text.push_str(&match mode {
        CensusMode::Exhaustive => format!(
            "Basin census: exhaustive over {} profiles\n",
            census.total_runs
        ),
        CensusMode::MonteCarlo { samples } => format!(
            "Basin census: {samples} sampled starts, seed {}\n",
            config.seed
        ),
    });
    let (lines, table) = census_tables(&game, &census);
    text.push_str("Terminal basins:\n");
    text.push_str(&lines);
    Ok(ScenarioReport {
        text,
        tables: vec![table],
    })
}

fn run_risk(scenario: &Scenario, opts: &RunOptions) -> Result<ScenarioReport> {
    let game = scenario.game.build()?;
    let config = dynamics_config(scenario, opts);
    let census = basin_census(&game, &config, census_mode(scenario), opts.budget)?;
    let report = compare_prediction(&game, &census, opts.budget)?;
    let [a, b] = &report.equilibria;
    let winner = match report.risk.winner {
        RiskWinner::First => plain_profile(&game, &a.profile),
        RiskWinner::Second => plain_profile(&game, &b.profile),
        RiskWinner::Tie => "tie".to_string(),
    };
    let winner_pretty = match report.risk.winner {
        RiskWinner::First => game.render_profile(&a.profile),
        RiskWinner::Second => game.render_profile(&b.profile),
        RiskWinner::Tie => "tie".to_string(),
    };
    let mut text = String::new();
    text.push_str(&scenario.game.describe());
    text.push('\n');
    text.push_str(&format!(
        "Strict equilibria: {} payoffs {} and {} payoffs {}\n",
        game.render_profile(&a.profile),
        payoff_list(&a.payoffs),
        game.render_profile(&b.profile),
        payoff_list(&b.payoffs),
    ));
    text.push_str(&format!(
        "Deviation-loss products: {} and {}\n",
        report.risk.nash_products[0], report.risk.nash_products[1]
    ));
    text.push_str(&format!("Risk-dominant: {winner_pretty}\n"));
    text.push_str(&format!(
        "Basin counts over {} runs: {} and {}\n",
        census.total_runs, report.basin_counts[0], report.basin_counts[1]
    ));
    text.push_str(&format!(
        "Risk prediction agrees with basin sizes: {}\n",
        if report.agree { "yes" } else { "no" }
    ));
    let row = vec![
        plain_profile(&game, &a.profile),
        plain_profile(&game, &b.profile),
        report.risk.nash_products[0].to_string(),
        report.risk.nash_products[1].to_string(),
        winner,
        report.basin_counts[0].to_string(),
        report.basin_counts[1].to_string(),
        report.agree.to_string(),
    ];
    Ok(ScenarioReport {
        text,
        tables: vec![csv_table(
            "risk.csv",
            "equilibrium_1,equilibrium_2,product_1,product_2,winner,basin_1,basin_2,agree",
            vec![row],
        )],
    })
}

/// Run the scenario's analysis at every grid value of one parameter.
pub fn run_sweep(
    file: &ScenarioFile,
    base_dir: Option<&Path>,
    param: &str,
    grid: &[Real],
    opts: &RunOptions,
) -> Result<ScenarioReport> {
    if grid.is_empty() {
        return Err(Error::Scenario("sweep grid is empty".into()));
    }
    let mut text = String::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header: Option<(&str, Analysis)> = None;
    for value in grid {
        let scenario = Scenario::resolve(&file.with_param(param, value)?, base_dir)?;
        let analysis = scenario.analysis_or(None)?;
        let game = scenario.game.build()?;
        let mut row = vec![param.to_string(), value.to_string()];
        let columns: &str = match analysis {
            Analysis::Nash => {
                let report = game.enumerate_pure_nash(opts.budget)?;
                row.push(report.equilibria.len().to_string());
                row.push(
                    report
                        .unique_pareto_dominant()
                        .map(|eq| plain_profile(&game, &eq.profile))
                        .unwrap_or_default(),
                );
                "param,value,equilibria,pareto_dominant"
            }
            Analysis::SupergameCheck => {
                let GameSpec::PdSupergame { schedule, discounts } = &scenario.game else {
                    unreachable!("validated at resolve time");
                };
                let verdict =
                    check_conditional_cooperation(schedule, discounts, &scenario.deviations)?;
                row.push(verdict.is_equilibrium.to_string());
                row.push(verdict.weak.to_string());
                let (machine, gain) = verdict
                    .binding_deviation
                    .map(|b| (b.machine, b.gain.to_string()))
                    .unwrap_or_default();
                row.push(machine);
                row.push(gain);
                "param,value,equilibrium,weak,binding_machine,binding_gain"
            }
            Analysis::Dynamics => {
                let initial = initial_profile(&game, &scenario)?;
                let config = dynamics_config(&scenario, opts);
                let path = run_dynamics(&game, &initial, &config)?;
                row.push(terminal_label(
                    &game,
                    path.terminal_profile(),
                    path.terminal_kind,
                ));
                row.push(path.updates_applied.to_string());
                "param,value,terminal,updates"
            }
            Analysis::Census => {
                let config = dynamics_config(&scenario, opts);
                let census = basin_census(&game, &config, census_mode(&scenario), opts.budget)?;
                let basins: Vec<String> = census
                    .tallies
                    .iter()
                    .map(|((p, kind), count)| {
                        format!("{}:{count}", terminal_label(&game, p, *kind))
                    })
                    .collect();
                row.push(basins.join(";"));
                "param,value,basins"
            }
            Analysis::Risk => {
                let config = dynamics_config(&scenario, opts);
                let census = basin_census(&game, &config, census_mode(&scenario), opts.budget)?;
                let report = compare_prediction(&game, &census, opts.budget)?;
                let winner = match report.risk.winner {
                    RiskWinner::First => {
                        plain_profile(&game, &report.equilibria[0].profile)
                    }
                    RiskWinner::Second => {
                        plain_profile(&game, &report.equilibria[1].profile)
                    }
                    RiskWinner::Tie => "tie".to_string(),
                };
                row.push(winner);
                row.push(report.risk.nash_products[0].to_string());
                row.push(report.risk.nash_products[1].to_string());
                row.push(report.agree.to_string());
                "param,value,winner,product_1,product_2,agree"
            }
        };
        match &header {
            None => {
                text.push_str(&scenario.game.describe());
                text.push('\n');
                text.push_str(&format!(
                    "Sweep of `{param}` over {} values, analysis {analysis}\n",
                    grid.len()
                ));
                header = Some((columns, analysis));
            }
            Some((h, _)) => debug_assert_eq!(*h, columns),
        }
        text.push_str(&format!("  {param} = {value}: {}\n", row[2..].join(", ")));
        rows.push(row);
    }
    let (columns, _) = header.expect("grid is non-empty");
    Ok(ScenarioReport {
        text,
        tables: vec![csv_table("sweep.csv", columns, rows)],
    })
}

/// Scenario texts compiled into the binary for the `demo` subcommand.
pub fn bundled_scenario(name: &str) -> Option<&'static str> {
    match name {
        "fig1_stage" => Some(include_str!("../scenarios/fig1_stage.json")),
        "fig1_supergame" => Some(include_str!("../scenarios/fig1_supergame.json")),
        "staghunt" => Some(include_str!("../scenarios/staghunt.json")),
        "staghunt_2p" => Some(include_str!("../scenarios/staghunt_2p.json")),
        "insurance" => Some(include_str!("../scenarios/insurance.json")),
        "insurance_dynamics" => Some(include_str!("../scenarios/insurance_dynamics.json")),
        "insurance_census" => Some(include_str!("../scenarios/insurance_census.json")),
        "insurance_census_mc" => Some(include_str!("../scenarios/insurance_census_mc.json")),
        _ => None,
    }
}

/// The scripted demos: each runs a pair of bundled scenarios.
pub fn run_demo(name: &str, opts: &RunOptions) -> Result<ScenarioReport> {
    let parts: &[&str] = match name {
        "fig1" => &["fig1_stage", "fig1_supergame"],
        "staghunt" => &["staghunt", "staghunt_2p"],
        "insurance" => &["insurance", "insurance_dynamics"],
        other => {
            return Err(Error::Scenario(format!(
                "unknown demo `{other}` (expected fig1, staghunt, or insurance)"
            )))
        }
    };
    let mut text = String::new();
    let mut tables = Vec::new();
    for part in parts {
        let source = bundled_scenario(part).expect("demo parts are bundled");
        let scenario = Scenario::parse(source, None)?;
        let analysis = scenario.analysis_or(None)?;
        let report = run_scenario(&scenario, analysis, opts)?;
        text.push_str(&format!("== {part} ({analysis}) ==\n"));
        text.push_str(&report.text);
        text.push('\n');
        for table in report.tables {
            tables.push(Table {
                name: format!("{part}-{}", table.name),
                csv: table.csv,
            });
        }
    }
    Ok(ScenarioReport { text, tables })
}
