//! Equilibrium analysis for technology-adoption and shared-resource games.
//!
//! The crate models three related families of strategic situations and the
//! tools to analyze them:
//!
//! * finite strategic-form games with pure-equilibrium enumeration, Pareto
//!   comparison, and 2-player risk dominance ([`game`]);
//! * discounted supergames over a symmetric cooperate/defect stage game,
//!   played by finite-state machines, with exact discounted values and
//!   conditional-cooperation equilibrium checks ([`schedule`], [`supergame`]);
//! * adoption games, with and without an insurance mechanism, on complete or
//!   arbitrary interaction graphs, plus best-response dynamics and basin
//!   censuses ([`adoption`], [`topology`], [`dynamics`]).
//!
//! Scenario files and the `coopnet` binary drive the same analyses from JSON
//! descriptions ([`scenario`]); the `examples/` directory shows each
//! capability as a runnable program.

pub mod adoption;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod real;
pub mod scenario;
pub mod schedule;
pub mod supergame;
pub mod topology;

pub use adoption::{AdoptionParams, InsuranceParams};
pub use error::{Error, Result};
pub use game::{Profile, StrategicGame};
pub use real::Real;
pub use scenario::{Scenario, ScenarioReport};
pub use schedule::PdSchedule;
pub use supergame::{StrategyMachine, Supergame};
pub use topology::Graph;
