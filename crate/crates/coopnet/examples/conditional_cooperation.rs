//! Repetition rescues restraint: conditional cooperation in the discounted
//! supergame.
//!
//! The same shared-link stage game is played forever, each player a
//! finite-state machine. Everyone running tit-for-tat (cooperate while all
//! others cooperated last period) is an equilibrium against permanent
//! defection exactly when the discount factor clears a threshold this
//! example computes three ways: in closed form, by exact rational
//! arithmetic at specific discount factors, and by bisection.
//!
//! ```text
//! cargo run --example conditional_cooperation
//! ```

use coopnet::real::Real;
use coopnet::supergame::{
    check_conditional_cooperation, cooperation_threshold, critical_discount_numeric, Deviation,
};
use coopnet::PdSchedule;

fn main() -> coopnet::Result<()> {
    let schedule = PdSchedule::fig1();
    let threshold = cooperation_threshold(&schedule);
    println!("Cooperation threshold (closed form):   {threshold}");
    println!(
        "Cooperation threshold (bisection):     {:.10}",
        critical_discount_numeric(&schedule)
    );

    let deviations = Deviation::standard();
    for alpha in [
        Real::ratio(2, 5),
        Real::ratio(8, 15),
        Real::ratio(3, 5),
    ] {
        let verdict = check_conditional_cooperation(
            &schedule,
            &[alpha.clone(), alpha.clone()],
            &deviations,
        )?;
        print!(
            "alpha = {alpha}: value {} -> {}",
            verdict.values[0],
            match (verdict.is_equilibrium, verdict.weak) {
                (true, false) => "equilibrium",
                (true, true) => "equilibrium (weak: a deviation ties)",
                _ => "not an equilibrium",
            }
        );
        match verdict.binding_deviation {
            Some(b) if !verdict.is_equilibrium => {
                println!("; {} earns {} (gain {})", b.machine, b.value, b.gain)
            }
            _ => println!(),
        }
    }

    // The threshold rises with the lone-defector premium: tempting defections
    // demand more patience.
    let greedier = PdSchedule::new(
        vec![Real::int(10), Real::int(50)],
        vec![Real::int(15), Real::int(200)],
    )?;
    println!(
        "\nRaising the lone-flood payoff from 90 to 200 moves the threshold to {}",
        cooperation_threshold(&greedier)
    );
    Ok(())
}
