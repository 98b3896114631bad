//! The push mechanism: from any ball, `push_rounds` rounds of right-pushes
//! drive the play strictly past `centre + radius * gamma / 2`, whatever the
//! adversary does.
//!
//! ```sh
//! cargo run --example push_drift
//! ```

use winset::game::{run_game, GameParams, Role};
use winset::interval::Interval;
use winset::rational::Rational;
use winset::strategy::{push_rounds, PushAlice, PushDirection, RandomBob};

fn main() {
    let params = GameParams::new(Rational::of(1, 2), Rational::of(1, 2)).unwrap();
    let t = push_rounds(&params).unwrap();
    println!(
        "alpha = {}, beta = {}, gamma = {}, push length t = {t}",
        params.alpha(),
        params.beta(),
        params.gamma()
    );

    let opening = Interval::closed(Rational::of(0, 1), Rational::of(2, 1)).unwrap();
    let watermark = opening.center() + opening.radius() * params.gamma() / Rational::from_int(2);
    println!("opening ball {opening}, watermark {watermark}\n");

    for seed in [7u64, 42, 2026] {
        let mut alice = PushAlice { direction: PushDirection::Right };
        let mut bob = RandomBob::new(seed, opening.clone());
        let transcript = run_game(&params, &mut alice, &mut bob, t + 1).unwrap();
        let last = transcript.ball_of(Role::Bob, t + 1).unwrap();
        println!("seed {seed:4}: final ball {last}");
        println!(
            "          left endpoint {} > {} : {}",
            last.left(),
            watermark,
            last.left() > &watermark
        );
        for i in 1..=t {
            let b = transcript.ball_of(Role::Bob, i).unwrap();
            let next = transcript.ball_of(Role::Bob, i + 1).unwrap();
            let drift = next.center() - b.center();
            println!(
                "          round {i}: centre drift {} >= gamma*radius {}",
                drift,
                params.gamma() * b.radius()
            );
        }
    }

    // the 9/10 parameters need a much longer run
    let steep = GameParams::new(Rational::of(9, 10), Rational::of(9, 10)).unwrap();
    println!("\nalpha = beta = 9/10 (gamma = {}): t = {}", steep.gamma(), push_rounds(&steep).unwrap());
}
