//! A full avoidance run over the scale-512 family: Alice certifies level
//! after level, and the enclosure centre's base-512 digits are pinned
//! nonzero at every certified position.
//!
//! ```sh
//! cargo run --example avoidance_game
//! ```

use winset::cantor::{digits_of, BasicSequence};
use winset::family::{IntervalFamily, UniformFamily};
use winset::game::{run_game, GameParams};
use winset::interval::Interval;
use winset::rational::Rational;
use winset::strategy::RandomBob;
use winset::AvoidanceAlice;

fn main() {
    let params = GameParams::new(Rational::of(1, 2), Rational::of(1, 2)).unwrap();
    let family = UniformFamily::new(512, (Rational::zero(), Rational::of(1, 512))).unwrap();
    let start = family.friendliness_start(&params).unwrap();
    let opening = Interval::closed(Rational::zero(), Rational::one()).unwrap();

    let mut alice = AvoidanceAlice::new(&family, params.clone(), start).unwrap();
    let mut bob = RandomBob::new(7, opening);
    let transcript = run_game(&params, &mut alice, &mut bob, 60).unwrap();

    println!("60 rounds over {}:", family.describe());
    for c in alice.certifications() {
        println!(
            "  level {:2} certified at round {:2} (trigger round {:2}, {} push rounds, {})",
            c.level,
            c.certified_round,
            c.trigger_round,
            c.push_rounds,
            match c.direction {
                Some(d) => format!("pushed {d}"),
                None => "no push needed".into(),
            }
        );
    }

    let enclosure = transcript.enclosure().unwrap();
    let center = enclosure.center();
    println!("\nenclosure after 60 rounds: length {}", enclosure.length());
    println!("centre approx {:.12}", center.to_f64());

    let levels: Vec<u32> = alice.certifications().iter().map(|c| c.level).collect();
    let highest = *levels.iter().max().unwrap() as u64;
    let seq = BasicSequence::constant(512).unwrap();
    let digits = digits_of(&center.frac_part(), &seq, highest + 2).unwrap();
    println!("\nbase-512 digits of the centre (position: digit):");
    for j in 1..=highest + 2 {
        let pinned = levels.contains(&(j as u32 - 1));
        println!(
            "  {j:2}: {:3} {}",
            digits.digit(j).unwrap(),
            if pinned { "<- pinned nonzero by certification" } else { "" }
        );
    }
}
