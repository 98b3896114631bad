//! Grouping slow sequences until they clear the spacing threshold: blocks of
//! `t` consecutive terms multiply into one term of at least `2^t`, which
//! beats `6/((alpha*beta)^2 * gamma)` for the exactly computed `t`.
//!
//! ```sh
//! cargo run --example grouping
//! ```

use winset::cantor::BasicSequence;
use winset::family::{check_friendly, grouping_t, i_threshold, CantorFamily, group_sequence};
use winset::game::GameParams;
use winset::rational::Rational;

fn main() {
    let params = GameParams::new(Rational::of(1, 2), Rational::of(1, 2)).unwrap();
    let threshold = Rational::from_int(6) / (params.alpha_beta().pow(2) * params.gamma());
    let t = grouping_t(&params).unwrap();
    println!(
        "alpha = beta = 1/2: threshold {threshold} -> grouping factor t = {t} (2^{t} = {} > {threshold})",
        Rational::from_int(2).pow(t),
    );

    let slow = BasicSequence::constant(2).unwrap();
    let grouped = group_sequence(&slow, t).unwrap();
    println!(
        "constant 2 grouped in blocks of {t}: every term {}",
        grouped.q(1).unwrap()
    );

    let staircase = BasicSequence::from_list(vec![2, 3, 4, 5, 6, 7]).unwrap();
    let g3 = group_sequence(&staircase, 3).unwrap();
    println!(
        "(2,3,4,5,6,7) grouped in threes: ({}, {})",
        g3.q(1).unwrap(),
        g3.q(2).unwrap()
    );

    // the grouped family clears the windowed spacing check
    let cell = i_threshold(&params).unwrap();
    let family = CantorFamily::new(grouped, (Rational::zero(), cell)).unwrap();
    let report = check_friendly(&family, &params, 1..=2, -10..=10);
    println!(
        "grouped constant-2 family over the canonical cell: windowed check pass = {}",
        report.overall
    );
}
