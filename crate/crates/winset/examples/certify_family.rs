//! Spacing checks for three families: scale 512 passes, scale 256 fails the
//! nested-gap condition, and the product-scale family q_n = n + 400 passes
//! with the canonical boundary cell.
//!
//! ```sh
//! cargo run --example certify_family
//! ```

use winset::cantor::BasicSequence;
use winset::family::{check_friendly, i_threshold, CantorFamily, IntervalFamily, UniformFamily};
use winset::game::GameParams;
use winset::rational::Rational;

fn report(family: &dyn IntervalFamily, params: &GameParams) {
    let rep = check_friendly(family, params, 1..=3, -20..=20);
    println!("{}", family.describe());
    if let Some(cf) = &rep.closed_form {
        println!(
            "  closed form: gap_to_member {}, nested_gap {}",
            cf.gap_to_member_ok, cf.nested_gap_ok
        );
    }
    match &rep.first_violation {
        None => println!("  windowed check: pass on all {} cells", rep.cells.len()),
        Some(v) => println!(
            "  windowed check: FAIL, first violation `{}` at k={} n={}",
            v.condition.name(),
            v.k,
            v.n
        ),
    }
    let straddlers = rep.cells.iter().filter(|c| !c.nesting).count();
    if straddlers > 0 {
        println!(
            "  note: {straddlers} cells have child gaps straddling a breakpoint (reported, not gated)"
        );
    }
    println!();
}

fn main() {
    let params = GameParams::new(Rational::of(1, 2), Rational::of(1, 2)).unwrap();
    println!(
        "alpha = beta = 1/2: abg = {}, nested-gap threshold = {}\n",
        params.alpha_beta() * params.gamma(),
        Rational::from_int(6) / (params.alpha_beta().pow(2) * params.gamma())
    );

    let f512 = UniformFamily::new(512, (Rational::zero(), Rational::of(1, 512))).unwrap();
    report(&f512, &params);

    let f256 = UniformFamily::new(256, (Rational::zero(), Rational::of(1, 256))).unwrap();
    report(&f256, &params);

    let cell = i_threshold(&params).unwrap();
    println!("canonical avoided cell: [0, {cell})");
    let cantor = CantorFamily::new(
        BasicSequence::affine(400, 1).unwrap(),
        (Rational::zero(), cell),
    )
    .unwrap();
    report(&cantor, &params);
}
