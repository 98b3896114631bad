//! Exact star discrepancy and orbit statistics.
//!
//! ```sh
//! cargo run --example star_discrepancy
//! ```

use winset::cantor::BasicSequence;
use winset::distribution::{distribution_points, orbit_coverage, star_discrepancy};
use winset::rational::Rational;

fn main() {
    // centred grids are the best-possible point sets: D* = 1/(2N)
    for n in [1i64, 10, 100] {
        let points: Vec<Rational> = (1..=n).map(|i| Rational::of(2 * i - 1, 2 * n)).collect();
        println!("centred grid N = {n:3}: D* = {}", star_discrepancy(&points).unwrap());
    }
    println!("single point {{0}}: D* = {}\n", star_discrepancy(&[Rational::zero()]).unwrap());

    // shifted orbit of a rational under constant base 10
    let ten = BasicSequence::constant(10).unwrap();
    let x = Rational::of(1234567, 9999991);
    for n in [10u64, 100, 1000] {
        let pts = distribution_points(&x, &ten, n, 1, 0).unwrap();
        println!(
            "orbit of {} up to n = {n:4}: D* approx {:.5}",
            x,
            star_discrepancy(&pts).unwrap().to_f64()
        );
    }

    // coarse coverage: which bins of [0,1) does the orbit reach?
    let cov = orbit_coverage(&x, &ten, 1000, 17).unwrap();
    println!("\norbit coverage in 17 bins: {:?}", cov.bins);
    println!("untouched bins: {:?}", cov.untouched);
}
